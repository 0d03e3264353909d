#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "bessel_lab/moments.hpp"

namespace bessel_lab {

struct MomentRecord {
  MomentKey key;
  int digits = 0;
  std::string value;  // scientific notation
  int certified_digits = 0;
  std::string created;
};

void to_json(nlohmann::json& j, const MomentRecord& r);
void from_json(const nlohmann::json& j, MomentRecord& r);

// Persistent store of evaluated moments, one JSON record per line in
// <dir>/moments.jsonl. Writers rewrite the file through a temporary and an
// atomic rename while holding an advisory lock, so readers never see a torn file.
class MomentCache {
 public:
  explicit MomentCache(std::filesystem::path dir);

  const std::filesystem::path& path() const { return file_; }

  // Best record for key with certified_digits >= digits.
  std::optional<MomentRecord> get(const MomentKey& key, int digits);
  void put(const MomentRecord& record);

  std::optional<MomentValue> lookup(const MomentKey& key, int digits);
  void store(const MomentKey& key, int digits, const MomentValue& value);

  size_t size();
  // Lines skipped during the last load because they failed to parse.
  int skipped_lines() const { return skipped_; }

 private:
  void reload_locked();

  std::filesystem::path dir_;
  std::filesystem::path file_;
  std::filesystem::path lock_file_;
  std::mutex mu_;
  std::map<MomentKey, MomentRecord> records_;
  std::filesystem::file_time_type loaded_mtime_{};
  bool loaded_ = false;
  int skipped_ = 0;
};

// Default directory: $BESSEL_LAB_CACHE if set, otherwise ~/.cache/bessel_lab.
std::filesystem::path default_cache_dir();

}  // namespace bessel_lab
