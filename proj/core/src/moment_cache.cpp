#include "bessel_lab/moment_cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bessel_lab/errors.hpp"

namespace bessel_lab {

namespace fs = std::filesystem;

namespace {

class FileLock {
 public:
  explicit FileLock(const fs::path& p) {
    fd_ = ::open(p.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw CacheError("cannot open cache lock " + p.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw CacheError("cannot lock " + p.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

std::string utc_now() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void to_json(nlohmann::json& j, const MomentRecord& r) {
  j = nlohmann::json{{"kind", to_string(r.key.kind)}, {"k", r.key.k},          {"i", r.key.i},
                     {"c", r.key.c},                  {"digits", r.digits},      {"value", r.value},
                     {"certified_digits", r.certified_digits}, {"created", r.created}};
}

void from_json(const nlohmann::json& j, MomentRecord& r) {
  r.key.kind = moment_kind_from_string(j.at("kind").get<std::string>());
  r.key.k = j.at("k").get<int>();
  r.key.i = j.at("i").get<int>();
  r.key.c = j.at("c").get<int>();
  r.digits = j.at("digits").get<int>();
  r.value = j.at("value").get<std::string>();
  r.certified_digits = j.at("certified_digits").get<int>();
  r.created = j.value("created", "");
}

MomentCache::MomentCache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw CacheError("cannot create cache directory " + dir_.string() + ": " + ec.message());
  file_ = dir_ / "moments.jsonl";
  lock_file_ = dir_ / "moments.lock";
}

void MomentCache::reload_locked() {
  std::error_code ec;
  if (!fs::exists(file_, ec)) {
    records_.clear();
    loaded_ = true;
    return;
  }
  auto mtime = fs::last_write_time(file_, ec);
  if (loaded_ && !ec && mtime == loaded_mtime_) return;
  records_.clear();
  skipped_ = 0;
  std::ifstream in(file_);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      auto rec = nlohmann::json::parse(line).get<MomentRecord>();
      auto it = records_.find(rec.key);
      if (it == records_.end() || it->second.certified_digits < rec.certified_digits) records_[rec.key] = rec;
    } catch (const std::exception& e) {
      ++skipped_;
      std::cerr << "warning: skipping corrupt cache line " << lineno << " in " << file_.string() << "\n";
    }
  }
  loaded_mtime_ = mtime;
  loaded_ = true;
}

std::optional<MomentRecord> MomentCache::get(const MomentKey& key, int digits) {
  std::lock_guard lock(mu_);
  reload_locked();
  auto it = records_.find(key);
  if (it == records_.end() || it->second.certified_digits < digits) return std::nullopt;
  return it->second;
}

void MomentCache::put(const MomentRecord& record) {
  std::lock_guard lock(mu_);
  FileLock flock_guard(lock_file_);
  loaded_ = false;
  reload_locked();
  auto it = records_.find(record.key);
  if (it != records_.end() && it->second.certified_digits >= record.certified_digits) return;
  records_[record.key] = record;
  fs::path tmp = file_;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CacheError("cannot write " + tmp.string());
    for (const auto& [k, r] : records_) out << nlohmann::json(r).dump() << "\n";
    if (!out.flush()) throw CacheError("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, file_, ec);
  if (ec) throw CacheError("cannot rename cache file: " + ec.message());
  loaded_mtime_ = fs::last_write_time(file_, ec);
}

std::optional<MomentValue> MomentCache::lookup(const MomentKey& key, int digits) {
  auto rec = get(key, digits);
  if (!rec) return std::nullopt;
  try {
    return MomentValue{BigReal(rec->value, bits_for_digits(digits + 5)), rec->certified_digits};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void MomentCache::store(const MomentKey& key, int digits, const MomentValue& value) {
  MomentRecord rec{key, digits, value.value.to_string(value.certified_digits + 5), value.certified_digits, utc_now()};
  put(rec);
}

size_t MomentCache::size() {
  std::lock_guard lock(mu_);
  reload_locked();
  return records_.size();
}

fs::path default_cache_dir() {
  if (const char* env = std::getenv("BESSEL_LAB_CACHE"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "bessel_lab";
  return fs::temp_directory_path() / "bessel_lab_cache";
}

}  // namespace bessel_lab
