#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bessel_lab::cli {

enum class OutFormat { kTable, kJson };

struct CliConfig {
  std::string command;
  std::vector<int> ks;
  int digits = 50;
  std::optional<int> i;
  std::optional<int> c;
  std::optional<int> j;
  std::string kind = "ikm";
  std::vector<std::string> checks;
  OutFormat out = OutFormat::kTable;
  std::string cache_dir;
  bool no_cache = false;
  bool full = false;
  int jobs = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerificationFailed = 3;

// "5" or "3..10".
std::vector<int> parse_k_range(const std::string& text);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bessel_lab::cli
