#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include <unistd.h>

#include "bessel_lab/moment_cache.hpp"
#include "bessel_lab/moments.hpp"

using namespace bessel_lab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("bessel_lab_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

MomentRecord record(int k, int i, int c, int digits, const std::string& value) {
  MomentRecord r;
  r.key = {MomentKind::kIkm, k, i, c};
  r.digits = digits;
  r.certified_digits = digits;
  r.value = value;
  r.created = "2026-01-01T00:00:00Z";
  return r;
}

}  // namespace

TEST(MomentCache, PutThenGet) {
  MomentCache cache(fresh_dir("put"));
  cache.put(record(3, 1, 1, 30, "6.0459978807807261686469275254738524409468874936424e-01"));
  auto got = cache.get({MomentKind::kIkm, 3, 1, 1}, 30);
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ(got->value, "6.0459978807807261686469275254738524409468874936424e-01");
  EXPECT_TRUE(cache.get({MomentKind::kIkm, 3, 1, 1}, 20).has_value());
  EXPECT_FALSE(cache.get({MomentKind::kIkm, 3, 1, 1}, 40).has_value());
  EXPECT_FALSE(cache.get({MomentKind::kIkm, 3, 1, 3}, 10).has_value());
}

TEST(MomentCache, VisibleToASecondInstance) {
  fs::path dir = fresh_dir("second");
  MomentCache a(dir);
  a.put(record(5, 2, 3, 25, "1.5e+00"));
  MomentCache b(dir);
  EXPECT_TRUE(b.get({MomentKind::kIkm, 5, 2, 3}, 25).has_value());
  a.put(record(5, 2, 5, 25, "2.5e+00"));
  EXPECT_TRUE(b.get({MomentKind::kIkm, 5, 2, 5}, 25).has_value());
}

TEST(MomentCache, ConcurrentDistinctPuts) {
  fs::path dir = fresh_dir("concurrent");
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([dir, t] {
      MomentCache cache(dir);
      for (int c = 1; c <= 9; c += 2) cache.put(record(10 + t, 1, c, 20, "1.0e+00"));
    });
  }
  for (auto& th : threads) th.join();
  MomentCache check(dir);
  EXPECT_EQ(check.size(), 40u);
}

TEST(MomentCache, CorruptLinesAreSkipped) {
  fs::path dir = fresh_dir("corrupt");
  {
    MomentCache cache(dir);
    cache.put(record(3, 0, 1, 20, "5.0e-01"));
  }
  {
    std::ofstream f(dir / "moments.jsonl", std::ios::app);
    f << "{not json\n";
  }
  MomentCache cache(dir);
  EXPECT_TRUE(cache.get({MomentKind::kIkm, 3, 0, 1}, 20).has_value());
  EXPECT_EQ(cache.skipped_lines(), 1);
}

TEST(MomentCache, UsedByEvaluation) {
  fs::path dir = fresh_dir("eval");
  MomentCache cache(dir);
  set_moment_cache(&cache);
  MomentValue first = ikm(4, 1, 3, 25);
  EXPECT_EQ(cache.size(), 1u);
  MomentValue again = ikm(4, 1, 3, 20);
  set_moment_cache(nullptr);
  EXPECT_GT(neg_log10(relative_difference(first.value, again.value)), 20);
  auto rec = cache.get({MomentKind::kIkm, 4, 1, 3}, 25);
  ASSERT_TRUE(rec.has_value());
  BigReal parsed(rec->value, bits_for_digits(30));
  EXPECT_GT(neg_log10(relative_difference(parsed, first.value)), 24);
}

TEST(MomentCache, DefaultDirectoryHonoursEnvironment) {
  ::setenv("BESSEL_LAB_CACHE", "/tmp/bessel_lab_env_dir", 1);
  EXPECT_EQ(default_cache_dir(), fs::path("/tmp/bessel_lab_env_dir"));
  ::unsetenv("BESSEL_LAB_CACHE");
}
