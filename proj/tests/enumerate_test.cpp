#include "bll/enumerate.hpp"

#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace bll;

TEST_CASE("root shell counts match the classical formulas") {
  CHECK(count_of_norm(make_E8(), Rat(-2)) == 240);
  CHECK(count_of_norm(make_E7(), Rat(-2)) == 126);
  CHECK(count_of_norm(make_E6(), Rat(-2)) == 72);
  for (int n = 1; n <= 8; ++n)
    CHECK(count_of_norm(make_A(n), Rat(-2)) == n * (n + 1));
  for (int n = 2; n <= 8; ++n)
    CHECK(count_of_norm(make_D(n), Rat(-2)) == 2 * n * (n - 1));
}

TEST_CASE("second shell of the rank-8 chain lattice") {
  CHECK(count_of_norm(make_E8(), Rat(-4)) == 2160);
}

TEST_CASE("shells are negation-closed, sorted, deterministic, exact") {
  Lattice e6 = make_E6();
  NormShell s1 = vectors_of_norm(e6, Rat(-4));
  NormShell s2 = vectors_of_norm(e6, Rat(-4));
  CHECK(s1.vectors == s2.vectors);
  CHECK(s1.count == Int(s1.vectors.size()));
  for (size_t i = 1; i < s1.vectors.size(); ++i)
    CHECK(lex_less(s1.vectors[i - 1], s1.vectors[i]));
  for (const QVec& v : s1.vectors) {
    CHECK(inner(e6, v, v) == Rat(-4));
    QVec neg(v.size());
    for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    CHECK(std::binary_search(
        s1.vectors.begin(), s1.vectors.end(), neg,
        [](const QVec& a, const QVec& b) { return lex_less(a, b); }));
  }
}

TEST_CASE("shifted shells enumerate a dual coset") {
  Lattice a1 = make_A(1);
  QVec half{Rat(1, 2)};
  CHECK(count_of_norm(a1, Rat(-1, 2), half) == 2);  // +-1/2
  CHECK(count_of_norm(a1, Rat(-2, 1), half) == 0);  // integers are not in the coset
  NormShell s = vectors_of_norm(a1, Rat(-9, 2), half);
  REQUIRE(s.count == 2);
  CHECK(s.vectors[0][0] == Rat(-3, 2));
  CHECK(s.vectors[1][0] == Rat(3, 2));
  // shifts are canonicalized modulo 1
  NormShell t = vectors_of_norm(a1, Rat(-9, 2), QVec{Rat(5, 2)});
  CHECK(t.vectors == s.vectors);
  CHECK(t.shift == QVec{Rat(1, 2)});
}

TEST_CASE("zero target and impossible targets yield empty shells") {
  CHECK(count_of_norm(make_E8(), Rat(0)) == 0);
  CHECK(count_of_norm(make_E8(), Rat(-3)) == 0);   // odd norm in an even lattice
  CHECK(count_of_norm(make_A(1), Rat(-1, 3)) == 0);  // denominator unreachable
}

TEST_CASE("input validation: definiteness, sign, dual membership") {
  CHECK_THROWS_AS(count_of_norm(make_U(), Rat(-2)), invalid_input);
  CHECK_THROWS_AS(count_of_norm(make_E8(), Rat(2)), invalid_input);
  CHECK_THROWS_AS(count_of_norm(make_A(1), Rat(-2), QVec{Rat(1, 3)}),
                  invalid_input);
  CHECK_THROWS_AS(count_of_norm(make_E8(), Rat(-2), QVec{Rat(1, 2)}),
                  invalid_input);  // wrong shift length
}

TEST_CASE("node budget is enforced") {
  EnumLimits lim;
  lim.node_cap = 5;
  CHECK_THROWS_AS(count_of_norm(make_E8(), Rat(-8), {}, lim), budget_exceeded);
}

TEST_CASE("histogram agrees with per-target counts") {
  Lattice e7 = make_E7();
  auto hist = norm_histogram(e7, Rat(-8));
  for (int m = 1; m <= 4; ++m) {
    Int direct = count_of_norm(e7, Rat(-2 * m));
    auto it = hist.find(Rat(-2 * m));
    Int from_hist = it == hist.end() ? Int(0) : it->second;
    CHECK(from_hist == direct);
  }
  // no odd-norm strays in an even lattice
  for (const auto& [norm, cnt] : hist) {
    CHECK(den(norm) == 1);
    CHECK(num(norm) % 2 == 0);
    CHECK(cnt > 0);
  }
}

TEST_CASE("histogram floors fractional bounds and handles cosets") {
  Lattice a1 = make_A(1);
  auto hist = norm_histogram(a1, Rat(-3), QVec{Rat(1, 2)});
  REQUIRE(hist.size() == 1);
  CHECK(hist.begin()->first == Rat(-1, 2));
  CHECK(hist.begin()->second == 2);
  auto hist2 = norm_histogram(a1, Rat(-7, 3));
  REQUIRE(hist2.size() == 1);
  CHECK(hist2.begin()->first == Rat(-2));
  CHECK(hist2.begin()->second == 2);
}

TEST_CASE("box oracle agrees on hand-checked shells") {
  CHECK(brute_force_oracle(make_D(4), Rat(-2)) == 24);
  CHECK(brute_force_oracle(make_A(2), Rat(-2)) == 6);
  CHECK(brute_force_oracle(make_A(1), Rat(-1, 2), QVec{Rat(1, 2)}) == 2);
}

TEST_CASE("box oracle rejects oversized boxes") {
  CHECK_THROWS_AS(brute_force_oracle(make_E8(), Rat(-40), {}, Int(1000)),
                  budget_exceeded);
}

TEST_CASE("kernel and box oracle agree on randomized lattices") {
  OracleSuiteResult res = oracle_equivalence_suite(40, 20240817);
  CHECK(res.lattices == 40);
  CHECK(res.comparisons == 240);
  CHECK(res.failures == 0);
}

TEST_CASE("count cache round-trips through its file format") {
  ShellCache cache;
  cache.put("a", Int(42));
  cache.put("b", Int("123456789012345678901234567890"));
  const std::string path =
      (std::filesystem::temp_directory_path() / "bll_cache_test.json").string();
  cache.save_file(path);
  ShellCache loaded;
  loaded.load_file(path);
  CHECK(loaded.size() == 2);
  CHECK(*loaded.get("a") == 42);
  CHECK(*loaded.get("b") == Int("123456789012345678901234567890"));
  CHECK_FALSE(loaded.get("c").has_value());
  std::remove(path.c_str());
  // corrupt files are ignored rather than fatal
  std::ofstream bad(path);
  bad << "not json";
  bad.close();
  ShellCache c2;
  c2.load_file(path);
  CHECK(c2.size() == 0);
  std::remove(path.c_str());
}

TEST_CASE("cache keys distinguish gram, target, and shift") {
  Lattice a1 = make_A(1);
  Lattice a2 = make_A(2);
  std::string k1 = shell_cache_key(a1, Rat(-2), QVec{Rat(0)});
  std::string k2 = shell_cache_key(a2, Rat(-2), QVec{Rat(0), Rat(0)});
  std::string k3 = shell_cache_key(a1, Rat(-4), QVec{Rat(0)});
  std::string k4 = shell_cache_key(a1, Rat(-2), QVec{Rat(1, 2)});
  CHECK(k1 != k2);
  CHECK(k1 != k3);
  CHECK(k1 != k4);
  // label does not leak into the key
  CHECK(shell_cache_key(Lattice(a1.gram(), "renamed"), Rat(-2), QVec{Rat(0)}) ==
        k1);
}
