#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "support/oracles.hpp"
#include "yf/graph.hpp"
#include "yf/word.hpp"

using namespace yf;

namespace {

std::set<oracle::OWord> to_oset(const std::vector<Word>& ws) {
  std::set<oracle::OWord> out;
  for (const Word& w : ws) out.insert(oracle::from_word(w));
  return out;
}

}  // namespace

TEST_CASE("level sizes follow a_n = r*a_{n-1} + a_{n-2} up to n = 10") {
  for (int r = 1; r <= 3; ++r) {
    long long a0 = 1, a1 = r;
    CHECK(level(r, 0).vertices.size() == 1);
    if (r >= 1) CHECK(level(r, 1).vertices.size() == static_cast<std::size_t>(r));
    for (int n = 2; n <= 10; ++n) {
      long long an = r * a1 + a0;
      CHECK(level(r, n).vertices.size() == static_cast<std::size_t>(an));
      a0 = a1;
      a1 = an;
    }
  }
}

TEST_CASE("level content matches independent enumeration, r <= 3, n <= 6") {
  for (int r = 1; r <= 3; ++r)
    for (int n = 0; n <= 6; ++n) {
      auto lib = level(r, n).vertices;
      auto ora = oracle::o_level(r, n);
      std::set<oracle::OWord> oset(ora.begin(), ora.end());
      CHECK(lib.size() == oset.size());
      CHECK(to_oset(lib) == oset);
      // Deterministic canonical order: sorted, no duplicates.
      CHECK(std::is_sorted(lib.begin(), lib.end()));
      CHECK(std::adjacent_find(lib.begin(), lib.end()) == lib.end());
    }
  CHECK(level(1, 3).vertices.size() == 3);
  CHECK(level(2, 2).vertices.size() == 5);
  CHECK(level(2, 0).vertices == std::vector<Word>{parse_word("", 2)});
}

TEST_CASE("level argument validation") {
  CHECK_THROWS_AS(level(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(level(1, -1), std::invalid_argument);
}

TEST_CASE("down_neighbors and up_neighbors match token-surgery oracle up to weight 6") {
  for (int r = 1; r <= 3; ++r)
    for (int n = 0; n <= 6; ++n)
      for (const Word& v : level(r, n).vertices) {
        auto ov = oracle::from_word(v);
        CHECK(to_oset(down_neighbors(v)) == oracle::o_down(ov, r));
        if (n <= 5) CHECK(to_oset(up_neighbors(v)) == oracle::o_up(ov, r));
      }
}

TEST_CASE("edge reciprocity up to weight 6") {
  for (int r = 1; r <= 2; ++r)
    for (int n = 1; n <= 6; ++n)
      for (const Word& v : level(r, n).vertices)
        for (const Word& w : down_neighbors(v)) {
          auto ups = up_neighbors(w);
          CHECK(std::find(ups.begin(), ups.end(), v) != ups.end());
        }
}

TEST_CASE("degree gap is exactly r up to weight 7") {
  for (int r = 1; r <= 3; ++r)
    for (int n = 0; n <= 7; ++n)
      for (const Word& v : level(r, n).vertices) {
        auto [up, down] = check_r_differential(v);
        CHECK(up - down == r);
      }
  auto eps1 = check_r_differential(parse_word("", 1));
  CHECK(eps1.first == 1);
  CHECK(eps1.second == 0);
  auto one1 = check_r_differential(parse_word("1", 1));
  CHECK(one1.first == 2);
  CHECK(one1.second == 1);
}

TEST_CASE("count_paths_dp frozen examples") {
  CHECK(count_paths_dp(parse_word("", 1), parse_word("2,1", 1)) == 2);
  CHECK(count_paths_dp(parse_word("", 1), parse_word("2,2", 1)) == 3);
  CHECK(count_paths_dp(parse_word("2,1", 1), parse_word("2,1", 1)) == 1);
  CHECK(count_paths_dp(parse_word("2,1", 1), parse_word("1", 1)) == 0);
  CHECK_THROWS_AS(count_paths_dp(parse_word("1", 1), parse_word("1_2", 2)),
                  std::invalid_argument);
}

TEST_CASE("count_paths_dp matches independent recursion, r <= 2, |v| <= 5") {
  for (int r = 1; r <= 2; ++r)
    for (int nv = 0; nv <= 5; ++nv)
      for (const Word& v : level(r, nv).vertices) {
        auto ov = oracle::from_word(v);
        std::map<oracle::OWord, Int> memo;
        for (int nw = 0; nw <= nv; ++nw)
          for (const Word& w : level(r, nw).vertices) {
            Int expect = oracle::o_count_paths(oracle::from_word(w), ov, r);
            CHECK(count_paths_dp(w, v) == expect);
          }
      }
}

TEST_CASE("count_paths_table agrees with count_paths_dp and only holds nonzeros") {
  for (int r = 1; r <= 2; ++r)
    for (const Word& v : level(r, 5).vertices) {
      auto table = count_paths_table(v);
      for (const auto& [w, c] : table) {
        CHECK(c > 0);
        CHECK(count_paths_dp(w, v) == c);
      }
      // Every nonzero pair is present.
      for (int nw = 0; nw <= 5; ++nw)
        for (const Word& w : level(r, nw).vertices) {
          Int c = count_paths_dp(w, v);
          if (c != 0) {
            auto it = table.find(w);
            REQUIRE(it != table.end());
            CHECK(it->second == c);
          } else {
            CHECK(table.find(w) == table.end());
          }
        }
    }
}

TEST_CASE("suffix-class counts match explicit chain classification, |v| <= 5") {
  for (int r = 1; r <= 2; ++r)
    for (int nv = 0; nv <= 5; ++nv)
      for (const Word& v : level(r, nv).vertices)
        for (int nw = 0; nw <= nv; ++nw)
          for (const Word& w : level(r, nw).vertices) {
            if (count_paths_dp(w, v) == 0) continue;
            auto buckets = oracle::o_chain_classes(oracle::from_word(w),
                                                   oracle::from_word(v), r);
            int h = common_suffix(w, v).h;
            Int total = 0;
            for (int l = 0; l <= h; ++l) {
              Int expect = 0;
              if (auto it = buckets.find(l); it != buckets.end()) expect = it->second;
              CHECK(count_paths_suffix_class(w, v, l) == expect);
              total += expect;
            }
            // No chain can share a longer suffix than h itself.
            for (const auto& [l, c] : buckets) CHECK(l <= h);
            CHECK(total == count_paths_dp(w, v));
          }
}

TEST_CASE("suffix-class frozen examples and domain errors") {
  Word w = parse_word("2", 1), v = parse_word("2,2", 1);
  CHECK(count_paths_suffix_class(w, v, 1) == 1);
  CHECK(count_paths_suffix_class(w, v, 0) == 1);
  CHECK_THROWS_AS(count_paths_suffix_class(w, v, 2), std::out_of_range);
  CHECK_THROWS_AS(count_paths_suffix_class(w, v, -1), std::out_of_range);
}

TEST_CASE("index-forgetting count identity d_r(eps,v) = d_1(eps,s(v)) * r^twos") {
  Word eps1 = parse_word("", 1);
  for (int r = 2; r <= 3; ++r) {
    Word eps = parse_word("", r);
    for (int n = 0; n <= 5; ++n)
      for (const Word& v : level(r, n).vertices) {
        Int lhs = count_paths_dp(eps, v);
        Int rhs = count_paths_dp(eps1, forget_indices(v)) *
                  boost::multiprecision::pow(Int(r), static_cast<unsigned>(stats(v).twos));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("memo cap and clear do not change results") {
  Word w = parse_word("", 1), v = parse_word("2,2,1", 1);
  Int base = count_paths_dp(w, v);
  clear_memos();
  std::size_t old_cap = memo_cap();
  set_memo_cap(4);
  CHECK(count_paths_dp(w, v) == base);
  CHECK(count_paths_dp(w, v) == base);
  set_memo_cap(old_cap);
  clear_memos();
  CHECK(count_paths_dp(w, v) == base);
}
