#pragma once

#include <map>
#include <utility>
#include <vector>

#include "yf/numbers.hpp"
#include "yf/word.hpp"

namespace yf {

struct LevelSet {
  int r;
  int n;
  std::vector<Word> vertices;  // canonical (byte-lexicographic) order
};

// Covering moves.  Down: delete the leftmost Unit, or replace a Two left of
// the leftmost Unit (any Two when the word has no Units) by Unit(i), i = 1..r.
// Up is the exact inverse: bump the leftmost Unit to a Two, or insert Unit(i)
// at any of the d'+1 slots inside/around the leading Two prefix.  Results are
// pairwise distinct and sorted canonically.
std::vector<Word> down_neighbors(const Word& v);
std::vector<Word> up_neighbors(const Word& v);

// All words of weight n over the r-indexed alphabet, canonical order.
LevelSet level(int r, int n);

// (up-degree, down-degree); the difference is r for every word.
std::pair<int, int> check_r_differential(const Word& v);

// Number of saturated descending chains v -> ... -> w (0 when unreachable).
// Memoized on (w, intermediate vertex); see set_memo_cap.
Int count_paths_dp(const Word& w, const Word& v);

// Bulk form: counts for every w with min_weight <= |w| <= |v| below v, in one
// level-synchronized sweep; canonical-order map (absent words have count 0).
std::map<Word, Int> count_paths_table(const Word& v, int min_weight = 0);

// Chains v -> ... -> w whose longest suffix shared by ALL chain vertices has
// length exactly l.  Computed by suffix-stripping reduction: chains that keep
// the last l symbols intact correspond to chains on the stripped words, and
// the exactly-l class subtracts the (l+1)-protecting ones when the stripped
// endpoints still agree on their last symbol.
Int count_paths_suffix_class(const Word& w, const Word& v, int l);

// Cap (entries per memo table) for the path-count and f-value caches;
// 0 = unbounded (default).  A cache that would exceed the cap is cleared.
void set_memo_cap(std::size_t max_entries);
std::size_t memo_cap();
void clear_memos();

}  // namespace yf
