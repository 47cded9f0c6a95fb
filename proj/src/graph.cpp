#include "yf/graph.hpp"

#include <algorithm>
#include <unordered_map>

#include "memo_util.hpp"

namespace yf {

namespace {

struct PathMemo {
  unsigned generation = 0;
  std::unordered_map<std::string, Int> map;
};

PathMemo& path_memo() {
  thread_local PathMemo memo;
  detail::sync_cache(memo.map, memo.generation);
  return memo;
}

constexpr char kKeySep = '\x7f';

Int count_paths_rec(const Word& w, const Word& x, int target_weight, PathMemo& memo) {
  int xw = x.weight();
  if (xw == target_weight) return x == w ? 1 : 0;
  // The byte encodings do not carry r, and the cache outlives any one call,
  // so the key must disambiguate the degree as well.
  std::string key;
  key.reserve(static_cast<std::size_t>(w.length() + x.length()) + 2);
  key.push_back(static_cast<char>(w.r()));
  key += w.key();
  key += kKeySep;
  key += x.key();
  auto it = memo.map.find(key);
  if (it != memo.map.end()) return it->second;
  Int total = 0;
  for (const Word& y : down_neighbors(x)) total += count_paths_rec(w, y, target_weight, memo);
  memo.map.emplace(std::move(key), total);
  detail::sync_cache(memo.map, memo.generation);
  return total;
}

}  // namespace

std::vector<Word> down_neighbors(const Word& v) {
  std::vector<Word> out;
  int r = v.r();
  int lu = v.leftmost_unit();
  if (lu >= 0) {
    std::vector<std::uint8_t> syms(v.syms());
    syms.erase(syms.begin() + lu);
    out.emplace_back(r, std::move(syms));
  }
  int two_limit = lu >= 0 ? lu : v.length();
  for (int p = 0; p < two_limit; ++p) {
    if (v.sym(p) != kTwo) continue;
    for (int i = 1; i <= r; ++i) {
      std::vector<std::uint8_t> syms(v.syms());
      syms[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(i);
      out.emplace_back(r, std::move(syms));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> up_neighbors(const Word& v) {
  std::vector<Word> out;
  int r = v.r();
  int lu = v.leftmost_unit();
  if (lu >= 0) {
    std::vector<std::uint8_t> syms(v.syms());
    syms[static_cast<std::size_t>(lu)] = kTwo;
    out.emplace_back(r, std::move(syms));
  }
  int slots = (lu >= 0 ? lu : v.length()) + 1;
  for (int p = 0; p < slots; ++p) {
    for (int i = 1; i <= r; ++i) {
      std::vector<std::uint8_t> syms(v.syms());
      syms.insert(syms.begin() + p, static_cast<std::uint8_t>(i));
      out.emplace_back(r, std::move(syms));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void gen_level(int r, int remaining, std::vector<std::uint8_t>& prefix, std::vector<Word>& out) {
  if (remaining == 0) {
    out.emplace_back(r, prefix);
    return;
  }
  if (remaining >= 2) {
    prefix.push_back(kTwo);
    gen_level(r, remaining - 2, prefix, out);
    prefix.pop_back();
  }
  for (int i = 1; i <= r; ++i) {
    prefix.push_back(static_cast<std::uint8_t>(i));
    gen_level(r, remaining - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

LevelSet level(int r, int n) {
  if (r < 1) throw std::invalid_argument("level: r must be >= 1");
  if (n < 0) throw std::invalid_argument("level: n must be >= 0");
  LevelSet ls{r, n, {}};
  std::vector<std::uint8_t> prefix;
  gen_level(r, n, prefix, ls.vertices);
  return ls;
}

std::pair<int, int> check_r_differential(const Word& v) {
  return {static_cast<int>(up_neighbors(v).size()),
          static_cast<int>(down_neighbors(v).size())};
}

Int count_paths_dp(const Word& w, const Word& v) {
  if (w.r() != v.r()) throw std::invalid_argument("count_paths_dp: mixed r");
  if (w.weight() > v.weight()) return 0;
  return count_paths_rec(w, v, w.weight(), path_memo());
}

std::map<Word, Int> count_paths_table(const Word& v, int min_weight) {
  if (min_weight < 0) min_weight = 0;
  std::map<Word, Int> result;
  std::map<Word, Int> frontier;
  frontier.emplace(v, 1);
  for (int weight = v.weight(); weight >= min_weight; --weight) {
    result.insert(frontier.begin(), frontier.end());
    if (weight == min_weight) break;
    std::map<Word, Int> next;
    for (const auto& [x, c] : frontier)
      for (const Word& y : down_neighbors(x)) next[y] += c;
    frontier = std::move(next);
  }
  return result;
}

Int count_paths_suffix_class(const Word& w, const Word& v, int l) {
  if (w.r() != v.r()) throw std::invalid_argument("count_paths_suffix_class: mixed r");
  if (l < 0 || l > common_suffix(w, v).h)
    throw std::out_of_range("count_paths_suffix_class: l out of range");
  Word ws = strip_suffix(w, l);
  Word vs = strip_suffix(v, l);
  Int count = count_paths_dp(ws, vs);
  if (!ws.empty() && !vs.empty() && ws.sym(ws.length() - 1) == vs.sym(vs.length() - 1))
    count -= count_paths_dp(strip_suffix(ws, 1), strip_suffix(vs, 1));
  return count;
}

void set_memo_cap(std::size_t max_entries) {
  detail::memo_cap_value.store(max_entries, std::memory_order_relaxed);
}

std::size_t memo_cap() { return detail::memo_cap_value.load(std::memory_order_relaxed); }

void clear_memos() { detail::memo_generation.fetch_add(1, std::memory_order_relaxed); }

}  // namespace yf
