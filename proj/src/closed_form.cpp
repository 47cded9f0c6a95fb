#include "yf/closed_form.hpp"

#include <algorithm>
#include <unordered_map>

#include "memo_util.hpp"

namespace yf {

std::vector<Int> g_values(const Word& v) {
  std::vector<Int> gs;
  Int suffix_weight = 0;
  for (int i = v.length() - 1; i >= 0; --i) {
    suffix_weight += v.is_unit(i) ? 1 : 2;
    if (!v.is_unit(i)) gs.push_back(suffix_weight - 1);
  }
  return gs;
}

namespace {

// Base case of f (z = 0): split x = P S with |S| = y; zero when no exact
// split exists.  Value = (-1)^{#S} / (partial sums of S left to right) /
// (partial sums of P right to left).
Rat f_base(const Word& x, int y) {
  int n = x.length();
  int split = n;           // first index of S
  int suffix_weight = 0;   // weight of x[split..n)
  while (split > 0 && suffix_weight < y) {
    --split;
    suffix_weight += x.is_unit(split) ? 1 : 2;
  }
  if (suffix_weight != y) return Rat(0);
  Int denom = 1;
  Int acc = 0;
  for (int i = split; i < n; ++i) {  // S, left to right
    acc += x.is_unit(i) ? 1 : 2;
    denom *= acc;
  }
  acc = 0;
  for (int i = split - 1; i >= 0; --i) {  // P, right to left
    acc += x.is_unit(i) ? 1 : 2;
    denom *= acc;
  }
  Rat value = Rat(1) / Rat(denom);
  return ((n - split) % 2 == 0) ? value : -value;
}

struct FMemo {
  unsigned generation = 0;
  std::unordered_map<std::string, Rat> map;
};

FMemo& f_memo() {
  thread_local FMemo memo;
  detail::sync_cache(memo.map, memo.generation);
  return memo;
}

Rat f_rec(const Word& x, int y, int z, FMemo& memo) {
  if (y < 0 || y > x.weight()) return Rat(0);
  if (z == 0) return f_base(x, y);
  std::string key = x.key();
  key += '\x7f';
  key += std::to_string(y);
  key += ',';
  key += std::to_string(z);
  auto it = memo.map.find(key);
  if (it != memo.map.end()) return it->second;
  Rat value;
  int last = x.length() - 1;
  if (x.is_unit(last)) {
    if (y == 0) {
      value = f_base(x, 0);
    } else {
      value = f_base(x, y) + f_rec(strip_suffix(x, 1), y - 1, z - 1, memo);
    }
  } else {
    if (y == 1) {
      value = Rat(0);
    } else {
      std::vector<std::uint8_t> syms(x.syms());
      syms.back() = 1;
      syms.push_back(1);
      value = f_rec(Word(1, std::move(syms)), y, z + 1, memo) / Rat(1 - y);
    }
  }
  memo.map.emplace(std::move(key), value);
  detail::sync_cache(memo.map, memo.generation);
  return value;
}

Int rat_to_int(const Rat& x, const char* what) {
  if (boost::multiprecision::denominator(x) != 1)
    throw std::logic_error(std::string(what) + ": non-integer result");
  return boost::multiprecision::numerator(x);
}

Int pow_int(const Int& base, int exp) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

struct D1Memo {
  unsigned generation = 0;
  std::unordered_map<std::string, Int> map;
};

D1Memo& d1_memo() {
  thread_local D1Memo memo;
  detail::sync_cache(memo.map, memo.generation);
  return memo;
}

}  // namespace

Rat f_eval(const Word& x, int y, int z) {
  if (x.r() != 1) throw std::invalid_argument("f_eval: word must be index-free (r = 1)");
  if (z < 0 || z > x.length()) throw std::out_of_range("f_eval: z out of range");
  return f_rec(x, y, z, f_memo());
}

Int d1_closed(const Word& w, const Word& v) {
  if (w.r() != 1 || v.r() != 1)
    throw std::invalid_argument("d1_closed: words must be index-free (r = 1)");
  if (w.weight() > v.weight()) throw std::invalid_argument("d1_closed: |w| > |v|");
  D1Memo& memo = d1_memo();
  std::string key = w.key();
  key += '\x7f';
  key += v.key();
  if (auto it = memo.map.find(key); it != memo.map.end()) return it->second;
  int h = common_suffix(w, v).h;
  std::vector<Int> gs = g_values(v);
  Rat total = 0;
  for (int i = 0; i <= w.weight(); ++i) {
    Rat fi = f_eval(w, i, h);
    if (fi == 0) continue;
    Rat prod = 1;
    for (const Int& g : gs) prod *= Rat(g - i);
    total += fi * prod;
  }
  Int result = rat_to_int(total, "d1_closed");
  memo.map.emplace(std::move(key), result);
  detail::sync_cache(memo.map, memo.generation);
  return result;
}

Int d1_epsilon(const Word& v) {
  Int prod = 1;
  for (const Int& g : g_values(v)) prod *= g;
  return prod;
}

Int dr_epsilon(const Word& v) {
  return pow_int(Int(v.r()), v.twos()) * d1_epsilon(v);
}

Int d1_suffix_class(const Word& w, const Word& v, int l) {
  if (w.r() != 1 || v.r() != 1)
    throw std::invalid_argument("d1_suffix_class: words must be index-free (r = 1)");
  if (w.weight() > v.weight()) throw std::invalid_argument("d1_suffix_class: |w| > |v|");
  if (l < 0 || l > common_suffix(w, v).h)
    throw std::out_of_range("d1_suffix_class: l out of range");
  Word ws = strip_suffix(w, l);
  Word vs = strip_suffix(v, l);
  Int count = d1_closed(ws, vs);
  if (!ws.empty() && !vs.empty() && ws.sym(ws.length() - 1) == vs.sym(vs.length() - 1))
    count -= d1_closed(strip_suffix(ws, 1), strip_suffix(vs, 1));
  return count;
}

Int dr_suffix_class(const Word& w, const Word& v, int l) {
  if (w.r() != v.r()) throw std::invalid_argument("dr_suffix_class: mixed r");
  if (w.weight() > v.weight()) throw std::invalid_argument("dr_suffix_class: |w| > |v|");
  if (l < 0 || l > common_suffix(w, v).h)
    throw std::out_of_range("dr_suffix_class: l out of range");
  int exponent = v.length() - w.length() - strip_suffix(v, l).units();
  if (exponent < 0) return 0;
  return d1_suffix_class(forget_indices(w), forget_indices(v), l) *
         pow_int(Int(v.r()), exponent);
}

std::pair<Int, int> dr_bracket(const Word& w, const Word& v) {
  if (w.r() != v.r()) throw std::invalid_argument("dr_bracket: mixed r");
  if (w.weight() > v.weight()) throw std::invalid_argument("dr_bracket: |w| > |v|");
  Int r(v.r());
  SuffixRelation rel = common_suffix(w, v);
  int e = rel.e_common;
  Word sw = forget_indices(w);
  Word sv = forget_indices(v);
  Int bracket = d1_closed(sw, sv);
  for (int l = 1; l <= e; ++l) {
    Int coeff = pow_int(r, l) - pow_int(r, l - 1);
    if (coeff != 0)
      bracket += d1_closed(strip_from_unit(sw, l), strip_from_unit(sv, l)) * coeff;
  }
  if (rel.indicator)
    bracket -= d1_closed(strip_from_unit(sw, e + 1), strip_from_unit(sv, e + 1)) * pow_int(r, e);
  return {bracket, v.twos() - w.length()};
}

Int dr_closed(const Word& w, const Word& v) {
  auto [bracket, exponent] = dr_bracket(w, v);
  Int r(v.r());
  if (exponent >= 0) return bracket * pow_int(r, exponent);
  Int denom = pow_int(r, -exponent);
  Int q, rem;
  boost::multiprecision::divide_qr(bracket, denom, q, rem);
  if (rem != 0) throw std::logic_error("dr_closed: non-integer count");
  return q;
}

std::vector<Word> s_fiber(const Word& u, int r) {
  if (u.r() != 1) throw std::invalid_argument("s_fiber: u must be index-free (r = 1)");
  if (r < 1) throw std::invalid_argument("s_fiber: r must be >= 1");
  std::vector<int> unit_pos;
  for (int i = 0; i < u.length(); ++i)
    if (u.is_unit(i)) unit_pos.push_back(i);
  std::vector<Word> out;
  std::vector<std::uint8_t> syms(u.syms());
  // odometer over index assignments, leftmost unit most significant
  std::vector<int> digits(unit_pos.size(), 1);
  for (;;) {
    for (std::size_t k = 0; k < unit_pos.size(); ++k)
      syms[static_cast<std::size_t>(unit_pos[k])] = static_cast<std::uint8_t>(digits[k]);
    out.emplace_back(r, syms);
    int k = static_cast<int>(unit_pos.size()) - 1;
    while (k >= 0 && digits[static_cast<std::size_t>(k)] == r) {
      digits[static_cast<std::size_t>(k)] = 1;
      --k;
    }
    if (k < 0) break;
    ++digits[static_cast<std::size_t>(k)];
  }
  return out;
}

std::pair<Int, Int> fiber_sum_check(const Word& u, const Word& v, int r) {
  if (u.r() != 1) throw std::invalid_argument("fiber_sum_check: u must be index-free");
  if (v.r() != r) throw std::invalid_argument("fiber_sum_check: v must live at the given r");
  Int lhs = 0;
  if (u.weight() <= v.weight())
    for (const Word& w : s_fiber(u, r)) lhs += dr_closed(w, v);
  Int rhs = 0;
  if (u.weight() <= v.weight()) {
    Int d1 = d1_closed(u, forget_indices(v));
    if (d1 != 0) {
      int exponent = v.twos() - u.twos();
      if (exponent < 0) throw std::logic_error("fiber_sum_check: negative exponent with paths");
      rhs = d1 * pow_int(Int(r), exponent);
    }
  }
  return {lhs, rhs};
}

}  // namespace yf
