#pragma once

#include <utility>
#include <vector>

#include "yf/numbers.hpp"
#include "yf/word.hpp"

namespace yf {

// g-values of v, rightmost Two first: writing v = ...2 1^{b_1} 2 1^{b_0},
// g_k = b_0 + ... + b_{k-1} + 2k - 1, i.e. one less than the weight of the
// suffix that ends at the k-th-from-the-right Two.  Strictly increasing.
std::vector<Int> g_values(const Word& v);

// The rational kernel f(x, y, z) on index-free words, defined by the explicit
// split-product base case at z = 0 and three rewrite rules for z > 0:
//   x ends in Unit: f(x,0,z) = f(x,0,0);  f(x,y,z) = f(x,y,0) + f(x',y-1,z-1)
//   x ends in Two:  f(x,y,z) = f(x'11,y,z+1) / (1-y), and 0 at y = 1.
// Base case: split x = P S with |S| = y (f = 0 when no such split exists);
// f = (-1)^{#S} / (left-to-right partial-sum product of S  *  right-to-left
// partial-sum product of P).  Extended by 0 for y outside 0..|x|.
// Throws std::invalid_argument unless x.r() == 1; std::out_of_range unless
// 0 <= z <= #x.  Memoized (see set_memo_cap).
Rat f_eval(const Word& x, int y, int z);

// d_1(w,v) = sum_{i=0}^{|w|} f(w, i, h(w,v)) * prod_j (g(v,j) - i), an exact
// nonnegative integer equal to the chain count.  Requires r = 1 on both words
// and |w| <= |v| (std::invalid_argument otherwise).
Int d1_closed(const Word& w, const Word& v);

// d_1(eps, v) = product of the g-values (index-blind, any r accepted).
Int d1_epsilon(const Word& v);

// d_r(eps, v) = r^{d(v)} * d_1(eps, s(v)).
Int dr_epsilon(const Word& v);

// Exactly-l suffix-class count at r = 1 via the stripping reduction applied
// to d1_closed.  Requires r = 1, |w| <= |v|, 0 <= l <= h(w,v).
Int d1_suffix_class(const Word& w, const Word& v, int l);

// d_r(w,v,l) = d_1(s(w), s(v), l) * r^{#v - #w - e(v[l])}; 0 when the
// exponent is negative.  Requires same r, |w| <= |v|; throws
// std::out_of_range unless 0 <= l <= h(w,v).
Int dr_suffix_class(const Word& w, const Word& v, int l);

// The general closed form
//   d_r(w,v) = r^{d(v)-#w} * ( d_1(sw, sv)
//            + sum_{l=1}^{e} d_1(sw{l}, sv{l}) * (r^l - r^{l-1})
//            - ind_{w,v} * d_1(sw{e+1}, sv{e+1}) * r^e ),
// with sw = s(w), sv = s(v), e = e(w,v).  Requires same r and |w| <= |v|.
Int dr_closed(const Word& w, const Word& v);

// The bracketed integer factor above, plus the power exponent d(v) - #w;
// dr_closed = bracket * r^exponent (division exact when the exponent is
// negative).  Exposed so sweeps can compare by cross-multiplication.
std::pair<Int, int> dr_bracket(const Word& w, const Word& v);

// All r^{e(u)} index assignments over the index-free word u, canonical order.
std::vector<Word> s_fiber(const Word& u, int r);

// lhs = sum over the fiber S_r(u) of dr_closed(w, v); rhs = r^{d(v)-d(u)} *
// d_1(u, s(v)) (0 whenever the r=1 count vanishes, which covers every case
// where the exponent would be negative).  The two must be equal.
std::pair<Int, Int> fiber_sum_check(const Word& u, const Word& v, int r);

}  // namespace yf
