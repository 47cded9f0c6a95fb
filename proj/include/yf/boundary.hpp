#pragma once

#include <functional>
#include <string>
#include <vector>

#include "yf/numbers.hpp"
#include "yf/word.hpp"

namespace yf {

// Unit-run length rule for runs beyond the explicit list (m = number of
// explicit runs, j >= m):
//   Constant(c):      b_j = c                       (pi = 0: divergent case)
//   Linear(a, b>=1):  b_j = a + b*(j - m)
//   Geometric(b0>=1, q>=2): b_j = b0 * q^(j - m)
enum class TailKind { Constant, Linear, Geometric };

struct TailRule {
  TailKind kind = TailKind::Constant;
  Int p0;  // c / a / b0
  Int p1;  // unused / b / q
};

// Unit indices within one run, numbered right to left starting at 0:
// const(i) gives every unit index i; cycle(i1,...,ik) assigns i_{t mod k + 1}
// to the t-th unit and restarts at every run.
struct IndexRule {
  bool cyclic = false;
  std::vector<int> pattern = {1};
};

// A left-infinite word ... 2 1^{b_2} 2 1^{b_1} 2 1^{b_0}, presented as run
// lengths: finitely many explicit runs b_0..b_{m-1} (rightmost first), then a
// tail rule for all later runs.  Text form:
//   runs=[1,2];idx=cycle(1,2);tail=geometric(4,2);tidx=const(1)
// (idx applies to every explicit run, tidx to every tail run; both default
// to const(1) and must stay within 1..r).
struct BoundaryVertex {
  int r = 1;
  std::vector<Int> runs;  // b_0 first
  IndexRule idx;
  TailRule tail;
  IndexRule tidx;
};

BoundaryVertex parse_boundary_vertex(const std::string& text, int r);
std::string format_boundary_vertex(const BoundaryVertex& v);

// Run length b_j (j >= 0) and g-value g_j = b_0 + ... + b_{j-1} + 2j - 1
// (j >= 1), both exact.
Int beta_at(const BoundaryVertex& v, long long j);
Int g_at(const BoundaryVertex& v, long long j);

// Last n symbols of the infinite word; suffix-consistent across n.
Word materialize(const BoundaryVertex& v, int n);
// The suffix consisting of the first k full runs and their k Twos, i.e. the
// suffix ending at the k-th-from-the-right Two.
Word materialize_runs(const BoundaryVertex& v, int k);
// Same run structure with every index forgotten (r = 1).
BoundaryVertex forget_indices(const BoundaryVertex& v);

// Finite-word products pi_k(v) = prod over g(v,j) > k of (g(v,j)-k)/g(v,j);
// pi = pi_1.  Empty product = 1.  Requires k >= 1.
Rat pi(const Word& v);
Rat pi_k(const Word& v, int k);

// Certified evaluation of prod_{j=a}^{inf} (g_j - c)/g_j for a boundary
// vertex.  c = 0 gives Exact(1); a zero factor gives Exact(0); a Constant
// tail makes the product diverge to zero and gives Exact(0).  Otherwise the
// finitely many negative factors are multiplied exactly and the positive tail
// is enclosed via explicit remainder bounds, loop-extended until the radius
// is at most tol.  Throws std::invalid_argument for a < 1, c < 0 or tol <= 0;
// throws budget_error when the certified loop would exceed its iteration cap.
MeasureValue shifted_g_product(const BoundaryVertex& v, long long a, const Int& c, const Rat& tol);

// pi(v) over the infinite word: the g_j > 1 part of the product above.
// Constant tails return Approx(0, 0) (the divergent-to-zero flag).
MeasureValue pi_boundary(const BoundaryVertex& v, const Rat& tol);
MeasureValue pi_k_boundary(const BoundaryVertex& v, int k, const Rat& tol);

// Plancherel mass d_1(eps, s(w))^2 / (|w|! * r^{e(w)}), exact.  The ambient r
// may exceed the word's own r; every unit index must lie in 1..r.
MeasureValue plancherel(const Word& w, int r);

// mu_{r,v,beta}(w): the closed-form boundary measure
//   (d_1(eps,s(w)) / r^{e(w)}) * [ L_0 + sum_{l=1}^{e} L_l (r^l - r^{l-1})
//                                  - ind * L_{e+1} r^e ]
// with L_0 = sum_i f(s(w),i,h) beta^i * shifted_g_product(v,1,i) and the
// stripped-variant L_l series described in the implementation.  Exact when
// no truncated product enters (e.g. w = eps); Approx with certified radius
// otherwise.  Throws std::invalid_argument for beta outside (0,1], a Constant
// tail (pi(v) = 0; Plancherel is that regime), or mismatched r.
MeasureValue boundary_measure(const Word& w, const BoundaryVertex& v, const Rat& beta, const Rat& tol);

// d_r(eps,w) * d_r(w,v) / d_r(eps,v), exact (0 when |w| > |v|).
Rat martin_kernel(const Word& w, const Word& v);

// Finite approximant v_n with pi(v_n)/pi(v) near beta: the last-n-symbols
// truncation for beta = 1; for beta < 1 the truncation gains k prepended
// Twos, each multiplying pi by W/(W+1) at current weight W, k chosen to
// minimize |pi(v_n)/pi(v) - beta|.  Throws for beta outside (0,1] or a
// Constant tail; budget_error when k would exceed its cap.
Word truncation_sequence(const BoundaryVertex& v, const Rat& beta, int n);

struct TruncationInfo {
  Word word;
  MeasureValue achieved_ratio;  // certified pi(word)/pi(v)
};
TruncationInfo truncation_info(const BoundaryVertex& v, const Rat& beta, int n);

// mu(w)/d_r(eps,w) - sum over up-neighbors w' of mu(w')/d_r(eps,w');
// vanishes (exactly or within the propagated radius) for central measures.
MeasureValue harmonicity_residual(const std::function<MeasureValue(const Word&)>& measure,
                                  const Word& w);

// sum of measure(w) over the whole level, canonical order.
MeasureValue level_mass(const std::function<MeasureValue(const Word&)>& measure, int r, int m);

}  // namespace yf
