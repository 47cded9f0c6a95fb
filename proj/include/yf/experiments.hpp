#pragma once

#include <string>
#include <vector>

#include "yf/boundary.hpp"
#include "yf/numbers.hpp"
#include "yf/word.hpp"

namespace yf {

// One level-m row of a tail-mass experiment.
struct TailRow {
  int m = 0;
  long long set_size = 0;
  MeasureValue mass;
};

// Level-m mass of the suffix-agreement tail sets:
//   qbar:    { w at level m : e(w, v) < k }
//   qtilde:  { w at level m : e(s(w), s(v)) < k }
//   qhat[i]: { w at level m : ind_{w,v} = 1 and e(w,v) = i-1 },  i = 1..k
// qbar is contained in qtilde union of the qhat[i], so mass(qbar) is bounded
// by the sum of the partial masses (up to radii).
struct QMassRow {
  int m = 0;
  long long size_qbar = 0;
  MeasureValue mass_qbar;
  MeasureValue mass_qtilde;
  std::vector<MeasureValue> mass_qhat;  // index i-1 holds the i-th set
};

QMassRow tail_q_mass(const BoundaryVertex& v, const Rat& beta, int m, int k,
                     const Rat& tol, int threads = 1);

// Level-m mass of { w : pi(w) outside (pi(v)(beta-eps), pi(v)(beta+eps)) },
// with exact pi(w) compared against the certified midpoint of pi(v).
TailRow tail_r_mass(const BoundaryVertex& v, const Rat& beta, int m, const Rat& eps,
                    const Rat& tol, int threads = 1);

// Exhaustive exact check of the two standalone inequalities within the weight
// budget:  d_r(w 1_i u, v 1_j u) <= d_r(w 1_i u, v 2 u) for i != j (needs
// r >= 2), and pi(v 2 u) / pi(v 1 u) >= 1/2 (index-blind, swept over
// index-free patterns).  Stops at the first violation.
struct InequalityScan {
  bool ok = true;
  long long checked_counts = 0;
  long long checked_pi = 0;
  std::string counterexample;  // empty when ok
};
InequalityScan inequality_scan(int r, int max_weight);

// Martin-kernel convergence trace along run-aligned truncations of v (depth
// capped by n_max symbols): rows of (n, exact kernel, certified distance to
// the closed-form measure value).
struct KernelTraceRow {
  int n = 0;
  Rat kernel;
  MeasureValue distance;
};
std::vector<KernelTraceRow> kernel_trace(const Word& w, const BoundaryVertex& v,
                                         const Rat& beta, int n_max, const Rat& tol);

// Ratio-law trace: rows of (n, pi_i(v_n)/pi_i(v), |ratio - beta^i|) along
// run-aligned depths.  For beta < 1 each v_n is built by truncation_sequence
// against a slightly inflated target beta*(1 + 1/(2 sqrt(n))) so the
// remaining drift dominates step granularity and the error decays cleanly;
// v_n still converges to v with ratio -> beta.
struct GkRatioRow {
  int n = 0;
  MeasureValue ratio;
  Float distance = 0;
};
std::vector<GkRatioRow> gk_ratio_trace(const BoundaryVertex& v, const Rat& beta, int i,
                                       int n_max, const Rat& tol);

// Serialization helpers shared by the CLI and the archived artifacts.
std::string q_rows_to_json(const std::string& vtext, int r, const Rat& beta, int k,
                           const Rat& tol, const std::vector<QMassRow>& rows);
std::string r_rows_to_json(const std::string& vtext, int r, const Rat& beta, const Rat& eps,
                           const Rat& tol, const std::vector<TailRow>& rows);

}  // namespace yf
