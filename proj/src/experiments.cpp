#include "yf/experiments.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "yf/closed_form.hpp"
#include "yf/graph.hpp"
#include "yf/parallel.hpp"

namespace yf {

namespace {

using ordered_json = nlohmann::ordered_json;

// pi(v) certification target used when only a reference midpoint is needed;
// linear tails certify slowly, so they get a looser target.
Rat reference_pi_tol(const BoundaryVertex& v) {
  return v.tail.kind == TailKind::Linear ? Rat(1, Int("1000000"))
                                         : Rat(1, pow(Int(10), 25));
}

ordered_json measure_json(const MeasureValue& m) {
  ordered_json j;
  if (m.is_exact()) {
    j["value"] = rat_string(m.rational());
    j["radius"] = "0";
  } else {
    j["value"] = float_string(m.value());
    j["radius"] = float_string(m.radius());
  }
  return j;
}

}  // namespace

QMassRow tail_q_mass(const BoundaryVertex& v, const Rat& beta, int m, int k,
                     const Rat& tol, int threads) {
  if (m < 0) throw std::invalid_argument("tail_q_mass: m must be >= 0");
  if (k < 1) throw std::invalid_argument("tail_q_mass: k must be >= 1");
  if (tol <= 0) throw std::invalid_argument("tail_q_mass: tol must be > 0");
  LevelSet lv = level(v.r, m);
  const std::size_t n = lv.vertices.size();
  Word ctx = materialize(v, m + 1);
  Word sctx = forget_indices(ctx);
  Rat tol_each = tol / Rat(static_cast<long long>(std::max<std::size_t>(n, 1)));

  struct Slot {
    bool qbar = false, qtilde = false, has_mass = false;
    int qhat = -1;  // e(w,v) when the indicator fires, else -1
    MeasureValue mass;
  };
  std::vector<Slot> slots(n);
  parallel_for(n, threads, [&](std::size_t idx) {
    const Word& w = lv.vertices[idx];
    SuffixRelation rel = common_suffix(w, ctx);
    Slot s;
    s.qbar = rel.e_common < k;
    s.qtilde = common_suffix(forget_indices(w), sctx).e_common < k;
    if (rel.indicator == 1 && rel.e_common < k) s.qhat = rel.e_common;
    if (s.qbar || s.qtilde || s.qhat >= 0) {
      s.mass = boundary_measure(w, v, beta, tol_each);
      s.has_mass = true;
    }
    slots[idx] = s;
  });

  QMassRow row;
  row.m = m;
  row.mass_qbar = MeasureValue::exact(Rat(0));
  row.mass_qtilde = MeasureValue::exact(Rat(0));
  row.mass_qhat.assign(static_cast<std::size_t>(k), MeasureValue::exact(Rat(0)));
  for (const Slot& s : slots) {
    if (!s.has_mass) continue;
    if (s.qbar) {
      ++row.size_qbar;
      row.mass_qbar = row.mass_qbar + s.mass;
    }
    if (s.qtilde) row.mass_qtilde = row.mass_qtilde + s.mass;
    if (s.qhat >= 0) {
      auto& cell = row.mass_qhat[static_cast<std::size_t>(s.qhat)];
      cell = cell + s.mass;
    }
  }
  return row;
}

TailRow tail_r_mass(const BoundaryVertex& v, const Rat& beta, int m, const Rat& eps,
                    const Rat& tol, int threads) {
  if (m < 0) throw std::invalid_argument("tail_r_mass: m must be >= 0");
  if (eps <= 0) throw std::invalid_argument("tail_r_mass: eps must be > 0");
  if (tol <= 0) throw std::invalid_argument("tail_r_mass: tol must be > 0");
  MeasureValue pv = pi_boundary(v, reference_pi_tol(v));
  Float lo = pv.value() * to_float(beta - eps);
  Float hi = pv.value() * to_float(beta + eps);
  LevelSet lv = level(v.r, m);
  const std::size_t n = lv.vertices.size();
  Rat tol_each = tol / Rat(static_cast<long long>(std::max<std::size_t>(n, 1)));

  struct Slot {
    bool in_set = false;
    MeasureValue mass;
  };
  std::vector<Slot> slots(n);
  parallel_for(n, threads, [&](std::size_t idx) {
    const Word& w = lv.vertices[idx];
    Float pw = to_float(pi(w));
    Slot s;
    if (pw <= lo || pw >= hi) {
      s.in_set = true;
      s.mass = boundary_measure(w, v, beta, tol_each);
    }
    slots[idx] = s;
  });

  TailRow row;
  row.m = m;
  row.mass = MeasureValue::exact(Rat(0));
  for (const Slot& s : slots)
    if (s.in_set) {
      ++row.set_size;
      row.mass = row.mass + s.mass;
    }
  return row;
}

namespace {

Word join3(const Word& a, std::uint8_t mid, const Word& b, int r) {
  std::vector<std::uint8_t> syms(a.syms());
  syms.push_back(mid);
  syms.insert(syms.end(), b.syms().begin(), b.syms().end());
  return Word(r, std::move(syms));
}

}  // namespace

InequalityScan inequality_scan(int r, int max_weight) {
  if (r < 1 || max_weight < 2)
    throw std::invalid_argument("inequality_scan: need r >= 1 and max_weight >= 2");
  InequalityScan out;

  // d_r(w 1_i u, v 1_j u) <= d_r(w 1_i u, v 2 u) for i != j.
  if (r >= 2) {
    std::vector<std::vector<Word>> levels;
    for (int n = 0; n <= max_weight - 2; ++n) levels.push_back(level(r, n).vertices);
    for (int nu = 0; nu + 2 <= max_weight && out.ok; ++nu)
      for (const Word& u : levels[static_cast<std::size_t>(nu)]) {
        if (!out.ok) break;
        for (int nv = 0; nu + nv + 2 <= max_weight && out.ok; ++nv)
          for (const Word& vv : levels[static_cast<std::size_t>(nv)]) {
            if (!out.ok) break;
            for (int nw = 0; nw <= nv && out.ok; ++nw)
              for (const Word& ww : levels[static_cast<std::size_t>(nw)]) {
                if (!out.ok) break;
                for (int i = 1; i <= r && out.ok; ++i) {
                  Word wi = join3(ww, static_cast<std::uint8_t>(i), u, r);
                  Word v2 = join3(vv, kTwo, u, r);
                  Int rhs = dr_closed(wi, v2);
                  for (int j = 1; j <= r; ++j) {
                    if (j == i) continue;
                    Word vj = join3(vv, static_cast<std::uint8_t>(j), u, r);
                    Int lhs = dr_closed(wi, vj);
                    ++out.checked_counts;
                    if (lhs > rhs) {
                      out.ok = false;
                      out.counterexample = "d_r(" + format_word(wi) + ", " + format_word(vj) +
                                           ") = " + lhs.str() + " > " + rhs.str() + " = d_r(" +
                                           format_word(wi) + ", " + format_word(v2) + ")";
                      break;
                    }
                  }
                }
              }
          }
      }
  }

  // pi(v 2 u) >= pi(v 1 u) / 2, index-blind.
  std::vector<std::vector<Word>> flat;
  for (int n = 0; n <= max_weight - 2; ++n) flat.push_back(level(1, n).vertices);
  for (int nu = 0; nu + 2 <= max_weight && out.ok; ++nu)
    for (const Word& u : flat[static_cast<std::size_t>(nu)]) {
      if (!out.ok) break;
      for (int nv = 0; nu + nv + 2 <= max_weight && out.ok; ++nv)
        for (const Word& vv : flat[static_cast<std::size_t>(nv)]) {
          Word v2 = join3(vv, kTwo, u, 1);
          Word v1 = join3(vv, 1, u, 1);
          ++out.checked_pi;
          if (2 * pi(v2) < pi(v1)) {
            out.ok = false;
            out.counterexample = "pi(" + format_word(v2) + ")/pi(" + format_word(v1) +
                                 ") < 1/2";
            break;
          }
        }
    }
  return out;
}

namespace {

// Run-aligned sample depths: symbol counts of 1, 2, ... full runs, capped by
// n_max symbols.  Falls back to n_max alone when even one run is too long.
std::vector<int> run_aligned_depths(const BoundaryVertex& v, int n_max) {
  std::vector<int> out;
  Int symbols = 0;
  for (long long j = 0;; ++j) {
    symbols += beta_at(v, j) + 1;
    if (symbols > n_max) break;
    out.push_back(static_cast<int>(symbols));
  }
  if (out.empty() && n_max >= 1) out.push_back(n_max);
  return out;
}

MeasureValue ratio_over_enclosure(const Rat& num, const MeasureValue& den) {
  Float lo = den.value() - den.radius();
  Float hi = den.value() + den.radius();
  if (lo <= 0) throw std::logic_error("ratio_over_enclosure: denominator touches zero");
  Float nf = to_float(num);
  Float rlo = nf / hi, rhi = nf / lo;
  Float mid = (rlo + rhi) / 2;
  return MeasureValue::approx(mid, (rhi - rlo) / 2 + float_slop() * (abs(mid) + 1) * 8);
}

}  // namespace

std::vector<KernelTraceRow> kernel_trace(const Word& w, const BoundaryVertex& v,
                                         const Rat& beta, int n_max, const Rat& tol) {
  if (w.r() != v.r) throw std::invalid_argument("kernel_trace: mixed r");
  if (n_max < 1) throw std::invalid_argument("kernel_trace: n_max must be >= 1");
  if (tol <= 0) throw std::invalid_argument("kernel_trace: tol must be > 0");
  MeasureValue mu = boundary_measure(w, v, beta, tol / 2);
  std::vector<KernelTraceRow> rows;
  for (int n : run_aligned_depths(v, n_max)) {
    Word vn = truncation_sequence(v, beta, n);
    KernelTraceRow row;
    row.n = n;
    row.kernel = martin_kernel(w, vn);
    MeasureValue diff = MeasureValue::exact(row.kernel) - mu;
    row.distance = MeasureValue::approx(abs(diff.value()), diff.radius());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<GkRatioRow> gk_ratio_trace(const BoundaryVertex& v, const Rat& beta, int i,
                                       int n_max, const Rat& tol) {
  if (i < 1) throw std::invalid_argument("gk_ratio_trace: i must be >= 1");
  if (beta <= 0 || beta > 1)
    throw std::invalid_argument("gk_ratio_trace: beta must lie in (0,1]");
  if (n_max < 1) throw std::invalid_argument("gk_ratio_trace: n_max must be >= 1");
  if (tol <= 0) throw std::invalid_argument("gk_ratio_trace: tol must be > 0");
  if (v.tail.kind == TailKind::Constant)
    throw std::invalid_argument("gk_ratio_trace: constant tail has pi_i(v) = 0");
  MeasureValue pvk = pi_k_boundary(v, i, tol / 8);
  Rat beta_i = rat_pow(beta, static_cast<unsigned>(i));
  Float target = to_float(beta_i);
  std::vector<GkRatioRow> rows;
  for (int n : run_aligned_depths(v, n_max)) {
    // For beta < 1 aim slightly above beta so the remaining drift dominates
    // the k-step granularity and the distance decays monotonely.
    Word vn;
    if (beta == 1) {
      vn = truncation_sequence(v, Rat(1), n);
    } else {
      Int isq = boost::multiprecision::sqrt(Int(n));
      if (isq < 1) isq = 1;
      Rat inflated = beta * Rat(2 * isq + 1, 2 * isq);
      if (inflated > 1) inflated = 1;
      vn = truncation_sequence(v, inflated, n);
    }
    GkRatioRow row;
    row.n = n;
    row.ratio = ratio_over_enclosure(pi_k(vn, i), pvk);
    row.distance = abs(row.ratio.value() - target);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string q_rows_to_json(const std::string& vtext, int r, const Rat& beta, int k,
                           const Rat& tol, const std::vector<QMassRow>& rows) {
  ordered_json j;
  j["experiment"] = "tails-q";
  j["v"] = vtext;
  j["r"] = r;
  j["beta"] = rat_string(beta);
  j["k"] = k;
  j["tol"] = rat_string(tol);
  j["rows"] = ordered_json::array();
  for (const QMassRow& row : rows) {
    ordered_json rj;
    rj["m"] = row.m;
    rj["size_qbar"] = row.size_qbar;
    rj["mass_qbar"] = measure_json(row.mass_qbar);
    rj["mass_qtilde"] = measure_json(row.mass_qtilde);
    rj["mass_qhat"] = ordered_json::array();
    for (const MeasureValue& m : row.mass_qhat) rj["mass_qhat"].push_back(measure_json(m));
    j["rows"].push_back(std::move(rj));
  }
  return j.dump(2);
}

std::string r_rows_to_json(const std::string& vtext, int r, const Rat& beta, const Rat& eps,
                           const Rat& tol, const std::vector<TailRow>& rows) {
  ordered_json j;
  j["experiment"] = "tails-r";
  j["v"] = vtext;
  j["r"] = r;
  j["beta"] = rat_string(beta);
  j["eps"] = rat_string(eps);
  j["tol"] = rat_string(tol);
  j["rows"] = ordered_json::array();
  for (const TailRow& row : rows) {
    ordered_json rj;
    rj["m"] = row.m;
    rj["set_size"] = row.set_size;
    rj["mass"] = measure_json(row.mass);
    j["rows"].push_back(std::move(rj));
  }
  return j.dump(2);
}

}  // namespace yf
