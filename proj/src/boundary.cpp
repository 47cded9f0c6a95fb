#include "yf/boundary.hpp"

#include <algorithm>
#include <cctype>

#include "yf/closed_form.hpp"
#include "yf/graph.hpp"

namespace yf {

namespace {

constexpr long long kProductIterationCap = 2'000'000;
constexpr long long kPrependCap = 1'000'000;

Int pow_int(const Int& base, long long exp) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// ---- text form ------------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string strip_ws(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

Int parse_int(const std::string& s) {
  std::string t = strip_ws(s);
  if (t.empty()) throw parse_error("boundary vertex: empty integer");
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) throw parse_error("boundary vertex: bad integer \"" + s + "\"");
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i])))
      throw parse_error("boundary vertex: bad integer \"" + s + "\"");
  return Int(t);
}

// "name(arg,...)" -> {name, args}; empty arg list allowed
std::pair<std::string, std::vector<std::string>> parse_call(const std::string& s) {
  std::size_t open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw parse_error("boundary vertex: expected name(...) in \"" + s + "\"");
  std::string name = strip_ws(s.substr(0, open));
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  std::vector<std::string> args;
  if (!strip_ws(inner).empty()) args = split(inner, ',');
  return {name, args};
}

IndexRule parse_index_rule(const std::string& s, int r, const char* key) {
  auto [name, args] = parse_call(strip_ws(s));
  IndexRule rule;
  if (name == "const") {
    if (args.size() != 1) throw parse_error(std::string("boundary vertex: ") + key + "=const needs one index");
    rule.cyclic = false;
    rule.pattern = {static_cast<int>(parse_int(args[0]))};
  } else if (name == "cycle") {
    if (args.empty()) throw parse_error(std::string("boundary vertex: ") + key + "=cycle needs indices");
    rule.cyclic = true;
    rule.pattern.clear();
    for (const auto& a : args) rule.pattern.push_back(static_cast<int>(parse_int(a)));
  } else {
    throw parse_error(std::string("boundary vertex: unknown index rule \"") + name + "\"");
  }
  for (int i : rule.pattern)
    if (i < 1 || i > r)
      throw parse_error(std::string("boundary vertex: ") + key + " index outside 1..r");
  return rule;
}

int rule_index(const IndexRule& rule, long long t) {
  if (!rule.cyclic) return rule.pattern[0];
  return rule.pattern[static_cast<std::size_t>(t % static_cast<long long>(rule.pattern.size()))];
}

std::string format_index_rule(const IndexRule& rule) {
  std::string out = rule.cyclic ? "cycle(" : "const(";
  for (std::size_t i = 0; i < rule.pattern.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(rule.pattern[i]);
  }
  return out + ")";
}

}  // namespace

BoundaryVertex parse_boundary_vertex(const std::string& text, int r) {
  if (r < 1) throw parse_error("boundary vertex: r must be >= 1");
  BoundaryVertex v;
  v.r = r;
  bool have_tail = false;
  for (const std::string& raw : split(text, ';')) {
    std::string part = strip_ws(raw);
    if (part.empty()) continue;
    std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw parse_error("boundary vertex: expected key=value in \"" + part + "\"");
    std::string key = strip_ws(part.substr(0, eq));
    std::string val = strip_ws(part.substr(eq + 1));
    if (key == "runs") {
      if (val.size() < 2 || val.front() != '[' || val.back() != ']')
        throw parse_error("boundary vertex: runs must be [..]");
      std::string inner = strip_ws(val.substr(1, val.size() - 2));
      v.runs.clear();
      if (!inner.empty())
        for (const auto& item : split(inner, ',')) {
          Int b = parse_int(item);
          if (b < 0) throw parse_error("boundary vertex: run length must be >= 0");
          v.runs.push_back(b);
        }
    } else if (key == "idx") {
      v.idx = parse_index_rule(val, r, "idx");
    } else if (key == "tidx") {
      v.tidx = parse_index_rule(val, r, "tidx");
    } else if (key == "tail") {
      auto [name, args] = parse_call(val);
      if (name == "constant") {
        if (args.size() != 1) throw parse_error("boundary vertex: tail=constant(c)");
        v.tail = {TailKind::Constant, parse_int(args[0]), 0};
        if (v.tail.p0 < 0) throw parse_error("boundary vertex: constant tail needs c >= 0");
      } else if (name == "linear") {
        if (args.size() != 2) throw parse_error("boundary vertex: tail=linear(a,b)");
        v.tail = {TailKind::Linear, parse_int(args[0]), parse_int(args[1])};
        if (v.tail.p0 < 0 || v.tail.p1 < 1)
          throw parse_error("boundary vertex: linear tail needs a >= 0, b >= 1");
      } else if (name == "geometric") {
        if (args.size() != 2) throw parse_error("boundary vertex: tail=geometric(b0,q)");
        v.tail = {TailKind::Geometric, parse_int(args[0]), parse_int(args[1])};
        if (v.tail.p0 < 1 || v.tail.p1 < 2)
          throw parse_error("boundary vertex: geometric tail needs b0 >= 1, q >= 2");
      } else {
        throw parse_error("boundary vertex: unknown tail rule \"" + name + "\"");
      }
      have_tail = true;
    } else {
      throw parse_error("boundary vertex: unknown key \"" + key + "\"");
    }
  }
  if (!have_tail) throw parse_error("boundary vertex: tail rule is required");
  return v;
}

std::string format_boundary_vertex(const BoundaryVertex& v) {
  std::string out = "runs=[";
  for (std::size_t i = 0; i < v.runs.size(); ++i) {
    if (i) out += ',';
    out += v.runs[i].str();
  }
  out += "];idx=" + format_index_rule(v.idx) + ";tail=";
  switch (v.tail.kind) {
    case TailKind::Constant: out += "constant(" + v.tail.p0.str() + ")"; break;
    case TailKind::Linear:
      out += "linear(" + v.tail.p0.str() + "," + v.tail.p1.str() + ")";
      break;
    case TailKind::Geometric:
      out += "geometric(" + v.tail.p0.str() + "," + v.tail.p1.str() + ")";
      break;
  }
  out += ";tidx=" + format_index_rule(v.tidx);
  return out;
}

Int beta_at(const BoundaryVertex& v, long long j) {
  if (j < 0) throw std::invalid_argument("beta_at: j must be >= 0");
  long long m = static_cast<long long>(v.runs.size());
  if (j < m) return v.runs[static_cast<std::size_t>(j)];
  long long u = j - m;
  switch (v.tail.kind) {
    case TailKind::Constant: return v.tail.p0;
    case TailKind::Linear: return v.tail.p0 + v.tail.p1 * u;
    case TailKind::Geometric: return v.tail.p0 * pow_int(v.tail.p1, u);
  }
  return 0;
}

namespace {

// sum of b_t for t < j, exact
Int beta_prefix_sum(const BoundaryVertex& v, long long j) {
  long long m = static_cast<long long>(v.runs.size());
  Int sum = 0;
  long long explicit_part = std::min(j, m);
  for (long long t = 0; t < explicit_part; ++t) sum += v.runs[static_cast<std::size_t>(t)];
  if (j <= m) return sum;
  Int u(j - m);
  switch (v.tail.kind) {
    case TailKind::Constant: sum += v.tail.p0 * u; break;
    case TailKind::Linear: sum += v.tail.p0 * u + v.tail.p1 * u * (u - 1) / 2; break;
    case TailKind::Geometric:
      sum += v.tail.p0 * (pow_int(v.tail.p1, j - m) - 1) / (v.tail.p1 - 1);
      break;
  }
  return sum;
}

}  // namespace

Int g_at(const BoundaryVertex& v, long long j) {
  if (j < 1) throw std::invalid_argument("g_at: j must be >= 1");
  return beta_prefix_sum(v, j) + 2 * j - 1;
}

Word materialize(const BoundaryVertex& v, int n) {
  if (n < 0) throw std::invalid_argument("materialize: n must be >= 0");
  std::vector<std::uint8_t> rev;  // built right to left
  rev.reserve(static_cast<std::size_t>(n));
  for (long long j = 0; static_cast<int>(rev.size()) < n; ++j) {
    const IndexRule& rule = j < static_cast<long long>(v.runs.size()) ? v.idx : v.tidx;
    Int b = beta_at(v, j);
    for (Int t = 0; t < b && static_cast<int>(rev.size()) < n; ++t)
      rev.push_back(static_cast<std::uint8_t>(rule_index(rule, static_cast<long long>(t))));
    if (static_cast<int>(rev.size()) < n) rev.push_back(kTwo);
  }
  std::reverse(rev.begin(), rev.end());
  return Word(v.r, std::move(rev));
}

Word materialize_runs(const BoundaryVertex& v, int k) {
  if (k < 0) throw std::invalid_argument("materialize_runs: k must be >= 0");
  Int symbols = beta_prefix_sum(v, k) + k;
  if (symbols > 10'000'000) throw budget_error("materialize_runs: suffix too long");
  return materialize(v, static_cast<int>(symbols));
}

BoundaryVertex forget_indices(const BoundaryVertex& v) {
  BoundaryVertex out = v;
  out.r = 1;
  out.idx = IndexRule{};
  out.tidx = IndexRule{};
  return out;
}

Rat pi(const Word& v) { return pi_k(v, 1); }

Rat pi_k(const Word& v, int k) {
  if (k < 1) throw std::invalid_argument("pi_k: k must be >= 1");
  Rat prod = 1;
  for (const Int& g : g_values(v))
    if (g > k) prod *= Rat(g - k, g);
  return prod;
}

namespace {

// Walks g_j incrementally: g_j = prefix_sum + 2j - 1.
struct GWalker {
  const BoundaryVertex& v;
  long long j = 0;   // index of the NEXT g to produce (after advance)
  Int prefix = 0;    // sum of b_t, t < j
  Int g = 0;         // g_j once j >= 1

  explicit GWalker(const BoundaryVertex& vv) : v(vv) {}

  void advance() {  // move to j+1
    prefix += beta_at(v, j);
    ++j;
    g = prefix + 2 * j - 1;
  }

  void seek(long long target) {
    while (j < target) advance();
  }
};

// Certified enclosure of the remainder product R = prod_{j' >= J} (1 - c/g_{j'}).
// `ok` stays false until the family-specific bound is applicable at J.
struct RemainderBounds {
  bool ok = false;
  Float lo = 0;
  Float hi = 1;
};

// gJ must be g_J, the first factor not yet folded into the partial product.
RemainderBounds remainder_bounds(const BoundaryVertex& v, const Int& c, long long J,
                                 const Int& gJ) {
  RemainderBounds rb;
  long long m = static_cast<long long>(v.runs.size());
  if (J < m + 1) return rb;  // wait until inside the tail family
  if (gJ <= c) return rb;
  if (v.tail.kind == TailKind::Geometric) {
    // g_j >= b_{j-1}; once g_J >= 2c every later term obeys
    // c/(g_j - c) <= 2c/g_j <= 2c/b_{j-1}, and the b's grow by factor q,
    // so sum_{j>=J} c/(g_j - c) <= U = 2c*q/((q-1)*b_{J-1}).  Weierstrass
    // gives R >= 1 - U; R <= 1 because every factor lies in (0,1).
    if (gJ < 2 * c) return rb;
    Int bj = beta_at(v, J - 1);
    Rat U(2 * c * v.tail.p1, bj * (v.tail.p1 - 1));
    rb.ok = true;
    Float lo = Float(1) - to_float(U);
    rb.lo = lo > 0 ? lo : Float(0);
    rb.hi = 1;
    return rb;
  }
  if (v.tail.kind == TailKind::Linear) {
    // For u = j - m >= 1: g_j = A u^2 + B u + C with A = b/2,
    // B = a + 2 - b/2, C = S_m + 2m - 1; with t = u + s, s = B/(2A):
    // g_j - c = A t^2 + D, g_j = A t^2 + D0, D = C - c - B^2/(4A), D0 = D + c.
    // Bracket the logarithm,
    //   -sum_{j>=J} c/(g_j - c) <= log R <= -sum_{j>=J} c/g_j,
    // and pinch each sum between integrals: for positive convex integrable h,
    //   h(u0)/2 + int_{u0}^inf h <= sum_{u>=u0} h(u) <= int_{u0-1/2}^inf h
    // (trapezoid and midpoint rules).  The integrals are arctan/artanh tails,
    // replaced here by rational series bounds.  The resulting bracket width
    // shrinks like 1/t^3, so any fixed tolerance is reached after finitely
    // many folded factors.
    Rat A(v.tail.p1, 2);
    Rat B = Rat(v.tail.p0) + 2 - A;
    Rat C(beta_prefix_sum(v, m) + 2 * m - 1);
    Rat s = B / (2 * A);
    Rat D = (C - Rat(c)) - B * B / (4 * A);
    Rat D0 = D + Rat(c);
    Rat X = Rat(J - 1 - m) + s;  // continuous coordinate of u0 - 1
    if (X <= 0) return rb;
    Rat T1 = X + Rat(1, 2);  // midpoint-rule left endpoint
    Rat T2 = X + 1;          // coordinate of the first kept factor
    // Applicability: both integrands positive and convex from T1/T2 on, and
    // the series arguments z^2 = |D|/(A T^2) strictly below 1.
    if (abs_rat(D) >= A * T1 * T1) return rb;
    if (D0 > 0 && D0 > A * T2 * T2) return rb;

    // Upper bound for sum_{j>=J} c/(g_j - c): midpoint integral from T1,
    // int_T^inf c dt/(A t^2 + D) = (c/(A T)) * arctan(z)/z  (z^2 = D/(A T^2))
    //                            = (c/(A T)) * artanh(w)/w  (w^2 = -D/(A T^2)).
    Rat s_hi;
    if (D == 0) {
      s_hi = Rat(c) / (A * T1);
    } else if (D > 0) {
      Rat z2 = D / (A * T1 * T1);
      s_hi = Rat(c) / (A * T1) * (1 - z2 / 3 + z2 * z2 / 5);
    } else {
      Rat w2 = -D / (A * T1 * T1);
      s_hi = Rat(c) / (A * T1) * (1 + w2 / 3 + w2 * w2 / (3 * (1 - w2)));
    }

    // Lower bound for sum_{j>=J} c/g_j: half the first term plus the integral
    // from T2 (trapezoid rule), with lower series bounds for the integral.
    Rat s_lo = Rat(c, gJ) / 2;
    if (D0 == 0) {
      s_lo += Rat(c) / (A * T2);
    } else if (D0 > 0) {
      Rat z2 = D0 / (A * T2 * T2);
      s_lo += Rat(c) / (A * T2) * (1 - z2 / 3);
    } else {
      Rat w2 = -D0 / (A * T2 * T2);  // < 1 because A*T2^2 + D0 = g_J > 0
      s_lo += Rat(c) / (A * T2) * (1 + w2 / 3);
    }
    if (s_lo < 0) s_lo = 0;

    rb.ok = true;
    rb.lo = exp(-to_float(s_hi));
    rb.hi = exp(-to_float(s_lo));
    return rb;
  }
  return rb;  // Constant tails diverge; handled before the loop
}

}  // namespace

MeasureValue shifted_g_product(const BoundaryVertex& v, long long a, const Int& c,
                               const Rat& tol) {
  if (a < 1) throw std::invalid_argument("shifted_g_product: a must be >= 1");
  if (c < 0) throw std::invalid_argument("shifted_g_product: c must be >= 0");
  if (tol <= 0) throw std::invalid_argument("shifted_g_product: tol must be > 0");
  if (c == 0) return MeasureValue::exact(Rat(1));
  if (v.tail.kind == TailKind::Constant) return MeasureValue::exact(Rat(0));

  GWalker walk(v);
  walk.seek(a - 1);

  // Exactly multiply the finitely many factors with g_j <= c.
  Rat q_exact = 1;
  long long j = a;
  for (;; ++j) {
    walk.advance();  // g = g_j
    if (walk.g > c) break;
    if (walk.g == c) return MeasureValue::exact(Rat(0));
    q_exact *= Rat(walk.g - c, walk.g);
  }

  // Positive tail: factors (g_j - c)/g_j in (0,1) from j on.  The partial
  // product accumulates in Float; the remainder R satisfies
  // rb.lo <= R <= rb.hi with rb a certified family enclosure, so looping
  // until |q_exact| * P * (rb.hi - rb.lo) <= tol certifies the result.  The
  // enclosure is re-evaluated on a geometric schedule so its cost stays
  // negligible next to the factor updates.
  Float P = 1;
  Float q_abs = abs(to_float(q_exact));
  Float tol_f = to_float(tol);
  long long iterations = 0;
  long long next_check = 0;
  RemainderBounds rb;
  for (;;) {
    if (iterations >= next_check) {
      rb = remainder_bounds(v, c, j, walk.g);
      if (rb.ok && q_abs * P * (rb.hi - rb.lo) <= tol_f) break;
      next_check = iterations + 1 + iterations / 8;
    }
    P *= Float(walk.g - c) / Float(walk.g);
    ++j;
    walk.advance();
    if (++iterations > kProductIterationCap)
      throw budget_error("shifted_g_product: certified truncation exceeded its iteration cap");
  }

  Float mid = to_float(q_exact) * P * (rb.lo + rb.hi) / 2;
  Float rad =
      q_abs * P * (rb.hi - rb.lo) / 2 + Float(iterations + 16) * float_slop() * (abs(mid) + 1);
  return MeasureValue::approx(mid, rad);
}

namespace {

MeasureValue pi_like_boundary(const BoundaryVertex& v, int k, const Rat& tol) {
  if (tol <= 0) throw std::invalid_argument("pi_boundary: tol must be > 0");
  if (v.tail.kind == TailKind::Constant) return MeasureValue::approx(Float(0), Float(0));
  GWalker walk(v);
  long long j_start = 0;
  do {
    walk.advance();
    j_start = walk.j;
  } while (walk.g <= k);
  return shifted_g_product(v, j_start, Int(k), tol);
}

}  // namespace

MeasureValue pi_boundary(const BoundaryVertex& v, const Rat& tol) {
  return pi_like_boundary(v, 1, tol);
}

MeasureValue pi_k_boundary(const BoundaryVertex& v, int k, const Rat& tol) {
  if (k < 1) throw std::invalid_argument("pi_k_boundary: k must be >= 1");
  return pi_like_boundary(v, k, tol);
}

MeasureValue plancherel(const Word& w, int r) {
  if (r < 1) throw std::invalid_argument("plancherel: r must be >= 1");
  for (int i = 0; i < w.length(); ++i)
    if (w.is_unit(i) && w.sym(i) > r)
      throw std::invalid_argument("plancherel: unit index exceeds r");
  Int d1 = d1_epsilon(w);
  Int fact = 1;
  for (int i = 2; i <= w.weight(); ++i) fact *= i;
  return MeasureValue::exact(Rat(d1 * d1, fact * pow_int(Int(r), w.units())));
}

MeasureValue boundary_measure(const Word& w, const BoundaryVertex& v, const Rat& beta,
                              const Rat& tol) {
  if (w.r() != v.r) throw std::invalid_argument("boundary_measure: mixed r");
  if (beta <= 0 || beta > 1)
    throw std::invalid_argument("boundary_measure: beta must lie in (0,1]");
  if (tol <= 0) throw std::invalid_argument("boundary_measure: tol must be > 0");
  if (v.tail.kind == TailKind::Constant)
    throw std::invalid_argument(
        "boundary_measure: constant tail has pi(v)=0; that regime is the Plancherel measure");

  const int r = v.r;
  const int W = w.weight();
  const int len = w.length();
  Word ctx = materialize(v, 2 * len + 2);
  SuffixRelation rel = common_suffix(w, ctx);
  const int e = rel.e_common;
  const int ind = rel.indicator;
  Word sw = forget_indices(w);
  Word sctx = forget_indices(ctx);

  const long long calls = static_cast<long long>(W + 1) * (e + 2);
  auto call_tol = [&](const Rat& coeff) {
    return tol / (Rat(4 * calls) * (abs_rat(coeff) + 1));
  };

  // L_0
  MeasureValue bracket = MeasureValue::exact(Rat(0));
  {
    int h0 = common_suffix(sw, sctx).h;
    Rat beta_pow = 1;
    for (int i = 0; i <= W; ++i, beta_pow *= beta) {
      Rat fi = f_eval(sw, i, h0);
      if (fi == 0) continue;
      Rat coeff = fi * beta_pow;
      bracket = bracket + shifted_g_product(v, 1, Int(i), call_tol(coeff)).scaled(coeff);
    }
  }

  // L_l, weighted r^l - r^{l-1} for l <= e and -r^e for the indicator term
  for (int l = 1; l <= e + ind; ++l) {
    Word wl = strip_from_unit(sw, l);
    Word vtail = suffix_from_unit(ctx, l);  // v<l>, a finite suffix of v
    Word svl = strip_from_unit(sctx, l);
    int hl = common_suffix(wl, svl).h;
    int dtl = vtail.twos();
    int wtl = vtail.weight();
    Rat inv_g = 1;
    for (int t = 1; t <= dtl; ++t) inv_g /= Rat(g_at(v, t));
    Rat weight_l = l <= e ? Rat(pow_int(Int(r), l) - pow_int(Int(r), l - 1))
                          : -Rat(pow_int(Int(r), e));
    if (weight_l == 0) continue;  // r = 1 collapses every l-term
    MeasureValue Ll = MeasureValue::exact(Rat(0));
    Rat beta_pow = rat_pow(beta, static_cast<unsigned>(wtl));
    for (int i = 0; i <= W; ++i, beta_pow *= beta) {
      Rat fi = f_eval(wl, i, hl);
      if (fi == 0) continue;
      Rat coeff = fi * beta_pow * inv_g;
      Ll = Ll + shifted_g_product(v, dtl + 1, Int(wtl + i), call_tol(coeff)).scaled(coeff);
    }
    bracket = bracket + Ll.scaled(weight_l);
  }

  Rat prefactor(d1_epsilon(sw), pow_int(Int(r), w.units()));
  return bracket.scaled(prefactor);
}

Rat martin_kernel(const Word& w, const Word& v) {
  if (w.r() != v.r()) throw std::invalid_argument("martin_kernel: mixed r");
  if (w.weight() > v.weight()) return Rat(0);
  return Rat(dr_epsilon(w) * dr_closed(w, v)) / Rat(dr_epsilon(v));
}

namespace {

Word prepend_twos(const Word& base, long long k) {
  std::vector<std::uint8_t> syms(static_cast<std::size_t>(k), kTwo);
  syms.insert(syms.end(), base.syms().begin(), base.syms().end());
  return Word(base.r(), std::move(syms));
}

// pi tolerance for the k-search; linear tails certify slowly, so they get a
// looser (still certified) target.
Rat ratio_search_tol(const BoundaryVertex& v) {
  return v.tail.kind == TailKind::Linear ? Rat(1, Int("1000000")) : Rat(1, Int("1000000000000"));
}

long long choose_prepend_count(const BoundaryVertex& v, const Rat& beta, const Word& base) {
  MeasureValue pv = pi_boundary(v, ratio_search_tol(v));
  Float target = to_float(beta);
  Float ratio = to_float(pi(base)) / pv.value();
  if (ratio <= target) return 0;
  Int weight = base.weight();
  for (long long k = 1; k <= kPrependCap; ++k) {
    // prepending a Two adds the g-value weight+1; g = 1 contributes nothing
    Float next = weight == 0 ? ratio : ratio * Float(weight) / Float(weight + 1);
    if (next <= target) return (ratio - target) <= (target - next) ? k - 1 : k;
    ratio = next;
    weight += 2;
  }
  throw budget_error("truncation_sequence: prepend search exceeded its cap");
}

}  // namespace

Word truncation_sequence(const BoundaryVertex& v, const Rat& beta, int n) {
  if (beta <= 0 || beta > 1)
    throw std::invalid_argument("truncation_sequence: beta must lie in (0,1]");
  if (n < 0) throw std::invalid_argument("truncation_sequence: n must be >= 0");
  if (v.tail.kind == TailKind::Constant)
    throw std::invalid_argument("truncation_sequence: constant tail has pi(v)=0");
  Word base = materialize(v, n);
  if (beta == 1) return base;
  return prepend_twos(base, choose_prepend_count(v, beta, base));
}

TruncationInfo truncation_info(const BoundaryVertex& v, const Rat& beta, int n) {
  TruncationInfo info;
  info.word = truncation_sequence(v, beta, n);
  MeasureValue pv = pi_boundary(v, ratio_search_tol(v));
  Float lo = pv.value() - pv.radius();
  Float hi = pv.value() + pv.radius();
  if (lo <= 0) throw std::logic_error("truncation_info: pi(v) enclosure touches zero");
  Float num = to_float(pi(info.word));
  Float rlo = num / hi, rhi = num / lo;
  Float mid = (rlo + rhi) / 2;
  info.achieved_ratio =
      MeasureValue::approx(mid, (rhi - rlo) / 2 + float_slop() * (abs(mid) + 1) * 8);
  return info;
}

MeasureValue harmonicity_residual(const std::function<MeasureValue(const Word&)>& measure,
                                  const Word& w) {
  MeasureValue res = measure(w).scaled(Rat(1, dr_epsilon(w)));
  for (const Word& up : up_neighbors(w))
    res = res - measure(up).scaled(Rat(1, dr_epsilon(up)));
  return res;
}

MeasureValue level_mass(const std::function<MeasureValue(const Word&)>& measure, int r, int m) {
  MeasureValue total = MeasureValue::exact(Rat(0));
  for (const Word& w : level(r, m).vertices) total = total + measure(w);
  return total;
}

}  // namespace yf
