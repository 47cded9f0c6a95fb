#include "yf/verify.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <vector>

#include "yf/boundary.hpp"
#include "yf/closed_form.hpp"
#include "yf/experiments.hpp"
#include "yf/graph.hpp"
#include "yf/word.hpp"

namespace yf {

namespace {

std::string pair_str(const Word& w, const Word& v) {
  return "w=\"" + format_word(w) + "\" v=\"" + format_word(v) + "\"";
}

std::vector<std::vector<Word>> levels_up_to(int r, int max_weight) {
  std::vector<std::vector<Word>> out;
  for (int n = 0; n <= max_weight; ++n) out.push_back(level(r, n).vertices);
  return out;
}

}  // namespace

SuiteResult verify_d1_closed(int max_weight) { return verify_dr_closed(1, max_weight); }

SuiteResult verify_dr_closed(int r, int max_weight) {
  SuiteResult res;
  res.suite = r == 1 ? "d1-closed" : "dr-closed";
  auto lv = levels_up_to(r, max_weight);
  for (int nv = 0; nv <= max_weight; ++nv)
    for (const Word& v : lv[static_cast<std::size_t>(nv)]) {
      std::map<Word, Int> table = count_paths_table(v);
      for (int nw = 0; nw <= nv; ++nw)
        for (const Word& w : lv[static_cast<std::size_t>(nw)]) {
          auto it = table.find(w);
          Int dp = it == table.end() ? Int(0) : it->second;
          Int cf = r == 1 ? d1_closed(w, v) : dr_closed(w, v);
          ++res.checks;
          if (dp != cf) {
            res.pass = false;
            res.counterexample =
                pair_str(w, v) + " dp=" + dp.str() + " closed=" + cf.str();
            return res;
          }
        }
    }
  return res;
}

SuiteResult verify_suffix_class(int r, int max_weight) {
  SuiteResult res;
  res.suite = "suffix-class";
  auto lv = levels_up_to(r, max_weight);
  for (int nv = 0; nv <= max_weight; ++nv)
    for (const Word& v : lv[static_cast<std::size_t>(nv)])
      for (int nw = 0; nw <= nv; ++nw)
        for (const Word& w : lv[static_cast<std::size_t>(nw)]) {
          int h = common_suffix(w, v).h;
          Int total = 0;
          for (int l = 0; l <= h; ++l) {
            Int by_dp = count_paths_suffix_class(w, v, l);
            Int by_closed = dr_suffix_class(w, v, l);
            ++res.checks;
            if (by_dp != by_closed) {
              res.pass = false;
              res.counterexample = pair_str(w, v) + " l=" + std::to_string(l) +
                                   " dp=" + by_dp.str() + " closed=" + by_closed.str();
              return res;
            }
            total += by_dp;
          }
          Int whole = count_paths_dp(w, v);
          ++res.checks;
          if (total != whole) {
            res.pass = false;
            res.counterexample = pair_str(w, v) + " class-sum=" + total.str() +
                                 " total=" + whole.str();
            return res;
          }
        }
  return res;
}

SuiteResult verify_fiber_sum(int r, int max_u, int max_v) {
  SuiteResult res;
  res.suite = "fiber-sum";
  auto lv1 = levels_up_to(1, max_u);
  auto lvr = levels_up_to(r, max_v);
  for (int nu = 0; nu <= max_u; ++nu)
    for (const Word& u : lv1[static_cast<std::size_t>(nu)])
      for (int nv = 0; nv <= max_v; ++nv)
        for (const Word& v : lvr[static_cast<std::size_t>(nv)]) {
          auto [lhs, rhs] = fiber_sum_check(u, v, r);
          ++res.checks;
          if (lhs != rhs) {
            res.pass = false;
            res.counterexample = "u=\"" + format_word(u) + "\" v=\"" + format_word(v) +
                                 "\" lhs=" + lhs.str() + " rhs=" + rhs.str();
            return res;
          }
        }
  return res;
}

SuiteResult verify_differential(int r, int max_weight) {
  SuiteResult res;
  res.suite = "differential";
  std::vector<long long> sizes;
  for (int n = 0; n <= max_weight; ++n) {
    LevelSet ls = level(r, n);
    sizes.push_back(static_cast<long long>(ls.vertices.size()));
    for (const Word& v : ls.vertices) {
      auto [up, down] = check_r_differential(v);
      ++res.checks;
      if (up - down != r) {
        res.pass = false;
        res.counterexample = "v=\"" + format_word(v) + "\" up=" + std::to_string(up) +
                             " down=" + std::to_string(down);
        return res;
      }
      // covering consistency: every down-neighbor lists v among its ups
      for (const Word& w : down_neighbors(v)) {
        auto ups = up_neighbors(w);
        ++res.checks;
        if (std::find(ups.begin(), ups.end(), v) == ups.end()) {
          res.pass = false;
          res.counterexample =
              "v=\"" + format_word(v) + "\" missing from ups of \"" + format_word(w) + "\"";
          return res;
        }
      }
    }
  }
  for (int n = 2; n <= max_weight; ++n) {
    ++res.checks;
    if (sizes[static_cast<std::size_t>(n)] !=
        r * sizes[static_cast<std::size_t>(n - 1)] + sizes[static_cast<std::size_t>(n - 2)]) {
      res.pass = false;
      res.counterexample = "level size at n=" + std::to_string(n) +
                           " breaks a_n = r a_{n-1} + a_{n-2}";
      return res;
    }
  }
  return res;
}

SuiteResult verify_f_normalization(int max_weight) {
  SuiteResult res;
  res.suite = "f-normalization";
  for (int n = 0; n <= max_weight; ++n)
    for (const Word& v : level(1, n).vertices) {
      Int fact = 1;
      for (int i = 2; i <= n; ++i) fact *= i;
      Rat expected(d1_epsilon(v), fact);
      for (int z = 0; z <= v.length(); ++z) {
        ++res.checks;
        Rat got = f_eval(v, 0, z);
        if (got != expected) {
          res.pass = false;
          res.counterexample = "v=\"" + format_word(v) + "\" z=" + std::to_string(z) +
                               " f=" + rat_string(got) + " expected=" + rat_string(expected);
          return res;
        }
      }
    }
  return res;
}

SuiteResult verify_g_characterization(int r, int max_weight) {
  SuiteResult res;
  res.suite = "g-characterization";
  for (int n = 0; n <= max_weight; ++n)
    for (const Word& v : level(r, n).vertices) {
      // independent reading: run lengths right to left, g_k from the prefix sums
      std::vector<Int> runs;
      Int cur = 0;
      for (int i = v.length() - 1; i >= 0; --i) {
        if (v.is_unit(i)) {
          ++cur;
        } else {
          runs.push_back(cur);
          cur = 0;
        }
      }
      std::vector<Int> expected;
      Int prefix = 0;
      for (std::size_t k = 0; k < runs.size(); ++k) {
        prefix += runs[k];
        expected.push_back(prefix + 2 * static_cast<long long>(k + 1) - 1);
      }
      std::vector<Int> got = g_values(v);
      ++res.checks;
      if (got != expected) {
        res.pass = false;
        res.counterexample = "v=\"" + format_word(v) + "\" g-values disagree with run sums";
        return res;
      }
      for (std::size_t k = 1; k < got.size(); ++k) {
        ++res.checks;
        if (got[k] <= got[k - 1]) {
          res.pass = false;
          res.counterexample = "v=\"" + format_word(v) + "\" g-values not strictly increasing";
          return res;
        }
      }
    }
  return res;
}

SuiteResult verify_inequalities(int r, int max_weight) {
  SuiteResult res;
  res.suite = "inequalities";
  InequalityScan scan = inequality_scan(r, max_weight);
  res.pass = scan.ok;
  res.checks = scan.checked_counts + scan.checked_pi;
  res.counterexample = scan.counterexample;
  return res;
}

SuiteResult verify_plancherel(int r, int max_weight) {
  SuiteResult res;
  res.suite = "plancherel";
  auto measure = [r](const Word& w) { return plancherel(w, r); };
  for (int m = 0; m <= max_weight; ++m) {
    MeasureValue mass = level_mass(measure, r, m);
    ++res.checks;
    if (!mass.is_exact() || mass.rational() != 1) {
      res.pass = false;
      res.counterexample = "level " + std::to_string(m) + " mass != 1";
      return res;
    }
  }
  for (int m = 0; m + 1 <= max_weight; ++m)
    for (const Word& w : level(r, m).vertices) {
      MeasureValue resid = harmonicity_residual(measure, w);
      ++res.checks;
      if (!resid.is_exact() || resid.rational() != 0) {
        res.pass = false;
        res.counterexample = "w=\"" + format_word(w) + "\" harmonicity residual nonzero";
        return res;
      }
    }
  return res;
}

SuiteResult run_suite(const std::string& name, int r, int max_weight) {
  if (r < 1) throw std::invalid_argument("run_suite: r must be >= 1");
  int mw = max_weight;
  auto def = [&](int fallback) { return mw > 0 ? mw : fallback; };
  if (name == "d1-closed") return verify_d1_closed(def(8));
  if (name == "dr-closed") return verify_dr_closed(r, def(r >= 3 ? 5 : (r == 2 ? 6 : 8)));
  if (name == "suffix-class") return verify_suffix_class(r, def(r == 1 ? 7 : 5));
  if (name == "fiber-sum") {
    int mv = def(r >= 3 ? 5 : 6);
    return verify_fiber_sum(r, std::min(4, mv), mv);
  }
  if (name == "differential") return verify_differential(r, def(8));
  if (name == "f-normalization") return verify_f_normalization(def(8));
  if (name == "g-characterization") return verify_g_characterization(r, def(8));
  if (name == "inequalities") return verify_inequalities(r, def(6));
  if (name == "plancherel") return verify_plancherel(r, def(8));
  throw std::invalid_argument("run_suite: unknown suite \"" + name + "\"");
}

std::string suite_result_json(const SuiteResult& s) {
  nlohmann::ordered_json j;
  j["suite"] = s.suite;
  j["pass"] = s.pass;
  j["checks"] = s.checks;
  j["counterexample"] = s.counterexample;
  return j.dump(2);
}

}  // namespace yf
