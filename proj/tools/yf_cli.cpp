#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "yf/boundary.hpp"
#include "yf/closed_form.hpp"
#include "yf/experiments.hpp"
#include "yf/graph.hpp"
#include "yf/verify.hpp"
#include "yf/word.hpp"

namespace {

using nlohmann::ordered_json;
using namespace yf;

// thrown after the failure report is already printed; maps to exit 3
struct identity_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  int threads = 1;
  std::string tol_text = "1e-9";
  int precision_bits = 0;  // 0 = accept compiled default
  std::string format = "json";
  std::size_t memo_cap = 0;

  Rat tol() const {
    Rat t = parse_decimal(tol_text);
    if (t <= 0) throw std::invalid_argument("--tol must be > 0");
    return t;
  }
  void apply() const {
    if (precision_bits > float_precision_bits())
      throw std::invalid_argument(
          "--precision-bits exceeds the compiled mantissa (" +
          std::to_string(float_precision_bits()) + " bits); rebuild with a larger YF_FLOAT_DIGITS");
    set_memo_cap(memo_cap);
  }
};

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

ordered_json measure_value_json(const MeasureValue& m) {
  if (m.is_exact()) return rat_string(m.rational());
  ordered_json j;
  j["value"] = float_string(m.value());
  j["radius"] = float_string(m.radius());
  return j;
}

std::string measure_value_text(const MeasureValue& m) {
  if (m.is_exact()) return rat_string(m.rational());
  return float_string(m.value()) + " +- " + float_string(m.radius());
}

void require_format(const Globals& gl, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (gl.format == a) return;
  throw std::invalid_argument("--format " + gl.format + " is not supported by this command");
}

// ---- levels ----------------------------------------------------------------

void run_levels(const Globals& gl, int r, int n, bool adjacency) {
  gl.apply();
  if (adjacency && gl.format == "csv")
    throw std::invalid_argument("--adjacency is not representable in csv");
  // refuse levels whose size would dwarf the terminal long before allocation
  std::vector<long long> sizes = {1, r};
  for (int i = 2; i <= n; ++i) {
    sizes.push_back(r * sizes[static_cast<std::size_t>(i - 1)] +
                    sizes[static_cast<std::size_t>(i - 2)]);
    if (sizes.back() > 5'000'000) throw budget_error("levels: level too large to enumerate");
  }
  LevelSet ls = level(r, n);
  if (gl.format == "csv") {
    std::string out = "word,weight,length,units,twos\n";
    for (const Word& w : ls.vertices) {
      WordStats st = stats(w);
      out += csv_quote(format_word(w)) + "," + std::to_string(st.weight) + "," +
             std::to_string(st.length) + "," + std::to_string(st.units) + "," +
             std::to_string(st.twos) + "\n";
    }
    std::cout << out;
    return;
  }
  if (gl.format == "text") {
    std::cout << "level r=" << r << " n=" << n << " count=" << ls.vertices.size() << "\n";
    for (const Word& w : ls.vertices) {
      WordStats st = stats(w);
      std::cout << "\"" << format_word(w) << "\" length=" << st.length
                << " units=" << st.units << " twos=" << st.twos;
      if (adjacency) {
        std::cout << " down=[";
        auto downs = down_neighbors(w);
        for (std::size_t i = 0; i < downs.size(); ++i)
          std::cout << (i ? "," : "") << "\"" << format_word(downs[i]) << "\"";
        std::cout << "]";
      }
      std::cout << "\n";
    }
    return;
  }
  ordered_json j;
  j["command"] = "levels";
  j["r"] = r;
  j["n"] = n;
  j["count"] = ls.vertices.size();
  j["vertices"] = ordered_json::array();
  for (const Word& w : ls.vertices) {
    WordStats st = stats(w);
    ordered_json wj;
    wj["word"] = format_word(w);
    wj["length"] = st.length;
    wj["units"] = st.units;
    wj["twos"] = st.twos;
    if (adjacency) {
      wj["down"] = ordered_json::array();
      for (const Word& d : down_neighbors(w)) wj["down"].push_back(format_word(d));
      wj["up"] = ordered_json::array();
      for (const Word& u : up_neighbors(w)) wj["up"].push_back(format_word(u));
    }
    j["vertices"].push_back(std::move(wj));
  }
  emit(j);
}

// ---- count -----------------------------------------------------------------

Int count_by_reduction(const Word& w, const Word& v) {
  Int total = 0;
  int h = common_suffix(w, v).h;
  for (int l = 0; l <= h; ++l) total += dr_suffix_class(w, v, l);
  return total;
}

void run_count(const Globals& gl, int r, const std::string& from, const std::string& to,
               const std::string& method) {
  gl.apply();
  require_format(gl, {"json", "text"});
  Word w = parse_word(from, r);
  Word v = parse_word(to, r);
  if (w.weight() > v.weight())
    throw std::invalid_argument("count: |from| exceeds |to|; no descending chains exist");
  ordered_json j;
  j["command"] = "count";
  j["r"] = r;
  j["from"] = format_word(w);
  j["to"] = format_word(v);
  j["method"] = method;
  bool agree = true;
  std::string single;
  if (method == "all") {
    Int dp = count_paths_dp(w, v);
    Int closed = dr_closed(w, v);
    Int reduce = count_by_reduction(w, v);
    agree = dp == closed && closed == reduce;
    j["dp"] = dp.str();
    j["closed"] = closed.str();
    j["reduce"] = reduce.str();
    j["agree"] = agree;
    single = dp.str();
  } else if (method == "dp") {
    single = count_paths_dp(w, v).str();
    j["count"] = single;
  } else if (method == "closed") {
    single = dr_closed(w, v).str();
    j["count"] = single;
  } else {  // "reduce", enforced by the option check
    single = count_by_reduction(w, v).str();
    j["count"] = single;
  }
  if (gl.format == "text") {
    if (method == "all")
      std::cout << "dp=" << j["dp"].get<std::string>()
                << " closed=" << j["closed"].get<std::string>()
                << " reduce=" << j["reduce"].get<std::string>()
                << (agree ? " agree" : " DISAGREE") << "\n";
    else
      std::cout << single << "\n";
  } else {
    emit(j);
  }
  if (!agree) throw identity_violation("count: methods disagree");
}

// ---- verify ----------------------------------------------------------------

void run_verify(const Globals& gl, const std::string& suite, int r, int max_weight) {
  gl.apply();
  require_format(gl, {"json", "text"});
  SuiteResult res = run_suite(suite, r, max_weight);
  if (gl.format == "text") {
    std::cout << res.suite << ": " << (res.pass ? "pass" : "FAIL") << " checks=" << res.checks;
    if (!res.counterexample.empty()) std::cout << " counterexample: " << res.counterexample;
    std::cout << "\n";
  } else {
    ordered_json j;
    j["command"] = "verify";
    j["suite"] = res.suite;
    j["r"] = r;
    j["max_weight"] = max_weight;
    j["pass"] = res.pass;
    j["checks"] = res.checks;
    j["counterexample"] = res.counterexample;
    emit(j);
  }
  if (!res.pass) throw identity_violation("verify: " + suite + " failed");
}

// ---- measure ---------------------------------------------------------------

void run_measure_plancherel(const Globals& gl, int r, const std::string& wtext) {
  gl.apply();
  require_format(gl, {"json", "text"});
  Word w = parse_word(wtext, r);
  MeasureValue m = plancherel(w, r);
  if (gl.format == "text") {
    std::cout << measure_value_text(m) << "\n";
    return;
  }
  ordered_json j;
  j["command"] = "measure";
  j["kind"] = "plancherel";
  j["r"] = r;
  j["w"] = format_word(w);
  j["value"] = measure_value_json(m);
  emit(j);
}

void run_measure_boundary(const Globals& gl, int r, const std::string& wtext,
                          const std::string& vtext, const std::string& beta_text) {
  gl.apply();
  require_format(gl, {"json", "text"});
  Word w = parse_word(wtext, r);
  BoundaryVertex v = parse_boundary_vertex(vtext, r);
  Rat beta = parse_decimal(beta_text);
  MeasureValue m = boundary_measure(w, v, beta, gl.tol());
  if (gl.format == "text") {
    std::cout << measure_value_text(m) << "\n";
    return;
  }
  ordered_json j;
  j["command"] = "measure";
  j["kind"] = "boundary";
  j["r"] = r;
  j["w"] = format_word(w);
  j["v"] = format_boundary_vertex(v);
  j["beta"] = rat_string(beta);
  j["tol"] = rat_string(gl.tol());
  j["value"] = measure_value_json(m);
  emit(j);
}

// ---- experiment ------------------------------------------------------------

void run_tails_q(const Globals& gl, int r, const std::string& vtext,
                 const std::string& beta_text, int k, int m_max) {
  gl.apply();
  BoundaryVertex v = parse_boundary_vertex(vtext, r);
  Rat beta = parse_decimal(beta_text);
  std::vector<QMassRow> rows;
  for (int m = 0; m <= m_max; ++m)
    rows.push_back(tail_q_mass(v, beta, m, k, gl.tol(), gl.threads));
  if (gl.format == "json") {
    std::cout << q_rows_to_json(format_boundary_vertex(v), r, beta, k, gl.tol(), rows) << "\n";
    return;
  }
  if (gl.format == "csv") {
    std::string out = "m,size_qbar,mass_qbar_value,mass_qbar_radius,mass_qtilde_value,"
                      "mass_qtilde_radius";
    for (int i = 1; i <= k; ++i)
      out += ",mass_qhat" + std::to_string(i) + "_value,mass_qhat" + std::to_string(i) +
             "_radius";
    out += "\n";
    for (const QMassRow& row : rows) {
      out += std::to_string(row.m) + "," + std::to_string(row.size_qbar) + "," +
             float_string(row.mass_qbar.value()) + "," + float_string(row.mass_qbar.radius()) +
             "," + float_string(row.mass_qtilde.value()) + "," +
             float_string(row.mass_qtilde.radius());
      for (const MeasureValue& m : row.mass_qhat)
        out += "," + float_string(m.value()) + "," + float_string(m.radius());
      out += "\n";
    }
    std::cout << out;
    return;
  }
  for (const QMassRow& row : rows) {
    std::cout << "m=" << row.m << " size_qbar=" << row.size_qbar
              << " mass_qbar=" << measure_value_text(row.mass_qbar)
              << " mass_qtilde=" << measure_value_text(row.mass_qtilde) << "\n";
  }
}

void run_tails_r(const Globals& gl, int r, const std::string& vtext,
                 const std::string& beta_text, const std::string& eps_text, int m_max) {
  gl.apply();
  BoundaryVertex v = parse_boundary_vertex(vtext, r);
  Rat beta = parse_decimal(beta_text);
  Rat eps = parse_decimal(eps_text);
  std::vector<TailRow> rows;
  for (int m = 0; m <= m_max; ++m)
    rows.push_back(tail_r_mass(v, beta, m, eps, gl.tol(), gl.threads));
  if (gl.format == "json") {
    std::cout << r_rows_to_json(format_boundary_vertex(v), r, beta, eps, gl.tol(), rows)
              << "\n";
    return;
  }
  if (gl.format == "csv") {
    std::string out = "m,set_size,mass_value,mass_radius\n";
    for (const TailRow& row : rows)
      out += std::to_string(row.m) + "," + std::to_string(row.set_size) + "," +
             float_string(row.mass.value()) + "," + float_string(row.mass.radius()) + "\n";
    std::cout << out;
    return;
  }
  for (const TailRow& row : rows)
    std::cout << "m=" << row.m << " set_size=" << row.set_size
              << " mass=" << measure_value_text(row.mass) << "\n";
}

void run_kernel_trace(const Globals& gl, int r, const std::string& wtext,
                      const std::string& vtext, const std::string& beta_text, int n_max) {
  gl.apply();
  Word w = parse_word(wtext, r);
  BoundaryVertex v = parse_boundary_vertex(vtext, r);
  Rat beta = parse_decimal(beta_text);
  auto rows = kernel_trace(w, v, beta, n_max, gl.tol());
  if (gl.format == "json") {
    ordered_json j;
    j["experiment"] = "kernel-trace";
    j["r"] = r;
    j["w"] = format_word(w);
    j["v"] = format_boundary_vertex(v);
    j["beta"] = rat_string(beta);
    j["tol"] = rat_string(gl.tol());
    j["rows"] = ordered_json::array();
    for (const KernelTraceRow& row : rows) {
      ordered_json rj;
      rj["n"] = row.n;
      rj["kernel"] = rat_string(row.kernel);
      rj["distance"] = measure_value_json(row.distance);
      j["rows"].push_back(std::move(rj));
    }
    emit(j);
    return;
  }
  if (gl.format == "csv") {
    std::string out = "n,kernel,distance_value,distance_radius\n";
    for (const KernelTraceRow& row : rows)
      out += std::to_string(row.n) + "," + csv_quote(rat_string(row.kernel)) + "," +
             float_string(row.distance.value()) + "," + float_string(row.distance.radius()) +
             "\n";
    std::cout << out;
    return;
  }
  for (const KernelTraceRow& row : rows)
    std::cout << "n=" << row.n << " kernel=" << rat_string(row.kernel)
              << " distance=" << measure_value_text(row.distance) << "\n";
}

void run_gk_ratio(const Globals& gl, int r, const std::string& vtext,
                  const std::string& beta_text, int i, int n_max) {
  gl.apply();
  BoundaryVertex v = parse_boundary_vertex(vtext, r);
  Rat beta = parse_decimal(beta_text);
  auto rows = gk_ratio_trace(v, beta, i, n_max, gl.tol());
  if (gl.format == "json") {
    ordered_json j;
    j["experiment"] = "gk-ratio";
    j["r"] = r;
    j["v"] = format_boundary_vertex(v);
    j["beta"] = rat_string(beta);
    j["i"] = i;
    j["tol"] = rat_string(gl.tol());
    j["rows"] = ordered_json::array();
    for (const GkRatioRow& row : rows) {
      ordered_json rj;
      rj["n"] = row.n;
      rj["ratio"] = measure_value_json(row.ratio);
      rj["distance"] = float_string(row.distance);
      j["rows"].push_back(std::move(rj));
    }
    emit(j);
    return;
  }
  if (gl.format == "csv") {
    std::string out = "n,ratio_value,ratio_radius,distance\n";
    for (const GkRatioRow& row : rows)
      out += std::to_string(row.n) + "," + float_string(row.ratio.value()) + "," +
             float_string(row.ratio.radius()) + "," + float_string(row.distance) + "\n";
    std::cout << out;
    return;
  }
  for (const GkRatioRow& row : rows)
    std::cout << "n=" << row.n << " ratio=" << measure_value_text(row.ratio)
              << " distance=" << float_string(row.distance) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact path counts and boundary measures on the r-differential Young-Fibonacci graph"};
  app.set_config("--config", "", "read options from an ini/toml file");
  app.fallthrough();
  app.require_subcommand(1);

  Globals gl;
  app.add_option("--threads", gl.threads, "worker threads (results are byte-identical)")
      ->check(CLI::Range(1, 256));
  app.add_option("--tol", gl.tol_text, "radius target for certified values (default 1e-9)");
  app.add_option("--precision-bits", gl.precision_bits,
                 "required float mantissa bits; must not exceed the compiled width");
  app.add_option("--format", gl.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--memo-cap", gl.memo_cap, "max entries per memo table (0 = unbounded)");

  // levels
  int lv_r = 1, lv_n = 0;
  bool lv_adj = false;
  auto* levels_cmd = app.add_subcommand("levels", "enumerate one weight level");
  levels_cmd->fallthrough();
  levels_cmd->add_option("--r", lv_r)->check(CLI::Range(1, 64))->required();
  levels_cmd->add_option("--n", lv_n)->check(CLI::Range(0, 1000))->required();
  levels_cmd->add_flag("--adjacency", lv_adj, "include up/down neighbor lists");
  levels_cmd->callback([&] { run_levels(gl, lv_r, lv_n, lv_adj); });

  // count
  int ct_r = 1;
  std::string ct_from, ct_to, ct_method = "all";
  auto* count_cmd = app.add_subcommand("count", "saturated descending chain count");
  count_cmd->fallthrough();
  count_cmd->add_option("--r", ct_r)->check(CLI::Range(1, 64))->required();
  count_cmd->add_option("--from", ct_from, "lower word (empty for the empty word)");
  count_cmd->add_option("--to", ct_to)->required();
  count_cmd->add_option("--method", ct_method)
      ->check(CLI::IsMember({"dp", "closed", "reduce", "all"}));
  count_cmd->callback([&] { run_count(gl, ct_r, ct_from, ct_to, ct_method); });

  // verify
  int vf_r = 1, vf_mw = 0;
  std::string vf_suite;
  auto* verify_cmd = app.add_subcommand("verify", "run an identity suite against the oracle");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--suite", vf_suite)
      ->check(CLI::IsMember({"d1-closed", "dr-closed", "suffix-class", "fiber-sum",
                             "differential", "f-normalization", "g-characterization",
                             "inequalities", "plancherel"}))
      ->required();
  verify_cmd->add_option("--r", vf_r)->check(CLI::Range(1, 64));
  verify_cmd->add_option("--max-weight", vf_mw, "0 = per-suite default budget");
  verify_cmd->callback([&] { run_verify(gl, vf_suite, vf_r, vf_mw); });

  // measure
  auto* measure_cmd = app.add_subcommand("measure", "evaluate a central measure at a word");
  measure_cmd->fallthrough();
  measure_cmd->require_subcommand(1);
  int mp_r = 1;
  std::string mp_w;
  auto* mp = measure_cmd->add_subcommand("plancherel");
  mp->fallthrough();
  mp->add_option("--r", mp_r)->check(CLI::Range(1, 64))->required();
  mp->add_option("--w", mp_w);
  mp->callback([&] { run_measure_plancherel(gl, mp_r, mp_w); });
  int mb_r = 1;
  std::string mb_w, mb_v, mb_beta = "1";
  auto* mb = measure_cmd->add_subcommand("boundary");
  mb->fallthrough();
  mb->add_option("--r", mb_r)->check(CLI::Range(1, 64))->required();
  mb->add_option("--w", mb_w);
  mb->add_option("--v", mb_v, "boundary vertex descriptor")->required();
  mb->add_option("--beta", mb_beta);
  mb->callback([&] { run_measure_boundary(gl, mb_r, mb_w, mb_v, mb_beta); });

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "tail-mass and convergence tables");
  exp_cmd->fallthrough();
  exp_cmd->require_subcommand(1);
  int tq_r = 1, tq_k = 1, tq_mmax = 4;
  std::string tq_v, tq_beta = "1";
  auto* tq = exp_cmd->add_subcommand("tails-q", "suffix-agreement tail masses per level");
  tq->fallthrough();
  tq->add_option("--r", tq_r)->check(CLI::Range(1, 64))->required();
  tq->add_option("--v", tq_v)->required();
  tq->add_option("--beta", tq_beta);
  tq->add_option("--k", tq_k)->check(CLI::Range(1, 64));
  tq->add_option("--m-max", tq_mmax)->check(CLI::Range(0, 64));
  tq->callback([&] { run_tails_q(gl, tq_r, tq_v, tq_beta, tq_k, tq_mmax); });
  int tr_r = 1, tr_mmax = 4;
  std::string tr_v, tr_beta = "1", tr_eps = "1/5";
  auto* tr = exp_cmd->add_subcommand("tails-r", "pi-window tail masses per level");
  tr->fallthrough();
  tr->add_option("--r", tr_r)->check(CLI::Range(1, 64))->required();
  tr->add_option("--v", tr_v)->required();
  tr->add_option("--beta", tr_beta);
  tr->add_option("--eps", tr_eps);
  tr->add_option("--m-max", tr_mmax)->check(CLI::Range(0, 64));
  tr->callback([&] { run_tails_r(gl, tr_r, tr_v, tr_beta, tr_eps, tr_mmax); });
  int kt_r = 1, kt_nmax = 64;
  std::string kt_w, kt_v, kt_beta = "1";
  auto* kt = exp_cmd->add_subcommand("kernel-trace", "Martin kernel along truncations");
  kt->fallthrough();
  kt->add_option("--r", kt_r)->check(CLI::Range(1, 64))->required();
  kt->add_option("--w", kt_w);
  kt->add_option("--v", kt_v)->required();
  kt->add_option("--beta", kt_beta);
  kt->add_option("--n-max", kt_nmax)->check(CLI::Range(1, 4096));
  kt->callback([&] { run_kernel_trace(gl, kt_r, kt_w, kt_v, kt_beta, kt_nmax); });
  int gk_r = 1, gk_i = 2, gk_nmax = 64;
  std::string gk_v, gk_beta = "1";
  auto* gk = exp_cmd->add_subcommand("gk-ratio", "pi_i truncation ratio law");
  gk->fallthrough();
  gk->add_option("--r", gk_r)->check(CLI::Range(1, 64))->required();
  gk->add_option("--v", gk_v)->required();
  gk->add_option("--beta", gk_beta);
  gk->add_option("--i", gk_i)->check(CLI::Range(1, 64));
  gk->add_option("--n-max", gk_nmax)->check(CLI::Range(1, 4096));
  gk->callback([&] { run_gk_ratio(gl, gk_r, gk_v, gk_beta, gk_i, gk_nmax); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const identity_violation&) {
    return 3;
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "identity violation: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
