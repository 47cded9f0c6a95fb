#include <functional>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "yf/boundary.hpp"
#include "yf/closed_form.hpp"
#include "yf/graph.hpp"
#include "yf/numbers.hpp"
#include "yf/word.hpp"

using namespace yf;

namespace {

Rat rat(long long p, long long q) { return Rat(Int(p), Int(q)); }

bool enclosures_overlap(const MeasureValue& a, const MeasureValue& b) {
  Float diff = a.value() - b.value();
  if (diff < 0) diff = -diff;
  return diff <= a.radius() + b.radius();
}

const char* kGeom = "runs=[1];tail=geometric(2,2)";
const char* kSpecExample = "runs=[1,2];idx=cycle(1,2);tail=geometric(4,2);tidx=const(1)";

}  // namespace

TEST_CASE("parse_boundary_vertex round trip and field decoding") {
  BoundaryVertex v = parse_boundary_vertex(kSpecExample, 2);
  CHECK(v.r == 2);
  REQUIRE(v.runs.size() == 2);
  CHECK(v.runs[0] == 1);
  CHECK(v.runs[1] == 2);
  CHECK(v.idx.cyclic);
  CHECK(v.tail.kind == TailKind::Geometric);
  CHECK(v.tail.p0 == 4);
  CHECK(v.tail.p1 == 2);
  CHECK_FALSE(v.tidx.cyclic);
  CHECK(format_boundary_vertex(v) == kSpecExample);

  BoundaryVertex w = parse_boundary_vertex(format_boundary_vertex(v), 2);
  CHECK(format_boundary_vertex(w) == kSpecExample);

  BoundaryVertex lin = parse_boundary_vertex("runs=[];tail=linear(1,2)", 1);
  CHECK(lin.tail.kind == TailKind::Linear);
  CHECK(lin.runs.empty());

  BoundaryVertex cst = parse_boundary_vertex("tail=constant(0)", 1);
  CHECK(cst.tail.kind == TailKind::Constant);
}

TEST_CASE("parse_boundary_vertex rejects malformed specs") {
  CHECK_THROWS_AS(parse_boundary_vertex("runs=[1]", 1), parse_error);  // no tail
  CHECK_THROWS_AS(parse_boundary_vertex("tail=geometric(1,1)", 1), parse_error);
  CHECK_THROWS_AS(parse_boundary_vertex("tail=geometric(0,2)", 1), parse_error);
  CHECK_THROWS_AS(parse_boundary_vertex("tail=linear(1,0)", 1), parse_error);
  CHECK_THROWS_AS(parse_boundary_vertex("tail=constant(-1)", 1), parse_error);
  CHECK_THROWS_AS(parse_boundary_vertex("runs=[-1];tail=constant(0)", 1), parse_error);
  CHECK_THROWS_AS(parse_boundary_vertex("tail=wavy(1,2)", 1), parse_error);
  CHECK_THROWS_AS(parse_boundary_vertex("nope=1;tail=constant(0)", 1), parse_error);
  CHECK_THROWS_AS(parse_boundary_vertex("idx=cycle(1,3);tail=constant(1)", 2), parse_error);
  CHECK_THROWS_AS(parse_boundary_vertex("tail=constant(1)", 0), parse_error);
}

TEST_CASE("beta_at and g_at follow the run stream") {
  BoundaryVertex v = parse_boundary_vertex(kSpecExample, 2);  // runs 1,2 then 4,8,16,...
  CHECK(beta_at(v, 0) == 1);
  CHECK(beta_at(v, 1) == 2);
  CHECK(beta_at(v, 2) == 4);
  CHECK(beta_at(v, 3) == 8);
  // g_j = b_0 + ... + b_{j-1} + 2j - 1.
  CHECK(g_at(v, 1) == 1 + 2 * 1 - 1);          // 2
  CHECK(g_at(v, 2) == 1 + 2 + 2 * 2 - 1);      // 6
  CHECK(g_at(v, 3) == 1 + 2 + 4 + 2 * 3 - 1);  // 12
  CHECK_THROWS_AS(beta_at(v, -1), std::invalid_argument);
  CHECK_THROWS_AS(g_at(v, 0), std::invalid_argument);

  BoundaryVertex lin = parse_boundary_vertex("runs=[];tail=linear(1,2)", 1);
  CHECK(beta_at(lin, 0) == 1);
  CHECK(beta_at(lin, 1) == 3);
  CHECK(beta_at(lin, 2) == 5);
}

TEST_CASE("materialize produces suffix-compatible prefixes with correct g-values") {
  BoundaryVertex v = parse_boundary_vertex(kSpecExample, 2);
  Word m1 = materialize(v, 1);
  CHECK(format_word(m1) == "1_1");
  Word m4 = materialize(v, 4);
  CHECK(format_word(m4) == "1_2,1_1,2,1_1");
  // Suffix compatibility across n.
  for (int n = 0; n <= 12; ++n) {
    Word a = materialize(v, n);
    Word b = materialize(v, n + 1);
    CHECK(a.length() == n);
    CHECK(common_suffix(a, b).h == n);
  }
  // The finite g-values of a materialized prefix agree with g_at on the
  // indices whose suffix lies fully inside the prefix.
  Word m10 = materialize(v, 10);
  auto gs = g_values(m10);
  int d = static_cast<int>(gs.size());
  for (int j = 1; j <= d; ++j) CHECK(gs[static_cast<std::size_t>(j - 1)] == g_at(v, j));

  CHECK(materialize_runs(v, 1) == materialize(v, 2));       // run 0 plus its Two
  CHECK(materialize_runs(v, 2) == materialize(v, 5));       // runs 0,1 plus Twos
  CHECK_THROWS_AS(materialize(v, -1), std::invalid_argument);
}

TEST_CASE("materialize respects index rules") {
  BoundaryVertex v = parse_boundary_vertex(
      "runs=[3];idx=cycle(2,1);tail=geometric(1,2);tidx=const(2)", 2);
  // Units inside a run are numbered right to left: rightmost unit gets the
  // first pattern entry.
  CHECK(format_word(materialize(v, 3)) == "1_2,1_1,1_2");
  CHECK(format_word(materialize(v, 5)) == "1_2,2,1_2,1_1,1_2");
}

TEST_CASE("pi and pi_k exact products") {
  CHECK(pi(parse_word("1,1", 1)) == Rat(1));
  CHECK(pi(parse_word("2,1", 1)) == rat(1, 2));
  CHECK(pi(parse_word("2,2", 1)) == rat(2, 3));
  CHECK(pi_k(parse_word("2,2", 1), 1) == rat(2, 3));
  CHECK(pi_k(parse_word("2,2", 1), 2) == rat(1, 3));
  CHECK(pi_k(parse_word("2,2", 1), 3) == Rat(1));  // no g exceeds 3
  CHECK_THROWS_AS(pi_k(parse_word("2", 1), 0), std::invalid_argument);
  // pi is blind to unit indices.
  for (const Word& v : level(2, 5).vertices) CHECK(pi(v) == pi(forget_indices(v)));
}

TEST_CASE("pi_boundary yields certified positive enclosures") {
  BoundaryVertex v = parse_boundary_vertex("runs=[1];tail=geometric(1,2)", 1);
  MeasureValue coarse = pi_boundary(v, rat(1, 1000));
  MeasureValue fine = pi_boundary(v, Rat(1) / Int("100000000000000000000"));
  CHECK_FALSE(coarse.is_exact());
  CHECK(coarse.value() > 0);
  CHECK(coarse.value() <= 1);
  CHECK(coarse.radius() <= Float(1e-3) * 2);
  CHECK(enclosures_overlap(coarse, fine));

  // Constant tails force pi = 0.
  BoundaryVertex allTwos = parse_boundary_vertex("tail=constant(0)", 1);
  MeasureValue z = pi_boundary(allTwos, rat(1, 1000));
  CHECK(z.value() == 0);
  CHECK(z.radius() == 0);

  CHECK_THROWS_AS(pi_boundary(v, Rat(0)), std::invalid_argument);
}

TEST_CASE("pi_boundary matches finite pi on deep truncations") {
  for (const char* spec : {kGeom, "runs=[];tail=linear(0,1)"}) {
    BoundaryVertex v = parse_boundary_vertex(spec, 1);
    MeasureValue pv = pi_boundary(v, rat(1, 1'000'000'000));
    // Finite partial products decrease toward the limit.
    Float prev = 1;
    for (int n : {5, 15, 40, 80}) {
      Rat fin = pi(materialize(v, n));
      Float f = to_float(fin);
      CHECK(f <= prev + Float(1e-30));
      CHECK(f >= pv.value() - pv.radius() - Float(1e-25));
      prev = f;
    }
    // Convergence in symbol count is slow for linear tails (the remainder
    // shrinks like one over the number of completed runs), so the closeness
    // check uses a much deeper truncation than the monotonicity sweep above.
    CHECK(to_float(pi(materialize(v, 400))) - pv.value() <= Float(0.05));
  }
}

TEST_CASE("plancherel frozen values and normalization") {
  CHECK(plancherel(parse_word("", 2), 2).rational() == Rat(1));
  CHECK(plancherel(parse_word("1_1", 2), 2).rational() == rat(1, 2));
  CHECK(plancherel(parse_word("2", 2), 2).rational() == rat(1, 2));
  CHECK(plancherel(parse_word("1_1,1_2", 2), 2).rational() == rat(1, 8));
  CHECK_THROWS_AS(plancherel(parse_word("1_2", 2), 1), std::invalid_argument);

  for (int r = 1; r <= 3; ++r) {
    auto mu = [r](const Word& w) { return plancherel(w, r); };
    for (int m = 0; m <= 5; ++m) {
      MeasureValue mass = level_mass(mu, r, m);
      REQUIRE(mass.is_exact());
      CHECK(mass.rational() == Rat(1));
    }
  }
}

TEST_CASE("plancherel harmonicity residual is exactly zero") {
  for (int r = 1; r <= 3; ++r) {
    auto mu = [r](const Word& w) { return plancherel(w, r); };
    for (int n = 0; n <= 4; ++n)
      for (const Word& w : level(r, n).vertices) {
        MeasureValue res = harmonicity_residual(mu, w);
        REQUIRE(res.is_exact());
        CHECK(res.rational() == Rat(0));
      }
  }
}

TEST_CASE("martin_kernel frozen values and harmonicity below the apex") {
  CHECK(martin_kernel(parse_word("", 1), parse_word("2,1", 1)) == Rat(1));
  CHECK(martin_kernel(parse_word("1", 1), parse_word("2,1", 1)) == Rat(1));
  CHECK(martin_kernel(parse_word("2", 1), parse_word("2,2", 1)) == rat(2, 3));
  CHECK_THROWS_AS(martin_kernel(parse_word("1", 1), parse_word("1_2", 2)),
                  std::invalid_argument);

  // The kernel at a fixed finite apex is harmonic strictly below the apex.
  for (int r = 1; r <= 2; ++r)
    for (const Word& apex : level(r, 5).vertices) {
      auto mu = [&apex](const Word& w) {
        return MeasureValue::exact(martin_kernel(w, apex));
      };
      for (int n = 0; n <= 3; ++n)
        for (const Word& w : level(r, n).vertices) {
          MeasureValue res = harmonicity_residual(mu, w);
          REQUIRE(res.is_exact());
          CHECK(res.rational() == Rat(0));
        }
    }
}

TEST_CASE("shifted_g_product special cases") {
  BoundaryVertex v = parse_boundary_vertex(kGeom, 1);
  MeasureValue one = shifted_g_product(v, 1, Int(0), rat(1, 1000));
  REQUIRE(one.is_exact());
  CHECK(one.rational() == Rat(1));

  // c = 1, a = 1 reproduces pi_boundary.
  MeasureValue a = shifted_g_product(v, 1, Int(1), rat(1, 10'000'000));
  MeasureValue b = pi_boundary(v, rat(1, 10'000'000));
  CHECK(enclosures_overlap(a, b));

  // A factor hitting zero makes the product exactly zero: g_1 = 2 here.
  MeasureValue z = shifted_g_product(v, 1, Int(2), rat(1, 1000));
  REQUIRE(z.is_exact());
  CHECK(z.rational() == Rat(0));

  // Constant tail: the product of (g-c)/g over g ~ 2j-1 diverges to zero.
  BoundaryVertex cst = parse_boundary_vertex("tail=constant(0)", 1);
  MeasureValue cz = shifted_g_product(cst, 1, Int(1), rat(1, 1000));
  REQUIRE(cz.is_exact());
  CHECK(cz.rational() == Rat(0));

  CHECK_THROWS_AS(shifted_g_product(v, 0, Int(1), rat(1, 10)), std::invalid_argument);
  CHECK_THROWS_AS(shifted_g_product(v, 1, Int(1), Rat(0)), std::invalid_argument);
}

TEST_CASE("shifted_g_product enclosures are consistent across tolerances") {
  for (const char* spec :
       {kGeom, "runs=[2];tail=geometric(4,3)", "runs=[];tail=linear(1,2)"}) {
    BoundaryVertex v = parse_boundary_vertex(spec, 1);
    for (int c = 1; c <= 4; ++c) {
      MeasureValue coarse = shifted_g_product(v, 1, Int(c), rat(1, 10'000));
      MeasureValue fine =
          shifted_g_product(v, 1, Int(c), Rat(1) / Int("10000000000000000"));
      CHECK(coarse.radius() <= Float(2e-4));
      CHECK(enclosures_overlap(coarse, fine));
    }
  }
}

TEST_CASE("boundary_measure frozen unit cases") {
  // Vertex ending in a unit: mu("1") = 1 because the i=1 series term carries
  // f("1",1,1) = 0.
  BoundaryVertex v1 = parse_boundary_vertex(kGeom, 1);
  MeasureValue m1 = boundary_measure(parse_word("1", 1), v1, Rat(1), rat(1, 1'000'000));
  CHECK(Float(abs(m1.value() - 1)) <= m1.radius() + Float(1e-18));

  // Vertex ending in a Two: mu("1") = 1 because g_1 = 1 zeroes the i=1 factor.
  BoundaryVertex v2 = parse_boundary_vertex("runs=[0];tail=geometric(1,2)", 1);
  CHECK(format_word(materialize(v2, 1)) == "2");
  MeasureValue m2 = boundary_measure(parse_word("1", 1), v2, Rat(1), rat(1, 1'000'000));
  CHECK(Float(abs(m2.value() - 1)) <= m2.radius() + Float(1e-18));

  // The empty word always has measure exactly 1.
  MeasureValue me = boundary_measure(parse_word("", 1), v1, rat(7, 10), rat(1, 1000));
  REQUIRE(me.is_exact());
  CHECK(me.rational() == Rat(1));
}

TEST_CASE("boundary_measure argument validation") {
  BoundaryVertex v = parse_boundary_vertex(kGeom, 1);
  BoundaryVertex cst = parse_boundary_vertex("tail=constant(0)", 1);
  CHECK_THROWS_AS(boundary_measure(parse_word("1", 1), v, Rat(2), rat(1, 10)),
                  std::invalid_argument);
  CHECK_THROWS_AS(boundary_measure(parse_word("1", 1), v, Rat(0), rat(1, 10)),
                  std::invalid_argument);
  CHECK_THROWS_AS(boundary_measure(parse_word("1", 1), cst, Rat(1), rat(1, 10)),
                  std::invalid_argument);
  CHECK_THROWS_AS(boundary_measure(parse_word("1_2", 2), v, Rat(1), rat(1, 10)),
                  std::invalid_argument);
}

TEST_CASE("boundary_measure stays harmonic within radius") {
  BoundaryVertex v = parse_boundary_vertex(kSpecExample, 2);
  auto mu = [&v](const Word& w) {
    return boundary_measure(w, v, Rat(1), Rat(1) / Int("1000000000000"));
  };
  MeasureValue res = harmonicity_residual(mu, parse_word("", 2));
  Float mag = res.value();
  if (mag < 0) mag = -mag;
  CHECK(mag <= res.radius());
}

TEST_CASE("truncation_sequence: beta = 1 is plain materialization") {
  BoundaryVertex v = parse_boundary_vertex(kSpecExample, 2);
  for (int n : {0, 1, 5, 9}) CHECK(truncation_sequence(v, Rat(1), n) == materialize(v, n));
}

TEST_CASE("truncation_sequence: beta < 1 drives the pi ratio near beta") {
  BoundaryVertex v = parse_boundary_vertex(kGeom, 1);
  for (int n : {20, 40}) {
    TruncationInfo info = truncation_info(v, rat(1, 2), n);
    // Symbolwise convergence: the plain truncation is a suffix.
    Word plain = materialize(v, n);
    CHECK(common_suffix(info.word, plain).h == plain.length());
    Float achieved = info.achieved_ratio.value();
    Float err = achieved - Float(0.5);
    if (err < 0) err = -err;
    CHECK(err <= Float(2.0) / n + info.achieved_ratio.radius());
  }
  CHECK_THROWS_AS(truncation_sequence(v, Rat(2), 5), std::invalid_argument);
  CHECK_THROWS_AS(truncation_sequence(v, Rat(0), 5), std::invalid_argument);
}

TEST_CASE("boundary vertex index-forgetting keeps run structure") {
  BoundaryVertex v = parse_boundary_vertex(kSpecExample, 2);
  BoundaryVertex s = forget_indices(v);
  CHECK(s.r == 1);
  CHECK(s.runs == v.runs);
  CHECK(s.tail.kind == v.tail.kind);
  CHECK(forget_indices(materialize(v, 7)) == materialize(s, 7));
}
