#include "doctest.h"

#include "gconv/derive.hpp"
#include "gconv/error.hpp"
#include "gconv/fourier_motzkin.hpp"

using namespace gconv;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

GroupRef z6() { return make_group(GroupSpec::nadic(6, 1)); }

FnRepr square_on_box(const GroupRef& g, Rational lo, Rational hi) {
  QuadraticForm f{Matrix::scalar(1, 1), {q(0)}, q(0)};
  return FnRepr::quadratic(GroundSet::box(g, {lo}, {hi}), f);
}

FnRepr window(const GroupRef& g, long lo, long hi, Rational (*fn)(long)) {
  std::vector<std::pair<Element, ExtValue>> e;
  for (long x = lo; x <= hi; ++x) e.emplace_back(reduce(*g, {x}), fn(x));
  return FnRepr::table(g, e);
}

bool fully(const DerivedPair& d) { return fully_verified(d.audit); }

const AuditEntry* find_entry(const std::vector<AuditEntry>& audit, const std::string& prefix) {
  for (const auto& e : audit)
    if (e.hypothesis.rfind(prefix, 0) == 0) return &e;
  return nullptr;
}

// Solves the coefficient system directly: recurrences for i != k plus the normalization row.
std::vector<Rational> coefficient_oracle(const std::vector<Rational>& tv, long k) {
  const long n = long(tv.size());
  std::vector<Rational> t(n + 2, q(0));
  for (long i = 1; i <= n; ++i) t[i] = tv[i - 1];
  Matrix m(n, n);
  std::vector<Rational> rhs(n, q(0));
  for (long i = 1; i <= n; ++i) {
    // row for c_i: c_i - (1 - t_{i-1}) c_{i-1} - t_{i+1} c_{i+1} = [i == k]
    m(i - 1, i - 1) = 1;
    if (i > 1) m(i - 1, i - 2) = -(1 - t[i - 1]);
    if (i < n) m(i - 1, i) = -t[i + 1];
    if (i == k) rhs[i - 1] = 1;
  }
  auto inv = inverse(m);
  REQUIRE(inv);
  return *inv * std::span<const Rational>(rhs);
}

}  // namespace

TEST_CASE("fourier-motzkin") {
  // x + y <= 4, -x <= -1, -y <= -1, x - y <= 0
  std::vector<LinearIneq> rows{{{q(1), q(1)}, q(4)}, {{q(-1), q(0)}, q(-1)}, {{q(0), q(-1)}, q(-1)},
                               {{q(1), q(-1)}, q(0)}};
  FmResult r = fm_solve(rows, 2);
  REQUIRE(r.feasible);
  for (const auto& row : rows) CHECK(row.a[0] * r.point[0] + row.a[1] * r.point[1] <= row.b);
  rows.push_back({{q(1), q(0)}, q(0)});  // x <= 0 contradicts x >= 1
  r = fm_solve(rows, 2);
  REQUIRE_FALSE(r.feasible);
  CHECK(r.contradiction_rhs < 0);
  // the multipliers really combine to 0 <= negative
  Rational a0 = 0, a1 = 0, b = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(r.farkas[i] >= 0);
    a0 += r.farkas[i] * rows[i].a[0];
    a1 += r.farkas[i] * rows[i].a[1];
    b += r.farkas[i] * rows[i].b;
  }
  CHECK(a0 == 0);
  CHECK(a1 == 0);
  CHECK(b < 0);
}

TEST_CASE("compose pairs") {
  GroupRef g = make_group(GroupSpec::nadic(2, 1));
  ConvexPair half = make_pair(scalar_endo(g, q(1, 2)), q(1, 2));
  ConvexPair t1 = make_pair(scalar_endo(g, q(1, 4)), q(1, 4));
  ConvexPair t2 = make_pair(scalar_endo(g, q(3, 4)), q(1, 8));
  DerivedPair d = compose_pair(make_pair(zero_endo(g), q(0)), t1, t2);
  CHECK(d.pair.t == t2.t);
  CHECK(d.pair.s == t2.s);
  d = compose_pair(make_pair(identity_endo(g), q(1)), t1, t2);
  CHECK(d.pair.t == t1.t);
  CHECK(d.pair.s == t1.s);
  d = compose_pair(half, half, half);
  CHECK(d.pair.t == half.t);
  CHECK(d.pair.s == q(1, 2));
  CHECK_FALSE(d.audit.empty());
  CHECK_FALSE(fully(d));  // no target function

  FnRepr f = square_on_box(g, 0, 1);
  d = compose_pair(half, half, t1, {&f});
  CHECK(fully(d));
}

TEST_CASE("compose closure on a cyclic group") {
  GroupRef g = make_group(GroupSpec::cyclic({6}));
  Rng rng(5);
  std::vector<Endo> ts;
  for (long k = 0; k < 6; ++k) ts.push_back(scalar_endo(g, q(k)));
  const std::vector<Rational> grid{q(0), q(1, 3), q(1, 2), q(1)};
  int derived = 0;
  for (int rep = 0; rep < 8; ++rep) {
    std::vector<ExtValue> v;
    for (int i = 0; i < 6; ++i) v.emplace_back(rng.uniform(0L, 2L));
    FnRepr f = FnRepr::table(GroundSet::whole(g), v);
    for (auto kind : {InequalityKind::Quasiconvex, InequalityKind::TtConvex, InequalityKind::TtAffine}) {
      std::vector<ConvexPair> held;
      for (const auto& t : ts)
        for (const auto& s : grid) {
          ConvexPair p = make_pair(t, s);
          if (check_inequality(kind, f, p).passed()) held.push_back(p);
        }
      for (std::size_t i = 0; i < held.size(); ++i)
        for (std::size_t j = 0; j < held.size(); ++j) {
          const ConvexPair &a = held[i], &b = held[j], &c = held[(i + j) % held.size()];
          DerivedPair d = compose_pair(a, b, c, {&f, kind});
          REQUIRE(fully(d));
          CHECK(check_inequality(kind, f, d.pair).passed());
          ++derived;
        }
    }
  }
  CHECK(derived > 0);
}

TEST_CASE("wright ratio derivation") {
  GroupRef g = z6();
  Endo half = scalar_endo(g, q(1, 2));
  DerivedPair d = wright_ratio_derive(half, 1, 2);
  CHECK(d.pair.t == scalar_endo(g, q(1, 3)));
  CHECK(d.pair.s == q(1, 3));
  CHECK(d.rule == "wright-ratio");

  Endo t = scalar_endo(g, q(1, 3));
  d = wright_ratio_derive(t, 2, 2);
  CHECK(d.pair.t == t);

  GroupRef z27 = make_group(GroupSpec::cyclic({27}));
  d = wright_ratio_derive(scalar_endo(z27, q(2)), 1, 1);
  const AuditEntry* mu = find_entry(d.audit, "mu_d(n0)");
  REQUIRE(mu);
  CHECK(mu->status == AuditStatus::Assumed);
  CHECK_FALSE(fully(d));

  // S = 2T + 2(I - T) = 2I has no inverse on Z
  GroupRef zl = make_group(GroupSpec::lattice(1));
  CHECK_THROWS_AS(wright_ratio_derive(scalar_endo(zl, q(3)), 2, 2), Error);
}

TEST_CASE("wright ratio matches the scalar formula") {
  // base divisible by every prime below 32 so all derived scalars exist
  GroupRef g = make_group(GroupSpec::nadic(200560490130L, 1));
  int seen = 0;
  for (long den = 1; den <= 12; ++den)
    for (long num = 0; num <= den; ++num)
      for (long n = 1; n <= 3; ++n)
        for (long k = 1; k <= 3; ++k) {
          Rational t = q(num, den);
          DerivedPair d = wright_ratio_derive(scalar_endo(g, t), n, k);
          Rational expect = n * t / (n * t + k * (1 - t));
          REQUIRE(d.pair.t.as_scalar());
          CHECK(*d.pair.t.as_scalar() == expect);
          ++seen;
        }
  CHECK(seen > 300);
}

TEST_CASE("u grid") {
  GroupRef g = z6();
  FnRepr f = square_on_box(g, 0, 1);
  Endo half = scalar_endo(g, q(1, 2));
  Element x = reduce(*g, {0}), y = reduce(*g, std::vector<Rational>{q(3, 4)});
  Report r = u_grid_verify(f, half, 1, 2, x, y);
  CHECK(r.passed());
  CHECK(r.checked == 2 * 2 + 2 + 1);
  CHECK(u_grid_verify(f, half, 1, 1, x, y).passed());

  // a non-Wright-convex function fails in a cell, not in the telescoped row
  QuadraticForm neg{Matrix::scalar(1, -1), {q(0)}, q(0)};
  FnRepr h = FnRepr::quadratic(GroundSet::box(g, {q(0)}, {q(1)}), neg);
  Report bad = u_grid_verify(h, half, 2, 1, x, reduce(*g, {1}));
  CHECK(bad.verdict == Verdict::PreconditionFailed);
  CHECK(bad.find_witness("cell"));

  // escaping grid
  FnRepr small = square_on_box(g, 0, q(1, 2));
  Report esc = u_grid_verify(small, scalar_endo(g, q(2)), 2, 1, x, reduce(*g, std::vector<Rational>{q(1, 2)}));
  CHECK(esc.verdict == Verdict::PreconditionFailed);
}

TEST_CASE("wright decomposition") {
  GroupRef g = make_group(GroupSpec::lattice(1));
  FnRepr a = window(g, -6, 6, [](long x) { return q(x * x + 2 * x + 3); });
  WrightDecomposition w = twa_decompose(a, {identity_endo(g), scalar_endo(g, q(2))});
  CHECK(w.b(0, 0) == 1);
  CHECK(w.a[0] == 2);
  CHECK(w.c == 3);
  CHECK(w.report.audit.size() == 2);
  CHECK(w.report.audit[0].status == AuditStatus::Verified);
  CHECK(w.report.audit[1].status == AuditStatus::Failed);

  WrightDecomposition k = twa_decompose(window(g, -3, 3, [](long) { return q(5); }));
  CHECK(k.report.passed());
  CHECK(k.b(0, 0) == 0);
  CHECK(k.a[0] == 0);
  CHECK(k.c == 5);

  WrightDecomposition cube = twa_decompose(window(g, -4, 4, [](long x) { return q(x * x * x); }));
  CHECK(cube.report.verdict == Verdict::Fail);
  REQUIRE(cube.report.find_witness("residual"));
  CHECK(*cube.report.find_witness("residual") != "0");
}

TEST_CASE("affine decomposition") {
  GroupRef g = make_group(GroupSpec::nadic(2, 1));
  QuadraticForm lin{Matrix(1, 1), {q(3)}, q(7)};
  FnRepr a = FnRepr::quadratic(GroundSet::box(g, {q(-1)}, {q(1)}), lin);
  ConvexPair half = make_pair(scalar_endo(g, q(1, 2)), q(1, 2));
  AffineDecomposition ad = affine_decompose(a, {half});
  CHECK(ad.report.passed());
  CHECK(ad.a[0] == 3);
  CHECK(ad.c == 7);

  GroupRef z = make_group(GroupSpec::lattice(1));
  AffineDecomposition k = affine_decompose(window(z, -2, 2, [](long) { return q(4); }), {});
  CHECK(k.a[0] == 0);
  CHECK(k.c == 4);
  AffineDecomposition l = affine_decompose(window(z, -2, 2, [](long x) { return q(-2 * x + 1); }), {});
  CHECK(l.report.passed());
  CHECK(l.a[0] == -2);

  GroupRef z5 = make_group(GroupSpec::cyclic({5}));
  std::vector<ExtValue> vals{0L, 1L, 2L, 3L, 4L};
  FnRepr nc = FnRepr::table(GroundSet::whole(z5), vals);
  CHECK_THROWS_AS(affine_decompose(nc, {make_pair(scalar_endo(z5, q(3)), q(1, 2))}), Error);
  AffineDecomposition c5 = affine_decompose(FnRepr::table(GroundSet::whole(z5), std::vector<ExtValue>(5, 2L)),
                                            {make_pair(scalar_endo(z5, q(3)), q(1, 2))});
  CHECK(c5.report.passed());
  CHECK(c5.report.audit.front().status == AuditStatus::Verified);
}

TEST_CASE("right-inverse derivations") {
  GroupRef g = make_group(GroupSpec::nadic(2, 1));
  ConvexPair tp = make_pair(scalar_endo(g, q(1, 4)), q(1, 4));
  ConvexPair id = make_pair(identity_endo(g), q(1));
  auto out = p2a_derive(tp, id, PartialHom::from_endo(identity_endo(g), basis(*g)));
  REQUIRE(out.size() == 2);
  CHECK(out[0].pair.t == tp.t);
  CHECK(out[0].pair.s == tp.s);
  CHECK(out[1].pair.t == complement(tp.t));
  CHECK(out[1].pair.s == q(3, 4));

  ConvexPair sp = make_pair(scalar_endo(g, q(1, 2)), q(1, 2));
  PartialHom two = PartialHom::from_endo(scalar_endo(g, q(2)), basis(*g));
  out = p2a_derive(tp, sp, two);
  CHECK(out[0].pair.t == scalar_endo(g, q(1, 2)));
  CHECK(out[0].pair.s == q(1, 2));
  CHECK(out[1].pair.t == scalar_endo(g, q(1, 4)));
  CHECK(out[1].pair.s == q(1, 4));

  out = p2a_derive(sp, sp, two);
  CHECK(out[1].pair.t.is_zero());
  CHECK(out[1].pair.s == 0);

  CHECK_THROWS_AS(p2a_derive(tp, sp, PartialHom::from_endo(identity_endo(g), basis(*g))), Error);
  CHECK_THROWS_AS(p2a_derive(sp, tp, two), Error);  // t > s
}

TEST_CASE("right-inverse sum pair") {
  GroupRef g = make_group(GroupSpec::nadic(2, 1));
  ConvexPair tp = make_pair(scalar_endo(g, q(1, 2)), q(1, 2));
  ConvexPair sp = make_pair(scalar_endo(g, q(3, 4)), q(3, 4));
  // S = 3/4 I is not invertible on Z[1/2]; restricted to T(X) = X it has no right inverse
  CHECK_THROWS_AS(right_inverse_on(sp.t, {tp.t.apply(reduce(*g, {1}))}), Error);
  ConvexPair s1 = make_pair(scalar_endo(g, q(1, 2)), q(1, 2));
  PartialHom two = PartialHom::from_endo(scalar_endo(g, q(2)), basis(*g));
  auto out = p2a_derive(tp, s1, two, &two);
  REQUIRE(out.size() == 3);
  CHECK(out[2].rule == "p2a-sum");
  CHECK(out[2].pair.t.is_zero());
  CHECK(out[2].pair.s == 0);
}

TEST_CASE("chain coefficients") {
  LastResult hand = last_coefficients({q(1, 2), q(1, 2)}, 1);
  CHECK(hand.s == std::vector<Rational>{q(1, 4), q(1, 4), q(1, 4)});
  CHECK(hand.r[1] == q(2, 3));
  CHECK(hand.c == std::vector<Rational>{q(0), q(4, 3), q(2, 3), q(0)});
  CHECK(hand.coefficients.passed());

  Rng rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    long n = rng.uniform(1L, 5L);
    std::vector<Rational> t;
    for (long i = 0; i < n; ++i) {
      long den = rng.uniform(2L, 12L);
      t.push_back(q(rng.uniform(1L, den - 1), den));
    }
    long k = rng.uniform(1L, n);
    LastResult r = last_coefficients(t, k);
    REQUIRE(r.coefficients.passed());
    std::vector<Rational> oracle = coefficient_oracle(t, k);
    for (long i = 1; i <= n; ++i) CHECK(r.c[i] == oracle[i - 1]);
  }
  CHECK_THROWS_AS(last_coefficients({q(0), q(1, 2)}, 1), Error);
}

TEST_CASE("chain derivation") {
  GroupRef g = z6();
  Endo t1 = scalar_endo(g, q(1, 3));
  LastResult one = last_derive({make_pair(t1, q(1, 3))}, 1);
  CHECK(one.derived.pair.t == t1);
  CHECK(one.derived.pair.s == q(1, 3));

  ConvexPair half = make_pair(scalar_endo(g, q(1, 2)), q(1, 2));
  LastResult three = last_derive({half, half, half}, 2);
  CHECK(three.derived.pair.s == q(1, 2));
  CHECK(three.derived.pair.t == half.t);

  FnRepr f = square_on_box(g, 0, 1);
  GroundSet box = f.domain();
  LastResult audited = last_derive({half, half}, 1, &box, {&f});
  CHECK(audited.derived.pair.t == scalar_endo(g, q(2, 3)));
  CHECK(fully(audited.derived));
  CHECK(check_inequality(InequalityKind::TtConvex, f, audited.derived.pair, 1000, 3).passed());

  GroupRef z2 = make_group(GroupSpec::lattice(2));
  Endo a = validate_endo(z2, Matrix{{1, 1}, {0, 1}});
  Endo b = validate_endo(z2, Matrix{{1, 0}, {1, 1}});
  CHECK_THROWS_AS(last_derive({make_pair(a, q(1, 2)), make_pair(b, q(1, 2))}, 1), Error);
}

TEST_CASE("rational-weight derivation") {
  GroupRef g = z6();
  ConvexPair half = make_pair(scalar_endo(g, q(1, 2)), q(1, 2));
  auto one = kuhn_derive(half, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].pair.t.is_identity());
  CHECK(one[0].pair.s == 1);

  FnRepr f = square_on_box(g, 0, 1);
  GroundSet box = f.domain();
  auto three = kuhn_derive(half, 3, &box, {&f});
  REQUIRE(three.size() == 3);
  for (long k = 1; k <= 3; ++k) {
    CHECK(three[k - 1].pair.t == scalar_endo(g, q(k, 3)));
    CHECK(three[k - 1].pair.s == q(k, 3));
    CHECK(fully(three[k - 1]));
  }
  const AuditEntry* cross = find_entry(three[0].audit, "agrees with");
  REQUIRE(cross);
  CHECK(cross->status == AuditStatus::Verified);
  Report r = check_inequality(InequalityKind::TtConvex, f, three[0].pair, 1000, 9);
  CHECK(r.passed());
  CHECK(r.checked >= 1000);

  CHECK_THROWS_AS(kuhn_derive(half, 5), Error);  // 5 is not invertible on Z[1/6]
  GroupRef z7 = make_group(GroupSpec::cyclic({7}));
  auto fin = kuhn_derive(make_pair(scalar_endo(z7, q(4)), q(1, 2)), 3);
  CHECK(fin[0].pair.t == scalar_endo(z7, q(5)));  // 3 * 5 = 1 mod 7
  CHECK_FALSE(fully(fin[0]));
}

TEST_CASE("affine supports") {
  GroupRef g = make_group(GroupSpec::lattice(1));
  FnRepr sq = window(g, -2, 2, [](long x) { return q(x * x); });
  SupportResult s0 = rode_support(sq, {}, reduce(*g, {0}));
  REQUIRE(s0.certificate);
  CHECK(s0.certificate->a[0] == 0);
  CHECK(s0.certificate->c == 0);

  FnRepr wide = window(g, -4, 4, [](long x) { return q(x * x); });
  SupportResult s2 = rode_support(wide, {}, reduce(*g, {2}));
  REQUIRE(s2.certificate);
  CHECK(s2.certificate->a[0] == 4);
  CHECK(s2.certificate->c == -4);
  for (long x = -4; x <= 4; ++x) CHECK(4 * x - 4 <= x * x);

  FnRepr bump = window(g, -1, 1, [](long x) { return q(x == 0 ? 5 : 0); });
  SupportResult none = rode_support(bump, {}, reduce(*g, {0}));
  CHECK_FALSE(none.certificate);
  CHECK(none.report.verdict == Verdict::Inconclusive);
  CHECK_FALSE(none.contradiction.empty());

  // homogeneity under (I, 1) is free; a singular pair is rejected
  SupportResult h = rode_support(wide, {make_pair(identity_endo(g), q(1))}, reduce(*g, {-3}));
  CHECK(h.certificate);
  CHECK_THROWS_AS(rode_support(wide, {make_pair(identity_endo(g), q(0))}, reduce(*g, {0})), Error);

  // two dimensions, pair (0, 0) forces nothing, every support is re-verified
  GroupRef z2 = make_group(GroupSpec::lattice(2));
  std::vector<std::pair<Element, ExtValue>> e;
  for (long x = -2; x <= 2; ++x)
    for (long y = -2; y <= 2; ++y) e.emplace_back(reduce(*z2, {x, y}), q(x * x + x * y + y * y));
  FnRepr f2 = FnRepr::table(z2, e);
  for (const auto& [p, v] : e) {
    SupportResult s = rode_support(f2, {make_pair(zero_endo(z2), q(0))}, p);
    REQUIRE(s.certificate);
    for (const auto& [x, fx] : e) {
      Rational av = s.certificate->a[0] * x.coords[0] + s.certificate->a[1] * x.coords[1] + s.certificate->c;
      CHECK(ExtValue(av) <= fx);
      if (x == p) CHECK(ExtValue(av) == fx);
    }
  }
}
