#include "doctest.h"

#include <set>

#include "gconv/error.hpp"
#include "gconv/functions.hpp"

using namespace gconv;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }
Endo pi(const GroupRef& g, long k) { return scalar_endo(g, q(k)); }

FnRepr cyc_table(const GroupRef& g, std::vector<long> vals) {
  std::vector<ExtValue> v(vals.begin(), vals.end());
  return FnRepr::table(GroundSet::whole(g), v);
}

FnRepr int_table(const GroupRef& g, std::vector<long> xs, std::vector<ExtValue> vs) {
  std::vector<std::pair<Element, ExtValue>> e;
  for (std::size_t i = 0; i < xs.size(); ++i) e.emplace_back(reduce(*g, {xs[i]}), vs[i]);
  return FnRepr::table(g, e);
}

// Direct evaluation of the inequalities by element arithmetic.
bool direct_quasi(const FnRepr& f, const Endo& t) {
  const Endo c = complement(t);
  for (const auto& x : f.domain().elements())
    for (const auto& y : f.domain().elements())
      if (f(add(f.group(), t.apply(x), c.apply(y))) > max(f(x), f(y))) return false;
  return true;
}

bool direct_tt(const FnRepr& f, const Endo& t, const Rational& s) {
  const Endo c = complement(t);
  for (const auto& x : f.domain().elements())
    for (const auto& y : f.domain().elements()) {
      ExtValue lhs = f(add(f.group(), t.apply(x), c.apply(y)));
      ExtValue rhs = f(x).scaled(s) + f(y).scaled(1 - s);
      if (lhs > rhs) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("extended values") {
  ExtValue ni = ExtValue::neg_inf();
  CHECK(ni < ExtValue(-1000));
  CHECK(ni.scaled(q(0)) == ExtValue(0));
  CHECK(ni.scaled(q(1, 2)).is_neg_inf());
  CHECK((ni + ExtValue(3)).is_neg_inf());
  CHECK(parse_ext("-inf") == ni);
  CHECK(to_string(ExtValue(q(3, 2))) == "3/2");
  CHECK(max(ni, ExtValue(0)) == ExtValue(0));
  CHECK_THROWS_AS(ni.value(), Error);
}

TEST_CASE("inequality checks on tables") {
  auto z5 = make_group(GroupSpec::cyclic({5}));
  FnRepr f = cyc_table(z5, {0, 1, 2, 1, 0});
  Report r = check_inequality(InequalityKind::Quasiconvex, f, make_pair(pi(z5, 3), 0));
  CHECK(r.verdict == Verdict::Fail);
  CHECK(*r.find_witness("x") == "(0)");
  CHECK(*r.find_witness("y") == "(4)");
  CHECK(*r.find_witness("z") == "(2)");
  CHECK(*r.find_witness("lhs") == "2");
  CHECK(*r.find_witness("rhs") == "0");
  for (auto kind : {InequalityKind::TtConvex, InequalityKind::TtAffine, InequalityKind::Quasiconvex})
    CHECK(check_inequality(kind, f, make_pair(identity_endo(z5), 1)).passed());
  FnRepr sub = FnRepr::table(GroundSet::finite(z5, {reduce(*z5, {0}), reduce(*z5, {1})}), {ExtValue(0), ExtValue(1)});
  CHECK(check_inequality(InequalityKind::Quasiconvex, sub, make_pair(pi(z5, 3), 0)).verdict ==
        Verdict::PreconditionFailed);
}

TEST_CASE("table checks agree with direct evaluation") {
  Rng rng(17);
  for (long m : {5L, 6L, 7L, 8L}) {
    auto g = make_group(GroupSpec::cyclic({m}));
    for (int s = 0; s < 60; ++s) {
      std::vector<ExtValue> v;
      for (long i = 0; i < m; ++i) v.push_back(rng.coin(0.1) ? ExtValue::neg_inf() : ExtValue(rng.uniform(0L, 3L)));
      FnRepr f = FnRepr::table(GroundSet::whole(g), v);
      for (long k = 0; k < m; ++k) {
        Endo t = pi(g, k);
        CHECK(check_inequality(InequalityKind::Quasiconvex, f, make_pair(t, 0)).passed() == direct_quasi(f, t));
        Rational ts = make_rational(rng.uniform(0L, 4L), 4);
        CHECK(check_inequality(InequalityKind::TtConvex, f, make_pair(t, ts)).passed() == direct_tt(f, t, ts));
      }
    }
  }
}

TEST_CASE("sampled check of the square on a box") {
  auto d6 = make_group(GroupSpec::nadic(6, 1));
  FnRepr sq = FnRepr::quadratic(GroundSet::box(d6, {q(0)}, {q(1)}), {Matrix{{1}}, {q(0)}, q(0)});
  Report r = check_inequality(InequalityKind::TtConvex, sq, make_pair(scalar_endo(d6, q(1, 2)), q(1, 2)), 1000, 4);
  CHECK(r.passed());
  CHECK(r.coverage == Coverage::Sampled);
  CHECK(r.checked >= 1000);
  Report bad = check_inequality(InequalityKind::TtConvex, sq, make_pair(scalar_endo(d6, q(1, 2)), q(1, 3)), 1000, 4);
  CHECK(bad.verdict == Verdict::Fail);
  Report wright = check_inequality(InequalityKind::Wright, sq, make_pair(scalar_endo(d6, q(1, 3)), 0), 1000, 2);
  CHECK(wright.passed());
}

TEST_CASE("level sets and characteristic functions") {
  auto z5 = make_group(GroupSpec::cyclic({5}));
  FnRepr f = cyc_table(z5, {0, 1, 2, 1, 0});
  GroundSet l = level_set(f, ExtValue(1));
  CHECK(to_string(l) == "{(0), (1), (3), (4)}");
  CHECK(level_set(f, ExtValue::neg_inf()).empty());
  CHECK(level_set(f, ExtValue(7)) == f.domain());
  GroundSet s = GroundSet::finite(z5, {reduce(*z5, {0}), reduce(*z5, {1})});
  FnRepr chi = neg_char_fn(s, GroundSet::whole(z5));
  CHECK(chi.values() == std::vector<ExtValue>{ExtValue(-1), ExtValue(-1), ExtValue(0), ExtValue(0), ExtValue(0)});
  Report r = check_inequality(InequalityKind::Quasiconvex, chi, make_pair(pi(z5, 3), 0));
  CHECK(r.verdict == Verdict::Fail);
  CHECK_FALSE(is_T_convex(s, pi(z5, 3)).passed());
  CHECK(check_inequality(InequalityKind::Quasiconvex, chi, make_pair(pi(z5, 1), 0)).passed());
  FnRepr all = neg_char_fn(GroundSet::whole(z5), GroundSet::whole(z5));
  for (const auto& v : all.values()) CHECK(v == ExtValue(-1));
  FnRepr none = neg_char_fn(GroundSet::finite(z5, {}), GroundSet::whole(z5));
  for (const auto& v : none.values()) CHECK(v == ExtValue(0));
}

TEST_CASE("convolutions") {
  auto z = make_group(GroupSpec::lattice(1));
  FnRepr zero = int_table(z, {0}, {ExtValue(0)});
  CHECK(diamond_conv(zero, zero)(reduce(*z, {0})) == ExtValue(0));
  CHECK(inf_conv(zero, zero)(reduce(*z, {0})) == ExtValue(0));
  FnRepr f = int_table(z, {0, 1}, {ExtValue(0), ExtValue(5)});
  FnRepr g = int_table(z, {0, 1}, {ExtValue(1), ExtValue(2)});
  CHECK(diamond_conv(f, g)(reduce(*z, {1})) == ExtValue(2));
  CHECK(inf_conv(f, g)(reduce(*z, {1})) == ExtValue(2));
  CHECK(diamond_conv(f, g).domain().size() == 3);
  FnRepr h = int_table(z, {-1, 0, 3}, {ExtValue(-2), ExtValue(4), ExtValue(1)});
  FnRepr d = diamond_conv(h, zero);
  for (long x : {-1L, 0L, 3L}) CHECK(d(reduce(*z, {x})) == max(h(reduce(*z, {x})), ExtValue(0)));
  FnRepr ninf = int_table(z, {0, 2}, {ExtValue::neg_inf(), ExtValue(1)});
  FnRepr c = inf_conv(f, ninf);
  CHECK(c(reduce(*z, {0})).is_neg_inf());
  CHECK(c(reduce(*z, {1})).is_neg_inf());
  CHECK_FALSE(c(reduce(*z, {2})).is_neg_inf());
}

TEST_CASE("transport") {
  auto z5 = make_group(GroupSpec::cyclic({5}));
  FnRepr f = cyc_table(z5, {4, 0, 3, 1, 2});
  CHECK(transport(f, identity_endo(z5), Transport::Pullback) == f);
  CHECK(transport(f, identity_endo(z5), Transport::Pushforward) == f);
  FnRepr push = transport(f, pi(z5, 2), Transport::Pushforward);
  for (long x = 0; x < 5; ++x) CHECK(push(reduce(*z5, {x})) == f(reduce(*z5, {3 * x})));
  auto z4 = make_group(GroupSpec::cyclic({4}));
  FnRepr g = cyc_table(z4, {0, 1, 2, 3});
  FnRepr p4 = transport(g, pi(z4, 2), Transport::Pushforward);
  CHECK(p4(reduce(*z4, {2})) == ExtValue(1));
  CHECK(p4.domain().size() == 2);
  FnRepr back = transport(g, pi(z4, 2), Transport::Pullback);
  for (long x = 0; x < 4; ++x) CHECK(back(reduce(*z4, {x})) == g(reduce(*z4, {2 * x})));
  auto z = make_group(GroupSpec::lattice(1));
  FnRepr w = int_table(z, {0, 1, 2, 4}, {ExtValue(1), ExtValue(2), ExtValue(3), ExtValue(4)});
  FnRepr pb = transport(w, pi(z, 2), Transport::Pullback);
  CHECK(pb.domain().size() == 3);
  CHECK(pb(reduce(*z, {2})) == ExtValue(4));
}

TEST_CASE("quasiconvex envelope") {
  auto z5 = make_group(GroupSpec::cyclic({5}));
  FnRepr f = cyc_table(z5, {0, 1, 2, 1, 0});
  EndoSet ts(z5);
  ts.insert(pi(z5, 3));
  FnRepr env = qconv_envelope(f, ts);
  for (const auto& v : env.values()) CHECK(v == ExtValue(0));
  EndoSet id(z5);
  id.insert(identity_endo(z5));
  CHECK(qconv_envelope(f, id) == f);
  FnRepr single = FnRepr::table(GroundSet::finite(z5, {reduce(*z5, {2})}), {ExtValue(7)});
  CHECK(qconv_envelope(single, ts) == single);
  FnRepr sub = FnRepr::table(GroundSet::finite(z5, {reduce(*z5, {0}), reduce(*z5, {1})}), {ExtValue(0), ExtValue(1)});
  CHECK_THROWS_AS(qconv_envelope(sub, ts), Error);
}

TEST_CASE("convexity intervals") {
  auto z7 = make_group(GroupSpec::cyclic({7}));
  FnRepr lee = cyc_table(z7, {0, 1, 2, 3, 3, 2, 1});
  CHECK(convexity_interval(lee, zero_endo(z7), IntervalMode::Convex).interval == Interval{false, 0, 0});
  CHECK(convexity_interval(lee, identity_endo(z7), IntervalMode::Convex).interval == Interval{false, 1, 1});
  IntervalResult e = convexity_interval(lee, pi(z7, 4), IntervalMode::Convex);
  CHECK(e.interval.empty);
  REQUIRE(e.witness);
  CHECK(e.witness->first == reduce(*z7, {0}));
  CHECK(e.witness->second == reduce(*z7, {1}));
  FnRepr flat = cyc_table(z7, {2, 2, 2, 2, 2, 2, 2});
  for (long k = 0; k < 7; ++k) {
    CHECK(convexity_interval(flat, pi(z7, k), IntervalMode::Convex).interval == Interval{});
    CHECK(convexity_interval(flat, pi(z7, k), IntervalMode::Affine).interval == Interval{});
  }
  std::vector<ExtValue> mixed(7, ExtValue(0));
  mixed[3] = ExtValue::neg_inf();
  CHECK_THROWS_AS(convexity_interval(FnRepr::table(GroundSet::whole(z7), mixed), pi(z7, 2), IntervalMode::Convex),
                  Error);
  std::vector<ExtValue> all_inf(7, ExtValue::neg_inf());
  CHECK(convexity_interval(FnRepr::table(GroundSet::whole(z7), all_inf), pi(z7, 2), IntervalMode::Convex).interval ==
        Interval{});
}

TEST_CASE("intervals match a scan over candidate scalars") {
  auto z = make_group(GroupSpec::lattice(1));
  Rng rng(23);
  for (int s = 0; s < 40; ++s) {
    std::vector<long> xs;
    std::vector<ExtValue> vs;
    for (long x = -3; x <= 3; ++x) {
      xs.push_back(x);
      vs.emplace_back(rng.uniform(-4L, 6L));
    }
    FnRepr f = int_table(z, xs, vs);
    for (long k : {0L, 1L}) {
      Interval iv = convexity_interval(f, pi(z, k), IntervalMode::Convex).interval;
      for (long num = 0; num <= 24; ++num) {
        Rational ts = make_rational(num, 24);
        CHECK(iv.contains(ts) == direct_tt(f, pi(z, k), ts));
      }
    }
  }
  // antitone under domain growth
  auto g = make_group(GroupSpec::cyclic({9}));
  for (int s = 0; s < 30; ++s) {
    std::vector<ExtValue> v;
    for (int i = 0; i < 9; ++i) v.emplace_back(rng.uniform(0L, 5L));
    FnRepr f = FnRepr::table(GroundSet::whole(g), v);
    Endo t = pi(g, 3 * rng.uniform(0L, 2L) + 1);
    GroundSet small = GroundSet::finite(g, {reduce(*g, {0}), reduce(*g, {3}), reduce(*g, {6})});
    std::vector<ExtValue> sv{v[0], v[3], v[6]};
    if (!is_T_convex(small, t).passed()) continue;
    Interval big = convexity_interval(f, t, IntervalMode::Convex).interval;
    Interval part = convexity_interval(FnRepr::table(small, sv), t, IntervalMode::Convex).interval;
    if (!big.empty) {
      CHECK_FALSE(part.empty);
      CHECK(part.lower <= big.lower);
      CHECK(big.upper <= part.upper);
    }
  }
}

TEST_CASE("epigraph and graph lifts") {
  auto z = make_group(GroupSpec::lattice(1));
  std::vector<long> xs{-2, -1, 0, 1, 2};
  FnRepr sq = int_table(z, xs, {ExtValue(4), ExtValue(1), ExtValue(0), ExtValue(1), ExtValue(4)});
  Report id = lift_check(sq, make_pair(identity_endo(z), 1), LiftMode::Epigraph, 1);
  CHECK(id.passed());
  CHECK(fully_verified(id.audit));
  auto z7 = make_group(GroupSpec::cyclic({7}));
  FnRepr lee = cyc_table(z7, {0, 1, 2, 3, 3, 2, 1});
  ConvexPair p = make_pair(pi(z7, 4), q(1, 2));
  Report direct = check_inequality(InequalityKind::TtConvex, lee, p);
  Report lift = lift_check(lee, p, LiftMode::Epigraph, 1);
  REQUIRE(direct.verdict == Verdict::Fail);
  CHECK(lift.verdict == Verdict::Fail);
  CHECK(fully_verified(lift.audit));
  std::string fx = to_string(lee(reduce(*z7, {std::stol(direct.find_witness("x")->substr(1))})));
  CHECK(*lift.find_witness("x") == "(" + *direct.find_witness("x") + ", " + fx + ")");
  Rng rng(2);
  auto z9 = make_group(GroupSpec::cyclic({9}));
  for (int s = 0; s < 50; ++s) {
    std::vector<long> v;
    for (int i = 0; i < 9; ++i) v.push_back(rng.uniform(0L, 1L) * 3);
    FnRepr a = cyc_table(z9, v);
    ConvexPair pr = make_pair(pi(z9, rng.uniform(0L, 8L)), make_rational(rng.uniform(0L, 2L), 2));
    Report gl = lift_check(a, pr, LiftMode::Graph, 1);
    CHECK(gl.passed() == check_inequality(InequalityKind::TtAffine, a, pr).passed());
    CHECK(fully_verified(gl.audit));
  }
}

TEST_CASE("pointwise combinators") {
  auto z5 = make_group(GroupSpec::cyclic({5}));
  FnRepr f = cyc_table(z5, {0, 1, 2, 1, 0});
  FnRepr g = cyc_table(z5, {3, 0, 0, 1, 4});
  CHECK(pointwise(PointwiseOp::Sup, {f}) == f);
  CHECK(pointwise(PointwiseOp::Sup, {f, g}) == cyc_table(z5, {3, 1, 2, 1, 4}));
  CHECK(pointwise(PointwiseOp::Inf, {f, g}) == cyc_table(z5, {0, 0, 0, 1, 0}));
  CHECK(pointwise(PointwiseOp::Scale, {f}, q(0)) == cyc_table(z5, {0, 0, 0, 0, 0}));
  CHECK(pointwise(PointwiseOp::Shift, {f}, q(2)) == cyc_table(z5, {2, 3, 4, 3, 2}));
  CHECK(pointwise(PointwiseOp::Add, {f, g}) == cyc_table(z5, {3, 1, 2, 2, 4}));
  CHECK(pointwise(PointwiseOp::Limit, {g, f, f}) == f);
  CHECK_THROWS_AS(pointwise(PointwiseOp::Limit, {f, g}), Error);
  CHECK_THROWS_AS(pointwise(PointwiseOp::Scale, {f}, q(-1)), Error);
  auto z7 = make_group(GroupSpec::cyclic({7}));
  CHECK_THROWS_AS(pointwise(PointwiseOp::Sup, {f, cyc_table(z7, {0, 0, 0, 0, 0, 0, 0})}), Error);
  for (long k = 0; k < 5; ++k) {
    ConvexPair p = make_pair(pi(z5, k), 0);
    CHECK(check_inequality(InequalityKind::Quasiconvex, f, p).passed() ==
          check_inequality(InequalityKind::Quasiconvex, pointwise(PointwiseOp::Shift, {f}, q(7, 3)), p).passed());
  }
}

TEST_CASE("combination check") {
  auto d2 = make_group(GroupSpec::nadic(2, 1));
  FnRepr sq = FnRepr::quadratic(GroundSet::box(d2, {q(-1)}, {q(1)}), {Matrix{{1}}, {q(0)}, q(0)});
  Report r = check_combination(sq, {q(1, 2), q(1, 4), q(1, 4)}, {Element{{q(1)}}, Element{{q(-1)}}, Element{{q(1, 2)}}});
  CHECK(r.passed());
  FnRepr neg = FnRepr::quadratic(GroundSet::box(d2, {q(-1)}, {q(1)}), {Matrix{{-1}}, {q(0)}, q(0)});
  CHECK(check_combination(neg, {q(1, 2), q(1, 2)}, {Element{{q(1)}}, Element{{q(-1)}}}).verdict == Verdict::Fail);
  CHECK(check_combination(sq, {q(1, 3), q(2, 3)}, {Element{{q(1)}}, Element{{q(0)}}}).verdict ==
        Verdict::PreconditionFailed);
}
