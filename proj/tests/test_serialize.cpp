#include "doctest.h"

#include "gconv/error.hpp"
#include "gconv/serialize.hpp"

using namespace gconv;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

Element el(std::vector<Rational> c) { return Element{std::move(c)}; }

}  // namespace

TEST_CASE("rationals are strings") {
  CHECK(to_json(q(-3, 4)) == Json("-3/4"));
  CHECK(rational_from_json(Json("6/8")) == q(3, 4));
  CHECK(rational_from_json(Json(5)) == q(5));
}

TEST_CASE("groups round trip") {
  for (GroupSpec g : {GroupSpec::cyclic({4, 2}), GroupSpec::lattice(2, NormKind::Abs, {q(1), q(3, 2)}),
                      GroupSpec::nadic(6, 1), GroupSpec::cyclic({}), GroupSpec::cyclic({5}, NormKind::Discrete)}) {
    CHECK(group_from_json(to_json(g)) == g);
    CHECK(group_from_json(Json::parse(to_json(g).dump())) == g);
  }
  CHECK_THROWS_AS(group_from_json(Json{{"family", "torus"}}), Error);
}

TEST_CASE("endomorphisms and sets round trip") {
  GroupRef g = make_group(GroupSpec::cyclic({4, 2}));
  Endo t = validate_endo(g, Matrix{{1, 0}, {2, 1}});
  Endo back = endo_from_json(to_json(t));
  CHECK(back == t);
  CHECK(endo_from_json(Json{{"matrix", to_json(t.matrix())}}, g) == t);

  GroundSet d = GroundSet::finite(g, {el({q(0), q(0)}), el({q(1), q(1)}), el({q(2), q(0)})});
  CHECK(ground_set_from_json(to_json(d)) == d);

  GroupRef z = make_group(GroupSpec::nadic(2, 1));
  GroundSet b = GroundSet::box(z, {q(-1, 2)}, {q(3, 4)});
  CHECK(ground_set_from_json(to_json(b)) == b);
  CHECK(ground_set_from_json(to_json(GroundSet::whole(g))) == GroundSet::whole(g));
}

TEST_CASE("functions round trip") {
  GroupRef g = make_group(GroupSpec::cyclic({5}));
  FnRepr f = FnRepr::table(GroundSet::whole(g), {ExtValue(q(1, 2)), ExtValue::neg_inf(), ExtValue(3), ExtValue(0),
                                                 ExtValue(-2)});
  FnRepr back = fn_from_json(to_json(f));
  CHECK(back == f);
  for (const auto& x : f.domain().elements()) CHECK(back(x) == f(x));

  GroupRef z = make_group(GroupSpec::lattice(1));
  QuadraticForm form{Matrix{{2}}, {q(-1)}, q(1, 3)};
  FnRepr quad = FnRepr::quadratic(GroundSet::box(z, {q(-3)}, {q(3)}), form);
  FnRepr qb = fn_from_json(to_json(quad));
  CHECK(qb == quad);
  CHECK(qb(el({q(2)})) == ExtValue(q(8 - 2) + q(1, 3)));
}

TEST_CASE("pairs, reports and derived pairs round trip") {
  GroupRef g = make_group(GroupSpec::nadic(6, 1));
  ConvexPair p = make_pair(scalar_endo(g, q(1, 3)), q(1, 3));
  ConvexPair pb = pair_from_json(to_json(p));
  CHECK(pb.t == p.t);
  CHECK(pb.s == p.s);

  Report r;
  r.verdict = Verdict::Fail;
  r.coverage = Coverage::Sampled;
  r.checked = 17;
  r.add_witness("x", "[1]");
  r.audit.push_back({"domain is convex", AuditStatus::CertifiedBound, "bound 2"});
  r.detail = "violated";
  Report rb = report_from_json(to_json(r));
  CHECK(to_json(rb) == to_json(r));
  CHECK(rb.verdict == Verdict::Fail);
  CHECK(rb.audit.at(0).status == AuditStatus::CertifiedBound);

  DerivedPair d{p, "compose", {{"input holds", AuditStatus::Verified, ""}}, {"a", "b"}};
  DerivedPair db = derived_from_json(to_json(d));
  CHECK(db.rule == "compose");
  CHECK(db.pair.s == p.s);
  CHECK(db.inputs == d.inputs);
  CHECK(to_json(db) == to_json(d));
}

TEST_CASE("malformed input is rejected") {
  GroupRef g = make_group(GroupSpec::cyclic({4}));
  CHECK_THROWS(endo_from_json(Json{{"matrix", Json::array({Json::array({"1", "2"})})}}, g));
  CHECK_THROWS(endo_from_json(Json{{"matrix", Json::array({Json::array({"1"})})}}));
  CHECK_THROWS(rational_from_json(Json("x/y")));
}
