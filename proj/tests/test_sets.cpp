#include "doctest.h"

#include "gconv/error.hpp"
#include "gconv/sets.hpp"

using namespace gconv;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

GroundSet cyc_set(const GroupRef& g, std::initializer_list<long> xs) {
  std::vector<Element> e;
  for (long x : xs) e.push_back(reduce(*g, {x}));
  return GroundSet::finite(g, e);
}

Endo pi(const GroupRef& g, long k) { return scalar_endo(g, q(k)); }

// Direct double loop over pairs, independent of the pair table.
bool convex_by_loops(const GroundSet& d, const Endo& t) {
  const Endo c = complement(t);
  for (const auto& x : d.elements())
    for (const auto& y : d.elements())
      if (!d.contains(add(d.group(), t.apply(x), c.apply(y)))) return false;
  return true;
}

GroundSet subset_from_mask(const GroupRef& g, unsigned mask) {
  FiniteCarrier c(*g);
  std::vector<Element> e;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (mask >> i & 1u) e.push_back(c.element(i));
  return GroundSet::finite(g, e);
}

}  // namespace

TEST_CASE("ground set basics") {
  auto z5 = make_group(GroupSpec::cyclic({5}));
  GroundSet s = cyc_set(z5, {6, 1, 0, 5});
  CHECK(s.size() == 2);
  CHECK(s.contains(reduce(*z5, {1})));
  CHECK_FALSE(s.contains(reduce(*z5, {2})));
  auto d2 = make_group(GroupSpec::nadic(2, 1));
  GroundSet b = GroundSet::box(d2, {q(0)}, {q(1)});
  std::vector<Rational> in{q(3, 8)}, out{q(9, 8)};
  CHECK(b.contains(reduce(*d2, in)));
  CHECK_FALSE(b.contains(reduce(*d2, out)));
  CHECK_FALSE(b.contains(Element{{q(1, 3)}}));
  CHECK_THROWS_AS(GroundSet::box(d2, {q(1, 3)}, {q(1)}), Error);
  Rng rng(1);
  for (int i = 0; i < 500; ++i) CHECK(b.contains(sample_point(b, rng)));
}

TEST_CASE("T-convexity examples") {
  auto z5 = make_group(GroupSpec::cyclic({5}));
  Report r = is_T_convex(cyc_set(z5, {0, 1}), pi(z5, 3));
  CHECK(r.verdict == Verdict::Fail);
  CHECK(*r.find_witness("x") == "(1)");
  CHECK(*r.find_witness("y") == "(0)");
  CHECK(*r.find_witness("z") == "(3)");
  CHECK(is_T_convex(cyc_set(z5, {0, 1, 3}), identity_endo(z5)).passed());
  auto d2 = make_group(GroupSpec::nadic(2, 1));
  Report b = is_T_convex(GroundSet::box(d2, {q(0)}, {q(1)}), scalar_endo(d2, q(1, 2)));
  CHECK(b.passed());
  CHECK(b.coverage == Coverage::Sampled);
  CHECK(b.checked == 1000);
  CHECK_FALSE(is_T_convex(GroundSet::box(d2, {q(0)}, {q(1)}), scalar_endo(d2, q(2))).passed());
}

TEST_CASE("pair-table verdicts match direct loops") {
  for (long m : {4L, 5L, 6L, 8L, 9L}) {
    auto g = make_group(GroupSpec::cyclic({m}));
    for (unsigned mask = 1; mask < (1u << m); mask += 3) {
      GroundSet d = subset_from_mask(g, mask);
      for (long k = 0; k < m; ++k) CHECK(is_T_convex(d, pi(g, k)).passed() == convex_by_loops(d, pi(g, k)));
    }
  }
  auto g = make_group(GroupSpec::cyclic({2, 4}));
  for (const Endo& t : all_endos(g))
    for (unsigned mask = 1; mask < 256; mask += 7) {
      GroundSet d = subset_from_mask(g, mask);
      CHECK(is_T_convex(d, t).passed() == convex_by_loops(d, t));
    }
}

TEST_CASE("n-convexity") {
  auto z = make_group(GroupSpec::lattice(1));
  Report r = is_n_convex(GroundSet::finite(z, {reduce(*z, {0}), reduce(*z, {1})}), 2);
  CHECK(r.verdict == Verdict::Fail);
  CHECK(*r.find_witness("sum") == "(1)");
  auto z5 = make_group(GroupSpec::cyclic({5}));
  CHECK(is_n_convex(GroundSet::whole(z5), 2).passed());
  auto d2 = make_group(GroupSpec::nadic(2, 1));
  GroundSet box = GroundSet::box(d2, {q(0)}, {q(1)});
  CHECK(is_n_convex(box, 2).passed());
  Report three = is_n_convex(box, 3);
  CHECK(three.verdict == Verdict::Fail);
  CHECK(*three.find_witness("sum") == "(1)");
  CHECK(is_n_convex(GroundSet::box(d2, {q(1, 2)}, {q(1, 2)}), 3).passed());
  auto d6 = make_group(GroupSpec::nadic(6, 2));
  CHECK(is_n_convex(GroundSet::box(d6, {q(0), q(-1)}, {q(1), q(2)}), 4).passed());
  CHECK_FALSE(is_n_convex(GroundSet::box(d6, {q(0), q(-1)}, {q(1, 36), q(2)}), 5).passed());
}

TEST_CASE("n-convex boxes agree with a finite grid check") {
  // Inside the grid (1/N^e)Z the fine points of the sumset that are not n-fold multiples expose failures.
  auto d2 = make_group(GroupSpec::nadic(2, 1));
  GroundSet box = GroundSet::box(d2, {q(0)}, {q(1)});
  std::vector<Element> grid;
  for (long k = 0; k <= 8; ++k) grid.push_back(Element{{q(k, 8)}});
  GroundSet fine = GroundSet::finite(d2, grid);
  GroundSet s3 = sumset(sumset(fine, fine), fine);
  bool every_sum_is_triple = true;
  for (const auto& x : s3.elements()) {
    Rational third = x.coords[0] / 3;
    every_sum_is_triple &= denominator_is_base_power(third, Integer(2));
  }
  CHECK(every_sum_is_triple == is_n_convex(box, 3).passed());
}

TEST_CASE("enumerating the convexity semigroup") {
  auto z5 = make_group(GroupSpec::cyclic({5}));
  CHECK(enumerate_TD(cyc_set(z5, {0})).size() == 5);
  EndoSet two = enumerate_TD(cyc_set(z5, {0, 1}));
  CHECK(two.size() == 2);
  CHECK(two.contains(pi(z5, 0)));
  CHECK(two.contains(pi(z5, 1)));
  auto trivial = make_group(GroupSpec::cyclic({}));
  EndoSet t = enumerate_TD(GroundSet::whole(trivial));
  CHECK(t.size() == 1);
  CHECK(t.members()[0].is_identity());
  CHECK(t.members()[0].is_zero());
  CHECK(all_endos(make_group(GroupSpec::cyclic({4, 2}))).size() == 32);
  CHECK_THROWS_AS(all_endos(make_group(GroupSpec::cyclic({30, 30})), 100), Error);
}

TEST_CASE("enumerated semigroup is closed under the combination map") {
  for (long m : {6L, 8L, 9L, 12L}) {
    auto g = make_group(GroupSpec::cyclic({m}));
    for (unsigned mask = 1; mask < (1u << m); mask += 37) {
      GroundSet d = subset_from_mask(g, mask);
      EndoSet td = enumerate_TD(d);
      for (const auto& t : td.members())
        for (const auto& a : td.members())
          for (const auto& b : td.members()) CHECK(td.contains(compose(t, a) + compose(complement(t), b)));
    }
  }
}

TEST_CASE("closure generation") {
  auto z27 = make_group(GroupSpec::cyclic({27}));
  EndoSet seed(z27);
  seed.insert(pi(z27, 5));
  EndoSet cl = closure_generate(seed);
  CHECK(cl.contains(pi(z27, 14)));
  EndoSet empty(z27);
  EndoSet base = closure_generate(empty);
  CHECK(base.size() == 2);
  auto z2 = make_group(GroupSpec::lattice(2));
  EndoSet proj(z2);
  proj.insert(validate_endo(z2, Matrix{{1, 0}, {0, 0}}));
  CHECK(closure_generate(proj).size() == 4);
  EndoSet big = closure_generate(seed, 3);
  CHECK(big.truncated);
  CHECK(big.size() == 3);
  for (long m : {5L, 6L, 9L}) {
    auto g = make_group(GroupSpec::cyclic({m}));
    for (unsigned mask = 1; mask < (1u << m); mask += 11) {
      EndoSet td = enumerate_TD(subset_from_mask(g, mask));
      EndoSet c = closure_generate(td);
      for (const auto& t : c.members()) CHECK(td.contains(t));
    }
  }
}

TEST_CASE("midpoint recursion stays in the semigroup") {
  auto g = make_group(GroupSpec::cyclic({9}));
  for (unsigned mask = 1; mask < 512; mask += 5) {
    GroundSet d = subset_from_mask(g, mask);
    EndoSet td = enumerate_TD(d);
    for (const auto& t : td.members())
      for (long n = 1; n <= 4; ++n) CHECK(td.contains(midpoint_recursion(t, n)));
  }
}

TEST_CASE("convex sets under a contracting 2T-I are midpoint convex") {
  for (long k : {2L, 3L}) {
    long m = k == 2 ? 9 : 27;
    auto g = make_group(GroupSpec::cyclic({m}));
    Endo half = pi(g, (m + 1) / 2);
    for (long a = 0; a < m; ++a) {
      Endo t = pi(g, a);
      Endo u = scale(Integer(2), t) - identity_endo(g);
      if (!spectral_radius(u, 8).nilpotent) continue;
      if (k == 2) {
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
          GroundSet d = subset_from_mask(g, mask);
          if (is_T_convex(d, t).passed()) CHECK(is_T_convex(d, half).passed());
        }
      } else {
        Rng rng(static_cast<std::uint64_t>(a));
        for (int s = 0; s < 2000; ++s) {
          std::vector<Element> e;
          for (long i = 0; i < m; ++i)
            if (rng.coin(0.3)) e.push_back(reduce(*g, {i}));
          GroundSet d = GroundSet::finite(g, e);
          if (is_T_convex(d, t).passed()) CHECK(is_T_convex(d, half).passed());
        }
      }
    }
  }
}

TEST_CASE("cancellation verifier") {
  auto d2 = make_group(GroupSpec::nadic(2, 1));
  GroundSet a = GroundSet::finite(d2, {Element{{q(3, 4)}}});
  GroundSet b = GroundSet::box(d2, {q(0)}, {q(1)});
  GroundSet c = GroundSet::finite(d2, {Element{{q(0)}}, Element{{q(1, 2)}}});
  Report r = radstrom_check(a, b, c, 2);
  CHECK(r.passed());
  CHECK(fully_verified(r.audit));
  GroundSet outside = GroundSet::finite(d2, {Element{{q(3, 2)}}});
  Report p = radstrom_check(outside, b, c, 2);
  CHECK(p.verdict == Verdict::PreconditionFailed);
  CHECK(p.find_witness("a+c"));
  auto z5 = make_group(GroupSpec::cyclic({5}));
  for (long n0 = 1; n0 <= 10; ++n0) {
    Report f = radstrom_check(cyc_set(z5, {1}), cyc_set(z5, {1, 2}), cyc_set(z5, {0}), n0);
    CHECK(f.verdict == Verdict::PreconditionFailed);
    CHECK(f.audit[0].status == AuditStatus::Failed);
  }
}

TEST_CASE("internal points") {
  auto z5 = make_group(GroupSpec::cyclic({5}));
  for (long p = 0; p < 5; ++p)
    CHECK(internal_points(GroundSet::whole(z5), pi(z5, 3), reduce(*z5, {p})).status == Internality::Internal);
  CHECK(internal_points(cyc_set(z5, {2}), pi(z5, 3), reduce(*z5, {2})).status == Internality::Internal);
  auto z4 = make_group(GroupSpec::cyclic({4}));
  CHECK(internal_points(GroundSet::whole(z4), pi(z4, 2), reduce(*z4, {1})).status == Internality::Internal);
  CHECK(internal_points(GroundSet::whole(z4), identity_endo(z4), reduce(*z4, {1})).status == Internality::Internal);
}

TEST_CASE("internality agrees with a search over absorbing subsets") {
  for (long m : {4L, 5L, 6L}) {
    auto g = make_group(GroupSpec::cyclic({m}));
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      GroundSet d = subset_from_mask(g, mask);
      for (long k = 0; k < m; ++k) {
        Endo t = pi(g, k);
        if (!convex_by_loops(d, t)) continue;
        const Endo c = complement(t);
        for (const auto& p : d.elements()) {
          // some proper subset of D containing p that absorbs every pair landing in it
          bool proper_absorbing = false;
          const std::size_t n = d.size();
          for (unsigned sub = 0; sub < (1u << n) - 1 && !proper_absorbing; ++sub) {
            std::vector<Element> e;
            for (std::size_t i = 0; i < n; ++i)
              if (sub >> i & 1u) e.push_back(d.elements()[i]);
            GroundSet es = GroundSet::finite(g, e);
            if (!es.contains(p)) continue;
            bool absorbing = true;
            for (const auto& x : d.elements())
              for (const auto& y : d.elements())
                if (es.contains(add(*g, t.apply(x), c.apply(y))) && !(es.contains(x) && es.contains(y))) absorbing = false;
            proper_absorbing = absorbing;
          }
          InternalityResult r = internal_points(d, t, p);
          CHECK((r.status == Internality::Internal) == !proper_absorbing);
          if (r.status == Internality::NotInternal) {
            CHECK(r.absorbing.size() < d.size());
          }
        }
      }
    }
  }
}

TEST_CASE("internality on boxes is undecided") {
  auto d2 = make_group(GroupSpec::nadic(2, 1));
  CHECK(internal_points(GroundSet::box(d2, {q(0)}, {q(1)}), scalar_endo(d2, q(1, 2)), Element{{q(0)}}).status ==
        Internality::Inconclusive);
}
