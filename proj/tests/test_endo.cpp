#include "doctest.h"

#include <random>

#include "gconv/endo.hpp"
#include "gconv/error.hpp"

using namespace gconv;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

Endo mat(GroupRef g, std::initializer_list<std::initializer_list<long>> rows) { return validate_endo(g, Matrix(rows)); }

Endo pi(GroupRef g, long k) { return scalar_endo(g, q(k)); }

// Brute-force norm over a coordinate window, independent of the library's closed form.
Rational window_norm(const Endo& t, long r) {
  const GroupSpec& g = t.group();
  Rational best = 0;
  std::vector<long> x(g.dim(), -r);
  while (true) {
    std::vector<Rational> raw(x.begin(), x.end());
    Element e = reduce(g, raw);
    if (!is_zero(e)) {
      Rational ratio = dnorm(g, t.apply(e)) / dnorm(g, e);
      if (ratio > best) best = ratio;
    }
    std::size_t i = 0;
    while (i < x.size() && x[i] == r) x[i++] = -r;
    if (i == x.size()) break;
    ++x[i];
  }
  return best;
}

}  // namespace

TEST_CASE("validate_endo congruences") {
  auto g = make_group(GroupSpec::cyclic({4, 2}));
  CHECK_THROWS_AS(mat(g, {{1, 1}, {0, 1}}), Error);
  try {
    mat(g, {{1, 1}, {0, 1}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IllFormed);
    CHECK(std::string(e.what()).find("(1, 2)") != std::string::npos);
  }
  CHECK_NOTHROW(mat(g, {{1, 2}, {1, 1}}));
  CHECK(identity_endo(g).is_identity());
  auto z9 = make_group(GroupSpec::cyclic({9}));
  CHECK(mat(z9, {{5}}).matrix()(0, 0) == 5);
  CHECK(mat(z9, {{-4}}).matrix()(0, 0) == 5);
  auto z1 = make_group(GroupSpec::lattice(1));
  CHECK_THROWS_AS(validate_endo(z1, Matrix::scalar(1, q(1, 2))), Error);
  auto d2 = make_group(GroupSpec::nadic(2, 1));
  CHECK_NOTHROW(validate_endo(d2, Matrix::scalar(1, q(3, 4))));
  CHECK_THROWS_AS(validate_endo(d2, Matrix::scalar(1, q(1, 3))), Error);
  CHECK_THROWS_AS(validate_endo(d2, Matrix(2, 2)), Error);
}

TEST_CASE("every validated endo is additive") {
  auto g = make_group(GroupSpec::cyclic({4, 6}));
  FiniteCarrier c(*g);
  for (long a = 0; a < 4; ++a)
    for (long b = 0; b < 4; ++b)
      for (long cc = 0; cc < 6; ++cc)
        for (long d = 0; d < 6; ++d) {
          Endo t;
          try {
            t = mat(g, {{a, b}, {cc, d}});
          } catch (const Error&) {
            continue;
          }
          for (std::size_t i = 0; i < c.size(); i += 5)
            for (std::size_t j = 0; j < c.size(); j += 3) {
              Element x = c.element(i), y = c.element(j);
              CHECK(t.apply(add(*g, x, y)) == add(*g, t.apply(x), t.apply(y)));
            }
        }
}

TEST_CASE("endo arithmetic examples") {
  auto z9 = make_group(GroupSpec::cyclic({9}));
  CHECK(complement(pi(z9, 5)) == pi(z9, 5));
  auto z2 = make_group(GroupSpec::lattice(2));
  CHECK(compose(mat(z2, {{1, 1}, {0, 1}}), mat(z2, {{1, -1}, {0, 1}})).is_identity());
  CHECK(power(mat(z2, {{3, 1}, {2, 1}}), 0).is_identity());
  CHECK(power(mat(z2, {{1, 1}, {0, 1}}), 5) == mat(z2, {{1, 5}, {0, 1}}));
  Endo t = mat(z2, {{2, -1}, {1, 0}});
  CHECK(complement(complement(t)) == t);
  CHECK(endo_arith(ArithKind::Power, t, nullptr, 3) == compose(t, compose(t, t)));
  CHECK_THROWS_AS(compose(t, pi(z9, 1)), Error);
  CHECK_THROWS_AS(power(t, -1), Error);
}

TEST_CASE("ring laws on random triples") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> e(-3, 3);
  auto z2 = make_group(GroupSpec::lattice(2));
  auto c = make_group(GroupSpec::cyclic({4, 6}));
  for (int s = 0; s < 200; ++s) {
    auto draw = [&](GroupRef g) {
      while (true) {
        try {
          return mat(g, {{e(rng), e(rng)}, {e(rng), e(rng)}});
        } catch (const Error&) {
        }
      }
    };
    GroupRef g = s % 2 ? z2 : c;
    Endo a = draw(g), b = draw(g), d = draw(g);
    CHECK(compose(a, compose(b, d)) == compose(compose(a, b), d));
    CHECK(compose(a, b + d) == compose(a, b) + compose(a, d));
    CHECK(compose(b + d, a) == compose(b, a) + compose(d, a));
    CHECK((a + b) + d == a + (b + d));
  }
}

TEST_CASE("operator norm") {
  auto z2 = make_group(GroupSpec::lattice(2));
  CHECK(operator_norm(mat(z2, {{1, 1}, {0, 1}})) == 2);
  CHECK(operator_norm(pi(make_group(GroupSpec::cyclic({5})), 2)) == 2);
  CHECK(operator_norm(identity_endo(z2)) == 1);
  auto z5 = make_group(GroupSpec::cyclic({5}));
  CHECK(operator_norm(identity_endo(z5)) == 1);
  CHECK_THROWS_AS(operator_norm(identity_endo(make_group(GroupSpec::lattice(1, NormKind::Discrete)))), Error);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> e(-3, 3);
  auto w = make_group(GroupSpec::lattice(2, NormKind::Abs, {q(1), q(3, 2)}));
  for (int s = 0; s < 40; ++s) {
    Endo t = mat(w, {{e(rng), e(rng)}, {e(rng), e(rng)}});
    CHECK(operator_norm(t) == window_norm(t, 3));
    Endo u = mat(w, {{e(rng), e(rng)}, {e(rng), e(rng)}});
    CHECK(operator_norm(compose(t, u)) <= operator_norm(t) * operator_norm(u));
  }
}

TEST_CASE("spectral radius certificates") {
  auto z2 = make_group(GroupSpec::lattice(2));
  SpectralBound a = spectral_radius(mat(z2, {{0, 1}, {0, 0}}), 8);
  CHECK(a.upper == 0);
  CHECK(a.nilpotent == 2);
  SpectralBound b = spectral_radius(pi(make_group(GroupSpec::cyclic({27})), 9), 8);
  CHECK(b.upper == 0);
  CHECK(b.nilpotent == 2);
  SpectralBound c = spectral_radius(mat(z2, {{1, 1}, {0, 1}}), 8);
  CHECK_FALSE(c.nilpotent);
  CHECK(c.upper > 1);
  CHECK(pow(c.upper, 8) >= 9);
  CHECK(c.upper < q(132, 100));
  CHECK(c.best_power == 8);
  Endo j = mat(z2, {{1, 1}, {0, 1}});
  Endo p = identity_endo(z2);
  for (long m = 1; m <= 8; ++m) {
    p = compose(p, j);
    CHECK(operator_norm(p) == m + 1);
  }
}

TEST_CASE("neumann inverse") {
  auto z2 = make_group(GroupSpec::lattice(2));
  NeumannInverse a = neumann_inverse(mat(z2, {{0, 1}, {0, 0}}));
  CHECK(a.inverse == mat(z2, {{1, 1}, {0, 1}}));
  CHECK(a.route == InverseRoute::NilpotentSeries);
  auto z27 = make_group(GroupSpec::cyclic({27}));
  CHECK(neumann_inverse(pi(z27, 9)).inverse == pi(z27, 10));
  auto d2 = make_group(GroupSpec::nadic(2, 1));
  NeumannInverse c = neumann_inverse(scalar_endo(d2, q(1, 2)));
  CHECK(c.inverse == scalar_endo(d2, q(2)));
  CHECK(c.route == InverseRoute::ExactInverse);
  CHECK_THROWS_AS(neumann_inverse(identity_endo(z2)), Error);
  CHECK_THROWS_AS(neumann_inverse(scalar_endo(z2, q(-1))), Error);
  auto disc = make_group(GroupSpec::lattice(1, NormKind::Discrete));
  try {
    neumann_inverse(scalar_endo(disc, q(2)));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCertified);
  }
}

TEST_CASE("right inverses on generators") {
  auto z9 = make_group(GroupSpec::cyclic({9}));
  PartialHom s = right_inverse_on(pi(z9, 2), {reduce(*z9, {1})});
  CHECK(compose_partial(s, identity_endo(z9)) == pi(z9, 5));
  auto d2 = make_group(GroupSpec::nadic(2, 1));
  std::vector<Rational> three{q(3)};
  PartialHom h = right_inverse_on(scalar_endo(d2, q(3, 2)), {reduce(*d2, three)});
  CHECK(h.images[0].coords[0] == 2);
  auto z2 = make_group(GroupSpec::lattice(2));
  Endo b = mat(z2, {{2, 1}, {1, 1}});
  PartialHom full = right_inverse_on(b, basis(*z2));
  CHECK(compose_partial(full, identity_endo(z2)) == *exact_inverse(b));
  auto z1 = make_group(GroupSpec::lattice(1));
  try {
    right_inverse_on(pi(z1, 2), {reduce(*z1, {1})});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoSolution);
  }
  auto z4 = make_group(GroupSpec::cyclic({4}));
  PartialHom on_image = right_inverse_on(pi(z4, 2), {reduce(*z4, {2})});
  CHECK(pi(z4, 2).apply(on_image.apply(reduce(*z4, {2}))) == reduce(*z4, {2}));
  CHECK(compose_partial(on_image, pi(z4, 2)) == pi(z4, 1));
}

TEST_CASE("midpoint recursion") {
  auto z27 = make_group(GroupSpec::cyclic({27}));
  CHECK(midpoint_recursion(pi(z27, 5), 2) == pi(z27, 14));
  CHECK(midpoint_recursion(pi(z27, 5), 3) == pi(z27, 14));
  auto d2 = make_group(GroupSpec::nadic(2, 1));
  for (long n = 1; n <= 5; ++n) CHECK(midpoint_recursion(scalar_endo(d2, q(1, 2)), n) == scalar_endo(d2, q(1, 2)));
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> e(0, 26);
  for (int s = 0; s < 50; ++s) {
    Endo t = pi(z27, e(rng));
    for (long n = 1; n <= 5; ++n) CHECK(midpoint_recursion(t, n) == midpoint_closed_form(t, n));
  }
  auto d22 = make_group(GroupSpec::nadic(2, 2));
  Endo t = validate_endo(d22, Matrix{{1, 1}, {0, 1}});
  for (long n = 1; n <= 4; ++n) CHECK(midpoint_recursion(t, n) == midpoint_closed_form(t, n));
}
