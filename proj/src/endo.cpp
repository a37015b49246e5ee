#include "gconv/endo.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "gconv/error.hpp"
#include "gconv/finite_action.hpp"

namespace gconv {

namespace {

void require_same_group(const Endo& t, const Endo& s) {
  if (!(t.group_ref() == s.group_ref() || t.group() == s.group()))
    throw Error(ErrorKind::GroupMismatch, "endomorphisms act on different groups");
}

long ring_base(const GroupSpec& g) { return g.family == Family::NAdic ? g.base : 1; }

}  // namespace

Endo validate_endo(GroupRef g, Matrix m) {
  if (!g) throw Error(ErrorKind::InvalidArgument, "missing group");
  const std::size_t n = g->dim();
  if (m.rows() != n || m.cols() != n)
    throw Error(ErrorKind::IllFormed, "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                          ", group " + g->describe() + " needs " + std::to_string(n) + "x" +
                                          std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational& a = m(i, j);
      a.canonicalize();
      const std::string where = "(" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
      switch (g->family) {
        case Family::Cyclic: {
          if (!is_integer(a)) throw Error(ErrorKind::IllFormed, "entry " + where + " is not an integer");
          const Integer mi = g->moduli[i], mj = g->moduli[j];
          if (mod(Integer(a.get_num() * mj), mi) != 0)
            throw Error(ErrorKind::IllFormed, "entry " + where + ": " + to_string(a) + "*" + mj.get_str() +
                                                  " is not 0 mod " + mi.get_str());
          a = Rational(mod(a.get_num(), mi));
          break;
        }
        case Family::Lattice:
          if (!is_integer(a)) throw Error(ErrorKind::IllFormed, "entry " + where + " is not an integer");
          break;
        case Family::NAdic:
          if (!denominator_is_base_power(a, Integer(g->base)))
            throw Error(ErrorKind::IllFormed, "entry " + where + " = " + to_string(a) + " is not in Z[1/" +
                                                  std::to_string(g->base) + "]");
          break;
      }
    }
  return Endo(std::move(g), std::move(m));
}

Endo identity_endo(GroupRef g) {
  const std::size_t n = g->dim();
  return validate_endo(std::move(g), Matrix::identity(n));
}

Endo zero_endo(GroupRef g) {
  const std::size_t n = g->dim();
  return validate_endo(std::move(g), Matrix(n, n));
}

Endo scalar_endo(GroupRef g, const Rational& k) {
  const std::size_t n = g->dim();
  return validate_endo(std::move(g), Matrix::scalar(n, k));
}

Element Endo::apply(const Element& x) const {
  if (x.coords.size() != matrix_.cols())
    throw Error(ErrorKind::GroupMismatch, "element " + to_string(x) + " does not belong to " + group_->describe());
  return reduce(*group_, matrix_ * std::span<const Rational>(x.coords));
}

std::optional<Rational> Endo::as_scalar() const {
  const std::size_t n = matrix_.rows();
  if (n == 0) return Rational(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && sgn(matrix_(i, j)) != 0) return std::nullopt;
      if (i == j && matrix_(i, i) != matrix_(0, 0)) return std::nullopt;
    }
  return matrix_(0, 0);
}

bool operator<(const Endo& a, const Endo& b) {
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  if (x.rows() != y.rows()) return x.rows() < y.rows();
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      int c = cmp(x(i, j), y(i, j));
      if (c != 0) return c < 0;
    }
  return false;
}

std::string to_string(const Endo& t) {
  if (auto s = t.as_scalar()) return to_string(*s) + "*I";
  return to_string(t.matrix());
}

Endo compose(const Endo& t, const Endo& s) {
  require_same_group(t, s);
  return validate_endo(t.group_ref(), t.matrix() * s.matrix());
}

Endo operator+(const Endo& t, const Endo& s) {
  require_same_group(t, s);
  return validate_endo(t.group_ref(), t.matrix() + s.matrix());
}

Endo operator-(const Endo& t, const Endo& s) {
  require_same_group(t, s);
  return validate_endo(t.group_ref(), t.matrix() - s.matrix());
}

Endo complement(const Endo& t) { return identity_endo(t.group_ref()) - t; }

Endo power(const Endo& t, long k) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative endomorphism power");
  Endo result = identity_endo(t.group_ref());
  Endo base = t;
  while (k > 0) {
    if (k & 1) result = compose(result, base);
    k >>= 1;
    if (k) base = compose(base, base);
  }
  return result;
}

Endo scale(const Integer& k, const Endo& t) { return validate_endo(t.group_ref(), Rational(k) * t.matrix()); }

Endo endo_arith(ArithKind kind, const Endo& t, const Endo* s, long k) {
  switch (kind) {
    case ArithKind::Compose:
      if (!s) throw Error(ErrorKind::InvalidArgument, "compose needs two endomorphisms");
      return compose(t, *s);
    case ArithKind::Add:
      if (!s) throw Error(ErrorKind::InvalidArgument, "add needs two endomorphisms");
      return t + *s;
    case ArithKind::Complement: return complement(t);
    case ArithKind::Power: return power(t, k);
  }
  return t;
}

bool commute(const Endo& t, const Endo& s) { return compose(t, s) == compose(s, t); }

bool operator_norm_supported(const GroupSpec& g) { return g.is_finite() || g.metric.kind == NormKind::Abs; }

Rational operator_norm(const Endo& t) {
  const GroupSpec& g = t.group();
  if (g.is_finite()) {
    FiniteAction action(t);
    const auto& norms = action.carrier_norms();
    Rational best = 0;
    for (std::size_t i = 1; i < action.size(); ++i) {
      Rational ratio = norms[action.image(i)] / norms[i];
      if (ratio > best) best = ratio;
    }
    return best;
  }
  if (g.metric.kind != NormKind::Abs)
    throw Error(ErrorKind::Unsupported, std::string("operator norm for the ") + to_string(g.metric.kind) +
                                            " metric on " + g.describe());
  const Matrix& a = t.matrix();
  const auto& w = g.metric.weights;
  Rational best = 0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational column = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) column += w[i] * abs(a(i, j));
    column /= w[j];
    if (column > best) best = column;
  }
  return best;
}

SpectralBound spectral_radius(const Endo& t, long m_max) {
  if (m_max < 1) throw Error(ErrorKind::InvalidArgument, "m_max must be positive");
  SpectralBound out;
  out.m_max = m_max;
  std::vector<Endo> powers;
  Endo p = t;
  for (long m = 1; m <= m_max; ++m) {
    if (p.is_zero()) {
      out.upper = 0;
      out.nilpotent = m;
      out.best_power = m;
      return out;
    }
    powers.push_back(p);
    if (m < m_max) p = compose(p, t);
  }
  if (!operator_norm_supported(t.group()))
    throw Error(ErrorKind::Unsupported, "spectral bound needs an operator norm on " + t.group().describe());
  bool first = true;
  for (long m = 1; m <= m_max; ++m) {
    Rational bound = root_upper_bound(operator_norm(powers[static_cast<std::size_t>(m - 1)]), static_cast<unsigned>(m));
    if (first || bound < out.upper) {
      out.upper = bound;
      out.best_power = m;
      first = false;
    }
  }
  return out;
}

const char* to_string(InverseRoute route) {
  return route == InverseRoute::NilpotentSeries ? "nilpotent-series" : "exact-inverse";
}

std::optional<Endo> exact_inverse(const Endo& t) {
  const GroupSpec& g = t.group();
  if (g.is_finite()) {
    FiniteAction action(t);
    auto inv = action.inverse_table();
    if (!inv) return std::nullopt;
    const FiniteCarrier& carrier = action.carrier();
    const std::size_t n = g.dim();
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      Element e = zero(g);
      e.coords[j] = 1;
      Element pre = carrier.element((*inv)[carrier.index(e)]);
      for (std::size_t i = 0; i < n; ++i) m(i, j) = pre.coords[i];
    }
    return validate_endo(t.group_ref(), std::move(m));
  }
  auto inv = inverse(t.matrix());
  if (!inv) return std::nullopt;
  const Integer base = ring_base(g);
  for (std::size_t i = 0; i < inv->rows(); ++i)
    for (std::size_t j = 0; j < inv->cols(); ++j) {
      const Rational& v = (*inv)(i, j);
      if (g.family == Family::Lattice ? !is_integer(v) : !denominator_is_base_power(v, base)) return std::nullopt;
    }
  return validate_endo(t.group_ref(), std::move(*inv));
}

NeumannInverse neumann_inverse(const Endo& t, long m_max) {
  const Endo id = identity_endo(t.group_ref());
  const Endo i_minus_t = complement(t);
  // Nilpotency alone needs no norm; the terminating series is exact.
  Endo p = t;
  for (long m = 1; m <= m_max; ++m) {
    if (p.is_zero()) {
      Endo sum = id;
      Endo term = id;
      for (long k = 1; k < m; ++k) {
        term = compose(term, t);
        sum = sum + term;
      }
      if (!(compose(i_minus_t, sum) == id && compose(sum, i_minus_t) == id))
        throw Error(ErrorKind::IllFormed, "terminating Neumann series failed to invert I - T");
      return {sum, InverseRoute::NilpotentSeries, m,
              "nilpotent of index " + std::to_string(m) + "; series sum_{k<" + std::to_string(m) + "} T^k terminates"};
    }
    p = compose(p, t);
  }
  auto inv = exact_inverse(i_minus_t);
  if (!inv)
    throw Error(ErrorKind::NotInvertible, "I - T has no inverse over the scalar ring of " + t.group().describe());
  if (!operator_norm_supported(t.group()))
    throw Error(ErrorKind::NotCertified,
                "inverse exists but its operator norm cannot be certified on " + t.group().describe());
  return {*inv, InverseRoute::ExactInverse, std::nullopt,
          "no nilpotency up to m=" + std::to_string(m_max) +
              "; exact inverse of I - T over the scalar ring (non-terminating series not evaluated)"};
}

std::vector<Element> basis(const GroupSpec& g) {
  std::vector<Element> out;
  for (std::size_t j = 0; j < g.dim(); ++j) {
    Element e = zero(g);
    e.coords[j] = 1;
    if (g.family == Family::Cyclic) e = reduce(g, e.coords);
    out.push_back(std::move(e));
  }
  return out;
}

PartialHom PartialHom::from_endo(const Endo& e, std::vector<Element> generators) {
  PartialHom h{e.group_ref(), std::move(generators), {}};
  for (const auto& u : h.generators) h.images.push_back(e.apply(u));
  return h;
}

Element PartialHom::apply(const Element& u) const {
  const GroupSpec& g = *group;
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == u) return images[i];
  if (g.is_finite()) {
    // breadth-first walk of the generated subgroup, checking well-definedness
    std::map<Element, Element> table;
    std::queue<Element> frontier;
    table.emplace(zero(g), zero(g));
    frontier.push(zero(g));
    while (!frontier.empty()) {
      Element x = frontier.front();
      frontier.pop();
      const Element fx = table.at(x);
      for (std::size_t i = 0; i < generators.size(); ++i) {
        Element y = add(g, x, generators[i]);
        Element fy = add(g, fx, images[i]);
        auto [it, inserted] = table.emplace(y, fy);
        if (inserted)
          frontier.push(y);
        else if (!(it->second == fy))
          throw Error(ErrorKind::IllFormed, "generator images do not define a homomorphism");
      }
    }
    auto it = table.find(u);
    if (it == table.end()) throw Error(ErrorKind::NoSolution, to_string(u) + " is outside the generated subgroup");
    return it->second;
  }
  Matrix gens(g.dim(), generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j)
    for (std::size_t i = 0; i < g.dim(); ++i) gens(i, j) = generators[j].coords[i];
  auto c = solve_in_ring(gens, u.coords, ring_base(g));
  if (!c) throw Error(ErrorKind::NoSolution, to_string(u) + " is outside the generated subgroup");
  std::vector<Rational> image(g.dim());
  for (std::size_t j = 0; j < generators.size(); ++j)
    for (std::size_t i = 0; i < g.dim(); ++i) image[i] += (*c)[j] * images[j].coords[i];
  return reduce(g, image);
}

PartialHom right_inverse_on(const Endo& s, const std::vector<Element>& generators) {
  const GroupSpec& g = s.group();
  PartialHom h{s.group_ref(), generators, {}};
  if (g.is_finite()) {
    FiniteAction action(s);
    const FiniteCarrier& carrier = action.carrier();
    for (const auto& u : generators) {
      check_member(g, u);
      auto pre = action.first_preimage(carrier.index(u));
      if (!pre) throw Error(ErrorKind::NoSolution, to_string(u) + " is not in the image of S");
      h.images.push_back(carrier.element(*pre));
    }
    return h;
  }
  for (const auto& u : generators) {
    check_member(g, u);
    auto x = solve_in_ring(s.matrix(), u.coords, ring_base(g));
    if (!x) throw Error(ErrorKind::NoSolution, to_string(u) + " is not in the image of S");
    h.images.push_back(reduce(g, *x));
  }
  return h;
}

Endo compose_partial(const PartialHom& s_star, const Endo& t) {
  const GroupSpec& g = t.group();
  const std::size_t n = g.dim();
  Matrix m(n, n);
  std::vector<Element> e = basis(g);
  for (std::size_t j = 0; j < n; ++j) {
    Element col = s_star.apply(t.apply(e[j]));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col.coords[i];
  }
  return validate_endo(t.group_ref(), std::move(m));
}

Endo midpoint_recursion(const Endo& t, long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "recursion index must be positive");
  Endo tn = t;
  for (long i = 1; i < n; ++i) {
    Endo c = complement(tn);
    tn = compose(tn, tn) + compose(c, c);
  }
  return tn;
}

Endo midpoint_closed_form(const Endo& t, long n) {
  if (n < 1 || n > 20) throw Error(ErrorKind::InvalidArgument, "closed form index out of range");
  const GroupSpec& g = t.group();
  Divisibility half = divisible_by(g, 2);
  if (!half.divisible) throw Error(ErrorKind::Unsupported, g.describe() + " is not uniquely 2-divisible");
  Matrix h(g.dim(), g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) h(i, i) = half.inverse_multipliers[i];
  Endo halve = validate_endo(t.group_ref(), std::move(h));
  Endo id = identity_endo(t.group_ref());
  Endo u = scale(Integer(2), t) - id;
  Endo p = power(u, 1L << (n - 1));
  return compose(halve, id + p);
}

}  // namespace gconv
