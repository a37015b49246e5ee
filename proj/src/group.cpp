#include "gconv/group.hpp"

#include <algorithm>
#include <numeric>

#include "gconv/error.hpp"

namespace gconv {

const char* to_string(Family family) {
  switch (family) {
    case Family::Cyclic: return "cyclic";
    case Family::Lattice: return "lattice";
    case Family::NAdic: return "nadic";
  }
  return "?";
}

const char* to_string(NormKind kind) {
  switch (kind) {
    case NormKind::Lee: return "lee";
    case NormKind::Abs: return "abs";
    case NormKind::Discrete: return "discrete";
  }
  return "?";
}

namespace {

std::vector<Rational> unit_weights_if_empty(std::vector<Rational> weights, std::size_t n) {
  if (weights.empty()) weights.assign(n, Rational(1));
  return weights;
}

}  // namespace

GroupSpec GroupSpec::cyclic(std::vector<long> moduli, NormKind kind, std::vector<Rational> weights) {
  GroupSpec g;
  g.family = Family::Cyclic;
  g.rank = moduli.size();
  g.metric = {kind, unit_weights_if_empty(std::move(weights), moduli.size())};
  g.moduli = std::move(moduli);
  g.validate();
  return g;
}

GroupSpec GroupSpec::lattice(std::size_t rank, NormKind kind, std::vector<Rational> weights) {
  GroupSpec g;
  g.family = Family::Lattice;
  g.rank = rank;
  g.metric = {kind, unit_weights_if_empty(std::move(weights), rank)};
  g.validate();
  return g;
}

GroupSpec GroupSpec::nadic(long base, std::size_t rank, NormKind kind, std::vector<Rational> weights) {
  GroupSpec g;
  g.family = Family::NAdic;
  g.base = base;
  g.rank = rank;
  g.metric = {kind, unit_weights_if_empty(std::move(weights), rank)};
  g.validate();
  return g;
}

std::optional<Integer> GroupSpec::order() const {
  if (family != Family::Cyclic) return std::nullopt;
  Integer n = 1;
  for (long m : moduli) n *= m;
  return n;
}

std::optional<long> GroupSpec::exponent() const {
  if (family != Family::Cyclic) return std::nullopt;
  long e = 1;
  for (long m : moduli) e = std::lcm(e, m);
  return e;
}

void GroupSpec::validate() const {
  if (family == Family::Cyclic) {
    for (long m : moduli)
      if (m < 2) throw Error(ErrorKind::IllFormed, "cyclic modulus " + std::to_string(m) + " < 2");
    if (metric.kind == NormKind::Abs) throw Error(ErrorKind::IllFormed, "abs metric needs a torsion-free family");
  } else {
    if (rank < 1) throw Error(ErrorKind::IllFormed, "rank must be positive");
    if (metric.kind == NormKind::Lee) throw Error(ErrorKind::IllFormed, "lee metric is for cyclic families only");
    if (family == Family::NAdic && base < 2) throw Error(ErrorKind::IllFormed, "n-adic base must be >= 2");
  }
  if (metric.weights.size() != dim())
    throw Error(ErrorKind::IllFormed, "metric has " + std::to_string(metric.weights.size()) +
                                          " weights for " + std::to_string(dim()) + " coordinates");
  for (const auto& w : metric.weights)
    if (w <= 0) throw Error(ErrorKind::IllFormed, "metric weight " + to_string(w) + " is not positive");
}

std::string GroupSpec::describe() const {
  std::string s;
  switch (family) {
    case Family::Cyclic:
      if (moduli.empty()) return "trivial group";
      for (std::size_t i = 0; i < moduli.size(); ++i) s += (i ? " x Z_" : "Z_") + std::to_string(moduli[i]);
      return s;
    case Family::Lattice: return "Z^" + std::to_string(rank);
    case Family::NAdic: return "Z[1/" + std::to_string(base) + "]^" + std::to_string(rank);
  }
  return s;
}

GroupRef make_group(GroupSpec spec) {
  spec.validate();
  return std::make_shared<const GroupSpec>(std::move(spec));
}

bool operator<(const Element& a, const Element& b) {
  return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end(),
                                      [](const Rational& x, const Rational& y) { return cmp(x, y) < 0; });
}

std::string to_string(const Element& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.coords.size(); ++i) s += (i ? ", " : "") + to_string(x.coords[i]);
  return s + ")";
}

namespace {

Rational reduce_coord(const GroupSpec& g, std::size_t i, const Rational& v) {
  switch (g.family) {
    case Family::Cyclic:
      if (!is_integer(v)) throw Error(ErrorKind::InvalidArgument, "cyclic coordinate " + to_string(v) + " is not an integer");
      return Rational(mod(v.get_num(), Integer(g.moduli[i])));
    case Family::Lattice:
      if (!is_integer(v)) throw Error(ErrorKind::InvalidArgument, "lattice coordinate " + to_string(v) + " is not an integer");
      return v;
    case Family::NAdic:
      if (!denominator_is_base_power(v, Integer(g.base)))
        throw Error(ErrorKind::InvalidArgument,
                    "denominator of " + to_string(v) + " is not a power of " + std::to_string(g.base));
      return v;
  }
  return v;
}

}  // namespace

Element reduce(const GroupSpec& g, std::span<const Rational> raw) {
  if (raw.size() != g.dim())
    throw Error(ErrorKind::InvalidArgument, "element has " + std::to_string(raw.size()) + " coordinates, group needs " +
                                                std::to_string(g.dim()));
  Element x;
  x.coords.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Rational v = raw[i];
    v.canonicalize();
    x.coords.push_back(reduce_coord(g, i, v));
  }
  return x;
}

Element reduce(const GroupSpec& g, std::initializer_list<long> raw) {
  std::vector<Rational> v;
  for (long r : raw) v.emplace_back(r);
  return reduce(g, v);
}

Element zero(const GroupSpec& g) { return Element{std::vector<Rational>(g.dim(), Rational(0))}; }

bool is_zero(const Element& x) {
  return std::all_of(x.coords.begin(), x.coords.end(), [](const Rational& v) { return sgn(v) == 0; });
}

void check_member(const GroupSpec& g, const Element& x) {
  if (x.coords.size() != g.dim())
    throw Error(ErrorKind::GroupMismatch, "element " + to_string(x) + " does not belong to " + g.describe());
  Element r = reduce(g, x.coords);
  if (!(r == x)) throw Error(ErrorKind::GroupMismatch, "element " + to_string(x) + " is not canonical for " + g.describe());
}

namespace {

void same_dim(const GroupSpec& g, const Element& x) {
  if (x.coords.size() != g.dim())
    throw Error(ErrorKind::GroupMismatch, "element " + to_string(x) + " does not belong to " + g.describe());
}

}  // namespace

Element add(const GroupSpec& g, const Element& x, const Element& y) {
  same_dim(g, x);
  same_dim(g, y);
  Element z;
  z.coords.resize(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    z.coords[i] = x.coords[i] + y.coords[i];
    if (g.family == Family::Cyclic && z.coords[i] >= g.moduli[i]) z.coords[i] -= g.moduli[i];
  }
  return z;
}

Element neg(const GroupSpec& g, const Element& x) {
  same_dim(g, x);
  Element z;
  z.coords.resize(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (g.family == Family::Cyclic)
      z.coords[i] = sgn(x.coords[i]) == 0 ? Rational(0) : Rational(g.moduli[i] - x.coords[i]);
    else
      z.coords[i] = -x.coords[i];
  }
  return z;
}

Element sub(const GroupSpec& g, const Element& x, const Element& y) { return add(g, x, neg(g, y)); }

Element scalar_mul(const GroupSpec& g, const Integer& k, const Element& x) {
  same_dim(g, x);
  std::vector<Rational> raw(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) raw[i] = Rational(k) * x.coords[i];
  return reduce(g, raw);
}

Rational dnorm(const GroupSpec& g, const Element& x) {
  same_dim(g, x);
  Rational total = 0;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const Rational& v = x.coords[i];
    Rational part;
    switch (g.metric.kind) {
      case NormKind::Lee: {
        Rational other = Rational(g.moduli[i]) - v;
        part = sgn(v) == 0 ? Rational(0) : (v < other ? v : other);
        break;
      }
      case NormKind::Abs: part = abs(v); break;
      case NormKind::Discrete: part = sgn(v) == 0 ? 0 : 1; break;
    }
    total += g.metric.weights[i] * part;
  }
  return total;
}

namespace {

void require_positive(long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "multiplier must be a positive integer");
}

// Ratio extremes of ||n x|| / ||x|| over nonzero x of a finite carrier.
struct RatioRange {
  bool injective = true;
  Rational min, max;
};

RatioRange enumerate_ratios(const GroupSpec& g, long n) {
  if (g.is_trivial()) throw Error(ErrorKind::Unsupported, "no nonzero elements in the trivial group");
  FiniteCarrier carrier(g);
  RatioRange r;
  bool first = true;
  for (std::size_t i = 1; i < carrier.size(); ++i) {
    Element x = carrier.element(i);
    Element nx = scalar_mul(g, Integer(n), x);
    if (is_zero(nx)) r.injective = false;
    Rational ratio = dnorm(g, nx) / dnorm(g, x);
    if (first || ratio < r.min) r.min = ratio;
    if (first || ratio > r.max) r.max = ratio;
    first = false;
  }
  return r;
}

}  // namespace

Rational mu_d(const GroupSpec& g, long n, MuMode mode) {
  require_positive(n);
  if (g.is_finite()) {
    RatioRange r = enumerate_ratios(g, n);
    return r.injective ? r.min : Rational(0);
  }
  if (mode == MuMode::Enumerated)
    throw Error(ErrorKind::Unsupported, "enumerated mu_d on the infinite group " + g.describe());
  // torsion-free: ||n x||_abs = n ||x||_abs, and supports are unchanged
  return g.metric.kind == NormKind::Abs ? Rational(n) : Rational(1);
}

Rational n_norm(const GroupSpec& g, long n, MuMode mode) {
  require_positive(n);
  if (g.is_finite()) return enumerate_ratios(g, n).max;
  if (mode == MuMode::Enumerated)
    throw Error(ErrorKind::Unsupported, "enumerated operator norm on the infinite group " + g.describe());
  return g.metric.kind == NormKind::Abs ? Rational(n) : Rational(1);
}

Divisibility divisible_by(const GroupSpec& g, long n) {
  require_positive(n);
  Divisibility d;
  switch (g.family) {
    case Family::Cyclic:
      d.divisible = true;
      for (long m : g.moduli) {
        auto inv = mod_inverse(Integer(n), Integer(m));
        if (!inv) {
          d.divisible = false;
          d.inverse_multipliers.clear();
          return d;
        }
        d.inverse_multipliers.emplace_back(*inv);
      }
      return d;
    case Family::Lattice:
      d.divisible = n == 1;
      if (d.divisible) d.inverse_multipliers.assign(g.rank, Rational(1));
      return d;
    case Family::NAdic:
      d.divisible = denominator_is_base_power(make_rational(1, n), Integer(g.base));
      if (d.divisible) d.inverse_multipliers.assign(g.rank, make_rational(1, n));
      return d;
  }
  return d;
}

FiniteCarrier::FiniteCarrier(const GroupSpec& g, std::size_t cap) {
  if (!g.is_finite()) throw Error(ErrorKind::Unsupported, "carrier enumeration needs a finite group, got " + g.describe());
  moduli_ = g.moduli;
  strides_.resize(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    strides_[i] = size_;
    if (size_ > cap / static_cast<std::size_t>(moduli_[i]))
      throw Error(ErrorKind::CapExceeded, "carrier of " + g.describe() + " exceeds " + std::to_string(cap) + " elements");
    size_ *= static_cast<std::size_t>(moduli_[i]);
  }
}

std::vector<long> FiniteCarrier::residues(std::size_t index) const {
  std::vector<long> r(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) r[i] = static_cast<long>((index / strides_[i]) % moduli_[i]);
  return r;
}

Element FiniteCarrier::element(std::size_t index) const {
  Element x;
  x.coords.reserve(moduli_.size());
  for (long r : residues(index)) x.coords.emplace_back(r);
  return x;
}

std::size_t FiniteCarrier::index_of_residues(std::span<const long> residues) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) idx += static_cast<std::size_t>(residues[i]) * strides_[i];
  return idx;
}

std::size_t FiniteCarrier::index(const Element& x) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) idx += x.coords[i].get_num().get_ui() * strides_[i];
  return idx;
}

}  // namespace gconv
