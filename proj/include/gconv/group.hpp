#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gconv/rational.hpp"

namespace gconv {

enum class Family { Cyclic, Lattice, NAdic };
enum class NormKind { Lee, Abs, Discrete };

const char* to_string(Family family);
const char* to_string(NormKind kind);

/// Weighted-sum metric: ||x|| = sum_i w_i * |x_i|_kind.
struct MetricSpec {
  NormKind kind = NormKind::Abs;
  std::vector<Rational> weights;

  friend bool operator==(const MetricSpec&, const MetricSpec&) = default;
};

/// A concrete metric Abelian group: Z_{m_1} x ... x Z_{m_r}, Z^r, or Z[1/N]^r.
struct GroupSpec {
  Family family = Family::Lattice;
  std::vector<long> moduli;  // Cyclic only; empty means the trivial group
  std::size_t rank = 1;      // Lattice / NAdic
  long base = 2;             // NAdic only
  MetricSpec metric;

  static GroupSpec cyclic(std::vector<long> moduli, NormKind kind = NormKind::Lee,
                          std::vector<Rational> weights = {});
  static GroupSpec lattice(std::size_t rank, NormKind kind = NormKind::Abs,
                           std::vector<Rational> weights = {});
  static GroupSpec nadic(long base, std::size_t rank, NormKind kind = NormKind::Abs,
                         std::vector<Rational> weights = {});

  std::size_t dim() const { return family == Family::Cyclic ? moduli.size() : rank; }
  bool is_finite() const { return family == Family::Cyclic; }
  bool is_trivial() const { return family == Family::Cyclic && moduli.empty(); }
  /// Group order for finite families.
  std::optional<Integer> order() const;
  /// Least common multiple of the moduli (finite families).
  std::optional<long> exponent() const;

  /// Throws IllFormed when an invariant fails.
  void validate() const;
  std::string describe() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

using GroupRef = std::shared_ptr<const GroupSpec>;
GroupRef make_group(GroupSpec spec);

/// Canonical group element: reduced residues, integers, or N-adic rationals.
struct Element {
  std::vector<Rational> coords;

  friend bool operator==(const Element& a, const Element& b) { return a.coords == b.coords; }
  friend bool operator<(const Element& a, const Element& b);
};

std::string to_string(const Element& x);

Element reduce(const GroupSpec& g, std::span<const Rational> raw);
Element reduce(const GroupSpec& g, std::initializer_list<long> raw);
Element zero(const GroupSpec& g);
bool is_zero(const Element& x);
/// Throws GroupMismatch unless x is a canonical element of g.
void check_member(const GroupSpec& g, const Element& x);

Element add(const GroupSpec& g, const Element& x, const Element& y);
Element sub(const GroupSpec& g, const Element& x, const Element& y);
Element neg(const GroupSpec& g, const Element& x);
/// k-fold sum for k >= 1, zero for k = 0, negation composed for k < 0.
Element scalar_mul(const GroupSpec& g, const Integer& k, const Element& x);

Rational dnorm(const GroupSpec& g, const Element& x);

enum class MuMode { Exact, Enumerated };

/// Measure of injectivity of x -> n*x; 0 when that map is not injective.
Rational mu_d(const GroupSpec& g, long n, MuMode mode = MuMode::Exact);
/// Operator norm of x -> n*x.
Rational n_norm(const GroupSpec& g, long n, MuMode mode = MuMode::Exact);

struct Divisibility {
  bool divisible = false;
  /// Per-coordinate multiplier realising (1/n)*x: n^{-1} mod m_i, or 1/n.
  std::vector<Rational> inverse_multipliers;
};

Divisibility divisible_by(const GroupSpec& g, long n);

/// Enumeration of a finite carrier in mixed-radix order with O(1) indexing.
class FiniteCarrier {
 public:
  static constexpr std::size_t kDefaultCap = std::size_t{1} << 20;

  explicit FiniteCarrier(const GroupSpec& g, std::size_t cap = kDefaultCap);

  std::size_t size() const { return size_; }
  Element element(std::size_t index) const;
  std::size_t index(const Element& x) const;
  /// Residues of element `index`, coordinate by coordinate.
  std::vector<long> residues(std::size_t index) const;
  std::size_t index_of_residues(std::span<const long> residues) const;
  const std::vector<long>& moduli() const { return moduli_; }

 private:
  std::vector<long> moduli_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

}  // namespace gconv
