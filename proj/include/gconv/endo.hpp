#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gconv/group.hpp"
#include "gconv/linalg.hpp"

namespace gconv {

/// Endomorphism of a GroupSpec given by a square scalar matrix acting on
/// coordinate vectors: column j is the image of the j-th generator.
class Endo {
 public:
  Endo() = default;

  const GroupSpec& group() const { return *group_; }
  const GroupRef& group_ref() const { return group_; }
  const Matrix& matrix() const { return matrix_; }

  Element apply(const Element& x) const;

  bool is_zero() const { return matrix_.is_zero(); }
  bool is_identity() const { return matrix_ == Matrix::identity(matrix_.rows()); }
  /// When the matrix is s*I, returns s.
  std::optional<Rational> as_scalar() const;

  friend bool operator==(const Endo& a, const Endo& b) {
    return a.matrix_ == b.matrix_ && (a.group_ == b.group_ || *a.group_ == *b.group_);
  }
  friend bool operator<(const Endo& a, const Endo& b);

 private:
  friend Endo validate_endo(GroupRef g, Matrix m);
  Endo(GroupRef g, Matrix m) : group_(std::move(g)), matrix_(std::move(m)) {}

  GroupRef group_;
  Matrix matrix_;
};

std::string to_string(const Endo& t);

/// Accepts m iff it defines a homomorphism of g; reduces cyclic entries.
/// Throws IllFormed naming the first violated congruence.
Endo validate_endo(GroupRef g, Matrix m);
Endo identity_endo(GroupRef g);
Endo zero_endo(GroupRef g);
/// k * I (the map x -> k*x, extended to rational k on N-adic groups).
Endo scalar_endo(GroupRef g, const Rational& k);

Endo compose(const Endo& t, const Endo& s);  // t o s
Endo operator+(const Endo& t, const Endo& s);
Endo operator-(const Endo& t, const Endo& s);
Endo complement(const Endo& t);              // I - t
Endo power(const Endo& t, long k);
Endo scale(const Integer& k, const Endo& t);  // k * t, k integral

enum class ArithKind { Compose, Add, Complement, Power };
Endo endo_arith(ArithKind kind, const Endo& t, const Endo* s = nullptr, long k = 0);

bool commute(const Endo& t, const Endo& s);

/// Smallest c with ||T x|| <= c ||x||. Exhaustive on finite carriers,
/// weighted column sums for abs metrics on Z^r / Z[1/N]^r.
Rational operator_norm(const Endo& t);
bool operator_norm_supported(const GroupSpec& g);

struct SpectralBound {
  Rational upper;                 // certified upper bound on the spectral radius
  std::optional<long> nilpotent;  // index q with T^q = 0, T^{q-1} != 0
  long m_max = 0;                 // powers examined when no nilpotency was found
  long best_power = 0;            // the m realising the upper bound
};

SpectralBound spectral_radius(const Endo& t, long m_max);

enum class InverseRoute { NilpotentSeries, ExactInverse };
const char* to_string(InverseRoute route);

struct NeumannInverse {
  Endo inverse;  // (I - T)^{-1}
  InverseRoute route;
  std::optional<long> nilpotent;
  /// Only terminating series and exact inverses are produced; recorded verbatim.
  std::string certificate;
};

NeumannInverse neumann_inverse(const Endo& t, long m_max = 64);

/// Exact two-sided inverse over the group's scalar ring, if any.
std::optional<Endo> exact_inverse(const Endo& t);

/// Homomorphism defined on the subgroup generated by `generators`.
struct PartialHom {
  GroupRef group;
  std::vector<Element> generators;
  std::vector<Element> images;

  /// Image of u, which must lie in the generated subgroup.
  Element apply(const Element& u) const;
  static PartialHom from_endo(const Endo& e, std::vector<Element> generators);
};

/// S* with S(S*(u)) = u on each generator. Throws NoSolution(u) if u is not in S(X).
PartialHom right_inverse_on(const Endo& s, const std::vector<Element>& generators);

/// The endomorphism S* o T, where S* is defined on T(X).
Endo compose_partial(const PartialHom& s_star, const Endo& t);

/// T_1 = T, T_{n+1} = T_n^2 + (I - T_n)^2.
Endo midpoint_recursion(const Endo& t, long n);
/// (1/2) (I + (2T - I)^{2^{n-1}}), defined on uniquely 2-divisible groups.
Endo midpoint_closed_form(const Endo& t, long n);

/// Generator basis e_1..e_r of the coordinate group.
std::vector<Element> basis(const GroupSpec& g);

}  // namespace gconv
