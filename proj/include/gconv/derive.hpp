#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gconv/functions.hpp"

namespace gconv {

struct DerivedPair {
  ConvexPair pair;
  std::string rule;
  std::vector<AuditEntry> audit;
  std::vector<std::string> inputs;
};

/// Optional function against which input pairs are re-checked for the audit.
struct Target {
  const FnRepr* f = nullptr;
  InequalityKind kind = InequalityKind::TtConvex;
  std::size_t probes = 1000;
  std::uint64_t seed = 0;
};

/// Audit entry for "pair holds on f": verified only for exhaustive passes.
AuditEntry input_audit(const std::string& name, const ConvexPair& pair, const Target& target);

/// Entries for the metric hypotheses on D: some n0 with mu_d(n0) > 1, and D
/// closed, bounded and n0-convex. Finite groups always yield "assumed".
std::vector<AuditEntry> domain_audit(const GroupSpec& g, const GroundSet* d);

/// (T o T1 + (I - T) o T2, t t1 + (1 - t) t2).
DerivedPair compose_pair(const ConvexPair& outer, const ConvexPair& p1, const ConvexPair& p2,
                         const Target& target = {});

/// (S^{-1} o (n T), n / (n + k)) with S = n T + k (I - T).
DerivedPair wright_ratio_derive(const Endo& t, long n, long k, const GroundSet* domain = nullptr,
                                const Target& target = {});

Report u_grid_verify(const FnRepr& f, const Endo& t, long n, long k, const Element& x, const Element& y);

struct WrightDecomposition {
  Matrix b;                  // B(e_i, e_j)
  std::vector<Rational> a;   // A(e_i)
  Rational c;
  Report report;             // Fail carries a residual witness
};

/// a(x) = B(x, x) + A(x) + c, probed for biadditivity and additivity. When ts is
/// given, B(T u, (I - T) u) = 0 is checked for each member.
WrightDecomposition twa_decompose(const FnRepr& a, const std::vector<Endo>& ts = {}, std::size_t probes = 1000,
                                  std::uint64_t seed = 0);

/// Evaluates x^T B x + A . x + c on coordinate representatives.
Rational twa_evaluate(const WrightDecomposition& w, const Element& x);

struct AffineDecomposition {
  std::vector<Rational> a;  // A as a linear functional on coordinates
  Rational c;
  Report report;
};

/// a = A + c with A o T = t A for every pair. Throws Precondition unless every
/// pair passes the tt_affine check.
AffineDecomposition affine_decompose(const FnRepr& a, const std::vector<ConvexPair>& pairs,
                                     std::size_t probes = 1000, std::uint64_t seed = 0);

/// (S* o T, t/s), (S - T, s - t), and (S + T - I, s + t - 1) when s + t >= 1 and
/// a right inverse of S on (I - T)(X) is supplied. Throws NoSolution when S* is
/// not a right inverse of S on T(X).
std::vector<DerivedPair> p2a_derive(const ConvexPair& tp, const ConvexPair& sp, const PartialHom& s_star,
                                    const PartialHom* s_star_complement = nullptr, const Target& target = {});

struct LastResult {
  DerivedPair derived;
  std::vector<Rational> s;  // s_0..s_n
  std::vector<Rational> r;  // r_0..r_{n+1}
  std::vector<Rational> c;  // c_0..c_{n+1}
  Report coefficients;      // positivity, recurrence, normalization
};

/// (S^{-1} o (S_k + ... + S_n), s^{-1} (s_k + ... + s_n)) for 1 <= k <= n.
LastResult last_derive(const std::vector<ConvexPair>& pairs, long k, const GroundSet* domain = nullptr,
                       const Target& target = {});

/// The Thm Last coefficient table alone (scalars only).
LastResult last_coefficients(const std::vector<Rational>& t, long k);

/// (k/n I, k/n) for k = 1..n.
std::vector<DerivedPair> kuhn_derive(const ConvexPair& pair, long n, const GroundSet* domain = nullptr,
                                     const Target& target = {});

struct SupportCertificate {
  std::vector<Rational> a;  // weights of the additive part
  Rational c;
  Element p;
};

struct SupportResult {
  std::optional<SupportCertificate> certificate;
  /// Infeasible: the combination of constraints reading 0 <= negative.
  std::string contradiction;
  Report report;
};

/// Affine support a.x + c touching f at p, homogeneous for every pair.
SupportResult rode_support(const FnRepr& f, const std::vector<ConvexPair>& pairs, const Element& p);

}  // namespace gconv
