#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gconv/endo.hpp"
#include "gconv/random.hpp"
#include "gconv/report.hpp"

namespace gconv {

/// Subset of a group: an explicit finite list, or an N-adic box {lower <= x <= upper}.
class GroundSet {
 public:
  enum class Kind { Finite, Box };

  GroundSet() = default;
  static GroundSet finite(GroupRef g, std::vector<Element> elements);
  static GroundSet box(GroupRef g, std::vector<Rational> lower, std::vector<Rational> upper);
  /// The whole carrier of a finite group.
  static GroundSet whole(GroupRef g);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const GroupSpec& group() const { return *group_; }
  const GroupRef& group_ref() const { return group_; }

  /// Sorted, deduplicated members (finite sets only).
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const;
  const std::vector<Rational>& lower() const { return lower_; }
  const std::vector<Rational>& upper() const { return upper_; }

  bool contains(const Element& x) const;
  /// Position of x in elements(), for finite sets.
  std::optional<std::size_t> index_of(const Element& x) const;
  bool subset_of(const GroundSet& other) const;

  friend bool operator==(const GroundSet& a, const GroundSet& b);

 private:
  Kind kind_ = Kind::Finite;
  GroupRef group_;
  std::vector<Element> elements_;
  std::vector<Rational> lower_, upper_;
  // carrier position -> member position, for finite groups of moderate size
  std::shared_ptr<const std::vector<std::int32_t>> lookup_;
  std::shared_ptr<const FiniteCarrier> carrier_;
};

std::string to_string(const GroundSet& s);

/// Random member: uniform for finite sets, N-adic grid points (corners favoured) for boxes.
Element sample_point(const GroundSet& s, Rng& rng, unsigned max_exponent = 6);

GroundSet sumset(const GroundSet& a, const GroundSet& b);

/// z(x, y) = index of T(x) + (I - T)(y) in D, or -1 when it falls outside D.
struct PairMap {
  std::size_t n = 0;
  std::vector<std::int32_t> z;

  std::int32_t at(std::size_t x, std::size_t y) const { return z[x * n + y]; }
  bool closed() const;
};

PairMap pair_map(const GroundSet& d, const Endo& t);

Report is_T_convex(const GroundSet& d, const Endo& t, std::size_t probes = 1000, std::uint64_t seed = 0);
Report is_n_convex(const GroundSet& a, long n, std::size_t cap = std::size_t{1} << 20);

/// Deduplicated endomorphisms of one group, each tagged with how it was obtained.
class EndoSet {
 public:
  explicit EndoSet(GroupRef g = nullptr) : group_(std::move(g)) {}

  const GroupRef& group_ref() const { return group_; }
  const std::vector<Endo>& members() const { return members_; }
  const std::vector<std::string>& provenance() const { return provenance_; }
  std::size_t size() const { return members_.size(); }
  bool contains(const Endo& t) const { return index_.count(t) > 0; }
  /// Adds t unless present; returns whether it was new.
  bool insert(const Endo& t, std::string provenance = "seed");

  bool truncated = false;

 private:
  GroupRef group_;
  std::vector<Endo> members_;
  std::vector<std::string> provenance_;
  std::set<Endo> index_;
};

/// All matrices satisfying the homomorphism congruences of a finite group.
std::vector<Endo> all_endos(const GroupRef& g, std::size_t cap = 10000);

EndoSet enumerate_TD(const GroundSet& d, std::size_t cap = 10000);

/// Least superset of seed, 0 and I closed under composition, complement and
/// (T, S) -> T o S + (I - T) o (I - S); stops after `budget` insertions.
EndoSet closure_generate(const EndoSet& seed, std::size_t budget = 10000);

Report radstrom_check(const GroundSet& a, const GroundSet& b, const GroundSet& c, long n0);

enum class Internality { Internal, NotInternal, Inconclusive };
const char* to_string(Internality v);

struct InternalityResult {
  Internality status = Internality::Inconclusive;
  std::vector<Element> absorbing;  // the stabilised union when it is proper
  std::size_t rounds = 0;
};

InternalityResult internal_points(const GroundSet& d, const Endo& t, const Element& p, std::size_t budget = 10000);

}  // namespace gconv
