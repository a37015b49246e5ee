#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "gconv/sets.hpp"

namespace gconv {

/// A rational or minus infinity. 0 * (-inf) = 0.
class ExtValue {
 public:
  ExtValue() = default;
  ExtValue(Rational v) : value_(std::move(v)) { value_.canonicalize(); }
  ExtValue(long v) : value_(v) {}
  static ExtValue neg_inf() {
    ExtValue e;
    e.finite_ = false;
    return e;
  }

  bool is_neg_inf() const { return !finite_; }
  bool is_finite() const { return finite_; }
  const Rational& value() const;

  /// t * this for t >= 0.
  ExtValue scaled(const Rational& t) const;

  friend bool operator==(const ExtValue& a, const ExtValue& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b);
  friend ExtValue operator+(const ExtValue& a, const ExtValue& b);

 private:
  bool finite_ = true;
  Rational value_ = 0;
};

std::string to_string(const ExtValue& v);
ExtValue parse_ext(const std::string& text);
inline const ExtValue& max(const ExtValue& a, const ExtValue& b) { return a < b ? b : a; }
inline const ExtValue& min(const ExtValue& a, const ExtValue& b) { return b < a ? b : a; }

struct QuadraticForm {
  Matrix q;
  std::vector<Rational> b;
  Rational c;
};

/// f : D -> [-inf, inf) as a finite table or x^T Q x + b^T x + c on a domain.
class FnRepr {
 public:
  enum class Kind { Table, Quadratic };

  FnRepr() = default;
  /// values[i] belongs to domain.elements()[i].
  static FnRepr table(GroundSet domain, std::vector<ExtValue> values);
  static FnRepr table(GroupRef g, const std::vector<std::pair<Element, ExtValue>>& entries);
  static FnRepr quadratic(GroundSet domain, QuadraticForm form);

  Kind kind() const { return kind_; }
  bool is_table() const { return kind_ == Kind::Table; }
  const GroundSet& domain() const { return domain_; }
  const GroupSpec& group() const { return domain_.group(); }
  const std::vector<ExtValue>& values() const { return values_; }
  const QuadraticForm& form() const { return form_; }

  ExtValue operator()(const Element& x) const;
  /// Table of the quadratic on a finite domain, or the table itself.
  FnRepr tabulate() const;

  friend bool operator==(const FnRepr& a, const FnRepr& b);

 private:
  Kind kind_ = Kind::Table;
  GroundSet domain_;
  std::vector<ExtValue> values_;
  QuadraticForm form_;
};

struct ConvexPair {
  Endo t;
  Rational s;  // the scalar t of the pair (T, t)
};

ConvexPair make_pair(Endo t, Rational s);
std::string to_string(const ConvexPair& p);

struct Interval {
  bool empty = false;
  Rational lower = 0, upper = 1;

  static Interval none() { return {true, 0, 0}; }
  bool contains(const Rational& t) const { return !empty && lower <= t && t <= upper; }
  friend bool operator==(const Interval& a, const Interval& b) {
    return a.empty == b.empty && (a.empty || (a.lower == b.lower && a.upper == b.upper));
  }
};

std::string to_string(const Interval& i);

enum class InequalityKind { Quasiconvex, Wright, TtConvex, WrightAffine, TtAffine };
const char* to_string(InequalityKind k);
InequalityKind parse_inequality_kind(const std::string& s);

Report check_inequality(InequalityKind kind, const FnRepr& f, const ConvexPair& pair, std::size_t probes = 1000,
                        std::uint64_t seed = 0);
/// Table check against a precomputed pair table of the domain.
Report check_on_pairs(InequalityKind kind, const std::vector<ExtValue>& values, const PairMap& pm, const Rational& t);

GroundSet level_set(const FnRepr& f, const ExtValue& c);
FnRepr neg_char_fn(const GroundSet& s, const GroundSet& ambient);

FnRepr diamond_conv(const FnRepr& f, const FnRepr& g);
FnRepr inf_conv(const FnRepr& f, const FnRepr& g);

enum class Transport { Pullback, Pushforward };
FnRepr transport(const FnRepr& f, const Endo& a, Transport direction);

/// Largest function below f that is quasiconvex for every member of ts.
FnRepr qconv_envelope(const FnRepr& f, const EndoSet& ts);

enum class IntervalMode { Convex, Affine };

struct IntervalResult {
  Interval interval;
  Coverage coverage = Coverage::Exhaustive;
  std::size_t checked = 0;
  /// Pair whose constraint emptied or last tightened the interval.
  std::optional<std::pair<Element, Element>> witness;
};

IntervalResult convexity_interval(const FnRepr& f, const Endo& t, IntervalMode mode, std::size_t probes = 1000,
                                  std::uint64_t seed = 0);

enum class LiftMode { Epigraph, Graph };
Report lift_check(const FnRepr& f, const ConvexPair& pair, LiftMode mode, const Rational& step, int steps = 4);

enum class PointwiseOp { Sup, Inf, Limit, Add, Scale, Shift };
FnRepr pointwise(PointwiseOp op, const std::vector<FnRepr>& fns, const std::optional<Rational>& scalar = std::nullopt);

/// f(sum w_i x_i) <= sum w_i f(x_i) for nonnegative weights summing to one.
Report check_combination(const FnRepr& f, const std::vector<Rational>& weights, const std::vector<Element>& points);

}  // namespace gconv
