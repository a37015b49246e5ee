#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gconv/endo.hpp"

namespace gconv {

/// Image table of an endomorphism on a finite carrier, indexed by carrier position.
class FiniteAction {
 public:
  explicit FiniteAction(const Endo& t, std::size_t cap = FiniteCarrier::kDefaultCap);

  std::size_t size() const { return image_.size(); }
  std::size_t image(std::size_t i) const { return image_[i]; }
  const std::vector<std::uint32_t>& table() const { return image_; }
  const FiniteCarrier& carrier() const { return carrier_; }
  const std::vector<Rational>& carrier_norms() const;

  /// Inverse permutation when the action is bijective.
  std::optional<std::vector<std::uint32_t>> inverse_table() const;
  std::optional<std::size_t> first_preimage(std::size_t target) const;

 private:
  const GroupSpec* group_;
  FiniteCarrier carrier_;
  std::vector<std::uint32_t> image_;
  mutable std::vector<Rational> norms_;
};

/// Translation table: idx -> idx + a.
std::vector<std::uint32_t> add_table(const FiniteCarrier& carrier, std::size_t a);

}  // namespace gconv
