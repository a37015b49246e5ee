#include "gconv/finite_action.hpp"

namespace gconv {

FiniteAction::FiniteAction(const Endo& t, std::size_t cap) : group_(&t.group()), carrier_(t.group(), cap) {
  const std::size_t n = t.group().dim();
  const auto& m = carrier_.moduli();
  std::vector<long> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = t.matrix()(i, j).get_num().get_si();
  image_.resize(carrier_.size());
  std::vector<long> out(n);
  for (std::size_t idx = 0; idx < carrier_.size(); ++idx) {
    std::vector<long> x = carrier_.residues(idx);
    for (std::size_t i = 0; i < n; ++i) {
      __int128 s = 0;
      for (std::size_t j = 0; j < n; ++j) s += static_cast<__int128>(a[i * n + j]) * x[j];
      out[i] = static_cast<long>(s % m[i]);
    }
    image_[idx] = static_cast<std::uint32_t>(carrier_.index_of_residues(out));
  }
}

const std::vector<Rational>& FiniteAction::carrier_norms() const {
  if (norms_.empty()) {
    norms_.reserve(carrier_.size());
    for (std::size_t i = 0; i < carrier_.size(); ++i) norms_.push_back(dnorm(*group_, carrier_.element(i)));
  }
  return norms_;
}

std::optional<std::vector<std::uint32_t>> FiniteAction::inverse_table() const {
  std::vector<std::uint32_t> inv(size());
  std::vector<bool> seen(size(), false);
  for (std::size_t i = 0; i < size(); ++i) {
    if (seen[image_[i]]) return std::nullopt;
    seen[image_[i]] = true;
    inv[image_[i]] = static_cast<std::uint32_t>(i);
  }
  return inv;
}

std::optional<std::size_t> FiniteAction::first_preimage(std::size_t target) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (image_[i] == target) return i;
  return std::nullopt;
}

std::vector<std::uint32_t> add_table(const FiniteCarrier& carrier, std::size_t a) {
  const auto& m = carrier.moduli();
  std::vector<long> ra = carrier.residues(a);
  std::vector<std::uint32_t> out(carrier.size());
  std::vector<long> s(m.size());
  for (std::size_t idx = 0; idx < carrier.size(); ++idx) {
    std::vector<long> x = carrier.residues(idx);
    for (std::size_t i = 0; i < m.size(); ++i) s[i] = (x[i] + ra[i]) % m[i];
    out[idx] = static_cast<std::uint32_t>(carrier.index_of_residues(s));
  }
  return out;
}

}  // namespace gconv
