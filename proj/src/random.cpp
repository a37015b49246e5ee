#include "gconv/random.hpp"

#include "gconv/error.hpp"

namespace gconv {

namespace {

std::mt19937_64 seeded(std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seeded(seed, 0x9e3779b97f4a7c15ULL)) {}

long Rng::uniform(long lo, long hi) {
  if (lo > hi) throw Error(ErrorKind::InvalidArgument, "empty sampling range");
  return std::uniform_int_distribution<long>(lo, hi)(engine_);
}

Integer Rng::uniform(const Integer& lo, const Integer& hi) {
  if (lo > hi) throw Error(ErrorKind::InvalidArgument, "empty sampling range");
  Integer span = hi - lo + 1;
  if (span.fits_slong_p()) return lo + uniform(0L, span.get_si() - 1);
  Integer r = 0;
  for (int i = 0; i < 4; ++i) {
    r <<= 64;
    std::uint64_t v = next();
    r += Integer(static_cast<unsigned long>(v >> 32)) * Integer(4294967296UL) + Integer(static_cast<unsigned long>(v & 0xffffffffULL));
  }
  return lo + mod(r, span);
}

bool Rng::coin(double p) { return std::bernoulli_distribution(p)(engine_); }

Rng Rng::split() {
  Rng child(0);
  child.seed_ = next();
  child.engine_ = seeded(child.seed_, next());
  return child;
}

Rng Rng::split(std::uint64_t stream) const {
  Rng child(0);
  child.seed_ = seed_ ^ (stream * 0xbf58476d1ce4e5b9ULL);
  child.engine_ = seeded(seed_, stream + 1);
  return child;
}

}  // namespace gconv
