#include "latiso/random.hpp"

namespace latiso {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Largest multiple of bound that fits; draws above it are rejected.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t r = engine_();
    if (r < limit) return r % bound;
  }
}

Int Rng::uniform(const Int& lo, const Int& hi) {
  if (hi < lo) throw PreconditionViolated("empty range");
  Int span = hi - lo + 1;
  if (span.fits_ulong_p() && span.get_ui() != 0)
    return lo + Int(static_cast<unsigned long>(below(span.get_ui())));
  const std::size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2);
  for (;;) {
    Int r = 0;
    std::size_t have = 0;
    while (have < bits) {
      r <<= 64;
      r += Int(static_cast<unsigned long>(engine_()));
      have += 64;
    }
    r >>= (have - bits);
    if (r < span) return lo + r;
  }
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace latiso
