#ifndef AFFINE_RNG_HPP
#define AFFINE_RNG_HPP

#include <cstdint>
#include <random>

namespace affine {

// Deterministic uniform generator. std::uniform_real_distribution is
// implementation-defined, so doubles are built from the raw engine output
// to keep emitted CSV/JSON byte-identical across toolchains.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) {
    const double u01 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u01;
  }

private:
  std::mt19937_64 engine_;
};

} // namespace affine

#endif
