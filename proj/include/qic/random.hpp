#pragma once

#include <cstdint>
#include <random>

namespace qic {

/// Seeded, strictly sequential random stream.
///
/// Values are derived from the raw 64-bit output of mt19937_64 with fixed
/// arithmetic, so a given seed yields the same draws on every platform
/// (the standard distributions are implementation-defined and are avoided).
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits. One draw.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) by multiply-high. One draw.
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    /// Number of draws consumed so far.
    std::uint64_t position() const { return position_; }

  private:
    std::uint64_t next() {
        ++position_;
        return engine_();
    }

    std::mt19937_64 engine_;
    std::uint64_t position_ = 0;
};

}  // namespace qic
