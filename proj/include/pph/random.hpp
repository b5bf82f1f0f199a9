#pragma once

#include <cstdint>
#include <random>

namespace pph {

/// Seeded, platform-independent random stream. Only raw engine output is
/// consumed (no std distributions), so a seed reproduces the same draws on
/// every standard library.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t next() { return engine_(); }
    bool bit() { return (engine_() >> 63) != 0; }
    /// Uniform in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Child stream `stream`, derived from the seed alone (not from the
    /// current position), so children can be drawn in any order.
    RandomSource split(std::uint64_t stream) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace pph
