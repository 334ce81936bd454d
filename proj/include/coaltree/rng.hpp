#pragma once

#include <cstdint>
#include <random>

namespace coaltree {

// Seedable 64-bit generator with portable distributions.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The std:: distributions are not (their algorithms are
// implementation-defined), so the draws below are written out explicitly to
// keep every simulation bit-identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent stream for replicate `index` of a batch seeded with `base_seed`.
    static Rng substream(std::uint64_t base_seed, std::uint64_t index);

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on the open interval (0, 1).
    double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    // Uniform integer in [0, bound), unbiased (rejection on the top zone).
    std::uint64_t uniform_index(std::uint64_t bound);

    // Exponential with the given rate; always strictly positive.
    double exponential(double rate);

    double standard_normal();

private:
    std::mt19937_64 engine_;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

// SplitMix64 finalizer; used to derive substream seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace coaltree
