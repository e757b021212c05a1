#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "essnorm/essential.hpp"

namespace essnorm {

/// Seeded generator with a platform-independent output stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Doubles are formed as (word >> 11) * 2^-53, which is exact and
/// avoids the implementation-defined std::uniform_real_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for trial t of a run seeded with seed.
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial)
    {
        return Rng(seed + 0x9E3779B97F4A7C15ull * (trial + 1));
    }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    /// Uniform on [-1, 1).
    double symmetric() { return 2.0 * unit() - 1.0; }
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
};

/// Masses uniform on [lo, hi).
std::vector<double> random_masses(Rng& rng, std::size_t n, double lo = 0.125, double hi = 2.0);
/// Entries i.i.d. uniform on [-1, 1), row-major.
MatrixOperator random_matrix(Rng& rng, const SpacePtr& space);
/// Random two-block partition of 0..n-1 with both blocks nonempty (n >= 2).
Partition random_two_blocks(Rng& rng, std::size_t n);
/// Rank-r kernel whose factors are cosine series with `terms` coefficients
/// drawn uniformly from [-1, 1).
FunctionKernel random_smooth_kernel(Rng& rng, int rank, int terms = 4);

} // namespace essnorm
