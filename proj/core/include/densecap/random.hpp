#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "densecap/encodings.hpp"
#include "densecap/qstate.hpp"

namespace densecap {

/// SplitMix64 used as a counter-based generator.
///
/// The state is a 64-bit counter advanced by a fixed odd increment; each
/// output is a bijective mix of the counter, so a stream is fully determined
/// by its starting counter. Independent streams are obtained with
/// CounterRng::stream(seed, index): the start counter is
/// mix(seed) ^ mix(index + 1), i.e. a stream depends only on (seed, index)
/// and never on how work is scheduled.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t counter) noexcept : counter_(counter) {}

    static CounterRng stream(std::uint64_t seed, std::uint64_t index) noexcept {
        return CounterRng(mix(seed) ^ mix(index + 1));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        counter_ += kIncrement;
        return mix(counter_);
    }

    /// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kIncrement = 0x9e3779b97f4a7c15ULL;
    std::uint64_t counter_;
};

using Engine = std::mt19937_64;

// Sampling helpers for verification sweeps. Not cross-platform bit-exact
// (they go through <random> distributions).

/// Haar-random unitary from the QR decomposition of a complex Ginibre matrix
/// with the phases of R's diagonal folded back in.
CMatrix random_unitary(int dim, Engine& rng);
/// Haar-random unit vector.
CVector random_pure_vector(int dim, Engine& rng);
/// Full-rank mixed state G G^dagger / Tr(G G^dagger) from a Ginibre matrix G.
DensityMatrix random_density_matrix(int dim, Engine& rng);
/// Same construction with a dim x rank Ginibre matrix: a state of rank <= rank.
DensityMatrix random_density_matrix(int dim, int rank, Engine& rng);
BipartiteState random_bipartite(Dims dims, Engine& rng);
/// Random proper rotation applied to the coordinate axes.
OrthonormalFrame random_frame(Engine& rng);
/// Uniform point in the unit Bloch ball.
BlochVector random_bloch(Engine& rng);

}  // namespace densecap
