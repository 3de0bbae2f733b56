#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "densecap/encodings.hpp"
#include "densecap/qstate.hpp"

namespace densecap {

/// Message/outcome count table of a simulated protocol run.
struct ProtocolTrace {
    std::int64_t trials = 0;
    /// counts[a][b]: message a was sent and outcome b decoded.
    std::vector<std::vector<std::int64_t>> counts;
    double empirical_mi = 0.0;
    std::uint64_t seed = 0;

    /// Trials with outcome != message (meaningful when outcomes label messages).
    std::int64_t decoding_errors() const;
};

/// Plug-in estimate of I(A;B) in bits from a joint count table, no bias
/// correction.
double plugin_mutual_information(const std::vector<std::vector<std::int64_t>>& counts);

enum class DecoderKind { Bell, SingleParticle };

/// Projective measurement applied by the receiver.
///
/// Bell: joint two-qubit measurement with outcomes ordered
///   0: (|00> + |11>)/sqrt2,  1: (|01> + |10>)/sqrt2,
///   2: (|01> - |10>)/sqrt2,  3: (|00> - |11>)/sqrt2,
/// so that sigma_k (x) 1 applied to the first state yields outcome k.
///
/// SingleParticle: measures only the sender's system, after the partner is
/// traced out, in the orthonormal basis given by the columns of `basis`.
struct Decoder {
    DecoderKind kind = DecoderKind::Bell;
    CMatrix basis;

    static Decoder bell() { return {DecoderKind::Bell, {}}; }
    static Decoder single_particle(CMatrix basis) { return {DecoderKind::SingleParticle, std::move(basis)}; }
    /// Eigenbasis of sigma_x, sigma_y or sigma_z ('x', 'y', 'z').
    static Decoder single_particle_axis(char axis);
};

/// The four Bell vectors in decoder outcome order (columns).
CMatrix bell_basis();

/// p(b | a) for every message a of the ensemble (applied as U_a on the
/// sender side A) and outcome b of the decoder. Probabilities below 1e-15
/// are set to zero and rows renormalized.
std::vector<std::vector<double>> outcome_probabilities(const BipartiteState& s, const EncodingEnsemble& e,
                                                       const Decoder& decoder);

/// Monte-Carlo run of the quantum dense-coding protocol. A trial encodes a
/// message a ~ pi with U_a (x) 1 and samples the decoder outcome by the
/// Born rule. Trial t uses CounterRng::stream(seed, t), first draw for
/// the message and second for the outcome, so the trace is independent of
/// `threads`.
///
/// Throws Error(InvalidTrials) if trials < 1, Error(DimensionMismatch) if the
/// ensemble or decoder does not fit the state.
ProtocolTrace run_quantum_dense(const BipartiteState& s, const EncodingEnsemble& e, const Decoder& decoder,
                                std::int64_t trials, std::uint64_t seed, int threads = 1);

/// Joint distribution of two classical bits, p[2 i + j] = p(ij) with i
/// Alice's bit and j Bob's.
struct ClassicalJointState {
    std::array<double, 4> p{0.5, 0.0, 0.0, 0.5};

    static ClassicalJointState maximally_correlated() { return {}; }
    static ClassicalJointState uniform() { return {{0.25, 0.25, 0.25, 0.25}}; }

    /// Throws Error(InvalidDistribution) unless non-negative and summing to 1.
    void validate() const;
};

/// Classical keyed-bit protocol: per trial sample (j_A, j_B), draw a
/// uniform message k, transmit j_A xor k; the receiver outputs
/// received xor j_B when use_key, else the raw received bit. Trial t draws
/// the pair then the message from CounterRng::stream(seed, t).
ProtocolTrace run_classical_dense(const ClassicalJointState& s, bool use_key, std::int64_t trials,
                                  std::uint64_t seed, int threads = 1);

}  // namespace densecap
