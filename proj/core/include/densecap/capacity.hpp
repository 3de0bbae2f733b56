#pragma once

#include <span>
#include <vector>

#include "densecap/encodings.hpp"
#include "densecap/qstate.hpp"

namespace densecap {

/// Relative entropies larger than this (including the +inf case of
/// mismatched supports) are reported as this value, in bits.
inline constexpr double kRelativeEntropyCap = 50.0;

/// D(rho || sigma) = Tr rho (log2 rho - log2 sigma), capped at kRelativeEntropyCap.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// sum_a pi_a U_a rho U_a^dagger.
DensityMatrix average_state(const EncodingEnsemble& e, const DensityMatrix& rho);

/// Holevo quantity of the noiseless channel fed with U_a rho U_a^dagger:
/// S(average) - S(rho).
double holevo_chi(const EncodingEnsemble& e, const DensityMatrix& rho);

/// S(sum pi_a rho_a) - sum pi_a S(rho_a) for an explicit signal ensemble.
double holevo_chi(std::span<const DensityMatrix> states, std::span<const double> prior);

struct PriorOptions {
    double tol = 1e-9;
    int max_iter = 100000;
    bool record_history = true;
};

struct CapacityReport {
    double chi = 0.0;
    std::vector<double> optimal_prior;
    DensityMatrix average_state;
    int iterations = 0;
    bool converged = false;
    /// max_a D(rho_a || average) - chi at the returned prior; an upper bound
    /// on how far chi is below the capacity.
    double gap = 0.0;
    /// chi before every update, followed by the final value.
    std::vector<double> chi_history;
};

/// Maximizes chi(pi) over the prior with the multiplicative fixed point
///
///   pi'_a  proportional to  pi_a 2^{D(rho_a || sum_b pi_b rho_b)}
///
/// starting from the uniform prior. Stops when the capacity gap
/// max_a D(rho_a || average) - chi drops below tol, or after max_iter
/// updates (converged = false). Throws Error(NoStates) for an empty list and
/// Error(DimensionMismatch) for mixed dimensions.
CapacityReport optimize_prior(std::span<const DensityMatrix> states, const PriorOptions& options = {});

enum class Direction { AtoB, BtoA };

inline Subsystem sender_of(Direction d) noexcept { return d == Direction::AtoB ? Subsystem::A : Subsystem::B; }
inline Subsystem receiver_of(Direction d) noexcept { return d == Direction::AtoB ? Subsystem::B : Subsystem::A; }

/// log2 d - S(rho): capacity without a shared partner system.
double normal_capacity(const DensityMatrix& rho);

/// Dense-coding capacity with local encodings on the sender:
/// A->B: log2 d_A + S(rho_B) - S(rho_AB); B->A: log2 d_B + S(rho_A) - S(rho_AB).
double dense_capacity(const BipartiteState& s, Direction direction);

/// S(rho_A) + S(rho_B) - S(rho_AB).
double mutual_information(const BipartiteState& s);

/// Local encoding used by the dense-coding protocol for a sender of
/// dimension d: the four Pauli operators for qubits, the Weyl set otherwise.
EncodingEnsemble dense_encoding(int sender_dim);

struct DenseCrossCheck {
    double closed_form = 0.0;
    CapacityReport optimized;
    double deviation = 0.0;  ///< |optimized.chi - closed_form|
};

/// Runs optimize_prior over the signal states (U_a (x) 1) rho_AB (U_a (x) 1)^dagger
/// and compares the optimum with the closed form of dense_capacity.
DenseCrossCheck dense_capacity_crosscheck(const BipartiteState& s, Direction direction,
                                          const PriorOptions& options = {});

}  // namespace densecap
