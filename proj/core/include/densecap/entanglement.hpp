#pragma once

#include <cstdint>
#include <vector>

#include "densecap/qstate.hpp"

namespace densecap {

/// Convex decomposition rho_AB = sum_k p_k |psi_k><psi_k| into pure states.
class Decomposition {
public:
    /// Throws Error(SplitMismatch) if a vector does not live on d_A * d_B,
    /// Error(InvalidState) for non-unit vectors or invalid weights.
    Decomposition(Dims dims, std::vector<double> weights, std::vector<CVector> vectors);

    Dims dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return weights_.size(); }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<CVector>& vectors() const noexcept { return vectors_; }

    /// sum_k p_k |psi_k><psi_k|.
    CMatrix mixture() const;

private:
    Dims dims_;
    std::vector<double> weights_;
    std::vector<CVector> vectors_;
};

double binary_entropy(double x) noexcept;

/// S(rho_A) + S(rho_B) of a pure joint vector (both equal its entanglement
/// entropy); the vector need not be normalized.
double pure_state_correlation(const CVector& psi, Dims dims);

/// sum_k p_k [S(rho_A^k) + S(rho_B^k)].
double decomposition_cost(const Decomposition& d);

struct ConvexRoofOptions {
    int cardinality = 0;  ///< number of terms m; 0 selects min(r^2, 2r), r = rank
    int restarts = 32;
    double tol = 1e-6;    ///< a restart stops when a full sweep gains less than this
    std::uint64_t seed = 0;
    int max_sweeps = 5000;
    int threads = 0;      ///< 0 = hardware concurrency
};

struct ConvexRoofResult {
    /// Always an upper bound on the convex roof: the best decomposition found.
    double value = 0.0;
    Decomposition decomposition;
    int restarts_used = 0;
    bool converged = false;
    /// Cost of the spectral decomposition; value never exceeds it.
    double eigendecomposition_cost = 0.0;
    std::vector<double> restart_values;
};

/// Minimizes decomposition_cost over decompositions
///
///   |psi~_k> = sum_i V_ki sqrt(lambda_i) |e_i>,   p_k = <psi~_k|psi~_k>,
///
/// with (lambda_i, |e_i>) the nonzero eigenpairs of rho_AB and V an m x r
/// matrix with orthonormal columns. Each restart runs a gradient-free
/// coordinate descent over Givens rotations (angle and relative phase) that
/// mix two terms at a time. Restart 0 starts from the spectral decomposition,
/// later ones from Haar-random V; restarts are independent given the seed and
/// the minimum is taken with ties going to the lowest restart index.
///
/// Throws Error(RankTooLarge) if cardinality < rank.
ConvexRoofResult convex_roof(const BipartiteState& s, const ConvexRoofOptions& options = {});

struct ConcurrenceOracle {
    double concurrence = 0.0;
    double formation = 0.0;  ///< E_F in bits
};

/// Closed-form two-qubit concurrence and entanglement of formation:
/// C = max(0, mu_1 - mu_2 - mu_3 - mu_4), mu the decreasing square roots of
/// the eigenvalues of rho (sy (x) sy) rho* (sy (x) sy), and
/// E_F = h((1 + sqrt(1 - C^2)) / 2). Throws Error(DimensionUnsupported)
/// unless the state is 2 x 2.
ConcurrenceOracle concurrence_oracle(const BipartiteState& s);

}  // namespace densecap
