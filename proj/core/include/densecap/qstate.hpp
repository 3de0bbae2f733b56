#pragma once

#include <complex>
#include <span>

#include <Eigen/Dense>

#include "densecap/errors.hpp"

namespace densecap {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

namespace tolerance {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
// Eigenvalues in [-psd_floor, 0) are rounding noise and clipped to zero;
// anything more negative marks the matrix as not positive semidefinite.
inline constexpr double psd_floor = 1e-10;
inline constexpr double bloch_norm = 1e-12;
}  // namespace tolerance

/// Qubit state parameterized as rho = (1 + v.sigma) / 2 with |v| <= 1.
///
/// This is the standard Bloch convention. Texts that write
/// rho = 1/2 + n.sigma use n = v / 2.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const noexcept;
    Eigen::Vector3d vec() const noexcept { return {x, y, z}; }
    static BlochVector from(const Eigen::Vector3d& v) noexcept { return {v.x(), v.y(), v.z()}; }
};

/// Validated d x d density operator (Hermitian, PSD with unit trace).
///
/// Construction checks the invariants and throws Error(InvalidState)
/// otherwise. The stored matrix is the Hermitian part of the input.
class DensityMatrix {
public:
    explicit DensityMatrix(const CMatrix& m);

    static DensityMatrix maximally_mixed(int dim);
    /// |psi><psi| for a unit-norm vector (norm checked to 1e-10).
    static DensityMatrix pure(const CVector& psi);

    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    const CMatrix& matrix() const noexcept { return m_; }

    /// Ascending eigenvalues, clipped to [0, 1].
    RVector eigenvalues() const;

private:
    CMatrix m_;
};

/// Subsystem dimensions of a bipartite Hilbert space H_A (x) H_B.
struct Dims {
    int a = 2;
    int b = 2;

    int joint() const noexcept { return a * b; }
    friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { A, B };

DensityMatrix from_bloch(const BlochVector& v);
BlochVector to_bloch(const DensityMatrix& s);

CMatrix pauli(int index);  // 0 = identity, 1..3 = x, y, z
CMatrix kron(const CMatrix& a, const CMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Partial trace on an arbitrary (not necessarily normalized) operator.
CMatrix partial_trace(const CMatrix& m, Dims dims, Subsystem keep);
DensityMatrix partial_trace(const DensityMatrix& s, Dims dims, Subsystem keep);

/// Shannon entropy in bits of a spectrum; entries are clipped to [0, 1] and
/// 0 log 0 is taken as 0.
double entropy_bits(std::span<const double> eigenvalues);
double von_neumann_entropy(const DensityMatrix& s);

/// Joint state of two parties together with its marginals and correlation
/// tensor gamma, such that
///
///   rho_AB = rho_A (x) rho_B + sum_cd gamma(c, d) L_c (x) L_d
///
/// where L are the generalized Gell-Mann operators of each side, normalized
/// to Tr L_c L_c' = d delta_cc' (the Pauli matrices for qubits).
class BipartiteState {
public:
    BipartiteState(DensityMatrix joint, Dims dims);

    const DensityMatrix& joint() const noexcept { return joint_; }
    Dims dims() const noexcept { return dims_; }
    const DensityMatrix& reduced_a() const noexcept { return reduced_a_; }
    const DensityMatrix& reduced_b() const noexcept { return reduced_b_; }
    const RMatrix& gamma() const noexcept { return gamma_; }

    const DensityMatrix& reduced(Subsystem s) const noexcept {
        return s == Subsystem::A ? reduced_a_ : reduced_b_;
    }

private:
    DensityMatrix joint_;
    Dims dims_;
    DensityMatrix reduced_a_;
    DensityMatrix reduced_b_;
    RMatrix gamma_;
};

/// (d_A^2 - 1) x (d_B^2 - 1) real matrix
/// gamma_cd = Tr[(L_c (x) L_d)(rho_AB - rho_A (x) rho_B)] / (d_A d_B).
RMatrix correlation_decompose(const DensityMatrix& joint, Dims dims);
RMatrix correlation_decompose(const BipartiteState& s);

/// rho_A (x) rho_B + sum_cd gamma_cd L_c (x) L_d.
CMatrix reconstruct(const BipartiteState& s);

// Named states used throughout tests and the CLI.
namespace states {
/// (|00> + |11>) / sqrt(2).
CVector bell_vector();
BipartiteState bell();
/// p |bell><bell| + (1 - p) 1/4.
BipartiteState werner(double p);
/// sum_k |kk> / sqrt(d).
BipartiteState max_entangled(int d);
/// (|00><00| + |11><11|) / 2, classically correlated and separable.
BipartiteState classically_correlated();
BipartiteState product(const DensityMatrix& a, const DensityMatrix& b);
}  // namespace states

}  // namespace densecap
