#pragma once

#include <vector>

#include <Eigen/Dense>

#include "densecap/qstate.hpp"

namespace densecap {

/// Three mutually orthogonal unit vectors n_1, n_2, n_3 in R^3.
struct OrthonormalFrame {
    Eigen::Vector3d n1 = Eigen::Vector3d::UnitX();
    Eigen::Vector3d n2 = Eigen::Vector3d::UnitY();
    Eigen::Vector3d n3 = Eigen::Vector3d::UnitZ();

    static OrthonormalFrame standard() { return {}; }
    /// Columns of the rotation (or any orthogonal matrix) become n_1..n_3.
    static OrthonormalFrame from_matrix(const Eigen::Matrix3d& r);

    const Eigen::Vector3d& operator[](int k) const { return k == 0 ? n1 : (k == 1 ? n2 : n3); }

    /// Throws Error(FrameNotOrthonormal) unless n_k . n_l = delta_kl to 1e-12.
    void validate() const;
};

/// Signal alphabet of the sender: unitaries U_a chosen with prior pi_a.
class EncodingEnsemble {
public:
    EncodingEnsemble(int dim, std::vector<CMatrix> unitaries, std::vector<double> prior);
    /// Uniform prior over the given unitaries.
    EncodingEnsemble(int dim, std::vector<CMatrix> unitaries);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return unitaries_.size(); }
    const std::vector<CMatrix>& unitaries() const noexcept { return unitaries_; }
    const std::vector<double>& prior() const noexcept { return prior_; }

    EncodingEnsemble with_prior(std::vector<double> prior) const;

private:
    int dim_;
    std::vector<CMatrix> unitaries_;
    std::vector<double> prior_;
};

/// Hermitian traceless operators L_1..L_{d^2-1} with Tr L_a L_b = d delta_ab.
struct OperatorBasis {
    int dim = 0;
    std::vector<CMatrix> lambdas;
};

/// {1, n_1.sigma, n_2.sigma, n_3.sigma} with uniform prior 1/4.
EncodingEnsemble canonical_qubit_set(const OrthonormalFrame& frame);

/// {1, U} with prior (1/2, 1/2), U a pi-rotation about the axis v x y
/// (v x z when v is parallel to y), signed so its first nonzero component
/// is positive. U maps the state with Bloch vector v to
/// the one with -v. For |v| <= 1e-12 no direction exists and {1, sigma_x}
/// is returned.
EncodingEnsemble antipodal_pair(const BlochVector& v);

/// Generalized Gell-Mann matrices in the order: symmetric E_jk + E_kj for
/// j < k (lexicographic), antisymmetric -i E_jk + i E_kj for j < k, then the
/// d - 1 diagonal ones. Rescaled so Tr L_a L_b = d delta_ab; for d = 2 this
/// is (sigma_x, sigma_y, sigma_z).
OperatorBasis gellmann_basis(int d);

/// Shift operator X|k> = |k+1 mod d>.
CMatrix weyl_shift(int d);
/// Clock operator Z|k> = w^k |k>, w = exp(2 pi i / d).
CMatrix weyl_clock(int d);
/// The d^2 operators X^p Z^q, index a = p d + q, uniform prior 1/d^2.
EncodingEnsemble weyl_set(int d);

struct GramCheck {
    CMatrix gram;     ///< (1/d) Tr U_a^dagger U_b
    double residual;  ///< max entry of |gram - 1|
    bool orthonormal; ///< residual <= 1e-10
};

GramCheck verify_orthogonality(const EncodingEnsemble& e);

/// sum_a pi_a U_a X U_a^dagger for an arbitrary operator X.
CMatrix twirl(const EncodingEnsemble& e, const CMatrix& op);

/// Embed the sender's unitaries into the joint space: U (x) 1_B when the
/// sender is A, 1_A (x) U when it is B.
EncodingEnsemble lift_to_sender(const EncodingEnsemble& e, Dims dims, Subsystem sender);

}  // namespace densecap
