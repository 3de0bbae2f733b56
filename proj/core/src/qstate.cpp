#include "densecap/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "densecap/encodings.hpp"

namespace densecap {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::BlochNormExceeded: return "BlochNormExceeded";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::InvalidDimension: return "InvalidDimension";
        case ErrorCode::FrameNotOrthonormal: return "FrameNotOrthonormal";
        case ErrorCode::InvalidEnsemble: return "InvalidEnsemble";
        case ErrorCode::NoStates: return "NoStates";
        case ErrorCode::RankTooLarge: return "RankTooLarge";
        case ErrorCode::SplitMismatch: return "SplitMismatch";
        case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
        case ErrorCode::InvalidTrials: return "InvalidTrials";
        case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    }
    return "Unknown";
}

double BlochVector::norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

DensityMatrix::DensityMatrix(const CMatrix& m) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw Error(ErrorCode::InvalidState, "density matrix must be square and non-empty");
    }
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tolerance::hermitian) {
        throw Error(ErrorCode::InvalidState, "not Hermitian (max |M - M^dagger| = " + std::to_string(asym) + ")");
    }
    const Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tolerance::trace) {
        throw Error(ErrorCode::InvalidState, "trace " + std::to_string(tr.real()) + " != 1");
    }
    m_ = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
    const double lowest = es.eigenvalues().minCoeff();
    if (lowest < -tolerance::psd_floor) {
        throw Error(ErrorCode::InvalidState, "not positive semidefinite (eigenvalue " + std::to_string(lowest) + ")");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    if (dim < 1) throw Error(ErrorCode::InvalidDimension, "dimension must be positive");
    return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
    if (psi.size() == 0 || std::abs(psi.norm() - 1.0) > 1e-10) {
        throw Error(ErrorCode::InvalidState, "pure state vector must have unit norm");
    }
    return DensityMatrix(psi * psi.adjoint());
}

RVector DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
}

CMatrix pauli(int index) {
    CMatrix s(2, 2);
    switch (index) {
        case 0: s << 1, 0, 0, 1; break;
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 3: s << 1, 0, 0, -1; break;
        default: throw Error(ErrorCode::InvalidDimension, "Pauli index must be 0..3");
    }
    return s;
}

DensityMatrix from_bloch(const BlochVector& v) {
    const double n = v.norm();
    if (n > 1.0 + tolerance::bloch_norm) {
        throw Error(ErrorCode::BlochNormExceeded, "|v| = " + std::to_string(n));
    }
    CMatrix m = pauli(0) + v.x * pauli(1) + v.y * pauli(2) + v.z * pauli(3);
    return DensityMatrix(m * 0.5);
}

BlochVector to_bloch(const DensityMatrix& s) {
    if (s.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "Bloch vectors describe qubits only");
    const CMatrix& m = s.matrix();
    return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(kron(a.matrix(), b.matrix()));
}

CMatrix partial_trace(const CMatrix& m, Dims dims, Subsystem keep) {
    if (dims.a < 1 || dims.b < 1 || m.rows() != dims.joint() || m.cols() != dims.joint()) {
        throw Error(ErrorCode::DimensionMismatch, "operator of size " + std::to_string(m.rows()) +
                                                      " does not match " + std::to_string(dims.a) + "x" +
                                                      std::to_string(dims.b));
    }
    const int da = dims.a;
    const int db = dims.b;
    if (keep == Subsystem::A) {
        CMatrix out = CMatrix::Zero(da, da);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < da; ++j)
                for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
        return out;
    }
    CMatrix out = CMatrix::Zero(db, db);
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j)
            for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& s, Dims dims, Subsystem keep) {
    return DensityMatrix(partial_trace(s.matrix(), dims, keep));
}

double entropy_bits(std::span<const double> eigenvalues) {
    double s = 0.0;
    for (double l : eigenvalues) {
        l = std::clamp(l, 0.0, 1.0);
        if (l > 0.0) s -= l * std::log2(l);
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& s) {
    const RVector ev = s.eigenvalues();
    return entropy_bits(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

RMatrix correlation_decompose(const DensityMatrix& joint, Dims dims) {
    if (joint.dim() != dims.joint()) {
        throw Error(ErrorCode::DimensionMismatch, "joint dimension does not match subsystem dimensions");
    }
    const CMatrix& rho = joint.matrix();
    const CMatrix delta = rho - kron(partial_trace(rho, dims, Subsystem::A), partial_trace(rho, dims, Subsystem::B));
    const OperatorBasis la = gellmann_basis(dims.a);
    const OperatorBasis lb = gellmann_basis(dims.b);
    const double norm = static_cast<double>(dims.a) * dims.b;

    RMatrix gamma(la.lambdas.size(), lb.lambdas.size());
    for (std::size_t d = 0; d < lb.lambdas.size(); ++d) {
        // Tr[(L_c (x) L_d) delta] = Tr_A[L_c Tr_B[(1 (x) L_d) delta]]
        const CMatrix lifted = kron(CMatrix::Identity(dims.a, dims.a), lb.lambdas[d]);
        const CMatrix reduced = partial_trace(lifted * delta, dims, Subsystem::A);
        for (std::size_t c = 0; c < la.lambdas.size(); ++c) {
            gamma(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(d)) =
                (la.lambdas[c] * reduced).trace().real() / norm;
        }
    }
    return gamma;
}

RMatrix correlation_decompose(const BipartiteState& s) { return correlation_decompose(s.joint(), s.dims()); }

CMatrix reconstruct(const BipartiteState& s) {
    const OperatorBasis la = gellmann_basis(s.dims().a);
    const OperatorBasis lb = gellmann_basis(s.dims().b);
    CMatrix out = kron(s.reduced_a().matrix(), s.reduced_b().matrix());
    for (Eigen::Index c = 0; c < s.gamma().rows(); ++c) {
        for (Eigen::Index d = 0; d < s.gamma().cols(); ++d) {
            const double g = s.gamma()(c, d);
            if (g != 0.0) out += g * kron(la.lambdas[static_cast<std::size_t>(c)], lb.lambdas[static_cast<std::size_t>(d)]);
        }
    }
    return out;
}

BipartiteState::BipartiteState(DensityMatrix joint, Dims dims)
    : joint_(std::move(joint)),
      dims_(dims),
      reduced_a_(partial_trace(joint_, dims, Subsystem::A)),
      reduced_b_(partial_trace(joint_, dims, Subsystem::B)),
      gamma_(correlation_decompose(joint_, dims)) {}

namespace states {

CVector bell_vector() {
    CVector psi = CVector::Zero(4);
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    return psi;
}

BipartiteState bell() { return BipartiteState(DensityMatrix::pure(bell_vector()), {2, 2}); }

BipartiteState werner(double p) {
    const CVector psi = bell_vector();
    const CMatrix m = p * (psi * psi.adjoint()) + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0;
    return BipartiteState(DensityMatrix(m), {2, 2});
}

BipartiteState max_entangled(int d) {
    if (d < 2) throw Error(ErrorCode::InvalidDimension, "max-entangled state needs d >= 2");
    CVector psi = CVector::Zero(d * d);
    for (int k = 0; k < d; ++k) psi(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));
    return BipartiteState(DensityMatrix::pure(psi), {d, d});
}

BipartiteState classically_correlated() {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = 0.5;
    return BipartiteState(DensityMatrix(m), {2, 2});
}

BipartiteState product(const DensityMatrix& a, const DensityMatrix& b) {
    return BipartiteState(tensor(a, b), {a.dim(), b.dim()});
}

}  // namespace states

}  // namespace densecap
