#include "densecap/encodings.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace densecap {
namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kPriorTol = 1e-12;
constexpr double kFrameTol = 1e-12;
constexpr double kGramTol = 1e-10;

CMatrix dot_sigma(const Eigen::Vector3d& n) {
    return n.x() * pauli(1) + n.y() * pauli(2) + n.z() * pauli(3);
}

}  // namespace

OrthonormalFrame OrthonormalFrame::from_matrix(const Eigen::Matrix3d& r) {
    OrthonormalFrame f;
    f.n1 = r.col(0);
    f.n2 = r.col(1);
    f.n3 = r.col(2);
    return f;
}

void OrthonormalFrame::validate() const {
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
            const double expected = k == l ? 1.0 : 0.0;
            if (std::abs((*this)[k].dot((*this)[l]) - expected) > kFrameTol) {
                throw Error(ErrorCode::FrameNotOrthonormal,
                            "n_" + std::to_string(k + 1) + " . n_" + std::to_string(l + 1) + " != delta");
            }
        }
    }
}

EncodingEnsemble::EncodingEnsemble(int dim, std::vector<CMatrix> unitaries, std::vector<double> prior)
    : dim_(dim), unitaries_(std::move(unitaries)), prior_(std::move(prior)) {
    if (dim_ < 1) throw Error(ErrorCode::InvalidDimension, "ensemble dimension must be positive");
    if (unitaries_.empty()) throw Error(ErrorCode::InvalidEnsemble, "ensemble has no unitaries");
    if (prior_.size() != unitaries_.size()) {
        throw Error(ErrorCode::InvalidEnsemble, "prior has " + std::to_string(prior_.size()) + " entries for " +
                                                    std::to_string(unitaries_.size()) + " unitaries");
    }
    const CMatrix id = CMatrix::Identity(dim_, dim_);
    for (std::size_t a = 0; a < unitaries_.size(); ++a) {
        const CMatrix& u = unitaries_[a];
        if (u.rows() != dim_ || u.cols() != dim_) {
            throw Error(ErrorCode::DimensionMismatch, "unitary " + std::to_string(a) + " has wrong shape");
        }
        if ((u.adjoint() * u - id).cwiseAbs().maxCoeff() > kUnitaryTol) {
            throw Error(ErrorCode::InvalidEnsemble, "matrix " + std::to_string(a) + " is not unitary");
        }
    }
    double total = 0.0;
    for (double p : prior_) {
        if (!(p >= 0.0)) throw Error(ErrorCode::InvalidEnsemble, "prior entries must be non-negative");
        total += p;
    }
    if (std::abs(total - 1.0) > kPriorTol) throw Error(ErrorCode::InvalidEnsemble, "prior does not sum to 1");
}

EncodingEnsemble::EncodingEnsemble(int dim, std::vector<CMatrix> unitaries)
    : EncodingEnsemble(dim, unitaries,
                       std::vector<double>(unitaries.size(), unitaries.empty() ? 0.0 : 1.0 / unitaries.size())) {}

EncodingEnsemble EncodingEnsemble::with_prior(std::vector<double> prior) const {
    return EncodingEnsemble(dim_, unitaries_, std::move(prior));
}

EncodingEnsemble canonical_qubit_set(const OrthonormalFrame& frame) {
    frame.validate();
    return EncodingEnsemble(2, {pauli(0), dot_sigma(frame.n1), dot_sigma(frame.n2), dot_sigma(frame.n3)});
}

EncodingEnsemble antipodal_pair(const BlochVector& v) {
    const Eigen::Vector3d dir = v.vec();
    if (dir.norm() <= tolerance::bloch_norm) return EncodingEnsemble(2, {pauli(0), pauli(1)});

    Eigen::Vector3d axis = dir.cross(Eigen::Vector3d::UnitY());
    if (axis.norm() <= 1e-9 * dir.norm()) axis = dir.cross(Eigen::Vector3d::UnitZ());
    axis.normalize();
    // Fix the sign so the first non-negligible component is positive.
    for (int i = 0; i < 3; ++i) {
        if (std::abs(axis[i]) > 1e-12) {
            if (axis[i] < 0.0) axis = -axis;
            break;
        }
    }
    // A pi-rotation about a unit axis u is u.sigma up to a global phase.
    return EncodingEnsemble(2, {pauli(0), dot_sigma(axis)});
}

OperatorBasis gellmann_basis(int d) {
    if (d < 2) throw Error(ErrorCode::InvalidDimension, "operator basis needs d >= 2");
    OperatorBasis basis;
    basis.dim = d;
    basis.lambdas.reserve(static_cast<std::size_t>(d * d - 1));
    // Standard generalized Gell-Mann matrices have Tr L_a L_b = 2 delta_ab.
    const double scale = std::sqrt(d / 2.0);

    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            CMatrix m = CMatrix::Zero(d, d);
            m(j, k) = m(k, j) = scale;
            basis.lambdas.push_back(std::move(m));
        }
    }
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            CMatrix m = CMatrix::Zero(d, d);
            m(j, k) = Complex(0.0, -scale);
            m(k, j) = Complex(0.0, scale);
            basis.lambdas.push_back(std::move(m));
        }
    }
    for (int l = 1; l < d; ++l) {
        CMatrix m = CMatrix::Zero(d, d);
        const double c = scale * std::sqrt(2.0 / (l * (l + 1.0)));
        for (int k = 0; k < l; ++k) m(k, k) = c;
        m(l, l) = -l * c;
        basis.lambdas.push_back(std::move(m));
    }
    return basis;
}

CMatrix weyl_shift(int d) {
    if (d < 2) throw Error(ErrorCode::InvalidDimension, "Weyl operators need d >= 2");
    CMatrix x = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) x((k + 1) % d, k) = 1.0;
    return x;
}

CMatrix weyl_clock(int d) {
    if (d < 2) throw Error(ErrorCode::InvalidDimension, "Weyl operators need d >= 2");
    CMatrix z = CMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) z(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
    return z;
}

EncodingEnsemble weyl_set(int d) {
    const CMatrix x = weyl_shift(d);
    const CMatrix z = weyl_clock(d);
    std::vector<CMatrix> us;
    us.reserve(static_cast<std::size_t>(d * d));
    CMatrix xp = CMatrix::Identity(d, d);
    for (int p = 0; p < d; ++p) {
        CMatrix u = xp;
        for (int q = 0; q < d; ++q) {
            us.push_back(u);
            u = u * z;
        }
        xp = x * xp;
    }
    return EncodingEnsemble(d, std::move(us));
}

GramCheck verify_orthogonality(const EncodingEnsemble& e) {
    const auto n = static_cast<Eigen::Index>(e.size());
    GramCheck out{CMatrix(n, n), 0.0, false};
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            out.gram(a, b) = (e.unitaries()[static_cast<std::size_t>(a)].adjoint() *
                              e.unitaries()[static_cast<std::size_t>(b)])
                                 .trace() /
                             static_cast<double>(e.dim());
        }
    }
    out.residual = (out.gram - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    out.orthonormal = out.residual <= kGramTol;
    return out;
}

CMatrix twirl(const EncodingEnsemble& e, const CMatrix& op) {
    if (op.rows() != e.dim() || op.cols() != e.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "operator dimension does not match ensemble");
    }
    CMatrix out = CMatrix::Zero(e.dim(), e.dim());
    for (std::size_t a = 0; a < e.size(); ++a) {
        const CMatrix& u = e.unitaries()[a];
        out += e.prior()[a] * (u * op * u.adjoint());
    }
    return out;
}

EncodingEnsemble lift_to_sender(const EncodingEnsemble& e, Dims dims, Subsystem sender) {
    const int sender_dim = sender == Subsystem::A ? dims.a : dims.b;
    if (e.dim() != sender_dim) {
        throw Error(ErrorCode::DimensionMismatch, "ensemble dimension " + std::to_string(e.dim()) +
                                                      " does not match the sender subsystem");
    }
    std::vector<CMatrix> lifted;
    lifted.reserve(e.size());
    for (const CMatrix& u : e.unitaries()) {
        lifted.push_back(sender == Subsystem::A ? kron(u, CMatrix::Identity(dims.b, dims.b))
                                                : kron(CMatrix::Identity(dims.a, dims.a), u));
    }
    return EncodingEnsemble(dims.joint(), std::move(lifted), e.prior());
}

}  // namespace densecap
