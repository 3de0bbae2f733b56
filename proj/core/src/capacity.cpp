#include "densecap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace densecap {
namespace {

// Below this an eigenvalue of the reference state counts as outside its support.
constexpr double kSupportFloor = 1e-300;
constexpr double kWeightFloor = 1e-14;

// -Tr rho log2 sigma given sigma's eigensystem.
double cross_entropy(const CMatrix& rho, const Eigen::SelfAdjointEigenSolver<CMatrix>& sigma) {
    const CMatrix& vecs = sigma.eigenvectors();
    const RVector& vals = sigma.eigenvalues();
    double out = 0.0;
    for (Eigen::Index j = 0; j < vals.size(); ++j) {
        const double weight = (vecs.col(j).adjoint() * rho * vecs.col(j))(0, 0).real();
        if (weight <= kWeightFloor) continue;
        if (vals(j) <= kSupportFloor) return std::numeric_limits<double>::infinity();
        out -= weight * std::log2(vals(j));
    }
    return out;
}

double capped(double d) { return std::min(std::max(d, 0.0), kRelativeEntropyCap); }

void require_same_dim(const DensityMatrix& a, int dim) {
    if (a.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "states have different dimensions");
}

}  // namespace

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(sigma, rho.dim());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma.matrix());
    return capped(cross_entropy(rho.matrix(), es) - von_neumann_entropy(rho));
}

DensityMatrix average_state(const EncodingEnsemble& e, const DensityMatrix& rho) {
    if (rho.dim() != e.dim()) throw Error(ErrorCode::DimensionMismatch, "state and ensemble dimensions differ");
    return DensityMatrix(twirl(e, rho.matrix()));
}

double holevo_chi(const EncodingEnsemble& e, const DensityMatrix& rho) {
    return std::max(0.0, von_neumann_entropy(average_state(e, rho)) - von_neumann_entropy(rho));
}

double holevo_chi(std::span<const DensityMatrix> states, std::span<const double> prior) {
    if (states.empty()) throw Error(ErrorCode::NoStates, "no signal states");
    if (prior.size() != states.size()) throw Error(ErrorCode::DimensionMismatch, "prior length differs from state count");
    const int dim = states.front().dim();
    CMatrix avg = CMatrix::Zero(dim, dim);
    double mean_entropy = 0.0;
    for (std::size_t a = 0; a < states.size(); ++a) {
        require_same_dim(states[a], dim);
        avg += prior[a] * states[a].matrix();
        mean_entropy += prior[a] * von_neumann_entropy(states[a]);
    }
    return std::max(0.0, von_neumann_entropy(DensityMatrix(avg)) - mean_entropy);
}

CapacityReport optimize_prior(std::span<const DensityMatrix> states, const PriorOptions& options) {
    if (states.empty()) throw Error(ErrorCode::NoStates, "no signal states");
    const int dim = states.front().dim();
    for (const auto& s : states) require_same_dim(s, dim);

    const std::size_t n = states.size();
    std::vector<double> entropy(n);
    for (std::size_t a = 0; a < n; ++a) entropy[a] = von_neumann_entropy(states[a]);

    std::vector<double> prior(n, 1.0 / static_cast<double>(n));
    std::vector<double> divergence(n);
    CapacityReport report{0.0, {}, DensityMatrix::maximally_mixed(dim), 0, false, 0.0, {}};

    for (int iter = 0;; ++iter) {
        CMatrix avg = CMatrix::Zero(dim, dim);
        for (std::size_t a = 0; a < n; ++a) avg += prior[a] * states[a].matrix();
        avg = (avg + avg.adjoint()) * 0.5;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(avg);

        const RVector spectrum = es.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
        double chi = entropy_bits(std::span<const double>(spectrum.data(), static_cast<std::size_t>(spectrum.size())));
        for (std::size_t a = 0; a < n; ++a) {
            chi -= prior[a] * entropy[a];
            divergence[a] = capped(cross_entropy(states[a].matrix(), es) - entropy[a]);
        }
        chi = std::max(chi, 0.0);
        if (options.record_history) report.chi_history.push_back(chi);

        const double top = *std::max_element(divergence.begin(), divergence.end());
        report.chi = chi;
        report.gap = std::max(top - chi, 0.0);
        report.iterations = iter;
        if (top - chi < options.tol) {
            report.converged = true;
            report.average_state = DensityMatrix(avg);
            break;
        }
        if (iter >= options.max_iter) {
            report.average_state = DensityMatrix(avg);
            break;
        }

        double z = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            prior[a] *= std::exp2(divergence[a] - top);
            z += prior[a];
        }
        for (double& p : prior) p /= z;
    }
    report.optimal_prior = std::move(prior);
    return report;
}

double normal_capacity(const DensityMatrix& rho) {
    return std::log2(static_cast<double>(rho.dim())) - von_neumann_entropy(rho);
}

double dense_capacity(const BipartiteState& s, Direction direction) {
    const int sender_dim = direction == Direction::AtoB ? s.dims().a : s.dims().b;
    return std::log2(static_cast<double>(sender_dim)) + von_neumann_entropy(s.reduced(receiver_of(direction))) -
           von_neumann_entropy(s.joint());
}

double mutual_information(const BipartiteState& s) {
    return std::max(0.0, von_neumann_entropy(s.reduced_a()) + von_neumann_entropy(s.reduced_b()) -
                             von_neumann_entropy(s.joint()));
}

EncodingEnsemble dense_encoding(int sender_dim) {
    return sender_dim == 2 ? canonical_qubit_set(OrthonormalFrame::standard()) : weyl_set(sender_dim);
}

DenseCrossCheck dense_capacity_crosscheck(const BipartiteState& s, Direction direction, const PriorOptions& options) {
    const Subsystem sender = sender_of(direction);
    const int sender_dim = sender == Subsystem::A ? s.dims().a : s.dims().b;
    const EncodingEnsemble lifted = lift_to_sender(dense_encoding(sender_dim), s.dims(), sender);

    std::vector<DensityMatrix> signals;
    signals.reserve(lifted.size());
    for (const CMatrix& u : lifted.unitaries()) signals.emplace_back(u * s.joint().matrix() * u.adjoint());

    DenseCrossCheck out{dense_capacity(s, direction), optimize_prior(signals, options), 0.0};
    out.deviation = std::abs(out.optimized.chi - out.closed_form);
    return out;
}

}  // namespace densecap
