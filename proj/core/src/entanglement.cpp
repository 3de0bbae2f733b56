#include "densecap/entanglement.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

#include "densecap/random.hpp"

namespace densecap {
namespace {

constexpr double kRankFloor = 1e-12;
constexpr double kUnitNormTol = 1e-12;

// Entropy (bits) of the smaller marginal of an unnormalized pure vector, and
// its squared norm. The vector is read as a d_A x d_B row-major array.
struct MarginalEntropy {
    double weight;
    double entropy;
};

MarginalEntropy marginal_entropy(const Complex* psi, Dims dims) {
    const int n = dims.joint();
    double weight = 0.0;
    for (int i = 0; i < n; ++i) weight += std::norm(psi[i]);
    if (weight <= 1e-300) return {0.0, 0.0};

    const bool keep_a = dims.a <= dims.b;
    const int small = keep_a ? dims.a : dims.b;
    const int large = keep_a ? dims.b : dims.a;
    if (small == 1) return {weight, 0.0};
    auto at = [&](int s, int l) { return keep_a ? psi[s * dims.b + l] : psi[l * dims.b + s]; };

    if (small == 2) {
        double r00 = 0.0;
        double r11 = 0.0;
        Complex r01 = 0.0;
        for (int l = 0; l < large; ++l) {
            const Complex x = at(0, l);
            const Complex y = at(1, l);
            r00 += std::norm(x);
            r11 += std::norm(y);
            r01 += x * std::conj(y);
        }
        const double tr = r00 + r11;
        const double det = std::max(0.0, r00 * r11 - std::norm(r01));
        const double disc = std::sqrt(std::max(0.0, (r00 - r11) * (r00 - r11) + 4.0 * std::norm(r01)));
        const double hi = 0.5 * (tr + disc);
        const double lo = hi > 0.0 ? det / hi : 0.0;
        const double ev[2] = {hi / tr, lo / tr};
        return {weight, entropy_bits(ev)};
    }

    CMatrix reduced = CMatrix::Zero(small, small);
    for (int i = 0; i < small; ++i)
        for (int j = 0; j < small; ++j)
            for (int l = 0; l < large; ++l) reduced(i, j) += at(i, l) * std::conj(at(j, l));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(reduced / weight, Eigen::EigenvaluesOnly);
    const RVector& ev = es.eigenvalues();
    return {weight, entropy_bits(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())))};
}

// Weighted cost p * (S_A + S_B) of an unnormalized term.
double term_cost(const Complex* psi, Dims dims) {
    const MarginalEntropy m = marginal_entropy(psi, dims);
    return 2.0 * m.weight * m.entropy;
}

struct Spectral {
    CMatrix scaled;  // n x r, columns sqrt(lambda_i) |e_i>
    int rank = 0;
};

Spectral spectral_factor(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
    const RVector& vals = es.eigenvalues();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = vals.size() - 1; i >= 0; --i)
        if (vals(i) > kRankFloor) keep.push_back(i);
    Spectral out;
    out.rank = static_cast<int>(keep.size());
    out.scaled.resize(rho.dim(), out.rank);
    for (int k = 0; k < out.rank; ++k) {
        out.scaled.col(k) = std::sqrt(vals(keep[static_cast<std::size_t>(k)])) * es.eigenvectors().col(keep[static_cast<std::size_t>(k)]);
    }
    return out;
}

// Coordinate descent over pairwise Givens mixings of the columns of `terms`
// (n x m, unnormalized decomposition vectors). Every move is unitary on the
// pair, so sum_k |psi~_k><psi~_k| is invariant.
class PairDescent {
public:
    PairDescent(CMatrix terms, Dims dims) : terms_(std::move(terms)), dims_(dims), cost_(terms_.cols()) {
        for (Eigen::Index k = 0; k < terms_.cols(); ++k) cost_[static_cast<std::size_t>(k)] = term_cost(terms_.col(k).data(), dims_);
        a_.resize(terms_.rows());
        b_.resize(terms_.rows());
    }

    double total() const {
        double t = 0.0;
        for (double c : cost_) t += c;
        return t;
    }

    const CMatrix& terms() const { return terms_; }

    /// Returns true if a sweep gained less than tol before max_sweeps.
    bool run(double tol, int max_sweeps) {
        const auto m = terms_.cols();
        if (m < 2) return true;
        double current = total();
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = i + 1; j < m; ++j) optimize_pair(i, j);
            const double next = total();
            const double gain = current - next;
            current = next;
            if (gain < tol) return true;
        }
        return false;
    }

private:
    // Mixing with (u, v) = theta (cos phi, sin phi):
    //   a' =  cos(theta) a + e^{i phi} sin(theta) b
    //   b' = -e^{-i phi} sin(theta) a + cos(theta) b
    // Cartesian (u, v) keeps the identity at the origin non-degenerate.
    double mixed_cost(Eigen::Index i, Eigen::Index j, double u, double v) {
        const double theta = std::hypot(u, v);
        const double phi = std::atan2(v, u);
        const double c = std::cos(theta);
        const Complex s = std::polar(std::sin(theta), phi);
        a_ = c * terms_.col(i) + s * terms_.col(j);
        b_ = -std::conj(s) * terms_.col(i) + c * terms_.col(j);
        return term_cost(a_.data(), dims_) + term_cost(b_.data(), dims_);
    }

    void optimize_pair(Eigen::Index i, Eigen::Index j) {
        const double base = cost_[static_cast<std::size_t>(i)] + cost_[static_cast<std::size_t>(j)];
        double best = base;
        double u = 0.0;
        double v = 0.0;
        constexpr double kInitialStep = 0.4;
        constexpr double kFinalStep = 1e-5;
        static constexpr double kDirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                               {0.7071067811865476, 0.7071067811865476},
                                               {-0.7071067811865476, -0.7071067811865476},
                                               {0.7071067811865476, -0.7071067811865476},
                                               {-0.7071067811865476, 0.7071067811865476}};
        for (double step = kInitialStep; step > kFinalStep;) {
            bool improved = false;
            for (const auto& d : kDirs) {
                const double cu = u + step * d[0];
                const double cv = v + step * d[1];
                const double val = mixed_cost(i, j, cu, cv);
                if (val < best - 1e-15) {
                    best = val;
                    u = cu;
                    v = cv;
                    improved = true;
                    break;
                }
            }
            if (!improved) step *= 0.5;
        }
        if (best < base) {
            mixed_cost(i, j, u, v);
            terms_.col(i) = a_;
            terms_.col(j) = b_;
            cost_[static_cast<std::size_t>(i)] = term_cost(a_.data(), dims_);
            cost_[static_cast<std::size_t>(j)] = term_cost(b_.data(), dims_);
        }
    }

    CMatrix terms_;
    Dims dims_;
    std::vector<double> cost_;
    CVector a_;
    CVector b_;
};

Decomposition to_decomposition(const CMatrix& terms, Dims dims) {
    std::vector<double> weights;
    std::vector<CVector> vectors;
    for (Eigen::Index k = 0; k < terms.cols(); ++k) {
        const double w = terms.col(k).squaredNorm();
        if (w <= 1e-15) continue;
        weights.push_back(w);
        vectors.emplace_back(terms.col(k) / std::sqrt(w));
    }
    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
    return Decomposition(dims, std::move(weights), std::move(vectors));
}

struct RestartOutcome {
    double value = std::numeric_limits<double>::infinity();
    CMatrix terms;
    bool converged = false;
};

}  // namespace

Decomposition::Decomposition(Dims dims, std::vector<double> weights, std::vector<CVector> vectors)
    : dims_(dims), weights_(std::move(weights)), vectors_(std::move(vectors)) {
    if (weights_.size() != vectors_.size() || weights_.empty()) {
        throw Error(ErrorCode::InvalidState, "decomposition needs one weight per vector");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
        if (vectors_[k].size() != dims_.joint()) {
            throw Error(ErrorCode::SplitMismatch, "vector " + std::to_string(k) + " has length " +
                                                      std::to_string(vectors_[k].size()) + ", split is " +
                                                      std::to_string(dims_.a) + "x" + std::to_string(dims_.b));
        }
        if (std::abs(vectors_[k].norm() - 1.0) > kUnitNormTol) {
            throw Error(ErrorCode::InvalidState, "vector " + std::to_string(k) + " is not unit norm");
        }
        if (!(weights_[k] >= 0.0)) throw Error(ErrorCode::InvalidState, "weights must be non-negative");
        total += weights_[k];
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::InvalidState, "weights do not sum to 1");
}

CMatrix Decomposition::mixture() const {
    CMatrix out = CMatrix::Zero(dims_.joint(), dims_.joint());
    for (std::size_t k = 0; k < weights_.size(); ++k) out += weights_[k] * (vectors_[k] * vectors_[k].adjoint());
    return out;
}

double binary_entropy(double x) noexcept {
    const double ev[2] = {x, 1.0 - x};
    return entropy_bits(ev);
}

double pure_state_correlation(const CVector& psi, Dims dims) {
    if (psi.size() != dims.joint()) throw Error(ErrorCode::SplitMismatch, "vector length does not match the split");
    return 2.0 * marginal_entropy(psi.data(), dims).entropy;
}

double decomposition_cost(const Decomposition& d) {
    double total = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) total += d.weights()[k] * pure_state_correlation(d.vectors()[k], d.dims());
    return total;
}

ConvexRoofResult convex_roof(const BipartiteState& s, const ConvexRoofOptions& options) {
    const Spectral spectral = spectral_factor(s.joint());
    const int r = spectral.rank;
    const int m = options.cardinality > 0 ? options.cardinality : std::min(r * r, 2 * r);
    if (m < r) {
        throw Error(ErrorCode::RankTooLarge,
                    "cardinality " + std::to_string(m) + " is below the state rank " + std::to_string(r));
    }
    const int restarts = std::max(1, options.restarts);
    const int n = s.dims().joint();

    auto run_restart = [&](int index) {
        CMatrix terms = CMatrix::Zero(n, m);
        if (index == 0) {
            terms.leftCols(r) = spectral.scaled;
        } else {
            Engine rng(CounterRng::stream(options.seed, static_cast<std::uint64_t>(index))());
            const CMatrix u = random_unitary(m, rng);
            // psi~_k = sum_i V_ki sqrt(lambda_i) |e_i>  with V = first r columns of u.
            terms = spectral.scaled * u.leftCols(r).transpose();
        }
        PairDescent descent(std::move(terms), s.dims());
        RestartOutcome out;
        out.converged = descent.run(options.tol, options.max_sweeps);
        out.value = descent.total();
        out.terms = descent.terms();
        return out;
    };

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
    int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, restarts);
    if (threads == 1) {
        for (int k = 0; k < restarts; ++k) outcomes[static_cast<std::size_t>(k)] = run_restart(k);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (int k = next++; k < restarts; k = next++) outcomes[static_cast<std::size_t>(k)] = run_restart(k);
            });
        }
        for (auto& th : pool) th.join();
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < outcomes.size(); ++k)
        if (outcomes[k].value < outcomes[best].value) best = k;

    double spectral_cost = 0.0;
    for (int k = 0; k < r; ++k) spectral_cost += term_cost(spectral.scaled.col(k).data(), s.dims());

    std::vector<double> values;
    values.reserve(outcomes.size());
    for (const auto& o : outcomes) values.push_back(o.value);

    return ConvexRoofResult{outcomes[best].value,
                            to_decomposition(outcomes[best].terms, s.dims()),
                            restarts,
                            outcomes[best].converged,
                            spectral_cost,
                            std::move(values)};
}

ConcurrenceOracle concurrence_oracle(const BipartiteState& s) {
    if (s.dims().a != 2 || s.dims().b != 2) {
        throw Error(ErrorCode::DimensionUnsupported, "the concurrence formula applies to two qubits only");
    }
    const CMatrix& rho = s.joint().matrix();
    const CMatrix yy = kron(pauli(2), pauli(2));
    const CMatrix flipped = yy * rho.conjugate() * yy;

    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    const RVector sqrt_vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const CMatrix root = es.eigenvectors() * sqrt_vals.asDiagonal() * es.eigenvectors().adjoint();
    CMatrix r = root * flipped * root;
    r = (r + r.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> rs(r, Eigen::EigenvaluesOnly);
    RVector mu = rs.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(mu.data(), mu.data() + mu.size(), std::greater<>());

    ConcurrenceOracle out;
    out.concurrence = std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
    out.formation = out.concurrence > 0.0
                        ? binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - out.concurrence * out.concurrence))))
                        : 0.0;
    return out;
}

}  // namespace densecap
