#include "densecap/protosim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "densecap/random.hpp"

namespace densecap {
namespace {

constexpr double kProbabilityFloor = 1e-15;

std::size_t sample_index(const std::vector<double>& cumulative, double u) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

std::vector<double> cumulative_of(const std::vector<double>& p) {
    std::vector<double> c(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        c[i] = acc;
    }
    // Pin the last positive bin to exactly 1 so u in [0, 1) never falls past it.
    for (std::size_t i = c.size(); i-- > 0;) {
        if (p[i] > 0.0) {
            for (std::size_t k = i; k < c.size(); ++k) c[k] = 1.0;
            break;
        }
    }
    return c;
}

using Table = std::vector<std::vector<std::int64_t>>;

// Runs trials [0, trials) through `one_trial(stream, table)` on `threads`
// workers with contiguous chunks; tables are summed, so the result equals the
// sequential run.
template <typename Trial>
Table run_trials(std::size_t rows, std::size_t cols, std::int64_t trials, std::uint64_t seed, int threads,
                 Trial one_trial) {
    threads = static_cast<int>(std::clamp<std::int64_t>(threads, 1, trials));
    std::vector<Table> partial(static_cast<std::size_t>(threads), Table(rows, std::vector<std::int64_t>(cols, 0)));
    auto work = [&](int t) {
        const std::int64_t begin = trials * t / threads;
        const std::int64_t end = trials * (t + 1) / threads;
        for (std::int64_t i = begin; i < end; ++i) {
            CounterRng rng = CounterRng::stream(seed, static_cast<std::uint64_t>(i));
            one_trial(rng, partial[static_cast<std::size_t>(t)]);
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    Table total(rows, std::vector<std::int64_t>(cols, 0));
    for (const auto& p : partial)
        for (std::size_t a = 0; a < rows; ++a)
            for (std::size_t b = 0; b < cols; ++b) total[a][b] += p[a][b];
    return total;
}

}  // namespace

std::int64_t ProtocolTrace::decoding_errors() const {
    std::int64_t errors = 0;
    for (std::size_t a = 0; a < counts.size(); ++a)
        for (std::size_t b = 0; b < counts[a].size(); ++b)
            if (a != b) errors += counts[a][b];
    return errors;
}

double plugin_mutual_information(const Table& counts) {
    std::int64_t total = 0;
    std::vector<std::int64_t> row(counts.size(), 0);
    std::vector<std::int64_t> col(counts.empty() ? 0 : counts.front().size(), 0);
    for (std::size_t a = 0; a < counts.size(); ++a) {
        for (std::size_t b = 0; b < counts[a].size(); ++b) {
            row[a] += counts[a][b];
            col[b] += counts[a][b];
            total += counts[a][b];
        }
    }
    if (total == 0) return 0.0;
    const double n = static_cast<double>(total);
    double mi = 0.0;
    for (std::size_t a = 0; a < counts.size(); ++a) {
        for (std::size_t b = 0; b < counts[a].size(); ++b) {
            const auto c = counts[a][b];
            if (c == 0) continue;
            mi += (c / n) * std::log2(static_cast<double>(c) * n / (static_cast<double>(row[a]) * col[b]));
        }
    }
    return std::max(0.0, mi);
}

Decoder Decoder::single_particle_axis(char axis) {
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix basis(2, 2);
    switch (axis) {
        case 'x': basis << r, r, r, -r; break;
        case 'y': basis << r, r, Complex(0, r), Complex(0, -r); break;
        case 'z': basis = CMatrix::Identity(2, 2); break;
        default: throw Error(ErrorCode::InvalidDimension, std::string("unknown measurement axis '") + axis + "'");
    }
    return single_particle(std::move(basis));
}

CMatrix bell_basis() {
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix b = CMatrix::Zero(4, 4);
    b(0, 0) = r;  b(3, 0) = r;   // |00> + |11>
    b(1, 1) = r;  b(2, 1) = r;   // |01> + |10>
    b(1, 2) = r;  b(2, 2) = -r;  // |01> - |10>
    b(0, 3) = r;  b(3, 3) = -r;  // |00> - |11>
    return b;
}

std::vector<std::vector<double>> outcome_probabilities(const BipartiteState& s, const EncodingEnsemble& e,
                                                       const Decoder& decoder) {
    const EncodingEnsemble lifted = lift_to_sender(e, s.dims(), Subsystem::A);

    CMatrix basis;
    if (decoder.kind == DecoderKind::Bell) {
        if (s.dims().a != 2 || s.dims().b != 2) {
            throw Error(ErrorCode::DimensionMismatch, "Bell decoding needs a two-qubit state");
        }
        basis = bell_basis();
    } else {
        basis = decoder.basis;
        if (basis.rows() != s.dims().a || basis.cols() != s.dims().a) {
            throw Error(ErrorCode::DimensionMismatch, "single-particle basis does not match the sender system");
        }
        if ((basis.adjoint() * basis - CMatrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff() > 1e-10) {
            throw Error(ErrorCode::InvalidState, "measurement basis is not orthonormal");
        }
    }

    std::vector<std::vector<double>> probs(e.size(), std::vector<double>(static_cast<std::size_t>(basis.cols()), 0.0));
    for (std::size_t a = 0; a < e.size(); ++a) {
        const CMatrix& u = lifted.unitaries()[a];
        CMatrix signal = u * s.joint().matrix() * u.adjoint();
        if (decoder.kind == DecoderKind::SingleParticle) signal = partial_trace(signal, s.dims(), Subsystem::A);
        double total = 0.0;
        for (Eigen::Index b = 0; b < basis.cols(); ++b) {
            double p = (basis.col(b).adjoint() * signal * basis.col(b))(0, 0).real();
            if (p < kProbabilityFloor) p = 0.0;
            probs[a][static_cast<std::size_t>(b)] = p;
            total += p;
        }
        for (double& p : probs[a]) p /= total;
    }
    return probs;
}

ProtocolTrace run_quantum_dense(const BipartiteState& s, const EncodingEnsemble& e, const Decoder& decoder,
                                std::int64_t trials, std::uint64_t seed, int threads) {
    if (trials < 1) throw Error(ErrorCode::InvalidTrials, "trials must be at least 1");
    const auto probs = outcome_probabilities(s, e, decoder);
    const auto message_cdf = cumulative_of(e.prior());
    std::vector<std::vector<double>> outcome_cdf;
    for (const auto& row : probs) outcome_cdf.push_back(cumulative_of(row));

    ProtocolTrace trace;
    trace.trials = trials;
    trace.seed = seed;
    trace.counts = run_trials(e.size(), probs.front().size(), trials, seed, threads,
                              [&](CounterRng& rng, Table& table) {
                                  const std::size_t a = sample_index(message_cdf, rng.uniform());
                                  const std::size_t b = sample_index(outcome_cdf[a], rng.uniform());
                                  ++table[a][b];
                              });
    trace.empirical_mi = plugin_mutual_information(trace.counts);
    return trace;
}

void ClassicalJointState::validate() const {
    double total = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) throw Error(ErrorCode::InvalidDistribution, "probabilities must be non-negative");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::InvalidDistribution, "probabilities must sum to 1");
}

ProtocolTrace run_classical_dense(const ClassicalJointState& s, bool use_key, std::int64_t trials,
                                  std::uint64_t seed, int threads) {
    s.validate();
    if (trials < 1) throw Error(ErrorCode::InvalidTrials, "trials must be at least 1");
    const auto pair_cdf = cumulative_of(std::vector<double>(s.p.begin(), s.p.end()));

    ProtocolTrace trace;
    trace.trials = trials;
    trace.seed = seed;
    trace.counts = run_trials(2, 2, trials, seed, threads, [&](CounterRng& rng, Table& table) {
        const std::size_t pair = sample_index(pair_cdf, rng.uniform());
        const unsigned alice = static_cast<unsigned>(pair >> 1);
        const unsigned bob = static_cast<unsigned>(pair & 1);
        const unsigned message = rng.uniform() < 0.5 ? 0u : 1u;
        const unsigned sent = alice ^ message;
        const unsigned decoded = use_key ? (sent ^ bob) : sent;
        ++table[message][decoded];
    });
    trace.empirical_mi = plugin_mutual_information(trace.counts);
    return trace;
}

}  // namespace densecap
