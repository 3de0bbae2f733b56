#include "densecap_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include <densecap/capacity.hpp>
#include <densecap/encodings.hpp>
#include <densecap/entanglement.hpp>
#include <densecap/protosim.hpp>
#include <densecap/random.hpp>

#include "densecap_cli/state_io.hpp"

namespace densecap::cli {

namespace {

// Largest accepted |E - 2 E_F| against the two-qubit closed form.
constexpr double kOracleTolerance = 5e-3;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

const char* direction_name(Direction d) { return d == Direction::AtoB ? "a2b" : "b2a"; }

// Runs f(i) for i in [0, n) on up to `threads` workers; rethrows the first failure.
template <class F>
void parallel_for(int n, int threads, F&& f) {
    threads = std::clamp(threads, 1, std::max(n, 1));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                f(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

void require_werner_family(const RunConfig& c) {
    if (!c.state.empty() && c.state != "werner") {
        throw CliError(kExitParseError, "--sweep runs over the werner family; use --state werner or omit it");
    }
}

BipartiteState werner_point(double p) {
    if (p < -1.0 / 3.0 - 1e-12 || p > 1.0 + 1e-12) {
        throw CliError(kExitInvalidState, "werner parameter " + csv_number(p) + " is outside [-1/3, 1]");
    }
    return states::werner(p);
}

EncodingEnsemble pair_x() { return EncodingEnsemble(2, {pauli(0), pauli(1)}); }

EncodingEnsemble resolve_ensemble(const std::string& source, int d) {
    if (source.empty()) return d == 2 ? canonical_qubit_set(OrthonormalFrame::standard()) : weyl_set(d);
    if (source == "weyl") return weyl_set(d);
    if (source == "canonical" || source == "pair") {
        if (d != 2) throw CliError(kExitParseError, "ensemble '" + source + "' is a qubit ensemble");
        return source == "pair" ? pair_x() : canonical_qubit_set(OrthonormalFrame::standard());
    }
    const EncodingEnsemble e = ensemble_from_json(parse_json(read_file(source)));
    if (e.dim() != d) throw CliError(kExitParseError, "ensemble dimension does not match the state");
    return e;
}

struct CapacityRow {
    double c_normal = 0.0;
    double c_dense_ab = 0.0;
    double c_dense_ba = 0.0;
    double mutual_info = 0.0;
    double residual = 0.0;
};

CapacityRow capacity_row(const BipartiteState& s, Direction direction) {
    CapacityRow r;
    r.c_normal = normal_capacity(s.reduced(sender_of(direction)));
    r.c_dense_ab = dense_capacity(s, Direction::AtoB);
    r.c_dense_ba = dense_capacity(s, Direction::BtoA);
    r.mutual_info = mutual_information(s);
    r.residual = std::max(std::abs(r.c_dense_ab - normal_capacity(s.reduced_a()) - r.mutual_info),
                          std::abs(r.c_dense_ba - normal_capacity(s.reduced_b()) - r.mutual_info));
    return r;
}

json optimizer_record(const CapacityReport& r) {
    return {{"chi", r.chi}, {"prior", r.optimal_prior}, {"iterations", r.iterations}, {"converged", r.converged}};
}

CommandOutput capacity_sweep(const RunConfig& c) {
    require_werner_family(c);
    const int n = c.sweep->points();
    std::vector<CapacityRow> rows(n);
    parallel_for(n, c.threads, [&](int i) { rows[i] = capacity_row(werner_point(c.sweep->at(i)), c.direction); });

    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.residual);
    CommandOutput out;
    out.pass = worst <= c.tol;
    if (c.format == Format::Csv) {
        std::ostringstream os;
        os << "param,c_normal,c_dense_ab,c_dense_ba,mutual_info\n";
        for (int i = 0; i < n; ++i) {
            const auto& r = rows[i];
            os << csv_number(c.sweep->at(i)) << ',' << csv_number(r.c_normal) << ',' << csv_number(r.c_dense_ab)
               << ',' << csv_number(r.c_dense_ba) << ',' << csv_number(r.mutual_info) << '\n';
        }
        out.text = os.str();
        return out;
    }
    json table = json::array();
    for (int i = 0; i < n; ++i) {
        const auto& r = rows[i];
        table.push_back({{"param", c.sweep->at(i)},
                         {"c_normal", r.c_normal},
                         {"c_dense_ab", r.c_dense_ab},
                         {"c_dense_ba", r.c_dense_ba},
                         {"mutual_info", r.mutual_info}});
    }
    out.text = dump({{"family", "werner"},
                     {"direction", direction_name(c.direction)},
                     {"rows", std::move(table)},
                     {"max_identity_residual", worst},
                     {"tol", c.tol},
                     {"pass", out.pass}});
    return out;
}

// Holevo optimum of a single system fed through the chosen ensemble.
CommandOutput capacity_single(const RunConfig& c, const LoadedState& loaded) {
    const auto e = resolve_ensemble(c.ensemble, loaded.rho.dim());
    std::vector<DensityMatrix> signals;
    for (const auto& u : e.unitaries()) signals.emplace_back(u * loaded.rho.matrix() * u.adjoint());
    const auto report = optimize_prior(signals);
    const double c_normal = normal_capacity(loaded.rho);

    CommandOutput out;
    out.pass = report.converged && report.chi <= c_normal + c.tol;
    if (c.format == Format::Csv) {
        out.text = "c_normal,chi,iterations,converged\n" + csv_number(c_normal) + ',' + csv_number(report.chi) + ',' +
                   std::to_string(report.iterations) + ',' + (report.converged ? "true" : "false") + '\n';
        return out;
    }
    out.text = dump({{"state", c.state},
                     {"dim", loaded.rho.dim()},
                     {"c_normal", c_normal},
                     {"optimizer", optimizer_record(report)},
                     {"tol", c.tol},
                     {"pass", out.pass}});
    return out;
}

struct VerifyCheck {
    const char* name;
    double residual;
    bool pass;
};

}  // namespace

CommandOutput cmd_capacity(const RunConfig& c) {
    if (c.sweep) return capacity_sweep(c);
    const std::string source = c.state.empty() ? "bell" : c.state;
    const LoadedState loaded = load_state(source);
    if (!loaded.bipartite()) return capacity_single(c, loaded);

    const BipartiteState s = loaded.as_bipartite();
    const CapacityRow r = capacity_row(s, c.direction);
    const DenseCrossCheck check = dense_capacity_crosscheck(s, c.direction);

    CommandOutput out;
    out.pass = r.residual <= c.tol && check.optimized.converged && check.deviation <= check.optimized.gap + c.tol;
    if (c.format == Format::Csv) {
        out.text = "c_normal,c_dense_ab,c_dense_ba,mutual_info,identity_residual\n" + csv_number(r.c_normal) + ',' +
                   csv_number(r.c_dense_ab) + ',' + csv_number(r.c_dense_ba) + ',' + csv_number(r.mutual_info) +
                   ',' + csv_number(r.residual) + '\n';
        return out;
    }
    json optimizer = optimizer_record(check.optimized);
    optimizer["deviation"] = check.deviation;
    out.text = dump({{"state", source},
                     {"dims", {s.dims().a, s.dims().b}},
                     {"direction", direction_name(c.direction)},
                     {"c_normal", r.c_normal},
                     {"c_dense_ab", r.c_dense_ab},
                     {"c_dense_ba", r.c_dense_ba},
                     {"mutual_info", r.mutual_info},
                     {"identity_residual", r.residual},
                     {"optimizer", std::move(optimizer)},
                     {"tol", c.tol},
                     {"pass", out.pass}});
    return out;
}

CommandOutput cmd_verify(const RunConfig& c) {
    int d = c.d.value_or(2);
    EncodingEnsemble e = [&] {
        if (c.ensemble.empty() || c.ensemble == "weyl" || c.ensemble == "canonical" || c.ensemble == "pair") {
            return resolve_ensemble(c.ensemble, d);
        }
        EncodingEnsemble loaded = ensemble_from_json(parse_json(read_file(c.ensemble)));
        if (c.d && *c.d != loaded.dim()) throw CliError(kExitParseError, "--d does not match the ensemble file");
        return loaded;
    }();
    d = e.dim();
    if (d < 2 || d > 6) throw CliError(kExitParseError, "verify supports d in 2..6");

    Engine rng(c.seed);
    const CMatrix mixed = CMatrix::Identity(d, d) / static_cast<double>(d);
    double twirl_residual = 0.0;
    for (int i = 0; i < c.samples; ++i) {
        twirl_residual = std::max(twirl_residual, (twirl(e, random_density_matrix(d, rng).matrix()) - mixed).norm());
    }

    const GramCheck gram = verify_orthogonality(e);

    // Dense capacity reached by the lifted ensemble versus C_normal + I(A;B).
    const Dims dims{d, d};
    const EncodingEnsemble on_a = lift_to_sender(e, dims, Subsystem::A);
    const EncodingEnsemble on_b = lift_to_sender(e, dims, Subsystem::B);
    double identity_residual = 0.0;
    for (int i = 0; i < c.samples; ++i) {
        const BipartiteState s = random_bipartite(dims, rng);
        const double mi = mutual_information(s);
        identity_residual = std::max(
            {identity_residual, std::abs(holevo_chi(on_a, s.joint()) - normal_capacity(s.reduced_a()) - mi),
             std::abs(holevo_chi(on_b, s.joint()) - normal_capacity(s.reduced_b()) - mi)});
    }

    const VerifyCheck checks[] = {
        {"twirl", twirl_residual, twirl_residual <= c.tol},
        {"gram", gram.residual, gram.residual <= c.tol},
        {"difference_identity", identity_residual, identity_residual <= c.tol},
    };
    CommandOutput out;
    out.pass = std::all_of(std::begin(checks), std::end(checks), [](const VerifyCheck& k) { return k.pass; });
    if (c.format == Format::Csv) {
        std::ostringstream os;
        os << "check,max_residual,tol,pass\n";
        for (const auto& k : checks) {
            os << k.name << ',' << csv_number(k.residual) << ',' << csv_number(c.tol) << ','
               << (k.pass ? "true" : "false") << '\n';
        }
        out.text = os.str();
        return out;
    }
    json report{{"d", d},
                {"ensemble", c.ensemble.empty() ? (d == 2 ? "canonical" : "weyl") : c.ensemble},
                {"size", e.size()},
                {"samples", c.samples},
                {"seed", c.seed},
                {"tol", c.tol}};
    for (const auto& k : checks) report["checks"][k.name] = {{"max_residual", k.residual}, {"pass", k.pass}};
    report["pass"] = out.pass;
    out.text = dump(report);
    return out;
}

CommandOutput cmd_simulate(const RunConfig& c) {
    ProtocolTrace trace;
    if (c.protocol == Protocol::Classical) {
        ClassicalJointState joint;
        if (c.state == "uniform") {
            joint = ClassicalJointState::uniform();
        } else if (!c.state.empty() && c.state != "correlated") {
            throw CliError(kExitParseError, "classical states are 'correlated' and 'uniform'");
        }
        trace = run_classical_dense(joint, c.key, c.trials, c.seed, c.threads);
    } else {
        const BipartiteState s = load_state(c.state.empty() ? "bell" : c.state).as_bipartite();
        const EncodingEnsemble e =
            c.ensemble.empty() ? dense_encoding(s.dims().a) : resolve_ensemble(c.ensemble, s.dims().a);
        const Decoder decoder = c.single_particle ? Decoder::single_particle_axis(c.basis) : Decoder::bell();
        trace = run_quantum_dense(s, e, decoder, c.trials, c.seed, c.threads);
    }
    return {c.format == Format::Csv ? trace_to_csv(trace) : dump(trace_to_json(trace)), true};
}

CommandOutput cmd_entanglement(const RunConfig& c) {
    ConvexRoofOptions options;
    options.restarts = c.restarts;
    options.seed = c.seed;

    if (c.sweep) {
        require_werner_family(c);
        const int n = c.sweep->points();
        options.threads = 1;
        std::vector<double> value(n), oracle(n);
        parallel_for(n, c.threads, [&](int i) {
            const BipartiteState s = werner_point(c.sweep->at(i));
            value[i] = convex_roof(s, options).value;
            oracle[i] = 2.0 * concurrence_oracle(s).formation;
        });
        CommandOutput out;
        double worst = 0.0;
        for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(value[i] - oracle[i]));
        out.pass = worst < kOracleTolerance;
        if (c.format == Format::Csv) {
            std::ostringstream os;
            os << "param,value,oracle,deviation\n";
            for (int i = 0; i < n; ++i) {
                os << csv_number(c.sweep->at(i)) << ',' << csv_number(value[i]) << ',' << csv_number(oracle[i]) << ','
                   << csv_number(std::abs(value[i] - oracle[i])) << '\n';
            }
            out.text = os.str();
            return out;
        }
        json rows = json::array();
        for (int i = 0; i < n; ++i) {
            rows.push_back({{"param", c.sweep->at(i)}, {"value", value[i]}, {"oracle", oracle[i]}});
        }
        out.text = dump({{"family", "werner"},
                         {"rows", std::move(rows)},
                         {"max_deviation", worst},
                         {"oracle_tol", kOracleTolerance},
                         {"pass", out.pass}});
        return out;
    }

    options.threads = c.threads;
    const std::string source = c.state.empty() ? "bell" : c.state;
    const BipartiteState s = load_state(source).as_bipartite();
    const ConvexRoofResult r = convex_roof(s, options);
    const bool qubits = s.dims() == Dims{2, 2};

    CommandOutput out;
    json report = roof_to_json(r, c.show_decomposition);
    report["state"] = source;
    report["dims"] = {s.dims().a, s.dims().b};
    report["eigendecomposition_cost"] = r.eigendecomposition_cost;
    double deviation = 0.0;
    double twice_formation = 0.0;
    if (qubits) {
        const ConcurrenceOracle o = concurrence_oracle(s);
        twice_formation = 2.0 * o.formation;
        deviation = std::abs(r.value - twice_formation);
        out.pass = deviation < kOracleTolerance;
        report["oracle"] = {{"concurrence", o.concurrence},
                            {"twice_formation", twice_formation},
                            {"deviation", deviation},
                            {"tol", kOracleTolerance},
                            {"pass", out.pass}};
    }
    report["pass"] = out.pass;
    if (c.format == Format::Csv) {
        std::ostringstream os;
        os << "value,restarts_used,converged" << (qubits ? ",oracle,deviation" : "") << '\n';
        os << csv_number(r.value) << ',' << r.restarts_used << ',' << (r.converged ? "true" : "false");
        if (qubits) os << ',' << csv_number(twice_formation) << ',' << csv_number(deviation);
        os << '\n';
        out.text = os.str();
        return out;
    }
    out.text = dump(report);
    return out;
}

CommandOutput run_command(const RunConfig& config) {
    switch (config.command) {
        case Command::Capacity: return cmd_capacity(config);
        case Command::Verify: return cmd_verify(config);
        case Command::Simulate: return cmd_simulate(config);
        case Command::Entanglement: return cmd_entanglement(config);
    }
    throw CliError(kExitParseError, "unknown command");
}

namespace {

ExitCode exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidTrials:
        case ErrorCode::InvalidDimension: return kExitParseError;
        default: return kExitInvalidState;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dense-coding capacities, encoding checks, protocol simulation and convex-roof entanglement."};
    app.name("densecap");
    app.require_subcommand(1);

    RunConfig config;
    int d = 2;
    std::string direction = "a2b", format = "json", sweep, protocol = "quantum", decoder = "bell", key = "on";
    std::string basis = "z";
    CLI::Option* d_option = nullptr;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", config.seed, "RNG seed");
        sub->add_option("--tol", config.tol, "check tolerance")->capture_default_str();
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", config.out, "write the report to this file");
    };

    auto* capacity = app.add_subcommand("capacity", "normal and dense-coding capacities of a state");
    capacity->add_option("--state", config.state, "JSON state file or built-in name");
    capacity->add_option("--direction", direction, "sender to receiver")->check(CLI::IsMember({"a2b", "b2a"}));
    capacity->add_option("--sweep", sweep, "werner parameter grid p0:p1:step");
    capacity->add_option("--ensemble", config.ensemble, "encoding for a single-system state");
    common(capacity);

    auto* verify = app.add_subcommand("verify", "twirl, Gram and capacity-difference checks");
    d_option = verify->add_option("--d", d, "local dimension (2..6)");
    verify->add_option("--ensemble", config.ensemble, "weyl | canonical | pair | JSON file");
    verify->add_option("--samples", config.samples, "random states per check")->capture_default_str();
    common(verify);

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo run of the quantum or classical protocol");
    simulate->add_option("--state", config.state, "JSON state file or built-in name");
    simulate->add_option("--ensemble", config.ensemble, "weyl | canonical | pair | JSON file");
    simulate->add_option("--protocol", protocol)->check(CLI::IsMember({"quantum", "classical"}));
    simulate->add_option("--decoder", decoder)->check(CLI::IsMember({"bell", "single"}));
    simulate->add_option("--basis", basis, "single-particle measurement axis")
        ->check(CLI::IsMember({"x", "y", "z"}));
    simulate->add_option("--key", key, "classical protocol uses the shared bit")
        ->check(CLI::IsMember({"on", "off"}));
    simulate->add_option("--trials", config.trials)->capture_default_str();
    common(simulate);

    auto* entanglement = app.add_subcommand("entanglement", "convex-roof correlation measure");
    entanglement->add_option("--state", config.state, "JSON state file or built-in name");
    entanglement->add_option("--restarts", config.restarts)->capture_default_str();
    entanglement->add_option("--sweep", sweep, "werner parameter grid p0:p1:step");
    entanglement->add_flag("--show-decomposition", config.show_decomposition);
    common(entanglement);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParseError;
    }

    try {
        if (capacity->parsed()) config.command = Command::Capacity;
        if (verify->parsed()) config.command = Command::Verify;
        if (simulate->parsed()) config.command = Command::Simulate;
        if (entanglement->parsed()) config.command = Command::Entanglement;
        if (d_option->count() > 0) config.d = d;
        config.direction = direction == "b2a" ? Direction::BtoA : Direction::AtoB;
        config.format = format == "csv" ? Format::Csv : Format::Json;
        if (!sweep.empty()) config.sweep = parse_sweep(sweep);
        config.protocol = protocol == "classical" ? Protocol::Classical : Protocol::Quantum;
        config.single_particle = decoder == "single";
        config.basis = basis.front();
        config.key = key == "on";
        config.threads = thread_budget();
        config.validate();

        const CommandOutput result = run_command(config);
        if (config.out.empty()) {
            out << result.text;
        } else {
            std::ofstream file(config.out, std::ios::binary);
            if (!file) throw CliError(kExitFileNotFound, "cannot write '" + config.out + "'");
            file << result.text;
        }
        return result.pass ? kExitOk : kExitCheckFailed;
    } catch (const CliError& e) {
        err << "densecap: " << e.what() << '\n';
        return e.code();
    } catch (const Error& e) {
        err << "densecap: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const json::exception& e) {
        err << "densecap: invalid input: " << e.what() << '\n';
        return kExitParseError;
    }
}

}  // namespace densecap::cli
