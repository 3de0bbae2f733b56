#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <densecap/capacity.hpp>

namespace densecap::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitFileNotFound = 2,
    kExitParseError = 3,
    kExitInvalidState = 4,
};

// Failure that ends a run with a specific exit code.
class CliError : public std::runtime_error {
public:
    CliError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ExitCode code() const noexcept { return code_; }

private:
    ExitCode code_;
};

enum class Command { Capacity, Verify, Simulate, Entanglement };
enum class Format { Json, Csv };
enum class Protocol { Quantum, Classical };

/// Inclusive parameter grid p0, p0 + step, ..., up to p1.
struct SweepRange {
    double p0 = 0.0;
    double p1 = 1.0;
    double step = 0.05;
    int points() const;
    double at(int i) const;
};

/// Parses "p0:p1:step"; throws CliError(kExitParseError).
SweepRange parse_sweep(const std::string& text);

struct RunConfig {
    Command command = Command::Capacity;
    std::string state;     ///< path to a JSON state or a built-in name; empty = command default
    std::string ensemble;  ///< weyl | canonical | pair | path; empty = command default
    std::optional<int> d;
    Direction direction = Direction::AtoB;
    std::int64_t trials = 100000;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    std::optional<SweepRange> sweep;
    Format format = Format::Json;
    std::string out;

    int samples = 1000;
    Protocol protocol = Protocol::Quantum;
    bool single_particle = false;
    char basis = 'z';
    bool key = true;
    int restarts = 32;
    bool show_decomposition = false;
    int threads = 1;

    /// Range checks on the numeric parameters; throws CliError(kExitParseError).
    void validate() const;
};

/// Worker count: hardware concurrency, capped by DENSECAP_THREADS when set
/// to a positive integer.
int thread_budget();

}  // namespace densecap::cli
