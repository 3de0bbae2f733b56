#include "densecap_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string_view>
#include <thread>

namespace densecap::cli {

int SweepRange::points() const {
    return static_cast<int>(std::floor((p1 - p0) / step + 1e-9)) + 1;
}

double SweepRange::at(int i) const {
    return std::min(p0 + i * step, p1);
}

SweepRange parse_sweep(const std::string& text) {
    double v[3];
    std::string_view rest = text;
    for (int k = 0; k < 3; ++k) {
        const auto colon = rest.find(':');
        if ((k < 2) == (colon == std::string_view::npos)) {
            throw CliError(kExitParseError, "--sweep expects p0:p1:step, got '" + text + "'");
        }
        const auto field = rest.substr(0, colon);
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v[k]);
        if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v[k])) {
            throw CliError(kExitParseError, "--sweep: bad number '" + std::string(field) + "'");
        }
        rest = colon == std::string_view::npos ? std::string_view() : rest.substr(colon + 1);
    }
    if (!(v[2] > 0.0) || v[1] < v[0]) throw CliError(kExitParseError, "--sweep needs p0 <= p1 and step > 0");
    const SweepRange r{v[0], v[1], v[2]};
    if (r.points() > 100000) throw CliError(kExitParseError, "--sweep has more than 100000 points");
    return r;
}

void RunConfig::validate() const {
    auto fail = [](const std::string& what) { throw CliError(kExitParseError, what); };
    if (d && (*d < 2 || *d > 6)) fail("--d must be in 2..6");
    if (trials < 1) fail("--trials must be >= 1");
    if (samples < 1) fail("--samples must be >= 1");
    if (!(tol > 0.0) || !std::isfinite(tol)) fail("--tol must be positive");
    if (restarts < 1) fail("--restarts must be >= 1");
    if (basis != 'x' && basis != 'y' && basis != 'z') fail("--basis must be x, y or z");
    if (threads < 1) fail("thread count must be >= 1");
    if (sweep && command != Command::Capacity && command != Command::Entanglement) {
        fail("--sweep applies to capacity and entanglement");
    }
}

int thread_budget() {
    int n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("DENSECAP_THREADS")) {
        const std::string_view s(env);
        int cap = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
        if (ec == std::errc() && ptr == s.data() + s.size() && cap > 0) n = std::min(n, cap);
    }
    return n;
}

}  // namespace densecap::cli
