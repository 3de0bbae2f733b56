#include "densecap_cli/state_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "densecap_cli/config.hpp"

namespace densecap::cli {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw CliError(kExitParseError, what); }

double to_double(std::string_view s, std::string_view context) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        parse_error(std::string(context) + ": bad number '" + std::string(s) + "'");
    }
    return v;
}

std::vector<double> number_list(std::string_view s, std::size_t n, std::string_view context) {
    std::vector<double> out;
    while (true) {
        const auto comma = s.find(',');
        out.push_back(to_double(s.substr(0, comma), context));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    if (out.size() != n) parse_error(std::string(context) + ": expected " + std::to_string(n) + " numbers");
    return out;
}

BlochVector bloch_from(const std::vector<double>& v, std::size_t offset) {
    return {v[offset], v[offset + 1], v[offset + 2]};
}

LoadedState from_bipartite(const BipartiteState& s) { return {s.joint(), s.dims()}; }

std::optional<Dims> default_split(int dim) {
    const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
    if (dim >= 4 && root * root == dim) return Dims{root, root};
    return std::nullopt;
}

}  // namespace

BipartiteState LoadedState::as_bipartite() const {
    if (!dims) throw CliError(kExitInvalidState, "command needs a two-party state");
    return BipartiteState(rho, *dims);
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) parse_error("matrix must be a non-empty array of rows");
    const auto rows = j.size();
    const auto cols = j[0].is_array() ? j[0].size() : 0;
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) parse_error("matrix rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c) {
            const json& z = j[r][c];
            if (z.is_number()) {
                m(r, c) = z.get<double>();
            } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
                m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
            } else {
                parse_error("matrix entries must be numbers or [re, im] pairs");
            }
        }
    }
    return m;
}

json vector_to_json(const CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
    return out;
}

LoadedState state_from_json(const json& j) {
    if (!j.is_object()) parse_error("state must be a JSON object");
    if (j.contains("bloch")) {
        const json& b = j["bloch"];
        if (!b.is_array() || b.size() != 3 || !b[0].is_number() || !b[1].is_number() || !b[2].is_number()) {
            parse_error("\"bloch\" must be [x, y, z]");
        }
        return {from_bloch({b[0].get<double>(), b[1].get<double>(), b[2].get<double>()}), std::nullopt};
    }
    if (j.contains("tensor")) {
        const json& t = j["tensor"];
        if (!t.is_object() || !t.contains("a") || !t.contains("b")) parse_error("\"tensor\" needs \"a\" and \"b\"");
        const LoadedState a = state_from_json(t["a"]);
        const LoadedState b = state_from_json(t["b"]);
        return {tensor(a.rho, b.rho), Dims{a.rho.dim(), b.rho.dim()}};
    }
    if (!j.contains("matrix")) parse_error("state needs \"matrix\", \"bloch\" or \"tensor\"");
    const CMatrix m = matrix_from_json(j["matrix"]);
    if (j.contains("dim") && (!j["dim"].is_number_integer() || j["dim"].get<long>() != m.rows())) {
        parse_error("\"dim\" does not match the matrix");
    }
    if (m.rows() != m.cols()) throw CliError(kExitInvalidState, "density matrix must be square");
    std::optional<Dims> dims = default_split(static_cast<int>(m.rows()));
    if (j.contains("dims")) {
        const json& d = j["dims"];
        if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer()) {
            parse_error("\"dims\" must be [d_A, d_B]");
        }
        dims = Dims{d[0].get<int>(), d[1].get<int>()};
        if (dims->a < 1 || dims->b < 1 || dims->joint() != m.rows()) {
            throw CliError(kExitInvalidState, "\"dims\" does not factor the matrix dimension");
        }
    }
    return {DensityMatrix(m), dims};
}

json state_to_json(const LoadedState& s) {
    json j{{"dim", s.rho.dim()}, {"matrix", matrix_to_json(s.rho.matrix())}};
    if (s.dims) j["dims"] = {s.dims->a, s.dims->b};
    return j;
}

std::optional<LoadedState> named_state(std::string_view source) {
    const auto colon = source.find(':');
    const std::string_view name = source.substr(0, colon);
    const std::string_view args = colon == std::string_view::npos ? std::string_view() : source.substr(colon + 1);
    const bool has_args = colon != std::string_view::npos;
    auto no_args = [&] {
        if (has_args) parse_error("state '" + std::string(name) + "' takes no parameters");
    };

    if (name == "bell") {
        no_args();
        return from_bipartite(states::bell());
    }
    if (name == "separable") {
        no_args();
        return from_bipartite(states::classically_correlated());
    }
    if (name == "werner") {
        return from_bipartite(states::werner(number_list(args, 1, "werner:p")[0]));
    }
    if (name == "max-entangled") {
        const double d = number_list(args, 1, "max-entangled:d")[0];
        if (d != std::floor(d) || d < 2 || d > 16) parse_error("max-entangled:d needs an integer d in 2..16");
        return from_bipartite(states::max_entangled(static_cast<int>(d)));
    }
    if (name == "bloch") {
        return LoadedState{from_bloch(bloch_from(number_list(args, 3, "bloch:x,y,z"), 0)), std::nullopt};
    }
    if (name == "product-bloch") {
        const auto v = number_list(args, 6, "product-bloch:x1,y1,z1,x2,y2,z2");
        return from_bipartite(states::product(from_bloch(bloch_from(v, 0)), from_bloch(bloch_from(v, 3))));
    }
    return std::nullopt;
}

LoadedState load_state(const std::string& source) {
    if (auto s = named_state(source)) return *std::move(s);
    return state_from_json(parse_json(read_file(source)));
}

EncodingEnsemble ensemble_from_json(const json& j) {
    if (!j.is_object() || !j.contains("unitaries") || !j["unitaries"].is_array()) {
        parse_error("ensemble needs a \"unitaries\" array");
    }
    std::vector<CMatrix> unitaries;
    for (const json& u : j["unitaries"]) unitaries.push_back(matrix_from_json(u));
    if (unitaries.empty()) throw CliError(kExitInvalidState, "ensemble has no unitaries");
    const int dim = j.contains("dim") ? j["dim"].get<int>() : static_cast<int>(unitaries.front().rows());
    if (!j.contains("prior")) return EncodingEnsemble(dim, std::move(unitaries));
    return EncodingEnsemble(dim, std::move(unitaries), j["prior"].get<std::vector<double>>());
}

json ensemble_to_json(const EncodingEnsemble& e) {
    json unitaries = json::array();
    for (const auto& u : e.unitaries()) unitaries.push_back(matrix_to_json(u));
    return {{"dim", e.dim()}, {"unitaries", std::move(unitaries)}, {"prior", e.prior()}};
}

json trace_to_json(const ProtocolTrace& t) {
    return {{"trials", t.trials}, {"counts", t.counts}, {"empirical_mi", t.empirical_mi}, {"seed", t.seed}};
}

std::string trace_to_csv(const ProtocolTrace& t) {
    std::ostringstream os;
    const std::size_t outcomes = t.counts.empty() ? 0 : t.counts.front().size();
    os << "message";
    for (std::size_t b = 0; b < outcomes; ++b) os << ",outcome_" << b;
    os << '\n';
    for (std::size_t a = 0; a < t.counts.size(); ++a) {
        os << a;
        for (const auto c : t.counts[a]) os << ',' << c;
        os << '\n';
    }
    return os.str();
}

json roof_to_json(const ConvexRoofResult& r, bool with_decomposition) {
    json j{{"value", r.value}, {"restarts_used", r.restarts_used}, {"converged", r.converged}};
    if (with_decomposition) {
        json vectors = json::array();
        for (const auto& v : r.decomposition.vectors()) vectors.push_back(vector_to_json(v));
        j["decomposition"] = {{"weights", r.decomposition.weights()}, {"vectors", std::move(vectors)}};
    }
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(kExitFileNotFound, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        parse_error(std::string("invalid JSON: ") + e.what());
    }
}

std::string csv_number(double x) {
    if (x == 0.0) x = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace densecap::cli
