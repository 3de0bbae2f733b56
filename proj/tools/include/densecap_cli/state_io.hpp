#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include <densecap/encodings.hpp>
#include <densecap/entanglement.hpp>
#include <densecap/protosim.hpp>

namespace densecap::cli {

using nlohmann::json;

/// A state read from the command line: one system, or two with their split.
struct LoadedState {
    DensityMatrix rho;
    std::optional<Dims> dims;

    bool bipartite() const noexcept { return dims.has_value(); }
    /// Throws CliError(kExitInvalidState) for a single-system state.
    BipartiteState as_bipartite() const;
};

// Complex matrices are written row-major as [[[re, im], ...], ...].
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);
json vector_to_json(const CVector& v);

/// {"dim", "matrix", "dims"?} | {"bloch": [x, y, z]} | {"tensor": {"a", "b"}}.
/// A "matrix" state without "dims" is split as sqrt(dim) x sqrt(dim) when
/// dim >= 4 is a perfect square and is a single system otherwise.
LoadedState state_from_json(const json& j);
json state_to_json(const LoadedState& s);

/// bell, separable, werner:p, max-entangled:d, bloch:x,y,z,
/// product-bloch:x1,y1,z1,x2,y2,z2. Returns nullopt for other names and
/// throws CliError(kExitParseError) for a known name with bad parameters.
std::optional<LoadedState> named_state(std::string_view source);

/// Named state if the source names one, otherwise a JSON file.
LoadedState load_state(const std::string& source);

/// {"dim", "unitaries", "prior"?}; a missing prior is uniform.
EncodingEnsemble ensemble_from_json(const json& j);
json ensemble_to_json(const EncodingEnsemble& e);

json trace_to_json(const ProtocolTrace& t);
/// message,outcome_0,...,outcome_{n-1} followed by one row per message.
std::string trace_to_csv(const ProtocolTrace& t);

json roof_to_json(const ConvexRoofResult& r, bool with_decomposition);

/// Whole file as a string; throws CliError(kExitFileNotFound).
std::string read_file(const std::string& path);
json parse_json(const std::string& text);

/// %.12g with '.' as the decimal mark and no negative zero.
std::string csv_number(double x);

}  // namespace densecap::cli
