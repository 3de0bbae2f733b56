#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <densecap_cli/commands.hpp>
#include <densecap_cli/config.hpp>
#include <densecap_cli/state_io.hpp>
#include <densecap/random.hpp>

#include "test_support.hpp"

using namespace densecap;
using namespace densecap::cli;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code = 0) {
    const CliRun r = run(std::move(args));
    EXPECT_EQ(r.code, expected_code) << r.err;
    return json::parse(r.out);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> row;
        std::istringstream fields(line);
        for (std::string f; std::getline(fields, f, ',');) row.push_back(f);
        rows.push_back(row);
    }
    return rows;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("densecap_test_" + name);
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST(CliCapacity, BellStateReachesTwoBits) {
    const json j = run_json({"capacity", "--state", "bell"});
    EXPECT_NEAR(j["c_dense_ab"].get<double>(), 2.0, 1e-12);
    EXPECT_NEAR(j["c_dense_ba"].get<double>(), 2.0, 1e-12);
    EXPECT_NEAR(j["c_normal"].get<double>(), 0.0, 1e-12);
    EXPECT_LT(j["identity_residual"].get<double>(), 1e-9);
    EXPECT_TRUE(j["optimizer"]["converged"].get<bool>());
    EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(CliCapacity, ProductPureStateGainsNothing) {
    const json j = run_json({"capacity", "--state", "product-bloch:0,0,1,1,0,0"});
    EXPECT_NEAR(j["c_dense_ab"].get<double>(), j["c_normal"].get<double>(), 1e-12);
    EXPECT_NEAR(j["mutual_info"].get<double>(), 0.0, 1e-12);
    EXPECT_NEAR(j["c_normal"].get<double>(), 1.0, 1e-12);
}

TEST(CliCapacity, WernerSweepIsMonotoneCsv) {
    const CliRun r = run({"capacity", "--sweep", "0:1:0.05", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 22u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"param", "c_normal", "c_dense_ab", "c_dense_ba", "mutual_info"}));
    double previous = -1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i].size(), 5u);
        EXPECT_NEAR(std::stod(rows[i][0]), 0.05 * double(i - 1), 1e-12);
        const double dense = std::stod(rows[i][2]);
        EXPECT_GT(dense, previous);
        previous = dense;
    }
    EXPECT_NEAR(std::stod(rows[11][2]), 0.451205059, 1e-9);
    EXPECT_NEAR(std::stod(rows.back()[2]), 2.0, 1e-12);
}

TEST(CliCapacity, SweepOutputIndependentOfThreadCount) {
    ::setenv("DENSECAP_THREADS", "1", 1);
    const CliRun one = run({"capacity", "--sweep", "0:1:0.01", "--format", "csv"});
    ::setenv("DENSECAP_THREADS", "4", 1);
    const CliRun four = run({"capacity", "--sweep", "0:1:0.01", "--format", "csv"});
    ::unsetenv("DENSECAP_THREADS");
    EXPECT_EQ(one.out, four.out);
}

TEST(CliCapacity, SingleQubitOptimizerRecord) {
    const json j = run_json({"capacity", "--state", "bloch:0,0,0.6"});
    EXPECT_NEAR(j["c_normal"].get<double>(), 1.0 - densecap::testing::h2(0.8), 1e-12);
    EXPECT_NEAR(j["optimizer"]["chi"].get<double>(), 1.0 - densecap::testing::h2(0.8), 1e-9);
    for (const auto& p : j["optimizer"]["prior"]) EXPECT_NEAR(p.get<double>(), 0.25, 1e-6);
}

TEST(CliCapacity, TwoElementPairOptimumIsHalf) {
    const json j = run_json({"capacity", "--state", "bloch:0.3,-0.2,0.5", "--ensemble", "pair"});
    for (const auto& p : j["optimizer"]["prior"]) EXPECT_NEAR(p.get<double>(), 0.5, 1e-6);
}

TEST(CliCapacity, MatrixJsonStateWithDims) {
    const LoadedState werner{states::werner(0.5).joint(), Dims{2, 2}};
    const auto path = temp_file("werner.json", state_to_json(werner).dump());
    const json j = run_json({"capacity", "--state", path.string()});
    EXPECT_NEAR(j["c_dense_ab"].get<double>(), 0.451205059, 1e-9);
    EXPECT_EQ(j["dims"], json({2, 2}));
}

TEST(CliVerify, QubitCanonicalSetPasses) {
    const json j = run_json({"verify", "--d", "2", "--samples", "1000"});
    EXPECT_LT(j["checks"]["twirl"]["max_residual"].get<double>(), 1e-12);
    EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(CliVerify, QutritWeylGram) {
    const json j = run_json({"verify", "--d", "3", "--samples", "50"});
    EXPECT_EQ(j["size"].get<int>(), 9);
    EXPECT_LT(j["checks"]["gram"]["max_residual"].get<double>(), 1e-12);
    EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(CliVerify, TwoUnitariesCannotTwirl) {
    const json j = run_json({"verify", "--d", "2", "--ensemble", "pair"}, kExitCheckFailed);
    EXPECT_GT(j["checks"]["twirl"]["max_residual"].get<double>(), 0.1);
    EXPECT_FALSE(j["pass"].get<bool>());
}

TEST(CliVerify, EnsembleFile) {
    const auto path = temp_file("weyl4.json", ensemble_to_json(weyl_set(4)).dump());
    const json j = run_json({"verify", "--ensemble", path.string(), "--samples", "20"});
    EXPECT_EQ(j["d"].get<int>(), 4);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(run({"verify", "--d", "3", "--ensemble", path.string()}).code, kExitParseError);
}

TEST(CliVerify, DimensionOutOfRange) {
    EXPECT_EQ(run({"verify", "--d", "7"}).code, kExitParseError);
    EXPECT_EQ(run({"verify", "--d", "1"}).code, kExitParseError);
    EXPECT_EQ(run({"verify", "--samples", "0"}).code, kExitParseError);
}

TEST(CliSimulate, QuantumBellTwoBits) {
    const json j = run_json({"simulate", "--trials", "100000", "--seed", "11"});
    EXPECT_NEAR(j["empirical_mi"].get<double>(), 2.0, 0.02);
    EXPECT_EQ(j["trials"].get<long>(), 100000);
    EXPECT_EQ(j["seed"].get<long>(), 11);
    const auto counts = j["counts"].get<std::vector<std::vector<long>>>();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != b) EXPECT_EQ(counts[a][b], 0);
}

TEST(CliSimulate, ClassicalKeyOnAndOff) {
    const json on = run_json({"simulate", "--protocol", "classical", "--key", "on", "--seed", "5"});
    const json off = run_json({"simulate", "--protocol", "classical", "--key", "off", "--seed", "5"});
    EXPECT_NEAR(on["empirical_mi"].get<double>(), 1.0, 0.01);
    EXPECT_LT(off["empirical_mi"].get<double>(), 0.01);
}

TEST(CliSimulate, CountTableCsv) {
    const CliRun r = run({"simulate", "--decoder", "single", "--basis", "x", "--trials", "1000", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"message", "outcome_0", "outcome_1"}));
    long total = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) total += std::stol(rows[i][1]) + std::stol(rows[i][2]);
    EXPECT_EQ(total, 1000);
}

TEST(CliSimulate, SameSeedSameBytes) {
    ::setenv("DENSECAP_THREADS", "1", 1);
    const CliRun a = run({"simulate", "--trials", "20000", "--seed", "9", "--state", "werner:0.7"});
    ::setenv("DENSECAP_THREADS", "3", 1);
    const CliRun b = run({"simulate", "--trials", "20000", "--seed", "9", "--state", "werner:0.7"});
    ::unsetenv("DENSECAP_THREADS");
    EXPECT_EQ(a.out, b.out);
}

TEST(CliEntanglement, BellIsTwo) {
    const json j = run_json({"entanglement", "--state", "bell"});
    EXPECT_NEAR(j["value"].get<double>(), 2.0, 1e-9);
    EXPECT_FALSE(j.contains("decomposition"));
}

TEST(CliEntanglement, SeparableMixture) {
    const json j = run_json({"entanglement", "--state", "separable"});
    EXPECT_LT(j["value"].get<double>(), 1e-3);
}

TEST(CliEntanglement, WernerAgainstClosedForm) {
    const json j = run_json({"entanglement", "--state", "werner:0.8"});
    EXPECT_NEAR(j["value"].get<double>(), 1.183714814, 5e-3);
    EXPECT_NEAR(j["oracle"]["twice_formation"].get<double>(), 1.183714814, 1e-8);
    EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(CliEntanglement, DecompositionReproducesState) {
    const json j = run_json({"entanglement", "--state", "werner:0.6", "--show-decomposition", "--restarts", "4"});
    const auto& dec = j["decomposition"];
    const auto weights = dec["weights"].get<std::vector<double>>();
    ASSERT_EQ(weights.size(), dec["vectors"].size());
    CMatrix mix = CMatrix::Zero(4, 4);
    for (std::size_t k = 0; k < weights.size(); ++k) {
        CVector v(4);
        for (int i = 0; i < 4; ++i) v(i) = Complex(dec["vectors"][k][i][0], dec["vectors"][k][i][1]);
        mix += weights[k] * v * v.adjoint();
    }
    EXPECT_LT(densecap::testing::frobenius(mix - states::werner(0.6).joint().matrix()), 1e-10);
}

TEST(CliEntanglement, ReportWrittenToFile) {
    const auto path = std::filesystem::temp_directory_path() / "densecap_test_report.json";
    std::filesystem::remove(path);
    const CliRun r = run({"entanglement", "--state", "bell", "--out", path.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    EXPECT_NEAR(json::parse(in)["value"].get<double>(), 2.0, 1e-9);
}

TEST(CliErrors, ExitCodes) {
    EXPECT_EQ(run({"capacity", "--state", "/nonexistent/state.json"}).code, kExitFileNotFound);
    EXPECT_EQ(run({"capacity", "--state", temp_file("broken.json", "{\"matrix\": [[1").string()}).code,
              kExitParseError);
    EXPECT_EQ(run({"capacity", "--state", temp_file("nokey.json", "{\"foo\": 1}").string()}).code,
              kExitParseError);
    EXPECT_EQ(run({"capacity", "--state", "werner:abc"}).code, kExitParseError);
    EXPECT_EQ(run({"capacity", "--sweep", "1:0:0.1"}).code, kExitParseError);
    EXPECT_EQ(run({"capacity", "--direction", "sideways"}).code, kExitParseError);
    EXPECT_EQ(run({"frobnicate"}).code, kExitParseError);
    EXPECT_EQ(run({}).code, kExitParseError);
    EXPECT_EQ(run({"capacity", "--state", temp_file("bloch.json", "{\"bloch\": [1, 1, 0]}").string()}).code,
              kExitInvalidState);
    EXPECT_EQ(run({"capacity", "--state",
                   temp_file("neg.json", "{\"dim\": 2, \"matrix\": [[1.5, 0], [0, -0.5]]}").string()})
                  .code,
              kExitInvalidState);
    EXPECT_EQ(run({"entanglement", "--state", "bloch:0,0,1"}).code, kExitInvalidState);
    EXPECT_EQ(run({"capacity", "--help"}).code, kExitOk);
}

TEST(CliStateIo, TensorAndBlochFormats) {
    const LoadedState s = state_from_json(json::parse(R"({"tensor": {"a": {"bloch": [0, 0, 1]},
                                                                       "b": {"bloch": [0, 0, -1]}}})"));
    ASSERT_TRUE(s.bipartite());
    EXPECT_EQ(*s.dims, (Dims{2, 2}));
    EXPECT_NEAR(std::abs(s.rho.matrix()(1, 1) - 1.0), 0.0, 1e-15);
}

TEST(CliStateIo, MatrixRoundTrip) {
    Engine rng(3);
    const LoadedState s{random_bipartite({2, 3}, rng).joint(), Dims{2, 3}};
    const LoadedState back = state_from_json(json::parse(state_to_json(s).dump()));
    EXPECT_EQ(*back.dims, (Dims{2, 3}));
    EXPECT_LT(densecap::testing::frobenius(back.rho.matrix() - s.rho.matrix()), 1e-15);
}

TEST(CliStateIo, UnsplitMatrixDefaults) {
    const auto four = state_from_json(json{{"matrix", matrix_to_json(CMatrix::Identity(4, 4) / 4.0)}});
    EXPECT_EQ(*four.dims, (Dims{2, 2}));
    const auto three = state_from_json(json{{"matrix", matrix_to_json(CMatrix::Identity(3, 3) / 3.0)}});
    EXPECT_FALSE(three.bipartite());
}

TEST(CliConfig, SweepGrid) {
    const SweepRange r = parse_sweep("0:1:0.05");
    EXPECT_EQ(r.points(), 21);
    EXPECT_EQ(r.at(20), 1.0);
    EXPECT_EQ(parse_sweep("0.2:0.2:0.1").points(), 1);
    EXPECT_THROW(parse_sweep("0:1"), CliError);
    EXPECT_THROW(parse_sweep("0:1:0"), CliError);
    EXPECT_THROW(parse_sweep("0:1:0.1:2"), CliError);
}

TEST(CliConfig, CsvNumbers) {
    EXPECT_EQ(csv_number(0.1234567890123456), "0.123456789012");
    EXPECT_EQ(csv_number(-0.0), "0");
    EXPECT_EQ(csv_number(2.0), "2");
}
