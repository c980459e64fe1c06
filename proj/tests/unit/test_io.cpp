#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hagkit/errors.hpp"
#include "hagkit/io.hpp"
#include "hagkit/parallel.hpp"
#include "support/support.hpp"

namespace hagkit {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "hagkit_unit";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

TEST(ParamsJson, RoundTrip) {
    testing::Rng rng(71);
    const auto ps = testing::random_params(3, rng);
    const auto back = parse_params_json(params_to_json(ps));
    EXPECT_EQ(back.epsilon, ps.epsilon);
    EXPECT_EQ(back.q, ps.q);
    EXPECT_EQ(back.Q, ps.Q);
    EXPECT_EQ(back.P, ps.P);
    EXPECT_EQ(params_hash(back), params_hash(ps));
}

TEST(ParamsJson, MalformedInputsAreIoErrors) {
    EXPECT_THROW(parse_params_json("{"), IoError);
    EXPECT_THROW(parse_params_json(R"({"epsilon": 1, "q": [0], "p": [0]})"), IoError);
    EXPECT_THROW(parse_params_json(R"({"epsilon": 1, "q": [0], "p": [0], "Q": {"re": [[1]]},
                                       "P": {"re": [[0]], "im": [[1]]}})"),
                 IoError);
    EXPECT_THROW(load_params(scratch("does_not_exist.json").string()), IoError);
}

TEST(ParamsJson, LoadsFile) {
    const auto p = scratch("p.json");
    write_file(p, params_to_json(ParameterSet::standard(2, 0.25)));
    const auto ps = load_params(p.string());
    EXPECT_EQ(ps.dim(), 2);
    EXPECT_EQ(ps.epsilon, 0.25);
    EXPECT_TRUE(validate(ps).passed);
}

TEST(Hash, HexFormat) {
    EXPECT_EQ(hash_hex(0xabcULL), "0000000000000abc");
}

TEST(Grid, ParseAndExpand) {
    const auto g = parse_grid("-1:1:3,0:2:2");
    ASSERT_EQ(g.size(), 2u);
    const auto pts = expand_grid(g);
    ASSERT_EQ(pts.size(), 6u);
    EXPECT_EQ(pts[0], (std::vector<double>{-1.0, 0.0}));
    EXPECT_EQ(pts[1], (std::vector<double>{-1.0, 2.0}));
    EXPECT_EQ(pts[5], (std::vector<double>{1.0, 2.0}));
    EXPECT_THROW(parse_grid("1:0:3"), DataError);
    EXPECT_THROW(parse_grid("0:1:1"), DataError);
    EXPECT_THROW(parse_grid("0:1"), DataError);
}

TEST(Csv, ReadSkipsCommentsAndHeader) {
    const auto p = scratch("pts.csv");
    write_file(p, "# made by hand\nx,xi\n0.5,1\n-2,3e-1\n");
    const auto rows = read_csv_rows(p.string(), 2);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1][1], 0.3);
    EXPECT_THROW(read_csv_rows(p.string(), 3), IoError);
}

TEST(Csv, WriterUsesFullPrecision) {
    std::ostringstream os;
    CsvWriter w(os);
    w.meta("hagkit", "eval");
    w.header({"a", "b"});
    w.row({0.1, 1.0 / 3.0});
    EXPECT_EQ(os.str(), "# hagkit: eval\na,b\n0.10000000000000001,0.33333333333333331\n");
    EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Coefficients, RoundTrip) {
    CoefficientFile f;
    f.params_hash = 0x1234abcdULL;
    f.K = 6;
    f.bessel_defect = 1e-7;
    f.psi_norm2 = 1.5;
    f.function = "builtin:shifted-gaussian(0,0,1)";
    f.coeffs = CoefficientVector::zeros(IndexSet::hyperbolic(2, 6));
    for (std::size_t i = 0; i < f.coeffs.coeffs.size(); ++i) f.coeffs.coeffs[i] = cplx(i * 0.1, -1.0 / (i + 1));
    const auto p = scratch("c.json");
    write_coefficients(p.string(), f);
    const auto g = read_coefficients(p.string());
    EXPECT_EQ(g.params_hash, f.params_hash);
    EXPECT_EQ(g.K, 6);
    EXPECT_EQ(g.function, f.function);
    EXPECT_EQ(g.l2_residual, -1.0);
    EXPECT_EQ(g.coeffs.set, f.coeffs.set);
    EXPECT_EQ(g.coeffs.coeffs, f.coeffs.coeffs);
}

TEST(Coefficients, BadFileIsIoError) {
    const auto p = scratch("bad_c.json");
    write_file(p, R"({"format": "something-else"})");
    EXPECT_THROW(read_coefficients(p.string()), IoError);
}

TEST(Trajectory, CsvColumns) {
    const auto tr = propagate(initial_state(ParameterSet::standard(1)), PotentialModel::harmonic(1), 0.1, 0.05);
    std::ostringstream os;
    write_trajectory_csv(os, tr, {{"hagkit", "propagate"}});
    const std::string s = os.str();
    EXPECT_NE(s.find("# hagkit: propagate"), std::string::npos);
    EXPECT_NE(s.find("# completed: true"), std::string::npos);
    EXPECT_NE(s.find("t,q1,p1,Q11_re,Q11_im,P11_re,P11_im,S,residual"), std::string::npos);
    std::size_t lines = 0;
    for (char c : s) lines += c == '\n';
    EXPECT_GE(lines, 4u);
}

TEST(Workers, ResolveFromEnvironment) {
    ::setenv("HAGKIT_WORKERS", "3", 1);
    EXPECT_EQ(resolve_workers(), 3);
    EXPECT_EQ(resolve_workers(2), 2);
    ::setenv("HAGKIT_WORKERS", "0", 1);
    EXPECT_THROW(resolve_workers(), DataError);
    ::setenv("HAGKIT_WORKERS", "two", 1);
    EXPECT_THROW(resolve_workers(), DataError);
    ::unsetenv("HAGKIT_WORKERS");
    EXPECT_EQ(resolve_workers(), 1);
}

TEST(Workers, EveryIndexVisitedOnce) {
    for (int w : {1, 2, 5, 64}) {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), w, [&](std::size_t i) { hits[i]++; });
        for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
    }
}

TEST(Workers, ExceptionsPropagate) {
    EXPECT_THROW(parallel_for(100, 4,
                              [](std::size_t i) {
                                  if (i == 57) throw NumericalError("boom");
                              }),
                 NumericalError);
}

}  // namespace
}  // namespace hagkit
