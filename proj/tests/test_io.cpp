#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "capwhitham/capwhitham.hpp"

using namespace capwhitham;

TEST(Csv, HeaderRowsAndQuoting) {
    io::CsvWriter w({"a", "b"});
    w.row({"1", "x,y"});
    w.row({io::CsvWriter::cell(0.1), io::CsvWriter::cell(std::optional<double>{})});
    EXPECT_EQ(w.str(), "a,b\n1,\"x,y\"\n0.1,\n");
    EXPECT_THROW(w.row({"only one"}), std::logic_error);
}

TEST(Csv, NumbersRoundTrip) {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02e23}) EXPECT_EQ(std::stod(io::CsvWriter::cell(x)), x);
}

TEST(Csv, VerdictColumns) {
    const auto v = pair_scan(5);
    const std::string csv = io::verdict_csv(v);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "k1,k2,status,limit_low,limit_high,n_roots,T0_first");
    EXPECT_NE(csv.find("\n2,5,admits,"), std::string::npos);
    EXPECT_NE(csv.find("\n1,2,excluded-divisor,,,0,\n"), std::string::npos);
}

TEST(Csv, ProfileSamples) {
    const WaveNumberPair p(2, 5);
    const WaveProfile v = synthesize_v(p, ModalParameters::make(p, 1, 0, 0, 0), 10);
    std::istringstream in(io::profile_csv(v, 8));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,u");
    std::getline(in, line);
    EXPECT_EQ(line, "0,1");
    int n = 1;
    while (std::getline(in, line)) ++n;
    EXPECT_EQ(n, 8);
}

TEST(Json, ExpansionIsSortedWithCounts) {
    const io::Json j = io::expansion_json(expand_symbolic(WaveNumberPair(2, 5)));
    EXPECT_EQ(j["N"], 630);
    EXPECT_EQ(j["M"], 4);
    EXPECT_EQ(j["prefactor_exponent"], 6);
    ASSERT_EQ(j["monomials"].size(), 13u);
    for (std::size_t i = 1; i < j["monomials"].size(); ++i)
        EXPECT_LT(j["monomials"][i - 1]["factors"].get<std::vector<int>>(), j["monomials"][i]["factors"].get<std::vector<int>>());
}

TEST(Json, GoldenExpansionBytes) {
    std::ifstream f(std::string(CAPWHITHAM_SOURCE_DIR) + "/tests/golden/expansion_2_5.json");
    ASSERT_TRUE(f);
    std::stringstream golden;
    golden << f.rdbuf();
    EXPECT_EQ(io::dump(io::expansion_json(expand_symbolic(WaveNumberPair(2, 5)))), golden.str());
}

TEST(Json, ErrorEnvelope) {
    const DomainError e("bad T", {{"T", "0.5"}});
    const io::Json j = io::error_envelope(e);
    EXPECT_EQ(j.dump(), R"({"code":"domain","message":"bad T","context":{"T":"0.5"}})");
}

TEST(Json, ReductionWarningOnlyWhenReduced) {
    EXPECT_FALSE(io::reduction_warning(2, 5, reduce_pair(2, 5)).has_value());
    const auto w = io::reduction_warning(2, 4, reduce_pair(2, 4));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ((*w)["code"], "pair_reduced");
    EXPECT_EQ((*w)["context"]["divisor"], "2");
}

TEST(Json, NonFiniteBecomesNull) {
    EXPECT_TRUE(io::number(NAN).is_null());
    EXPECT_TRUE(io::number(std::optional<double>{}).is_null());
    EXPECT_EQ(io::number(0.25).get<double>(), 0.25);
}

TEST(Svg, ViewportAndContent) {
    io::PlotSpec s;
    s.title = "a < b";
    s.points = {{0, 1}, {1, -1e6}, {2, 1e9}};
    s.y_scale = io::AxisScale::signed_log;
    s.y_markers = {{0, "zero"}};
    s.x_markers = {{1.5, "T0"}};
    const std::string svg = io::render_svg(s);
    EXPECT_NE(svg.find("width=\"800\" height=\"500\""), std::string::npos);
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
    EXPECT_NE(svg.find("a &lt; b"), std::string::npos);
    EXPECT_NE(svg.find(">T0<"), std::string::npos);
    EXPECT_EQ(svg, io::render_svg(s));
}

TEST(Svg, ScatterDots) {
    io::PlotSpec s;
    s.kind = io::PlotKind::scatter;
    s.points = {{2, 5}, {3, 7}, {2, 5}};
    const std::string svg = io::render_svg(s);
    std::size_t n = 0;
    for (std::size_t at = 0; (at = svg.find("<circle", at)) != std::string::npos; ++at) ++n;
    EXPECT_EQ(n, 3u);
}

TEST(Svg, RejectsBadPoints) {
    io::PlotSpec s;
    s.points = {{0, 1}, {0, 2}};
    EXPECT_THROW(io::render_svg(s), DomainError);
    s.points = {{0, 1}, {1, NAN}};
    EXPECT_THROW(io::render_svg(s), DomainError);
    s.kind = io::PlotKind::scatter;
    s.points = {{1, 1}, {0, 2}};
    EXPECT_NO_THROW(io::render_svg(s));
}

TEST(Config, DefaultsAndOverrides) {
    const io::RunConfig d;
    EXPECT_EQ(d.K, 64);
    EXPECT_EQ(d.grid, 200);
    EXPECT_EQ(d.jobs, 1);
    EXPECT_EQ(d.tol_w, 1e-14);
    EXPECT_EQ(d.tol_newton, 1e-12);
    EXPECT_EQ(d.amplitude_cap, 0.3);
    EXPECT_NO_THROW(d.validate());

    std::istringstream in("# a comment\nK = 32\n\njobs=4  # trailing\nformat = csv, svg\nw-method = picard\n");
    const io::RunConfig c = io::parse_config(in);
    EXPECT_EQ(c.K, 32);
    EXPECT_EQ(c.jobs, 4);
    EXPECT_EQ(c.formats, (std::vector<std::string>{"csv", "svg"}));
    EXPECT_EQ(c.wave_options().w.method, WMethod::picard);
    EXPECT_EQ(c.root_options().grid_size, 200);
}

TEST(Config, Errors) {
    std::istringstream unknown("speed = 3\n");
    EXPECT_THROW(io::parse_config(unknown), DomainError);
    std::istringstream garbled("K = 6x\n");
    EXPECT_THROW(io::parse_config(garbled), DomainError);
    std::istringstream no_eq("K 6\n");
    EXPECT_THROW(io::parse_config(no_eq), DomainError);
    io::RunConfig c;
    c.tol_root = 0;
    EXPECT_THROW(c.validate(), DomainError);
    c = {};
    c.jobs = 0;
    EXPECT_THROW(c.validate(), DomainError);
    c = {};
    c.formats = {"png"};
    EXPECT_THROW(c.validate(), DomainError);
    EXPECT_THROW(io::load_config("/nonexistent/run.cfg"), DomainError);
}
