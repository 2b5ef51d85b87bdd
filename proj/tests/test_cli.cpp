#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "metricgeo/cli.hpp"
#include "metricgeo/figure.hpp"
#include "metricgeo/io.hpp"

namespace metricgeo::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("metricgeo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text = {}) {
    const std::string p = (dir_ / name).string();
    if (!text.empty()) io::write_text(p, text);
    return p;
  }

  int run_cli(std::vector<std::string> args) {
    out_.str({});
    err_.str({});
    return run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

constexpr const char* kIdentity =
    R"({"format_version": "1", "kind": "metric", "n": 2,
        "points": [{"id": "p0", "weight": 1.0, "matrix": [[1, 0], [0, 1]]}]})";
constexpr const char* kMinusId =
    R"({"format_version": "1", "kind": "tangent", "n": 2,
        "points": [{"id": "p0", "weight": 1.0, "matrix": [[-1, 0], [0, -1]]}]})";

TEST_F(CliTest, GeodesicRefusesPastExistenceBound) {
  const std::string g = file("g.json", kIdentity);
  const std::string h = file("h.json", kMinusId);
  EXPECT_EQ(run_cli({"geodesic", "--metric", g, "--dir", h, "--t-end", "2", "--steps", "10", "--out",
                     file("p.json")}),
            kExitDomain);
  EXPECT_NE(err_.str().find("-4/t^h = 2"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("'p0'"), std::string::npos) << err_.str();
  EXPECT_FALSE(fs::exists(dir_ / "p.json"));
}

TEST_F(CliTest, GeodesicThenEnergy) {
  const std::string g = file("g.json", kIdentity);
  const std::string h = file("h.json", kMinusId);
  const std::string p = file("p.json");
  ASSERT_EQ(run_cli({"geodesic", "--metric", g, "--dir", h, "--t-end", "1", "--steps", "1000", "--out", p}),
            kExitOk)
      << err_.str();
  const MetricPath path = io::read_metric_path(p);
  ASSERT_EQ(path.times().size(), 1001u);
  EXPECT_NEAR(path.frames().back()[0](0, 0), 0.25, 1e-15);
  ASSERT_EQ(run_cli({"energy", "--path", p}), kExitOk);
  // (1 - t/2)^2 Id: the integrand tr((g^-1 g_t)^2) sqrt(det g) is 2
  EXPECT_NEAR(std::stod(out_.str()), 1.0, 1e-9);
}

TEST_F(CliTest, ExpOfZeroReturnsInput) {
  const std::string metric =
      R"({"format_version": "1", "n": 2, "points": [{"id": "a", "weight": 0.5, "matrix": [[2.5, 0.1], [0.1, 0.7]]},
                             {"id": "b", "weight": 2.0, "matrix": [[1.25, -0.3], [-0.3, 3.0]]}]})";
  const std::string zero =
      R"({"format_version": "1", "n": 2, "points": [{"id": "a", "weight": 0.5, "matrix": [0, 0, 0, 0]},
                             {"id": "b", "weight": 2.0, "matrix": [0, 0, 0, 0]}]})";
  const std::string g = file("g.json", metric);
  const std::string out = file("e.json");
  ASSERT_EQ(run_cli({"exp", "--metric", g, "--dir", file("z.json", zero), "--out", out}), kExitOk)
      << err_.str();
  const io::FieldDocument in = io::read_field_document(g);
  const io::FieldDocument res = io::read_field_document(out);
  ASSERT_EQ(res.points.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(res.points[i].matrix, in.points[i].matrix);
}

TEST_F(CliTest, LogInvertsExp) {
  const std::string g = file("g.json", kIdentity);
  const std::string h = file("h.json",
                             R"({"format_version": "1", "n": 2, "points": [{"id": "p0", "weight": 1.0, "matrix": [[0.3, 0.2], [0.2, -0.1]]}]})");
  const std::string e = file("e.json");
  const std::string l = file("l.json");
  ASSERT_EQ(run_cli({"exp", "--metric", g, "--dir", h, "--out", e}), kExitOk);
  ASSERT_EQ(run_cli({"log", "--metric", g, "--target", e, "--out", l}), kExitOk);
  const io::FieldDocument back = io::read_field_document(l);
  EXPECT_NEAR(back.points[0].matrix(0, 1), 0.2, 1e-12);
  EXPECT_NEAR(back.points[0].matrix(1, 1), -0.1, 1e-12);
}

TEST_F(CliTest, ExpDomainViolationExitsThree) {
  const std::string g = file("g.json", kIdentity);
  const std::string h = file("h.json",
                             R"({"format_version": "1", "n": 2, "points": [{"id": "p0", "weight": 1.0, "matrix": [[-3, 0], [0, -3]]}]})");
  EXPECT_EQ(run_cli({"exp", "--metric", g, "--dir", h, "--out", file("e.json")}), kExitDomain);
  EXPECT_NE(err_.str().find("exp-domain"), std::string::npos) << err_.str();
}

TEST_F(CliTest, JacobiAndCurvature) {
  const std::string g = file("g.json", kIdentity);
  const std::string d = file("d.json", R"({"format_version": "1", "n": 2, "points": [{"id": "p0", "weight": 1.0, "matrix": [[1, 0], [0, -1]]}]})");
  const std::string k = file("k.json", R"({"format_version": "1", "n": 2, "points": [{"id": "p0", "weight": 1.0, "matrix": [[0, 1], [1, 0]]}]})");
  const std::string j = file("j.json");
  ASSERT_EQ(run_cli({"jacobi", "--metric", g, "--dir", d, "--k", k, "--l", d, "--t-end", "1", "--steps", "4",
                     "--out", j}),
            kExitOk)
      << err_.str();
  EXPECT_NE(io::read_text(j).find("tangent_path"), std::string::npos);
  const std::string c = file("c.json");
  ASSERT_EQ(run_cli({"curvature", "--metric", g, "--h", d, "--k", k, "--l", d, "--out", c}), kExitOk)
      << err_.str();
  const std::string text = io::read_text(c);
  EXPECT_NE(text.find("\"scalar_like\": -1.25"), std::string::npos) << text;
  EXPECT_NE(text.find("\"global_ricci_h_l\": -1.25"), std::string::npos) << text;
}

TEST_F(CliTest, Figure1MatchesLibrary) {
  const std::string out = file("f.svg");
  ASSERT_EQ(run_cli({"figure1", "--n", "3", "--grid", "6", "--radii", "0.5,2", "--out", out}), kExitOk);
  figure::Figure1Options opts;
  opts.n = 3;
  opts.grid = 6;
  opts.radii = {0.5, 2.0};
  EXPECT_EQ(io::read_text(out), figure::figure1_svg(opts));
}

TEST_F(CliTest, UsageAndInputErrors) {
  EXPECT_EQ(run_cli({}), kExitUsage);
  EXPECT_EQ(run_cli({"nonsense"}), kExitUsage);
  EXPECT_EQ(run_cli({"exp", "--metric", "x.json"}), kExitUsage);
  EXPECT_EQ(run_cli({"verify", "--suite", "unknown"}), kExitUsage);
  EXPECT_EQ(run_cli({"exp", "--metric", file("bad.json", "{\"n\": 2,"), "--dir", file("z.json", kMinusId),
                     "--out", file("o.json")}),
            kExitUsage);
  EXPECT_NE(err_.str().find("bad.json"), std::string::npos);
  EXPECT_EQ(run_cli({"exp", "--metric", file("missing.json"), "--dir", file("z.json", kMinusId), "--out",
                     file("o.json")}),
            kExitUsage);
  EXPECT_EQ(run_cli({"--help"}), kExitOk);
}

TEST_F(CliTest, BaseMismatchIsUsageError) {
  const std::string g = file("g.json", kIdentity);
  const std::string h = file("h.json", R"({"format_version": "1", "n": 2, "points": [{"id": "q", "weight": 1.0, "matrix": [1, 0, 0, 1]}]})");
  EXPECT_EQ(run_cli({"exp", "--metric", g, "--dir", h, "--out", file("o.json")}), kExitUsage);
}

TEST_F(CliTest, VerifySingleSuite) {
  EXPECT_EQ(run_cli({"verify", "--suite", "curvature", "--seed", "7"}), kExitOk) << out_.str();
  EXPECT_NE(out_.str().find("suite curvature"), std::string::npos);
  EXPECT_NE(out_.str().find("max_error="), std::string::npos);
}

}  // namespace
}  // namespace metricgeo::cli
