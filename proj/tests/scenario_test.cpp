#include "tamelab/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tamelab/errors.hpp"

namespace tamelab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "tamelab_scenario_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

ScenarioConfig small_ex2() {
  ScenarioConfig c;
  c.m_list = {16, 32, 64};
  return c;
}

TEST(ParseTest, PhiRegistry) {
  EXPECT_NEAR(parse_phi("sin").evaluate(0.25), 1.0, 1e-15);
  EXPECT_NEAR(parse_phi("cos").evaluate(0.5), -1.0, 1e-15);
  EXPECT_EQ(parse_phi("constant:0.4").evaluate(7.0), 0.4);
  EXPECT_EQ(parse_phi("affine:2,1").evaluate(3.0), 7.0);
  EXPECT_EQ(parse_phi("poly:1,0,3").evaluate(2.0), 13.0);
  EXPECT_NEAR(parse_phi("t_plus_exp").evaluate(1.0), 1.0 + std::exp(1.0), 1e-15);
  EXPECT_THROW(parse_phi("tan"), UsageError);
  EXPECT_THROW(parse_phi("affine:1"), UsageError);
  EXPECT_THROW(parse_phi("constant:x"), UsageError);
}

TEST(ParseTest, FunctionDescriptors) {
  EXPECT_EQ(parse_function("0", Domain::Periodic1).evaluate(0.3), 0.0);
  EXPECT_EQ(parse_function("constant:2.5", Domain::Periodic1).evaluate(0.3), 2.5);
  const auto f = parse_function("sin:0.1,2,0.05 + constant:1e+0", Domain::Periodic1);
  EXPECT_EQ(f.domain(), Domain::Periodic1);
  EXPECT_NEAR(f.evaluate(0.3), 1.0 + 0.1 * std::sin(kTwoPi * 2 * 0.25), 1e-15);
  const auto z = parse_function("probe:4,3", Domain::Periodic1);
  EXPECT_NEAR(z.evaluate(1.0 / 16.0), std::pow(8.0 * std::numbers::pi, -2.5), 1e-18);
  EXPECT_EQ(parse_function("identity", Domain::UnitInterval).evaluate(0.4), 0.4);
  EXPECT_THROW(parse_function("identity", Domain::Periodic1), UsageError);
  EXPECT_THROW(parse_function("sin:0.1,1.5", Domain::Periodic1), UsageError);
  EXPECT_THROW(parse_function("", Domain::Periodic1), UsageError);
  EXPECT_THROW(parse_function("sin:1,1 +", Domain::Periodic1), UsageError);
}

TEST(ParseTest, ListsAndEnums) {
  EXPECT_EQ(parse_m_list("16,32, 64"), (std::vector<int>{16, 32, 64}));
  EXPECT_THROW(parse_m_list("16,3.5"), UsageError);
  EXPECT_EQ(parse_variant("ex4"), MapVariant::Ex4);
  EXPECT_THROW(parse_variant("ex3"), UsageError);
  EXPECT_EQ(parse_format("json"), OutputFormat::Json);
  EXPECT_THROW(parse_format("xml"), UsageError);
}

TEST(ParseTest, PNormJson) {
  const auto spec = parse_pnorm(R"({"truncation": 2, "transform": "linear", "weights": [1, 0.5, 0.25]})");
  EXPECT_EQ(spec.truncation, 2);
  EXPECT_EQ(spec.transform, PNormTransform::Linear);
  EXPECT_EQ(spec.weights, (std::vector<double>{1.0, 0.5, 0.25}));
  EXPECT_EQ(parse_pnorm(pnorm_to_json(spec)).weights, spec.weights);
  EXPECT_THROW(parse_pnorm(R"({"truncation": 2, "weights": [1]})"), UsageError);
  EXPECT_THROW(parse_pnorm(R"({"transform": "cubic"})"), UsageError);
  EXPECT_THROW(parse_pnorm(R"({"truncation": 2, "extra": 1})"), UsageError);
  EXPECT_THROW(parse_pnorm("{not json"), UsageError);
}

TEST(ConfigTest, ValidationNamesTheConstraint) {
  auto expect_message = [](ScenarioConfig c, const std::string& fragment) {
    try {
      c.validate();
      FAIL() << "expected a UsageError mentioning " << fragment;
    } catch (const UsageError& e) {
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
  };
  ScenarioConfig c;
  EXPECT_NO_THROW(c.validate());
  c.k = 4;
  expect_message(c, "k must be odd");
  c = {};
  c.n = 0;
  expect_message(c, "n must be a nonzero integer");
  c = {};
  c.phi = "t_plus_exp";
  expect_message(c, "1-periodic");
  c = {};
  c.variant = MapVariant::Ex4;
  c.phi = "sin";
  expect_message(c, "diffeomorphism");
  c = {};
  c.m_list = {32, 16};
  expect_message(c, "ascending");
  c = {};
  c.m_list = {1 << 15};
  expect_message(c, "m must lie");
  c = {};
  c.grid_factor = 0.0;
  expect_message(c, "grid factor");
}

TEST(ConfigTest, JsonRoundTrip) {
  ScenarioConfig c;
  c.variant = MapVariant::Ex4;
  c.phi = "affine:2,1";
  c.x = "sin:0.1,1";
  c.k = 5;
  c.l = 4;
  c.m_list = {16, 64};
  c.grid_factor = 96.0;
  c.rho2 = parse_pnorm(R"({"truncation": 3, "transform": "linear", "weights": [1, 1, 1, 1]})");
  c.format = OutputFormat::Json;
  c.output = "out.json";
  ScenarioConfig back;
  apply_config_json(back, config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
  EXPECT_EQ(back.m_list, c.m_list);
  EXPECT_EQ(back.rho2.weights, c.rho2.weights);
  EXPECT_THROW(apply_config_json(back, R"({"kk": 3})"), UsageError);
  EXPECT_THROW(apply_config_json(back, R"({"k": "three"})"), std::exception);
}

TEST(CsvTest, RoundTripIsExact) {
  const auto sweep = growth_sweep(small_ex2().map(), small_ex2().base_point(), {}, {}, 3, 8,
                                  small_ex2().m_list);
  const std::string csv = records_to_csv(sweep.records);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kCsvHeader);
  const auto back = records_from_csv(csv);
  EXPECT_EQ(back, sweep.records);
  EXPECT_THROW(records_from_csv("m,a\n1,2\n"), UsageError);
  EXPECT_THROW(records_from_csv(std::string(kCsvHeader) + "\n1,2,3\n"), UsageError);
}

TEST(SweepCommandTest, WritesDeterministicFiles) {
  ScenarioConfig c = small_ex2();
  c.output = scratch("sweep_a.csv").string();
  std::ostringstream out, err;
  ASSERT_EQ(run_sweep(c, out, err), exit_code::kOk) << err.str();
  c.output = scratch("sweep_b.csv").string();
  ASSERT_EQ(run_sweep(c, out, err), exit_code::kOk) << err.str();
  const std::string a = slurp(scratch("sweep_a.csv"));
  EXPECT_EQ(a, slurp(scratch("sweep_b.csv")));
  const auto records = records_from_csv(a);
  ASSERT_EQ(records.size(), c.m_list.size());
  for (const auto& r : records) {
    EXPECT_NEAR(r.p_km1_z / std::pow(kTwoPi * r.m, -0.5), 1.0, 1e-9);
  }

  c.format = OutputFormat::Json;
  c.output = scratch("sweep.json").string();
  ASSERT_EQ(run_sweep(c, out, err), exit_code::kOk);
  const std::string json_text = slurp(scratch("sweep.json"));
  EXPECT_NE(json_text.find("\"records\""), std::string::npos);
  EXPECT_NE(json_text.find("\"violation\": true"), std::string::npos);

  c.output = (scratch("no_such_dir") / "x" / "y.csv").string();
  std::ostringstream err2;
  EXPECT_EQ(run_sweep(c, out, err2), exit_code::kUnwritable);
  EXPECT_NE(err2.str().find("cannot write"), std::string::npos);
}

TEST(SweepCommandTest, StdoutWhenNoOutput) {
  ScenarioConfig c = small_ex2();
  std::ostringstream out, err;
  ASSERT_EQ(run_sweep(c, out, err), exit_code::kOk);
  EXPECT_EQ(records_from_csv(out.str()).size(), 3u);
}

TEST(DemoCommandTest, ExitCodes) {
  std::ostringstream out, err;
  ScenarioConfig ex2 = small_ex2();
  EXPECT_EQ(run_demo(ex2, out, err), exit_code::kOk) << err.str();
  EXPECT_NE(out.str().find("violation true"), std::string::npos);
  EXPECT_NE(out.str().find("holds true"), std::string::npos);

  ScenarioConfig affine;
  affine.variant = MapVariant::Ex4;
  affine.phi = "affine:2,1";
  affine.m_list = {16, 32};
  std::ostringstream out4;
  EXPECT_EQ(run_demo(affine, out4, err), exit_code::kOk);
  EXPECT_NE(out4.str().find("violation false"), std::string::npos);

  // At m = 16 alone the composition sweep has not reached a violation yet.
  ScenarioConfig early;
  early.variant = MapVariant::Ex4;
  early.m_list = {16};
  std::ostringstream out_early;
  EXPECT_EQ(run_demo(early, out_early, err), exit_code::kUnexpectedOutcome);

  ScenarioConfig even = small_ex2();
  even.k = 4;
  std::ostringstream err_even;
  EXPECT_EQ(run_demo(even, out, err_even), exit_code::kConfig);
  EXPECT_NE(err_even.str().find("k must be odd"), std::string::npos);

  ScenarioConfig budget = small_ex2();
  budget.l = 100000;
  EXPECT_EQ(run_demo(budget, out, err), exit_code::kPrecisionBudget);
}

TEST(CheckTameCommandTest, ProbeFiles) {
  const auto probes_mk = scratch("probes_mk.json");
  write(probes_mk, R"({"probes": [{"m": 64}, {"m": 256, "k": 3}]})");
  const auto empty = scratch("empty.json");
  write(empty, "[]");
  const auto explicit_probes = scratch("explicit.json");
  write(explicit_probes, R"([{"z": "probe:64,3", "u": "constant:0.125"}, {"z": "0", "u": "sin:1,1"}])");
  const auto broken = scratch("broken.json");
  write(broken, R"([{"q": 1}])");

  ScenarioConfig c;
  std::ostringstream out, err;
  EXPECT_EQ(run_check_tame(c, probes_mk.string(), out, err), exit_code::kOk);
  EXPECT_NE(out.str().find("satisfied false"), std::string::npos);
  EXPECT_NE(out.str().find("witness probe 0"), std::string::npos);

  std::ostringstream err_empty;
  EXPECT_EQ(run_check_tame(c, empty.string(), out, err_empty), exit_code::kConfig);
  EXPECT_NE(err_empty.str().find("no probes"), std::string::npos);
  EXPECT_EQ(run_check_tame(c, broken.string(), out, err), exit_code::kConfig);
  EXPECT_EQ(run_check_tame(c, scratch("missing.json").string(), out, err), exit_code::kConfig);

  ScenarioConfig constant;
  constant.phi = "constant:0.4";
  constant.format = OutputFormat::Json;
  std::ostringstream out_const;
  EXPECT_EQ(run_check_tame(constant, explicit_probes.string(), out_const, err), exit_code::kOk);
  EXPECT_NE(out_const.str().find("\"satisfied\": true"), std::string::npos);
  EXPECT_NE(out_const.str().find("\"witnesses\": []"), std::string::npos);

  const auto parsed = parse_probe_file(c, R"([{"m": 32}])");
  ASSERT_EQ(parsed.size(), 1u);
  EXPECT_NEAR(seminorm_p(parsed[0].z, 2), std::pow(kTwoPi * 32, -0.5), 1e-15);
  EXPECT_EQ(parsed[0].u.constant_value(), 0.125);
}

}  // namespace
}  // namespace tamelab
