#include "tamelab/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tamelab/errors.hpp"

namespace tamelab {

namespace {

using SF = SmoothFunction;
using nlohmann::json;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

class WriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw UsageError("cannot read a number from '" + text + "' in " + what);
  }
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  const double v = parse_double(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw UsageError("expected an integer, got '" + text + "' in " + what);
  }
  return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, what));
  if (out.empty()) throw UsageError("empty parameter list in " + what);
  return out;
}

// "name:params" -> (name, params)
std::pair<std::string, std::string> split_head(const std::string& descriptor) {
  const std::string t = trim(descriptor);
  const auto colon = t.find(':');
  if (colon == std::string::npos) return {t, {}};
  return {t.substr(0, colon), t.substr(colon + 1)};
}

void expect_count(const std::vector<double>& v, std::size_t lo, std::size_t hi,
                  const std::string& what) {
  if (v.size() < lo || v.size() > hi) {
    throw UsageError(what + " takes " + std::to_string(lo) +
                     (hi > lo ? "-" + std::to_string(hi) : std::string()) + " parameters");
  }
}

// Splits on '+' except inside exponents such as 1e+3.
std::vector<std::string> split_terms(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const bool exponent = i > 0 && (text[i - 1] == 'e' || text[i - 1] == 'E') && i >= 2 &&
                          (std::isdigit(static_cast<unsigned char>(text[i - 2])) || text[i - 2] == '.');
    if (c == '+' && !exponent) {
      out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  out.push_back(current);
  return out;
}

SmoothFunction parse_term(const std::string& descriptor, Domain d) {
  const auto [name, params] = split_head(descriptor);
  const std::string what = "function descriptor '" + trim(descriptor) + "'";
  if (name == "0" || name == "zero") return SF::constant(0.0, d);
  if (name == "constant") {
    const auto v = parse_list(params, what);
    expect_count(v, 1, 1, what);
    return SF::constant(v[0], d);
  }
  if (name == "sin" || name == "cos") {
    const auto v = parse_list(params, what);
    expect_count(v, 2, 3, what);
    return SF::sinusoid(v[0], v[1], v.size() > 2 ? v[2] : 0.0, d, name == "cos" ? 1 : 0);
  }
  if (name == "probe") {
    const auto v = parse_list(params, what);
    expect_count(v, 2, 3, what);
    const int m = parse_int(std::to_string(v[0]), what);
    const int k = parse_int(std::to_string(v[1]), what);
    if (m < 1) throw UsageError("probe frequency m must be positive in " + what);
    return SF::sinusoid(std::pow(kTwoPi * m, -k + 0.5), m, v.size() > 2 ? v[2] : 0.0, d);
  }
  if (name == "identity") return SF::identity(d);
  if (name == "affine") {
    const auto v = parse_list(params, what);
    expect_count(v, 2, 2, what);
    return SF::affine(v[0], v[1], d);
  }
  // A bare number is a constant.
  return SF::constant(parse_double(name, what), d);
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(std::string("cannot read ") + what + " '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw WriteError("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw WriteError("cannot write '" + path + "'");
}

json pnorm_json(const PNormSpec& spec) {
  json j;
  j["truncation"] = spec.truncation;
  j["transform"] = spec.transform == PNormTransform::Bounded ? "bounded" : "linear";
  j["weights"] = spec.weights;
  return j;
}

PNormSpec pnorm_from(const json& j) {
  if (!j.is_object()) throw UsageError("P-norm spec must be a JSON object");
  PNormSpec spec;
  for (const auto& [key, value] : j.items()) {
    if (key == "truncation") {
      spec.truncation = value.get<int>();
    } else if (key == "transform") {
      const auto t = value.get<std::string>();
      if (t == "bounded") {
        spec.transform = PNormTransform::Bounded;
      } else if (t == "linear") {
        spec.transform = PNormTransform::Linear;
      } else {
        throw UsageError("P-norm transform must be 'bounded' or 'linear', got '" + t + "'");
      }
    } else if (key == "weights") {
      spec.weights = value.get<std::vector<double>>();
    } else {
      throw UsageError("unknown P-norm key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed ") + what + ": " + e.what());
  }
}

json record_json(const GrowthRecord& r) {
  return {{"m", r.m},           {"p_km1_z", r.p_km1_z},
          {"rho1_z", r.rho1_z}, {"rho1_u", r.rho1_u},
          {"top_deriv_s0", r.top_deriv_s0}, {"predicted", r.predicted},
          {"Tz_sup", r.Tz_sup}, {"rho2_v", r.rho2_v}};
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const PrecisionBudgetError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kPrecisionBudget;
  } catch (const WriteError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUnwritable;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kConfig;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kConfig;
  } catch (const NotFoundError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kConfig;
  } catch (const json::exception& e) {
    err << "error: malformed configuration: " << e.what() << "\n";
    return exit_code::kConfig;
  }
}

void emit(const ScenarioConfig& config, const std::string& content, std::ostream& out) {
  if (config.output.empty()) {
    out << content;
  } else {
    write_file(config.output, content);
  }
}

std::string render(const ScenarioConfig& config, const SweepResult& sweep) {
  return config.format == OutputFormat::Csv ? records_to_csv(sweep.records)
                                            : sweep_to_json(config, sweep) + "\n";
}

}  // namespace

const char* const kCsvHeader = "m,p_km1_z,rho1_z,rho1_u,top_deriv_s0,predicted,Tz_sup,rho2_v";

std::string ScenarioConfig::phi_or_default() const {
  if (!phi.empty()) return phi;
  return variant == MapVariant::Ex2 ? "sin" : "t_plus_exp";
}

void ScenarioConfig::validate() const {
  if (k < 1 || k % 2 == 0) throw UsageError("k must be odd (got " + std::to_string(k) + ")");
  if (k + 1 > kMaxJetOrder) throw UsageError("k must be at most " + std::to_string(kMaxJetOrder - 1));
  if (l < 1) throw UsageError("l must be a positive integer");
  if (variant == MapVariant::Ex2 && n == 0) throw UsageError("n must be a nonzero integer");
  if (!(grid_factor > 0.0) || !std::isfinite(grid_factor)) {
    throw UsageError("grid factor must be positive");
  }
  if (m_list.empty()) throw UsageError("m list must not be empty");
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    if (m_list[i] < 1 || m_list[i] > kMaxProbeFrequency) {
      throw UsageError("m must lie in [1, 16384], got " + std::to_string(m_list[i]));
    }
    if (i > 0 && m_list[i] <= m_list[i - 1]) throw UsageError("m list must be strictly ascending");
  }
  rho1.validate();
  rho2.validate();
  map();
  base_point();
}

MapSpec ScenarioConfig::map() const {
  const SmoothFunction f = parse_phi(phi_or_default());
  return variant == MapVariant::Ex2 ? MapSpec::pullback(f, n) : MapSpec::composition(f);
}

SmoothFunction ScenarioConfig::base_point() const {
  return parse_function(x, variant == MapVariant::Ex2 ? Domain::Periodic1 : Domain::UnitInterval);
}

SmoothFunction parse_phi(const std::string& descriptor) {
  const auto [name, params] = split_head(descriptor);
  const std::string what = "phi '" + trim(descriptor) + "'";
  if (name == "sin") return SF::compose(ScalarPrimitive::sin(), SF::affine(kTwoPi, 0.0));
  if (name == "cos") return SF::compose(ScalarPrimitive::cos(), SF::affine(kTwoPi, 0.0));
  if (name == "t_plus_exp") {
    return SF::identity() + SF::compose(ScalarPrimitive::exp(), SF::identity());
  }
  if (name == "constant") {
    const auto v = parse_list(params, what);
    expect_count(v, 1, 1, what);
    return SF::constant(v[0]);
  }
  if (name == "affine") {
    const auto v = parse_list(params, what);
    expect_count(v, 2, 2, what);
    return SF::affine(v[0], v[1]);
  }
  if (name == "poly") {
    return SF::compose(ScalarPrimitive::polynomial(parse_list(params, what)), SF::identity());
  }
  throw UsageError("unknown phi '" + trim(descriptor) +
                   "' (expected sin, cos, constant:c, affine:a,b, poly:c0,...,cd or t_plus_exp)");
}

SmoothFunction parse_function(const std::string& descriptor, Domain d) {
  if (trim(descriptor).empty()) throw UsageError("empty function descriptor");
  std::vector<SmoothFunction> terms;
  for (const auto& t : split_terms(descriptor)) {
    if (trim(t).empty()) throw UsageError("empty term in function descriptor '" + descriptor + "'");
    terms.push_back(parse_term(t, d));
  }
  return terms.size() == 1 ? terms.front() : SF::sum(std::move(terms));
}

MapVariant parse_variant(const std::string& name) {
  if (name == "ex2") return MapVariant::Ex2;
  if (name == "ex4") return MapVariant::Ex4;
  throw UsageError("variant must be ex2 or ex4, got '" + name + "'");
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw UsageError("format must be csv or json, got '" + name + "'");
}

std::vector<int> parse_m_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item, "m list"));
  if (out.empty()) throw UsageError("m list must not be empty");
  return out;
}

PNormSpec parse_pnorm(const std::string& json_text) {
  return pnorm_from(parse_json(json_text, "P-norm spec"));
}

std::string pnorm_to_json(const PNormSpec& spec) { return pnorm_json(spec).dump(); }

void apply_config_json(ScenarioConfig& config, const std::string& json_text) {
  const json j = parse_json(json_text, "config");
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "variant") {
      config.variant = parse_variant(value.get<std::string>());
    } else if (key == "phi") {
      config.phi = value.get<std::string>();
    } else if (key == "n") {
      config.n = value.get<int>();
    } else if (key == "x") {
      config.x = value.get<std::string>();
    } else if (key == "k") {
      config.k = value.get<int>();
    } else if (key == "l") {
      config.l = value.get<int>();
    } else if (key == "m_list") {
      config.m_list = value.get<std::vector<int>>();
    } else if (key == "grid_factor") {
      config.grid_factor = value.get<double>();
    } else if (key == "rho1") {
      config.rho1 = pnorm_from(value);
    } else if (key == "rho2") {
      config.rho2 = pnorm_from(value);
    } else if (key == "format") {
      config.format = parse_format(value.get<std::string>());
    } else if (key == "output") {
      config.output = value.get<std::string>();
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
}

std::string config_to_json(const ScenarioConfig& config) {
  json j;
  j["variant"] = to_string(config.variant);
  j["phi"] = config.phi_or_default();
  j["n"] = config.n;
  j["x"] = config.x;
  j["k"] = config.k;
  j["l"] = config.l;
  j["m_list"] = config.m_list;
  j["grid_factor"] = config.grid_factor;
  j["rho1"] = pnorm_json(config.rho1);
  j["rho2"] = pnorm_json(config.rho2);
  j["format"] = config.format == OutputFormat::Csv ? "csv" : "json";
  if (!config.output.empty()) j["output"] = config.output;
  return j.dump(2);
}

std::string records_to_csv(const std::vector<GrowthRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.m);
    for (double v : {r.p_km1_z, r.rho1_z, r.rho1_u, r.top_deriv_s0, r.predicted, r.Tz_sup, r.rho2_v}) {
      out += ',';
      out += format17(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<GrowthRecord> records_from_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line) || trim(line) != kCsvHeader) {
    throw UsageError("CSV table does not start with the expected header");
  }
  std::vector<GrowthRecord> out;
  while (std::getline(ss, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) throw UsageError("CSV row needs 8 cells: '" + line + "'");
    GrowthRecord r;
    r.m = parse_int(cells[0], "CSV");
    double* fields[] = {&r.p_km1_z, &r.rho1_z,    &r.rho1_u, &r.top_deriv_s0,
                        &r.predicted, &r.Tz_sup, &r.rho2_v};
    for (int i = 0; i < 7; ++i) *fields[i] = parse_double(cells[static_cast<std::size_t>(i + 1)], "CSV");
    out.push_back(r);
  }
  return out;
}

std::string sweep_to_json(const ScenarioConfig& config, const SweepResult& sweep) {
  json j;
  j["variant"] = to_string(config.variant);
  j["phi"] = config.phi_or_default();
  j["k"] = sweep.base.k;
  j["l"] = sweep.base.l;
  j["t0"] = sweep.base.t0;
  j["s0"] = sweep.base.s0;
  j["slope"] = sweep.slope ? json(*sweep.slope) : json(nullptr);
  j["violation"] = sweep.violation;
  j["degenerate"] = sweep.degenerate;
  j["records"] = json::array();
  for (const auto& r : sweep.records) j["records"].push_back(record_json(r));
  return j.dump(2);
}

std::vector<TameProbe> parse_probe_file(const ScenarioConfig& config, const std::string& json_text) {
  json j = parse_json(json_text, "probe file");
  if (j.is_object() && j.contains("probes")) j = j["probes"];
  if (!j.is_array()) throw UsageError("probe file must hold a JSON array of probes");
  if (j.empty()) throw UsageError("probe file lists no probes");
  const MapSpec map = config.map();
  const SmoothFunction x = config.base_point();
  const GridSpec grid = config.grid();
  const Domain d = map.space();
  std::vector<TameProbe> out;
  for (const auto& entry : j) {
    if (!entry.is_object()) throw UsageError("each probe must be a JSON object");
    if (entry.contains("m")) {
      const int k = entry.value("k", config.k);
      ProbeParams p = locate_probe(map, x, k, config.l, grid);
      p.m = entry.at("m").get<int>();
      const ProbePair pair = build_probe(p, map.variant());
      out.push_back({pair.z, pair.u});
    } else if (entry.contains("z") && entry.contains("u")) {
      out.push_back({parse_function(entry.at("z").get<std::string>(), d),
                     parse_function(entry.at("u").get<std::string>(), d)});
    } else {
      throw UsageError("probe entries need either m (and optionally k) or both z and u");
    }
  }
  return out;
}

int run_demo(const ScenarioConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const MapSpec map = config.map();
    const SmoothFunction x = config.base_point();
    const GridSpec grid = config.grid();
    const SweepResult sweep =
        growth_sweep(map, x, config.rho1, config.rho2, config.k, config.l, config.m_list, grid);

    out << "map " << to_string(config.variant) << "  phi " << config.phi_or_default();
    if (config.variant == MapVariant::Ex2) out << "  n " << config.n;
    out << "  x " << config.x << "  k " << config.k << "  l " << config.l << "\n";
    out << "t0 " << format17(sweep.base.t0) << "  s0 " << format17(sweep.base.s0) << "\n\n";

    char line[256];
    std::snprintf(line, sizeof line, "%6s %12s %10s %10s %14s %14s %12s %10s\n", "m", "p_k-1(z)",
                  "rho1(z)", "rho1(u)", "|v^(top)(s0)|", "predicted", "sup|T_z|", "rho2(v)");
    out << line;
    for (const auto& r : sweep.records) {
      std::snprintf(line, sizeof line, "%6d %12.6g %10.6f %10.6f %14.8g %14.8g %12.6g %10.6f\n", r.m,
                    r.p_km1_z, r.rho1_z, r.rho1_u, r.top_deriv_s0, r.predicted, r.Tz_sup, r.rho2_v);
      out << line;
    }
    out << "\nslope " << (sweep.slope ? format17(*sweep.slope) : std::string("undefined")) << "\n";
    out << "violation " << (sweep.violation ? "true" : "false") << "\n";

    bool expected = sweep.violation;
    if (sweep.degenerate) {
      bool zero = true;
      for (const auto& r : sweep.records) {
        zero = zero && r.top_deriv_s0 == 0.0 && r.Tz_sup == 0.0 && r.rho2_v == 0.0;
      }
      out << "degenerate phi: v identically zero " << (zero ? "true" : "false") << "\n";
      expected = zero && !sweep.violation;
    } else {
      const double M = estimate_M(map, x, config.k, config.l, grid);
      const double c = leading_coefficient(map, sweep.base.t0);
      const int m = fix_m(config.variant, config.k, config.l, M, c);
      const FixMCertificate cert = evaluate_fix_m(config.variant, config.k, config.l, M, c, m);
      out << "fix_m  M " << format17(M) << "  m " << m << "\n";
      if (config.variant == MapVariant::Ex2) {
        out << "  (2 pi m)^(-1/2) = " << format17(cert.first_lhs) << " <= 1/k = "
            << format17(cert.first_rhs) << "\n";
        out << "  l + M = " << format17(cert.second_lhs) << " < (2 pi m)^(1/2) |phi'(t0)| = "
            << format17(cert.second_rhs) << "\n";
      } else {
        out << "  m = " << m << " > (2 pi)^(-1) max{k^2, |phi''(t0)|^(-2) (l + M)^2} = "
            << format17(cert.first_rhs) << "\n";
      }
      out << "  holds " << (cert.holds ? "true" : "false") << "\n";
      expected = expected && cert.holds;
    }
    if (!config.output.empty()) emit(config, render(config, sweep), out);
    out << "outcome " << (expected ? "expected" : "UNEXPECTED") << "\n";
    return expected ? exit_code::kOk : exit_code::kUnexpectedOutcome;
  });
}

int run_sweep(const ScenarioConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const SweepResult sweep = growth_sweep(config.map(), config.base_point(), config.rho1, config.rho2,
                                           config.k, config.l, config.m_list, config.grid());
    emit(config, render(config, sweep), out);
    return exit_code::kOk;
  });
}

int run_check_tame(const ScenarioConfig& config, const std::string& probe_path, std::ostream& out,
                   std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const std::vector<TameProbe> probes =
        parse_probe_file(config, read_file(probe_path, "probe file"));
    const TameCheckReport report = check_tame_estimate(config.map(), config.base_point(), config.rho1,
                                                       config.rho2, probes, config.grid());
    json j;
    j["satisfied"] = report.satisfied;
    j["samples_checked"] = report.samples_checked;
    j["skipped"] = report.skipped;
    j["witnesses"] = json::array();
    for (const auto& w : report.witnesses) {
      j["witnesses"].push_back({{"probe", w.probe_index},
                                {"z", w.z.describe()},
                                {"u", w.u.describe()},
                                {"lhs", w.domain_exit ? json(nullptr) : json(w.lhs)},
                                {"rhs", w.rhs},
                                {"domain_exit", w.domain_exit}});
    }
    if (config.format == OutputFormat::Json) {
      emit(config, j.dump(2) + "\n", out);
      return exit_code::kOk;
    }
    std::ostringstream text;
    text << "satisfied " << (report.satisfied ? "true" : "false") << "\n";
    text << "samples_checked " << report.samples_checked << "  skipped " << report.skipped << "\n";
    for (const auto& w : report.witnesses) {
      text << "witness probe " << w.probe_index << "  ";
      if (w.domain_exit) {
        text << "x + z leaves the domain";
      } else {
        text << "rho2(v) = " << format17(w.lhs) << " > rho1(u) = " << format17(w.rhs);
      }
      text << "\n";
    }
    emit(config, text.str(), out);
    return exit_code::kOk;
  });
}

}  // namespace tamelab
