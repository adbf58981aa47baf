#include "tamelab/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <type_traits>

#include "tamelab/errors.hpp"

namespace tamelab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_integer(double v) { return std::isfinite(v) && v == std::nearbyint(v); }

// Integer multiple of 2 pi, allowing for the rounding in a * 2 pi.
bool is_two_pi_multiple(double a) {
  const double q = a / kTwoPi;
  return std::abs(q - std::nearbyint(q)) <= 1e-12 * std::max(1.0, std::abs(q));
}

Domain join(Domain a, Domain b) {
  if (a == b) return a;
  if (a == Domain::RealLine) return b;
  if (b == Domain::RealLine) return a;
  throw UsageError("cannot combine a Periodic1 function with a UnitInterval function");
}

// 2 pi f (s - shift), reduced to a single turn when f is an integer so the
// probe is exactly periodic and exactly zero-phase at s = shift.
double sinusoid_phase(const node::SinusoidProbe& p, double s) {
  double turns = p.frequency * (s - p.shift);
  if (is_integer(p.frequency)) turns = std::remainder(turns, 1.0);
  return kTwoPi * turns;
}

bool periodic(const FunctionNode& n);

// Slope of the affine part when the tree is (integer-slope affine) + (periodic).
bool integer_shift_form(const FunctionNode& n) {
  return std::visit(
      Overloaded{
          [](const node::Identity&) { return true; },
          [](const node::Affine& a) { return is_integer(a.a); },
          [](const node::Sum& s) {
            return std::all_of(s.terms.begin(), s.terms.end(), [](const SmoothFunction& t) {
              return integer_shift_form(t.node());
            });
          },
          [](const node::Scale& s) {
            return periodic(s.child.node()) ||
                   (is_integer(s.c) && integer_shift_form(s.child.node()));
          },
          [&n](const auto&) { return periodic(n); },
      },
      n.v);
}

bool periodic(const FunctionNode& n) {
  return std::visit(
      Overloaded{
          [](const node::Constant&) { return true; },
          [](const node::Identity&) { return false; },
          [](const node::Affine& a) { return a.a == 0.0; },
          [](const node::SinusoidProbe& p) { return is_integer(p.frequency); },
          [](const node::Sum& s) {
            return std::all_of(s.terms.begin(), s.terms.end(),
                               [](const SmoothFunction& t) { return periodic(t.node()); });
          },
          [](const node::Product& p) {
            return std::all_of(p.factors.begin(), p.factors.end(),
                               [](const SmoothFunction& t) { return periodic(t.node()); });
          },
          [](const node::Scale& s) { return periodic(s.child.node()); },
          [](const node::PrimitiveCompose& c) {
            if (periodic(c.inner.node())) return true;
            const bool trig = c.outer.kind() == PrimitiveKind::Sin ||
                              c.outer.kind() == PrimitiveKind::Cos;
            if (!trig) return false;
            if (const auto* a = std::get_if<node::Affine>(&c.inner.node().v)) {
              return is_two_pi_multiple(a->a);
            }
            return false;
          },
          [](const node::Compose& c) {
            return periodic(c.inner.node()) ||
                   (periodic(c.outer.node()) && integer_shift_form(c.inner.node()));
          },
      },
      n.v);
}

double linear_slope(const FunctionNode& n) {
  return std::visit(
      Overloaded{
          [](const node::Identity&) { return 1.0; },
          [](const node::Affine& a) { return std::abs(a.a); },
          [](const node::Sum& s) {
            double acc = 0.0;
            for (const auto& t : s.terms) acc += linear_slope(t.node());
            return acc;
          },
          [](const node::Scale& s) { return std::abs(s.c) * linear_slope(s.child.node()); },
          [](const auto&) { return 0.0; },
      },
      n.v);
}

double bandwidth_of(const FunctionNode& n) {
  return std::visit(
      Overloaded{
          [](const node::Constant&) { return 0.0; },
          [](const node::Identity&) { return 0.0; },
          [](const node::Affine&) { return 0.0; },
          [](const node::SinusoidProbe& p) { return std::abs(p.frequency); },
          [](const node::Sum& s) {
            double acc = 0.0;
            for (const auto& t : s.terms) acc = std::max(acc, t.bandwidth());
            return acc;
          },
          [](const node::Product& p) {
            double acc = 0.0;
            for (const auto& t : p.factors) acc += t.bandwidth();
            return acc;
          },
          [](const node::Scale& s) { return s.child.bandwidth(); },
          [](const node::PrimitiveCompose& c) {
            const double inner = c.inner.bandwidth();
            switch (c.outer.kind()) {
              case PrimitiveKind::Sin:
              case PrimitiveKind::Cos:
                return linear_slope(c.inner.node()) / kTwoPi + inner;
              case PrimitiveKind::Polynomial:
                return inner * std::max<double>(1.0, static_cast<double>(c.outer.params().size() - 1));
              case PrimitiveKind::Affine:
                return inner;
              default:
                return 2.0 * inner;
            }
          },
          [](const node::Compose& c) {
            const double outer = c.outer.bandwidth();
            const double inner = c.inner.bandwidth();
            return outer * std::max(1.0, linear_slope(c.inner.node())) +
                   inner * (outer > 0.0 ? 1.0 : 2.0);
          },
      },
      n.v);
}

double value_eval(const FunctionNode& n, double s) {
  return std::visit(
      Overloaded{
          [](const node::Constant& c) { return c.value; },
          [s](const node::Identity&) { return s; },
          [s](const node::Affine& a) { return a.a * s + a.b; },
          [s](const node::SinusoidProbe& p) {
            return p.amplitude * sin_derivative_value(p.quarter_turns, sinusoid_phase(p, s));
          },
          [s](const node::Sum& sum) {
            double acc = 0.0;
            for (const auto& t : sum.terms) acc += value_eval(t.node(), s);
            return acc;
          },
          [s](const node::Product& p) {
            double acc = 1.0;
            for (const auto& t : p.factors) acc *= value_eval(t.node(), s);
            return acc;
          },
          [s](const node::Scale& sc) { return sc.c * value_eval(sc.child.node(), s); },
          [s](const node::PrimitiveCompose& c) {
            return c.outer.value(value_eval(c.inner.node(), s));
          },
          [s](const node::Compose& c) {
            return value_eval(c.outer.node(), value_eval(c.inner.node(), s));
          },
      },
      n.v);
}

std::string describe_node(const FunctionNode& n) {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{
                 [&](const node::Constant& c) { out << c.value; },
                 [&](const node::Identity&) { out << "s"; },
                 [&](const node::Affine& a) { out << "(" << a.a << "*s+" << a.b << ")"; },
                 [&](const node::SinusoidProbe& p) {
                   out << p.amplitude << "*sin^(" << p.quarter_turns << ")(2pi*" << p.frequency
                       << "*(s-" << p.shift << "))";
                 },
                 [&](const node::Sum& s) {
                   out << "(";
                   for (std::size_t i = 0; i < s.terms.size(); ++i) {
                     out << (i ? " + " : "") << describe_node(s.terms[i].node());
                   }
                   out << ")";
                 },
                 [&](const node::Product& p) {
                   out << "(";
                   for (std::size_t i = 0; i < p.factors.size(); ++i) {
                     out << (i ? " * " : "") << describe_node(p.factors[i].node());
                   }
                   out << ")";
                 },
                 [&](const node::Scale& s) { out << s.c << "*" << describe_node(s.child.node()); },
                 [&](const node::PrimitiveCompose& c) {
                   out << c.outer.name() << "(" << describe_node(c.inner.node()) << ")";
                 },
                 [&](const node::Compose& c) {
                   out << "[" << describe_node(c.outer.node()) << "]o("
                       << describe_node(c.inner.node()) << ")";
                 },
             },
             n.v);
  return out.str();
}

}  // namespace

std::string to_string(Domain d) {
  switch (d) {
    case Domain::Periodic1: return "periodic1";
    case Domain::UnitInterval: return "unit_interval";
    case Domain::RealLine: return "real_line";
  }
  return "?";
}

double sin_derivative_value(int q, double theta) {
  switch (((q % 4) + 4) % 4) {
    case 0: return std::sin(theta);
    case 1: return std::cos(theta);
    case 2: return -std::sin(theta);
    default: return -std::cos(theta);
  }
}

SmoothFunction::SmoothFunction() : SmoothFunction(constant(0.0)) {}

SmoothFunction::SmoothFunction(std::shared_ptr<const FunctionNode> node, Domain d)
    : node_(std::move(node)), domain_(d) {
  if (domain_ == Domain::Periodic1 && !periodic(*node_)) domain_ = Domain::RealLine;
}

SmoothFunction SmoothFunction::constant(double c, Domain d) {
  if (!std::isfinite(c)) throw UsageError("constant must be finite");
  return {std::make_shared<FunctionNode>(FunctionNode{node::Constant{c}}), d};
}

SmoothFunction SmoothFunction::identity(Domain d) {
  if (d == Domain::Periodic1) throw UsageError("the identity is not 1-periodic");
  return {std::make_shared<FunctionNode>(FunctionNode{node::Identity{}}), d};
}

SmoothFunction SmoothFunction::affine(double a, double b, Domain d) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw UsageError("affine coefficients must be finite");
  if (a == 0.0) return constant(b, d);
  if (d == Domain::Periodic1) throw UsageError("a non-constant affine function is not 1-periodic");
  return {std::make_shared<FunctionNode>(FunctionNode{node::Affine{a, b}}), d};
}

SmoothFunction SmoothFunction::sinusoid(double amplitude, double frequency, double shift, Domain d,
                                        int quarter_turns) {
  if (!std::isfinite(amplitude) || !std::isfinite(frequency) || !std::isfinite(shift)) {
    throw UsageError("sinusoid parameters must be finite");
  }
  if (d == Domain::Periodic1 && !is_integer(frequency)) {
    throw UsageError("a Periodic1 sinusoid needs an integer frequency");
  }
  if (amplitude == 0.0) return constant(0.0, d);
  return {std::make_shared<FunctionNode>(FunctionNode{
              node::SinusoidProbe{amplitude, frequency, shift, ((quarter_turns % 4) + 4) % 4}}),
          d};
}

SmoothFunction SmoothFunction::sum(std::vector<SmoothFunction> terms) {
  Domain d = Domain::RealLine;
  for (const auto& t : terms) d = join(d, t.domain());
  std::vector<SmoothFunction> kept;
  double constant_part = 0.0;
  bool has_constant = false;
  for (auto& t : terms) {
    if (auto c = t.constant_value()) {
      constant_part += *c;
      has_constant = true;
    } else {
      kept.push_back(std::move(t));
    }
  }
  if (has_constant && constant_part != 0.0) kept.push_back(constant(constant_part, d));
  if (kept.empty()) return constant(0.0, d);
  if (kept.size() == 1) return kept.front().with_domain(d);
  return {std::make_shared<FunctionNode>(FunctionNode{node::Sum{std::move(kept)}}), d};
}

SmoothFunction SmoothFunction::product(std::vector<SmoothFunction> factors) {
  Domain d = Domain::RealLine;
  for (const auto& t : factors) d = join(d, t.domain());
  std::vector<SmoothFunction> kept;
  double constant_part = 1.0;
  for (auto& t : factors) {
    if (auto c = t.constant_value()) {
      constant_part *= *c;
    } else {
      kept.push_back(std::move(t));
    }
  }
  if (constant_part == 0.0 || kept.empty()) return constant(constant_part, d);
  SmoothFunction core = kept.size() == 1
                            ? kept.front().with_domain(d)
                            : SmoothFunction(std::make_shared<FunctionNode>(
                                                 FunctionNode{node::Product{std::move(kept)}}),
                                             d);
  return scale(constant_part, core);
}

SmoothFunction SmoothFunction::scale(double c, const SmoothFunction& f) {
  if (!std::isfinite(c)) throw UsageError("scale factor must be finite");
  if (c == 1.0) return f;
  if (c == 0.0) return constant(0.0, f.domain());
  if (auto v = f.constant_value()) return constant(c * *v, f.domain());
  if (const auto* s = std::get_if<node::Scale>(&f.node().v)) {
    return scale(c * s->c, s->child.with_domain(f.domain()));
  }
  return {std::make_shared<FunctionNode>(FunctionNode{node::Scale{c, f}}), f.domain()};
}

SmoothFunction SmoothFunction::compose(const ScalarPrimitive& outer, const SmoothFunction& inner) {
  if (auto v = inner.constant_value()) return constant(outer.value(*v), inner.domain());
  return {std::make_shared<FunctionNode>(FunctionNode{node::PrimitiveCompose{outer, inner}}),
          inner.domain()};
}

SmoothFunction SmoothFunction::compose(const SmoothFunction& outer, const SmoothFunction& inner) {
  if (auto v = outer.constant_value()) return constant(*v, inner.domain());
  if (std::holds_alternative<node::Identity>(outer.node().v)) return inner;
  if (auto v = inner.constant_value()) return constant(outer.evaluate(*v), inner.domain());
  return {std::make_shared<FunctionNode>(
              FunctionNode{node::Compose{outer.with_domain(Domain::RealLine), inner}}),
          inner.domain()};
}

SmoothFunction SmoothFunction::with_domain(Domain d) const {
  if (d == domain_) return *this;
  if ((d == Domain::Periodic1 && domain_ == Domain::UnitInterval) ||
      (d == Domain::UnitInterval && domain_ == Domain::Periodic1)) {
    throw UsageError("cannot move a function between the Periodic1 and UnitInterval spaces");
  }
  if (d == Domain::Periodic1 && !periodic(*node_)) {
    throw UsageError("function is not structurally 1-periodic: " + describe());
  }
  SmoothFunction r = *this;
  r.domain_ = d;
  return r;
}

bool SmoothFunction::is_zero() const noexcept {
  const auto c = constant_value();
  return c && *c == 0.0;
}

std::optional<double> SmoothFunction::constant_value() const noexcept {
  if (const auto* c = std::get_if<node::Constant>(&node_->v)) return c->value;
  return std::nullopt;
}

void SmoothFunction::require_in_domain(double s) const {
  if (!std::isfinite(s)) throw UsageError("evaluation point must be finite");
  if (domain_ == Domain::UnitInterval && (s < 0.0 || s > 1.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "point " << s << " lies outside [0, 1]";
    throw UsageError(msg.str());
  }
}

double SmoothFunction::evaluate(double s) const {
  require_in_domain(s);
  return value_eval(*node_, s);
}

TaylorJet SmoothFunction::jet_at(double s, int order) const {
  require_in_domain(s);
  return jet_eval(*node_, TaylorJet::variable(s, order), true);
}

TaylorJet jet_eval(const FunctionNode& n, const TaylorJet& input, bool identity_input) {
  const double base = input.base_point();
  const int order = input.order();
  return std::visit(
      Overloaded{
          [&](const node::Constant& c) { return TaylorJet::constant(base, order, c.value); },
          [&](const node::Identity&) { return input; },
          [&](const node::Affine& a) { return jet_shift_value(jet_scale(a.a, input), a.b); },
          [&](const node::SinusoidProbe& p) {
            const double rate = kTwoPi * p.frequency;
            if (identity_input) {
              std::array<double, kMaxJetOrder + 1> c{};
              const double theta = sinusoid_phase(p, base);
              const double s = std::sin(theta);
              const double co = std::cos(theta);
              double scale = p.amplitude;
              for (int i = 0; i <= order; ++i) {
                if (i > 0) scale *= rate / i;
                double trig = 0.0;
                switch ((p.quarter_turns + i) & 3) {
                  case 0: trig = s; break;
                  case 1: trig = co; break;
                  case 2: trig = -s; break;
                  default: trig = -co; break;
                }
                c[static_cast<std::size_t>(i)] = scale * trig;
              }
              return TaylorJet(base, std::span<const double>(c.data(), static_cast<std::size_t>(order + 1)));
            }
            // The phase series keeps the reduced value so it agrees with evaluate().
            TaylorJet theta = jet_scale(rate, jet_shift_value(input, -p.shift));
            theta = jet_shift_value(theta, sinusoid_phase(p, input.value()) - theta.value());
            const bool odd = (p.quarter_turns & 1) != 0;
            const double sign = (p.quarter_turns >= 2) ? -1.0 : 1.0;
            const ScalarPrimitive trig = odd ? ScalarPrimitive::cos() : ScalarPrimitive::sin();
            return jet_scale(sign * p.amplitude, jet_compose(trig, theta));
          },
          [&](const node::Sum& s) {
            TaylorJet acc = jet_eval(s.terms.front().node(), input, identity_input);
            for (std::size_t i = 1; i < s.terms.size(); ++i) {
              acc = jet_add(acc, jet_eval(s.terms[i].node(), input, identity_input));
            }
            return acc;
          },
          [&](const node::Product& p) {
            TaylorJet acc = jet_eval(p.factors.front().node(), input, identity_input);
            for (std::size_t i = 1; i < p.factors.size(); ++i) {
              acc = jet_mul(acc, jet_eval(p.factors[i].node(), input, identity_input));
            }
            return acc;
          },
          [&](const node::Scale& s) {
            return jet_scale(s.c, jet_eval(s.child.node(), input, identity_input));
          },
          [&](const node::PrimitiveCompose& c) {
            return jet_compose(c.outer, jet_eval(c.inner.node(), input, identity_input));
          },
          [&](const node::Compose& c) {
            const TaylorJet inner = jet_eval(c.inner.node(), input, identity_input);
            return jet_eval(c.outer.node(), inner, false);
          },
      },
      n.v);
}

namespace {

SmoothFunction primitive_derivative(const ScalarPrimitive& p, const SmoothFunction& inner) {
  using SF = SmoothFunction;
  switch (p.kind()) {
    case PrimitiveKind::Sin: return SF::compose(ScalarPrimitive::cos(), inner);
    case PrimitiveKind::Cos: return SF::scale(-1.0, SF::compose(ScalarPrimitive::sin(), inner));
    case PrimitiveKind::Exp: return SF::compose(ScalarPrimitive::exp(), inner);
    case PrimitiveKind::Tanh: {
      const SF t = SF::compose(ScalarPrimitive::tanh(), inner);
      return SF::sum({SF::constant(1.0, inner.domain()), SF::scale(-1.0, SF::product({t, t}))});
    }
    case PrimitiveKind::Polynomial: {
      const auto& a = p.params();
      if (a.size() <= 1) return SF::constant(0.0, inner.domain());
      std::vector<double> da;
      for (std::size_t j = 1; j < a.size(); ++j) da.push_back(static_cast<double>(j) * a[j]);
      return SF::compose(ScalarPrimitive::polynomial(std::move(da)), inner);
    }
    case PrimitiveKind::Affine: return SF::constant(p.params()[0], inner.domain());
  }
  throw UsageError("unsupported primitive");
}

}  // namespace

SmoothFunction SmoothFunction::derivative() const {
  using SF = SmoothFunction;
  const Domain d = domain_;
  SmoothFunction r = std::visit(
      Overloaded{
          [&](const node::Constant&) { return SF::constant(0.0, d); },
          [&](const node::Identity&) { return SF::constant(1.0, d); },
          [&](const node::Affine& a) { return SF::constant(a.a, d); },
          [&](const node::SinusoidProbe& p) {
            return SF::sinusoid(p.amplitude * kTwoPi * p.frequency, p.frequency, p.shift,
                                Domain::RealLine, p.quarter_turns + 1);
          },
          [&](const node::Sum& s) {
            std::vector<SF> terms;
            for (const auto& t : s.terms) terms.push_back(t.derivative());
            return SF::sum(std::move(terms));
          },
          [&](const node::Product& p) {
            std::vector<SF> terms;
            for (std::size_t j = 0; j < p.factors.size(); ++j) {
              std::vector<SF> f = p.factors;
              f[j] = f[j].derivative();
              terms.push_back(SF::product(std::move(f)));
            }
            return SF::sum(std::move(terms));
          },
          [&](const node::Scale& s) { return SF::scale(s.c, s.child.derivative()); },
          [&](const node::PrimitiveCompose& c) {
            return SF::product({primitive_derivative(c.outer, c.inner), c.inner.derivative()});
          },
          [&](const node::Compose& c) {
            return SF::product(
                {SF::compose(c.outer.derivative(), c.inner), c.inner.derivative()});
          },
      },
      node_->v);
  if (d == Domain::RealLine) return r;
  return SmoothFunction(r.node_, d);
}

bool SmoothFunction::is_structurally_periodic() const { return periodic(*node_); }

double SmoothFunction::bandwidth() const { return bandwidth_of(*node_); }

std::string SmoothFunction::describe() const { return describe_node(*node_); }

SmoothFunction operator+(const SmoothFunction& a, const SmoothFunction& b) {
  return SmoothFunction::sum({a, b});
}
SmoothFunction operator-(const SmoothFunction& a, const SmoothFunction& b) {
  return SmoothFunction::sum({a, SmoothFunction::scale(-1.0, b)});
}
SmoothFunction operator-(const SmoothFunction& a) { return SmoothFunction::scale(-1.0, a); }
SmoothFunction operator*(const SmoothFunction& a, const SmoothFunction& b) {
  return SmoothFunction::product({a, b});
}
SmoothFunction operator*(double c, const SmoothFunction& a) { return SmoothFunction::scale(c, a); }

std::size_t GridSpec::points_for(const SmoothFunction& f) const {
  if (!(factor > 0.0)) throw UsageError("grid factor must be positive");
  const double wanted = std::ceil(factor * f.bandwidth());
  return std::max(min_points, static_cast<std::size_t>(std::max(0.0, wanted)));
}

std::vector<double> GridSpec::nodes(const SmoothFunction& f) const {
  const std::size_t g = points_for(f);
  std::vector<double> s(g);
  switch (f.domain()) {
    case Domain::Periodic1:
      for (std::size_t j = 0; j < g; ++j) s[j] = static_cast<double>(j) / static_cast<double>(g);
      break;
    case Domain::UnitInterval:
      for (std::size_t j = 0; j < g; ++j) {
        s[j] = static_cast<double>(j) / static_cast<double>(g - 1);
      }
      s.back() = 1.0;
      break;
    case Domain::RealLine:
      throw UsageError("sup-seminorms need a Periodic1 or UnitInterval function");
  }
  return s;
}

double SampledFunction::sup_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

SampledFunction sample(const SmoothFunction& f, const GridSpec& grid) {
  SampledFunction out;
  out.s = grid.nodes(f);
  out.values.reserve(out.s.size());
  for (double s : out.s) out.values.push_back(value_eval(f.node(), s));
  return out;
}

std::optional<std::vector<double>> analytic_seminorm_profile(const SmoothFunction& f,
                                                             int max_order) {
  if (max_order < 0 || max_order > kMaxJetOrder) {
    throw UsageError("seminorm order outside [0, " + std::to_string(kMaxJetOrder) + "]");
  }
  const auto n = static_cast<std::size_t>(max_order + 1);
  double c = 1.0;
  const FunctionNode* node = &f.node();
  if (const auto* s = std::get_if<node::Scale>(&node->v)) {
    c = s->c;
    node = &s->child.node();
  }
  if (const auto* k = std::get_if<node::Constant>(&node->v)) {
    return std::vector<double>(n, std::abs(c * k->value));
  }
  if (const auto* p = std::get_if<node::SinusoidProbe>(&node->v)) {
    // The sup of |sin^(q)| over the domain is 1 once a full period fits.
    const bool full_period = f.domain() == Domain::Periodic1
                                 ? is_integer(p->frequency) && p->frequency != 0.0
                                 : std::abs(p->frequency) >= 1.0;
    if (!full_period) return std::nullopt;
    const double rate = kTwoPi * std::abs(p->frequency);
    std::vector<double> out(n);
    double level = std::abs(p->amplitude);
    double best = level;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) {
        level *= rate;
        best = std::max(best, level);
      }
      out[i] = std::abs(c) * best;
    }
    return out;
  }
  return std::nullopt;
}

std::vector<double> grid_seminorm_profile(const SmoothFunction& f, int max_order,
                                          const GridSpec& grid) {
  if (max_order < 0 || max_order > kMaxJetOrder) {
    throw UsageError("seminorm order outside [0, " + std::to_string(kMaxJetOrder) + "]");
  }
  std::array<double, kMaxJetOrder + 1> factorial{};
  factorial[0] = 1.0;
  for (int i = 1; i <= kMaxJetOrder; ++i) factorial[i] = factorial[i - 1] * i;

  std::array<double, kMaxJetOrder + 1> sup{};
  for (double s : grid.nodes(f)) {
    const TaylorJet j = jet_eval(f.node(), TaylorJet::variable(s, max_order), true);
    for (int l = 0; l <= max_order; ++l) {
      sup[l] = std::max(sup[l], std::abs(factorial[l] * j[l]));
    }
  }
  std::vector<double> out(static_cast<std::size_t>(max_order + 1));
  double running = 0.0;
  for (int i = 0; i <= max_order; ++i) {
    running = std::max(running, sup[i]);
    out[static_cast<std::size_t>(i)] = running;
  }
  return out;
}

std::vector<double> seminorm_profile(const SmoothFunction& f, int max_order,
                                     const GridSpec& grid) {
  if (auto exact = analytic_seminorm_profile(f, max_order)) {
    if (f.domain() == Domain::RealLine) {
      throw UsageError("sup-seminorms need a Periodic1 or UnitInterval function");
    }
    return *exact;
  }
  return grid_seminorm_profile(f, max_order, grid);
}

double seminorm_p(const SmoothFunction& f, int i, const GridSpec& grid) {
  return seminorm_profile(f, i, grid).back();
}

double probe_deriv_closed_form(int m, int k, double s0, int i, double s) {
  if (m < 1) throw UsageError("probe frequency m must be >= 1");
  if (k < 1 || k % 2 == 0) throw UsageError("k must be odd");
  if (i < 0 || i > kMaxJetOrder) throw UsageError("derivative order outside [0, 16]");
  const double rate = kTwoPi * m;
  const double magnitude = std::pow(rate, static_cast<double>(i - k) + 0.5);
  const double turns = std::remainder(static_cast<double>(m) * (s - s0), 1.0);
  return magnitude * sin_derivative_value(i, kTwoPi * turns);
}

}  // namespace tamelab
