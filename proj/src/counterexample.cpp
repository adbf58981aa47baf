#include "tamelab/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tamelab/errors.hpp"

namespace tamelab {

namespace {

using SF = SmoothFunction;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUsableThreshold = 1e-9;
constexpr double kRootTolerance = 1e-12;

template <class F>
double bisect(F&& g, double lo, double hi, double glo) {
  while (hi - lo > kRootTolerance) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Coefficient function multiplying z^(k) in the top derivative of v.
SmoothFunction leading_factor(const MapSpec& map, const SmoothFunction& moved) {
  const SF arg = moved.with_domain(Domain::RealLine);
  if (map.variant() == MapVariant::Ex2) {
    return SF::compose(map.phi_prime(), SF::affine(static_cast<double>(map.n()), 0.0) + arg);
  }
  return SF::compose(map.phi_second(), arg);
}

void validate_m_list(std::span<const int> m_list) {
  if (m_list.empty()) throw UsageError("m list must not be empty");
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    if (m_list[i] < 1 || m_list[i] > kMaxProbeFrequency) {
      throw UsageError("m must lie in [1, " + std::to_string(kMaxProbeFrequency) + "], got " +
                       std::to_string(m_list[i]));
    }
    if (i > 0 && m_list[i] <= m_list[i - 1]) throw UsageError("m list must be strictly ascending");
  }
}

void validate_kl(int k, int l) {
  if (k < 1 || k % 2 == 0) throw UsageError("k must be odd (got " + std::to_string(k) + ")");
  if (k + 1 > kMaxJetOrder) throw UsageError("k exceeds the supported jet order");
  if (l < 1) throw UsageError("l must be a positive integer");
}

}  // namespace

void ProbeParams::validate() const {
  validate_kl(k, l);
  if (std::abs(eps0 * l - 1.0) > 1e-15) throw UsageError("eps0 must equal 1/l");
  if (m < 1 || m > kMaxProbeFrequency) throw UsageError("m outside [1, 2^14]");
  if (!std::isfinite(s0) || !std::isfinite(t0)) throw UsageError("s0 and t0 must be finite");
}

int top_order(MapVariant variant, int k) { return variant == MapVariant::Ex2 ? k - 1 : k; }

double find_t0(const MapSpec& map, const SmoothFunction& x, const GridSpec& grid) {
  double best = -1.0;
  double t0 = 0.0;
  if (map.variant() == MapVariant::Ex2) {
    const SmoothFunction& d = map.phi_prime();
    const std::size_t g = std::max(grid.min_points,
                                   static_cast<std::size_t>(std::ceil(grid.factor * d.bandwidth())));
    for (std::size_t j = 0; j < g; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(g);
      const double a = std::abs(d.evaluate(t));
      if (a > best) {
        best = a;
        t0 = t;
      }
    }
  } else {
    const SmoothFunction e = map.element(x);
    for (double s : grid.nodes(e)) {
      const double xs = e.evaluate(s);
      const double a = std::abs(map.phi_second().evaluate(xs));
      if (a > best) {
        best = a;
        t0 = xs;
      }
    }
  }
  if (!(best >= kUsableThreshold)) {
    throw NotFoundError(map.variant() == MapVariant::Ex2
                            ? "no usable t0: phi' vanishes on the grid (phi is constant)"
                            : "no usable t0: phi'' vanishes on rng x (phi is affine there)");
  }
  return t0;
}

double find_s0(const MapSpec& map, const SmoothFunction& x, double t0, const GridSpec& grid) {
  const SmoothFunction e = map.element(x);
  if (map.variant() == MapVariant::Ex2) {
    const DomainMargin d = in_domain(map, e, grid);
    if (!d.inside) throw DomainError("find_s0: x lies outside the domain U", d.margin);
    // n s + x(s) is strictly monotone on U and |x| <= p_0(x) brackets the root.
    const double n = static_cast<double>(map.n());
    const double p0 = seminorm_p(e, 0, grid);
    const double a = (t0 - p0) / n;
    const double b = (t0 + p0) / n;
    const double lo = std::min(a, b) - 0.5;
    const double hi = std::max(a, b) + 0.5;
    const auto g = [&](double s) { return n * s + e.evaluate(s) - t0; };
    const double glo = g(lo);
    if (glo == 0.0) return lo;
    return bisect(g, lo, hi, glo);
  }
  const auto g = [&](double s) { return e.evaluate(s) - t0; };
  const std::vector<double> s = grid.nodes(e);
  double previous = g(s.front());
  if (previous == 0.0) return s.front();
  for (std::size_t j = 1; j < s.size(); ++j) {
    const double current = g(s[j]);
    if (current == 0.0) return s[j];
    if ((current < 0.0) != (previous < 0.0)) return bisect(g, s[j - 1], s[j], previous);
    previous = current;
  }
  std::ostringstream msg;
  msg << "no s0 with x(s0) = " << t0 << " on the grid (t0 outside rng x)";
  throw NotFoundError(msg.str());
}

ProbePair build_probe(const ProbeParams& params, MapVariant variant) {
  params.validate();
  const Domain d = variant == MapVariant::Ex2 ? Domain::Periodic1 : Domain::UnitInterval;
  const double amplitude = std::pow(kTwoPi * params.m, -params.k + 0.5);
  return {SF::sinusoid(amplitude, params.m, params.s0, d), SF::constant(params.eps0, d)};
}

Residual residual_Tz(const MapSpec& map, const SmoothFunction& x, const ProbeParams& params,
                     const ProbePair& probe, const GridSpec& grid) {
  params.validate();
  const SmoothFunction e = map.element(x);
  const SmoothFunction moved = e + map.element(probe.z);
  Residual out;
  out.v = gateaux(map, moved, probe.u, grid) - gateaux(map, e, probe.u, grid);
  const SmoothFunction c = leading_factor(map, moved);
  const int top = top_order(map.variant(), params.k);
  double factorial = 1.0;
  for (int q = 2; q <= top; ++q) factorial *= q;

  const auto leading = [&](double s) {
    return params.eps0 * c.evaluate(s) *
           probe_deriv_closed_form(params.m, params.k, params.s0, params.k, s);
  };
  out.Tz.s = grid.nodes(out.v);
  out.Tz.values.reserve(out.Tz.s.size());
  for (double s : out.Tz.s) {
    const double vt = factorial * out.v.jet_at(s, top)[top];
    out.Tz.values.push_back((vt - leading(s)) / params.eps0);
  }
  out.top_at_s0 = factorial * out.v.jet_at(params.s0, top)[top];
  out.leading_at_s0 = leading(params.s0);
  return out;
}

double leading_coefficient(const MapSpec& map, double t0) {
  const SmoothFunction& c = map.variant() == MapVariant::Ex2 ? map.phi_prime() : map.phi_second();
  return std::abs(c.evaluate(t0));
}

ProbeParams locate_probe(const MapSpec& map, const SmoothFunction& x, int k, int l,
                         const GridSpec& grid, bool* degenerate) {
  validate_kl(k, l);
  ProbeParams p;
  p.k = k;
  p.l = l;
  p.eps0 = 1.0 / l;
  try {
    p.t0 = find_t0(map, x, grid);
  } catch (const NotFoundError&) {
    // Degenerate phi: every t0 gives a zero leading coefficient, so pick a
    // canonical one and let the sweep record v = 0.
    if (degenerate) *degenerate = true;
    if (map.variant() == MapVariant::Ex4) {
      p.s0 = 0.5;
      p.t0 = map.element(x).evaluate(p.s0);
      return p;
    }
    p.t0 = 0.0;
  }
  if (map.variant() == MapVariant::Ex4 && map.element(x).constant_value()) {
    p.s0 = 0.5;  // every s is a root; keep the probe's oscillation inside I
  } else {
    p.s0 = find_s0(map, x, p.t0, grid);
  }
  return p;
}

namespace {

GrowthRecord measure(const MapSpec& map, const SmoothFunction& x, const PNormSpec& rho1,
                     const PNormSpec& rho2, const ProbeParams& p, double coefficient,
                     const GridSpec& grid) {
  const ProbePair probe = build_probe(p, map.variant());
  const Residual r = residual_Tz(map, x, p, probe, grid);
  GrowthRecord rec;
  rec.m = p.m;
  rec.p_km1_z = seminorm_p(probe.z, p.k - 1, grid);
  rec.rho1_z = pnorm_eval(rho1, probe.z, grid);
  rec.rho1_u = pnorm_eval(rho1, probe.u, grid);
  rec.top_deriv_s0 = std::abs(r.top_at_s0);
  rec.predicted = p.eps0 * std::sqrt(kTwoPi * p.m) * coefficient;
  rec.Tz_sup = r.Tz.sup_abs();
  rec.rho2_v = pnorm_eval(rho2, r.v, grid);
  return rec;
}

}  // namespace

SweepResult growth_sweep(const MapSpec& map, const SmoothFunction& x, const PNormSpec& rho1,
                         const PNormSpec& rho2, int k, int l, std::span<const int> m_list,
                         const GridSpec& grid) {
  validate_kl(k, l);
  validate_m_list(m_list);
  rho1.validate();
  rho2.validate();
  SweepResult out;
  out.base = locate_probe(map, x, k, l, grid, &out.degenerate);
  const double coefficient = leading_coefficient(map, out.base.t0);
  for (int m : m_list) {
    ProbeParams p = out.base;
    p.m = m;
    out.records.push_back(measure(map, x, rho1, rho2, p, coefficient, grid));
    const GrowthRecord& rec = out.records.back();
    out.violation = out.violation || (rec.rho1_z <= 1.0 && rec.rho2_v > rec.rho1_u);
  }

  bool positive = out.records.size() >= 2;
  for (const auto& rec : out.records) positive = positive && rec.top_deriv_s0 > 0.0;
  if (positive) {
    double mx = 0.0;
    double my = 0.0;
    for (const auto& rec : out.records) {
      mx += std::log(static_cast<double>(rec.m));
      my += std::log(rec.top_deriv_s0);
    }
    const double count = static_cast<double>(out.records.size());
    mx /= count;
    my /= count;
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& rec : out.records) {
      const double dx = std::log(static_cast<double>(rec.m)) - mx;
      sxy += dx * (std::log(rec.top_deriv_s0) - my);
      sxx += dx * dx;
    }
    out.slope = sxy / sxx;
  }
  return out;
}

std::vector<int> default_m_list() {
  std::vector<int> out;
  for (int m = 1 << 4; m <= 1 << 12; m *= 2) out.push_back(m);
  return out;
}

double estimate_M(const MapSpec& map, const SmoothFunction& x, int k, int l, const GridSpec& grid) {
  bool degenerate = false;
  const ProbeParams base = locate_probe(map, x, k, l, grid, &degenerate);
  double worst = 0.0;
  for (int m : {16, 32, 64}) {
    ProbeParams p = base;
    p.m = m;
    worst = std::max(worst, residual_Tz(map, x, p, build_probe(p, map.variant()), grid).Tz.sup_abs());
  }
  return 2.0 * worst + 1.0;
}

FixMCertificate evaluate_fix_m(MapVariant variant, int k, int l, double M, double coefficient,
                               int m) {
  FixMCertificate c;
  c.m = m;
  c.M = M;
  const double w = kTwoPi * m;
  if (variant == MapVariant::Ex2) {
    c.first_lhs = std::pow(w, -0.5);
    c.first_rhs = 1.0 / k;
    c.second_lhs = l + M;
    c.second_rhs = std::sqrt(w) * coefficient;
    c.holds = c.first_lhs <= c.first_rhs && c.second_lhs < c.second_rhs;
  } else {
    const double spread = (l + M) / coefficient;
    c.first_lhs = m;
    c.first_rhs = std::max(static_cast<double>(k) * k, spread * spread) / kTwoPi;
    c.holds = c.first_lhs > c.first_rhs;
  }
  return c;
}

int fix_m(MapVariant variant, int k, int l, double M, double coefficient) {
  validate_kl(k, l);
  if (!(M >= 0.0)) throw UsageError("M estimate must be non-negative");
  if (!(coefficient >= kUsableThreshold)) throw NotFoundError("no usable t0: leading coefficient vanishes");
  for (int m = 1; m <= kMaxProbeFrequency; m *= 2) {
    if (evaluate_fix_m(variant, k, l, M, coefficient, m).holds) return m;
  }
  std::ostringstream msg;
  msg << "required m exceeds the precision budget 2^14 (M = " << M << ")";
  throw PrecisionBudgetError(msg.str());
}

}  // namespace tamelab
