#include "tamelab/example_maps.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tamelab/errors.hpp"

namespace tamelab {

namespace {

using SF = SmoothFunction;

void require_in_domain(const MapSpec& map, const SmoothFunction& x, const GridSpec& grid,
                       const char* what) {
  const DomainMargin d = in_domain(map, x, grid);
  if (!d.inside) {
    std::ostringstream msg;
    msg.precision(6);
    msg << what << ": point lies outside the domain U (inf |n + x'| = " << d.margin << ")";
    throw DomainError(msg.str(), d.margin);
  }
}

// iota + x with iota(s) = n s.
SmoothFunction shifted_argument(const MapSpec& map, const SmoothFunction& x) {
  return SF::affine(static_cast<double>(map.n()), 0.0) + x.with_domain(Domain::RealLine);
}

}  // namespace

std::string to_string(MapVariant v) { return v == MapVariant::Ex2 ? "ex2" : "ex4"; }

MapSpec::MapSpec(MapVariant v, SmoothFunction phi, int n)
    : variant_(v),
      phi_(phi.with_domain(Domain::RealLine)),
      phi_prime_(phi_.derivative()),
      phi_second_(phi_prime_.derivative()),
      n_(n) {}

MapSpec MapSpec::pullback(const SmoothFunction& phi, int n) {
  if (n == 0) throw UsageError("n must be a nonzero integer");
  if (!phi.is_structurally_periodic()) {
    throw UsageError("phi must be 1-periodic for the pullback map: " + phi.describe());
  }
  return MapSpec(MapVariant::Ex2, phi, n);
}

MapSpec MapSpec::composition(const SmoothFunction& phi) {
  const SmoothFunction real = phi.with_domain(Domain::RealLine);
  const SmoothFunction d = real.derivative();
  constexpr int kSamples = 2001;
  for (int i = 0; i < kSamples; ++i) {
    const double t = -10.0 + 20.0 * i / (kSamples - 1);
    if (!(d.evaluate(t) > 0.0)) {
      std::ostringstream msg;
      msg << "phi must be a diffeomorphism (phi' > 0); phi'(" << t << ") = " << d.evaluate(t);
      throw UsageError(msg.str());
    }
  }
  return MapSpec(MapVariant::Ex4, real, 0);
}

SmoothFunction MapSpec::element(const SmoothFunction& x) const {
  if (x.domain() != Domain::RealLine && x.domain() != space()) {
    throw UsageError("function lives in " + to_string(x.domain()) + " but the " +
                     to_string(variant_) + " map acts on " + to_string(space()));
  }
  return x.with_domain(space());
}

DomainMargin in_domain(const MapSpec& map, const SmoothFunction& x, const GridSpec& grid) {
  const SmoothFunction e = map.element(x);
  if (map.variant() == MapVariant::Ex4) {
    return {std::numeric_limits<double>::infinity(), true};
  }
  const SmoothFunction speed = SF::constant(static_cast<double>(map.n()), e.domain()) + e.derivative();
  const SampledFunction samples = sample(speed, grid);
  double margin = std::numeric_limits<double>::infinity();
  bool positive = false;
  bool negative = false;
  for (double v : samples.values) {
    margin = std::min(margin, std::abs(v));
    positive = positive || v > 0.0;
    negative = negative || v < 0.0;
  }
  // A sign change forces a zero of the continuous n + x' somewhere in between.
  if (positive && negative) margin = 0.0;
  return {margin, margin > kDomainMarginTolerance};
}

SmoothFunction apply(const MapSpec& map, const SmoothFunction& x, const GridSpec& grid) {
  const SmoothFunction e = map.element(x);
  if (map.variant() == MapVariant::Ex4) {
    return SF::compose(map.phi(), e).with_domain(Domain::UnitInterval);
  }
  require_in_domain(map, e, grid, "apply");
  const SmoothFunction outer = SF::compose(map.phi(), shifted_argument(map, e));
  const SmoothFunction speed = SF::constant(static_cast<double>(map.n()), e.domain()) + e.derivative();
  return (outer.with_domain(Domain::Periodic1) * speed).with_domain(Domain::Periodic1);
}

SmoothFunction gateaux(const MapSpec& map, const SmoothFunction& x, const SmoothFunction& u,
                       const GridSpec& grid) {
  const SmoothFunction e = map.element(x);
  const SmoothFunction dir = map.element(u);
  if (map.variant() == MapVariant::Ex4) {
    return (SF::compose(map.phi_prime(), e) * dir).with_domain(Domain::UnitInterval);
  }
  require_in_domain(map, e, grid, "gateaux");
  const SmoothFunction arg = shifted_argument(map, e);
  const SmoothFunction speed = SF::constant(static_cast<double>(map.n()), e.domain()) + e.derivative();
  const SmoothFunction stretch =
      SF::product({SF::compose(map.phi_prime(), arg).with_domain(Domain::Periodic1), dir, speed});
  const SmoothFunction transport =
      SF::compose(map.phi(), arg).with_domain(Domain::Periodic1) * dir.derivative();
  return (stretch + transport).with_domain(Domain::Periodic1);
}

SampledFunction gateaux_fd(const MapSpec& map, const SmoothFunction& x, const SmoothFunction& u,
                           double t, const GridSpec& grid) {
  if (!(t > 0.0) || !std::isfinite(t)) throw UsageError("finite-difference step must be positive");
  const SmoothFunction e = map.element(x);
  const SmoothFunction dir = map.element(u);
  const SmoothFunction forward = apply(map, e + t * dir, grid);
  const SmoothFunction backward = apply(map, e - t * dir, grid);
  SampledFunction out;
  out.s = grid.nodes(forward);
  out.values.reserve(out.s.size());
  for (double s : out.s) {
    out.values.push_back((forward.evaluate(s) - backward.evaluate(s)) / (2.0 * t));
  }
  return out;
}

}  // namespace tamelab
