#pragma once

// The two nonlinear maps studied by the counterexample driver and their
// directional derivatives.
//
//   pullback (Ex2):     x -> phi o (iota + x) * (n + x'),  iota(s) = n s, on
//                       1-periodic functions, defined where inf |n + x'| > 0
//   composition (Ex4):  x -> phi o x, on smooth functions on [0, 1]

#include "tamelab/function_space.hpp"

namespace tamelab {

enum class MapVariant { Ex2, Ex4 };

std::string to_string(MapVariant v);

class MapSpec {
 public:
  /// Throws UsageError when n == 0 or phi is not structurally 1-periodic.
  static MapSpec pullback(const SmoothFunction& phi, int n);
  /// Throws UsageError unless phi' > 0 on a sample grid over [-10, 10].
  static MapSpec composition(const SmoothFunction& phi);

  MapVariant variant() const noexcept { return variant_; }
  const SmoothFunction& phi() const noexcept { return phi_; }
  const SmoothFunction& phi_prime() const noexcept { return phi_prime_; }
  const SmoothFunction& phi_second() const noexcept { return phi_second_; }
  /// Winding number n (pullback only; 0 for the composition map).
  int n() const noexcept { return n_; }
  /// The function space E the map acts on.
  Domain space() const noexcept {
    return variant_ == MapVariant::Ex2 ? Domain::Periodic1 : Domain::UnitInterval;
  }

  /// x re-tagged into the map's space; throws UsageError if it does not belong.
  SmoothFunction element(const SmoothFunction& x) const;

 private:
  MapSpec(MapVariant v, SmoothFunction phi, int n);

  MapVariant variant_;
  SmoothFunction phi_;
  SmoothFunction phi_prime_;
  SmoothFunction phi_second_;
  int n_;
};

/// Required positive margin for membership in the open set U.
inline constexpr double kDomainMarginTolerance = 1e-9;

struct DomainMargin {
  /// Grid infimum of |n + x'|; 0 when n + x' changes sign between grid nodes.
  double margin;
  bool inside;
};

DomainMargin in_domain(const MapSpec& map, const SmoothFunction& x, const GridSpec& grid = {});

/// f(x). Throws DomainError (carrying the margin) when x is outside U.
SmoothFunction apply(const MapSpec& map, const SmoothFunction& x, const GridSpec& grid = {});

/// Analytic directional derivative delta f(x, u):
///   Ex2: phi' o (iota + x) * u * (n + x') + phi o (iota + x) * u'
///   Ex4: phi' o x * u
SmoothFunction gateaux(const MapSpec& map, const SmoothFunction& x, const SmoothFunction& u,
                       const GridSpec& grid = {});

/// Central difference (f(x + t u) - f(x - t u)) / (2 t) sampled on the grid
/// of f(x + t u). Throws DomainError if x +- t u leaves U.
SampledFunction gateaux_fd(const MapSpec& map, const SmoothFunction& x, const SmoothFunction& u,
                           double t, const GridSpec& grid = {});

}  // namespace tamelab
