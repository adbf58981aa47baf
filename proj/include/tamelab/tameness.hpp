#pragma once

// Metric P-norms built from the graded seminorms, and a checker for the
// almost M-tame estimate
//
//   rho1(z) <= 1  =>  x + z in dom f  and  rho2(df(x + z, u) - df(x, u)) <= rho1(u).
//
// Only falsification is computable: a report is "satisfied" when no probe
// produced a witness.

#include <cstddef>
#include <span>
#include <vector>

#include "tamelab/example_maps.hpp"
#include "tamelab/function_space.hpp"

namespace tamelab {

enum class PNormTransform {
  Bounded,  // w_i p_i / (1 + p_i)
  Linear,   // w_i p_i
};

/// rho(x) = sum_{i=0}^{truncation} w_i T(p_i(x)). Weights default to 2^-i.
/// Truncating at a finite order gives a pseudo-metric that ignores p_i for
/// i > truncation.
struct PNormSpec {
  int truncation = 12;
  PNormTransform transform = PNormTransform::Bounded;
  std::vector<double> weights;

  /// Throws UsageError on truncation outside [0, 16], a weight list of the
  /// wrong length, or a non-positive weight.
  void validate() const;
  double weight(int i) const;
};

double pnorm_eval(const PNormSpec& spec, const SmoothFunction& x, const GridSpec& grid = {});
/// rho from a precomputed seminorm profile of length >= truncation + 1.
double pnorm_from_profile(const PNormSpec& spec, std::span<const double> profile);

struct TameProbe {
  SmoothFunction z;
  SmoothFunction u;
};

struct TameWitness {
  std::size_t probe_index;
  SmoothFunction z;
  SmoothFunction u;
  double lhs;  // rho2(v); +inf for a domain exit
  double rhs;  // rho1(u)
  bool domain_exit;
};

struct TameCheckReport {
  bool satisfied = true;
  std::vector<TameWitness> witnesses;
  std::size_t samples_checked = 0;
  /// Probes with rho1(z) > 1, outside the quantifier range.
  std::size_t skipped = 0;
};

/// Throws UsageError on an empty probe list. Domain exits are recorded as
/// witnesses, not thrown.
TameCheckReport check_tame_estimate(const MapSpec& map, const SmoothFunction& x,
                                    const PNormSpec& rho1, const PNormSpec& rho2,
                                    std::span<const TameProbe> probes, const GridSpec& grid = {});

}  // namespace tamelab
