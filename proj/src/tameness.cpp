#include "tamelab/tameness.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tamelab/errors.hpp"

namespace tamelab {

void PNormSpec::validate() const {
  if (truncation < 0 || truncation > kMaxJetOrder) {
    throw UsageError("P-norm truncation must lie in [0, " + std::to_string(kMaxJetOrder) + "]");
  }
  if (!weights.empty()) {
    if (weights.size() != static_cast<std::size_t>(truncation + 1)) {
      throw UsageError("P-norm needs " + std::to_string(truncation + 1) + " weights, got " +
                       std::to_string(weights.size()));
    }
    for (double w : weights) {
      if (!(w > 0.0) || !std::isfinite(w)) throw UsageError("P-norm weights must be positive");
    }
  }
}

double PNormSpec::weight(int i) const {
  if (!weights.empty()) return weights[static_cast<std::size_t>(i)];
  return std::ldexp(1.0, -i);
}

double pnorm_from_profile(const PNormSpec& spec, std::span<const double> profile) {
  spec.validate();
  if (profile.size() < static_cast<std::size_t>(spec.truncation + 1)) {
    throw UsageError("seminorm profile shorter than the P-norm truncation");
  }
  double acc = 0.0;
  for (int i = 0; i <= spec.truncation; ++i) {
    const double p = profile[static_cast<std::size_t>(i)];
    const double level = spec.transform == PNormTransform::Bounded
                             ? (std::isinf(p) ? 1.0 : p / (1.0 + p))
                             : p;
    acc += spec.weight(i) * level;
  }
  return acc;
}

double pnorm_eval(const PNormSpec& spec, const SmoothFunction& x, const GridSpec& grid) {
  spec.validate();
  return pnorm_from_profile(spec, seminorm_profile(x, spec.truncation, grid));
}

TameCheckReport check_tame_estimate(const MapSpec& map, const SmoothFunction& x,
                                    const PNormSpec& rho1, const PNormSpec& rho2,
                                    std::span<const TameProbe> probes, const GridSpec& grid) {
  if (probes.empty()) throw UsageError("check_tame_estimate needs at least one probe");
  rho1.validate();
  rho2.validate();
  const SmoothFunction base = map.element(x);
  TameCheckReport report;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const SmoothFunction z = map.element(probes[i].z);
    const SmoothFunction u = map.element(probes[i].u);
    if (pnorm_eval(rho1, z, grid) > 1.0) {
      ++report.skipped;
      continue;
    }
    ++report.samples_checked;
    const double rhs = pnorm_eval(rho1, u, grid);
    const SmoothFunction moved = base + z;
    if (!in_domain(map, moved, grid).inside) {
      report.witnesses.push_back(
          {i, z, u, std::numeric_limits<double>::infinity(), rhs, true});
      continue;
    }
    const SmoothFunction v = gateaux(map, moved, u, grid) - gateaux(map, base, u, grid);
    const double lhs = pnorm_eval(rho2, v, grid);
    if (lhs > rhs) report.witnesses.push_back({i, z, u, lhs, rhs, false});
  }
  report.satisfied = report.witnesses.empty();
  return report;
}

}  // namespace tamelab
