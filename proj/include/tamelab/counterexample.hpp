#pragma once

// Oscillatory probes z_m(s) = (2 pi m)^(-k+1/2) sin(2 pi m (s - s0)) and the
// m-sweep that shows the top derivative of
//   v = delta f(x + z, u) - delta f(x, u),   u = eps0 = 1/l,
// growing like (2 pi m)^(1/2) while the low seminorms of z shrink.

#include <optional>
#include <span>
#include <vector>

#include "tamelab/example_maps.hpp"
#include "tamelab/tameness.hpp"

namespace tamelab {

struct ProbeParams {
  int k = 3;
  int l = 8;
  double eps0 = 0.125;
  int m = 16;
  double s0 = 0.0;
  double t0 = 0.0;

  /// k odd and positive, l >= 1, eps0 * l == 1, 1 <= m <= 2^14.
  void validate() const;
};

inline constexpr int kMaxProbeFrequency = 1 << 14;

struct GrowthRecord {
  int m = 0;
  double p_km1_z = 0.0;
  double rho1_z = 0.0;
  double rho1_u = 0.0;
  /// |v^(k-1)(s0)| for the pullback map, |v^(k)(s0)| for the composition map.
  double top_deriv_s0 = 0.0;
  /// eps0 (2 pi m)^(1/2) |phi'(t0)|, or |phi''(t0)| for the composition map.
  double predicted = 0.0;
  double Tz_sup = 0.0;
  double rho2_v = 0.0;

  friend bool operator==(const GrowthRecord&, const GrowthRecord&) = default;
};

/// Order of the derivative of v that carries the blow-up: k - 1 or k.
int top_order(MapVariant variant, int k);

/// Ex2: grid argmax of |phi'| over [0, 1), ties to the smallest t.
/// Ex4: phi'' o x maximised over I, returned as t0 = x(s).
/// Throws NotFoundError("no usable t0") when the maximum is below 1e-9.
double find_t0(const MapSpec& map, const SmoothFunction& x, const GridSpec& grid = {});

/// Root of n s + x(s) - t0 (Ex2) or x(s) - t0 (Ex4), bisected to 1e-12.
/// Throws NotFoundError when the Ex4 grid scan finds no sign change.
double find_s0(const MapSpec& map, const SmoothFunction& x, double t0, const GridSpec& grid = {});

/// k, l, eps0 = 1/l, t0 and s0 for a sweep (m left at its default). Ex4 with
/// constant x places s0 at 1/2. A degenerate phi sets *degenerate instead of
/// throwing and falls back to t0 = 0 (Ex2) or s0 = 1/2, t0 = x(1/2) (Ex4).
ProbeParams locate_probe(const MapSpec& map, const SmoothFunction& x, int k, int l,
                         const GridSpec& grid = {}, bool* degenerate = nullptr);

struct ProbePair {
  SmoothFunction z;
  SmoothFunction u;
};

ProbePair build_probe(const ProbeParams& params, MapVariant variant);

struct Residual {
  /// Grid samples of T_z = (v^(top) - eps0 c z^(k)) / eps0 with c = phi' o (iota + x + z)
  /// or phi'' o (x + z).
  SampledFunction Tz;
  /// v^(top)(s0) and eps0 c(s0) z^(k)(s0).
  double top_at_s0 = 0.0;
  double leading_at_s0 = 0.0;
  SmoothFunction v;
};

Residual residual_Tz(const MapSpec& map, const SmoothFunction& x, const ProbeParams& params,
                     const ProbePair& probe, const GridSpec& grid = {});

struct SweepResult {
  ProbeParams base;  // k, l, eps0, s0, t0 shared by every record
  std::vector<GrowthRecord> records;
  /// Least-squares slope of log top_deriv_s0 against log m; empty when some
  /// top derivative vanishes or fewer than two records exist.
  std::optional<double> slope;
  bool violation = false;
  /// phi' (Ex2) or phi'' o x (Ex4) vanishes: no usable t0, v is identically 0.
  bool degenerate = false;
};

/// Degenerate phi (constant for Ex2, affine on rng x for Ex4) is not an error
/// here: t0 falls back to 0 (Ex2) or x(1/2) (Ex4) and the records show v = 0.
SweepResult growth_sweep(const MapSpec& map, const SmoothFunction& x, const PNormSpec& rho1,
                         const PNormSpec& rho2, int k, int l, std::span<const int> m_list,
                         const GridSpec& grid = {});

/// 2^4, ..., 2^12.
std::vector<int> default_m_list();

/// 2 max sup|T_z| + 1 over m in {16, 32, 64}.
double estimate_M(const MapSpec& map, const SmoothFunction& x, int k, int l,
                  const GridSpec& grid = {});

/// The two inequalities fix_m must satisfy, evaluated at a given m.
///   Ex2: (2 pi m)^(-1/2) <= 1/k        and  l + M < (2 pi m)^(1/2) |phi'(t0)|
///   Ex4: m > (2 pi)^(-1) max{k^2, |phi''(t0)|^(-2) (l + M)^2}  (second pair unused)
struct FixMCertificate {
  int m = 0;
  double M = 0.0;
  double first_lhs = 0.0;
  double first_rhs = 0.0;
  double second_lhs = 0.0;
  double second_rhs = 0.0;
  bool holds = false;
};

FixMCertificate evaluate_fix_m(MapVariant variant, int k, int l, double M, double coefficient,
                               int m);

/// Smallest power of two m <= 2^14 for which evaluate_fix_m holds.
/// coefficient is |phi'(t0)| (Ex2) or |phi''(t0)| (Ex4).
/// Throws PrecisionBudgetError when no such m exists.
int fix_m(MapVariant variant, int k, int l, double M, double coefficient);

/// |phi'(t0)| or |phi''(t0)|.
double leading_coefficient(const MapSpec& map, double t0);

}  // namespace tamelab
