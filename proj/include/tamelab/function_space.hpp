#pragma once

// Elements of the smooth-function Frechet spaces as immutable expression trees.
//
// Two spaces are modelled: 1-periodic smooth functions on R (Domain::Periodic1)
// and smooth functions on [0, 1] (Domain::UnitInterval). Outer functions such as
// phi live on the whole line (Domain::RealLine). Every tree is an entire
// function on R; the tag only restricts where it may be evaluated and which
// grid is used for its seminorms.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tamelab/jet.hpp"

namespace tamelab {

enum class Domain { Periodic1, UnitInterval, RealLine };

std::string to_string(Domain d);

struct FunctionNode;

class SmoothFunction {
 public:
  /// The zero function on the real line.
  SmoothFunction();

  static SmoothFunction constant(double c, Domain d = Domain::RealLine);
  static SmoothFunction identity(Domain d = Domain::RealLine);
  static SmoothFunction affine(double a, double b, Domain d = Domain::RealLine);
  /// amplitude * sin^(quarter_turns)(2 pi frequency (s - shift)), where
  /// sin^(q) is the q-th derivative of sin as a function of its argument.
  static SmoothFunction sinusoid(double amplitude, double frequency, double shift,
                                 Domain d = Domain::RealLine, int quarter_turns = 0);
  static SmoothFunction sum(std::vector<SmoothFunction> terms);
  static SmoothFunction product(std::vector<SmoothFunction> factors);
  static SmoothFunction scale(double c, const SmoothFunction& f);
  static SmoothFunction compose(const ScalarPrimitive& outer, const SmoothFunction& inner);
  /// outer(inner(s)). outer is read as a function of one real variable, so its
  /// domain tag is ignored; the result carries the inner tag.
  static SmoothFunction compose(const SmoothFunction& outer, const SmoothFunction& inner);

  Domain domain() const noexcept { return domain_; }
  /// Re-tags the tree. Periodic1 requires structural 1-periodicity; a
  /// Periodic1 / UnitInterval clash is rejected. Throws UsageError.
  SmoothFunction with_domain(Domain d) const;

  const FunctionNode& node() const noexcept { return *node_; }
  bool is_zero() const noexcept;
  /// Constant value when the tree is a Constant node.
  std::optional<double> constant_value() const noexcept;

  double evaluate(double s) const;
  TaylorJet jet_at(double s, int order) const;
  /// Symbolic first derivative.
  SmoothFunction derivative() const;

  /// Structural 1-periodicity (decidable sufficient condition).
  bool is_structurally_periodic() const;
  /// Highest oscillation frequency in cycles per unit, estimated structurally.
  double bandwidth() const;
  std::string describe() const;

 private:
  SmoothFunction(std::shared_ptr<const FunctionNode> node, Domain d);
  void require_in_domain(double s) const;

  std::shared_ptr<const FunctionNode> node_;
  Domain domain_;

  friend TaylorJet jet_eval(const FunctionNode&, const TaylorJet&, bool);
};

SmoothFunction operator+(const SmoothFunction& a, const SmoothFunction& b);
SmoothFunction operator-(const SmoothFunction& a, const SmoothFunction& b);
SmoothFunction operator-(const SmoothFunction& a);
SmoothFunction operator*(const SmoothFunction& a, const SmoothFunction& b);
SmoothFunction operator*(double c, const SmoothFunction& a);

namespace node {
struct Constant { double value; };
struct Identity {};
struct Affine { double a; double b; };
struct SinusoidProbe {
  double amplitude;
  double frequency;
  double shift;
  int quarter_turns;
};
struct Sum { std::vector<SmoothFunction> terms; };
struct Product { std::vector<SmoothFunction> factors; };
struct Scale { double c; SmoothFunction child; };
struct PrimitiveCompose { ScalarPrimitive outer; SmoothFunction inner; };
struct Compose { SmoothFunction outer; SmoothFunction inner; };
}  // namespace node

struct FunctionNode {
  std::variant<node::Constant, node::Identity, node::Affine, node::SinusoidProbe, node::Sum,
               node::Product, node::Scale, node::PrimitiveCompose, node::Compose>
      v;
};

/// Jet of the tree at input.base_point() when its variable is replaced by the
/// series `input`. identity_input marks input == TaylorJet::variable(...),
/// which enables closed-form sinusoid jets.
TaylorJet jet_eval(const FunctionNode& n, const TaylorJet& input, bool identity_input);

/// Uniform sampling grid for sup-seminorms: max(min_points, factor * bandwidth).
struct GridSpec {
  double factor = 128.0;
  std::size_t min_points = 4096;

  std::size_t points_for(const SmoothFunction& f) const;
  /// Periodic1: j/G for j < G. UnitInterval: j/(G-1) for j < G.
  std::vector<double> nodes(const SmoothFunction& f) const;
};

/// Values of a function on a grid.
struct SampledFunction {
  std::vector<double> s;
  std::vector<double> values;

  double sup_abs() const;
};

SampledFunction sample(const SmoothFunction& f, const GridSpec& grid = {});

/// [p_0(f), ..., p_max_order(f)], p_i = sup over s and l <= i of |f^(l)(s)|.
/// Constant and single-sinusoid trees use closed forms; other trees take the
/// maximum over the grid.
std::vector<double> seminorm_profile(const SmoothFunction& f, int max_order,
                                     const GridSpec& grid = {});
double seminorm_p(const SmoothFunction& f, int i, const GridSpec& grid = {});
/// Closed-form profile, or nullopt when the tree has no closed form.
std::optional<std::vector<double>> analytic_seminorm_profile(const SmoothFunction& f,
                                                             int max_order);
/// Grid-only profile (no closed-form shortcut).
std::vector<double> grid_seminorm_profile(const SmoothFunction& f, int max_order,
                                          const GridSpec& grid = {});

/// i-th derivative at s of the oscillatory probe
/// z(s) = (2 pi m)^(-k + 1/2) sin(2 pi m (s - s0)).
double probe_deriv_closed_form(int m, int k, double s0, int i, double s);

/// sin^(q)(theta): sin, cos, -sin, -cos for q mod 4.
double sin_derivative_value(int q, double theta);

}  // namespace tamelab
