#pragma once

// Univariate truncated Taylor arithmetic.
//
// A TaylorJet stores Taylor coefficients c[i] = g^(i)(s0) / i!, not raw
// derivatives. Raw derivatives are recovered only through deriv_from_jet.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace tamelab {

inline constexpr int kMaxJetOrder = 16;

class TaylorJet {
 public:
  /// Throws UsageError if coeffs is empty, longer than kMaxJetOrder + 1, or
  /// contains a non-finite entry.
  TaylorJet(double base_point, std::span<const double> coeffs);
  TaylorJet(double base_point, std::initializer_list<double> coeffs)
      : TaylorJet(base_point, std::span<const double>(coeffs.begin(), coeffs.size())) {}

  static TaylorJet constant(double base_point, int order, double value);
  static TaylorJet zero(double base_point, int order) { return constant(base_point, order, 0.0); }
  /// Jet of the identity s -> s at base_point: [s0, 1, 0, ...].
  static TaylorJet variable(double base_point, int order);

  double base_point() const noexcept { return base_; }
  int order() const noexcept { return order_; }
  double value() const noexcept { return c_[0]; }
  double operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coeffs() const noexcept {
    return {c_.data(), static_cast<std::size_t>(order_ + 1)};
  }

  friend bool operator==(const TaylorJet& a, const TaylorJet& b) noexcept;

 private:
  struct Unchecked {};
  TaylorJet(Unchecked, double base_point, int order) noexcept : base_(base_point), order_(order) {}
  void check_finite(const char* op) const;

  double base_{0.0};
  int order_{0};
  std::array<double, kMaxJetOrder + 1> c_{};

  friend TaylorJet jet_add(const TaylorJet&, const TaylorJet&);
  friend TaylorJet jet_sub(const TaylorJet&, const TaylorJet&);
  friend TaylorJet jet_scale(double, const TaylorJet&);
  friend TaylorJet jet_mul(const TaylorJet&, const TaylorJet&);
  friend TaylorJet jet_shift_value(const TaylorJet&, double);
  friend class ScalarPrimitive;
  friend TaylorJet jet_substitute(std::span<const double>, const TaylorJet&);
};

TaylorJet jet_add(const TaylorJet& a, const TaylorJet& b);
TaylorJet jet_sub(const TaylorJet& a, const TaylorJet& b);
TaylorJet jet_scale(double c, const TaylorJet& a);
/// Truncated Cauchy product, c_i = sum_{j<=i} a_j b_{i-j}, summed in ascending j
/// over the symmetric pairs (a_j b_{i-j} + a_{i-j} b_j).
TaylorJet jet_mul(const TaylorJet& a, const TaylorJet& b);
/// Adds a constant to the value coefficient only.
TaylorJet jet_shift_value(const TaylorJet& a, double c);

inline TaylorJet operator+(const TaylorJet& a, const TaylorJet& b) { return jet_add(a, b); }
inline TaylorJet operator-(const TaylorJet& a, const TaylorJet& b) { return jet_sub(a, b); }
inline TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) { return jet_mul(a, b); }
inline TaylorJet operator*(double c, const TaylorJet& a) { return jet_scale(c, a); }

/// Substitutes h = inner - inner(s0) into the series sum_i outer[i] h^i,
/// truncated at inner.order(). outer holds the Taylor coefficients of the
/// outer function at inner.value().
TaylorJet jet_substitute(std::span<const double> outer, const TaylorJet& inner);

/// Raw i-th derivative i! * coeffs[i]. Throws UsageError when i > order.
double deriv_from_jet(const TaylorJet& j, int i);

enum class PrimitiveKind { Sin, Cos, Exp, Tanh, Polynomial, Affine };

/// Entire scalar function with a known Taylor recurrence.
class ScalarPrimitive {
 public:
  static ScalarPrimitive sin() { return ScalarPrimitive(PrimitiveKind::Sin, {}); }
  static ScalarPrimitive cos() { return ScalarPrimitive(PrimitiveKind::Cos, {}); }
  static ScalarPrimitive exp() { return ScalarPrimitive(PrimitiveKind::Exp, {}); }
  static ScalarPrimitive tanh() { return ScalarPrimitive(PrimitiveKind::Tanh, {}); }
  /// p(t) = sum_j coeffs[j] t^j. Empty coefficient lists are rejected.
  static ScalarPrimitive polynomial(std::vector<double> coeffs);
  static ScalarPrimitive affine(double a, double b) { return ScalarPrimitive(PrimitiveKind::Affine, {a, b}); }

  PrimitiveKind kind() const noexcept { return kind_; }
  const std::vector<double>& params() const noexcept { return params_; }
  std::string name() const;

  double value(double t) const;
  /// Taylor coefficients of the primitive itself at t, orders 0..order.
  TaylorJet own_jet(double t, int order) const;

  friend bool operator==(const ScalarPrimitive&, const ScalarPrimitive&) = default;

 private:
  ScalarPrimitive(PrimitiveKind kind, std::vector<double> params)
      : kind_(kind), params_(std::move(params)) {}

  PrimitiveKind kind_;
  std::vector<double> params_;
};

/// Taylor jet of outer(inner(s)) at inner.base_point().
TaylorJet jet_compose(const ScalarPrimitive& outer, const TaylorJet& inner);

}  // namespace tamelab
