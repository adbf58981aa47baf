#include "tamelab/jet.hpp"

#include <cmath>
#include <string>

#include "tamelab/errors.hpp"

namespace tamelab {

namespace {

void require_compatible(const TaylorJet& a, const TaylorJet& b, const char* op) {
  if (a.order() != b.order()) {
    throw UsageError(std::string(op) + ": jet orders differ (" + std::to_string(a.order()) +
                     " vs " + std::to_string(b.order()) + ")");
  }
  if (a.base_point() != b.base_point()) {
    throw UsageError(std::string(op) + ": jet base points differ");
  }
}

void require_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw UsageError("jet order " + std::to_string(order) + " outside [0, " +
                     std::to_string(kMaxJetOrder) + "]");
  }
}

// sin^(i)(t) cycles sin, cos, -sin, -cos.
double sin_derivative(int i, double s, double c) {
  switch (i & 3) {
    case 0: return s;
    case 1: return c;
    case 2: return -s;
    default: return -c;
  }
}

}  // namespace

TaylorJet::TaylorJet(double base_point, std::span<const double> coeffs) : base_(base_point) {
  if (coeffs.empty() || coeffs.size() > static_cast<std::size_t>(kMaxJetOrder + 1)) {
    throw UsageError("TaylorJet needs between 1 and " + std::to_string(kMaxJetOrder + 1) +
                     " coefficients, got " + std::to_string(coeffs.size()));
  }
  if (!std::isfinite(base_point)) throw UsageError("TaylorJet base point is not finite");
  order_ = static_cast<int>(coeffs.size()) - 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) c_[i] = coeffs[i];
  check_finite("TaylorJet");
}

TaylorJet TaylorJet::constant(double base_point, int order, double value) {
  require_order(order);
  TaylorJet j(Unchecked{}, base_point, order);
  j.c_[0] = value;
  j.check_finite("TaylorJet::constant");
  return j;
}

TaylorJet TaylorJet::variable(double base_point, int order) {
  require_order(order);
  TaylorJet j(Unchecked{}, base_point, order);
  j.c_[0] = base_point;
  if (order >= 1) j.c_[1] = 1.0;
  j.check_finite("TaylorJet::variable");
  return j;
}

void TaylorJet::check_finite(const char* op) const {
  for (int i = 0; i <= order_; ++i) {
    if (!std::isfinite(c_[static_cast<std::size_t>(i)])) {
      throw UsageError(std::string(op) + ": non-finite Taylor coefficient at index " +
                       std::to_string(i));
    }
  }
}

bool operator==(const TaylorJet& a, const TaylorJet& b) noexcept {
  if (a.order_ != b.order_ || a.base_ != b.base_) return false;
  for (int i = 0; i <= a.order_; ++i) {
    if (a.c_[static_cast<std::size_t>(i)] != b.c_[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

TaylorJet jet_add(const TaylorJet& a, const TaylorJet& b) {
  require_compatible(a, b, "jet_add");
  TaylorJet r(TaylorJet::Unchecked{}, a.base_, a.order_);
  for (int i = 0; i <= a.order_; ++i) r.c_[i] = a.c_[i] + b.c_[i];
  r.check_finite("jet_add");
  return r;
}

TaylorJet jet_sub(const TaylorJet& a, const TaylorJet& b) {
  require_compatible(a, b, "jet_sub");
  TaylorJet r(TaylorJet::Unchecked{}, a.base_, a.order_);
  for (int i = 0; i <= a.order_; ++i) r.c_[i] = a.c_[i] - b.c_[i];
  r.check_finite("jet_sub");
  return r;
}

TaylorJet jet_scale(double c, const TaylorJet& a) {
  TaylorJet r(TaylorJet::Unchecked{}, a.base_, a.order_);
  for (int i = 0; i <= a.order_; ++i) r.c_[i] = c * a.c_[i];
  r.check_finite("jet_scale");
  return r;
}

TaylorJet jet_mul(const TaylorJet& a, const TaylorJet& b) {
  require_compatible(a, b, "jet_mul");
  TaylorJet r(TaylorJet::Unchecked{}, a.base_, a.order_);
  // Symmetric pairs summed in ascending j make the product bit-for-bit commutative.
  for (int i = 0; i <= a.order_; ++i) {
    double acc = 0.0;
    int j = 0;
    for (; 2 * j < i; ++j) acc += a.c_[j] * b.c_[i - j] + a.c_[i - j] * b.c_[j];
    if (2 * j == i) acc += a.c_[j] * b.c_[j];
    r.c_[i] = acc;
  }
  r.check_finite("jet_mul");
  return r;
}

TaylorJet jet_shift_value(const TaylorJet& a, double c) {
  TaylorJet r = a;
  r.c_[0] += c;
  r.check_finite("jet_shift_value");
  return r;
}

TaylorJet jet_substitute(std::span<const double> outer, const TaylorJet& inner) {
  const int n = inner.order_;
  if (outer.size() < static_cast<std::size_t>(n + 1)) {
    throw UsageError("jet_substitute: outer series shorter than inner order");
  }
  // Horner in h = inner - inner(s0); h has no constant term.
  TaylorJet r(TaylorJet::Unchecked{}, inner.base_, n);
  r.c_[0] = outer[static_cast<std::size_t>(n)];
  for (int deg = n - 1; deg >= 0; --deg) {
    std::array<double, kMaxJetOrder + 1> next{};
    for (int i = 1; i <= n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < i; ++j) acc += r.c_[j] * inner.c_[i - j];
      next[i] = acc;
    }
    next[0] = outer[static_cast<std::size_t>(deg)];
    r.c_ = next;
  }
  r.check_finite("jet_substitute");
  return r;
}

double deriv_from_jet(const TaylorJet& j, int i) {
  if (i < 0 || i > j.order()) {
    throw UsageError("deriv_from_jet: index " + std::to_string(i) + " exceeds jet order " +
                     std::to_string(j.order()));
  }
  double factorial = 1.0;
  for (int q = 2; q <= i; ++q) factorial *= q;
  return factorial * j[i];
}

ScalarPrimitive ScalarPrimitive::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw UsageError("polynomial primitive needs at least one coefficient");
  return ScalarPrimitive(PrimitiveKind::Polynomial, std::move(coeffs));
}

std::string ScalarPrimitive::name() const {
  switch (kind_) {
    case PrimitiveKind::Sin: return "sin";
    case PrimitiveKind::Cos: return "cos";
    case PrimitiveKind::Exp: return "exp";
    case PrimitiveKind::Tanh: return "tanh";
    case PrimitiveKind::Polynomial: return "poly";
    case PrimitiveKind::Affine: return "affine";
  }
  return "?";
}

double ScalarPrimitive::value(double t) const {
  switch (kind_) {
    case PrimitiveKind::Sin: return std::sin(t);
    case PrimitiveKind::Cos: return std::cos(t);
    case PrimitiveKind::Exp: return std::exp(t);
    case PrimitiveKind::Tanh: return std::tanh(t);
    case PrimitiveKind::Polynomial: {
      double acc = 0.0;
      for (auto it = params_.rbegin(); it != params_.rend(); ++it) acc = acc * t + *it;
      return acc;
    }
    case PrimitiveKind::Affine: return params_[0] * t + params_[1];
  }
  throw UsageError("unsupported primitive");
}

TaylorJet ScalarPrimitive::own_jet(double t, int order) const {
  require_order(order);
  TaylorJet j(TaylorJet::Unchecked{}, t, order);
  auto& c = j.c_;
  switch (kind_) {
    case PrimitiveKind::Sin:
    case PrimitiveKind::Cos: {
      const double s = std::sin(t);
      const double co = std::cos(t);
      const int offset = kind_ == PrimitiveKind::Cos ? 1 : 0;
      double inv_fact = 1.0;
      for (int i = 0; i <= order; ++i) {
        if (i > 0) inv_fact /= i;
        c[i] = sin_derivative(i + offset, s, co) * inv_fact;
      }
      break;
    }
    case PrimitiveKind::Exp: {
      double term = std::exp(t);
      for (int i = 0; i <= order; ++i) {
        if (i > 0) term /= i;
        c[i] = term;
      }
      break;
    }
    case PrimitiveKind::Tanh: {
      // y' = 1 - y^2  =>  (i+1) y_{i+1} = [i == 0] - (y*y)_i
      c[0] = std::tanh(t);
      for (int i = 0; i < order; ++i) {
        double sq = 0.0;
        for (int q = 0; q <= i; ++q) sq += c[q] * c[i - q];
        c[i + 1] = ((i == 0 ? 1.0 : 0.0) - sq) / (i + 1);
      }
      break;
    }
    case PrimitiveKind::Polynomial: {
      // Repeated synthetic division by (x - t) yields the shifted coefficients.
      std::vector<double> a = params_;
      const int deg = static_cast<int>(a.size()) - 1;
      for (int i = 0; i <= deg; ++i) {
        for (int q = deg - 1; q >= i; --q) a[q] += t * a[q + 1];
        if (i <= order) c[i] = a[i];
      }
      break;
    }
    case PrimitiveKind::Affine:
      c[0] = params_[0] * t + params_[1];
      if (order >= 1) c[1] = params_[0];
      break;
  }
  j.check_finite("ScalarPrimitive::own_jet");
  return j;
}

TaylorJet jet_compose(const ScalarPrimitive& outer, const TaylorJet& inner) {
  if (outer.kind() == PrimitiveKind::Affine) {
    return jet_shift_value(jet_scale(outer.params()[0], inner), outer.params()[1]);
  }
  const TaylorJet own = outer.own_jet(inner.value(), inner.order());
  bool affine_inner = true;
  for (int i = 2; i <= inner.order(); ++i) affine_inner = affine_inner && inner[i] == 0.0;
  if (affine_inner) {
    // g(a0 + a1 h) has Taylor coefficients g_i a1^i.
    std::array<double, kMaxJetOrder + 1> c{};
    double power = 1.0;
    for (int i = 0; i <= inner.order(); ++i) {
      c[static_cast<std::size_t>(i)] = own[i] * power;
      if (i < inner.order()) power *= inner[1];
    }
    return TaylorJet(inner.base_point(),
                     std::span<const double>(c.data(), static_cast<std::size_t>(inner.order() + 1)));
  }
  return jet_substitute(own.coeffs(), inner);
}

}  // namespace tamelab
