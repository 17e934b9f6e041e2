#pragma once

#include <functional>
#include <memory>
#include <string>

namespace pqhyp {

enum class DerivKind { Analytic, Numeric };

namespace detail {

class FnImpl {
public:
  virtual ~FnImpl() = default;
  virtual double value(double t) const = 0;
  virtual double d1(double t) const = 0;
  virtual double d2(double t) const = 0;
  virtual double d3(double t) const = 0;
  // Ratio d2/d1 in a form that avoids overflow of the individual derivatives
  // where a stable closed form exists.
  virtual double d2_over_d1(double t) const { return d2(t) / d1(t); }
  // t * d2/d1; the local condition and the lens/r* formulas consume only this.
  virtual double d1_elasticity(double t) const { return t * d2_over_d1(t); }
  virtual DerivKind kind() const { return DerivKind::Analytic; }
  virtual std::string spec() const = 0;
};

}  // namespace detail

// Immutable handle to a scalar function on [0, inf) (the h/phi atoms accept
// negative arguments too). Cheap to copy; thread-safe to share.
class ScalarFn {
public:
  ScalarFn() = default;
  explicit ScalarFn(std::shared_ptr<const detail::FnImpl> impl) : impl_(std::move(impl)) {}

  bool valid() const { return impl_ != nullptr; }
  double value(double t) const { return impl_->value(t); }
  double d1(double t) const { return impl_->d1(t); }
  double d2(double t) const { return impl_->d2(t); }
  double d3(double t) const { return impl_->d3(t); }
  double d2_over_d1(double t) const { return impl_->d2_over_d1(t); }
  double d1_elasticity(double t) const { return impl_->d1_elasticity(t); }
  DerivKind derivative_kind() const { return impl_->kind(); }
  // The growth assumption is declared, never machine-verified; reports carry it.
  bool growth_declared() const { return true; }
  std::string spec() const { return impl_->spec(); }
  const detail::FnImpl* raw() const { return impl_.get(); }

private:
  std::shared_ptr<const detail::FnImpl> impl_;
};

// Builders. All are strictly increasing on (0, inf) with analytic derivatives
// (compose_F differentiates through a numeric inversion and is tagged
// DerivKind::Numeric).
ScalarFn make_power(double p);                 // t^p, p > 0
ScalarFn make_exp();                           // e^t
ScalarFn make_plog(double p);                  // integral of s^p log(1+s), p >= 0
ScalarFn make_linear(double a, double b);      // a t + b, defined on all of R
ScalarFn make_linlog(double a);                // a t + log(1+t)
// Companion construction: Q' = (P')^{1/r^2}, Q(0) = 0, for 0 < r <= 1.
ScalarFn make_hariya_companion(const ScalarFn& P, double r);
// F = Q o P^{-1}; derivatives by chain rule through the numeric inverse.
ScalarFn compose_F(const ScalarFn& P, const ScalarFn& Q);

struct FnPair {
  ScalarFn P, Q, F;
  std::string spec_P, spec_Q;
};

// Validates monotonicity on a diagnostic grid and checks F(P(t)) = Q(t) to
// 1e-9 relative there.
FnPair make_pair(const ScalarFn& P, const ScalarFn& Q);

// P from the multiplicative generator phi (P' = exp(phi(log t))) and F from
// the ratio function h (F'/F'' = h); Q = F o P with exact chain rules.
// Validates h >= 0 and phi' > 0 at diagnostic points.
FnPair make_generator(const ScalarFn& h, const ScalarFn& phi);

// The two halves of the generator construction, exposed for the closed-form
// margin route and for ratio-convexity studies.
ScalarFn make_generator_P(const ScalarFn& phi);
ScalarFn make_generator_F(const ScalarFn& h);

// Solve f(t) = y on [0, inf) for increasing f: bracket by doubling, bisect,
// then polish with guarded Newton. y below f(0) is a domain error; a bracket
// that grows past 2^200 is a divergence error.
double invert(const ScalarFn& f, double y);

// Adaptive panel integration (Gauss-Kronrod 7-15) of f over [a, b] with mixed
// absolute/relative tolerance. Handles a > b by orientation.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-13);

}  // namespace pqhyp
