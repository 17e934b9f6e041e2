#include "scalarfn.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "errors.hpp"

namespace pqhyp {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// QUADPACK 7-15 Gauss-Kronrod pair on [-1,1]; positive abscissae.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEst {
  double kronrod;
  double err;
};

PanelEst gk15(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  if (!std::isfinite(fc)) fail_numeric("integrate: non-finite integrand at t=" + fmt(c));
  double resk = kWgk[7] * fc, resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    double f1 = f(c - dx), f2 = f(c + dx);
    if (!std::isfinite(f1)) fail_numeric("integrate: non-finite integrand at t=" + fmt(c - dx));
    if (!std::isfinite(f2)) fail_numeric("integrate: non-finite integrand at t=" + fmt(c + dx));
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {resk * h, std::abs((resk - resg) * h)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
  PanelEst e = gk15(f, a, b);
  if (e.err <= tol) return e.kronrod;
  if (depth >= 60) {
    if (e.err > 16.0 * tol) fail_numeric("integrate: panel refinement did not converge");
    return e.kronrod;
  }
  double c = 0.5 * (a + b);
  return adapt(f, a, c, 0.5 * tol, depth + 1) + adapt(f, c, b, 0.5 * tol, depth + 1);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  return g;
}

struct PowerFn final : detail::FnImpl {
  double p;
  explicit PowerFn(double p_) : p(p_) {}
  double value(double t) const override {
    if (t < 0.0) fail_domain("power: negative argument");
    return std::pow(t, p);
  }
  double d1(double t) const override { return p * std::pow(t, p - 1.0); }
  double d2(double t) const override { return p * (p - 1.0) * std::pow(t, p - 2.0); }
  double d3(double t) const override { return p * (p - 1.0) * (p - 2.0) * std::pow(t, p - 3.0); }
  double d2_over_d1(double t) const override { return (p - 1.0) / t; }
  double d1_elasticity(double) const override { return p - 1.0; }
  std::string spec() const override { return "power(" + fmt(p) + ")"; }
};

struct ExpFn final : detail::FnImpl {
  double value(double t) const override { return std::exp(t); }
  double d1(double t) const override { return std::exp(t); }
  double d2(double t) const override { return std::exp(t); }
  double d3(double t) const override { return std::exp(t); }
  double d2_over_d1(double) const override { return 1.0; }
  double d1_elasticity(double t) const override { return t; }
  std::string spec() const override { return "exp"; }
};

// P'(t) = t^p log(1+t); the value is the integral from 0.
struct PlogFn final : detail::FnImpl {
  double p;
  explicit PlogFn(double p_) : p(p_) {}
  double value(double t) const override {
    if (t < 0.0) fail_domain("plog: negative argument");
    if (t == 0.0) return 0.0;
    return integrate([this](double s) { return std::pow(s, p) * std::log1p(s); }, 0.0, t);
  }
  double d1(double t) const override { return std::pow(t, p) * std::log1p(t); }
  double d2(double t) const override {
    return p * std::pow(t, p - 1.0) * std::log1p(t) + std::pow(t, p) / (1.0 + t);
  }
  double d3(double t) const override {
    return p * (p - 1.0) * std::pow(t, p - 2.0) * std::log1p(t) +
           2.0 * p * std::pow(t, p - 1.0) / (1.0 + t) - std::pow(t, p) / ((1.0 + t) * (1.0 + t));
  }
  double d2_over_d1(double t) const override { return p / t + 1.0 / ((1.0 + t) * std::log1p(t)); }
  double d1_elasticity(double t) const override {
    if (t == 0.0) return p + 1.0;
    return p + t / ((1.0 + t) * std::log1p(t));
  }
  std::string spec() const override { return "plog(" + fmt(p) + ")"; }
};

// Atom for h and phi; accepts negative arguments.
struct LinearFn final : detail::FnImpl {
  double a, b;
  LinearFn(double a_, double b_) : a(a_), b(b_) {}
  double value(double t) const override { return a * t + b; }
  double d1(double) const override { return a; }
  double d2(double) const override { return 0.0; }
  double d3(double) const override { return 0.0; }
  double d2_over_d1(double) const override { return 0.0; }
  double d1_elasticity(double) const override { return 0.0; }
  std::string spec() const override { return "linear(" + fmt(a) + "," + fmt(b) + ")"; }
};

struct LinLogFn final : detail::FnImpl {
  double a;
  explicit LinLogFn(double a_) : a(a_) {}
  double value(double t) const override {
    if (t <= -1.0) fail_domain("linlog: argument must exceed -1");
    return a * t + std::log1p(t);
  }
  double d1(double t) const override { return a + 1.0 / (1.0 + t); }
  double d2(double t) const override { return -1.0 / ((1.0 + t) * (1.0 + t)); }
  double d3(double t) const override { return 2.0 / ((1.0 + t) * (1.0 + t) * (1.0 + t)); }
  std::string spec() const override { return "linlog(" + fmt(a) + ")"; }
};

// Q' = (P')^{1/r^2}, Q(0) = 0.
struct HariyaCompanionFn final : detail::FnImpl {
  ScalarFn base;
  double r, irr;  // irr = 1/r^2
  HariyaCompanionFn(ScalarFn base_, double r_) : base(std::move(base_)), r(r_), irr(1.0 / (r_ * r_)) {}
  double dpow(double v) const { return v <= 0.0 ? 0.0 : std::exp(irr * std::log(v)); }
  double value(double t) const override {
    if (t < 0.0) fail_domain("hariya: negative argument");
    if (t == 0.0) return 0.0;
    return integrate([this](double s) { return dpow(base.d1(s)); }, 0.0, t);
  }
  double d1(double t) const override { return dpow(base.d1(t)); }
  double d2(double t) const override { return d1(t) * irr * base.d2_over_d1(t); }
  double d3(double t) const override {
    double ratio = base.d2(t) / base.d1(t);
    return d1(t) * irr * ((irr - 1.0) * ratio * ratio + base.d3(t) / base.d1(t));
  }
  double d2_over_d1(double t) const override { return irr * base.d2_over_d1(t); }
  double d1_elasticity(double t) const override { return irr * base.d1_elasticity(t); }
  std::string spec() const override { return "hariya(" + base.spec() + "," + fmt(r) + ")"; }
};

// F = Q o P^{-1}; every call inverts P numerically at the argument.
struct ComposeFFn final : detail::FnImpl {
  ScalarFn P, Q;
  ComposeFFn(ScalarFn P_, ScalarFn Q_) : P(std::move(P_)), Q(std::move(Q_)) {}
  double u_at(double x) const { return invert(P, x); }
  double value(double x) const override { return Q.value(u_at(x)); }
  double d1(double x) const override {
    double u = u_at(x);
    return Q.d1(u) / P.d1(u);
  }
  double d2(double x) const override {
    double u = u_at(x);
    double p1 = P.d1(u);
    return (Q.d2(u) - Q.d1(u) * P.d2(u) / p1) / (p1 * p1);
  }
  double d3(double x) const override {
    double u = u_at(x);
    double p1 = P.d1(u), p2 = P.d2(u), p3 = P.d3(u);
    double q1 = Q.d1(u), q2 = Q.d2(u), q3 = Q.d3(u);
    double num = (q3 * p1 - q1 * p3) * p1 - 3.0 * p2 * (q2 * p1 - q1 * p2);
    return num / (p1 * p1 * p1 * p1 * p1);
  }
  double d2_over_d1(double x) const override {
    double u = u_at(x);
    return (Q.d2_over_d1(u) - P.d2_over_d1(u)) / P.d1(u);
  }
  DerivKind kind() const override { return DerivKind::Numeric; }
  std::string spec() const override { return "compose(" + P.spec() + "," + Q.spec() + ")"; }
};

// P' = exp(phi(log t)).
struct GeneratorPFn final : detail::FnImpl {
  ScalarFn phi;
  explicit GeneratorPFn(ScalarFn phi_) : phi(std::move(phi_)) {}
  double value(double t) const override {
    if (t < 0.0) fail_domain("generator P: negative argument");
    if (t == 0.0) return 0.0;
    return integrate([this](double s) { return std::exp(phi.value(std::log(s))); }, 0.0, t);
  }
  double d1(double t) const override { return t <= 0.0 ? 0.0 : std::exp(phi.value(std::log(t))); }
  double d2(double t) const override { return phi.d1(std::log(t)) * d1(t) / t; }
  double d3(double t) const override {
    double s = std::log(t), p1 = phi.d1(s);
    return d1(t) / (t * t) * (phi.d2(s) + p1 * p1 - p1);
  }
  double d2_over_d1(double t) const override { return phi.d1(std::log(t)) / t; }
  double d1_elasticity(double t) const override { return phi.d1(std::log(t)); }
  std::string spec() const override { return "gen_P(phi=" + phi.spec() + ")"; }
};

// F'/F'' = h; F'(t) = exp(w(t)) with w the integral of 1/h from 1.
struct GeneratorFFn final : detail::FnImpl {
  ScalarFn h;
  explicit GeneratorFFn(ScalarFn h_) : h(std::move(h_)) {}
  double w(double s) const { return integrate([this](double x) { return 1.0 / h.value(x); }, 1.0, s); }
  double value(double t) const override {
    if (t < 0.0) fail_domain("generator F: negative argument");
    if (t == 0.0) return 0.0;
    return integrate([this](double s) { return s <= 0.0 ? 0.0 : std::exp(w(s)); }, 0.0, t);
  }
  double d1(double t) const override { return t <= 0.0 ? 0.0 : std::exp(w(t)); }
  double d2(double t) const override { return d1(t) / h.value(t); }
  double d3(double t) const override {
    double hv = h.value(t);
    return d1(t) * (1.0 - h.d1(t)) / (hv * hv);
  }
  double d2_over_d1(double t) const override { return 1.0 / h.value(t); }
  std::string spec() const override { return "gen_F(h=" + h.spec() + ")"; }
};

// Q = F o P with exact chain rules.
struct CompositionFn final : detail::FnImpl {
  ScalarFn outer, inner;
  std::string spec_;
  CompositionFn(ScalarFn o, ScalarFn i, std::string s)
      : outer(std::move(o)), inner(std::move(i)), spec_(std::move(s)) {}
  double value(double t) const override { return outer.value(inner.value(t)); }
  double d1(double t) const override { return outer.d1(inner.value(t)) * inner.d1(t); }
  double d2(double t) const override {
    double v = inner.value(t), i1 = inner.d1(t);
    return outer.d2(v) * i1 * i1 + outer.d1(v) * inner.d2(t);
  }
  double d3(double t) const override {
    double v = inner.value(t), i1 = inner.d1(t), i2 = inner.d2(t);
    return outer.d3(v) * i1 * i1 * i1 + 3.0 * outer.d2(v) * i1 * i2 + outer.d1(v) * inner.d3(t);
  }
  double d2_over_d1(double t) const override {
    return inner.d1(t) * outer.d2_over_d1(inner.value(t)) + inner.d2_over_d1(t);
  }
  std::string spec() const override { return spec_; }
};

void validate_increasing(const ScalarFn& f, const char* name) {
  for (double t : log_grid(1e-6, 1e3, 30)) {
    double d = f.d1(t);
    if (!(d > 0.0))
      fail_domain(std::string(name) + ": derivative not positive at t=" + fmt(t));
  }
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  PanelEst first = gk15(f, a, b);
  double tol = std::max(abs_tol, rel_tol * std::abs(first.kronrod));
  if (first.err <= tol) return sign * first.kronrod;
  double c = 0.5 * (a + b);
  return sign * (adapt(f, a, c, 0.5 * tol, 1) + adapt(f, c, b, 0.5 * tol, 1));
}

ScalarFn make_power(double p) {
  if (!(p > 0.0)) fail_domain("power: exponent must be positive");
  return ScalarFn(std::make_shared<PowerFn>(p));
}

ScalarFn make_exp() { return ScalarFn(std::make_shared<ExpFn>()); }

ScalarFn make_plog(double p) {
  if (!(p >= 0.0)) fail_domain("plog: exponent must be nonnegative");
  return ScalarFn(std::make_shared<PlogFn>(p));
}

ScalarFn make_linear(double a, double b) { return ScalarFn(std::make_shared<LinearFn>(a, b)); }

ScalarFn make_linlog(double a) {
  if (!(a >= 0.0)) fail_domain("linlog: slope must be nonnegative");
  return ScalarFn(std::make_shared<LinLogFn>(a));
}

ScalarFn make_hariya_companion(const ScalarFn& P, double r) {
  if (!(r > 0.0 && r <= 1.0)) fail_domain("hariya: r must lie in (0,1]");
  return ScalarFn(std::make_shared<HariyaCompanionFn>(P, r));
}

ScalarFn compose_F(const ScalarFn& P, const ScalarFn& Q) {
  // Power pairs compose in closed form: Q o P^{-1} = t^{q/p}.
  auto* pp = dynamic_cast<const PowerFn*>(P.raw());
  auto* qq = dynamic_cast<const PowerFn*>(Q.raw());
  if (pp && qq) return make_power(qq->p / pp->p);
  return ScalarFn(std::make_shared<ComposeFFn>(P, Q));
}

FnPair make_pair(const ScalarFn& P, const ScalarFn& Q) {
  validate_increasing(P, "P");
  validate_increasing(Q, "Q");
  FnPair pair{P, Q, compose_F(P, Q), P.spec(), Q.spec()};
  for (double t : log_grid(1e-3, 10.0, 25)) {
    double qv = Q.value(t);
    double fv = pair.F.value(P.value(t));
    if (!(std::abs(fv - qv) <= 1e-9 * std::max(1.0, std::abs(qv))))
      fail_domain("pair: F(P(t)) deviates from Q(t) at t=" + fmt(t));
  }
  return pair;
}

ScalarFn make_generator_P(const ScalarFn& phi) {
  return ScalarFn(std::make_shared<GeneratorPFn>(phi));
}

ScalarFn make_generator_F(const ScalarFn& h) {
  return ScalarFn(std::make_shared<GeneratorFFn>(h));
}

FnPair make_generator(const ScalarFn& h, const ScalarFn& phi) {
  for (int i = 0; i < 50; ++i) {
    double th = 100.0 * i / 49.0;
    if (!(h.value(th) >= 0.0)) fail_domain("generator: h negative at t=" + fmt(th));
  }
  for (int i = 0; i < 50; ++i) {
    double s = -20.0 + 40.0 * i / 49.0;
    if (!(phi.d1(s) > 0.0)) fail_domain("generator: phi' not positive at s=" + fmt(s));
  }
  ScalarFn P = make_generator_P(phi);
  ScalarFn F = make_generator_F(h);
  for (double t : {0.5, 1.0, 2.0, 5.0}) {
    double f2 = F.d2(t);
    if (!(f2 > 0.0)) fail_domain("generator: F'' not positive at t=" + fmt(t));
    double ratio = F.d1(t) / f2;
    if (!(std::abs(ratio - h.value(t)) <= 1e-6 * std::max(1.0, std::abs(h.value(t)))))
      fail_domain("generator: F'/F'' deviates from h at t=" + fmt(t));
  }
  std::string spec = "gen(h=" + h.spec() + ",phi=" + phi.spec() + ")";
  ScalarFn Q(std::make_shared<CompositionFn>(F, P, spec + ":Q"));
  FnPair pair{P, Q, F, spec, spec};
  validate_increasing(pair.P, "P");
  return pair;
}

double invert(const ScalarFn& f, double y) {
  if (!std::isfinite(y)) fail_domain("invert: target must be finite");
  double f0 = f.value(0.0);
  if (y < f0 - 1e-12 * std::max(1.0, std::abs(f0))) fail_domain("invert: target below f(0)");
  if (y <= f0) return 0.0;
  double hi = 1.0;
  int grow = 0;
  while (f.value(hi) < y) {
    hi *= 2.0;
    if (++grow > 200) fail_numeric("invert: bracket exceeded 2^200");
  }
  double lo = 0.0;
  for (int i = 0; i < 200 && (hi - lo) > 1e-14 * std::max(1.0, hi); ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f.value(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    double d = f.d1(t);
    if (!std::isfinite(d) || d <= 0.0) break;
    double step = (f.value(t) - y) / d;
    double tn = t - step;
    if (!(tn >= lo && tn <= hi)) break;
    t = tn;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

}  // namespace pqhyp
