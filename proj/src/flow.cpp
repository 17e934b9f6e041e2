#include "flow.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace pqhyp {

namespace {

// E over k gaussian variables of P(|poly|) at fixed leading coordinates.
double expect_p_abs(const CPoly& g, const ScalarFn& P, const QuadRule& rule,
                    std::vector<Complex>& point, int inner_dims) {
  int k = inner_dims;
  int n = static_cast<int>(rule.nodes.size());
  std::vector<int> idx(k, 0);
  double sum = 0.0;
  for (;;) {
    double w = 1.0;
    for (int j = 0; j < k; ++j) {
      point[j] = Complex(rule.nodes[idx[j]], 0.0);
      w *= rule.weights[idx[j]];
    }
    double v = P.value(std::abs(evaluate(g, point)));
    if (!std::isfinite(v)) fail_numeric("flow: non-finite integrand value");
    sum += w * v;
    int j = k - 1;
    while (j >= 0 && ++idx[j] == n) idx[j--] = 0;
    if (j < 0) break;
  }
  return sum;
}

void check_flow_config(const FlowConfig& cfg) {
  if (cfg.f.basis() != Basis::Hermite) fail_domain("flow: f must be in Hermite basis");
  if (cfg.s_grid.size() < 2) fail_domain("flow: s-grid needs at least two points");
  if (!std::is_sorted(cfg.s_grid.begin(), cfg.s_grid.end()))
    fail_domain("flow: s-grid must be sorted");
  if (cfg.s_grid.front() != 0.0 || cfg.s_grid.back() != 1.0)
    fail_domain("flow: s-grid must start at 0 and end at 1");
  for (double s : cfg.s_grid)
    if (!(s >= 0.0 && s <= 1.0)) fail_domain("flow: s values must lie in [0,1]");
}

}  // namespace

CPoly build_g(const CPoly& f, Complex z, double s) {
  if (f.basis() != Basis::Hermite) fail_domain("build_g: f must be in Hermite basis");
  if (!(s >= 0.0 && s <= 1.0)) fail_domain("build_g: s must lie in [0,1]");
  int k = f.dim();
  double rs = std::sqrt(s);
  Complex rx = z * std::sqrt(1.0 - s);
  CPoly g(2 * k, Basis::Hermite);
  MultiIndex idx(2 * k, 0);
  for (const auto& [mi, c] : f.terms()) {
    // Expand prod_j (rs*u_j + rx*x_j)^{mi_j} binomially; coefficients land
    // directly in the Hermite basis of (u, x).
    auto rec = [&](auto&& self, int var, Complex coeff) -> void {
      if (var == k) {
        g.add(idx, coeff);
        return;
      }
      int a = mi[var];
      for (int i = 0; i <= a; ++i) {
        idx[var] = i;          // u_j exponent
        idx[k + var] = a - i;  // x_j exponent
        Complex w = binom(a, i) * std::pow(rs, i) * std::pow(rx, a - i);
        self(self, var + 1, coeff * w);
      }
      idx[var] = 0;
      idx[k + var] = 0;
    };
    rec(rec, 0, c);
  }
  return g;
}

double C_of_s(const FlowConfig& cfg, double s) {
  check_flow_config(cfg);
  int k = cfg.f.dim();
  CPoly g = build_g(cfg.f, cfg.z, s);
  QuadRule rule_u = gauss_rule(cfg.order_u);
  QuadRule rule_x = gauss_rule(cfg.order_x);
  // Outer over the x block; inner over the u block. The point layout matches
  // build_g: u coordinates first, then x.
  std::vector<Complex> point(2 * k);
  int n = static_cast<int>(rule_x.nodes.size());
  std::vector<int> idx(k, 0);
  double sum = 0.0;
  for (;;) {
    double w = 1.0;
    for (int j = 0; j < k; ++j) {
      point[k + j] = Complex(rule_x.nodes[idx[j]], 0.0);
      w *= rule_x.weights[idx[j]];
    }
    double inner = expect_p_abs(g, cfg.pair.P, rule_u, point, k);
    double v = cfg.pair.F.value(inner);
    if (!std::isfinite(v)) fail_numeric("flow: non-finite F value");
    sum += w * v;
    int j = k - 1;
    while (j >= 0 && ++idx[j] == n) idx[j--] = 0;
    if (j < 0) break;
  }
  return sum;
}

FlowReport flow_monotonicity(const FlowConfig& cfg) {
  check_flow_config(cfg);
  FlowReport rep;
  rep.s = cfg.s_grid;
  rep.values.reserve(cfg.s_grid.size());
  for (double s : cfg.s_grid) rep.values.push_back(C_of_s(cfg, s));
  rep.c_start = rep.values.front();
  rep.c_end = rep.values.back();
  rep.min_increment = 0.0;
  for (size_t i = 1; i < rep.values.size(); ++i)
    rep.min_increment = std::min(rep.min_increment, rep.values[i] - rep.values[i - 1]);
  rep.tol = 1e-6 * std::max(1.0, std::abs(rep.c_end));
  rep.monotone = rep.min_increment >= -rep.tol;

  // Endpoint identities against directly computed expectations.
  int k = cfg.f.dim();
  QuadRule rule_u = gauss_rule(cfg.order_u);
  QuadRule rule_x = gauss_rule(cfg.order_x);
  CPoly tzf = mahler_transform(cfg.f, cfg.z);
  std::vector<Complex> pt(k);
  auto eq = expect(
      [&](std::span<const double> x) {
        for (int j = 0; j < k; ++j) pt[j] = Complex(x[j], 0.0);
        return cfg.pair.Q.value(std::abs(evaluate(tzf, pt)));
      },
      k, rule_x);
  auto ep = expect(
      [&](std::span<const double> x) {
        for (int j = 0; j < k; ++j) pt[j] = Complex(x[j], 0.0);
        return cfg.pair.P.value(std::abs(evaluate(cfg.f, pt)));
      },
      k, rule_u);
  rep.endpoint_resid0 = std::abs(rep.c_start - eq);
  rep.endpoint_resid1 = std::abs(rep.c_end - cfg.pair.F.value(ep));
  double tol0 = 1e-6 * (1.0 + std::abs(rep.c_start));
  double tol1 = 1e-6 * (1.0 + std::abs(rep.c_end));
  rep.endpoints_ok = rep.endpoint_resid0 <= tol0 && rep.endpoint_resid1 <= tol1;
  return rep;
}

double global_D(const CPoly& f, const FnPair& pair, Complex z, int order) {
  if (f.basis() != Basis::Hermite) fail_domain("global check: f must be in Hermite basis");
  int k = f.dim();
  QuadRule rule = gauss_rule(order);
  CPoly tzf = mahler_transform(f, z);
  std::vector<Complex> pt(k);
  double ep = expect(
      [&](std::span<const double> x) {
        for (int j = 0; j < k; ++j) pt[j] = Complex(x[j], 0.0);
        return pair.P.value(std::abs(evaluate(f, pt)));
      },
      k, rule);
  double eq = expect(
      [&](std::span<const double> x) {
        for (int j = 0; j < k; ++j) pt[j] = Complex(x[j], 0.0);
        return pair.Q.value(std::abs(evaluate(tzf, pt)));
      },
      k, rule);
  return pair.F.value(ep) - eq;
}

double global_margin(const CPoly& f, const FnPair& pair, Complex z, int order) {
  if (f.basis() != Basis::Hermite) fail_domain("global check: f must be in Hermite basis");
  int k = f.dim();
  QuadRule rule = gauss_rule(order);
  CPoly tzf = mahler_transform(f, z);
  std::vector<Complex> pt(k);
  double ep = expect(
      [&](std::span<const double> x) {
        for (int j = 0; j < k; ++j) pt[j] = Complex(x[j], 0.0);
        return pair.P.value(std::abs(evaluate(f, pt)));
      },
      k, rule);
  double eq = expect(
      [&](std::span<const double> x) {
        for (int j = 0; j < k; ++j) pt[j] = Complex(x[j], 0.0);
        return pair.Q.value(std::abs(evaluate(tzf, pt)));
      },
      k, rule);
  return invert(pair.P, ep) - invert(pair.Q, eq);
}

double necessity_probe(const FnPair& pair, Complex z, Complex a, Complex b) {
  double t = std::abs(a);
  if (!(t > 0.0)) fail_domain("necessity_probe: a must be nonzero");
  double x = t * t;
  // M(x) = P(sqrt x), J(x) = Q(sqrt x); F'(M(x)) = Q'(t)/P'(t).
  double P1 = pair.P.d1(t), P2 = pair.P.d2(t);
  double Q1 = pair.Q.d1(t), Q2 = pair.Q.d2(t);
  double Mp = P1 / (2.0 * t);
  double Mpp = (P2 - P1 / t) / (4.0 * x);
  double Jp = Q1 / (2.0 * t);
  double Jpp = (Q2 - Q1 / t) / (4.0 * x);
  double Fp = Q1 / P1;
  double rab = (std::conj(a) * b).real();
  double rabz = (std::conj(a) * b * z).real();
  double probe = Fp * (2.0 * Mpp * rab * rab + Mp * std::norm(b)) -
                 2.0 * Jpp * rabz * rabz - Jp * std::norm(b) * std::norm(z);
  if (!std::isfinite(probe)) fail_numeric("necessity_probe: non-finite result");
  return probe;
}

SweepReport epsilon_sweep(const FnPair& pair, Complex z, Complex a, Complex b,
                          const std::vector<double>& eps_list, int order) {
  if (!(std::abs(a) > 0.0)) fail_domain("epsilon_sweep: a must be nonzero");
  SweepReport rep;
  rep.probe = necessity_probe(pair, z, a, b);
  for (double eps : eps_list) {
    if (!(eps >= 0.0)) fail_domain("epsilon_sweep: eps must be nonnegative");
    CPoly f(1, Basis::Hermite);
    f.set({0}, a);
    f.set({1}, b * eps);
    SweepRow row;
    row.eps = eps;
    row.margin = global_margin(f, pair, z, order);
    row.d_value = global_D(f, pair, z, order);
    rep.rows.push_back(row);
  }
  // Richardson in eps^2 on the two smallest positive entries.
  std::vector<const SweepRow*> pos;
  for (const auto& r : rep.rows)
    if (r.eps > 0.0) pos.push_back(&r);
  std::sort(pos.begin(), pos.end(),
            [](const SweepRow* a_, const SweepRow* b_) { return a_->eps < b_->eps; });
  if (pos.size() >= 2) {
    double e2 = pos[0]->eps, e1 = pos[1]->eps;
    double c2 = pos[0]->d_value / (e2 * e2), c1 = pos[1]->d_value / (e1 * e1);
    rep.coefficient = (c2 * e1 * e1 - c1 * e2 * e2) / (e1 * e1 - e2 * e2);
  } else if (pos.size() == 1) {
    rep.coefficient = pos[0]->d_value / (pos[0]->eps * pos[0]->eps);
  }
  return rep;
}

}  // namespace pqhyp
