#include "conditions.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace pqhyp {

namespace {

constexpr double kGolden = 0.6180339887498949;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Golden-section minimum of fn on [lo, hi]; fixed iteration count keeps the
// evaluation sequence (and therefore reports) deterministic.
double golden_min(const std::function<double(double)>& fn, double lo, double hi,
                  int iters, double* arg) {
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = fn(x1), f2 = fn(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = fn(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = fn(x2);
    }
  }
  if (f1 <= f2) {
    *arg = x1;
    return f1;
  }
  *arg = x2;
  return f2;
}

void check_grid(const TGridSpec& g) {
  if (!(g.tmin > 0.0) || !(g.tmax > g.tmin)) fail_domain("t-grid: need 0 < tmin < tmax");
  if (g.points < 2 || g.points > 2000000) fail_domain("t-grid: points must be in [2, 2e6]");
}

double kP_at(const FnPair& pair, double t) {
  double k = pair.P.d1_elasticity(t);
  if (!std::isfinite(k)) fail_numeric("local condition: tP''/P' non-finite at t=" + fmt(t));
  return k;
}

double kQ_at(const FnPair& pair, double t) {
  double k = pair.Q.d1_elasticity(t);
  if (!std::isfinite(k)) fail_numeric("local condition: tQ''/Q' non-finite at t=" + fmt(t));
  return k;
}

// Richardson-extrapolated central difference of g at x with automatic
// instability flag (levels h and h/2 compared).
struct FdResult {
  double value;
  bool unstable;
};

FdResult richardson_d1(const std::function<double(double)>& g, double x) {
  double h = 1e-4 * std::max(std::abs(x), 1.0);
  double d_h = (g(x + h) - g(x - h)) / (2.0 * h);
  double d_h2 = (g(x + 0.5 * h) - g(x - 0.5 * h)) / h;
  double rich = (4.0 * d_h2 - d_h) / 3.0;
  bool unstable = std::abs(d_h - d_h2) > 0.1 * std::abs(rich) + 1e-10;
  return {rich, unstable};
}

}  // namespace

std::vector<double> tgrid_points(const TGridSpec& g) {
  check_grid(g);
  std::vector<double> t(g.points);
  double llo = std::log(g.tmin), lhi = std::log(g.tmax);
  for (int i = 0; i < g.points; ++i)
    t[i] = std::exp(llo + (lhi - llo) * i / (g.points - 1));
  t.front() = g.tmin;
  t.back() = g.tmax;
  return t;
}

ElasticityProfile elasticity_profile(const FnPair& pair, const TGridSpec& grid) {
  ElasticityProfile prof;
  prof.t = tgrid_points(grid);
  prof.kP.reserve(prof.t.size());
  prof.kQ.reserve(prof.t.size());
  for (double t : prof.t) {
    prof.kP.push_back(kP_at(pair, t));
    prof.kQ.push_back(kQ_at(pair, t));
  }
  return prof;
}

double local_margin_kl(double kP, double kQ, Complex z) {
  double K = kP - 1.0, L = kQ - 1.0;
  return (K + 2.0) - (L + 2.0) * std::norm(z) - std::abs(L * z * z - K);
}

double local_margin(const FnPair& pair, Complex z, double t) {
  return local_margin_kl(kP_at(pair, t), kQ_at(pair, t), z);
}

double local_margin_w(const FnPair& pair, Complex z, double t, Complex w) {
  double kP = kP_at(pair, t), kQ = kQ_at(pair, t);
  Complex wz = w * z;
  double rw = w.real(), rwz = wz.real();
  double lhs = std::norm(w) - rw * rw + kP * rw * rw;
  double rhs = std::norm(wz) - rwz * rwz + kQ * rwz * rwz;
  return lhs - rhs;
}

LocalReport check_local_profiled(const FnPair& pair, const ElasticityProfile& prof, Complex z) {
  size_t n = prof.t.size();
  size_t imin = 0;
  double best = local_margin_kl(prof.kP[0], prof.kQ[0], z);
  for (size_t i = 1; i < n; ++i) {
    double m = local_margin_kl(prof.kP[i], prof.kQ[i], z);
    if (m < best) {
      best = m;
      imin = i;
    }
  }
  // Refine inside the bracketing grid cells (log-t domain, fresh evaluations).
  size_t ilo = imin > 0 ? imin - 1 : imin;
  size_t ihi = imin + 1 < n ? imin + 1 : imin;
  LocalReport rep;
  rep.min_margin = best;
  rep.argmin_t = prof.t[imin];
  if (ihi > ilo) {
    double arg = 0.0;
    double refined = golden_min(
        [&](double u) { return local_margin(pair, z, std::exp(u)); },
        std::log(prof.t[ilo]), std::log(prof.t[ihi]), 48, &arg);
    if (refined < rep.min_margin) {
      rep.min_margin = refined;
      rep.argmin_t = std::exp(arg);
    }
  }
  rep.holds = rep.min_margin >= kAdmissibleTol;
  return rep;
}

LocalReport check_local(const FnPair& pair, Complex z, const TGridSpec& grid) {
  ElasticityProfile prof = elasticity_profile(pair, grid);
  LocalReport rep = check_local_profiled(pair, prof, z);
  rep.grid = grid;
  return rep;
}

double weissler_margin(double p, double q, Complex z) {
  return p - std::norm(z) * q - std::abs((p - 2.0) - z * z * (q - 2.0));
}

double generator_margin(const ScalarFn& h, const ScalarFn& phi, Complex z, double s) {
  double a = phi.d1(s);
  ScalarFn P = make_generator_P(phi);
  double t = std::exp(s);
  double G = std::exp(phi.value(s) + s) / h.value(P.value(t));
  return local_margin_kl(a, a + G, z);
}

ConvexityReport convexity_report(const ScalarFn& F, double xlo, double xhi, int n) {
  if (!(xlo > 0.0) || !(xhi > xlo)) fail_domain("convexity_report: need 0 < xlo < xhi");
  if (n < 2 || n > 100000) fail_domain("convexity_report: points must be in [2, 1e5]");
  ConvexityReport rep;
  rep.points.reserve(n);
  double llo = std::log(xlo), lhi = std::log(xhi);
  bool have = false;
  for (int i = 0; i < n; ++i) {
    double x = std::exp(llo + (lhi - llo) * i / (n - 1));
    ConvexityPoint pt;
    pt.x = x;
    double G = F.d2_over_d1(x);
    if (!(std::abs(G) > 1e-14)) {
      rep.degenerate = true;
      rep.points.push_back(pt);
      continue;
    }
    pt.G = G;
    // G' and R' are analytic in the derivatives; only the second level is
    // finite-differenced.
    auto Gp = [&](double u) {
      double r = F.d2_over_d1(u);
      return F.d3(u) / F.d1(u) - r * r;
    };
    auto Rp = [&](double u) { return 1.0 - F.d1(u) * F.d3(u) / (F.d2(u) * F.d2(u)); };
    FdResult Gdd = richardson_d1(Gp, x);
    FdResult Rdd = richardson_d1(Rp, x);
    double gp = Gp(x);
    pt.det_expr = 2.0 * (G * Gdd.value - 2.0 * gp * gp);
    pt.ratio_dd = Rdd.value;
    pt.identity_resid = std::abs(pt.det_expr + 2.0 * Rdd.value * G * G * G);
    pt.fd_unstable = Gdd.unstable || Rdd.unstable;
    if (!have) {
      rep.min_det_expr = pt.det_expr;
      rep.max_ratio_dd = pt.ratio_dd;
      have = true;
    } else {
      rep.min_det_expr = std::min(rep.min_det_expr, pt.det_expr);
      rep.max_ratio_dd = std::max(rep.max_ratio_dd, pt.ratio_dd);
    }
    rep.points.push_back(pt);
  }
  rep.convex = have && rep.min_det_expr >= -1e-6;
  rep.ratio_concave = have && rep.max_ratio_dd <= 1e-6;
  return rep;
}

double lens_cP(const ScalarFn& P, const TGridSpec& grid) {
  std::vector<double> ts = tgrid_points(grid);
  auto cval = [&](double t) {
    double k = P.d1_elasticity(t);
    if (!(k > 0.0)) fail_domain("lens: tP''/P' not positive at t=" + fmt(t));
    return k + 1.0 / k;
  };
  size_t imax = 0;
  double best = cval(ts[0]);
  for (size_t i = 1; i < ts.size(); ++i) {
    double c = cval(ts[i]);
    if (c > best) {
      best = c;
      imax = i;
    }
  }
  size_t ilo = imax > 0 ? imax - 1 : imax;
  size_t ihi = imax + 1 < ts.size() ? imax + 1 : imax;
  if (ihi > ilo) {
    double arg = 0.0;
    double refined = -golden_min([&](double u) { return -cval(std::exp(u)); },
                                 std::log(ts[ilo]), std::log(ts[ihi]), 48, &arg);
    best = std::max(best, refined);
  }
  return best;
}

double lens_margin(double c, Complex z) {
  if (!(c >= 2.0 - 1e-9)) fail_domain("lens: parameter c must be >= 2");
  double wing = std::sqrt(std::max(c - 2.0, 0.0));
  Complex iw(0.0, wing);
  double reach = std::max(std::abs(2.0 * z + iw), std::abs(2.0 * z - iw));
  return std::sqrt(c + 2.0) - reach;
}

LensResult lens_contains(const ScalarFn& P, Complex z, const TGridSpec& grid) {
  LensResult res;
  res.c_P = lens_cP(P, grid);
  res.margin = lens_margin(res.c_P, z);
  res.contained = res.margin >= -1e-12;
  return res;
}

RStarResult r_star(const FnPair& pair, const TGridSpec& grid) {
  std::vector<double> ts = tgrid_points(grid);
  auto kP = [&](double t) {
    double k = pair.P.d1_elasticity(t);
    if (!(k > 0.0)) fail_domain("r_star: tP''/P' not positive at t=" + fmt(t));
    return k;
  };
  auto kQ = [&](double t) {
    double k = pair.Q.d1_elasticity(t);
    if (!(k > 0.0)) fail_domain("r_star: tQ''/Q' not positive at t=" + fmt(t));
    return k;
  };
  size_t iminP = 0, imaxQ = 0;
  double infP = kP(ts[0]), supQ = kQ(ts[0]);
  for (size_t i = 1; i < ts.size(); ++i) {
    double a = kP(ts[i]), b = kQ(ts[i]);
    if (a < infP) {
      infP = a;
      iminP = i;
    }
    if (b > supQ) {
      supQ = b;
      imaxQ = i;
    }
  }
  auto refine = [&](size_t idx, const std::function<double(double)>& fn, bool maximize) {
    size_t ilo = idx > 0 ? idx - 1 : idx;
    size_t ihi = idx + 1 < ts.size() ? idx + 1 : idx;
    if (ihi <= ilo) return maximize ? -1e308 : 1e308;
    double arg = 0.0;
    if (maximize)
      return -golden_min([&](double u) { return -fn(std::exp(u)); }, std::log(ts[ilo]),
                         std::log(ts[ihi]), 48, &arg);
    return golden_min([&](double u) { return fn(std::exp(u)); }, std::log(ts[ilo]),
                      std::log(ts[ihi]), 48, &arg);
  };
  infP = std::min(infP, refine(iminP, kP, false));
  supQ = std::max(supQ, refine(imaxQ, kQ, true));
  RStarResult res;
  res.inf_elasticity_P = infP;
  res.sup_elasticity_Q = supQ;
  res.r_star = std::min({1.0, std::sqrt(infP), std::sqrt(1.0 / supQ)});
  return res;
}

RegionScan scan_region(const FnPair& pair, int n_r, int n_theta, const TGridSpec& grid) {
  if (n_r < 2 || n_theta < 1 || n_r > 4096 || n_theta > 4096)
    fail_domain("scan_region: grid sides must be in [2,4096] x [1,4096]");
  ElasticityProfile prof = elasticity_profile(pair, grid);
  RegionScan scan;
  scan.n_r = n_r;
  scan.n_theta = n_theta;
  scan.cells.reserve(static_cast<size_t>(n_r) * n_theta);
  for (int i = 0; i < n_r; ++i) {
    double r = static_cast<double>(i) / (n_r - 1);
    for (int j = 0; j < n_theta; ++j) {
      double th = 2.0 * M_PI * j / n_theta;
      Complex z = std::polar(r, th);
      LocalReport rep = check_local_profiled(pair, prof, z);
      ScanCell cell;
      cell.re = z.real();
      cell.im = z.imag();
      cell.min_margin = rep.min_margin;
      cell.admissible = rep.holds;
      scan.cells.push_back(cell);
    }
  }
  return scan;
}

}  // namespace pqhyp
