#pragma once

#include <complex>
#include <vector>

#include "scalarfn.hpp"

namespace pqhyp {

using Complex = std::complex<double>;

// Log-spaced diagnostic grid in t used by every condition evaluator.
struct TGridSpec {
  double tmin = 1e-6;
  double tmax = 1e6;
  int points = 2000;
};

std::vector<double> tgrid_points(const TGridSpec& g);

// Cached elasticities t*P''/P' and t*Q''/Q' along a t-grid; region scans share
// one profile across all z cells.
struct ElasticityProfile {
  std::vector<double> t, kP, kQ;
};

ElasticityProfile elasticity_profile(const FnPair& pair, const TGridSpec& grid);

// Pointwise margin of the local condition at parameter t. With K = tP''/P'-1
// and L = tQ''/Q'-1 the w-optimized form reads
//   (K+2) - (L+2)|z|^2 - |L z^2 - K|,
// nonnegative exactly when the local inequality holds at t.
double local_margin_kl(double kP, double kQ, Complex z);
double local_margin(const FnPair& pair, Complex z, double t);

// The w-explicit form of the same condition before optimizing over w:
//   |w|^2 - (Re w)^2 + (tP''/P')(Re w)^2
//     - [ |wz|^2 - (Re wz)^2 + (tQ''/Q')(Re wz)^2 ].
double local_margin_w(const FnPair& pair, Complex z, double t, Complex w);

struct LocalReport {
  double min_margin = 0.0;
  double argmin_t = 0.0;
  bool holds = false;  // min_margin >= -1e-9
  TGridSpec grid;
};

// Minimize the local margin over the t-grid, then refine around the argmin by
// golden section in log t.
LocalReport check_local(const FnPair& pair, Complex z, const TGridSpec& grid = {});
LocalReport check_local_profiled(const FnPair& pair, const ElasticityProfile& prof, Complex z);

// Closed-form margin for the power pair (t^p, t^q):
//   p - |z|^2 q - |(p-2) - z^2 (q-2)|.
double weissler_margin(double p, double q, Complex z);

// Margin of the generator-form local condition at log-time s, written through
// a(s) = phi'(s) and G(s) = e^{phi(s)+s} / h(P(e^s)). Agrees with
// local_margin of the generated pair at t = e^s.
double generator_margin(const ScalarFn& h, const ScalarFn& phi, Complex z, double s);

// Ratio-convexity study of F: the quadratic-form determinant route
// det = 2(G G'' - 2 G'^2) with G = F''/F', against the ratio route
// -(F'/F'')''. The two are related by det = -2 R'' G^3 and must agree in
// sign wherever both are resolved.
struct ConvexityPoint {
  double x = 0.0;
  double G = 0.0;         // F''/F'
  double det_expr = 0.0;  // 2 (G G'' - 2 G'^2), G'' by Richardson differences of analytic G'
  double ratio_dd = 0.0;  // (F'/F'')'' by Richardson differences of analytic R'
  double identity_resid = 0.0;
  bool fd_unstable = false;
};

struct ConvexityReport {
  std::vector<ConvexityPoint> points;
  double min_det_expr = 0.0;
  double max_ratio_dd = 0.0;
  bool convex = false;         // min det_expr >= -1e-6
  bool ratio_concave = false;  // max ratio_dd <= 1e-6
  bool degenerate = false;     // F'' vanished somewhere on the grid
};

ConvexityReport convexity_report(const ScalarFn& F, double xlo, double xhi, int n);

// c_P = sup_t (K~ + 1/K~) with K~ = tP''/P'; errors if P'' <= 0 on the grid.
double lens_cP(const ScalarFn& P, const TGridSpec& grid = {});

// Signed containment margin of z in the lens region for parameter c:
// sqrt(c+2) - max_{+-} |2z +- i sqrt(c-2)|; contained when >= -1e-12.
double lens_margin(double c, Complex z);

struct LensResult {
  double c_P = 0.0;
  double margin = 0.0;
  bool contained = false;
};

LensResult lens_contains(const ScalarFn& P, Complex z, const TGridSpec& grid = {});

// r* = min{ 1, sqrt(inf_t tP''/P'), sqrt(inf_t Q'/(tQ'')) }; errors on a
// second-derivative positivity violation.
struct RStarResult {
  double r_star = 0.0;
  double inf_elasticity_P = 0.0;  // inf of tP''/P'
  double sup_elasticity_Q = 0.0;  // sup of tQ''/Q'
};

RStarResult r_star(const FnPair& pair, const TGridSpec& grid = {});

// Polar scan of the closed unit disk: r_i = i/(n_r-1), theta_j = 2 pi j / n_theta,
// cells emitted row-major with r outermost. Each cell stores the refined
// minimum margin and the admissibility verdict (margin >= -1e-9).
struct ScanCell {
  double re = 0.0, im = 0.0;
  double min_margin = 0.0;
  bool admissible = false;
};

struct RegionScan {
  int n_r = 0, n_theta = 0;
  std::vector<ScanCell> cells;
};

RegionScan scan_region(const FnPair& pair, int n_r, int n_theta, const TGridSpec& grid = {});

inline constexpr double kAdmissibleTol = -1e-9;

}  // namespace pqhyp
