#include "reports.hpp"

#include <cmath>
#include <random>

#include "discrete.hpp"
#include "errors.hpp"
#include "flow.hpp"
#include "jsonout.hpp"
#include "specparse.hpp"
#include "version.hpp"

namespace pqhyp::reports {

namespace {

using jsonio::Value;

Value envelope(const char* command) {
  Value v = Value::object();
  v.set("schema", kReportSchema);
  v.set("tool", kToolName);
  v.set("version", kToolVersion);
  v.set("command", command);
  return v;
}

Value complex_value(Complex z) {
  Value v = Value::object();
  v.set("re", z.real());
  v.set("im", z.imag());
  return v;
}

Value grid_value(const TGridSpec& g) {
  Value v = Value::object();
  v.set("tmin", g.tmin);
  v.set("tmax", g.tmax);
  v.set("points", g.points);
  v.set("spacing", "log");
  return v;
}

Value pair_config(const FnPair& pair) {
  Value v = Value::object();
  v.set("P", pair.spec_P);
  v.set("Q", pair.spec_Q);
  return v;
}

Value assumptions(const FnPair& pair) {
  Value v = Value::object();
  v.set("P_growth_declared", pair.P.growth_declared());
  v.set("Q_growth_declared", pair.Q.growth_declared());
  return v;
}

void require_unit_disk(Complex z) {
  if (!(std::norm(z) <= 1.0 + 1e-12)) fail_domain("z must lie in the closed unit disk");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Lexicographic enumeration of all indices with |alpha| <= degree.
void enumerate_indices(int dim, int degree, std::vector<MultiIndex>& out) {
  MultiIndex idx(dim, 0);
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == dim) {
      out.push_back(idx);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      idx[var] = e;
      self(self, var + 1, remaining - e);
    }
    idx[var] = 0;
  };
  rec(rec, 0, degree);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  return splitmix64(splitmix64(seed) ^ (0x9E3779B97F4A7C15ULL * (counter + 1)));
}

CPoly random_hermite_poly(int dim, int degree, std::uint64_t seed) {
  if (dim < 1 || dim > CPoly::kMaxDim) fail_domain("random poly: bad dimension");
  if (degree < 0 || degree > CPoly::kMaxDegree) fail_domain("random poly: bad degree");
  std::vector<MultiIndex> indices;
  enumerate_indices(dim, degree, indices);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  CPoly f(dim, Basis::Hermite);
  for (const MultiIndex& mi : indices) {
    double re = nd(gen), im = nd(gen);
    f.add(mi, Complex(re, im) / (1.0 + static_cast<double>(mi_total(mi))));
  }
  return f;
}

std::vector<Complex> random_cube_coeffs(int m, std::uint64_t seed) {
  if (m < 1 || m > 12) fail_domain("random cube: m must be in [1,12]");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<Complex> coeffs(size_t{1} << m);
  for (size_t S = 0; S < coeffs.size(); ++S) {
    double re = nd(gen), im = nd(gen);
    coeffs[S] = Complex(re, im) / (1.0 + static_cast<double>(std::popcount(S)));
  }
  return coeffs;
}

CmdResult check_local(const std::string& p_spec, const std::string& q_spec, Complex z,
                      const TGridSpec& grid) {
  require_unit_disk(z);
  FnPair pair = parse_pair(p_spec, q_spec);
  LocalReport rep = pqhyp::check_local(pair, z, grid);

  Value v = envelope("check-local");
  Value cfg = pair_config(pair);
  cfg.set("z", complex_value(z));
  cfg.set("tgrid", grid_value(grid));
  v.set("config", std::move(cfg));
  v.set("assumptions", assumptions(pair));
  Value tol = Value::object();
  tol.set("admissible_margin", kAdmissibleTol);
  v.set("tolerances", std::move(tol));
  Value res = Value::object();
  res.set("min_margin", rep.min_margin);
  res.set("argmin_t", rep.argmin_t);
  res.set("holds", rep.holds);
  v.set("result", std::move(res));
  return {v.dump(), "", rep.holds};
}

CmdResult scan_region(const std::string& p_spec, const std::string& q_spec, int n_r, int n_theta,
                      const TGridSpec& grid) {
  FnPair pair = parse_pair(p_spec, q_spec);
  RegionScan scan = pqhyp::scan_region(pair, n_r, n_theta, grid);

  std::string csv = "re,im,min_margin,admissible\n";
  int admissible = 0;
  double min_margin = scan.cells.front().min_margin;
  Complex argmin(scan.cells.front().re, scan.cells.front().im);
  for (const ScanCell& cell : scan.cells) {
    csv += jsonio::format_double(cell.re);
    csv += ',';
    csv += jsonio::format_double(cell.im);
    csv += ',';
    csv += jsonio::format_double(cell.min_margin);
    csv += ',';
    csv += cell.admissible ? '1' : '0';
    csv += '\n';
    if (cell.admissible) ++admissible;
    if (cell.min_margin < min_margin) {
      min_margin = cell.min_margin;
      argmin = Complex(cell.re, cell.im);
    }
  }

  Value v = envelope("scan-region");
  Value cfg = pair_config(pair);
  cfg.set("n_r", scan.n_r);
  cfg.set("n_theta", scan.n_theta);
  cfg.set("tgrid", grid_value(grid));
  v.set("config", std::move(cfg));
  v.set("assumptions", assumptions(pair));
  Value tol = Value::object();
  tol.set("admissible_margin", kAdmissibleTol);
  v.set("tolerances", std::move(tol));
  Value res = Value::object();
  res.set("cells", static_cast<long long>(scan.cells.size()));
  res.set("admissible_cells", admissible);
  res.set("min_margin", min_margin);
  res.set("argmin_z", complex_value(argmin));
  v.set("result", std::move(res));
  return {v.dump(), csv, true};
}

CmdResult verify_global(const std::string& p_spec, const std::string& q_spec, Complex z,
                        int degree, int dim, int trials, std::uint64_t seed, int order,
                        bool probe) {
  require_unit_disk(z);
  if (degree < 0 || degree > 16) fail_domain("verify-global: degree must be in [0,16]");
  if (dim < 1 || dim > 3) fail_domain("verify-global: dim must be in [1,3]");
  if (trials < 0 || trials > 100000) fail_domain("verify-global: trials must be in [0,1e5]");
  FnPair pair = parse_pair(p_spec, q_spec);

  Value rows = Value::array();
  bool have_min = false;
  double min_margin = 0.0;
  auto add_row = [&](Value row, double margin) {
    row.set("margin", margin);
    rows.push_back(std::move(row));
    if (!have_min || margin < min_margin) {
      min_margin = margin;
      have_min = true;
    }
  };

  for (int i = 0; i < trials; ++i) {
    CPoly f = random_hermite_poly(dim, degree, mix_seed(seed, static_cast<std::uint64_t>(i)));
    double margin = global_margin(f, pair, z, order);
    Value row = Value::object();
    row.set("kind", "random");
    row.set("trial", i);
    add_row(std::move(row), margin);
  }
  if (probe) {
    for (double eps : {0.02, 0.05, 0.1}) {
      CPoly f(1, Basis::Hermite);
      f.set({0}, Complex(1.0));
      f.set({1}, Complex(eps));
      double margin = global_margin(f, pair, z, order);
      Value row = Value::object();
      row.set("kind", "probe");
      row.set("eps", eps);
      add_row(std::move(row), margin);
    }
  }

  const double tol = -1e-6;
  bool pass = !have_min || min_margin >= tol;

  Value v = envelope("verify-global");
  Value cfg = pair_config(pair);
  cfg.set("z", complex_value(z));
  cfg.set("degree", degree);
  cfg.set("dim", dim);
  cfg.set("trials", trials);
  cfg.set("seed", static_cast<long long>(seed));
  cfg.set("order", order);
  cfg.set("probe", probe);
  v.set("config", std::move(cfg));
  v.set("assumptions", assumptions(pair));
  Value tolv = Value::object();
  tolv.set("min_margin", tol);
  v.set("tolerances", std::move(tolv));
  Value res = Value::object();
  res.set("rows", std::move(rows));
  if (have_min) res.set("min_margin", min_margin);
  res.set("pass", pass);
  v.set("result", std::move(res));
  return {v.dump(), "", pass};
}

CmdResult flow(const std::string& p_spec, const std::string& q_spec, Complex z,
               const std::string& f_literal, int s_points, int order_u, int order_x) {
  require_unit_disk(z);
  if (s_points < 2 || s_points > 1000) fail_domain("flow: s-points must be in [2,1000]");
  FnPair pair = parse_pair(p_spec, q_spec);
  CPoly f = to_hermite(parse_poly(f_literal));

  FlowConfig cfg(f, pair, z);
  cfg.s_grid.clear();
  for (int i = 0; i < s_points; ++i)
    cfg.s_grid.push_back(static_cast<double>(i) / (s_points - 1));
  cfg.s_grid.front() = 0.0;
  cfg.s_grid.back() = 1.0;
  cfg.order_u = order_u;
  cfg.order_x = order_x;
  FlowReport rep = flow_monotonicity(cfg);
  bool pass = rep.monotone && rep.endpoints_ok;

  Value v = envelope("flow");
  Value c = pair_config(pair);
  c.set("z", complex_value(z));
  c.set("f", f_literal);
  c.set("s_points", s_points);
  c.set("order_u", order_u);
  c.set("order_x", order_x);
  v.set("config", std::move(c));
  v.set("assumptions", assumptions(pair));
  Value tol = Value::object();
  tol.set("monotone_rel", 1e-6);
  tol.set("endpoint_rel", 1e-6);
  v.set("tolerances", std::move(tol));
  Value res = Value::object();
  Value svals = Value::array(), cvals = Value::array();
  for (double s : rep.s) svals.push_back(s);
  for (double cv : rep.values) cvals.push_back(cv);
  res.set("s", std::move(svals));
  res.set("C", std::move(cvals));
  res.set("min_increment", rep.min_increment);
  res.set("monotone", rep.monotone);
  res.set("c_start", rep.c_start);
  res.set("c_end", rep.c_end);
  res.set("endpoint_resid0", rep.endpoint_resid0);
  res.set("endpoint_resid1", rep.endpoint_resid1);
  res.set("endpoints_ok", rep.endpoints_ok);
  res.set("pass", pass);
  v.set("result", std::move(res));
  return {v.dump(), "", pass};
}

CmdResult rstar(const std::string& p_spec, const std::string& q_spec, const TGridSpec& grid) {
  FnPair pair = parse_pair(p_spec, q_spec);
  RStarResult res = pqhyp::r_star(pair, grid);

  Value v = envelope("rstar");
  Value cfg = pair_config(pair);
  cfg.set("tgrid", grid_value(grid));
  v.set("config", std::move(cfg));
  v.set("assumptions", assumptions(pair));
  Value out = Value::object();
  out.set("r_star", res.r_star);
  out.set("inf_elasticity_P", res.inf_elasticity_P);
  out.set("sup_elasticity_Q", res.sup_elasticity_Q);
  v.set("result", std::move(out));
  return {v.dump(), "", true};
}

CmdResult lens(const std::string& p_spec, Complex z, const TGridSpec& grid) {
  require_unit_disk(z);
  ScalarFn P = parse_fn(p_spec);
  LensResult res = pqhyp::lens_contains(P, z, grid);

  Value v = envelope("lens");
  Value cfg = Value::object();
  cfg.set("P", P.spec());
  cfg.set("z", complex_value(z));
  cfg.set("tgrid", grid_value(grid));
  v.set("config", std::move(cfg));
  Value tol = Value::object();
  tol.set("contain_margin", -1e-12);
  v.set("tolerances", std::move(tol));
  Value out = Value::object();
  out.set("c_P", res.c_P);
  out.set("margin", res.margin);
  out.set("contained", res.contained);
  v.set("result", std::move(out));
  return {v.dump(), "", res.contained};
}

CmdResult discrete(const std::string& p_spec, const std::string& q_spec, Complex z, int m,
                   int trials, std::uint64_t seed) {
  require_unit_disk(z);
  if (trials < 1 || trials > 100000) fail_domain("discrete: trials must be in [1,1e5]");
  FnPair pair = parse_pair(p_spec, q_spec);

  Value rows = Value::array();
  bool all_monotone = true;
  double min_increment = 0.0;
  for (int i = 0; i < trials; ++i) {
    std::vector<Complex> coeffs = random_cube_coeffs(m, mix_seed(seed, static_cast<std::uint64_t>(i)));
    std::vector<double> phi = discrete_map(m, coeffs, pair, z);
    double mininc = 0.0;
    for (size_t k = 1; k < phi.size(); ++k) mininc = std::min(mininc, phi[k] - phi[k - 1]);
    bool monotone = mininc >= -1e-10;
    all_monotone = all_monotone && monotone;
    min_increment = std::min(min_increment, mininc);
    Value row = Value::object();
    row.set("trial", i);
    Value pv = Value::array();
    for (double p : phi) pv.push_back(p);
    row.set("phi", std::move(pv));
    row.set("min_increment", mininc);
    row.set("monotone", monotone);
    rows.push_back(std::move(row));
  }

  Value v = envelope("discrete");
  Value cfg = pair_config(pair);
  cfg.set("z", complex_value(z));
  cfg.set("m", m);
  cfg.set("trials", trials);
  cfg.set("seed", static_cast<long long>(seed));
  v.set("config", std::move(cfg));
  v.set("assumptions", assumptions(pair));
  Value tol = Value::object();
  tol.set("monotone_margin", -1e-10);
  v.set("tolerances", std::move(tol));
  Value res = Value::object();
  res.set("rows", std::move(rows));
  res.set("min_increment", min_increment);
  res.set("all_monotone", all_monotone);
  v.set("result", std::move(res));
  return {v.dump(), "", all_monotone};
}

CmdResult sweep(const std::string& p_spec, const std::string& q_spec, Complex z, Complex a,
                Complex b, const std::vector<double>& eps_list, int order) {
  require_unit_disk(z);
  FnPair pair = parse_pair(p_spec, q_spec);
  SweepReport rep = epsilon_sweep(pair, z, a, b, eps_list, order);

  Value v = envelope("sweep");
  Value cfg = pair_config(pair);
  cfg.set("z", complex_value(z));
  cfg.set("a", complex_value(a));
  cfg.set("b", complex_value(b));
  Value el = Value::array();
  for (double e : eps_list) el.push_back(e);
  cfg.set("eps", std::move(el));
  cfg.set("order", order);
  v.set("config", std::move(cfg));
  v.set("assumptions", assumptions(pair));
  Value res = Value::object();
  Value rows = Value::array();
  for (const SweepRow& r : rep.rows) {
    Value row = Value::object();
    row.set("eps", r.eps);
    row.set("margin", r.margin);
    row.set("d_value", r.d_value);
    rows.push_back(std::move(row));
  }
  res.set("rows", std::move(rows));
  res.set("coefficient", rep.coefficient);
  res.set("probe", rep.probe);
  v.set("result", std::move(res));
  bool pass = rep.probe >= 0.0 || rep.coefficient < 0.0 || rep.rows.empty();
  return {v.dump(), "", pass};
}

}  // namespace pqhyp::reports
