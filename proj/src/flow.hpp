#pragma once

#include <vector>

#include "conditions.hpp"
#include "cpoly.hpp"
#include "quad.hpp"
#include "scalarfn.hpp"

namespace pqhyp {

// Interpolant for the two-measure flow. For f in Hermite basis on k variables
// the result lives on 2k variables (u_1..u_k, x_1..x_k): every coordinate is
// replaced by sqrt(s)*u_j + z*sqrt(1-s)*x_j and the resulting coefficients are
// read in the Hermite basis. At s=1 this is f(u); at s=0 it is (T_z f)(x).
CPoly build_g(const CPoly& f, Complex z, double s);

struct FlowConfig {
  CPoly f;  // Hermite basis
  FnPair pair;
  Complex z;
  std::vector<double> s_grid;  // sorted, must contain 0 and 1
  int order_u = 64;            // inner expectation (u block)
  int order_x = 64;            // outer expectation (x block)
  FlowConfig(CPoly f_, FnPair pair_, Complex z_)
      : f(std::move(f_)), pair(std::move(pair_)), z(z_) {
    for (int i = 0; i <= 20; ++i) s_grid.push_back(i / 20.0);
  }
};

// C(s) = E_x[ F( E_u[ P(|g(u,x;s)|) ] ) ]. C(1) = F(E P(|f|)) and
// C(0) = E Q(|T_z f|), so monotone growth of C proves the global inequality.
double C_of_s(const FlowConfig& cfg, double s);

struct FlowReport {
  std::vector<double> s;
  std::vector<double> values;
  double min_increment = 0.0;
  double tol = 0.0;           // 1e-6 * max(1, |C(1)|)
  bool monotone = false;
  double c_start = 0.0, c_end = 0.0;
  double endpoint_resid0 = 0.0;  // |C(0) - E Q(|T_z f|)|
  double endpoint_resid1 = 0.0;  // |C(1) - F(E P(|f|))|
  bool endpoints_ok = false;
};

FlowReport flow_monotonicity(const FlowConfig& cfg);

// Both faces of the global inequality. margin uses the inverted form
// P^{-1}(E P(|f|)) - Q^{-1}(E Q(|T_z f|)); D uses F(E P(|f|)) - E Q(|T_z f|).
// They are nonnegative together.
double global_margin(const CPoly& f, const FnPair& pair, Complex z, int order = 64);
double global_D(const CPoly& f, const FnPair& pair, Complex z, int order = 64);

// Second-order expansion coefficient of D at the perturbation
// f = a + eps*b*H_1: the sign decides local necessity. Requires a != 0.
double necessity_probe(const FnPair& pair, Complex z, Complex a, Complex b);

struct SweepRow {
  double eps = 0.0;
  double margin = 0.0;  // inverted-form margin
  double d_value = 0.0; // F(E P) - E Q form
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double coefficient = 0.0;  // Richardson limit of d_value/eps^2
  double probe = 0.0;
};

SweepReport epsilon_sweep(const FnPair& pair, Complex z, Complex a, Complex b,
                          const std::vector<double>& eps_list, int order = 64);

}  // namespace pqhyp
