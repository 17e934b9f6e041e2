#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conditions.hpp"
#include "cpoly.hpp"
#include "scalarfn.hpp"

namespace pqhyp::reports {

// Outcome of one CLI-level command: a JSON report, an optional CSV table
// (region scans), and the pass verdict that drives the process exit code.
struct CmdResult {
  std::string json;
  std::string csv;
  bool pass = true;
};

CmdResult check_local(const std::string& p_spec, const std::string& q_spec, Complex z,
                      const TGridSpec& grid);

CmdResult scan_region(const std::string& p_spec, const std::string& q_spec, int n_r, int n_theta,
                      const TGridSpec& grid);

CmdResult verify_global(const std::string& p_spec, const std::string& q_spec, Complex z,
                        int degree, int dim, int trials, std::uint64_t seed, int order,
                        bool probe);

CmdResult flow(const std::string& p_spec, const std::string& q_spec, Complex z,
               const std::string& f_literal, int s_points, int order_u, int order_x);

CmdResult rstar(const std::string& p_spec, const std::string& q_spec, const TGridSpec& grid);

CmdResult lens(const std::string& p_spec, Complex z, const TGridSpec& grid);

CmdResult discrete(const std::string& p_spec, const std::string& q_spec, Complex z, int m,
                   int trials, std::uint64_t seed);

CmdResult sweep(const std::string& p_spec, const std::string& q_spec, Complex z, Complex a,
                Complex b, const std::vector<double>& eps_list, int order);

// Deterministic seeded Hermite polynomial: complex standard normal
// coefficients scaled by 1/(1+|alpha|) over all |alpha| <= degree, drawn in
// lexicographic index order.
CPoly random_hermite_poly(int dim, int degree, std::uint64_t seed);

// Deterministic seeded Walsh coefficient table for the m-cube.
std::vector<Complex> random_cube_coeffs(int m, std::uint64_t seed);

// Mixes a base seed with a trial counter; used everywhere a family of seeded
// draws is needed so each trial is independent of the others.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter);

}  // namespace pqhyp::reports
