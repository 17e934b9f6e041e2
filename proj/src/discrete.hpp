#pragma once

#include <span>
#include <vector>

#include "cpoly.hpp"
#include "scalarfn.hpp"

namespace pqhyp {

// Function on the discrete cube {-1,1}^m, m <= 12. Points are indexed by
// mask: bit j set means coordinate j+1 equals -1. Walsh coefficients use the
// same mask indexing for subsets S.
struct CubeFn {
  int m = 0;
  std::vector<Complex> values;  // size 2^m
};

CubeFn make_cube(int m, std::vector<Complex> values);

// Walsh-Fourier coefficients a(S) = 2^{-m} sum_eps f(eps) W_S(eps); the
// inverse is the plain butterfly without scaling.
std::vector<Complex> walsh_expand(const CubeFn& f);
CubeFn cube_from_walsh(int m, std::span<const Complex> coeffs);

// Noise operator on the cube: multiply a(S) by z^{|S|}, then synthesize.
CubeFn cube_substitute(int m, std::span<const Complex> coeffs, Complex z);

// Two-point margin F(avg P(|a +- b|)) - avg Q(|a +- bz|); the m=1 discrete
// inequality. Exactly symmetric under (b,z) -> (-b,-z).
double two_point_margin(const FnPair& pair, Complex z, Complex a, Complex b);

// Interpolating map phi(k), k=0..m: the noise acts on the tail coordinates
// (indices > k), the P/Q averaging splits the cube into head and tail blocks:
//   phi(k) = 2^{-k} sum_head P( Q^{-1}( 2^{-(m-k)} sum_tail Q(|v|) ) ).
// phi(m) = E P(|f|); phi(0) = P(Q^{-1}(E Q(|T_z f|))). Monotone growth in k
// is the discrete analog of the global inequality.
std::vector<double> discrete_map(int m, std::span<const Complex> coeffs,
                                 const FnPair& pair, Complex z);

// M-functional M_F(h) = F^{-1}(sum w_i F(h_i)) for nonnegative h and
// probability weights w.
double mfunctional(const ScalarFn& F, std::span<const double> w, std::span<const double> h);

// Midpoint convexity margin (M(h0)+M(h1))/2 - M((h0+h1)/2); nonnegative when
// the functional is convex.
double mfunctional_midpoint(const ScalarFn& F, std::span<const double> w,
                            std::span<const double> h0, std::span<const double> h1);

}  // namespace pqhyp
