#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace pqhyp {

using Complex = std::complex<double>;

// Exponent vector of fixed length = polynomial dimension. Lexicographic map
// order makes every iteration over terms deterministic.
using MultiIndex = std::vector<int>;

enum class Basis { Monomial, Hermite };

inline int mi_total(const MultiIndex& a) {
  int s = 0;
  for (int e : a) s += e;
  return s;
}

// Sparse multivariate polynomial with complex coefficients, tagged with the
// basis its coefficients refer to: plain monomials x^alpha or probabilists'
// Hermite products H_alpha(x) = prod_j H_{alpha_j}(x_j).
class CPoly {
public:
  static constexpr int kMaxDim = 16;
  static constexpr int kMaxDegree = 64;

  CPoly(int dim, Basis basis);
  static CPoly constant(int dim, Basis basis, Complex c);

  int dim() const { return dim_; }
  Basis basis() const { return basis_; }
  const std::map<MultiIndex, Complex>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const;  // total degree; 0 for the zero polynomial

  Complex coeff(const MultiIndex& mi) const;
  void set(const MultiIndex& mi, Complex c);
  void add(const MultiIndex& mi, Complex c);
  void scale(Complex c);

  bool operator==(const CPoly& o) const = default;

private:
  void check_index(const MultiIndex& mi) const;

  int dim_;
  Basis basis_;
  std::map<MultiIndex, Complex> terms_;
};

// Basis conversions. Round trips are exact up to floating point roundoff; the
// 1-D ladders x*H_n = H_{n+1} + n*H_{n-1} and H_{n+1} = x*H_n - n*H_{n-1}
// drive both directions.
CPoly to_hermite(const CPoly& p);
CPoly to_monomial(const CPoly& p);
CPoly to_basis(const CPoly& p, Basis target);

// Multiplies the coefficient of H_alpha by z^{|alpha|}. Requires Hermite
// basis. z=1 is the identity; z=0 keeps only the mean.
CPoly mahler_transform(const CPoly& p, Complex z);

// Evaluate at a complex point (size must equal dim). Works in either basis;
// Hermite factors are evaluated by the three-term recurrence.
Complex evaluate(const CPoly& p, std::span<const Complex> x);

// Evaluate (T_z p)(x) for a Hermite-basis polynomial.
Complex noise_semigroup_eval(const CPoly& p, Complex z, std::span<const Complex> x);

// Substitute x_j -> x_j + i*y_j in a monomial-basis polynomial and integrate
// the y's out against the centered gaussian with variance sigma^2 (every
// variable smoothed with the same sigma). sigma=1 turns x^n into the monomial
// expansion of H_n.
CPoly gaussian_smooth_imaginary(const CPoly& p, double sigma);

// Product of two monomial-basis polynomials over the same variables.
CPoly mul_monomial(const CPoly& a, const CPoly& b);

// Exact small-integer combinatorics used by conversions and smoothing.
double binom(int n, int k);
double odd_double_factorial(int m);  // (2m-1)!! with the empty product = 1

std::string to_string(const CPoly& p);

}  // namespace pqhyp
