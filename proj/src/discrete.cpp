#include "discrete.hpp"

#include <bit>
#include <cmath>

#include "errors.hpp"

namespace pqhyp {

namespace {

void check_m(int m) {
  if (m < 1 || m > 12) fail_domain("cube: m must be in [1,12]");
}

// In-place unnormalized Walsh-Hadamard butterfly.
void fwht(std::vector<Complex>& a) {
  size_t n = a.size();
  for (size_t len = 1; len < n; len <<= 1)
    for (size_t i = 0; i < n; i += len << 1)
      for (size_t j = i; j < i + len; ++j) {
        Complex x = a[j], y = a[j + len];
        a[j] = x + y;
        a[j + len] = x - y;
      }
}

}  // namespace

CubeFn make_cube(int m, std::vector<Complex> values) {
  check_m(m);
  if (values.size() != (size_t{1} << m)) fail_domain("cube: value table must have 2^m entries");
  return CubeFn{m, std::move(values)};
}

std::vector<Complex> walsh_expand(const CubeFn& f) {
  check_m(f.m);
  if (f.values.size() != (size_t{1} << f.m)) fail_domain("cube: value table must have 2^m entries");
  std::vector<Complex> a = f.values;
  fwht(a);
  double scale = 1.0 / static_cast<double>(size_t{1} << f.m);
  for (Complex& c : a) c *= scale;
  return a;
}

CubeFn cube_from_walsh(int m, std::span<const Complex> coeffs) {
  check_m(m);
  if (coeffs.size() != (size_t{1} << m)) fail_domain("cube: coefficient table must have 2^m entries");
  std::vector<Complex> v(coeffs.begin(), coeffs.end());
  fwht(v);
  return CubeFn{m, std::move(v)};
}

CubeFn cube_substitute(int m, std::span<const Complex> coeffs, Complex z) {
  check_m(m);
  if (coeffs.size() != (size_t{1} << m)) fail_domain("cube: coefficient table must have 2^m entries");
  std::vector<Complex> zpow(static_cast<size_t>(m) + 1);
  zpow[0] = Complex(1.0);
  for (int n = 1; n <= m; ++n) zpow[n] = zpow[n - 1] * z;
  std::vector<Complex> b(coeffs.size());
  for (size_t S = 0; S < coeffs.size(); ++S) b[S] = coeffs[S] * zpow[std::popcount(S)];
  return cube_from_walsh(m, b);
}

double two_point_margin(const FnPair& pair, Complex z, Complex a, Complex b) {
  double left = pair.F.value(0.5 * (pair.P.value(std::abs(a + b)) + pair.P.value(std::abs(a - b))));
  Complex bz = b * z;
  double right = 0.5 * (pair.Q.value(std::abs(a + bz)) + pair.Q.value(std::abs(a - bz)));
  double margin = left - right;
  if (!std::isfinite(margin)) fail_numeric("two_point_margin: non-finite value");
  return margin;
}

std::vector<double> discrete_map(int m, std::span<const Complex> coeffs,
                                 const FnPair& pair, Complex z) {
  check_m(m);
  size_t n = size_t{1} << m;
  if (coeffs.size() != n) fail_domain("cube: coefficient table must have 2^m entries");
  std::vector<double> phi(static_cast<size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    // Noise on the tail block only: tail part of S is the bits >= k.
    std::vector<Complex> b(n);
    std::vector<Complex> zpow(static_cast<size_t>(m) + 1);
    zpow[0] = Complex(1.0);
    for (int t = 1; t <= m; ++t) zpow[t] = zpow[t - 1] * z;
    for (size_t S = 0; S < n; ++S) b[S] = coeffs[S] * zpow[std::popcount(S >> k)];
    CubeFn vals = cube_from_walsh(m, b);

    size_t heads = size_t{1} << k;
    size_t tails = size_t{1} << (m - k);
    double outer = 0.0;
    for (size_t h = 0; h < heads; ++h) {
      double inner = 0.0;
      for (size_t t = 0; t < tails; ++t)
        inner += pair.Q.value(std::abs(vals.values[h | (t << k)]));
      inner /= static_cast<double>(tails);
      outer += pair.P.value(invert(pair.Q, inner));
    }
    phi[k] = outer / static_cast<double>(heads);
    if (!std::isfinite(phi[k])) fail_numeric("discrete_map: non-finite value");
  }
  return phi;
}

double mfunctional(const ScalarFn& F, std::span<const double> w, std::span<const double> h) {
  if (w.size() != h.size() || w.empty()) fail_domain("mfunctional: weight/value size mismatch");
  double wsum = 0.0, acc = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0)) fail_domain("mfunctional: weights must be nonnegative");
    if (!(h[i] >= 0.0)) fail_domain("mfunctional: values must be nonnegative");
    wsum += w[i];
    acc += w[i] * F.value(h[i]);
  }
  if (!(std::abs(wsum - 1.0) <= 1e-9)) fail_domain("mfunctional: weights must sum to 1");
  return invert(F, acc);
}

double mfunctional_midpoint(const ScalarFn& F, std::span<const double> w,
                            std::span<const double> h0, std::span<const double> h1) {
  if (h0.size() != h1.size()) fail_domain("mfunctional: value size mismatch");
  std::vector<double> mid(h0.size());
  for (size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (h0[i] + h1[i]);
  return 0.5 * (mfunctional(F, w, h0) + mfunctional(F, w, h1)) - mfunctional(F, w, mid);
}

}  // namespace pqhyp
