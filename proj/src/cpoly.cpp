#include "cpoly.hpp"

#include <cmath>
#include <sstream>

namespace pqhyp {

namespace {

constexpr double kPrune = 1e-300;

// 1-D expansion of x^n in the Hermite basis: x^n = sum_m a[m] H_m(x).
// Built from x*H_m = H_{m+1} + m*H_{m-1}.
std::vector<double> monomial_in_hermite(int n) {
  std::vector<double> a{1.0};  // x^0 = H_0
  for (int step = 0; step < n; ++step) {
    std::vector<double> b(a.size() + 1, 0.0);
    for (size_t m = 0; m < a.size(); ++m) {
      if (a[m] == 0.0) continue;
      b[m + 1] += a[m];
      if (m >= 1) b[m - 1] += a[m] * static_cast<double>(m);
    }
    a = std::move(b);
  }
  return a;
}

// 1-D monomial coefficients of H_n: H_n(x) = sum_m a[m] x^m, via the
// recurrence H_{n+1} = x*H_n - n*H_{n-1}.
std::vector<double> hermite_in_monomial(int n) {
  std::vector<double> hm1{1.0};  // H_0
  if (n == 0) return hm1;
  std::vector<double> h{0.0, 1.0};  // H_1
  for (int m = 1; m < n; ++m) {
    std::vector<double> next(h.size() + 1, 0.0);
    for (size_t j = 0; j < h.size(); ++j) next[j + 1] += h[j];
    for (size_t j = 0; j < hm1.size(); ++j) next[j] -= static_cast<double>(m) * hm1[j];
    hm1 = std::move(h);
    h = std::move(next);
  }
  return h;
}

// Rewrites each term through per-variable 1-D tables, accumulating the tensor
// product of the 1-D expansions. Shared by both conversion directions.
CPoly convert(const CPoly& p, Basis target,
              std::vector<double> (*table)(int)) {
  CPoly out(p.dim(), target);
  std::vector<std::vector<double>> cache;
  auto expansion = [&](int n) -> const std::vector<double>& {
    while (static_cast<int>(cache.size()) <= n) cache.push_back(table(static_cast<int>(cache.size())));
    return cache[n];
  };
  MultiIndex idx(p.dim(), 0);
  for (const auto& [mi, c] : p.terms()) {
    // Depth-first over variables; weight carries the product of 1-D factors.
    auto rec = [&](auto&& self, int var, double weight) -> void {
      if (var == p.dim()) {
        out.add(idx, c * weight);
        return;
      }
      const auto& tab = expansion(mi[var]);
      for (size_t m = 0; m < tab.size(); ++m) {
        if (tab[m] == 0.0) continue;
        idx[var] = static_cast<int>(m);
        self(self, var + 1, weight * tab[m]);
      }
      idx[var] = 0;
    };
    rec(rec, 0, 1.0);
  }
  return out;
}

}  // namespace

CPoly::CPoly(int dim, Basis basis) : dim_(dim), basis_(basis) {
  if (dim < 1 || dim > kMaxDim) fail_domain("CPoly: dimension must be in [1," + std::to_string(kMaxDim) + "]");
}

CPoly CPoly::constant(int dim, Basis basis, Complex c) {
  CPoly p(dim, basis);
  p.set(MultiIndex(dim, 0), c);
  return p;
}

int CPoly::degree() const {
  int d = 0;
  for (const auto& [mi, c] : terms_) d = std::max(d, mi_total(mi));
  return d;
}

void CPoly::check_index(const MultiIndex& mi) const {
  if (static_cast<int>(mi.size()) != dim_) fail_domain("CPoly: index length does not match dimension");
  for (int e : mi)
    if (e < 0) fail_domain("CPoly: negative exponent");
  if (mi_total(mi) > kMaxDegree) fail_domain("CPoly: total degree exceeds " + std::to_string(kMaxDegree));
}

Complex CPoly::coeff(const MultiIndex& mi) const {
  auto it = terms_.find(mi);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void CPoly::set(const MultiIndex& mi, Complex c) {
  check_index(mi);
  if (std::abs(c) < kPrune)
    terms_.erase(mi);
  else
    terms_[mi] = c;
}

void CPoly::add(const MultiIndex& mi, Complex c) {
  check_index(mi);
  auto it = terms_.find(mi);
  Complex v = (it == terms_.end() ? Complex(0.0) : it->second) + c;
  if (std::abs(v) < kPrune) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_[mi] = v;
  }
}

void CPoly::scale(Complex c) {
  if (std::abs(c) < kPrune) {
    terms_.clear();
    return;
  }
  for (auto& [mi, v] : terms_) v *= c;
}

CPoly to_hermite(const CPoly& p) {
  if (p.basis() == Basis::Hermite) return p;
  return convert(p, Basis::Hermite, &monomial_in_hermite);
}

CPoly to_monomial(const CPoly& p) {
  if (p.basis() == Basis::Monomial) return p;
  return convert(p, Basis::Monomial, &hermite_in_monomial);
}

CPoly to_basis(const CPoly& p, Basis target) {
  return target == Basis::Hermite ? to_hermite(p) : to_monomial(p);
}

CPoly mahler_transform(const CPoly& p, Complex z) {
  if (p.basis() != Basis::Hermite) fail_domain("mahler_transform: polynomial must be in Hermite basis");
  int deg = p.degree();
  std::vector<Complex> zpow(static_cast<size_t>(deg) + 1);
  zpow[0] = Complex(1.0);
  for (int n = 1; n <= deg; ++n) zpow[n] = zpow[n - 1] * z;
  CPoly out(p.dim(), Basis::Hermite);
  for (const auto& [mi, c] : p.terms()) out.add(mi, c * zpow[mi_total(mi)]);
  return out;
}

Complex evaluate(const CPoly& p, std::span<const Complex> x) {
  if (static_cast<int>(x.size()) != p.dim()) fail_domain("evaluate: point dimension mismatch");
  // Per-variable value tables up to the needed degree, then a plain sum over
  // terms in map order (deterministic).
  std::vector<int> maxdeg(p.dim(), 0);
  for (const auto& [mi, c] : p.terms())
    for (int j = 0; j < p.dim(); ++j) maxdeg[j] = std::max(maxdeg[j], mi[j]);
  std::vector<std::vector<Complex>> vals(p.dim());
  for (int j = 0; j < p.dim(); ++j) {
    auto& v = vals[j];
    v.resize(static_cast<size_t>(maxdeg[j]) + 1);
    v[0] = Complex(1.0);
    if (maxdeg[j] >= 1) v[1] = x[j];
    for (int n = 1; n < maxdeg[j]; ++n) {
      if (p.basis() == Basis::Hermite)
        v[n + 1] = x[j] * v[n] - static_cast<double>(n) * v[n - 1];
      else
        v[n + 1] = x[j] * v[n];
    }
  }
  Complex sum(0.0);
  for (const auto& [mi, c] : p.terms()) {
    Complex t = c;
    for (int j = 0; j < p.dim(); ++j) t *= vals[j][mi[j]];
    sum += t;
  }
  return sum;
}

Complex noise_semigroup_eval(const CPoly& p, Complex z, std::span<const Complex> x) {
  return evaluate(mahler_transform(p, z), x);
}

CPoly gaussian_smooth_imaginary(const CPoly& p, double sigma) {
  if (p.basis() != Basis::Monomial) fail_domain("gaussian_smooth_imaginary: polynomial must be in monomial basis");
  if (!(sigma >= 0.0)) fail_domain("gaussian_smooth_imaginary: sigma must be nonnegative");
  if (sigma == 0.0) return p;
  double s2 = sigma * sigma;
  // x^n -> sum_m C(n,2m) (2m-1)!! (-sigma^2)^m x^{n-2m}, applied per variable.
  CPoly out(p.dim(), Basis::Monomial);
  MultiIndex idx(p.dim(), 0);
  for (const auto& [mi, c] : p.terms()) {
    auto rec = [&](auto&& self, int var, double weight) -> void {
      if (var == p.dim()) {
        out.add(idx, c * weight);
        return;
      }
      int n = mi[var];
      double mpow = 1.0;
      for (int m = 0; 2 * m <= n; ++m) {
        idx[var] = n - 2 * m;
        self(self, var + 1, weight * binom(n, 2 * m) * odd_double_factorial(m) * mpow);
        mpow *= -s2;
      }
      idx[var] = 0;
    };
    rec(rec, 0, 1.0);
  }
  return out;
}

CPoly mul_monomial(const CPoly& a, const CPoly& b) {
  if (a.basis() != Basis::Monomial || b.basis() != Basis::Monomial)
    fail_domain("mul_monomial: both factors must be in monomial basis");
  if (a.dim() != b.dim()) fail_domain("mul_monomial: dimension mismatch");
  CPoly out(a.dim(), Basis::Monomial);
  MultiIndex idx(a.dim(), 0);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      for (int j = 0; j < a.dim(); ++j) idx[j] = ma[j] + mb[j];
      out.add(idx, ca * cb);
    }
  return out;
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

double odd_double_factorial(int m) {
  double r = 1.0;
  for (int i = 1; i <= m; ++i) r *= static_cast<double>(2 * i - 1);
  return r;
}

std::string to_string(const CPoly& p) {
  std::ostringstream os;
  if (p.empty()) {
    os << "0";
    return os.str();
  }
  bool first = true;
  for (const auto& [mi, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << "," << c.imag() << ")";
    for (int j = 0; j < p.dim(); ++j) {
      if (mi[j] == 0) continue;
      os << "*" << (p.basis() == Basis::Hermite ? "H" : "x") << (j + 1);
      if (mi[j] > 1) os << "^" << mi[j];
    }
  }
  return os.str();
}

}  // namespace pqhyp
