#include "quad.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>

#include "errors.hpp"

namespace pqhyp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

[[noreturn]] void bad_integrand(std::span<const double> x) {
  std::ostringstream os;
  os << "integrand returned a non-finite value at node (";
  for (size_t j = 0; j < x.size(); ++j) os << (j ? "," : "") << x[j];
  os << ")";
  fail_numeric(os.str());
}

}  // namespace

QuadRule gauss_rule(int n) {
  if (n < 1 || n > 512) fail_domain("gauss_rule: order must be in [1,512]");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) fail_numeric("gauss_rule: eigenvalue iteration did not converge");

  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()[i];  // ascending
    double v = solver.eigenvectors()(0, i);
    rule.weights[i] = v * v;  // first moment of the weight is 1
  }
  // Enforce the symmetry of the measure exactly, then renormalize.
  for (int i = 0, j = n - 1; i < j; ++i, --j) {
    double m = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    rule.nodes[i] = -m;
    rule.nodes[j] = m;
    double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.weights[i] = rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  double total = 0.0;
  for (double w : rule.weights) total += w;
  for (double& w : rule.weights) w /= total;
  return rule;
}

QuadRule scaled_rule(const QuadRule& rule, double variance) {
  if (!(variance >= 0.0)) fail_domain("scaled_rule: variance must be nonnegative");
  QuadRule out = rule;
  double s = std::sqrt(variance);
  for (double& x : out.nodes) x *= s;
  return out;
}

double expect(const RealFn& f, int k, const QuadRule& rule) {
  if (k < 1) fail_domain("expect: dimension must be positive");
  int n = static_cast<int>(rule.nodes.size());
  if (n < 1) fail_domain("expect: empty rule");
  double cells = std::pow(static_cast<double>(n), k);
  if (cells > 6.8e7) fail_domain("expect: tensor grid too large");

  std::vector<int> idx(k, 0);
  std::vector<double> x(k);
  double sum = 0.0;
  for (;;) {
    double w = 1.0;
    for (int j = 0; j < k; ++j) {
      x[j] = rule.nodes[idx[j]];
      w *= rule.weights[idx[j]];
    }
    double v = f(x);
    if (!std::isfinite(v)) bad_integrand(x);
    sum += w * v;
    int j = k - 1;
    while (j >= 0 && ++idx[j] == n) idx[j--] = 0;
    if (j < 0) break;
  }
  return sum;
}

MCResult mc_expect(const RealFn& f, int k, long long n, std::uint64_t seed) {
  if (k < 1) fail_domain("mc_expect: dimension must be positive");
  if (n < 2) fail_domain("mc_expect: need at least 2 samples");
  constexpr long long kChunk = 1 << 14;
  std::vector<double> x(k);
  double sum = 0.0, sumsq = 0.0;
  long long done = 0;
  for (long long chunk = 0; done < n; ++chunk) {
    // Chunk seed depends only on (seed, chunk), never on worker layout.
    std::uint64_t cs = splitmix64(splitmix64(seed) ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(chunk + 1)));
    std::mt19937_64 gen(cs);
    std::normal_distribution<double> nd(0.0, 1.0);
    long long count = std::min(kChunk, n - done);
    for (long long i = 0; i < count; ++i) {
      for (int j = 0; j < k; ++j) x[j] = nd(gen);
      double v = f(x);
      if (!std::isfinite(v)) bad_integrand(x);
      sum += v;
      sumsq += v * v;
    }
    done += count;
  }
  MCResult r;
  r.samples = n;
  r.mean = sum / static_cast<double>(n);
  double var = (sumsq - static_cast<double>(n) * r.mean * r.mean) / static_cast<double>(n - 1);
  if (var < 0.0) var = 0.0;
  r.stderr_est = std::sqrt(var / static_cast<double>(n));
  return r;
}

}  // namespace pqhyp
