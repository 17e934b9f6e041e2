#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace pqhyp {

// Gauss-Hermite rule for the standard gaussian probability measure: weights
// sum to 1, nodes are symmetric about 0. Exact for polynomials of degree
// <= 2n-1.
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Golub-Welsch on the Jacobi matrix of the probabilists' Hermite recurrence
// (zero diagonal, off-diagonal sqrt(k)). n in [1, 512].
QuadRule gauss_rule(int n);

// Realizes the centered gaussian with the given variance by node scaling.
QuadRule scaled_rule(const QuadRule& rule, double variance);

using RealFn = std::function<double(std::span<const double>)>;

// Tensor-product expectation over k independent standard gaussian variables.
// Deterministic row-major traversal; throws a numeric error naming the node
// if the integrand returns a non-finite value.
double expect(const RealFn& f, int k, const QuadRule& rule);

struct MCResult {
  double mean = 0.0;
  double stderr_est = 0.0;
  long long samples = 0;
};

// Monte Carlo expectation over k standard gaussians. Sampling is chunked with
// counter-based per-chunk seeds, so the result depends only on (seed, n), not
// on any execution partitioning.
MCResult mc_expect(const RealFn& f, int k, long long n, std::uint64_t seed);

}  // namespace pqhyp
