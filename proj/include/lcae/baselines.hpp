#ifndef LCAE_BASELINES_HPP_
#define LCAE_BASELINES_HPP_

#include <optional>
#include <vector>

#include "lcae/mat.hpp"

namespace lcae {

struct OmpResult {
  Mat x;                     // n x 1 sparse estimate, zero off the support
  std::vector<int> support;  // selected column indices, in selection order
  double residual_norm = 0.0;
};

// Greedy sparse recovery: k rounds of correlate / pick / least-squares on
// the support / residual update. Ties in the correlation argmax break toward
// the lowest unselected index; exits early once the residual norm drops
// below 1e-12.
OmpResult omp(const Mat& a, const Mat& y, int k);

// elementwise sign(b) * max(0, |b| - t)
Mat soft_threshold(const Mat& b, double t);

struct IstaConfig {
  double lambda = 0.1;              // l1 weight
  int max_iters = 1000;
  double tol = 1e-10;               // relative objective change
  std::optional<double> step;       // gradient step; 1/max_eig(A^T A) when unset
};

struct IstaResult {
  Mat x;  // n x 1
  std::vector<double> objective_history;
  int iterations = 0;
};

// Iterative soft thresholding from x0 = 0: gradient step
// b = x + step * A^T (y - A x), then shrink by lambda*step/2. The objective
// ||y - A x||_2^2 + lambda ||x||_1 is non-increasing for step <= 1/max_eig.
IstaResult ista(const Mat& a, const Mat& y, const IstaConfig& cfg);

}  // namespace lcae

#endif  // LCAE_BASELINES_HPP_
