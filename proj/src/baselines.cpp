#include "lcae/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "lcae/kernels.hpp"

namespace lcae {

OmpResult omp(const Mat& a, const Mat& y, int k) {
  if (y.cols() != 1 || y.rows() != a.rows())
    throw std::invalid_argument("omp: y must be a column matching A's rows");
  if (k < 1 || k > std::min(a.rows(), a.cols()))
    throw std::invalid_argument("omp: k must lie in [1, min(m, n)], got " + std::to_string(k));
  for (int j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    const double* col = a.col(j);
    for (int i = 0; i < a.rows(); ++i) s += col[i] * col[i];
    if (s == 0.0) throw std::invalid_argument("omp: column " + std::to_string(j) + " of A is zero");
  }

  const int n = a.cols();
  std::vector<char> selected(n, 0);
  OmpResult result;
  result.x = Mat(n, 1);
  Mat residual = y;
  Mat coeffs;

  for (int iter = 0; iter < k; ++iter) {
    // correlation with the residual; restrict the argmax to fresh columns
    Mat corr = at_b(a, residual);
    int pick = -1;
    double best = -1.0;
    for (int j = 0; j < n; ++j) {
      if (selected[j]) continue;
      const double c = std::fabs(corr(j, 0));
      if (c > best) {
        best = c;
        pick = j;
      }
    }
    selected[pick] = 1;
    result.support.push_back(pick);

    // least squares restricted to the support
    const int s = static_cast<int>(result.support.size());
    Mat a_sub(a.rows(), s);
    for (int c = 0; c < s; ++c)
      for (int i = 0; i < a.rows(); ++i) a_sub(i, c) = a(i, result.support[c]);
    coeffs = cholesky_solve(cholesky_spd(at_b(a_sub, a_sub)), at_b(a_sub, y));
    residual = y - matmul(a_sub, coeffs);
    result.residual_norm = frob_norm(residual);
    if (result.residual_norm < 1e-12) break;
  }

  for (std::size_t c = 0; c < result.support.size(); ++c)
    result.x(result.support[c], 0) = coeffs(static_cast<int>(c), 0);
  return result;
}

Mat soft_threshold(const Mat& b, double t) {
  if (t < 0.0) throw std::invalid_argument("soft_threshold: threshold must be >= 0");
  Mat out(b.rows(), b.cols());
  const double* in = b.data();
  double* o = out.data();
  for (std::size_t k = 0; k < b.size(); ++k) {
    const double mag = std::fabs(in[k]) - t;
    o[k] = mag > 0.0 ? (in[k] > 0.0 ? mag : -mag) : 0.0;
  }
  return out;
}

IstaResult ista(const Mat& a, const Mat& y, const IstaConfig& cfg) {
  if (y.cols() != 1 || y.rows() != a.rows())
    throw std::invalid_argument("ista: y must be a column matching A's rows");
  if (!(cfg.lambda > 0.0) || cfg.max_iters < 1 || !(cfg.tol > 0.0))
    throw std::invalid_argument("ista: lambda, max_iters and tol must be positive");
  if (cfg.step && !(*cfg.step > 0.0))
    throw std::invalid_argument("ista: step must be positive when given");

  const double step = cfg.step ? *cfg.step : 1.0 / max_eig_sym(a);
  const double shrink = cfg.lambda * step / 2.0;

  IstaResult result;
  result.x = Mat(a.cols(), 1);
  Mat ax(a.rows(), 1);
  auto objective = [&](const Mat& x, const Mat& ax_cur) {
    double l1 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) l1 += std::fabs(x.data()[k]);
    return frob_norm_sq(y - ax_cur) + cfg.lambda * l1;
  };

  double prev = objective(result.x, ax);
  result.objective_history.push_back(prev);
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    Mat grad_step = result.x + step * at_b(a, y - ax);
    result.x = soft_threshold(grad_step, shrink);
    ax = matmul(a, result.x);
    const double cur = objective(result.x, ax);
    result.objective_history.push_back(cur);
    result.iterations = iter + 1;
    if (std::fabs(prev - cur) < cfg.tol * std::max(std::fabs(prev), 1e-300)) break;
    prev = cur;
  }
  return result;
}

}  // namespace lcae
