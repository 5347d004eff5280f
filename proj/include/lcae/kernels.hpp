#ifndef LCAE_KERNELS_HPP_
#define LCAE_KERNELS_HPP_

#include <cstdint>
#include <initializer_list>
#include <span>

#include "lcae/mat.hpp"

namespace lcae {

// Dense kernels. Each parallel kernel splits work over independent output
// columns (or elements) and keeps the per-element accumulation order fixed,
// so results are bitwise identical to the serial reference at any thread
// count. The *_serial twins are kept for testing and for the kernel
// benchmark.

Mat matmul(const Mat& a, const Mat& b);         // a * b
Mat matmul_serial(const Mat& a, const Mat& b);
Mat at_b(const Mat& a, const Mat& b);           // a^T * b
Mat at_b_serial(const Mat& a, const Mat& b);
Mat a_bt(const Mat& a, const Mat& b);           // a * b^T
Mat a_bt_serial(const Mat& a, const Mat& b);

Mat sigmoid(const Mat& v);
Mat sigmoid_serial(const Mat& v);

// inverse sigmoid with clamping: inputs are pulled into [eps, 1-eps] before
// inverting, so any real input yields a finite result
Mat logit(const Mat& v, double eps = 1e-6);

// count of dense products executed so far (matmul/at_b/a_bt and twins);
// used by tests pinning the fixed-cost forward-pass contract
std::uint64_t matmul_count();
void reset_matmul_count();

// W minimizing ||Y - W Z||_F^2 + delta ||W||_F^2 via the normal equations
// W (Z Z^T + delta I) = Y Z^T, solved with a Cholesky factorization.
Mat ridge_lstsq_left(const Mat& y, const Mat& z, double delta);

// One term of a stacked least-squares objective: weight * ||C - A Z||_F^2.
// A == nullptr stands for the identity operator (skips the Gram product).
struct LsBlock {
  const Mat* a;
  const Mat* c;
  double weight;
};

// Z minimizing sum_i w_i ||C_i - A_i Z||_F^2 (+ delta ||Z||_F^2), i.e.
// (delta I + sum w_i A_i^T A_i) Z = sum w_i A_i^T C_i
Mat stacked_ridge_solve(std::span<const LsBlock> blocks, double delta);
Mat stacked_ridge_solve(std::initializer_list<LsBlock> blocks, double delta);

// largest eigenvalue of A^T A by power iteration from the normalized
// all-ones vector; fixed start makes the result deterministic
double max_eig_sym(const Mat& a);

// Cholesky factor L (lower) of a symmetric positive-definite G; throws on
// a non-positive pivot
Mat cholesky_spd(const Mat& g);
// solve (L L^T) X = B given the factor L
Mat cholesky_solve(const Mat& l, const Mat& b);

}  // namespace lcae

#endif  // LCAE_KERNELS_HPP_
