#include "lcae/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cmath>
#include <vector>

namespace lcae {

namespace {

std::atomic<std::uint64_t> g_matmul_count{0};

void bump_count() { g_matmul_count.fetch_add(1, std::memory_order_relaxed); }

void check_inner(int a, int b, const char* what) {
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": inner dimension mismatch " +
                                std::to_string(a) + " vs " + std::to_string(b));
}

// out(:,j) accumulated column-by-column of a; identical order in the serial
// and parallel versions
void matmul_col(const Mat& a, const Mat& b, Mat& out, int j) {
  double* oj = out.col(j);
  for (int l = 0; l < a.cols(); ++l) {
    const double w = b(l, j);
    if (w == 0.0) continue;
    const double* al = a.col(l);
    for (int i = 0; i < a.rows(); ++i) oj[i] += w * al[i];
  }
}

void at_b_col(const Mat& a, const Mat& b, Mat& out, int j) {
  const double* bj = b.col(j);
  for (int l = 0; l < a.cols(); ++l) {
    const double* al = a.col(l);
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += al[i] * bj[i];
    out(l, j) = s;
  }
}

void a_bt_col(const Mat& a, const Mat& b, Mat& out, int j) {
  double* oj = out.col(j);
  for (int l = 0; l < a.cols(); ++l) {
    const double w = b(j, l);
    if (w == 0.0) continue;
    const double* al = a.col(l);
    for (int i = 0; i < a.rows(); ++i) oj[i] += w * al[i];
  }
}

double sigmoid_scalar(double x) {
  double r;
  if (x >= 0.0) {
    r = 1.0 / (1.0 + std::exp(-x));
  } else {
    const double e = std::exp(x);
    r = e / (1.0 + e);
  }
  // keep the output strictly inside (0,1) even where exp saturates
  if (r >= 1.0) r = std::nextafter(1.0, 0.0);
  if (r <= 0.0) r = std::nextafter(0.0, 1.0);
  return r;
}

}  // namespace

Mat matmul(const Mat& a, const Mat& b) {
  check_inner(a.cols(), b.rows(), "matmul");
  bump_count();
  Mat out(a.rows(), b.cols());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < b.cols(); ++j) matmul_col(a, b, out, j);
  return out;
}

Mat matmul_serial(const Mat& a, const Mat& b) {
  check_inner(a.cols(), b.rows(), "matmul");
  bump_count();
  Mat out(a.rows(), b.cols());
  for (int j = 0; j < b.cols(); ++j) matmul_col(a, b, out, j);
  return out;
}

Mat at_b(const Mat& a, const Mat& b) {
  check_inner(a.rows(), b.rows(), "at_b");
  bump_count();
  Mat out(a.cols(), b.cols());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < b.cols(); ++j) at_b_col(a, b, out, j);
  return out;
}

Mat at_b_serial(const Mat& a, const Mat& b) {
  check_inner(a.rows(), b.rows(), "at_b");
  bump_count();
  Mat out(a.cols(), b.cols());
  for (int j = 0; j < b.cols(); ++j) at_b_col(a, b, out, j);
  return out;
}

Mat a_bt(const Mat& a, const Mat& b) {
  check_inner(a.cols(), b.cols(), "a_bt");
  bump_count();
  Mat out(a.rows(), b.rows());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < b.rows(); ++j) a_bt_col(a, b, out, j);
  return out;
}

Mat a_bt_serial(const Mat& a, const Mat& b) {
  check_inner(a.cols(), b.cols(), "a_bt");
  bump_count();
  Mat out(a.rows(), b.rows());
  for (int j = 0; j < b.rows(); ++j) a_bt_col(a, b, out, j);
  return out;
}

Mat sigmoid(const Mat& v) {
  Mat out(v.rows(), v.cols());
  const double* in = v.data();
  double* o = out.data();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) o[k] = sigmoid_scalar(in[k]);
  return out;
}

Mat sigmoid_serial(const Mat& v) {
  Mat out(v.rows(), v.cols());
  const double* in = v.data();
  double* o = out.data();
  for (std::size_t k = 0; k < v.size(); ++k) o[k] = sigmoid_scalar(in[k]);
  return out;
}

Mat logit(const Mat& v, double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("logit: eps must lie in (0, 0.5), got " + std::to_string(eps));
  Mat out(v.rows(), v.cols());
  const double* in = v.data();
  double* o = out.data();
  const double lo = eps, hi = 1.0 - eps;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    double u = in[k];
    if (u < lo) u = lo;
    if (u > hi) u = hi;
    o[k] = std::log(u / (1.0 - u));
  }
  return out;
}

std::uint64_t matmul_count() { return g_matmul_count.load(std::memory_order_relaxed); }
void reset_matmul_count() { g_matmul_count.store(0, std::memory_order_relaxed); }

Mat cholesky_spd(const Mat& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("cholesky_spd: matrix not square");
  const int n = g.rows();
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::fabs(g(i, i)));
  const double pivot_floor = 1e-13 * std::max(max_diag, 1e-300);

  Mat l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = g(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > pivot_floor)) throw std::runtime_error("cholesky_spd: matrix is singular");
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = g(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

Mat cholesky_solve(const Mat& l, const Mat& b) {
  check_inner(l.rows(), b.rows(), "cholesky_solve");
  const int n = l.rows();
  Mat x = b;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < b.cols(); ++j) {
    double* xj = x.col(j);
    for (int i = 0; i < n; ++i) {  // L y = b
      double s = xj[i];
      for (int k = 0; k < i; ++k) s -= l(i, k) * xj[k];
      xj[i] = s / l(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {  // L^T x = y
      double s = xj[i];
      for (int k = i + 1; k < n; ++k) s -= l(k, i) * xj[k];
      xj[i] = s / l(i, i);
    }
  }
  return x;
}

namespace {

#ifndef NDEBUG
// relative residual of M X = R, used to assert the normal equations hold
double normal_eq_residual(const Mat& m, const Mat& x, const Mat& r) {
  Mat mx = matmul_serial(m, x);
  return frob_norm(mx - r) / std::max(frob_norm(r), 1e-300);
}
#endif

}  // namespace

namespace {

// A requested ridge is floored relative to the Gram's scale: an absolute
// delta far below max_diag * machine-eps would be erased by rounding during
// the factorization, leaving the system numerically indefinite. delta == 0
// stays exact (and reports singularity).
double effective_ridge(const Mat& gram, double delta) {
  if (delta == 0.0) return 0.0;
  double max_diag = 0.0;
  for (int i = 0; i < gram.rows(); ++i) max_diag = std::max(max_diag, gram(i, i));
  return std::max(delta, 1e-11 * max_diag);
}

}  // namespace

Mat ridge_lstsq_left(const Mat& y, const Mat& z, double delta) {
  if (y.cols() != z.cols())
    throw std::invalid_argument("ridge_lstsq_left: Y has " + std::to_string(y.cols()) +
                                " columns but Z has " + std::to_string(z.cols()));
  if (delta < 0.0) throw std::invalid_argument("ridge_lstsq_left: delta must be >= 0");

  Mat gram = a_bt(z, z);
  const double ridge = effective_ridge(gram, delta);
  for (int i = 0; i < gram.rows(); ++i) gram(i, i) += ridge;
  Mat rhs = a_bt(y, z);  // p x q

  Mat l;
  try {
    l = cholesky_spd(gram);
  } catch (const std::runtime_error&) {
    if (delta == 0.0)
      throw std::runtime_error(
          "ridge_lstsq_left: Z Z^T is singular; pass delta > 0 to regularize");
    throw;
  }
  Mat wt = cholesky_solve(l, transpose(rhs));
  Mat w = transpose(wt);
  assert(normal_eq_residual(gram, wt, transpose(rhs)) < 1e-8);
  return w;
}

Mat stacked_ridge_solve(std::span<const LsBlock> blocks, double delta) {
  if (blocks.empty()) throw std::invalid_argument("stacked_ridge_solve: no blocks");
  if (delta < 0.0) throw std::invalid_argument("stacked_ridge_solve: delta must be >= 0");

  int q = -1, ncols = -1;
  for (const LsBlock& blk : blocks) {
    if (blk.c == nullptr) throw std::invalid_argument("stacked_ridge_solve: null targets");
    if (!(blk.weight > 0.0))
      throw std::invalid_argument("stacked_ridge_solve: block weights must be > 0");
    const int bq = blk.a ? blk.a->cols() : blk.c->rows();
    if (blk.a && blk.a->rows() != blk.c->rows())
      throw std::invalid_argument("stacked_ridge_solve: operator/target row mismatch");
    if (q < 0) q = bq;
    else if (bq != q)
      throw std::invalid_argument("stacked_ridge_solve: blocks disagree on unknown size");
    if (ncols < 0) ncols = blk.c->cols();
    else if (blk.c->cols() != ncols)
      throw std::invalid_argument("stacked_ridge_solve: blocks disagree on column count");
  }

  Mat m(q, q);
  Mat rhs(q, ncols);
  for (const LsBlock& blk : blocks) {
    if (blk.a) {
      Mat g = at_b(*blk.a, *blk.a);
      Mat r = at_b(*blk.a, *blk.c);
      double* md = m.data();
      const double* gd = g.data();
      for (std::size_t k = 0; k < m.size(); ++k) md[k] += blk.weight * gd[k];
      double* rd = rhs.data();
      const double* bd = r.data();
      for (std::size_t k = 0; k < rhs.size(); ++k) rd[k] += blk.weight * bd[k];
    } else {
      for (int i = 0; i < q; ++i) m(i, i) += blk.weight;
      double* rd = rhs.data();
      const double* cd = blk.c->data();
      for (std::size_t k = 0; k < rhs.size(); ++k) rd[k] += blk.weight * cd[k];
    }
  }

  const double ridge = effective_ridge(m, delta);
  for (int i = 0; i < q; ++i) m(i, i) += ridge;

  Mat l;
  try {
    l = cholesky_spd(m);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("stacked_ridge_solve: singular system");
  }
  Mat zsol = cholesky_solve(l, rhs);
  assert(normal_eq_residual(m, zsol, rhs) < 1e-8);
  return zsol;
}

Mat stacked_ridge_solve(std::initializer_list<LsBlock> blocks, double delta) {
  return stacked_ridge_solve(std::span<const LsBlock>(blocks.begin(), blocks.size()), delta);
}

double max_eig_sym(const Mat& a) {
  const int n = a.cols();
  Mat g = at_b(a, a);
  Mat v(n, 1, 1.0 / std::sqrt(static_cast<double>(n)));
  double lambda = 0.0;
  for (int iter = 0; iter < 1000; ++iter) {
    Mat w = matmul(g, v);
    const double rayleigh = dot(v, w);
    const double wnorm = frob_norm(w);
    if (wnorm == 0.0) return 0.0;
    const double* wd = w.data();
    for (int i = 0; i < n; ++i) v(i, 0) = wd[i] / wnorm;
    if (iter > 0 && std::fabs(rayleigh - lambda) < 1e-8 * std::max(std::fabs(rayleigh), 1e-300)) {
      return rayleigh;
    }
    lambda = rayleigh;
  }
  return lambda;
}

}  // namespace lcae
