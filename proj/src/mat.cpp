#include "lcae/mat.hpp"

#include <cmath>
#include <cstring>

namespace lcae {

bool Mat::is_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

void check_same_shape(const Mat& a, const Mat& b, const char* what) {
  if (!a.same_shape(b))
    throw std::invalid_argument(std::string(what) + ": shape mismatch " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
}

Mat transpose(const Mat& a) {
  Mat t(a.cols(), a.rows());
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) t(j, i) = a(i, j);
  return t;
}

Mat operator+(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "operator+");
  Mat c = a;
  double* cd = c.data();
  const double* bd = b.data();
  for (std::size_t k = 0; k < c.size(); ++k) cd[k] += bd[k];
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "operator-");
  Mat c = a;
  double* cd = c.data();
  const double* bd = b.data();
  for (std::size_t k = 0; k < c.size(); ++k) cd[k] -= bd[k];
  return c;
}

Mat operator*(double s, const Mat& a) {
  Mat c = a;
  double* cd = c.data();
  for (std::size_t k = 0; k < c.size(); ++k) cd[k] *= s;
  return c;
}

double frob_norm_sq(const Mat& a) {
  double s = 0.0;
  const double* d = a.data();
  for (std::size_t k = 0; k < a.size(); ++k) s += d[k] * d[k];
  return s;
}

double frob_norm(const Mat& a) { return std::sqrt(frob_norm_sq(a)); }

double dot(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "dot");
  double s = 0.0;
  const double* ad = a.data();
  const double* bd = b.data();
  for (std::size_t k = 0; k < a.size(); ++k) s += ad[k] * bd[k];
  return s;
}

Mat col_range(const Mat& a, int j0, int count) {
  if (j0 < 0 || count <= 0 || j0 + count > a.cols())
    throw std::invalid_argument("col_range: [" + std::to_string(j0) + ", " +
                                std::to_string(j0 + count) + ") out of bounds for " +
                                std::to_string(a.cols()) + " columns");
  Mat out(a.rows(), count);
  std::memcpy(out.data(), a.col(j0), sizeof(double) * out.size());
  return out;
}

void set_col_range(Mat& a, int j0, const Mat& block) {
  if (block.rows() != a.rows() || j0 < 0 || j0 + block.cols() > a.cols())
    throw std::invalid_argument("set_col_range: block does not fit");
  std::memcpy(a.col(j0), block.data(), sizeof(double) * block.size());
}

Mat vcat(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vcat: column count mismatch");
  Mat c(a.rows() + b.rows(), a.cols());
  for (int j = 0; j < c.cols(); ++j) {
    std::memcpy(c.col(j), a.col(j), sizeof(double) * a.rows());
    std::memcpy(c.col(j) + a.rows(), b.col(j), sizeof(double) * b.rows());
  }
  return c;
}

Mat with_bias_row(const Mat& a) {
  Mat c(a.rows() + 1, a.cols());
  for (int j = 0; j < a.cols(); ++j) {
    std::memcpy(c.col(j), a.col(j), sizeof(double) * a.rows());
    c(a.rows(), j) = 1.0;
  }
  return c;
}

}  // namespace lcae
