#ifndef LCAE_MAT_HPP_
#define LCAE_MAT_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcae {

// Dense real matrix, column-major. Samples are stored as columns throughout
// the library, so per-window operations touch contiguous memory.
class Mat {
 public:
  Mat() = default;

  Mat(int rows, int cols, double fill = 0.0) : rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0)
      throw std::invalid_argument("Mat: dimensions must be positive, got " +
                                  std::to_string(rows) + "x" + std::to_string(cols));
    data_.assign(static_cast<std::size_t>(rows) * cols, fill);
  }

  static Mat identity(int n) {
    Mat I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  std::size_t size() const { return data_.size(); }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * rows_ + i]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(j) * rows_ + i]; }

  double* col(int j) { return data_.data() + static_cast<std::size_t>(j) * rows_; }
  const double* col(int j) const { return data_.data() + static_cast<std::size_t>(j) * rows_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  bool is_finite() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Mat transpose(const Mat& a);

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(double s, const Mat& a);

double frob_norm_sq(const Mat& a);
double frob_norm(const Mat& a);
double dot(const Mat& a, const Mat& b);

// columns [j0, j0+count) as a copy
Mat col_range(const Mat& a, int j0, int count);
// write block into columns [j0, j0+block.cols())
void set_col_range(Mat& a, int j0, const Mat& block);
// stack a on top of b (column counts must match)
Mat vcat(const Mat& a, const Mat& b);
// append a constant-1 row (bias feature) below a
Mat with_bias_row(const Mat& a);

void check_same_shape(const Mat& a, const Mat& b, const char* what);

}  // namespace lcae

#endif  // LCAE_MAT_HPP_
