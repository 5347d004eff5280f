#include "lcae/sensing.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lcae/rng.hpp"

namespace lcae {

namespace {

void check_params(int m, int n, int d) {
  if (m <= 0 || n <= 0 || d <= 0)
    throw std::invalid_argument("sensing: m, n, d must be positive");
  if (d > m)
    throw std::invalid_argument("sensing: d = " + std::to_string(d) +
                                " ones per column cannot exceed m = " + std::to_string(m));
  if (m > n)
    throw std::invalid_argument("sensing: m = " + std::to_string(m) +
                                " must not exceed n = " + std::to_string(n));
}

}  // namespace

SensingMatrix SensingMatrix::generate(int m, int n, int d, std::uint64_t seed) {
  check_params(m, n, d);
  SplitMix64 rng(seed);
  const bool can_cover_rows = static_cast<long long>(d) * n >= m;

  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(n) * d);
    std::vector<char> row_hit(m, 0);
    std::vector<std::uint32_t> pick;
    for (int j = 0; j < n; ++j) {
      pick.clear();
      while (static_cast<int>(pick.size()) < d) {
        auto r = static_cast<std::uint32_t>(rng.next_below(static_cast<std::uint64_t>(m)));
        if (std::find(pick.begin(), pick.end(), r) == pick.end()) pick.push_back(r);
      }
      std::sort(pick.begin(), pick.end());
      for (int k = 0; k < d; ++k) {
        idx[static_cast<std::size_t>(j) * d + k] = pick[k];
        row_hit[pick[k]] = 1;
      }
    }
    const bool all_rows_hit =
        std::all_of(row_hit.begin(), row_hit.end(), [](char h) { return h != 0; });
    if (all_rows_hit || !can_cover_rows) {
      SensingMatrix phi;
      phi.m_ = m;
      phi.n_ = n;
      phi.d_ = d;
      phi.seed_ = seed;
      phi.row_idx_ = std::move(idx);
      return phi;
    }
  }
  throw std::runtime_error("sensing: failed to cover every row after 100 attempts");
}

SensingMatrix SensingMatrix::from_structure(int m, int n, int d, std::uint64_t seed,
                                            std::vector<std::uint32_t> row_idx) {
  check_params(m, n, d);
  if (row_idx.size() != static_cast<std::size_t>(n) * d)
    throw std::invalid_argument("sensing: structure has wrong length");
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < d; ++k) {
      const std::uint32_t r = row_idx[static_cast<std::size_t>(j) * d + k];
      if (r >= static_cast<std::uint32_t>(m))
        throw std::invalid_argument("sensing: row index out of range in column " +
                                    std::to_string(j));
      if (k > 0 && row_idx[static_cast<std::size_t>(j) * d + k - 1] >= r)
        throw std::invalid_argument("sensing: column " + std::to_string(j) +
                                    " indices must be strictly ascending");
    }
  }
  SensingMatrix phi;
  phi.m_ = m;
  phi.n_ = n;
  phi.d_ = d;
  phi.seed_ = seed;
  phi.row_idx_ = std::move(row_idx);
  return phi;
}

Mat SensingMatrix::to_dense() const {
  Mat dense(m_, n_);
  for (int j = 0; j < n_; ++j)
    for (std::uint32_t r : col_rows(j)) dense(static_cast<int>(r), j) = 1.0;
  return dense;
}

Mat compress(const SensingMatrix& phi, const Mat& z) {
  if (z.rows() != phi.n())
    throw std::invalid_argument("compress: input has " + std::to_string(z.rows()) +
                                " rows, sensing matrix expects " + std::to_string(phi.n()));
  Mat out(phi.m(), z.cols());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < z.cols(); ++j) {
    const double* zj = z.col(j);
    double* oj = out.col(j);
    for (int c = 0; c < phi.n(); ++c)
      for (std::uint32_t r : phi.col_rows(c)) oj[r] += zj[c];
  }
  return out;
}

Mat poor_mans_inverse(const SensingMatrix& phi, const Mat& b) {
  if (b.rows() != phi.m())
    throw std::invalid_argument("poor_mans_inverse: input has " + std::to_string(b.rows()) +
                                " rows, sensing matrix expects " + std::to_string(phi.m()));
  Mat out(phi.n(), b.cols());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < b.cols(); ++j) {
    const double* bj = b.col(j);
    double* oj = out.col(j);
    for (int c = 0; c < phi.n(); ++c) {
      double s = 0.0;
      for (std::uint32_t r : phi.col_rows(c)) s += bj[r];
      oj[c] = s;
    }
  }
  return out;
}

void save_sensing(const SensingMatrix& phi, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_sensing: cannot open " + path);
  out << phi.m() << ' ' << phi.n() << ' ' << phi.ones_per_col() << ' ' << phi.seed() << '\n';
  for (int j = 0; j < phi.n(); ++j) {
    auto rows = phi.col_rows(j);
    for (std::size_t k = 0; k < rows.size(); ++k) out << rows[k] << (k + 1 < rows.size() ? ' ' : '\n');
  }
  if (!out) throw std::runtime_error("save_sensing: write failed for " + path);
}

SensingMatrix load_sensing(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_sensing: cannot open " + path);
  int m, n, d;
  std::uint64_t seed;
  if (!(in >> m >> n >> d >> seed))
    throw std::runtime_error("load_sensing: malformed header in " + path);
  std::vector<std::uint32_t> idx(static_cast<std::size_t>(n) * d);
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (!(in >> idx[k]))
      throw std::runtime_error("load_sensing: truncated structure in " + path);
  return SensingMatrix::from_structure(m, n, d, seed, std::move(idx));
}

}  // namespace lcae
