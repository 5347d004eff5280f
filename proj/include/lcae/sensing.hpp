#ifndef LCAE_SENSING_HPP_
#define LCAE_SENSING_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lcae/mat.hpp"

namespace lcae {

// Sparse binary compression operator: m x n with exactly d ones per column,
// rows chosen per column without replacement so every input sample is
// sensed. Immutable after construction.
class SensingMatrix {
 public:
  // Deterministic in (m, n, d, seed); draws from splitmix64 and resamples
  // (up to 100 attempts) until no row is all-zero, whenever d*n >= m makes
  // full row coverage possible.
  static SensingMatrix generate(int m, int n, int d, std::uint64_t seed);

  // Build from an explicit structure (used by load and by tests); validates
  // the per-column row indices.
  static SensingMatrix from_structure(int m, int n, int d, std::uint64_t seed,
                                      std::vector<std::uint32_t> row_idx);

  int m() const { return m_; }
  int n() const { return n_; }
  int ones_per_col() const { return d_; }
  std::uint64_t seed() const { return seed_; }

  // the d row indices carrying a 1 in column j, ascending
  std::span<const std::uint32_t> col_rows(int j) const {
    return {row_idx_.data() + static_cast<std::size_t>(j) * d_, static_cast<std::size_t>(d_)};
  }

  Mat to_dense() const;

 private:
  SensingMatrix() = default;
  int m_ = 0, n_ = 0, d_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::uint32_t> row_idx_;  // d entries per column, column-by-column
};

// phi * Z  (Z is n x N, result m x N)
Mat compress(const SensingMatrix& phi, const Mat& z);

// phi^T * B (B is m x N, result n x N); applied to B = phi*X this is the
// cheap linear estimate fed to the autoencoder
Mat poor_mans_inverse(const SensingMatrix& phi, const Mat& b);

// Text format: header line "m n d seed", then n lines of d row indices.
// Round-trips bit-exactly.
void save_sensing(const SensingMatrix& phi, const std::string& path);
SensingMatrix load_sensing(const std::string& path);

}  // namespace lcae

#endif  // LCAE_SENSING_HPP_
