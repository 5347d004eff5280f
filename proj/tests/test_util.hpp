#ifndef LCAE_TESTS_TEST_UTIL_HPP_
#define LCAE_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <vector>

#include "lcae/mat.hpp"
#include "lcae/rng.hpp"

namespace testutil {

inline lcae::Mat random_mat(lcae::SplitMix64& rng, int rows, int cols, double scale = 1.0) {
  lcae::Mat m(rows, cols);
  for (std::size_t k = 0; k < m.size(); ++k) m.data()[k] = scale * rng.next_symmetric();
  return m;
}

// entries uniform in (lo, hi), handy for sigmoid-range proxies
inline lcae::Mat random_mat_in(lcae::SplitMix64& rng, int rows, int cols, double lo, double hi) {
  lcae::Mat m(rows, cols);
  for (std::size_t k = 0; k < m.size(); ++k) m.data()[k] = lo + (hi - lo) * rng.next_unit();
  return m;
}

inline double max_abs_diff(const lcae::Mat& a, const lcae::Mat& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, std::fabs(a.data()[k] - b.data()[k]));
  return worst;
}

inline double rel_frob_diff(const lcae::Mat& a, const lcae::Mat& b) {
  return lcae::frob_norm(a - b) / std::max(lcae::frob_norm(b), 1e-300);
}

inline bool bitwise_equal(const lcae::Mat& a, const lcae::Mat& b) {
  if (!a.same_shape(b)) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a.data()[k] != b.data()[k]) return false;
  return true;
}

}  // namespace testutil

#endif  // LCAE_TESTS_TEST_UTIL_HPP_
