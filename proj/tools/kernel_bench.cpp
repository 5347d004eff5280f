// Benchmarks the OpenMP kernels against their serial reference
// implementations and verifies that the results agree bitwise. Prints one
// CSV row per kernel and size to standard output.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include <omp.h>

#include "lcae/kernels.hpp"
#include "lcae/rng.hpp"
#include "lcae/sensing.hpp"

using lcae::Mat;

namespace {

double time_ms(const std::function<Mat()>& fn, int reps, Mat* result) {
  std::vector<double> times(reps);
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    Mat out = fn();
    const auto end = std::chrono::steady_clock::now();
    times[r] = std::chrono::duration<double, std::milli>(end - start).count();
    if (r == 0) *result = std::move(out);
  }
  std::sort(times.begin(), times.end());
  return times[reps / 2];
}

bool bitwise_equal(const Mat& a, const Mat& b) {
  return a.same_shape(b) &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

Mat random_mat(lcae::SplitMix64& rng, int rows, int cols) {
  Mat m(rows, cols);
  for (std::size_t k = 0; k < m.size(); ++k) m.data()[k] = rng.next_symmetric();
  return m;
}

void bench_case(const char* name, const std::function<Mat()>& serial,
                const std::function<Mat()>& parallel, const std::string& dims, int reps) {
  Mat out_serial, out_parallel;
  const double ms_serial = time_ms(serial, reps, &out_serial);
  const double ms_parallel = time_ms(parallel, reps, &out_parallel);
  const bool match = bitwise_equal(out_serial, out_parallel);
  std::printf("%s,%s,%d,%.3f,%.3f,%.2f,%s\n", name, dims.c_str(), omp_get_max_threads(),
              ms_serial, ms_parallel, ms_serial / ms_parallel, match ? "bitwise" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int threads = omp_get_max_threads();
  int reps = 5;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) threads = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--reps") && i + 1 < argc) reps = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: %s [--threads N] [--reps R]\n", argv[0]);
      return 1;
    }
  }
  omp_set_num_threads(threads);

  std::printf("kernel,dims,threads,serial_ms,parallel_ms,speedup,check\n");
  lcae::SplitMix64 rng(99);

  struct Size { int m, k, n; };
  for (const Size s : {Size{64, 64, 512}, Size{250, 125, 4096}, Size{512, 512, 2048}}) {
    Mat a = random_mat(rng, s.m, s.k);
    Mat b = random_mat(rng, s.k, s.n);
    const std::string dims = std::to_string(s.m) + "x" + std::to_string(s.k) + "x" +
                             std::to_string(s.n);
    bench_case("matmul", [&] { return lcae::matmul_serial(a, b); },
               [&] { return lcae::matmul(a, b); }, dims, reps);

    Mat c = random_mat(rng, s.m, s.n);
    bench_case("at_b", [&] { return lcae::at_b_serial(a, c); },
               [&] { return lcae::at_b(a, c); }, dims, reps);

    Mat d = random_mat(rng, s.n, s.k);
    bench_case("a_bt", [&] { return lcae::a_bt_serial(a, d); },
               [&] { return lcae::a_bt(a, d); }, dims, reps);
  }

  Mat wide = random_mat(rng, 1024, 4096);
  bench_case("sigmoid", [&] { return lcae::sigmoid_serial(wide); },
             [&] { return lcae::sigmoid(wide); }, "1024x4096", reps);

  return 0;
}
