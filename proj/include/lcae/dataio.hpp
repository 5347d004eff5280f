#ifndef LCAE_DATAIO_HPP_
#define LCAE_DATAIO_HPP_

#include <string>
#include <vector>

#include "lcae/mat.hpp"
#include "lcae/sensing.hpp"

namespace lcae {

// Per-feature standardization statistics, fit on training data only.
struct NormStats {
  std::vector<double> mean;
  std::vector<double> scale;  // strictly positive, floored at 1e-8
};

// A batch of fixed-length signal windows. Columns of X are windows; label -1
// marks an unlabeled window.
struct WindowSet {
  Mat X;
  std::vector<int> labels;
  double sample_rate_hz = 0.0;
  std::vector<std::string> source_ids;
};

// Training triple: clean targets X, preconditioned inputs Xtilde (compress,
// adjoint, normalize), one-hot targets T for the trailing supervised block.
struct Dataset {
  Mat Xtilde;
  Mat X;
  Mat T;  // c x n_supervised; default-constructed (empty) when nothing is labeled
  int n_supervised = 0;
  std::vector<int> labels;
  std::vector<std::string> source_ids;
};

// CSV grammar, one window per row: record_id,label,s_1,...,s_n
// label -1 means unlabeled. Decimal point only, no locale dependence.
WindowSet load_windows_csv(const std::string& path);
void save_windows_csv(const WindowSet& ws, const std::string& path);

// Split a 1-D series into windows starting at 0, hop, 2*hop, ...; a trailing
// partial window is dropped. Returns window_len x count (may be 0 columns,
// signalled by an empty Mat).
Mat segment(const std::vector<double>& signal, int window_len, int hop);

// Rational-ratio polyphase resampling with a windowed-sinc low-pass
// (64 taps per phase, per-phase DC normalization). Identity when the rates
// are equal.
std::vector<double> resample(const std::vector<double>& signal, double from_hz, double to_hz);

NormStats fit_normalizer(const Mat& x);
Mat apply_normalizer(const NormStats& stats, const Mat& x);
Mat invert_normalizer(const NormStats& stats, const Mat& x);

// one-hot targets, column j has a single 1 at row labels[j]
Mat one_hot(const std::vector<int>& labels, int c);

// Reorder windows so unlabeled ones come first, then build the training
// triple: X = normalized clean windows, Xtilde = the same normalizer applied
// to phi^T phi X_clean, T = one-hot over the supervised block.
Dataset assemble(const WindowSet& ws, const SensingMatrix& phi, const NormStats& stats,
                 int num_classes);

}  // namespace lcae

#endif  // LCAE_DATAIO_HPP_
