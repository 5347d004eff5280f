#ifndef LCAE_EVAL_HPP_
#define LCAE_EVAL_HPP_

#include <functional>
#include <vector>

#include "lcae/mat.hpp"

namespace lcae {

struct NmseResult {
  std::vector<double> per_column;  // ||truth_j - recon_j|| / ||truth_j||
  double mean = 0.0;
  double stddev = 0.0;
};

// Ratio of l2 norms per column (not squared), plus mean and deviation.
// A zero-norm truth column is an error.
NmseResult nmse(const Mat& truth, const Mat& recon);

struct Confusion {
  std::vector<std::vector<long long>> counts;  // [true][predicted]
  int classes() const { return static_cast<int>(counts.size()); }
  long long total() const;
};

Confusion make_confusion(const std::vector<int>& truth, const std::vector<int>& predicted, int c);

struct ClassMetrics {
  std::vector<double> sensitivity;  // per class, TP/(TP+FN); 0 when no positives
  std::vector<double> specificity;  // per class, TN/(TN+FP); 0 when no negatives
  double accuracy = 0.0;
};

// One-vs-rest metrics; zero-denominator cells report 0 with a warning on
// standard error.
ClassMetrics class_metrics(const Confusion& conf);

struct TimingResult {
  double ms_a = 0.0;
  double ms_b = 0.0;
  double ratio = 0.0;  // ms_b / ms_a: how many times slower b is than a
};

// Median wall-clock of each callable over reps >= 5 runs, pinned to one
// thread for stability. Both callables must consume the same batch; an
// empty batch is an error.
TimingResult timing_compare(const std::function<void(const Mat&)>& a,
                            const std::function<void(const Mat&)>& b, const Mat& batch,
                            int reps = 5);

}  // namespace lcae

#endif  // LCAE_EVAL_HPP_
