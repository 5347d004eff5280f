#include "lcae/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>

#include <omp.h>

namespace lcae {

NmseResult nmse(const Mat& truth, const Mat& recon) {
  check_same_shape(truth, recon, "nmse");
  NmseResult res;
  res.per_column.resize(truth.cols());
  for (int j = 0; j < truth.cols(); ++j) {
    double num = 0.0, den = 0.0;
    const double* tj = truth.col(j);
    const double* rj = recon.col(j);
    for (int i = 0; i < truth.rows(); ++i) {
      const double d = tj[i] - rj[i];
      num += d * d;
      den += tj[i] * tj[i];
    }
    if (den == 0.0)
      throw std::invalid_argument("nmse: truth column " + std::to_string(j) + " has zero norm");
    res.per_column[j] = std::sqrt(num) / std::sqrt(den);
  }
  const double n = static_cast<double>(res.per_column.size());
  for (double v : res.per_column) res.mean += v;
  res.mean /= n;
  double var = 0.0;
  for (double v : res.per_column) var += (v - res.mean) * (v - res.mean);
  res.stddev = std::sqrt(var / n);
  return res;
}

long long Confusion::total() const {
  long long t = 0;
  for (const auto& row : counts)
    for (long long v : row) t += v;
  return t;
}

Confusion make_confusion(const std::vector<int>& truth, const std::vector<int>& predicted,
                         int c) {
  if (truth.size() != predicted.size())
    throw std::invalid_argument("make_confusion: label count mismatch");
  if (c < 1) throw std::invalid_argument("make_confusion: class count must be >= 1");
  Confusion conf;
  conf.counts.assign(c, std::vector<long long>(c, 0));
  for (std::size_t k = 0; k < truth.size(); ++k) {
    if (truth[k] < 0 || truth[k] >= c || predicted[k] < 0 || predicted[k] >= c)
      throw std::invalid_argument("make_confusion: label out of range at index " +
                                  std::to_string(k));
    ++conf.counts[truth[k]][predicted[k]];
  }
  return conf;
}

ClassMetrics class_metrics(const Confusion& conf) {
  const int c = conf.classes();
  const long long total = conf.total();
  if (c < 1 || total < 1) throw std::invalid_argument("class_metrics: empty confusion matrix");

  ClassMetrics metrics;
  metrics.sensitivity.resize(c);
  metrics.specificity.resize(c);
  long long diag = 0;
  for (int k = 0; k < c; ++k) {
    long long tp = conf.counts[k][k];
    long long fn = 0, fp = 0;
    for (int j = 0; j < c; ++j) {
      if (j == k) continue;
      fn += conf.counts[k][j];
      fp += conf.counts[j][k];
    }
    const long long tn = total - tp - fn - fp;
    diag += tp;
    if (tp + fn == 0) {
      std::cerr << "class_metrics: class " << k << " has no positives, sensitivity set to 0\n";
      metrics.sensitivity[k] = 0.0;
    } else {
      metrics.sensitivity[k] = static_cast<double>(tp) / static_cast<double>(tp + fn);
    }
    if (tn + fp == 0) {
      std::cerr << "class_metrics: class " << k << " has no negatives, specificity set to 0\n";
      metrics.specificity[k] = 0.0;
    } else {
      metrics.specificity[k] = static_cast<double>(tn) / static_cast<double>(tn + fp);
    }
  }
  metrics.accuracy = static_cast<double>(diag) / static_cast<double>(total);
  return metrics;
}

namespace {

double median_ms(const std::function<void(const Mat&)>& fn, const Mat& batch, int reps) {
  std::vector<double> times(reps);
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn(batch);
    const auto end = std::chrono::steady_clock::now();
    times[r] = std::chrono::duration<double, std::milli>(end - start).count();
  }
  std::sort(times.begin(), times.end());
  return times[reps / 2];
}

}  // namespace

TimingResult timing_compare(const std::function<void(const Mat&)>& a,
                            const std::function<void(const Mat&)>& b, const Mat& batch,
                            int reps) {
  if (batch.empty()) throw std::invalid_argument("timing_compare: empty batch");
  if (reps < 5) reps = 5;

  const int saved_threads = omp_get_max_threads();
  omp_set_num_threads(1);
  TimingResult result;
  result.ms_a = median_ms(a, batch, reps);
  result.ms_b = median_ms(b, batch, reps);
  omp_set_num_threads(saved_threads);
  result.ratio = result.ms_b / std::max(result.ms_a, 1e-9);
  return result;
}

}  // namespace lcae
