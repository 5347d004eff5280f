#include "lcae/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace lcae {

namespace {

[[noreturn]] void parse_error(const std::string& path, std::size_t line_no, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

double parse_sample(const std::string& field, const std::string& path, std::size_t line_no) {
  const char* begin = field.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    parse_error(path, line_no, "non-numeric sample '" + field + "'");
  return v;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

WindowSet load_windows_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_windows_csv: cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::vector<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_fields(line);
    if (fields.size() < 3)
      parse_error(path, line_no, "expected record_id,label,samples... but found " +
                                     std::to_string(fields.size()) + " fields");
    if (n == 0) n = fields.size() - 2;
    if (fields.size() - 2 != n)
      parse_error(path, line_no, "ragged row: " + std::to_string(fields.size() - 2) +
                                     " samples, expected " + std::to_string(n));
    const std::string& label_field = fields[1];
    char* end = nullptr;
    long label = std::strtol(label_field.c_str(), &end, 10);
    if (end == label_field.c_str() || *end != '\0' || label < -1)
      parse_error(path, line_no, "bad label '" + label_field + "' (integer >= -1 required)");
    ids.push_back(fields[0]);
    labels.push_back(static_cast<int>(label));
    std::vector<double> samples(n);
    for (std::size_t k = 0; k < n; ++k) samples[k] = parse_sample(fields[k + 2], path, line_no);
    rows.push_back(std::move(samples));
  }
  if (rows.empty()) throw std::runtime_error("load_windows_csv: " + path + " has no windows");

  WindowSet ws;
  ws.X = Mat(static_cast<int>(n), static_cast<int>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) ws.X(static_cast<int>(i), static_cast<int>(j)) = rows[j][i];
  ws.labels = std::move(labels);
  ws.source_ids = std::move(ids);
  return ws;
}

void save_windows_csv(const WindowSet& ws, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_windows_csv: cannot open " + path);
  for (int j = 0; j < ws.X.cols(); ++j) {
    out << ws.source_ids[j] << ',' << ws.labels[j];
    for (int i = 0; i < ws.X.rows(); ++i) out << ',' << format_full(ws.X(i, j));
    out << '\n';
  }
  if (!out) throw std::runtime_error("save_windows_csv: write failed for " + path);
}

Mat segment(const std::vector<double>& signal, int window_len, int hop) {
  if (window_len < 1 || hop < 1)
    throw std::invalid_argument("segment: window_len and hop must be >= 1");
  if (signal.size() < static_cast<std::size_t>(window_len)) return Mat();
  const std::size_t count = (signal.size() - window_len) / hop + 1;
  Mat out(window_len, static_cast<int>(count));
  for (std::size_t j = 0; j < count; ++j)
    for (int i = 0; i < window_len; ++i)
      out(i, static_cast<int>(j)) = signal[j * hop + i];
  return out;
}

namespace {

// best rational approximation p/q of ratio with p, q <= cap, via the
// continued-fraction convergent walk
void rational_approx(double ratio, long cap, long* p_out, long* q_out) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = ratio;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(x);
    const long a = static_cast<long>(fl);
    const long p2 = a * p1 + p0;
    const long q2 = a * q1 + q0;
    if (p2 > cap || q2 > cap) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double frac = x - fl;
    if (frac < 1e-12) break;
    x = 1.0 / frac;
  }
  *p_out = p1;
  *q_out = q1;
}

void resample_ratio(double from_hz, double to_hz, long* up, long* down) {
  // exact when the rates are decimals with a few digits, capped otherwise
  for (int k = 0; k <= 6; ++k) {
    const double s = std::pow(10.0, k);
    const double fs = from_hz * s, ts = to_hz * s;
    if (std::fabs(fs - std::round(fs)) < 1e-9 && std::fabs(ts - std::round(ts)) < 1e-9) {
      long m = static_cast<long>(std::llround(fs));
      long l = static_cast<long>(std::llround(ts));
      const long g = std::gcd(l, m);
      l /= g;
      m /= g;
      if (l <= 8192 && m <= 8192) {
        *up = l;
        *down = m;
        return;
      }
      break;
    }
  }
  rational_approx(to_hz / from_hz, 8192, up, down);
}

}  // namespace

std::vector<double> resample(const std::vector<double>& signal, double from_hz, double to_hz) {
  if (!(from_hz > 0.0) || !(to_hz > 0.0))
    throw std::invalid_argument("resample: rates must be positive");
  if (from_hz == to_hz) return signal;
  if (signal.empty()) return {};

  long up = 0, down = 0;
  resample_ratio(from_hz, to_hz, &up, &down);

  constexpr int kTapsPerPhase = 64;
  const long taps = kTapsPerPhase * up;
  const double cutoff = 0.5 / static_cast<double>(std::max(up, down));
  const double center = static_cast<double>(taps - 1) / 2.0;

  // windowed-sinc prototype at the upsampled rate
  std::vector<double> h(taps);
  for (long t = 0; t < taps; ++t) {
    const double x = static_cast<double>(t) - center;
    const double arg = 2.0 * cutoff * x;
    const double sinc = (arg == 0.0) ? 1.0 : std::sin(M_PI * arg) / (M_PI * arg);
    const double window =
        0.54 - 0.46 * std::cos(2.0 * M_PI * static_cast<double>(t) / static_cast<double>(taps - 1));
    h[t] = 2.0 * cutoff * sinc * window;
  }
  // unit DC gain per phase, so constants pass through exactly
  for (long p = 0; p < up; ++p) {
    double s = 0.0;
    for (long t = p; t < taps; t += up) s += h[t];
    if (s != 0.0)
      for (long t = p; t < taps; t += up) h[t] /= s;
  }

  const long in_len = static_cast<long>(signal.size());
  const long out_len = (in_len * up) / down;
  // integer alignment point; off by half an upsampled sample from the exact
  // filter center, i.e. a delay of 1/(2*up) input samples
  const long c = static_cast<long>(center);
  std::vector<double> out(static_cast<std::size_t>(out_len));
#pragma omp parallel for schedule(static)
  for (long j = 0; j < out_len; ++j) {
    const long u = j * down + c;
    const long phase = u % up;
    const long base = u / up;
    double acc = 0.0;
    for (int s = 0; s < kTapsPerPhase; ++s) {
      const long i = base - s;
      if (i < 0 || i >= in_len) continue;
      acc += h[phase + static_cast<long>(s) * up] * signal[static_cast<std::size_t>(i)];
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

NormStats fit_normalizer(const Mat& x) {
  if (x.cols() < 1) throw std::invalid_argument("fit_normalizer: no columns");
  NormStats stats;
  stats.mean.resize(x.rows());
  stats.scale.resize(x.rows());
  const double inv_n = 1.0 / static_cast<double>(x.cols());
  for (int i = 0; i < x.rows(); ++i) {
    double m = 0.0;
    for (int j = 0; j < x.cols(); ++j) m += x(i, j);
    m *= inv_n;
    double var = 0.0;
    for (int j = 0; j < x.cols(); ++j) {
      const double d = x(i, j) - m;
      var += d * d;
    }
    stats.mean[i] = m;
    stats.scale[i] = std::max(std::sqrt(var * inv_n), 1e-8);
  }
  return stats;
}

Mat apply_normalizer(const NormStats& stats, const Mat& x) {
  if (static_cast<std::size_t>(x.rows()) != stats.mean.size())
    throw std::invalid_argument("apply_normalizer: feature count mismatch");
  Mat out(x.rows(), x.cols());
  for (int j = 0; j < x.cols(); ++j)
    for (int i = 0; i < x.rows(); ++i) out(i, j) = (x(i, j) - stats.mean[i]) / stats.scale[i];
  return out;
}

Mat invert_normalizer(const NormStats& stats, const Mat& x) {
  if (static_cast<std::size_t>(x.rows()) != stats.mean.size())
    throw std::invalid_argument("invert_normalizer: feature count mismatch");
  Mat out(x.rows(), x.cols());
  for (int j = 0; j < x.cols(); ++j)
    for (int i = 0; i < x.rows(); ++i) out(i, j) = x(i, j) * stats.scale[i] + stats.mean[i];
  return out;
}

Mat one_hot(const std::vector<int>& labels, int c) {
  if (c < 1) throw std::invalid_argument("one_hot: class count must be >= 1");
  if (labels.empty()) throw std::invalid_argument("one_hot: no labels");
  Mat t(c, static_cast<int>(labels.size()));
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] < 0 || labels[j] >= c)
      throw std::invalid_argument("one_hot: label " + std::to_string(labels[j]) +
                                  " out of range [0, " + std::to_string(c) + ")");
    t(labels[j], static_cast<int>(j)) = 1.0;
  }
  return t;
}

Dataset assemble(const WindowSet& ws, const SensingMatrix& phi, const NormStats& stats,
                 int num_classes) {
  if (phi.n() != ws.X.rows())
    throw std::invalid_argument("assemble: sensing matrix expects windows of length " +
                                std::to_string(phi.n()) + ", got " + std::to_string(ws.X.rows()));
  const int total = ws.X.cols();
  std::vector<int> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::stable_partition(order.begin(), order.end(), [&](int j) { return ws.labels[j] < 0; });

  Mat clean(ws.X.rows(), total);
  Dataset ds;
  ds.labels.resize(total);
  ds.source_ids.resize(total);
  int n_sup = 0;
  for (int j = 0; j < total; ++j) {
    const int src = order[j];
    for (int i = 0; i < ws.X.rows(); ++i) clean(i, j) = ws.X(i, src);
    ds.labels[j] = ws.labels[src];
    ds.source_ids[j] = ws.source_ids[src];
    if (ws.labels[src] >= 0) {
      if (ws.labels[src] >= num_classes)
        throw std::invalid_argument("assemble: window '" + ws.source_ids[src] + "' has label " +
                                    std::to_string(ws.labels[src]) + " but only " +
                                    std::to_string(num_classes) + " classes are configured");
      ++n_sup;
    }
  }

  ds.X = apply_normalizer(stats, clean);
  ds.Xtilde = apply_normalizer(stats, poor_mans_inverse(phi, compress(phi, clean)));
  ds.n_supervised = n_sup;
  if (n_sup > 0) {
    std::vector<int> sup_labels(ds.labels.end() - n_sup, ds.labels.end());
    ds.T = one_hot(sup_labels, num_classes);
  }
  return ds;
}

}  // namespace lcae
