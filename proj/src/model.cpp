#include "lcae/model.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "lcae/kernels.hpp"

namespace lcae {

namespace {

void check_rows(const Mat& x, int expected, const char* what) {
  if (x.rows() != expected)
    throw std::invalid_argument(std::string(what) + ": input has " + std::to_string(x.rows()) +
                                " rows, expected " + std::to_string(expected));
}

}  // namespace

Mat encode(const LcaeModel& model, const Mat& xin) {
  check_rows(xin, model.sizes.n, "encode");
  Mat hidden = sigmoid(matmul(model.W1, with_bias_row(xin)));
  return sigmoid(matmul(model.W2, hidden));
}

Mat decode(const LcaeModel& model, const Mat& code) {
  check_rows(code, model.sizes.h2, "decode");
  return matmul(model.W1p, sigmoid(matmul(model.W2p, code)));
}

Mat reconstruct(const LcaeModel& model, const SensingMatrix& phi, const Mat& b) {
  if (phi.n() != model.sizes.n)
    throw std::invalid_argument("reconstruct: sensing matrix is for windows of length " +
                                std::to_string(phi.n()) + ", model expects " +
                                std::to_string(model.sizes.n));
  check_rows(b, phi.m(), "reconstruct");
  Mat estimate = apply_normalizer(model.norm, poor_mans_inverse(phi, b));
  return invert_normalizer(model.norm, decode(model, encode(model, estimate)));
}

ClassScores predict_scores(const LcaeModel& model, const Mat& xin_normalized) {
  return ClassScores{matmul(model.D, encode(model, xin_normalized))};
}

std::vector<int> classify_windows(const ClassScores& scores) {
  const Mat& s = scores.scores;
  if (s.empty()) throw std::invalid_argument("classify_windows: empty scores");
  std::vector<int> out(s.cols());
  for (int j = 0; j < s.cols(); ++j) {
    int best = 0;
    for (int i = 1; i < s.rows(); ++i)
      if (s(i, j) > s(best, j)) best = i;
    out[j] = best;
  }
  return out;
}

int classify_sequence(const ClassScores& scores) {
  const Mat& s = scores.scores;
  if (s.empty()) throw std::invalid_argument("classify_sequence: empty scores");
  int best = 0;
  double best_mean = -1.0;
  for (int i = 0; i < s.rows(); ++i) {
    double m = 0.0;
    for (int j = 0; j < s.cols(); ++j) m += s(i, j);
    m /= static_cast<double>(s.cols());
    if (i == 0 || m > best_mean) {
      best = i;
      best_mean = m;
    }
  }
  return best;
}

namespace {

constexpr char kMagic[4] = {'L', 'C', 'A', 'E'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

void write_f64(std::ostream& out, double v) {
  const std::uint64_t u = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 8);
}

double read_f64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(u);
}

void write_mat(std::ostream& out, const Mat& m) {
  for (std::size_t k = 0; k < m.size(); ++k) write_f64(out, m.data()[k]);
}

Mat read_mat(std::istream& in, int rows, int cols) {
  Mat m(rows, cols);
  for (std::size_t k = 0; k < m.size(); ++k) m.data()[k] = read_f64(in);
  return m;
}

}  // namespace

void save_model(const LcaeModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_model: cannot open " + path);
  out.write(kMagic, 4);
  write_u32(out, kVersion);
  write_u32(out, static_cast<std::uint32_t>(model.sizes.n));
  write_u32(out, static_cast<std::uint32_t>(model.sizes.h1));
  write_u32(out, static_cast<std::uint32_t>(model.sizes.h2));
  write_u32(out, static_cast<std::uint32_t>(model.sizes.c));
  for (double v : model.norm.mean) write_f64(out, v);
  for (double v : model.norm.scale) write_f64(out, v);
  write_mat(out, model.W1);
  write_mat(out, model.W2);
  write_mat(out, model.W2p);
  write_mat(out, model.W1p);
  write_mat(out, model.D);
  if (!out) throw std::runtime_error("save_model: write failed for " + path);
}

LcaeModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_model: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("load_model: " + path + " is not a model file");
  const std::uint32_t version = read_u32(in);
  if (version != kVersion)
    throw std::runtime_error("load_model: unsupported version " + std::to_string(version));
  LcaeModel model;
  model.sizes.n = static_cast<int>(read_u32(in));
  model.sizes.h1 = static_cast<int>(read_u32(in));
  model.sizes.h2 = static_cast<int>(read_u32(in));
  model.sizes.c = static_cast<int>(read_u32(in));
  model.norm.mean.resize(model.sizes.n);
  model.norm.scale.resize(model.sizes.n);
  for (double& v : model.norm.mean) v = read_f64(in);
  for (double& v : model.norm.scale) v = read_f64(in);
  model.W1 = read_mat(in, model.sizes.h1, model.sizes.n + 1);
  model.W2 = read_mat(in, model.sizes.h2, model.sizes.h1);
  model.W2p = read_mat(in, model.sizes.h1, model.sizes.h2);
  model.W1p = read_mat(in, model.sizes.n, model.sizes.h1);
  model.D = read_mat(in, model.sizes.c, model.sizes.h2);
  if (!in) throw std::runtime_error("load_model: " + path + " is truncated");
  return model;
}

}  // namespace lcae
