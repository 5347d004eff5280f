#ifndef LCAE_MODEL_HPP_
#define LCAE_MODEL_HPP_

#include <string>
#include <vector>

#include "lcae/dataio.hpp"
#include "lcae/mat.hpp"
#include "lcae/sensing.hpp"

namespace lcae {

struct LayerSizes {
  int n = 0;   // window length
  int h1 = 0;  // outer hidden layer
  int h2 = 0;  // inner hidden layer (code)
  int c = 0;   // classes
};

// Two-hidden-layer autoencoder with a linear label map from the code layer.
// The input carries an appended constant-1 feature (bias), so W1 has n+1
// columns; hidden layers are bias-free and the output layer is linear.
struct LcaeModel {
  Mat W1;   // h1 x (n+1)  encoder, input -> hidden
  Mat W2;   // h2 x h1     encoder, hidden -> code
  Mat W2p;  // h1 x h2     decoder, code -> hidden
  Mat W1p;  // n x h1      decoder, hidden -> output (linear)
  Mat D;    // c x h2      label map from the code layer
  NormStats norm;
  LayerSizes sizes;
};

struct ClassScores {
  Mat scores;  // c x N, columns are windows
};

// code = sigmoid(W2 sigmoid(W1 [x;1])), entries in (0,1)
Mat encode(const LcaeModel& model, const Mat& xin);

// xhat = W1p sigmoid(W2p code); unconstrained real output
Mat decode(const LcaeModel& model, const Mat& code);

// Full test-time path from compressed columns B: adjoint estimate,
// normalize, encode/decode, denormalize. Pure feed-forward: one sensing
// adjoint plus four dense products, no iteration.
Mat reconstruct(const LcaeModel& model, const SensingMatrix& phi, const Mat& b);

// scores = D * encode(xin); xin must already be normalized
ClassScores predict_scores(const LcaeModel& model, const Mat& xin_normalized);

// per-window argmax of each score column, lowest index wins ties
std::vector<int> classify_windows(const ClassScores& scores);

// one class for the whole batch: argmax of per-row means, lowest index wins
int classify_sequence(const ClassScores& scores);

// Versioned binary container, little-endian float64 payload:
// magic "LCAE", u32 version, u32 n/h1/h2/c, mean[n], scale[n],
// then W1, W2, W2p, W1p, D column-major. Round-trips bit-exactly.
void save_model(const LcaeModel& model, const std::string& path);
LcaeModel load_model(const std::string& path);

}  // namespace lcae

#endif  // LCAE_MODEL_HPP_
