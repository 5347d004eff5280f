#ifndef LCAE_TRAINER_HPP_
#define LCAE_TRAINER_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "lcae/mat.hpp"
#include "lcae/model.hpp"

namespace lcae {

// Relaxation-variable update applied after each sweep.
//   reflect:    b <- (proxy - composition) - b   (involution on a fixed residual)
//   accumulate: b <- b + (composition - proxy)   (running sum of violations)
enum class BregmanRule { reflect, accumulate };

// Margin used whenever a proxy is treated as a sigmoid output: the recast
// solves invert the activation with this clamp, and the training loop pulls
// each solved proxy back into [margin, 1 - margin]. Bounds the recast
// targets to logit(1 - margin) ~ +/-4.6, which keeps the alternating
// iteration stable.
inline constexpr double kActivationMargin = 0.25;

struct TrainConfig {
  double lambda = 1.0;  // label-consistency weight; 0 trains reconstruction only
  double mu1 = 0.01;    // decoder-hidden coupling
  double mu2 = 0.01;    // code coupling
  double mu = 0.01;     // encoder-hidden coupling
  double ridge = 1e-8;  // added to every closed-form solve
  int max_sweeps = 100;
  double tol = 1e-6;    // relative objective change between sweeps
  std::uint64_t seed = 0;
  BregmanRule bregman_rule = BregmanRule::reflect;
  LayerSizes sizes;
};

// Block-coordinate state. Proxies track the layer activations; supervised
// columns are always the trailing n_supervised ones.
struct TrainState {
  Mat hidden1;  // h1 x N, proxy for sigmoid(W1 [Xtilde; 1])
  Mat code;     // h2 x N, proxy for sigmoid(W2 hidden1)
  Mat hidden2;  // h1 x N, proxy for sigmoid(W2p code)
  Mat b_hidden1, b_code, b_hidden2;  // relaxation variables, matching shapes
  std::vector<double> objective_history;  // one entry per completed sweep
  int n_supervised = 0;
};

// Inputs the sub-problem solves read. The encoder chain sees the
// preconditioned input (bias row appended); the decoder output is fit
// against the clean windows.
struct TrainData {
  Mat xtilde_aug;  // (n+1) x N
  Mat xclean;      // n x N
  Mat targets;     // c x n_supervised, empty when nothing is labeled
  int n_supervised = 0;

  static TrainData make(const Mat& xtilde, const Mat& xclean, const Mat& targets,
                        int n_supervised);
};

enum class WeightBlock { W1p, W2p, W2, W1, D };

struct ObjectiveTerms {
  double recon = 0.0;    // ||X - W1p hidden2||^2
  double label = 0.0;    // lambda ||T - D code_S||^2
  double pen_dec = 0.0;  // mu1 ||hidden2 - sig(W2p code) - b_hidden2||^2
  double pen_code = 0.0; // mu2 ||code - sig(W2 hidden1) - b_code||^2
  double pen_enc = 0.0;  // mu  ||hidden1 - sig(W1 xaug) - b_hidden1||^2
  double total() const { return recon + label + pen_dec + pen_code + pen_enc; }
};

struct SweepStats {
  int sweep = 0;
  ObjectiveTerms terms;
  double ms = 0.0;
};

// Seeded weight init (uniform, scale 1/sqrt(fan_in)) and a forward-consistent
// start for the proxies; relaxation variables start at zero.
std::pair<LcaeModel, TrainState> init_state(const TrainConfig& cfg, const Mat& xtilde,
                                            int n_supervised);

// Closed-form update of one weight matrix against the current proxies.
Mat solve_weight_block(WeightBlock which, const TrainState& state, const LcaeModel& model,
                       const TrainData& data, const TrainConfig& cfg);

// Proxy updates, each an exact stacked least-squares solve.
Mat solve_hidden2(const TrainState& state, const LcaeModel& model, const TrainData& data,
                  const TrainConfig& cfg);
Mat solve_code(const TrainState& state, const LcaeModel& model, const TrainData& data,
               const TrainConfig& cfg);
Mat solve_hidden1(const TrainState& state, const LcaeModel& model, const TrainData& data,
                  const TrainConfig& cfg);

void update_bregman(TrainState& state, const LcaeModel& model, const TrainData& data,
                    const TrainConfig& cfg);

ObjectiveTerms objective_terms(const TrainState& state, const LcaeModel& model,
                               const TrainData& data, const TrainConfig& cfg);
double objective(const TrainState& state, const LcaeModel& model, const TrainData& data,
                 const TrainConfig& cfg);

// Full training loop: sweeps of {hidden2, code, hidden1, W1p, W2p, W2, W1, D,
// relaxation update} until the relative objective change drops below tol or
// max_sweeps is reached. Deterministic per seed. The returned model carries
// identity normalization stats; callers that normalized their data overwrite
// them before saving.
std::pair<LcaeModel, TrainState> train(const TrainConfig& cfg, const Mat& xtilde,
                                       const Mat& xclean, const Mat& targets, int n_supervised,
                                       std::vector<SweepStats>* trace = nullptr);

}  // namespace lcae

#endif  // LCAE_TRAINER_HPP_
