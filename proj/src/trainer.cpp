#include "lcae/trainer.hpp"

#include <chrono>
#include <cmath>

#include "lcae/kernels.hpp"
#include "lcae/rng.hpp"

namespace lcae {

namespace {

Mat clamp_to_activation_range(Mat m) {
  double* d = m.data();
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (d[k] < kActivationMargin) d[k] = kActivationMargin;
    if (d[k] > 1.0 - kActivationMargin) d[k] = 1.0 - kActivationMargin;
  }
  return m;
}

Mat random_weights(int rows, int cols, SplitMix64& rng) {
  Mat w(rows, cols);
  const double scale = 1.0 / std::sqrt(static_cast<double>(cols));
  for (std::size_t k = 0; k < w.size(); ++k) w.data()[k] = scale * rng.next_symmetric();
  return w;
}

void check_sizes(const TrainConfig& cfg) {
  if (cfg.sizes.n < 1 || cfg.sizes.h1 < 1 || cfg.sizes.h2 < 1 || cfg.sizes.c < 1)
    throw std::invalid_argument("trainer: layer sizes must all be positive");
  if (!(cfg.mu1 > 0.0) || !(cfg.mu2 > 0.0) || !(cfg.mu > 0.0))
    throw std::invalid_argument("trainer: mu1, mu2, mu must be positive");
  if (cfg.lambda < 0.0 || cfg.ridge < 0.0)
    throw std::invalid_argument("trainer: lambda and ridge must be non-negative");
  if (cfg.max_sweeps < 1 || !(cfg.tol > 0.0))
    throw std::invalid_argument("trainer: max_sweeps and tol must be positive");
}

bool has_label_block(const TrainData& data, const TrainConfig& cfg) {
  return data.n_supervised > 0 && cfg.lambda > 0.0;
}

}  // namespace

TrainData TrainData::make(const Mat& xtilde, const Mat& xclean, const Mat& targets,
                          int n_supervised) {
  check_same_shape(xtilde, xclean, "trainer");
  if (n_supervised < 0 || n_supervised > xtilde.cols())
    throw std::invalid_argument("trainer: n_supervised out of range");
  if (n_supervised > 0) {
    if (targets.cols() != n_supervised)
      throw std::invalid_argument("trainer: targets have " + std::to_string(targets.cols()) +
                                  " columns, expected " + std::to_string(n_supervised));
  }
  TrainData data;
  data.xtilde_aug = with_bias_row(xtilde);
  data.xclean = xclean;
  data.targets = targets;
  data.n_supervised = n_supervised;
  return data;
}

std::pair<LcaeModel, TrainState> init_state(const TrainConfig& cfg, const Mat& xtilde,
                                            int n_supervised) {
  check_sizes(cfg);
  if (xtilde.rows() != cfg.sizes.n)
    throw std::invalid_argument("init_state: input rows do not match configured window length");
  if (n_supervised < 0 || n_supervised > xtilde.cols())
    throw std::invalid_argument("init_state: n_supervised out of range");

  SplitMix64 rng(cfg.seed);
  LcaeModel model;
  model.sizes = cfg.sizes;
  model.W1 = random_weights(cfg.sizes.h1, cfg.sizes.n + 1, rng);
  model.W2 = random_weights(cfg.sizes.h2, cfg.sizes.h1, rng);
  model.W2p = random_weights(cfg.sizes.h1, cfg.sizes.h2, rng);
  model.W1p = random_weights(cfg.sizes.n, cfg.sizes.h1, rng);
  model.D = random_weights(cfg.sizes.c, cfg.sizes.h2, rng);
  model.norm.mean.assign(cfg.sizes.n, 0.0);
  model.norm.scale.assign(cfg.sizes.n, 1.0);

  TrainState state;
  state.n_supervised = n_supervised;
  state.hidden1 = sigmoid(matmul(model.W1, with_bias_row(xtilde)));
  state.code = sigmoid(matmul(model.W2, state.hidden1));
  state.hidden2 = sigmoid(matmul(model.W2p, state.code));
  state.b_hidden1 = Mat(state.hidden1.rows(), state.hidden1.cols());
  state.b_code = Mat(state.code.rows(), state.code.cols());
  state.b_hidden2 = Mat(state.hidden2.rows(), state.hidden2.cols());
  return {std::move(model), std::move(state)};
}

Mat solve_weight_block(WeightBlock which, const TrainState& state, const LcaeModel& /*model*/,
                       const TrainData& data, const TrainConfig& cfg) {
  switch (which) {
    case WeightBlock::W1p:
      return ridge_lstsq_left(data.xclean, state.hidden2, cfg.ridge);
    case WeightBlock::W2p:
      return ridge_lstsq_left(logit(state.hidden2 - state.b_hidden2, kActivationMargin), state.code, cfg.ridge);
    case WeightBlock::W2:
      return ridge_lstsq_left(logit(state.code - state.b_code, kActivationMargin), state.hidden1, cfg.ridge);
    case WeightBlock::W1:
      return ridge_lstsq_left(logit(state.hidden1 - state.b_hidden1, kActivationMargin), data.xtilde_aug, cfg.ridge);
    case WeightBlock::D: {
      if (data.n_supervised < 1)
        throw std::invalid_argument("solve_weight_block: no supervised columns for the label map");
      Mat code_sup = col_range(state.code, state.code.cols() - data.n_supervised,
                               data.n_supervised);
      return ridge_lstsq_left(data.targets, code_sup, cfg.ridge);
    }
  }
  throw std::logic_error("solve_weight_block: unknown block");
}

Mat solve_hidden2(const TrainState& state, const LcaeModel& model, const TrainData& data,
                  const TrainConfig& cfg) {
  Mat coupling = sigmoid(matmul(model.W2p, state.code)) + state.b_hidden2;
  return stacked_ridge_solve(
      {{&model.W1p, &data.xclean, 1.0}, {nullptr, &coupling, cfg.mu1}}, cfg.ridge);
}

Mat solve_code(const TrainState& state, const LcaeModel& model, const TrainData& data,
               const TrainConfig& cfg) {
  const int total = state.code.cols();
  const int n_sup = data.n_supervised;
  const int n_unsup = total - n_sup;
  Mat dec_target = logit(state.hidden2 - state.b_hidden2, kActivationMargin);
  Mat enc_coupling = sigmoid(matmul(model.W2, state.hidden1)) + state.b_code;

  Mat out(state.code.rows(), total);
  if (n_unsup > 0) {
    Mat dec_u = col_range(dec_target, 0, n_unsup);
    Mat enc_u = col_range(enc_coupling, 0, n_unsup);
    set_col_range(out, 0,
                  stacked_ridge_solve({{&model.W2p, &dec_u, cfg.mu1}, {nullptr, &enc_u, cfg.mu2}},
                                      cfg.ridge));
  }
  if (n_sup > 0) {
    Mat dec_s = col_range(dec_target, n_unsup, n_sup);
    Mat enc_s = col_range(enc_coupling, n_unsup, n_sup);
    Mat solved = has_label_block(data, cfg)
                     ? stacked_ridge_solve({{&model.W2p, &dec_s, cfg.mu1},
                                            {nullptr, &enc_s, cfg.mu2},
                                            {&model.D, &data.targets, cfg.lambda}},
                                           cfg.ridge)
                     : stacked_ridge_solve(
                           {{&model.W2p, &dec_s, cfg.mu1}, {nullptr, &enc_s, cfg.mu2}}, cfg.ridge);
    set_col_range(out, n_unsup, solved);
  }
  return out;
}

Mat solve_hidden1(const TrainState& state, const LcaeModel& model, const TrainData& data,
                  const TrainConfig& cfg) {
  Mat code_target = logit(state.code - state.b_code, kActivationMargin);
  Mat coupling = sigmoid(matmul(model.W1, data.xtilde_aug)) + state.b_hidden1;
  return stacked_ridge_solve(
      {{&model.W2, &code_target, cfg.mu2}, {nullptr, &coupling, cfg.mu}}, cfg.ridge);
}

void update_bregman(TrainState& state, const LcaeModel& model, const TrainData& data,
                    const TrainConfig& cfg) {
  Mat dec = sigmoid(matmul(model.W2p, state.code));
  Mat enc_code = sigmoid(matmul(model.W2, state.hidden1));
  Mat enc_in = sigmoid(matmul(model.W1, data.xtilde_aug));
  if (cfg.bregman_rule == BregmanRule::reflect) {
    state.b_hidden2 = state.hidden2 - dec - state.b_hidden2;
    state.b_code = state.code - enc_code - state.b_code;
    state.b_hidden1 = state.hidden1 - enc_in - state.b_hidden1;
  } else {
    state.b_hidden2 = state.b_hidden2 + (dec - state.hidden2);
    state.b_code = state.b_code + (enc_code - state.code);
    state.b_hidden1 = state.b_hidden1 + (enc_in - state.hidden1);
  }
}

ObjectiveTerms objective_terms(const TrainState& state, const LcaeModel& model,
                               const TrainData& data, const TrainConfig& cfg) {
  ObjectiveTerms t;
  t.recon = frob_norm_sq(data.xclean - matmul(model.W1p, state.hidden2));
  if (has_label_block(data, cfg)) {
    Mat code_sup =
        col_range(state.code, state.code.cols() - data.n_supervised, data.n_supervised);
    t.label = cfg.lambda * frob_norm_sq(data.targets - matmul(model.D, code_sup));
  }
  t.pen_dec = cfg.mu1 * frob_norm_sq(state.hidden2 - sigmoid(matmul(model.W2p, state.code)) -
                                     state.b_hidden2);
  t.pen_code = cfg.mu2 * frob_norm_sq(state.code - sigmoid(matmul(model.W2, state.hidden1)) -
                                      state.b_code);
  t.pen_enc = cfg.mu * frob_norm_sq(state.hidden1 - sigmoid(matmul(model.W1, data.xtilde_aug)) -
                                    state.b_hidden1);
  return t;
}

double objective(const TrainState& state, const LcaeModel& model, const TrainData& data,
                 const TrainConfig& cfg) {
  return objective_terms(state, model, data, cfg).total();
}

std::pair<LcaeModel, TrainState> train(const TrainConfig& cfg, const Mat& xtilde,
                                       const Mat& xclean, const Mat& targets, int n_supervised,
                                       std::vector<SweepStats>* trace) {
  TrainData data = TrainData::make(xtilde, xclean, targets, n_supervised);
  if (n_supervised > 0 && targets.rows() != cfg.sizes.c)
    throw std::invalid_argument("train: targets have " + std::to_string(targets.rows()) +
                                " rows, expected " + std::to_string(cfg.sizes.c) + " classes");
  auto [model, state] = init_state(cfg, xtilde, n_supervised);

  double prev = 0.0;
  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    const auto start = std::chrono::steady_clock::now();

    state.hidden2 = clamp_to_activation_range(solve_hidden2(state, model, data, cfg));
    state.code = clamp_to_activation_range(solve_code(state, model, data, cfg));
    state.hidden1 = clamp_to_activation_range(solve_hidden1(state, model, data, cfg));
    model.W1p = solve_weight_block(WeightBlock::W1p, state, model, data, cfg);
    model.W2p = solve_weight_block(WeightBlock::W2p, state, model, data, cfg);
    model.W2 = solve_weight_block(WeightBlock::W2, state, model, data, cfg);
    model.W1 = solve_weight_block(WeightBlock::W1, state, model, data, cfg);
    if (has_label_block(data, cfg))
      model.D = solve_weight_block(WeightBlock::D, state, model, data, cfg);
    update_bregman(state, model, data, cfg);

    const ObjectiveTerms terms = objective_terms(state, model, data, cfg);
    const double current = terms.total();
    state.objective_history.push_back(current);
    if (trace) {
      const auto end = std::chrono::steady_clock::now();
      trace->push_back(SweepStats{
          sweep, terms, std::chrono::duration<double, std::milli>(end - start).count()});
    }

    if (sweep > 1 && std::fabs(prev - current) < cfg.tol * std::max(std::fabs(prev), 1e-300))
      break;
    prev = current;
  }
  return {std::move(model), std::move(state)};
}

}  // namespace lcae
