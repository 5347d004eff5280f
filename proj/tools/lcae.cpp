// Command-line front end: sensing-matrix generation, window compression,
// training, reconstruction, classification, sparse-recovery baselines,
// metric evaluation and benchmarking. Every subcommand is deterministic
// given its flags and inputs; measured wall-clock values appear only in the
// benchmark output and the optional training log.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "lcae/baselines.hpp"
#include "lcae/dataio.hpp"
#include "lcae/eval.hpp"
#include "lcae/kernels.hpp"
#include "lcae/model.hpp"
#include "lcae/sensing.hpp"
#include "lcae/trainer.hpp"

namespace {

using lcae::Mat;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

// Config file grammar: one `key = value` per line, `#` starts a comment,
// blank lines ignored. Keys mirror the long flag names without dashes.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto from = s.find_first_not_of(" \t\r");
    const auto to = s.find_last_not_of(" \t\r");
    return from == std::string::npos ? std::string() : s.substr(from, to - from + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--config", path + ":" + std::to_string(line_no) +
                                                 ": expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw CLI::ValidationError("--config", path + ":" + std::to_string(line_no) +
                                                 ": expected `key = value`");
    kv[key] = value;
  }
  return kv;
}

// Applies config values to options the command line left unset; flags always
// win. Unknown keys are errors so typos cannot silently change a run.
class ConfigApplier {
 public:
  ConfigApplier(const CLI::App* cmd, std::map<std::string, std::string> kv)
      : cmd_(cmd), kv_(std::move(kv)) {}

  template <typename T>
  void apply(const std::string& key, T& target) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return;
    if (cmd_->count("--" + key) == 0) {
      std::istringstream stream(it->second);
      if (!(stream >> target) || !stream.eof())
        throw CLI::ValidationError("--config", "bad value for key '" + key + "': " + it->second);
    }
    kv_.erase(it);
  }

  void apply_string(const std::string& key, std::string& target) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return;
    if (cmd_->count("--" + key) == 0) target = it->second;
    kv_.erase(it);
  }

  void finish() const {
    if (!kv_.empty())
      throw CLI::ValidationError("--config", "unknown config key '" + kv_.begin()->first + "'");
  }

 private:
  const CLI::App* cmd_;
  std::map<std::string, std::string> kv_;
};

void write_nmse_csv(const std::string& path, const lcae::NmseResult& res,
                    const std::vector<std::string>& ids) {
  auto out = open_out(path);
  out << "window,record_id,nmse\n";
  for (std::size_t j = 0; j < res.per_column.size(); ++j)
    out << j << ',' << ids[j] << ',' << fmt(res.per_column[j]) << '\n';
  out << "mean,," << fmt(res.mean) << '\n';
  out << "stddev,," << fmt(res.stddev) << '\n';
}

// ---------- gen-sensing ----------

struct GenSensingArgs {
  int m = 0, n = 0, d = 2;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_sensing(const GenSensingArgs& a) {
  auto phi = lcae::SensingMatrix::generate(a.m, a.n, a.d, a.seed);
  lcae::save_sensing(phi, a.out);
  std::cerr << "wrote " << a.m << "x" << a.n << " sensing matrix (d=" << a.d << ") to " << a.out
            << "\n";
  return 0;
}

// ---------- compress ----------

struct CompressArgs {
  std::string phi, windows, out;
};

int run_compress(const CompressArgs& a) {
  auto phi = lcae::load_sensing(a.phi);
  auto ws = lcae::load_windows_csv(a.windows);
  lcae::WindowSet compressed;
  compressed.X = lcae::compress(phi, ws.X);
  compressed.labels = ws.labels;
  compressed.source_ids = ws.source_ids;
  lcae::save_windows_csv(compressed, a.out);
  std::cerr << "compressed " << ws.X.cols() << " windows from n=" << phi.n() << " to m=" << phi.m()
            << "\n";
  return 0;
}

// ---------- train ----------

struct TrainArgs {
  std::string windows, phi, out, log, config;
  int h1 = 0, h2 = 0;
  int classes = 0;  // 0 = infer from labels
  lcae::TrainConfig cfg;
  std::string bregman = "reflect";
};

void apply_train_config(TrainArgs& a, const CLI::App* cmd) {
  ConfigApplier conf(cmd, read_config(a.config));
  conf.apply_string("windows", a.windows);
  conf.apply_string("phi", a.phi);
  conf.apply_string("out", a.out);
  conf.apply_string("log", a.log);
  conf.apply("h1", a.h1);
  conf.apply("h2", a.h2);
  conf.apply("classes", a.classes);
  conf.apply("lambda", a.cfg.lambda);
  conf.apply("mu1", a.cfg.mu1);
  conf.apply("mu2", a.cfg.mu2);
  conf.apply("mu", a.cfg.mu);
  conf.apply("ridge", a.cfg.ridge);
  conf.apply("max-sweeps", a.cfg.max_sweeps);
  conf.apply("tol", a.cfg.tol);
  conf.apply("seed", a.cfg.seed);
  conf.apply_string("bregman-rule", a.bregman);
  conf.finish();
  if (a.bregman != "reflect" && a.bregman != "accumulate")
    throw CLI::ValidationError("--config", "bregman-rule must be reflect or accumulate");
  if (a.windows.empty() || a.phi.empty() || a.out.empty() || a.h1 < 1 || a.h2 < 1)
    throw CLI::ValidationError("train", "windows, phi, out, h1 and h2 are required "
                                        "(flags or config keys)");
}

int run_train(const TrainArgs& a) {
  auto phi = lcae::load_sensing(a.phi);
  auto ws = lcae::load_windows_csv(a.windows);

  int classes = a.classes;
  if (classes == 0) {
    for (int label : ws.labels) classes = std::max(classes, label + 1);
    classes = std::max(classes, 1);
  }

  auto stats = lcae::fit_normalizer(ws.X);
  auto ds = lcae::assemble(ws, phi, stats, classes);

  lcae::TrainConfig cfg = a.cfg;
  cfg.sizes = {phi.n(), a.h1, a.h2, classes};
  cfg.bregman_rule =
      a.bregman == "accumulate" ? lcae::BregmanRule::accumulate : lcae::BregmanRule::reflect;

  std::vector<lcae::SweepStats> trace;
  auto [model, state] = lcae::train(cfg, ds.Xtilde, ds.X, ds.T, ds.n_supervised, &trace);
  model.norm = stats;
  lcae::save_model(model, a.out);

  if (!a.log.empty()) {
    auto out = open_out(a.log);
    out << "sweep,objective,recon,label,pen_dec,pen_code,pen_enc,ms\n";
    for (const auto& s : trace)
      out << s.sweep << ',' << fmt(s.terms.total()) << ',' << fmt(s.terms.recon) << ','
          << fmt(s.terms.label) << ',' << fmt(s.terms.pen_dec) << ',' << fmt(s.terms.pen_code)
          << ',' << fmt(s.terms.pen_enc) << ',' << fmt(s.ms) << '\n';
  }
  std::cerr << "trained on " << ds.X.cols() << " windows (" << ds.n_supervised
            << " labeled), objective " << fmt(state.objective_history.front()) << " -> "
            << fmt(state.objective_history.back()) << " over " << state.objective_history.size()
            << " sweeps\n";
  return 0;
}

// ---------- reconstruct ----------

struct ReconstructArgs {
  std::string model, phi, windows, compressed, out, metrics;
};

int run_reconstruct(const ReconstructArgs& a) {
  auto model = lcae::load_model(a.model);
  auto phi = lcae::load_sensing(a.phi);
  if (a.windows.empty() == a.compressed.empty())
    throw CLI::ValidationError("reconstruct", "pass exactly one of --windows or --compressed");

  lcae::WindowSet ws;
  Mat b;
  if (!a.windows.empty()) {
    ws = lcae::load_windows_csv(a.windows);
    b = lcae::compress(phi, ws.X);
  } else {
    ws = lcae::load_windows_csv(a.compressed);
    b = ws.X;
  }
  Mat recon = lcae::reconstruct(model, phi, b);

  if (!a.out.empty()) {
    lcae::WindowSet rws;
    rws.X = recon;
    rws.labels = ws.labels;
    rws.source_ids = ws.source_ids;
    lcae::save_windows_csv(rws, a.out);
  }
  if (!a.metrics.empty()) {
    if (a.windows.empty())
      throw CLI::ValidationError("reconstruct", "--metrics needs clean --windows as ground truth");
    auto res = lcae::nmse(ws.X, recon);
    write_nmse_csv(a.metrics, res, ws.source_ids);
    std::cerr << "NMSE mean " << fmt(res.mean) << " +- " << fmt(res.stddev) << " over "
              << res.per_column.size() << " windows\n";
  }
  return 0;
}

// ---------- classify ----------

struct ClassifyArgs {
  std::string model, phi, windows, out, sequences;
};

int run_classify(const ClassifyArgs& a) {
  auto model = lcae::load_model(a.model);
  auto phi = lcae::load_sensing(a.phi);
  auto ws = lcae::load_windows_csv(a.windows);

  Mat b = lcae::compress(phi, ws.X);
  Mat estimate = lcae::apply_normalizer(model.norm, lcae::poor_mans_inverse(phi, b));
  auto scores = lcae::predict_scores(model, estimate);
  auto window_pred = lcae::classify_windows(scores);

  if (!a.out.empty()) {
    auto out = open_out(a.out);
    out << "record_id,label,pred";
    for (int k = 0; k < model.sizes.c; ++k) out << ",score_" << k;
    out << '\n';
    for (int j = 0; j < scores.scores.cols(); ++j) {
      out << ws.source_ids[j] << ',' << ws.labels[j] << ',' << window_pred[j];
      for (int k = 0; k < model.sizes.c; ++k) out << ',' << fmt(scores.scores(k, j));
      out << '\n';
    }
  }

  if (!a.sequences.empty()) {
    // one sequence per record_id, windows grouped in first-appearance order
    std::vector<std::string> order;
    std::map<std::string, std::vector<int>> groups;
    for (int j = 0; j < scores.scores.cols(); ++j) {
      auto [it, inserted] = groups.try_emplace(ws.source_ids[j]);
      if (inserted) order.push_back(ws.source_ids[j]);
      it->second.push_back(j);
    }
    auto out = open_out(a.sequences);
    out << "record_id,windows,label,pred\n";
    for (const auto& id : order) {
      const auto& members = groups[id];
      lcae::ClassScores group{Mat(model.sizes.c, static_cast<int>(members.size()))};
      // the sequence label is the unique labeled value; -1 when mixed or
      // entirely unlabeled
      int label = -1;
      bool mixed = false;
      for (std::size_t g = 0; g < members.size(); ++g) {
        for (int k = 0; k < model.sizes.c; ++k)
          group.scores(k, static_cast<int>(g)) = scores.scores(k, members[g]);
        const int member_label = ws.labels[members[g]];
        if (member_label < 0) continue;
        if (label < 0) label = member_label;
        else if (member_label != label) mixed = true;
      }
      out << id << ',' << members.size() << ',' << (mixed ? -1 : label) << ','
          << lcae::classify_sequence(group) << '\n';
    }
  }
  return 0;
}

// ---------- baselines ----------

struct BaselineArgs {
  std::string phi, windows, out, metrics;
  int k = 5;
  double lambda = 0.01;
  int max_iters = 2000;
  double tol = 1e-10;
};

int run_baseline(const BaselineArgs& a, bool use_omp) {
  auto phi = lcae::load_sensing(a.phi);
  auto ws = lcae::load_windows_csv(a.windows);
  if (ws.X.rows() != phi.n())
    throw std::runtime_error("baseline: windows have " + std::to_string(ws.X.rows()) +
                             " samples, sensing matrix expects " + std::to_string(phi.n()));
  Mat dense = phi.to_dense();
  Mat recon(phi.n(), ws.X.cols());
  for (int j = 0; j < ws.X.cols(); ++j) {
    Mat x_true = lcae::col_range(ws.X, j, 1);
    Mat y = lcae::compress(phi, x_true);
    Mat x_hat;
    if (use_omp) {
      x_hat = lcae::omp(dense, y, a.k).x;
    } else {
      lcae::IstaConfig cfg;
      cfg.lambda = a.lambda;
      cfg.max_iters = a.max_iters;
      cfg.tol = a.tol;
      x_hat = lcae::ista(dense, y, cfg).x;
    }
    lcae::set_col_range(recon, j, x_hat);
  }
  if (!a.out.empty()) {
    lcae::WindowSet rws;
    rws.X = recon;
    rws.labels = ws.labels;
    rws.source_ids = ws.source_ids;
    lcae::save_windows_csv(rws, a.out);
  }
  if (!a.metrics.empty()) {
    auto res = lcae::nmse(ws.X, recon);
    write_nmse_csv(a.metrics, res, ws.source_ids);
    std::cerr << "NMSE mean " << fmt(res.mean) << " +- " << fmt(res.stddev) << "\n";
  }
  return 0;
}

// ---------- evaluate ----------

struct EvaluateArgs {
  std::string pred, truth, recon, out;
  int classes = 0;
};

int run_evaluate(const EvaluateArgs& a) {
  const bool have_pred = !a.pred.empty();
  const bool have_recon = !a.truth.empty() && !a.recon.empty();
  if (have_pred == have_recon)
    throw CLI::ValidationError("evaluate", "pass either --pred, or --truth with --recon");

  if (have_recon) {
    auto truth = lcae::load_windows_csv(a.truth);
    auto recon = lcae::load_windows_csv(a.recon);
    auto res = lcae::nmse(truth.X, recon.X);
    write_nmse_csv(a.out, res, truth.source_ids);
    std::cerr << "NMSE mean " << fmt(res.mean) << " +- " << fmt(res.stddev) << "\n";
    return 0;
  }

  // prediction CSV: id,true,predicted per row (header allowed)
  std::ifstream in(a.pred);
  if (!in) throw std::runtime_error("cannot open " + a.pred);
  std::vector<int> truth_labels, pred_labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    int t, p;
    char id[256];
    if (std::sscanf(line.c_str(), "%255[^,],%d,%d", id, &t, &p) != 3) {
      if (line_no == 1) continue;  // header
      throw std::runtime_error(a.pred + ":" + std::to_string(line_no) +
                               ": expected id,true,predicted");
    }
    truth_labels.push_back(t);
    pred_labels.push_back(p);
  }
  int classes = a.classes;
  if (classes == 0) {
    for (std::size_t i = 0; i < truth_labels.size(); ++i)
      classes = std::max({classes, truth_labels[i] + 1, pred_labels[i] + 1});
  }
  auto conf = lcae::make_confusion(truth_labels, pred_labels, classes);
  auto metrics = lcae::class_metrics(conf);

  auto out = open_out(a.out);
  out << "metric,class,value\n";
  out << "accuracy,," << fmt(metrics.accuracy) << '\n';
  for (int k = 0; k < classes; ++k) {
    out << "sensitivity," << k << ',' << fmt(metrics.sensitivity[k]) << '\n';
    out << "specificity," << k << ',' << fmt(metrics.specificity[k]) << '\n';
  }
  for (int t = 0; t < classes; ++t)
    for (int p = 0; p < classes; ++p)
      out << "confusion," << t << '>' << p << ',' << conf.counts[t][p] << '\n';
  std::cerr << "accuracy " << fmt(metrics.accuracy) << " over " << conf.total() << " items\n";
  return 0;
}

// ---------- benchmark ----------

struct BenchmarkArgs {
  std::string phi, model, windows, out;
  int ista_iters = 2000;
  double ista_lambda = 0.01;
  int reps = 5;
};

int run_benchmark(const BenchmarkArgs& a) {
  auto model = lcae::load_model(a.model);
  auto phi = lcae::load_sensing(a.phi);
  auto ws = lcae::load_windows_csv(a.windows);
  Mat window = lcae::col_range(ws.X, 0, 1);
  Mat y = lcae::compress(phi, window);
  Mat dense = phi.to_dense();

  auto model_fwd = [&](const Mat& batch) { (void)lcae::reconstruct(model, phi, batch); };
  auto ista_run = [&](const Mat& batch) {
    lcae::IstaConfig cfg;
    cfg.lambda = a.ista_lambda;
    cfg.max_iters = a.ista_iters;
    cfg.tol = 1e-300;  // run the full iteration budget
    (void)lcae::ista(dense, batch, cfg);
  };
  auto timing = lcae::timing_compare(model_fwd, ista_run, y, a.reps);

  auto out = open_out(a.out);
  out << "model_ms,ista_ms,ratio\n";
  out << fmt(timing.ms_a) << ',' << fmt(timing.ms_b) << ',' << fmt(timing.ratio) << '\n';
  std::cerr << "model " << fmt(timing.ms_a) << " ms vs ista(" << a.ista_iters << ") "
            << fmt(timing.ms_b) << " ms, ratio " << fmt(timing.ratio) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Compressed signal windows: learned reconstruction + classification.\n"
      "File formats:\n"
      "  windows CSV   one window per row: record_id,label,s_1,...,s_n (label -1 = unlabeled)\n"
      "  sensing file  header 'm n d seed', then n lines of d row indices (text)\n"
      "  model file    binary container: magic LCAE, version, layer sizes, normalizer\n"
      "                stats, then W1 W2 W2p W1p D as little-endian float64\n"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --threads appear after the subcommand too

  int threads = 1;
  app.add_option("--threads", threads, "worker threads for dense kernels (default 1)");

  GenSensingArgs gen;
  auto* cmd_gen = app.add_subcommand(
      "gen-sensing", "generate a sparse binary sensing matrix and write it as text");
  cmd_gen->add_option("--m", gen.m, "compressed length (rows)")->required();
  cmd_gen->add_option("--n", gen.n, "window length (columns)")->required();
  cmd_gen->add_option("--d", gen.d, "ones per column (default 2)");
  cmd_gen->add_option("--seed", gen.seed, "generation seed");
  cmd_gen->add_option("--out", gen.out, "output path")->required();

  CompressArgs comp;
  auto* cmd_comp = app.add_subcommand("compress", "compress clean windows to m samples each");
  cmd_comp->add_option("--phi", comp.phi, "sensing matrix file")->required();
  cmd_comp->add_option("--windows", comp.windows, "clean windows CSV")->required();
  cmd_comp->add_option("--out", comp.out, "compressed windows CSV")->required();

  TrainArgs tr;
  auto* cmd_train = app.add_subcommand(
      "train",
      "train the label-consistent autoencoder on compressed estimates of the given windows");
  cmd_train->add_option("--config", tr.config,
                        "key = value config file, # comments; every flag overrides its key; "
                        "unknown keys are errors");
  cmd_train->add_option("--windows", tr.windows, "training windows CSV");
  cmd_train->add_option("--phi", tr.phi, "sensing matrix file");
  cmd_train->add_option("--out", tr.out, "output model file");
  cmd_train->add_option("--log", tr.log,
                        "per-sweep log CSV, columns: sweep,objective,recon,label,pen_dec,"
                        "pen_code,pen_enc,ms (ms is measured, not reproducible)");
  cmd_train->add_option("--h1", tr.h1, "outer hidden layer size");
  cmd_train->add_option("--h2", tr.h2, "inner hidden layer (code) size");
  cmd_train->add_option("--classes", tr.classes, "class count (default: max label + 1)");
  cmd_train->add_option("--lambda", tr.cfg.lambda, "label-consistency weight (default 1.0)");
  cmd_train->add_option("--mu1", tr.cfg.mu1, "decoder-hidden coupling (default 0.01)");
  cmd_train->add_option("--mu2", tr.cfg.mu2, "code coupling (default 0.01)");
  cmd_train->add_option("--mu", tr.cfg.mu, "encoder-hidden coupling (default 0.01)");
  cmd_train->add_option("--ridge", tr.cfg.ridge, "ridge added to every solve (default 1e-8)");
  cmd_train->add_option("--max-sweeps", tr.cfg.max_sweeps, "sweep budget (default 100)");
  cmd_train->add_option("--tol", tr.cfg.tol, "relative objective-change stop (default 1e-6)");
  cmd_train->add_option("--seed", tr.cfg.seed, "weight-init seed");
  cmd_train->add_option("--bregman-rule", tr.bregman,
                        "relaxation update: reflect (default) or accumulate")
      ->check(CLI::IsMember({"reflect", "accumulate"}));

  ReconstructArgs rec;
  auto* cmd_rec = app.add_subcommand(
      "reconstruct", "feed-forward reconstruction of compressed windows through a trained model");
  cmd_rec->add_option("--model", rec.model, "model file")->required();
  cmd_rec->add_option("--phi", rec.phi, "sensing matrix file")->required();
  cmd_rec->add_option("--windows", rec.windows, "clean windows CSV (compressed in-process)");
  cmd_rec->add_option("--compressed", rec.compressed, "already-compressed windows CSV");
  cmd_rec->add_option("--out", rec.out, "reconstructed windows CSV");
  cmd_rec->add_option("--metrics", rec.metrics,
                      "per-window NMSE CSV (needs --windows), columns: window,record_id,nmse; "
                      "trailing mean/stddev rows");

  ClassifyArgs cls;
  auto* cmd_cls = app.add_subcommand(
      "classify", "label scores for compressed estimates; optional per-sequence vote");
  cmd_cls->add_option("--model", cls.model, "model file")->required();
  cmd_cls->add_option("--phi", cls.phi, "sensing matrix file")->required();
  cmd_cls->add_option("--windows", cls.windows, "clean windows CSV (compressed in-process)")
      ->required();
  cmd_cls->add_option("--out", cls.out,
                      "per-window CSV, columns: record_id,label,pred,score_0..score_{c-1}");
  cmd_cls->add_option("--sequences", cls.sequences,
                      "per-sequence CSV: windows grouped by record_id, scores row-averaged; "
                      "columns: record_id,windows,label,pred");

  BaselineArgs omp_args;
  auto* cmd_omp = app.add_subcommand(
      "baseline-omp", "greedy sparse recovery of each window from its compressed samples");
  cmd_omp->add_option("--phi", omp_args.phi, "sensing matrix file")->required();
  cmd_omp->add_option("--windows", omp_args.windows, "sparse ground-truth windows CSV")->required();
  cmd_omp->add_option("--k", omp_args.k, "sparsity level (default 5)");
  cmd_omp->add_option("--out", omp_args.out, "recovered windows CSV");
  cmd_omp->add_option("--metrics", omp_args.metrics,
                      "per-window NMSE CSV, columns: window,record_id,nmse; trailing "
                      "mean/stddev rows");

  BaselineArgs ista_args;
  auto* cmd_ista = app.add_subcommand(
      "baseline-ista", "iterative soft-thresholding recovery of each window");
  cmd_ista->add_option("--phi", ista_args.phi, "sensing matrix file")->required();
  cmd_ista->add_option("--windows", ista_args.windows, "sparse ground-truth windows CSV")
      ->required();
  cmd_ista->add_option("--lambda", ista_args.lambda, "l1 weight (default 0.01)");
  cmd_ista->add_option("--max-iters", ista_args.max_iters, "iteration budget (default 2000)");
  cmd_ista->add_option("--tol", ista_args.tol, "relative objective-change stop (default 1e-10)");
  cmd_ista->add_option("--out", ista_args.out, "recovered windows CSV");
  cmd_ista->add_option("--metrics", ista_args.metrics,
                       "per-window NMSE CSV, columns: window,record_id,nmse; trailing "
                       "mean/stddev rows");

  EvaluateArgs ev;
  auto* cmd_ev = app.add_subcommand(
      "evaluate",
      "classification metrics from a predictions CSV (id,true,predicted), or reconstruction "
      "NMSE from truth/recon window CSVs");
  cmd_ev->add_option("--pred", ev.pred, "predictions CSV: id,true,predicted");
  cmd_ev->add_option("--truth", ev.truth, "clean windows CSV");
  cmd_ev->add_option("--recon", ev.recon, "reconstructed windows CSV");
  cmd_ev->add_option("--classes", ev.classes, "class count (default: inferred)");
  cmd_ev->add_option("--out", ev.out,
                     "metrics CSV, columns: metric,class,value (accuracy, per-class "
                     "sensitivity/specificity, confusion counts) or the NMSE layout")
      ->required();

  BenchmarkArgs bench;
  auto* cmd_bench = app.add_subcommand(
      "benchmark", "median wall-clock of model forward reconstruction vs ISTA on one window");
  cmd_bench->add_option("--phi", bench.phi, "sensing matrix file")->required();
  cmd_bench->add_option("--model", bench.model, "model file")->required();
  cmd_bench->add_option("--windows", bench.windows, "windows CSV (first window is used)")
      ->required();
  cmd_bench->add_option("--ista-iters", bench.ista_iters, "ISTA iteration count (default 2000)");
  cmd_bench->add_option("--ista-lambda", bench.ista_lambda, "ISTA l1 weight (default 0.01)");
  cmd_bench->add_option("--reps", bench.reps, "timing repetitions (default 5)");
  cmd_bench->add_option("--out", bench.out, "timing CSV: model_ms,ista_ms,ratio")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return 1;
  }

  omp_set_num_threads(std::max(1, threads));

  try {
    if (app.got_subcommand(cmd_gen)) return run_gen_sensing(gen);
    if (app.got_subcommand(cmd_comp)) return run_compress(comp);
    if (app.got_subcommand(cmd_train)) {
      if (!tr.config.empty()) apply_train_config(tr, cmd_train);
      else if (tr.windows.empty() || tr.phi.empty() || tr.out.empty() || tr.h1 < 1 || tr.h2 < 1)
        throw CLI::ValidationError("train", "windows, phi, out, h1 and h2 are required");
      return run_train(tr);
    }
    if (app.got_subcommand(cmd_rec)) return run_reconstruct(rec);
    if (app.got_subcommand(cmd_cls)) return run_classify(cls);
    if (app.got_subcommand(cmd_omp)) return run_baseline(omp_args, true);
    if (app.got_subcommand(cmd_ista)) return run_baseline(ista_args, false);
    if (app.got_subcommand(cmd_ev)) return run_evaluate(ev);
    if (app.got_subcommand(cmd_bench)) return run_benchmark(bench);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
