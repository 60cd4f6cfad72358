// Command-line surface: dataset generation, training, evaluation, length
// sweeps, relational-error reports, representation export, and the exact
// label oracles.  Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grouprep/checkpoint.hpp"
#include "grouprep/dataset.hpp"
#include "grouprep/export.hpp"
#include "grouprep/matrixnet.hpp"
#include "grouprep/rng.hpp"
#include "grouprep/train.hpp"

namespace {

using namespace grouprep;

bool is_braid(const GroupPresentation& pres) {
  return std::holds_alternative<BraidFamily>(pres.family);
}

int braid_strands(const GroupPresentation& pres) {
  return std::get<BraidFamily>(pres.family).n;
}

// Task widths: braid regression predicts one multiplicity per strand; order
// classification has one class per achievable order.
int task_outputs(const GroupPresentation& pres) {
  if (is_braid(pres)) return braid_strands(pres);
  return int(order_class_set(pres.family).size());
}

void print_metrics(const char* name, const MetricsRecord& rec) {
  std::printf("%s: loss=%.6g", name, rec.loss);
  if (!std::isnan(rec.accuracy)) std::printf(" accuracy=%.6g", rec.accuracy);
  if (!std::isnan(rec.rounded_accuracy)) {
    std::printf(" rounded_accuracy=%.6g", rec.rounded_accuracy);
  }
  if (!std::isnan(rec.relational_error)) {
    std::printf(" relational_error=%.6g", rec.relational_error);
  }
  std::printf(" wall_clock_sec=%.3g\n", rec.wall_clock_sec);
}

// ---------------------------------------------------------------------------

struct GenOpts {
  std::string family;
  std::string out;
  std::string mode;  // empty = enumerate for braids, sample otherwise
  long long count = 0;  // 0 = task default (500000 order, 2000 braid)
  int max_len = 0;      // 0 = task default (64 order, 6 braid)
  std::uint64_t seed = 0;
  int start_vertex = 1;
  bool unreduced = false;
};

void run_gen_dataset(const GenOpts& o) {
  const auto pres = presentation_from_name(o.family);
  DatasetManifest m;
  m.family = pres.name;
  m.seed = o.seed;
  m.start_vertex = o.start_vertex;
  std::vector<Sample> samples;
  if (is_braid(pres)) {
    m.task = "braid";
    m.mode = o.mode.empty() ? "enumerate" : o.mode;
    m.max_len = o.max_len > 0 ? o.max_len : 6;
    m.reduced = !o.unreduced;
    m.allow_inverses = true;
    m.label_space = braid_label_space(pres.family);
    if (m.mode == "enumerate") {
      samples = enumerate_braid_dataset(pres, m.max_len, m.start_vertex,
                                        m.reduced);
      m.count = (long long)samples.size();
    } else if (m.mode == "sample") {
      m.count = o.count > 0 ? o.count : 2000;
      samples = sample_braid_dataset(pres, m.count, m.max_len, m.start_vertex,
                                     m.seed);
    } else {
      throw std::invalid_argument("unknown mode: " + m.mode);
    }
  } else {
    if (!o.mode.empty() && o.mode != "sample") {
      throw std::invalid_argument("order datasets only support sample mode");
    }
    m.task = "order";
    m.mode = "sample";
    m.count = o.count > 0 ? o.count : 500000;
    m.max_len = o.max_len > 0 ? o.max_len : 64;
    m.include_identity = true;
    m.allow_inverses = !pres.self_inverse_generators;
    m.label_space = order_label_space(pres.family);
    samples = gen_order_dataset(pres, m.count, m.max_len, m.seed);
  }
  write_jsonl(samples, o.out);
  m.content_hash = fnv1a_file(o.out);
  write_manifest(m, o.out);
  std::printf("wrote %lld samples to %s (hash %016llx)\n", m.count,
              o.out.c_str(), (unsigned long long)m.content_hash);
}

// ---------------------------------------------------------------------------

struct TrainOpts {
  std::string data;
  std::string family;  // defaults to the dataset manifest's family
  std::string model = "nl";
  int epochs = 100;
  int batch_size = 128;
  double learning_rate = 1e-4;
  std::uint64_t seed = 0;
  double train_frac = 0.6, val_frac = 0.2, test_frac = 0.2;
  std::uint64_t split_seed = 0;
  bool split_seed_set = false;
  std::string checkpoint = "model.checkpoint.json";
  std::string metrics;
  bool no_relation_loss = false;
  double relation_weight = 1.0;
  bool relation_weight_set = false;
  int relation_every = 10;
  // Architecture overrides; 0 / empty = family default.
  int matrix_dim = 0;
  int channels = 0;
  int hidden_dim = 0;
  std::string activation;
  int head_hidden = 0;
  std::string head_activation;
  int mlp_max_len = 0;
  bool verbose = false;
};

GroupPresentation resolve_family(const std::string& flag,
                                 const std::string& data_path) {
  if (!flag.empty()) return presentation_from_name(flag);
  try {
    return presentation_from_name(read_manifest(data_path).family);
  } catch (const std::exception&) {
    throw std::invalid_argument(
        "no --family given and no readable manifest next to " + data_path);
  }
}

void check_labels_match(const std::vector<Sample>& samples, TaskKind task) {
  if (samples.empty()) throw std::invalid_argument("dataset is empty");
  const bool vector_labels =
      std::holds_alternative<JHVector>(samples.front().label);
  if (vector_labels != (task == TaskKind::Regression)) {
    throw std::invalid_argument(
        "dataset labels do not match the task implied by the family");
  }
}

AnyModel build_model(const TrainOpts& o, const GroupPresentation& pres,
                     TaskKind task, int outputs, int data_max_len) {
  if (o.model == "mlp") {
    const int max_len = o.mlp_max_len > 0 ? o.mlp_max_len : data_max_len;
    const int hidden = o.hidden_dim > 0 ? o.hidden_dim : 128;
    const Activation act = o.activation.empty()
                               ? Activation::Relu
                               : parse_activation(o.activation);
    return make_mlp_baseline(pres, task, outputs, max_len, hidden, act,
                             o.seed);
  }
  if (o.model == "fixed") {
    const int hidden = o.hidden_dim > 0 ? o.hidden_dim : 256;
    const Activation act = o.activation.empty()
                               ? Activation::Silu
                               : parse_activation(o.activation);
    auto model = make_fixed_rep(pres, outputs, hidden, act, o.seed);
    model.task = task;
    return model;
  }
  MatrixBlockConfig block =
      default_block_config(pres.family, parse_variant(o.model));
  if (o.matrix_dim > 0) block.matrix_dim = o.matrix_dim;
  if (o.channels > 0) block.channels = o.channels;
  if (o.hidden_dim > 0) block.hidden_dim = o.hidden_dim;
  if (!o.activation.empty()) block.activation = parse_activation(o.activation);
  HeadConfig head = default_head_config(pres.family);
  if (o.head_hidden > 0) head.hidden_dim = o.head_hidden;
  if (!o.head_activation.empty()) {
    head.activation = parse_activation(o.head_activation);
  }
  return make_matrixnet(pres, block, head, task, outputs, o.seed);
}

void run_train(const TrainOpts& o) {
  const auto pres = resolve_family(o.family, o.data);
  const auto samples = read_jsonl(o.data);
  const TaskKind task =
      is_braid(pres) ? TaskKind::Regression : TaskKind::Classification;
  check_labels_match(samples, task);
  const int outputs = task_outputs(pres);

  int data_max_len = 0;
  for (const Sample& s : samples) {
    data_max_len = std::max(data_max_len, int(s.word.size()));
  }

  const std::uint64_t split_seed = o.split_seed_set ? o.split_seed : o.seed;
  const auto split = split_dataset(samples, o.train_frac, o.val_frac,
                                   o.test_frac, split_seed);
  std::printf("split: %zu train / %zu val / %zu test\n", split.train.size(),
              split.val.size(), split.test.size());

  const AnyModel init = build_model(o, pres, task, outputs, data_max_len);

  TrainConfig cfg;
  cfg.epochs = o.epochs;
  cfg.batch_size = o.batch_size;
  cfg.learning_rate = o.learning_rate;
  cfg.seed = o.seed;
  cfg.checkpoint_path = o.checkpoint;
  cfg.verbose = o.verbose;
  // Relation loss defaults on for braid regression only; elsewhere the many
  // short relations of a finite presentation overwhelm the task gradient and
  // pin the representation at the identity, so it stays opt-in.
  const bool relation_on =
      !o.no_relation_loss && (is_braid(pres) || o.relation_weight_set);
  if (relation_on && std::holds_alternative<MatrixNetModel>(init)) {
    cfg.relation = default_relation_loss(pres);
    cfg.relation.weight = o.relation_weight;
    cfg.relation.apply_every = o.relation_every;
  }

  TrainResult result = train_model(init, split.train, split.val, cfg);
  std::printf("best epoch %d, val loss %.6g\n", result.best_epoch,
              result.best_val_loss);

  if (!split.test.empty()) {
    MetricsRecord test = evaluate(result.model, split.test);
    test.epoch = result.best_epoch;
    test.split = "test";
    result.history.push_back(test);
    print_metrics("test", test);
  }
  if (!o.metrics.empty()) {
    write_metrics_csv(result.history, o.metrics);
    std::printf("metrics written to %s\n", o.metrics.c_str());
  }
  std::printf("checkpoint written to %s\n", o.checkpoint.c_str());
}

// ---------------------------------------------------------------------------

struct EvalOpts {
  std::string checkpoint;
  std::string data;
  std::string metrics;
};

void run_eval(const EvalOpts& o) {
  const Checkpoint ck = load_checkpoint(o.checkpoint);
  const auto samples = read_jsonl(o.data);
  MetricsRecord rec = evaluate(ck.model, samples);
  rec.epoch = 0;
  rec.split = "eval";
  print_metrics("eval", rec);
  if (!o.metrics.empty()) write_metrics_csv({rec}, o.metrics);
}

// ---------------------------------------------------------------------------

struct SweepOpts {
  std::string checkpoint;
  std::vector<int> lengths;
  long long count = 2000;
  std::uint64_t seed = 0;
  int start_vertex = 1;
  std::string out;
};

// Shared by extrapolate and interpolate: evaluate on freshly sampled
// fixed-length braid sets and emit a per-length CSV.
void run_length_sweep(const SweepOpts& o, const char* title) {
  const Checkpoint ck = load_checkpoint(o.checkpoint);
  const auto& pres = model_presentation(ck.model);
  if (!is_braid(pres)) {
    throw std::invalid_argument(
        std::string(title) + " needs a braid-family checkpoint, got " +
        pres.name);
  }

  std::string csv = "length,count,loss,accuracy,rounded_accuracy\n";
  for (int len : o.lengths) {
    const auto data = sample_braid_dataset(pres, o.count, len, o.start_vertex,
                                           derive_seed(o.seed, std::uint64_t(len)));
    const MetricsRecord rec = evaluate(ck.model, data);
    char line[160];
    std::snprintf(line, sizeof line, "%d,%lld,%.10g,%.10g,%.10g\n", len,
                  o.count, rec.loss,
                  std::isnan(rec.accuracy) ? rec.rounded_accuracy
                                           : rec.accuracy,
                  rec.rounded_accuracy);
    std::printf("length %d: loss=%.6g rounded_accuracy=%.6g\n", len, rec.loss,
                rec.rounded_accuracy);
    csv += line;
  }
  if (!o.out.empty()) {
    std::ofstream file(o.out);
    if (!file) throw std::runtime_error("cannot open for writing: " + o.out);
    file << csv;
    std::printf("per-length metrics written to %s\n", o.out.c_str());
  }
}

// ---------------------------------------------------------------------------

void run_rel_error(const std::string& checkpoint_path) {
  const Checkpoint ck = load_checkpoint(checkpoint_path);
  const auto* net = std::get_if<MatrixNetModel>(&ck.model);
  if (net == nullptr) {
    throw std::invalid_argument("rel-error needs a MatrixNet checkpoint");
  }
  const auto rel = relational_error_per_channel(*net);
  const auto non = non_relational_difference_per_channel(*net);
  for (std::size_t c = 0; c < rel.size(); ++c) {
    std::printf("channel %zu: relational_error=%.6g non_relational=%.6g\n", c,
                rel[c], non[c]);
  }
  const double r = relational_error(*net);
  const double n = non_relational_difference(*net);
  std::printf("aggregate: relational_error=%.6g non_relational=%.6g ratio=%.6g\n",
              r, n, r / n);
}

// ---------------------------------------------------------------------------

struct ExportOpts {
  std::string checkpoint;
  std::string out = "representations";
  std::vector<std::string> words;
};

void run_export_reps(const ExportOpts& o) {
  const Checkpoint ck = load_checkpoint(o.checkpoint);
  const auto* net = std::get_if<MatrixNetModel>(&ck.model);
  if (net == nullptr) {
    throw std::invalid_argument("export-reps needs a MatrixNet checkpoint");
  }

  std::vector<Word> words = {Word{}};
  for (int g = 1; g <= net->presentation.num_generators; ++g) {
    words.push_back(Word({gen(g)}));
  }
  for (const std::string& text : o.words) words.push_back(parse_word(text));
  export_representations(*net, words, o.out);

  if (is_braid(net->presentation) && braid_strands(net->presentation) >= 3) {
    export_representation_pair(*net, parse_word("s1 s2 s1"),
                               parse_word("s2 s1 s2"), o.out);
  }
  std::printf("exported %zu words to %s/\n", words.size(), o.out.c_str());
}

// ---------------------------------------------------------------------------

struct OracleOpts {
  std::string family;
  int start_vertex = 1;
  std::string word;
};

void run_oracle(const OracleOpts& o) {
  const auto pres = presentation_from_name(o.family);
  const Word w = parse_word(o.word);
  validate_word(pres, w);
  if (is_braid(pres)) {
    const JHVector label =
        braid_word_label(w, o.start_vertex, braid_strands(pres));
    std::printf("%s\n", nlohmann::json(label).dump().c_str());
  } else {
    std::printf("%lld\n", word_order(pres, w));
  }
}

// ---------------------------------------------------------------------------
// Flat key=value config files.  A `--config FILE` anywhere on the command
// line supplies option values by long name ("epochs=50", "batch-size=64");
// options given explicitly as flags keep their command-line value.  Values
// are appended as --key=value tokens before parsing, so precedence is
// command line > config file > environment > built-in default.

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config file: " + config_path);

  auto given_explicitly = [&args](const std::string& key) {
    const std::string plain = "--" + key;
    const std::string prefixed = plain + "=";
    for (const std::string& a : args) {
      if (a == plain || a.rfind(prefixed, 0) == 0) return true;
    }
    return false;
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
    if (key.empty()) {
      throw std::runtime_error(config_path + ":" + std::to_string(line_no) +
                               ": expected key=value");
    }
    if (!given_explicitly(key)) {
      args.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learned matrix representations of finitely generated groups"};
  app.require_subcommand(1);
  // Storage for the --config path; the file itself is applied before parse.
  auto config_sink = std::make_shared<std::string>();
  auto add_config_opt = [&config_sink](CLI::App* cmd) {
    cmd->add_option("--config", *config_sink,
                    "Flat key=value config file; explicit flags override");
  };

  auto gen = std::make_shared<GenOpts>();
  auto* gen_cmd =
      app.add_subcommand("gen-dataset", "Generate a labeled dataset + manifest");
  gen_cmd->add_option("--family", gen->family, "Group family, e.g. B3, S8")
      ->required();
  gen_cmd->add_option("--out", gen->out, "Output JSONL path")->required();
  gen_cmd->add_option("--mode", gen->mode, "enumerate | sample");
  gen_cmd->add_option("--count", gen->count, "Samples (sample mode)");
  gen_cmd->add_option("--max-len", gen->max_len,
                      "Max length (enumerate) / exact length (sample)");
  gen_cmd->add_option("--seed", gen->seed, "RNG seed")
      ->envname("GROUPREP_SEED");
  gen_cmd->add_option("--start-vertex", gen->start_vertex,
                      "Braid label start vertex");
  gen_cmd->add_flag("--unreduced", gen->unreduced,
                    "Enumerate unreduced words too");
  add_config_opt(gen_cmd);
  gen_cmd->callback([gen] { run_gen_dataset(*gen); });

  auto tr = std::make_shared<TrainOpts>();
  auto* tr_cmd = app.add_subcommand("train", "Train a model on a dataset");
  tr_cmd->add_option("--data", tr->data, "JSONL dataset")->required();
  tr_cmd->add_option("--family", tr->family,
                     "Group family (default: dataset manifest)");
  tr_cmd->add_option("--model", tr->model,
                     "base | ln | nl | mc | mlp | fixed");
  tr_cmd->add_option("--epochs", tr->epochs, "Training epochs");
  tr_cmd->add_option("--batch-size", tr->batch_size, "Mini-batch size");
  tr_cmd->add_option("--lr", tr->learning_rate, "Adam learning rate");
  tr_cmd->add_option("--seed", tr->seed, "RNG seed")->envname("GROUPREP_SEED");
  tr_cmd->add_option("--train-frac", tr->train_frac, "Training fraction");
  tr_cmd->add_option("--val-frac", tr->val_frac, "Validation fraction");
  tr_cmd->add_option("--test-frac", tr->test_frac, "Test fraction");
  tr_cmd->add_option("--split-seed", tr->split_seed,
                     "Split shuffle seed (default: --seed)")
      ->each([tr](const std::string&) { tr->split_seed_set = true; });
  tr_cmd->add_option("--checkpoint", tr->checkpoint, "Checkpoint output path");
  tr_cmd->add_option("--metrics", tr->metrics, "Metrics CSV output path");
  tr_cmd->add_flag("--no-relation-loss", tr->no_relation_loss,
                   "Disable the relation loss term");
  tr_cmd->add_option("--relation-weight", tr->relation_weight,
                     "Relation loss weight (giving this enables the term "
                     "for non-braid families too)")
      ->each([tr](const std::string&) { tr->relation_weight_set = true; });
  tr_cmd->add_option("--relation-every", tr->relation_every,
                     "Apply relation loss every K batches");
  tr_cmd->add_option("--matrix-dim", tr->matrix_dim, "Override matrix size");
  tr_cmd->add_option("--channels", tr->channels, "Override channel count");
  tr_cmd->add_option("--hidden-dim", tr->hidden_dim, "Override hidden width");
  tr_cmd->add_option("--activation", tr->activation, "Override activation");
  tr_cmd->add_option("--head-hidden", tr->head_hidden, "Override head width");
  tr_cmd->add_option("--head-activation", tr->head_activation,
                     "Override head activation");
  tr_cmd->add_option("--mlp-max-len", tr->mlp_max_len,
                     "MLP baseline padded length (default: longest word)");
  tr_cmd->add_flag("--verbose", tr->verbose, "Per-epoch progress on stderr");
  add_config_opt(tr_cmd);
  tr_cmd->callback([tr] { run_train(*tr); });

  auto ev = std::make_shared<EvalOpts>();
  auto* ev_cmd = app.add_subcommand("eval", "Evaluate a checkpoint");
  ev_cmd->add_option("--checkpoint", ev->checkpoint, "Checkpoint path")
      ->required();
  ev_cmd->add_option("--data", ev->data, "JSONL dataset")->required();
  ev_cmd->add_option("--metrics", ev->metrics, "Metrics CSV output path");
  add_config_opt(ev_cmd);
  ev_cmd->callback([ev] { run_eval(*ev); });

  auto ex = std::make_shared<SweepOpts>();
  ex->lengths = {7, 8};
  auto* ex_cmd = app.add_subcommand(
      "extrapolate", "Evaluate on longer sampled braid words");
  auto in = std::make_shared<SweepOpts>();
  in->lengths = {5};
  auto* in_cmd = app.add_subcommand(
      "interpolate", "Evaluate on shorter sampled braid words");
  for (auto [cmd, opts] : {std::pair{ex_cmd, ex}, std::pair{in_cmd, in}}) {
    cmd->add_option("--checkpoint", opts->checkpoint, "Checkpoint path")
        ->required();
    cmd->add_option("--lengths", opts->lengths, "Word lengths to test")
        ->delimiter(',');
    cmd->add_option("--count", opts->count, "Samples per length");
    cmd->add_option("--seed", opts->seed, "RNG seed")
        ->envname("GROUPREP_SEED");
    cmd->add_option("--start-vertex", opts->start_vertex,
                    "Braid label start vertex");
    cmd->add_option("--out", opts->out, "Per-length CSV output path");
    add_config_opt(cmd);
  }
  ex_cmd->callback([ex] { run_length_sweep(*ex, "extrapolate"); });
  in_cmd->callback([in] { run_length_sweep(*in, "interpolate"); });

  auto rel = std::make_shared<std::string>();
  auto* rel_cmd = app.add_subcommand(
      "rel-error", "Relational error / non-relational difference");
  rel_cmd->add_option("--checkpoint", *rel, "Checkpoint path")->required();
  rel_cmd->callback([rel] { run_rel_error(*rel); });

  auto xp = std::make_shared<ExportOpts>();
  auto* xp_cmd = app.add_subcommand(
      "export-reps", "Export represented matrices as CSV + PGM heatmaps");
  xp_cmd->add_option("--checkpoint", xp->checkpoint, "Checkpoint path")
      ->required();
  xp_cmd->add_option("--out", xp->out, "Output directory");
  xp_cmd->add_option("--word", xp->words, "Extra word(s) to export");
  xp_cmd->callback([xp] { run_export_reps(*xp); });

  auto orc = std::make_shared<OracleOpts>();
  auto* orc_cmd = app.add_subcommand(
      "oracle", "Exact label for a word (order or multiplicities)");
  orc_cmd->add_option("--family", orc->family, "Group family")->required();
  orc_cmd->add_option("--start-vertex", orc->start_vertex,
                      "Braid label start vertex");
  orc_cmd->add_option("word", orc->word, "Word text, e.g. \"s1 s2'\"");
  orc_cmd->callback([orc] { run_oracle(*orc); });

  std::vector<std::string> args;
  try {
    args = expand_config_args(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
