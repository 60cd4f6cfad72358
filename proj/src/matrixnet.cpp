#include "grouprep/matrixnet.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace grouprep {

namespace {

// Column vector encoding of a single symbol (g x 1).
Matrix symbol_column(const GroupPresentation& pres, SignedGen g) {
  Word w(std::vector<SignedGen>{g});
  validate_word(pres, w);
  return signed_one_hot(pres, w).row(0).transpose();
}

int symbol_key(SignedGen g) { return g.sign * g.index; }

Matrix flatten_row_major(const Matrix& m) {
  return reshape_row_major(m, m.size(), 1);
}

const BraidFamily* braid_family(const GroupPresentation& pres) {
  return std::get_if<BraidFamily>(&pres.family);
}

}  // namespace

BlockVariant parse_variant(const std::string& name) {
  if (name == "base") return BlockVariant::Base;
  if (name == "ln") return BlockVariant::LN;
  if (name == "nl") return BlockVariant::NL;
  if (name == "mc") return BlockVariant::MC;
  throw std::invalid_argument("unknown block variant: " + name);
}

std::string variant_name(BlockVariant v) {
  switch (v) {
    case BlockVariant::Base: return "base";
    case BlockVariant::LN: return "ln";
    case BlockVariant::NL: return "nl";
    case BlockVariant::MC: return "mc";
  }
  assert(false);
  return "";
}

TaskKind parse_task(const std::string& name) {
  if (name == "classification") return TaskKind::Classification;
  if (name == "regression") return TaskKind::Regression;
  throw std::invalid_argument("unknown task kind: " + name);
}

std::string task_name(TaskKind t) {
  return t == TaskKind::Classification ? "classification" : "regression";
}

MatrixBlockConfig default_block_config(const Family& family, BlockVariant v) {
  MatrixBlockConfig cfg;
  cfg.variant = v;

  struct Dims {
    int base_dim, lnl_dim, hidden, mc_channels, mc_dim;
    Activation nl_act;
  };
  const Dims d = std::visit(
      [](const auto& fam) -> Dims {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, BraidFamily>) {
          return {14, 10, 128, 3, 8, Activation::Tanh};
        } else if constexpr (std::is_same_v<T, SymmetricFamily>) {
          if (fam.n == 10) return {10, 10, 256, 5, 2, Activation::Silu};
          return {fam.n, fam.n, 256, 2, fam.n, Activation::Silu};
        } else if constexpr (std::is_same_v<T, CyclicProductFamily>) {
          const int k = int(fam.orders.size());
          return {2 * k, 2 * k, 256, k, 2, Activation::Tanh};
        } else {
          static_assert(std::is_same_v<T, DirectPowerFamily>);
          return {fam.base_n * fam.copies, fam.base_n * fam.copies, 256,
                  fam.copies, fam.base_n, Activation::Silu};
        }
      },
      family);

  switch (v) {
    case BlockVariant::Base:
      cfg.matrix_dim = d.base_dim;
      break;
    case BlockVariant::LN:
      cfg.matrix_dim = d.lnl_dim;
      cfg.hidden_dim = d.hidden;
      cfg.activation = Activation::Linear;
      break;
    case BlockVariant::NL:
      cfg.matrix_dim = d.lnl_dim;
      cfg.hidden_dim = d.hidden;
      cfg.activation = d.nl_act;
      break;
    case BlockVariant::MC:
      cfg.matrix_dim = d.mc_dim;
      cfg.channels = d.mc_channels;
      break;
  }
  return cfg;
}

HeadConfig default_head_config(const Family& family) {
  if (std::holds_alternative<BraidFamily>(family)) {
    return HeadConfig{128, Activation::Relu};
  }
  return HeadConfig{256, Activation::Silu};
}

MatrixNetModel make_matrixnet(const GroupPresentation& pres,
                              const MatrixBlockConfig& block,
                              const HeadConfig& head, TaskKind task,
                              int outputs, std::uint64_t seed) {
  if (block.matrix_dim < 1) {
    throw std::invalid_argument("matrix_dim must be positive");
  }
  if (outputs < 1) throw std::invalid_argument("outputs must be positive");
  if (block.variant == BlockVariant::MC) {
    if (block.channels < 2) {
      throw std::invalid_argument("multi-channel blocks need >= 2 channels");
    }
  } else if (block.channels != 1) {
    throw std::invalid_argument("only multi-channel blocks may set channels");
  }
  const bool layered =
      block.variant == BlockVariant::LN || block.variant == BlockVariant::NL;
  if (layered && block.hidden_dim < 1) {
    throw std::invalid_argument("layered blocks need a positive hidden_dim");
  }
  if (block.variant == BlockVariant::LN &&
      block.activation != Activation::Linear) {
    throw std::invalid_argument("the linear-network block takes no activation");
  }
  // Without an odd activation the pre-exponential map is not odd in the
  // generator encoding, so inverse symbols would not invert the matrices.
  // Families whose generators are involutions never feed negated encodings
  // and are exempt.
  if (block.variant == BlockVariant::NL && !pres.self_inverse_generators &&
      !is_odd_activation(block.activation)) {
    throw std::invalid_argument(
        "groups with distinct inverses need an odd block activation, got " +
        activation_name(block.activation));
  }

  MatrixNetModel model;
  model.presentation = pres;
  model.block = block;
  model.head = head;
  model.task = task;
  model.outputs = outputs;

  const int g = pres.num_generators;
  const int n2 = block.matrix_dim * block.matrix_dim;
  std::mt19937_64 rng(seed);
  if (layered) {
    model.block_w.push_back(glorot_uniform(block.hidden_dim, g, rng));
    model.block_w.push_back(glorot_uniform(n2, block.hidden_dim, rng));
  } else {
    for (int c = 0; c < block.channels; ++c) {
      model.block_w.push_back(glorot_uniform(n2, g, rng));
    }
  }
  const int rep = model.rep_width();
  model.head_w1 = glorot_uniform(head.hidden_dim, rep, rng);
  model.head_b1 = Matrix::Zero(head.hidden_dim, 1);
  model.head_w2 = glorot_uniform(outputs, head.hidden_dim, rng);
  model.head_b2 = Matrix::Zero(outputs, 1);
  return model;
}

RelationLossConfig default_relation_loss(const GroupPresentation& pres) {
  RelationLossConfig cfg;
  cfg.relation_words = pres.relations;
  if (braid_family(pres)) {
    // Also penalize the reversed orientation of each relation.
    const std::size_t count = cfg.relation_words.size();
    for (std::size_t i = 0; i < count; ++i) {
      cfg.relation_words.push_back(inverse_word(cfg.relation_words[i]));
    }
  }
  return cfg;
}

// ---------------------------------------------------------------------------

MatrixNetNodes feed_matrixnet(Tape& tape, const MatrixNetModel& model) {
  MatrixNetNodes nodes;
  for (const Matrix& w : model.block_w) nodes.block_w.push_back(tape.input(w));
  nodes.head_w1 = tape.input(model.head_w1);
  nodes.head_b1 = tape.input(model.head_b1);
  nodes.head_w2 = tape.input(model.head_w2);
  nodes.head_b2 = tape.input(model.head_b2);
  return nodes;
}

std::vector<Tape::NodeId> generator_pre_exp_nodes(Tape& tape,
                                                  const MatrixNetModel& model,
                                                  const MatrixNetNodes& nodes,
                                                  SignedGen g) {
  const auto v = tape.input(symbol_column(model.presentation, g));
  std::vector<Tape::NodeId> pre;
  switch (model.block.variant) {
    case BlockVariant::Base:
      pre.push_back(tape.reshape_to_square(tape.matmul(nodes.block_w[0], v)));
      break;
    case BlockVariant::LN:
      pre.push_back(tape.reshape_to_square(
          tape.matmul(nodes.block_w[1], tape.matmul(nodes.block_w[0], v))));
      break;
    case BlockVariant::NL:
      pre.push_back(tape.reshape_to_square(tape.matmul(
          nodes.block_w[1],
          tape.activation(tape.matmul(nodes.block_w[0], v),
                          model.block.activation))));
      break;
    case BlockVariant::MC:
      for (int c = 0; c < model.block.channels; ++c) {
        pre.push_back(
            tape.reshape_to_square(tape.matmul(nodes.block_w[size_t(c)], v)));
      }
      break;
  }
  return pre;
}

std::vector<Tape::NodeId> generator_matrix_nodes(Tape& tape,
                                                 const MatrixNetModel& model,
                                                 const MatrixNetNodes& nodes,
                                                 SignedGen g) {
  std::vector<Tape::NodeId> out;
  for (auto pre : generator_pre_exp_nodes(tape, model, nodes, g)) {
    out.push_back(tape.matrix_exp(pre));
  }
  return out;
}

namespace {

const std::vector<Tape::NodeId>& cached_generator(Tape& tape,
                                                  const MatrixNetModel& model,
                                                  const MatrixNetNodes& nodes,
                                                  GeneratorCache& cache,
                                                  SignedGen g) {
  const int key = symbol_key(g);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, generator_matrix_nodes(tape, model, nodes, g))
             .first;
  }
  return it->second;
}

std::vector<Tape::NodeId> identity_rep(Tape& tape, const MatrixNetModel& model) {
  std::vector<Tape::NodeId> out;
  const int n = model.block.matrix_dim;
  for (int c = 0; c < model.block.channels; ++c) {
    out.push_back(tape.input(Matrix::Identity(n, n)));
  }
  return out;
}

}  // namespace

std::vector<Tape::NodeId> represent_word_nodes(Tape& tape,
                                               const MatrixNetModel& model,
                                               const MatrixNetNodes& nodes,
                                               GeneratorCache& cache,
                                               const Word& w) {
  validate_word(model.presentation, w);
  std::vector<Tape::NodeId> acc;
  for (SignedGen s : w.symbols) {
    if (s.index == 0) continue;  // exactly the identity matrix
    const auto& m = cached_generator(tape, model, nodes, cache, s);
    if (acc.empty()) {
      acc = m;
    } else {
      for (std::size_t c = 0; c < acc.size(); ++c) {
        acc[c] = tape.matmul(acc[c], m[c]);
      }
    }
  }
  if (acc.empty()) return identity_rep(tape, model);
  return acc;
}

Tape::NodeId forward_nodes(Tape& tape, const MatrixNetModel& model,
                           const MatrixNetNodes& nodes, GeneratorCache& cache,
                           const Word& w) {
  const auto rep = represent_word_nodes(tape, model, nodes, cache, w);
  std::vector<Tape::NodeId> flat;
  for (auto m : rep) {
    flat.push_back(tape.reshape(m, tape.value(m).size(), 1));
  }
  const auto x = flat.size() == 1 ? flat[0] : tape.concat_rows(flat);
  const auto h = tape.activation(
      tape.add(tape.matmul(nodes.head_w1, x), nodes.head_b1),
      model.head.activation);
  return tape.add(tape.matmul(nodes.head_w2, h), nodes.head_b2);
}

Tape::NodeId relation_loss_nodes(Tape& tape, const MatrixNetModel& model,
                                 const MatrixNetNodes& nodes,
                                 GeneratorCache& cache,
                                 const RelationLossConfig& cfg) {
  assert(cfg.apply_every >= 1);
  const int n = model.block.matrix_dim;
  Tape::NodeId total = -1;
  for (const Word& r : cfg.relation_words) {
    const auto rep = represent_word_nodes(tape, model, nodes, cache, r);
    for (auto m : rep) {
      const auto eye = tape.input(Matrix::Identity(n, n));
      const auto term = tape.frobenius_norm(tape.sub(m, eye));
      total = total < 0 ? term : tape.add(total, term);
    }
  }
  if (total < 0) return tape.input(Matrix::Zero(1, 1));
  if (cfg.weight != 1.0) total = tape.scale(total, cfg.weight);
  return total;
}

// ---------------------------------------------------------------------------

std::vector<Matrix> generator_matrix(const MatrixNetModel& model, SignedGen g) {
  Tape tape;
  const auto nodes = feed_matrixnet(tape, model);
  std::vector<Matrix> out;
  for (auto id : generator_matrix_nodes(tape, model, nodes, g)) {
    out.push_back(tape.value(id));
  }
  return out;
}

std::vector<Matrix> represent_word(const MatrixNetModel& model, const Word& w) {
  Tape tape;
  const auto nodes = feed_matrixnet(tape, model);
  GeneratorCache cache;
  std::vector<Matrix> out;
  for (auto id : represent_word_nodes(tape, model, nodes, cache, w)) {
    out.push_back(tape.value(id));
  }
  return out;
}

Vector forward(const MatrixNetModel& model, const Word& w) {
  Tape tape;
  const auto nodes = feed_matrixnet(tape, model);
  GeneratorCache cache;
  return tape.value(forward_nodes(tape, model, nodes, cache, w)).col(0);
}

double relation_loss(const MatrixNetModel& model,
                     const RelationLossConfig& cfg) {
  Tape tape;
  const auto nodes = feed_matrixnet(tape, model);
  GeneratorCache cache;
  return tape.value(relation_loss_nodes(tape, model, nodes, cache, cfg))(0, 0);
}

namespace {

std::vector<double> word_pair_distances(const MatrixNetModel& model,
                                        const char* left, const char* right) {
  const BraidFamily* fam = braid_family(model.presentation);
  if (fam == nullptr || fam->n < 3) {
    throw std::invalid_argument(
        "relational error needs a braid presentation with >= 3 strands");
  }
  const auto a = represent_word(model, parse_word(left));
  const auto b = represent_word(model, parse_word(right));
  std::vector<double> out;
  for (std::size_t c = 0; c < a.size(); ++c) {
    out.push_back((a[c] - b[c]).norm());
  }
  return out;
}

double l2(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> relational_error_per_channel(const MatrixNetModel& model) {
  return word_pair_distances(model, "s1 s2 s1", "s2 s1 s2");
}

std::vector<double> non_relational_difference_per_channel(
    const MatrixNetModel& model) {
  return word_pair_distances(model, "s1 s1 s2", "s2 s2 s1");
}

double relational_error(const MatrixNetModel& model) {
  return l2(relational_error_per_channel(model));
}

double non_relational_difference(const MatrixNetModel& model) {
  return l2(non_relational_difference_per_channel(model));
}

// ---------------------------------------------------------------------------

MlpBaselineModel make_mlp_baseline(const GroupPresentation& pres,
                                   TaskKind task, int outputs, int max_len,
                                   int hidden_dim, Activation act,
                                   std::uint64_t seed) {
  if (outputs < 1 || max_len < 1 || hidden_dim < 1) {
    throw std::invalid_argument("mlp baseline dims must be positive");
  }
  MlpBaselineModel model;
  model.presentation = pres;
  model.task = task;
  model.outputs = outputs;
  model.max_len = max_len;
  model.hidden_dim = hidden_dim;
  model.activation = act;
  const int in = max_len * pres.num_generators;
  std::mt19937_64 rng(seed);
  model.w1 = glorot_uniform(hidden_dim, in, rng);
  model.b1 = Matrix::Zero(hidden_dim, 1);
  model.w2 = glorot_uniform(hidden_dim, hidden_dim, rng);
  model.b2 = Matrix::Zero(hidden_dim, 1);
  model.w3 = glorot_uniform(outputs, hidden_dim, rng);
  model.b3 = Matrix::Zero(outputs, 1);
  return model;
}

Matrix encode_word_padded(const GroupPresentation& pres, const Word& w,
                          int max_len) {
  validate_word(pres, w);
  if (int(w.size()) > max_len) {
    throw InvalidWordError("word of length " + std::to_string(w.size()) +
                           " exceeds the encoder limit " +
                           std::to_string(max_len));
  }
  const int g = pres.num_generators;
  Matrix x = Matrix::Zero(Eigen::Index(max_len) * g, 1);
  const Matrix rows = signed_one_hot(pres, w);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < g; ++j) {
      x(i * g + j, 0) = rows(i, j);
    }
  }
  return x;
}

MlpBaselineNodes feed_mlp_baseline(Tape& tape, const MlpBaselineModel& model) {
  return MlpBaselineNodes{tape.input(model.w1), tape.input(model.b1),
                          tape.input(model.w2), tape.input(model.b2),
                          tape.input(model.w3), tape.input(model.b3)};
}

Tape::NodeId mlp_baseline_forward_nodes(Tape& tape,
                                        const MlpBaselineModel& model,
                                        const MlpBaselineNodes& nodes,
                                        const Word& w) {
  const auto x =
      tape.input(encode_word_padded(model.presentation, w, model.max_len));
  const auto h1 = tape.activation(
      tape.add(tape.matmul(nodes.w1, x), nodes.b1), model.activation);
  const auto h2 = tape.activation(
      tape.add(tape.matmul(nodes.w2, h1), nodes.b2), model.activation);
  return tape.add(tape.matmul(nodes.w3, h2), nodes.b3);
}

Vector mlp_baseline_forward(const MlpBaselineModel& model, const Word& w) {
  Tape tape;
  const auto nodes = feed_mlp_baseline(tape, model);
  return tape.value(mlp_baseline_forward_nodes(tape, model, nodes, w)).col(0);
}

// ---------------------------------------------------------------------------

FixedRepModel make_fixed_rep(const GroupPresentation& pres, int outputs,
                             int hidden_dim, Activation act,
                             std::uint64_t seed) {
  if (!std::holds_alternative<SymmetricFamily>(pres.family)) {
    throw std::invalid_argument(
        "the fixed-representation baseline needs a symmetric family");
  }
  if (outputs < 1 || hidden_dim < 1) {
    throw std::invalid_argument("fixed-rep dims must be positive");
  }
  FixedRepModel model;
  model.presentation = pres;
  model.task = TaskKind::Classification;
  model.outputs = outputs;
  model.hidden_dim = hidden_dim;
  model.activation = act;
  const int n = std::get<SymmetricFamily>(pres.family).n;
  std::mt19937_64 rng(seed);
  model.w1 = glorot_uniform(hidden_dim, n * n, rng);
  model.b1 = Matrix::Zero(hidden_dim, 1);
  model.w2 = glorot_uniform(outputs, hidden_dim, rng);
  model.b2 = Matrix::Zero(outputs, 1);
  return model;
}

Matrix permutation_matrix(const Permutation& p) {
  const int n = p.degree();
  Matrix m = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m(p(j), j) = 1.0;
  return m;
}

FixedRepNodes feed_fixed_rep(Tape& tape, const FixedRepModel& model) {
  return FixedRepNodes{tape.input(model.w1), tape.input(model.b1),
                       tape.input(model.w2), tape.input(model.b2)};
}

Tape::NodeId fixed_rep_forward_nodes(Tape& tape, const FixedRepModel& model,
                                     const FixedRepNodes& nodes,
                                     const Word& w) {
  const Permutation p = word_to_perm(model.presentation, w);
  const auto x = tape.input(flatten_row_major(permutation_matrix(p)));
  const auto h = tape.activation(tape.add(tape.matmul(nodes.w1, x), nodes.b1),
                                 model.activation);
  return tape.add(tape.matmul(nodes.w2, h), nodes.b2);
}

Vector fixed_rep_forward(const FixedRepModel& model, const Word& w) {
  Tape tape;
  const auto nodes = feed_fixed_rep(tape, model);
  return tape.value(fixed_rep_forward_nodes(tape, model, nodes, w)).col(0);
}

// ---------------------------------------------------------------------------

std::string model_kind(const AnyModel& m) {
  return std::visit(
      [](const auto& model) -> std::string {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, MatrixNetModel>) return "matrixnet";
        if constexpr (std::is_same_v<T, MlpBaselineModel>) return "mlp";
        if constexpr (std::is_same_v<T, FixedRepModel>) return "fixed_rep";
      },
      m);
}

TaskKind model_task(const AnyModel& m) {
  return std::visit([](const auto& model) { return model.task; }, m);
}

int model_outputs(const AnyModel& m) {
  return std::visit([](const auto& model) { return model.outputs; }, m);
}

const GroupPresentation& model_presentation(const AnyModel& m) {
  return std::visit(
      [](const auto& model) -> const GroupPresentation& {
        return model.presentation;
      },
      m);
}

std::vector<ParamRef> model_params(AnyModel& m) {
  std::vector<ParamRef> out;
  std::visit(
      [&out](auto& model) {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, MatrixNetModel>) {
          switch (model.block.variant) {
            case BlockVariant::Base:
              out.push_back({"W", &model.block_w[0]});
              break;
            case BlockVariant::LN:
            case BlockVariant::NL:
              out.push_back({"W1", &model.block_w[0]});
              out.push_back({"W2", &model.block_w[1]});
              break;
            case BlockVariant::MC:
              for (std::size_t c = 0; c < model.block_w.size(); ++c) {
                out.push_back({"W_c" + std::to_string(c), &model.block_w[c]});
              }
              break;
          }
          out.push_back({"head_W1", &model.head_w1});
          out.push_back({"head_b1", &model.head_b1});
          out.push_back({"head_W2", &model.head_w2});
          out.push_back({"head_b2", &model.head_b2});
        } else if constexpr (std::is_same_v<T, MlpBaselineModel>) {
          out.push_back({"W1", &model.w1});
          out.push_back({"b1", &model.b1});
          out.push_back({"W2", &model.w2});
          out.push_back({"b2", &model.b2});
          out.push_back({"W3", &model.w3});
          out.push_back({"b3", &model.b3});
        } else {
          out.push_back({"W1", &model.w1});
          out.push_back({"b1", &model.b1});
          out.push_back({"W2", &model.w2});
          out.push_back({"b2", &model.b2});
        }
      },
      m);
  return out;
}

std::vector<std::pair<std::string, const Matrix*>> model_named_params(
    const AnyModel& m) {
  // Read-only view over the same canonical order.
  auto refs = model_params(const_cast<AnyModel&>(m));
  std::vector<std::pair<std::string, const Matrix*>> out;
  out.reserve(refs.size());
  for (const ParamRef& r : refs) out.emplace_back(r.name, r.value);
  return out;
}

BoundModel::BoundModel(Tape& tape, const AnyModel& model)
    : tape_(&tape), model_(&model) {
  const auto named = model_named_params(model);
  param_ids_.reserve(named.size());
  for (const auto& [name, value] : named) {
    param_ids_.push_back(tape.input(*value));
  }
  std::visit(
      [this](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        std::size_t i = 0;
        auto next = [this, &i] { return param_ids_[i++]; };
        if constexpr (std::is_same_v<T, MatrixNetModel>) {
          MatrixNetNodes n;
          for (std::size_t c = 0; c < m.block_w.size(); ++c) {
            n.block_w.push_back(next());
          }
          n.head_w1 = next();
          n.head_b1 = next();
          n.head_w2 = next();
          n.head_b2 = next();
          nodes_ = n;
        } else if constexpr (std::is_same_v<T, MlpBaselineModel>) {
          MlpBaselineNodes n;
          n.w1 = next();
          n.b1 = next();
          n.w2 = next();
          n.b2 = next();
          n.w3 = next();
          n.b3 = next();
          nodes_ = n;
        } else {
          FixedRepNodes n;
          n.w1 = next();
          n.b1 = next();
          n.w2 = next();
          n.b2 = next();
          nodes_ = n;
        }
      },
      model);
}

Tape::NodeId BoundModel::forward(const Word& w) {
  return std::visit(
      [&](const auto& m) -> Tape::NodeId {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MatrixNetModel>) {
          return forward_nodes(*tape_, m, std::get<MatrixNetNodes>(nodes_),
                               cache_, w);
        } else if constexpr (std::is_same_v<T, MlpBaselineModel>) {
          return mlp_baseline_forward_nodes(
              *tape_, m, std::get<MlpBaselineNodes>(nodes_), w);
        } else {
          return fixed_rep_forward_nodes(*tape_, m,
                                         std::get<FixedRepNodes>(nodes_), w);
        }
      },
      *model_);
}

Tape::NodeId BoundModel::relation_loss(const RelationLossConfig& cfg) {
  if (const auto* m = std::get_if<MatrixNetModel>(model_)) {
    return relation_loss_nodes(*tape_, *m, std::get<MatrixNetNodes>(nodes_),
                               cache_, cfg);
  }
  return tape_->input(Matrix::Zero(1, 1));
}

}  // namespace grouprep
