#pragma once

// Learned matrix representations of finitely generated groups.
//
// A matrix block maps a generator's signed one-hot vector v_g through a
// learnable map to a square matrix A and exponentiates: M_g = exp(A).  Words
// map to ordered products of generator matrices, so the model is a free-group
// homomorphism by construction: inverses hit exp(-A) exactly (the
// pre-exponential map is odd in v_g) and the identity symbol hits exp(0) = I.
// Group relations beyond the free ones are encouraged by an auxiliary
// relation loss.  A small MLP head maps the flattened representation to task
// outputs.
//
// Block variants:
//   Base  A = reshape(W v_g)
//   LN    A = reshape(W2 W1 v_g)          (two linear factors, no bias)
//   NL    A = reshape(W2 f(W1 v_g))       (f elementwise, odd unless the
//                                          generators are self-inverse)
//   MC    per-channel A_j = reshape(W_j v_g), block-diagonal overall
//
// Two reference baselines share the head machinery: a padded one-hot MLP and
// a frozen permutation-matrix representation followed by a classifier.

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "grouprep/autodiff.hpp"
#include "grouprep/perm.hpp"
#include "grouprep/word.hpp"

namespace grouprep {

enum class BlockVariant { Base, LN, NL, MC };

BlockVariant parse_variant(const std::string& name);
std::string variant_name(BlockVariant v);

enum class TaskKind { Classification, Regression };

TaskKind parse_task(const std::string& name);
std::string task_name(TaskKind t);

struct MatrixBlockConfig {
  BlockVariant variant = BlockVariant::Base;
  int matrix_dim = 0;   // n: per-channel square size
  int channels = 1;     // >= 2 only for MC
  int hidden_dim = 0;   // LN/NL inner width
  Activation activation = Activation::Linear;  // NL's f
};

struct HeadConfig {
  int hidden_dim = 128;
  Activation activation = Activation::Relu;
};

// Family-tuned defaults; every field can be overridden before make_matrixnet.
MatrixBlockConfig default_block_config(const Family& family, BlockVariant v);
HeadConfig default_head_config(const Family& family);

struct MatrixNetModel {
  GroupPresentation presentation;
  MatrixBlockConfig block;
  HeadConfig head;
  TaskKind task = TaskKind::Classification;
  int outputs = 0;

  // Base: {W (n^2 x g)}.  LN/NL: {W1 (hidden x g), W2 (n^2 x hidden)}.
  // MC: one W_j (n^2 x g) per channel.
  std::vector<Matrix> block_w;
  Matrix head_w1, head_b1, head_w2, head_b2;

  int rep_width() const { return block.channels * block.matrix_dim * block.matrix_dim; }
};

// Validates the config (odd activation where required, channel counts) and
// initializes parameters; weight draws are uniform with fan-based bounds,
// biases start at zero.  Deterministic in the seed.
MatrixNetModel make_matrixnet(const GroupPresentation& pres,
                              const MatrixBlockConfig& block,
                              const HeadConfig& head, TaskKind task,
                              int outputs, std::uint64_t seed);

struct RelationLossConfig {
  std::vector<Word> relation_words;
  int apply_every = 10;
  double weight = 1.0;
};

// The family's defining relations; for braid groups the first relation word
// is accompanied by its formal inverse word.
RelationLossConfig default_relation_loss(const GroupPresentation& pres);

// ---------------------------------------------------------------------------
// Tape builders.  Training feeds parameters once per tape, then builds
// per-sample subgraphs that share the fed nodes (and, via GeneratorCache,
// share each generator's exponential).

struct MatrixNetNodes {
  std::vector<Tape::NodeId> block_w;
  Tape::NodeId head_w1, head_b1, head_w2, head_b2;
};

// Per-tape memo: signed symbol encoding (+k / -k) -> per-channel M nodes.
using GeneratorCache = std::map<int, std::vector<Tape::NodeId>>;

MatrixNetNodes feed_matrixnet(Tape& tape, const MatrixNetModel& model);

// Per-channel pre-exponential A nodes for one generator symbol.
std::vector<Tape::NodeId> generator_pre_exp_nodes(Tape& tape,
                                                  const MatrixNetModel& model,
                                                  const MatrixNetNodes& nodes,
                                                  SignedGen g);

// Per-channel M = exp(A) nodes; identity symbols produce exact identities.
std::vector<Tape::NodeId> generator_matrix_nodes(Tape& tape,
                                                 const MatrixNetModel& model,
                                                 const MatrixNetNodes& nodes,
                                                 SignedGen g);

// Ordered product over the word per channel; the first symbol is the leftmost
// factor.  Identity symbols are skipped (their matrix is exactly I), which
// makes identity padding free.  The empty word yields identity nodes.
std::vector<Tape::NodeId> represent_word_nodes(Tape& tape,
                                               const MatrixNetModel& model,
                                               const MatrixNetNodes& nodes,
                                               GeneratorCache& cache,
                                               const Word& w);

// Head over the row-major-flattened, channel-concatenated representation.
Tape::NodeId forward_nodes(Tape& tape, const MatrixNetModel& model,
                           const MatrixNetNodes& nodes, GeneratorCache& cache,
                           const Word& w);

// weight * sum over relation words and channels of ||M_r - I||_F.
Tape::NodeId relation_loss_nodes(Tape& tape, const MatrixNetModel& model,
                                 const MatrixNetNodes& nodes,
                                 GeneratorCache& cache,
                                 const RelationLossConfig& cfg);

// ---------------------------------------------------------------------------
// Convenience evaluation (fresh tape per call).

std::vector<Matrix> generator_matrix(const MatrixNetModel& model, SignedGen g);
std::vector<Matrix> represent_word(const MatrixNetModel& model, const Word& w);
Vector forward(const MatrixNetModel& model, const Word& w);
double relation_loss(const MatrixNetModel& model, const RelationLossConfig& cfg);

// Frobenius distance between the represented sides of the braid relation
// s1 s2 s1 = s2 s1 s2, and the reference distance between the inequivalent
// words s1 s1 s2 and s2 s2 s1.  Braid presentations with at least three
// strands only.  The aggregate is the norm over all channels.
double relational_error(const MatrixNetModel& model);
double non_relational_difference(const MatrixNetModel& model);
std::vector<double> relational_error_per_channel(const MatrixNetModel& model);
std::vector<double> non_relational_difference_per_channel(
    const MatrixNetModel& model);

// ---------------------------------------------------------------------------
// Baseline 1: 3-layer MLP over the padded signed one-hot word encoding.

struct MlpBaselineModel {
  GroupPresentation presentation;
  TaskKind task = TaskKind::Classification;
  int outputs = 0;
  int max_len = 0;
  int hidden_dim = 128;
  Activation activation = Activation::Relu;
  Matrix w1, b1, w2, b2, w3, b3;
};

MlpBaselineModel make_mlp_baseline(const GroupPresentation& pres,
                                   TaskKind task, int outputs, int max_len,
                                   int hidden_dim, Activation act,
                                   std::uint64_t seed);

// (max_len * num_generators) x 1 column: the word's signed one-hot rows in
// order, zero rows for identity symbols and padding.  Overlength -> error.
Matrix encode_word_padded(const GroupPresentation& pres, const Word& w,
                          int max_len);

struct MlpBaselineNodes {
  Tape::NodeId w1, b1, w2, b2, w3, b3;
};

MlpBaselineNodes feed_mlp_baseline(Tape& tape, const MlpBaselineModel& model);
Tape::NodeId mlp_baseline_forward_nodes(Tape& tape,
                                        const MlpBaselineModel& model,
                                        const MlpBaselineNodes& nodes,
                                        const Word& w);
Vector mlp_baseline_forward(const MlpBaselineModel& model, const Word& w);

// ---------------------------------------------------------------------------
// Baseline 2: frozen permutation-matrix representation + 2-layer classifier.

struct FixedRepModel {
  GroupPresentation presentation;  // symmetric families only
  TaskKind task = TaskKind::Classification;
  int outputs = 0;
  int hidden_dim = 256;
  Activation activation = Activation::Silu;
  Matrix w1, b1, w2, b2;
};

FixedRepModel make_fixed_rep(const GroupPresentation& pres, int outputs,
                             int hidden_dim, Activation act,
                             std::uint64_t seed);

// n x n matrix with entry (p(j), j) = 1.
Matrix permutation_matrix(const Permutation& p);

struct FixedRepNodes {
  Tape::NodeId w1, b1, w2, b2;
};

FixedRepNodes feed_fixed_rep(Tape& tape, const FixedRepModel& model);
Tape::NodeId fixed_rep_forward_nodes(Tape& tape, const FixedRepModel& model,
                                     const FixedRepNodes& nodes,
                                     const Word& w);
Vector fixed_rep_forward(const FixedRepModel& model, const Word& w);

// ---------------------------------------------------------------------------
// Uniform wrapper so the training harness and checkpoints handle all three
// model kinds through one interface.

using AnyModel = std::variant<MatrixNetModel, MlpBaselineModel, FixedRepModel>;

std::string model_kind(const AnyModel& m);
TaskKind model_task(const AnyModel& m);
int model_outputs(const AnyModel& m);
const GroupPresentation& model_presentation(const AnyModel& m);

struct ParamRef {
  std::string name;
  Matrix* value;
};

// Named parameters in canonical (checkpoint) order.
std::vector<ParamRef> model_params(AnyModel& m);
std::vector<std::pair<std::string, const Matrix*>> model_named_params(
    const AnyModel& m);

// Feeds every parameter into the tape and answers per-word forwards that
// share the fed nodes.  param_ids aligns with model_params order.
class BoundModel {
 public:
  BoundModel(Tape& tape, const AnyModel& model);

  Tape::NodeId forward(const Word& w);
  // Zero node unless the model is a MatrixNet.
  Tape::NodeId relation_loss(const RelationLossConfig& cfg);

  const std::vector<Tape::NodeId>& param_ids() const { return param_ids_; }

 private:
  Tape* tape_;
  const AnyModel* model_;
  std::vector<Tape::NodeId> param_ids_;
  std::variant<MatrixNetNodes, MlpBaselineNodes, FixedRepNodes> nodes_;
  GeneratorCache cache_;
};

}  // namespace grouprep
