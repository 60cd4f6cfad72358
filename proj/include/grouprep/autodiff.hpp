#pragma once

// Reverse-mode automatic differentiation over dense float64 matrices.
//
// A Tape owns the computation graph.  Every operation appends a record and
// eagerly computes its forward value; backward(root) seeds the root (a 1x1
// scalar) with gradient 1 and revisits the records in reverse execution
// order, accumulating adjoints into every node.  Parameters live outside the
// tape as plain matrices: a training step feeds them in as inputs, reads
// their gradients back out after backward(), and applies an Adam update.
//
// The op set is exactly what a matrix-valued sequence model needs: matrix
// products, elementwise activations, row-major reshapes, block-diagonal
// assembly, a differentiable matrix exponential, and three scalar losses.

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace grouprep {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a forward value goes non-finite (overflow, diverged weights).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

enum class Activation { Linear, Tanh, Silu, Relu };

Activation parse_activation(const std::string& name);
std::string activation_name(Activation a);

// True for activations with f(-x) = -f(x); products built from odd
// activations represent inverses exactly, so model validation cares.
bool is_odd_activation(Activation a);

// Eigen stores column-major; all flattening in this project (reshapes,
// checkpoints, word-vector layouts) is row-major, so the conversion lives in
// one place.  The element count must match exactly.
Matrix reshape_row_major(const Matrix& m, Eigen::Index rows, Eigen::Index cols);

class Tape {
 public:
  using NodeId = std::int32_t;

  // Leaf holding a caller-supplied value (parameter or constant).
  NodeId input(Matrix value);

  NodeId matmul(NodeId a, NodeId b);
  NodeId add(NodeId a, NodeId b);
  NodeId sub(NodeId a, NodeId b);
  NodeId scale(NodeId a, double factor);

  // Row-major reshape; backward restores the input shape the same way.
  NodeId reshape(NodeId a, Eigen::Index rows, Eigen::Index cols);
  // reshape of a flat n^2-entry column vector into n x n.
  NodeId reshape_to_square(NodeId a);

  NodeId block_diag(const std::vector<NodeId>& blocks);
  NodeId concat_rows(const std::vector<NodeId>& parts);
  NodeId activation(NodeId a, Activation kind);

  // Scaling-and-squaring Pade exponential (exact identity on the zero
  // matrix).  Backward maps the output adjoint G to the Frechet derivative
  // of exp at A^T in direction G, read off the top-right block of
  // exp([[A^T, G], [0, A^T]]).
  NodeId matrix_exp(NodeId a);

  // Losses produce 1x1 nodes suitable as backward() roots.
  NodeId softmax_cross_entropy(NodeId logits, int target_class);
  NodeId mse(NodeId prediction, const Matrix& target);
  NodeId frobenius_norm(NodeId a);

  const Matrix& value(NodeId id) const;
  // Valid after backward(); zero for nodes the root does not depend on.
  const Matrix& grad(NodeId id) const;

  void backward(NodeId root);

  // Drops all records but keeps allocations so a training loop can rebuild
  // the same-shaped graph each batch without reallocating.
  void reset();
  std::size_t size() const { return nodes_.size(); }

 private:
  enum class Op {
    Input,
    MatMul,
    Add,
    Sub,
    Scale,
    Reshape,
    BlockDiag,
    ConcatRows,
    Act,
    MatrixExp,
    SoftmaxCe,
    Mse,
    FrobNorm,
  };

  struct Node {
    Op op;
    std::vector<NodeId> inputs;
    double scalar = 0.0;  // Scale factor / SoftmaxCe target class
    Activation act = Activation::Linear;
    Matrix aux;  // Mse target
  };

  NodeId push(Node node, Matrix value);
  const Matrix& val(NodeId id) const { return values_[std::size_t(id)]; }

  std::vector<Node> nodes_;
  std::vector<Matrix> values_;
  std::vector<Matrix> grads_;
};

// ---------------------------------------------------------------------------
// Optimizer

struct AdamState {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  long long step = 0;
  std::vector<Matrix> first_moment;
  std::vector<Matrix> second_moment;
};

AdamState make_adam(const std::vector<Matrix>& params, double learning_rate);

// Standard bias-corrected Adam update, elementwise over each parameter.
void adam_step(std::vector<Matrix>& params, const std::vector<Matrix>& grads,
               AdamState& state);

// i.i.d. uniform on [-a, a] with a = sqrt(6 / (fan_in + fan_out)), filled in
// row-major order so the draw sequence is part of the determinism contract.
Matrix glorot_uniform(Eigen::Index rows, Eigen::Index cols,
                      std::mt19937_64& rng);

}  // namespace grouprep
