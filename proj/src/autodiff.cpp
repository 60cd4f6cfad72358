#include "grouprep/autodiff.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cassert>
#include <cmath>
#include <cstdio>

#include "grouprep/rng.hpp"

namespace grouprep {

namespace {

std::string shape_str(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

Activation parse_activation(const std::string& name) {
  if (name == "linear") return Activation::Linear;
  if (name == "tanh") return Activation::Tanh;
  if (name == "silu") return Activation::Silu;
  if (name == "relu") return Activation::Relu;
  throw std::invalid_argument("unknown activation: " + name);
}

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::Linear: return "linear";
    case Activation::Tanh: return "tanh";
    case Activation::Silu: return "silu";
    case Activation::Relu: return "relu";
  }
  assert(false);
  return "";
}

bool is_odd_activation(Activation a) {
  return a == Activation::Linear || a == Activation::Tanh;
}

Matrix reshape_row_major(const Matrix& m, Eigen::Index rows,
                         Eigen::Index cols) {
  if (m.size() != rows * cols) {
    throw ShapeError("cannot reshape " + shape_str(m) + " into " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
  Matrix out(rows, cols);
  Eigen::Index flat = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j, ++flat) {
      out(flat / cols, flat % cols) = m(i, j);
    }
  }
  return out;
}

Tape::NodeId Tape::push(Node node, Matrix value) {
  // Non-finite forward values are a runtime condition (diverged training,
  // overflowing exponentials), not a programming error; callers such as the
  // training loop catch this and attach their own diagnostics.
  if (!value.allFinite()) {
    throw NumericalError("non-finite value produced at tape node " +
                         std::to_string(nodes_.size()));
  }
  const auto id = NodeId(nodes_.size());
  nodes_.push_back(std::move(node));
  if (values_.size() > std::size_t(id)) {
    values_[std::size_t(id)] = std::move(value);
  } else {
    values_.push_back(std::move(value));
  }
  return id;
}

Tape::NodeId Tape::input(Matrix value) {
  return push(Node{Op::Input, {}}, std::move(value));
}

Tape::NodeId Tape::matmul(NodeId a, NodeId b) {
  const Matrix& A = val(a);
  const Matrix& B = val(b);
  if (A.cols() != B.rows()) {
    throw ShapeError("matmul shape mismatch: " + shape_str(A) + " * " +
                     shape_str(B));
  }
  return push(Node{Op::MatMul, {a, b}}, A * B);
}

Tape::NodeId Tape::add(NodeId a, NodeId b) {
  const Matrix& A = val(a);
  const Matrix& B = val(b);
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw ShapeError("add shape mismatch: " + shape_str(A) + " + " +
                     shape_str(B));
  }
  return push(Node{Op::Add, {a, b}}, A + B);
}

Tape::NodeId Tape::sub(NodeId a, NodeId b) {
  const Matrix& A = val(a);
  const Matrix& B = val(b);
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw ShapeError("sub shape mismatch: " + shape_str(A) + " - " +
                     shape_str(B));
  }
  return push(Node{Op::Sub, {a, b}}, A - B);
}

Tape::NodeId Tape::scale(NodeId a, double factor) {
  Node node{Op::Scale, {a}};
  node.scalar = factor;
  return push(std::move(node), factor * val(a));
}

Tape::NodeId Tape::reshape(NodeId a, Eigen::Index rows, Eigen::Index cols) {
  return push(Node{Op::Reshape, {a}}, reshape_row_major(val(a), rows, cols));
}

Tape::NodeId Tape::reshape_to_square(NodeId a) {
  const Eigen::Index len = val(a).size();
  const auto n = Eigen::Index(std::llround(std::sqrt(double(len))));
  if (n * n != len) {
    throw ShapeError("reshape_to_square: length " + std::to_string(len) +
                     " is not a perfect square");
  }
  return reshape(a, n, n);
}

Tape::NodeId Tape::block_diag(const std::vector<NodeId>& blocks) {
  assert(!blocks.empty());
  Eigen::Index total = 0;
  for (NodeId b : blocks) {
    if (val(b).rows() != val(b).cols()) {
      throw ShapeError("block_diag needs square blocks, got " +
                       shape_str(val(b)));
    }
    total += val(b).rows();
  }
  Matrix out = Matrix::Zero(total, total);
  Eigen::Index off = 0;
  for (NodeId b : blocks) {
    const Eigen::Index n = val(b).rows();
    out.block(off, off, n, n) = val(b);
    off += n;
  }
  return push(Node{Op::BlockDiag, blocks}, std::move(out));
}

Tape::NodeId Tape::concat_rows(const std::vector<NodeId>& parts) {
  assert(!parts.empty());
  const Eigen::Index cols = val(parts[0]).cols();
  Eigen::Index total = 0;
  for (NodeId p : parts) {
    if (val(p).cols() != cols) {
      throw ShapeError("concat_rows column mismatch: " + shape_str(val(p)));
    }
    total += val(p).rows();
  }
  Matrix out(total, cols);
  Eigen::Index off = 0;
  for (NodeId p : parts) {
    out.middleRows(off, val(p).rows()) = val(p);
    off += val(p).rows();
  }
  return push(Node{Op::ConcatRows, parts}, std::move(out));
}

Tape::NodeId Tape::activation(NodeId a, Activation kind) {
  const Matrix& x = val(a);
  Matrix y;
  switch (kind) {
    case Activation::Linear:
      y = x;
      break;
    case Activation::Tanh:
      y = x.array().tanh();
      break;
    case Activation::Silu:
      y = x.unaryExpr([](double v) { return v * sigmoid(v); });
      break;
    case Activation::Relu:
      y = x.cwiseMax(0.0);
      break;
  }
  Node node{Op::Act, {a}};
  node.act = kind;
  return push(std::move(node), std::move(y));
}

Tape::NodeId Tape::matrix_exp(NodeId a) {
  const Matrix& A = val(a);
  if (A.rows() != A.cols()) {
    throw ShapeError("matrix_exp needs a square matrix, got " + shape_str(A));
  }
  // exp(0) = I must hold exactly: padding symbols and identity generators
  // rely on it, so the zero matrix bypasses the Pade kernel.
  Matrix E = A.isZero(0.0) ? Matrix(Matrix::Identity(A.rows(), A.cols()))
                           : Matrix(A.exp());
  return push(Node{Op::MatrixExp, {a}}, std::move(E));
}

Tape::NodeId Tape::softmax_cross_entropy(NodeId logits, int target_class) {
  const Matrix& l = val(logits);
  if (l.cols() != 1) {
    throw ShapeError("softmax_cross_entropy expects a column vector, got " +
                     shape_str(l));
  }
  if (target_class < 0 || target_class >= l.rows()) {
    throw std::out_of_range("target class " + std::to_string(target_class) +
                            " out of range for " + std::to_string(l.rows()) +
                            " logits");
  }
  const double m = l.maxCoeff();
  const double lse = m + std::log((l.array() - m).exp().sum());
  Node node{Op::SoftmaxCe, {logits}};
  node.scalar = double(target_class);
  Matrix out(1, 1);
  out(0, 0) = lse - l(target_class, 0);
  return push(std::move(node), std::move(out));
}

Tape::NodeId Tape::mse(NodeId prediction, const Matrix& target) {
  const Matrix& p = val(prediction);
  if (p.rows() != target.rows() || p.cols() != target.cols()) {
    throw ShapeError("mse shape mismatch: " + shape_str(p) + " vs " +
                     shape_str(target));
  }
  Node node{Op::Mse, {prediction}};
  node.aux = target;
  Matrix out(1, 1);
  out(0, 0) = (p - target).squaredNorm() / double(p.size());
  return push(std::move(node), std::move(out));
}

Tape::NodeId Tape::frobenius_norm(NodeId a) {
  Matrix out(1, 1);
  out(0, 0) = val(a).norm();
  return push(Node{Op::FrobNorm, {a}}, std::move(out));
}

const Matrix& Tape::value(NodeId id) const {
  assert(id >= 0 && std::size_t(id) < nodes_.size());
  return values_[std::size_t(id)];
}

const Matrix& Tape::grad(NodeId id) const {
  assert(id >= 0 && std::size_t(id) < grads_.size());
  return grads_[std::size_t(id)];
}

void Tape::backward(NodeId root) {
  assert(root >= 0 && std::size_t(root) < nodes_.size());
  assert(value(root).size() == 1 && "backward root must be a scalar");

  grads_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    grads_[i].resize(values_[i].rows(), values_[i].cols());
    grads_[i].setZero();
  }
  grads_[std::size_t(root)](0, 0) = 1.0;

  for (std::int64_t i = root; i >= 0; --i) {
    const Node& node = nodes_[std::size_t(i)];
    const Matrix& G = grads_[std::size_t(i)];
    switch (node.op) {
      case Op::Input:
        break;
      case Op::MatMul: {
        const NodeId a = node.inputs[0], b = node.inputs[1];
        grads_[std::size_t(a)].noalias() += G * val(b).transpose();
        grads_[std::size_t(b)].noalias() += val(a).transpose() * G;
        break;
      }
      case Op::Add:
        grads_[std::size_t(node.inputs[0])] += G;
        grads_[std::size_t(node.inputs[1])] += G;
        break;
      case Op::Sub:
        grads_[std::size_t(node.inputs[0])] += G;
        grads_[std::size_t(node.inputs[1])] -= G;
        break;
      case Op::Scale:
        grads_[std::size_t(node.inputs[0])] += node.scalar * G;
        break;
      case Op::Reshape: {
        const Matrix& in = val(node.inputs[0]);
        grads_[std::size_t(node.inputs[0])] +=
            reshape_row_major(G, in.rows(), in.cols());
        break;
      }
      case Op::BlockDiag: {
        Eigen::Index off = 0;
        for (NodeId b : node.inputs) {
          const Eigen::Index n = val(b).rows();
          grads_[std::size_t(b)] += G.block(off, off, n, n);
          off += n;
        }
        break;
      }
      case Op::ConcatRows: {
        Eigen::Index off = 0;
        for (NodeId p : node.inputs) {
          const Eigen::Index r = val(p).rows();
          grads_[std::size_t(p)] += G.middleRows(off, r);
          off += r;
        }
        break;
      }
      case Op::Act: {
        const Matrix& x = val(node.inputs[0]);
        const Matrix& y = values_[std::size_t(i)];
        Matrix d;
        switch (node.act) {
          case Activation::Linear:
            d = Matrix::Ones(x.rows(), x.cols());
            break;
          case Activation::Tanh:
            d = 1.0 - y.array().square();
            break;
          case Activation::Silu:
            d = x.unaryExpr([](double v) {
              const double s = sigmoid(v);
              return s * (1.0 + v * (1.0 - s));
            });
            break;
          case Activation::Relu:
            d = (x.array() > 0.0).cast<double>();
            break;
        }
        grads_[std::size_t(node.inputs[0])] += d.cwiseProduct(G);
        break;
      }
      case Op::MatrixExp: {
        // Frechet derivative of exp at A^T applied to G: embed in the
        // doubled block matrix and exponentiate once.
        const Matrix& A = val(node.inputs[0]);
        const Eigen::Index n = A.rows();
        if (!G.isZero(0.0)) {
          Matrix block = Matrix::Zero(2 * n, 2 * n);
          block.topLeftCorner(n, n) = A.transpose();
          block.bottomRightCorner(n, n) = A.transpose();
          block.topRightCorner(n, n) = G;
          Matrix eb = block.exp();
          grads_[std::size_t(node.inputs[0])] += eb.topRightCorner(n, n);
        }
        break;
      }
      case Op::SoftmaxCe: {
        const Matrix& l = val(node.inputs[0]);
        const double m = l.maxCoeff();
        Matrix p = (l.array() - m).exp();
        p /= p.sum();
        p(Eigen::Index(node.scalar), 0) -= 1.0;
        grads_[std::size_t(node.inputs[0])] += G(0, 0) * p;
        break;
      }
      case Op::Mse: {
        const Matrix& p = val(node.inputs[0]);
        grads_[std::size_t(node.inputs[0])] +=
            (2.0 * G(0, 0) / double(p.size())) * (p - node.aux);
        break;
      }
      case Op::FrobNorm: {
        // Subgradient 0 at the origin; the norm is not differentiable there.
        const double norm = values_[std::size_t(i)](0, 0);
        if (norm > 0.0) {
          grads_[std::size_t(node.inputs[0])] +=
              (G(0, 0) / norm) * val(node.inputs[0]);
        }
        break;
      }
    }
  }
}

void Tape::reset() { nodes_.clear(); }

// ---------------------------------------------------------------------------

AdamState make_adam(const std::vector<Matrix>& params, double learning_rate) {
  AdamState state;
  state.learning_rate = learning_rate;
  state.first_moment.reserve(params.size());
  state.second_moment.reserve(params.size());
  for (const Matrix& p : params) {
    state.first_moment.push_back(Matrix::Zero(p.rows(), p.cols()));
    state.second_moment.push_back(Matrix::Zero(p.rows(), p.cols()));
  }
  return state;
}

void adam_step(std::vector<Matrix>& params, const std::vector<Matrix>& grads,
               AdamState& state) {
  assert(params.size() == grads.size());
  assert(params.size() == state.first_moment.size());
  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, double(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, double(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Matrix& g = grads[i];
    Matrix& m = state.first_moment[i];
    Matrix& v = state.second_moment[i];
    assert(g.rows() == params[i].rows() && g.cols() == params[i].cols());
    m = state.beta1 * m + (1.0 - state.beta1) * g;
    v = state.beta2 * v.array() + (1.0 - state.beta2) * g.array().square();
    const Matrix m_hat = m / bc1;
    const Matrix v_hat = v / bc2;
    params[i].array() -=
        state.learning_rate * m_hat.array() /
        (v_hat.array().sqrt() + state.epsilon);
  }
}

Matrix glorot_uniform(Eigen::Index rows, Eigen::Index cols,
                      std::mt19937_64& rng) {
  const double a = std::sqrt(6.0 / double(rows + cols));
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out(i, j) = uniform_symmetric(rng, a);
    }
  }
  return out;
}

}  // namespace grouprep
