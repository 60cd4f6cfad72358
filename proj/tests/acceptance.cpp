// End-to-end acceptance gate.  Each numbered check prints exactly one
// PASS/FAIL line; the process exits nonzero if any check fails.
//
// Checks 1-4 are exact property suites over the representation layer, the
// autodiff engine, the categorical labeler, and the order oracle.  Checks 5-9
// are desk-scale quantitative reproductions: real training runs whose medians
// over three seeds must clear pinned thresholds.  The braid budgets are fixed
// in optimizer steps rather than epochs so they do not shrink with the
// desk-scale corpus; see kBraidSteps below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "grouprep/autodiff.hpp"
#include "grouprep/dataset.hpp"
#include "grouprep/export.hpp"
#include "grouprep/matrixnet.hpp"
#include "grouprep/perm.hpp"
#include "grouprep/rng.hpp"
#include "grouprep/train.hpp"
#include "grouprep/word.hpp"
#include "grouprep/zigzag.hpp"

using namespace grouprep;

namespace {

// ---------------------------------------------------------------------------
// Pinned tolerances and budgets.

constexpr double kEmptyWordTol = 0.0;      // M_empty must be exactly I
constexpr double kProductTol = 1e-8;       // ||M_uv - M_u M_v||_F
constexpr double kInverseTol = 1e-6;       // ||M_u' - M_u^{-1}||_F
constexpr double kFdTol = 1e-5;            // autodiff vs central differences
constexpr double kBraidAccuracy = 0.99;    // check 5 rounded accuracy
constexpr double kBraidMse = 0.01;         // check 5 test MSE
constexpr double kRelRatio = 0.1;          // check 6 rel / non-rel ratio
constexpr double kExtrapAccuracy = 0.90;   // check 7, lengths 7 and 8
constexpr double kOrderAccuracy = 0.95;    // check 8 MatrixNet-NL accuracy
constexpr double kBaselineGap = 0.02;      // check 8 margin over fixed rep
constexpr double kPairRatio = 0.05;        // check 9 ||dM||_F / ||M||_F

// Braid optimization budget in Adam steps.  Fixing steps (not epochs) keeps
// the amount of optimization independent of how many words the small corpus
// contains; epochs are derived per run as ceil(steps / batches-per-epoch).
constexpr long long kBraidSteps = 22500;   // checks 5/6/9 (and 7's models)
// The order task trains for a fixed epoch count at the default optimizer
// settings; its corpus size is part of the protocol, so no step conversion.
constexpr int kOrderEpochs = 50;           // check 8, both models
constexpr int kSeeds[3] = {1, 2, 3};
constexpr std::uint64_t kSplitSeed = 2026;  // one fixed split for all models

// Wall-clock limits that are part of the property checks.
constexpr double kRepSuiteBudgetSec = 10.0;
constexpr double kFdSuiteBudgetSec = 30.0;
constexpr double kCategoricalBudgetSec = 120.0;
constexpr double kOrderSuiteBudgetSec = 60.0;

// ---------------------------------------------------------------------------

struct Outcome {
  bool pass = false;
  std::string details;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(const char* pattern, ...) {
  va_list args;
  va_start(args, pattern);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

void progress(const std::string& line) {
  std::fprintf(stderr, "  [%s]\n", line.c_str());
}

double median3(double a, double b, double c) {
  std::vector<double> v{a, b, c};
  std::sort(v.begin(), v.end());
  return v[1];
}

// ---------------------------------------------------------------------------
// Check 1: the representation layer is a free-group homomorphism for every
// block variant: empty word -> exact identity, products multiply, inverse
// words invert, at random parameters on 100 random words of length <= 8.

Matrix channel_product(const std::vector<Matrix>& a,
                       const std::vector<Matrix>& b, std::size_t ch) {
  return a[ch] * b[ch];
}

Outcome check_representation_properties() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pres = presentation_from_name("B3");
  std::mt19937_64 rng(20260101);

  double worst_product = 0.0, worst_inverse = 0.0;
  int checked = 0;
  for (const BlockVariant variant :
       {BlockVariant::Base, BlockVariant::LN, BlockVariant::NL,
        BlockVariant::MC}) {
    const auto block = default_block_config(pres.family, variant);
    const auto model =
        make_matrixnet(pres, block, default_head_config(pres.family),
                       TaskKind::Regression, 3, rng());

    // Exact identity on the empty word, every channel.
    for (const Matrix& m : represent_word(model, Word{})) {
      const Matrix eye = Matrix::Identity(m.rows(), m.cols());
      if (!(m == eye)) {
        return {false, fmt("variant %s: empty word is not exactly identity",
                           variant_name(variant).c_str())};
      }
    }

    for (int trial = 0; trial < 100; ++trial) {
      const int lu = static_cast<int>(uniform_index(rng, 9));  // 0..8
      const int lv = static_cast<int>(uniform_index(rng, 9));
      const Word u = sample_word(2, lu, true, true, rng);
      const Word v = sample_word(2, lv, true, true, rng);
      Word uv = u;
      for (const auto& s : v.symbols) uv.symbols.push_back(s);

      const auto mu = represent_word(model, u);
      const auto mv = represent_word(model, v);
      const auto muv = represent_word(model, uv);
      const auto mui = represent_word(model, inverse_word(u));
      for (std::size_t ch = 0; ch < mu.size(); ++ch) {
        worst_product = std::max(
            worst_product, (muv[ch] - channel_product(mu, mv, ch)).norm());
        worst_inverse =
            std::max(worst_inverse, (mui[ch] - mu[ch].inverse()).norm());
      }
      ++checked;
    }
  }

  const double elapsed = seconds_since(t0);
  const bool pass = worst_product < kProductTol &&
                    worst_inverse < kInverseTol &&
                    elapsed < kRepSuiteBudgetSec;
  return {pass,
          fmt("4 variants x %d word pairs: max ||M_uv - M_u M_v|| = %.2e "
              "(< %.0e), max ||M_u' - M_u^-1|| = %.2e (< %.0e), %.1fs",
              checked / 4, worst_product, kProductTol, worst_inverse,
              kInverseTol, elapsed)};
}

// ---------------------------------------------------------------------------
// Check 2: every differentiable tape operation matches central finite
// differences within 1e-5 relative error.

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows,
                     Eigen::Index cols, double scale = 1.0) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = uniform_symmetric(rng, scale);
  return m;
}

Matrix fd_gradient(const std::function<double(const Matrix&)>& f,
                   const Matrix& x, double h = 1e-5) {
  Matrix g(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      Matrix xp = x, xm = x;
      xp(i, j) += h;
      xm(i, j) -= h;
      g(i, j) = (f(xp) - f(xm)) / (2.0 * h);
    }
  }
  return g;
}

double rel_diff(const Matrix& got, const Matrix& want) {
  const double denom = std::max(1.0, want.cwiseAbs().maxCoeff());
  return (got - want).cwiseAbs().maxCoeff() / denom;
}

// Differentiates `build` at input x and compares against finite differences
// of the same program.  Returns the relative mismatch.
double gradient_mismatch(
    const std::function<Tape::NodeId(Tape&, Tape::NodeId)>& build,
    const Matrix& x) {
  Tape tape;
  const auto xid = tape.input(x);
  const auto root = build(tape, xid);
  tape.backward(root);
  const Matrix ad = tape.grad(xid);
  const Matrix fd = fd_gradient(
      [&](const Matrix& xv) {
        Tape t;
        return t.value(build(t, t.input(xv)))(0, 0);
      },
      x);
  return rel_diff(ad, fd);
}

Outcome check_autodiff_vs_finite_differences() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7041776);

  std::vector<std::pair<std::string, double>> results;
  const auto record =
      [&](const std::string& name,
          const std::function<Tape::NodeId(Tape&, Tape::NodeId)>& build,
          const Matrix& x) {
        results.emplace_back(name, gradient_mismatch(build, x));
      };

  // Binary ops, both operand positions.
  const Matrix a34 = random_matrix(rng, 3, 4);
  const Matrix b42 = random_matrix(rng, 4, 2);
  record("matmul-lhs",
         [&](Tape& t, Tape::NodeId x) {
           return t.frobenius_norm(t.matmul(x, t.input(b42)));
         },
         a34);
  record("matmul-rhs",
         [&](Tape& t, Tape::NodeId x) {
           return t.frobenius_norm(t.matmul(t.input(a34), x));
         },
         b42);
  const Matrix c34 = random_matrix(rng, 3, 4);
  record("add",
         [&](Tape& t, Tape::NodeId x) {
           return t.frobenius_norm(t.add(x, t.input(c34)));
         },
         a34);
  record("sub",
         [&](Tape& t, Tape::NodeId x) {
           return t.frobenius_norm(t.sub(t.input(c34), x));
         },
         a34);
  record("scale",
         [&](Tape& t, Tape::NodeId x) {
           return t.frobenius_norm(t.scale(x, -1.7));
         },
         a34);

  // Shape ops composed with a fixed mixing matmul so the gradient is not a
  // trivial pattern.
  const Matrix mix26 = random_matrix(rng, 2, 6);
  record("reshape",
         [&](Tape& t, Tape::NodeId x) {
           return t.frobenius_norm(t.matmul(t.input(mix26), t.reshape(x, 6, 2)));
         },
         random_matrix(rng, 3, 4));
  const Matrix mix4 = random_matrix(rng, 4, 4);
  record("reshape_to_square",
         [&](Tape& t, Tape::NodeId x) {
           return t.frobenius_norm(t.matmul(t.input(mix4), t.reshape_to_square(x)));
         },
         random_matrix(rng, 16, 1));
  // The companion blocks must be drawn outside the build lambdas: the
  // finite-difference probe rebuilds the tape many times and needs to see
  // the same function every time.
  const Matrix mix5 = random_matrix(rng, 5, 5);
  const Matrix other22 = random_matrix(rng, 2, 2);
  record("block_diag",
         [&](Tape& t, Tape::NodeId x) {
           return t.frobenius_norm(
               t.matmul(t.input(mix5), t.block_diag({x, t.input(other22)})));
         },
         random_matrix(rng, 3, 3));
  const Matrix mix35 = random_matrix(rng, 3, 5);
  const Matrix other32 = random_matrix(rng, 3, 2);
  record("concat_rows",
         [&](Tape& t, Tape::NodeId x) {
           return t.frobenius_norm(
               t.matmul(t.input(mix35), t.concat_rows({x, t.input(other32)})));
         },
         random_matrix(rng, 2, 2));

  for (const Activation act :
       {Activation::Linear, Activation::Relu, Activation::Tanh,
        Activation::Silu}) {
    record("activation-" + activation_name(act),
           [&, act](Tape& t, Tape::NodeId x) {
             return t.frobenius_norm(t.activation(x, act));
           },
           random_matrix(rng, 4, 3));
  }

  // Matrix exponential at a 5x5 argument with Frobenius norm <= 3.
  Matrix e5 = random_matrix(rng, 5, 5);
  e5 *= 3.0 / std::max(3.0, e5.norm());
  const Matrix mix55 = random_matrix(rng, 5, 5);
  record("matrix_exp",
         [&](Tape& t, Tape::NodeId x) {
           return t.frobenius_norm(t.matmul(t.input(mix55), t.matrix_exp(x)));
         },
         e5);

  // Losses are already scalar.
  record("softmax_cross_entropy",
         [&](Tape& t, Tape::NodeId x) {
           return t.softmax_cross_entropy(x, 2);
         },
         random_matrix(rng, 7, 1));
  const Matrix target = random_matrix(rng, 5, 1);
  record("mse",
         [&](Tape& t, Tape::NodeId x) { return t.mse(x, target); },
         random_matrix(rng, 5, 1));
  record("frobenius_norm",
         [&](Tape& t, Tape::NodeId x) { return t.frobenius_norm(x); },
         random_matrix(rng, 4, 4));

  double worst = 0.0;
  std::string worst_name = "-";
  for (const auto& [name, miss] : results) {
    if (miss > worst) {
      worst = miss;
      worst_name = name;
    }
  }
  const double elapsed = seconds_since(t0);
  const bool pass = worst < kFdTol && elapsed < kFdSuiteBudgetSec;
  return {pass, fmt("%zu op gradients, worst relative error %.2e (%s, < %.0e), %.1fs",
                    results.size(), worst, worst_name.c_str(), kFdTol, elapsed)};
}

// ---------------------------------------------------------------------------
// Check 3: the categorical engine.  Differentials square to zero at every
// intermediate complex; the multiplicity labels are invariant under the braid
// relation (prefix and suffix, every start vertex); a word followed by its
// inverse word lands back on the start object; hand-derived values hold.

void enumerate_words(int max_len, const std::function<void(const Word&)>& fn) {
  // Length-ordered enumeration over s1, s1', s2, s2'.
  std::vector<Word> frontier{Word{}};
  fn(frontier.front());
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int g = 1; g <= 2; ++g) {
        for (const int sign : {+1, -1}) {
          Word ext = w;
          ext.symbols.push_back(sign > 0 ? gen(g) : inv(g));
          fn(ext);
          next.push_back(std::move(ext));
        }
      }
    }
    frontier = std::move(next);
  }
}

Outcome check_categorical_engine() {
  const auto t0 = std::chrono::steady_clock::now();

  // d after d vanishes on every raw twist and every reduced complex reached
  // from any start object by any word of length <= 4.
  long long complexes_checked = 0;
  bool valid = true;
  enumerate_words(4, [&](const Word& w) {
    for (int j = 1; j <= 3 && valid; ++j) {
      Complex x = projective_object(j, 3);
      for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it) {
        try {
          x = twist(it->index, it->sign, x);
          x.check_valid();
          x = minimize(std::move(x));
          x.check_valid();
        } catch (const std::exception&) {
          valid = false;
          break;
        }
        complexes_checked += 2;
      }
    }
  });
  if (!valid) return {false, "a differential failed d(d(x)) = 0"};

  // Braid-relation invariance for every word of length <= 5, as a prefix and
  // as a suffix of both relation sides, from start vertices 1 and 2.
  const Word lhs = parse_word("s1 s2 s1");
  const Word rhs = parse_word("s2 s1 s2");
  long long invariance_pairs = 0;
  bool invariant = true;
  enumerate_words(5, [&](const Word& w) {
    if (!invariant) return;
    for (int j = 1; j <= 2 && invariant; ++j) {
      Word lw = lhs, rw = rhs, wl = w, wr = w;
      for (const auto& s : w.symbols) lw.symbols.push_back(s);
      for (const auto& s : w.symbols) rw.symbols.push_back(s);
      for (const auto& s : lhs.symbols) wl.symbols.push_back(s);
      for (const auto& s : rhs.symbols) wr.symbols.push_back(s);
      if (braid_word_label(lw, j, 3) != braid_word_label(rw, j, 3) ||
          braid_word_label(wl, j, 3) != braid_word_label(wr, j, 3)) {
        invariant = false;
      }
      invariance_pairs += 2;
    }
  });
  if (!invariant) {
    return {false, "a braid-relation pair produced different labels"};
  }

  // Inverse cancellation: w followed by its inverse word is the identity
  // functor, as complexes, for 100 random words of length <= 6.
  std::mt19937_64 rng(1846);
  for (int trial = 0; trial < 100; ++trial) {
    const int len = 1 + static_cast<int>(uniform_index(rng, 6));
    const Word w = sample_word(2, len, false, true, rng);
    Word cat = w;
    for (const auto& s : inverse_word(w).symbols) cat.symbols.push_back(s);
    const int j = 1 + static_cast<int>(uniform_index(rng, 3));
    if (summand_multiset(apply_braid_word(cat, j, 3)) !=
        summand_multiset(apply_braid_word(Word{}, j, 3))) {
      return {false, fmt("w * w^-1 is not the identity for %s from P_%d",
                         format_word(w).c_str(), j)};
    }
  }

  // Hand-derived twist values.
  const Word s1 = parse_word("s1");
  if (braid_word_label(s1, 1, 3) != JHVector{1, 0, 0} ||
      braid_word_label(s1, 2, 3) != JHVector{1, 1, 0} ||
      braid_word_label(s1, 3, 3) != JHVector{0, 0, 1}) {
    return {false, "a hand-derived twist value is wrong"};
  }

  const double elapsed = seconds_since(t0);
  return {elapsed < kCategoricalBudgetSec,
          fmt("%lld differentials, %lld relation pairs, 100 cancellations, "
              "3 hand values, %.1fs",
              complexes_checked, invariance_pairs, elapsed)};
}

// ---------------------------------------------------------------------------
// Check 4: the order oracle agrees with brute-force repeated composition for
// every generator word of length <= 6 in S5, and the achievable-order sets of
// S10 and S12 have the known sizes.

Outcome check_order_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pres = presentation_from_name("S5");

  long long words_checked = 0;
  std::vector<Word> frontier{Word{}};
  for (int len = 0; len <= 6; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      const Permutation p = word_to_perm(pres, w);
      Permutation acc(p.degree());
      long long brute = 1;
      acc = acc.compose(p);
      while (!acc.is_identity()) {
        acc = acc.compose(p);
        ++brute;
      }
      if (word_order(pres, w) != brute) {
        return {false, fmt("order mismatch on %s", format_word(w).c_str())};
      }
      ++words_checked;
      if (len < 6) {
        for (int g = 1; g <= 4; ++g) {
          Word ext = w;
          ext.symbols.push_back(gen(g));
          next.push_back(std::move(ext));
        }
      }
    }
    frontier = std::move(next);
  }

  const auto s10 = order_class_set(parse_family("S10"));
  const auto s12 = order_class_set(parse_family("S12"));
  const double elapsed = seconds_since(t0);
  const bool pass = s10.size() == 16 && s12.size() == 23 &&
                    elapsed < kOrderSuiteBudgetSec;
  return {pass,
          fmt("%lld words vs brute force, |orders(S10)| = %zu, "
              "|orders(S12)| = %zu, %.1fs",
              words_checked, s10.size(), s12.size(), elapsed)};
}

// ---------------------------------------------------------------------------
// Checks 5-9: desk-scale quantitative reproductions.  Check 5 trains the two
// layered block variants on the enumerated braid corpus and keeps the models;
// checks 6, 7, and 9 measure those same models.  Check 8 trains the learned
// and frozen representations on the order task.

struct BraidRun {
  MatrixNetModel model;
  MetricsRecord test;
};

struct BraidState {
  SplitResult split;
  std::vector<BraidRun> ln, nl;  // one entry per seed
} g_braid;

int epochs_for_steps(long long steps, std::size_t train_size, int batch_size) {
  const long long batches =
      (static_cast<long long>(train_size) + batch_size - 1) / batch_size;
  return static_cast<int>((steps + batches - 1) / batches);
}

Outcome check_braid_regression() {
  const auto pres = presentation_from_name("B3");
  const auto corpus = enumerate_braid_dataset(pres, 6, 1);
  g_braid.split = split_dataset(corpus, 0.6, 0.2, 0.2, kSplitSeed);
  const int epochs = epochs_for_steps(kBraidSteps, g_braid.split.train.size(), 128);

  for (const BlockVariant variant : {BlockVariant::LN, BlockVariant::NL}) {
    for (const int seed : kSeeds) {
      const auto block = default_block_config(pres.family, variant);
      const AnyModel init =
          make_matrixnet(pres, block, default_head_config(pres.family),
                         TaskKind::Regression, 3, static_cast<std::uint64_t>(seed));
      TrainConfig cfg;
      cfg.epochs = epochs;
      cfg.seed = static_cast<std::uint64_t>(seed);
      cfg.relation = default_relation_loss(pres);
      const auto t0 = std::chrono::steady_clock::now();
      const TrainResult result =
          train_model(init, g_braid.split.train, g_braid.split.val, cfg);
      const MetricsRecord test = evaluate(result.model, g_braid.split.test);
      auto& runs = variant == BlockVariant::LN ? g_braid.ln : g_braid.nl;
      runs.push_back({std::get<MatrixNetModel>(result.model), test});
      progress(fmt("%s seed %d: %d epochs, test mse %.2e, rounded acc %.4f, %.0fs",
                   variant_name(variant).c_str(), seed, epochs, test.loss,
                   test.rounded_accuracy, seconds_since(t0)));
    }
  }

  const double ln_acc = median3(g_braid.ln[0].test.rounded_accuracy,
                                g_braid.ln[1].test.rounded_accuracy,
                                g_braid.ln[2].test.rounded_accuracy);
  const double nl_acc = median3(g_braid.nl[0].test.rounded_accuracy,
                                g_braid.nl[1].test.rounded_accuracy,
                                g_braid.nl[2].test.rounded_accuracy);
  const double ln_mse = median3(g_braid.ln[0].test.loss, g_braid.ln[1].test.loss,
                                g_braid.ln[2].test.loss);
  const double nl_mse = median3(g_braid.nl[0].test.loss, g_braid.nl[1].test.loss,
                                g_braid.nl[2].test.loss);
  const bool pass = ln_acc >= kBraidAccuracy && nl_acc >= kBraidAccuracy &&
                    ln_mse <= kBraidMse && nl_mse <= kBraidMse;
  return {pass,
          fmt("median of 3 seeds at %lld steps - LN: acc %.4f, mse %.2e; "
              "NL: acc %.4f, mse %.2e (need acc >= %.2f, mse <= %.2f)",
              kBraidSteps, ln_acc, ln_mse, nl_acc, nl_mse, kBraidAccuracy,
              kBraidMse)};
}

Outcome check_relational_error() {
  if (g_braid.ln.size() != 3 || g_braid.nl.size() != 3) {
    return {false, "no trained models from the braid regression check"};
  }
  const auto ratio = [](const BraidRun& run) {
    return relational_error(run.model) / non_relational_difference(run.model);
  };
  const double ln = median3(ratio(g_braid.ln[0]), ratio(g_braid.ln[1]),
                            ratio(g_braid.ln[2]));
  const double nl = median3(ratio(g_braid.nl[0]), ratio(g_braid.nl[1]),
                            ratio(g_braid.nl[2]));
  return {ln < kRelRatio && nl < kRelRatio,
          fmt("median relational / non-relational ratio - LN: %.4f, NL: %.4f "
              "(need < %.1f)",
              ln, nl, kRelRatio)};
}

Outcome check_length_extrapolation() {
  if (g_braid.nl.size() != 3) {
    return {false, "no trained models from the braid regression check"};
  }
  const auto pres = presentation_from_name("B3");
  std::string detail;
  bool pass = true;
  for (const int len : {7, 8}) {
    const auto data =
        sample_braid_dataset(pres, 2000, len, 1, derive_seed(kSplitSeed, len));
    std::vector<double> accs;
    for (const BraidRun& run : g_braid.nl) {
      accs.push_back(evaluate(run.model, data).rounded_accuracy);
    }
    const double acc = median3(accs[0], accs[1], accs[2]);
    pass = pass && acc >= kExtrapAccuracy;
    detail += fmt("%slength %d: median rounded acc %.4f", len == 7 ? "" : "; ",
                  len, acc);
  }
  return {pass, detail + fmt(" (need >= %.2f at both lengths)", kExtrapAccuracy)};
}

Outcome check_order_prediction() {
  const auto pres = presentation_from_name("S8");
  const int outputs = static_cast<int>(order_class_set(pres.family).size());
  const auto corpus = gen_order_dataset(pres, 50000, 28, kSplitSeed);
  const auto split = split_dataset(corpus, 0.6, 0.2, 0.2, kSplitSeed);
  const int epochs = kOrderEpochs;

  std::vector<double> nl_accs, fixed_accs;
  for (const int seed : kSeeds) {
    const auto block = default_block_config(pres.family, BlockVariant::NL);
    const AnyModel init =
        make_matrixnet(pres, block, default_head_config(pres.family),
                       TaskKind::Classification, outputs,
                       static_cast<std::uint64_t>(seed));
    // No relation term here: the regularizer belongs to the braid protocol,
    // and on this family's 28 relation words it pins the representation at
    // the identity (majority-class accuracy) for any weight that matters.
    TrainConfig cfg;
    cfg.epochs = epochs;
    cfg.seed = static_cast<std::uint64_t>(seed);
    const auto t0 = std::chrono::steady_clock::now();
    const TrainResult result = train_model(init, split.train, split.val, cfg);
    const MetricsRecord test = evaluate(result.model, split.test);
    nl_accs.push_back(test.accuracy);
    progress(fmt("NL seed %d: %d epochs, test acc %.4f, %.0fs", seed, epochs,
                 test.accuracy, seconds_since(t0)));
  }
  for (const int seed : kSeeds) {
    const AnyModel init = make_fixed_rep(pres, outputs, 256, Activation::Silu,
                                         static_cast<std::uint64_t>(seed));
    TrainConfig cfg;
    cfg.epochs = epochs;
    cfg.seed = static_cast<std::uint64_t>(seed);
    const auto t0 = std::chrono::steady_clock::now();
    const TrainResult result = train_model(init, split.train, split.val, cfg);
    const MetricsRecord test = evaluate(result.model, split.test);
    fixed_accs.push_back(test.accuracy);
    progress(fmt("fixed-rep seed %d: %d epochs, test acc %.4f, %.0fs", seed,
                 epochs, test.accuracy, seconds_since(t0)));
  }

  const double nl = median3(nl_accs[0], nl_accs[1], nl_accs[2]);
  const double fixed = median3(fixed_accs[0], fixed_accs[1], fixed_accs[2]);
  const bool pass = nl >= kOrderAccuracy && nl - fixed >= kBaselineGap;
  return {pass,
          fmt("median test accuracy after %d epochs - NL: %.4f (need >= "
              "%.2f), fixed rep: %.4f (need NL ahead by >= %.2f)",
              epochs, nl, kOrderAccuracy, fixed, kBaselineGap)};
}

Outcome check_equivalent_word_matrices() {
  if (g_braid.ln.size() != 3 || g_braid.nl.size() != 3) {
    return {false, "no trained models from the braid regression check"};
  }
  const Word lhs = parse_word("s1 s2 s1");
  const Word rhs = parse_word("s2 s1 s2");
  const auto ratio = [&](const BraidRun& run) {
    const Matrix a = represented_matrix(run.model, lhs);
    const Matrix b = represented_matrix(run.model, rhs);
    return (a - b).norm() / (0.5 * (a.norm() + b.norm()));
  };
  const double ln = median3(ratio(g_braid.ln[0]), ratio(g_braid.ln[1]),
                            ratio(g_braid.ln[2]));
  const double nl = median3(ratio(g_braid.nl[0]), ratio(g_braid.nl[1]),
                            ratio(g_braid.nl[2]));
  return {ln < kPairRatio && nl < kPairRatio,
          fmt("median ||M(s1 s2 s1) - M(s2 s1 s2)||_F / ||M||_F - LN: %.4f, "
              "NL: %.4f (need < %.2f)",
              ln, nl, kPairRatio)};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"free-group representation properties", check_representation_properties},
      {"autodiff matches finite differences", check_autodiff_vs_finite_differences},
      {"categorical labeler properties", check_categorical_engine},
      {"order oracle vs brute force", check_order_oracle},
      {"braid multiplicity regression", check_braid_regression},
      {"relational error of trained models", check_relational_error},
      {"length extrapolation", check_length_extrapolation},
      {"element order prediction vs frozen baseline", check_order_prediction},
      {"equivalent words map to close matrices", check_equivalent_word_matrices},
  };

  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome out;
    try {
      out = checks[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu: %s - %s (%s)\n", i + 1,
                out.pass ? "PASS" : "FAIL", checks[i].first.c_str(),
                out.details.c_str());
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  std::printf("acceptance: %zu/%zu criteria passed\n",
              checks.size() - failures, checks.size());
  return failures == 0 ? 0 : 1;
}
