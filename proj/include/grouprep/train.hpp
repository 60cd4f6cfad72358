#pragma once

// Mini-batch Adam training with deterministic shuffling, evaluation metrics
// for both task kinds, and the CSV metrics log.
//
// Determinism contract: a fixed model seed + TrainConfig seed reproduces the
// exact parameter trajectory and metric history within one build, because
// batch order is derived from the config seed alone and the loop is
// single-threaded.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "grouprep/dataset.hpp"
#include "grouprep/matrixnet.hpp"

namespace grouprep {

struct TrainConfig {
  int epochs = 100;
  int batch_size = 128;
  double learning_rate = 1e-4;
  std::uint64_t seed = 0;
  // Relation loss is added every `relation.apply_every`-th batch; an empty
  // word list (or a non-MatrixNet model) disables the term.
  RelationLossConfig relation;
  std::string checkpoint_path;  // best-validation model; empty = memory only
  bool verbose = false;         // one progress line per epoch on stderr
};

// One metrics row.  Fields that do not apply (argmax accuracy for
// regression, rounded accuracy for classification, relational error for
// anything but a braid MatrixNet) are NaN and serialize as empty CSV cells.
struct MetricsRecord {
  int epoch = -1;
  std::string split;
  double loss = 0.0;
  double accuracy = 0.0;
  double rounded_accuracy = 0.0;
  double relational_error = 0.0;
  double wall_clock_sec = 0.0;
};

// Raised when a forward value or the loss goes non-finite; the message
// carries the epoch/batch position and the parameter norms at failure.
struct TrainingDiverged : std::runtime_error {
  explicit TrainingDiverged(const std::string& what)
      : std::runtime_error(what) {}
};

struct TrainResult {
  AnyModel model;  // parameters with the lowest validation loss
  int best_epoch = -1;
  double best_val_loss = 0.0;
  std::vector<MetricsRecord> history;  // "train" and "val" rows per epoch
};

// Classification: mean cross-entropy + argmax accuracy.  Regression: mean
// squared error + mean per-entry rounded-match rate, rounding half away
// from zero.  Throws std::invalid_argument when the labels do not match the
// model's task or output width.
MetricsRecord evaluate(const AnyModel& model, const std::vector<Sample>& data);

// Seeded shuffled mini-batch Adam.  Per epoch: one "train" row (running
// averages over the epoch's batches) and one "val" row; the model with the
// lowest validation loss is retained and optionally checkpointed.  With an
// empty validation set the final model wins by definition.
TrainResult train_model(const AnyModel& init,
                        const std::vector<Sample>& train_set,
                        const std::vector<Sample>& val_set,
                        const TrainConfig& cfg);

// Fixed column order:
// epoch,split,loss,accuracy,rounded_accuracy,relational_error,wall_clock_sec
std::string metrics_csv(const std::vector<MetricsRecord>& history);
void write_metrics_csv(const std::vector<MetricsRecord>& history,
                       const std::string& path);

}  // namespace grouprep
