#include "grouprep/train.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "grouprep/checkpoint.hpp"
#include "grouprep/rng.hpp"

namespace grouprep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kEvalChunk = 256;  // samples per tape between resets

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int target_class(const Label& label, int outputs) {
  const auto* idx = std::get_if<long long>(&label);
  if (idx == nullptr) {
    throw std::invalid_argument(
        "classification model but the sample label is a vector");
  }
  if (*idx < 0 || *idx >= outputs) {
    throw std::invalid_argument("class label " + std::to_string(*idx) +
                                " outside [0, " + std::to_string(outputs) +
                                ")");
  }
  return int(*idx);
}

Matrix target_vector(const Label& label, int outputs) {
  const auto* vec = std::get_if<JHVector>(&label);
  if (vec == nullptr) {
    throw std::invalid_argument(
        "regression model but the sample label is a class index");
  }
  if (int(vec->size()) != outputs) {
    throw std::invalid_argument("label has " + std::to_string(vec->size()) +
                                " entries, model outputs " +
                                std::to_string(outputs));
  }
  Matrix t(outputs, 1);
  for (int i = 0; i < outputs; ++i) t(i, 0) = double((*vec)[i]);
  return t;
}

int argmax(const Matrix& v) {
  Eigen::Index best = 0;
  v.col(0).maxCoeff(&best);
  return int(best);
}

// Fraction of entries whose round-half-away-from-zero matches the label.
double rounded_match_rate(const Matrix& pred, const JHVector& label) {
  int hits = 0;
  for (Eigen::Index i = 0; i < pred.rows(); ++i) {
    if (std::llround(pred(i, 0)) == label[std::size_t(i)]) ++hits;
  }
  return double(hits) / double(pred.rows());
}

bool relational_error_applies(const AnyModel& model) {
  const auto* net = std::get_if<MatrixNetModel>(&model);
  if (net == nullptr) return false;
  const auto* braid = std::get_if<BraidFamily>(&net->presentation.family);
  return braid != nullptr && braid->n >= 3;
}

// Accumulates loss/accuracy counts sample by sample.
struct MetricTally {
  double loss_sum = 0.0;
  double acc_sum = 0.0;
  double rounded_sum = 0.0;
  long long count = 0;

  Tape::NodeId add(TaskKind task, Tape& tape, Tape::NodeId pred,
                   const Label& label, int outputs) {
    Tape::NodeId loss_id;
    if (task == TaskKind::Classification) {
      const int cls = target_class(label, outputs);
      loss_id = tape.softmax_cross_entropy(pred, cls);
      acc_sum += argmax(tape.value(pred)) == cls ? 1.0 : 0.0;
    } else {
      loss_id = tape.mse(pred, target_vector(label, outputs));
      rounded_sum +=
          rounded_match_rate(tape.value(pred), std::get<JHVector>(label));
    }
    loss_sum += tape.value(loss_id)(0, 0);
    ++count;
    return loss_id;
  }

  void fill(TaskKind task, MetricsRecord* rec) const {
    const double n = double(count);
    rec->loss = count > 0 ? loss_sum / n : kNaN;
    rec->accuracy =
        task == TaskKind::Classification && count > 0 ? acc_sum / n : kNaN;
    rec->rounded_accuracy =
        task == TaskKind::Regression && count > 0 ? rounded_sum / n : kNaN;
  }
};

std::string param_norms_string(const std::vector<ParamRef>& refs) {
  std::ostringstream out;
  for (const ParamRef& p : refs) {
    out << ' ' << p.name << "=" << p.value->norm();
  }
  return out.str();
}

void csv_cell(std::ostringstream& out, double v) {
  out << ',';
  if (std::isnan(v)) return;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  out << buf;
}

}  // namespace

MetricsRecord evaluate(const AnyModel& model, const std::vector<Sample>& data) {
  const auto t0 = std::chrono::steady_clock::now();
  const TaskKind task = model_task(model);
  const int outputs = model_outputs(model);

  MetricTally tally;
  Tape tape;
  for (std::size_t start = 0; start < data.size(); start += kEvalChunk) {
    tape.reset();
    BoundModel bound(tape, model);
    const std::size_t stop = std::min(data.size(), start + kEvalChunk);
    for (std::size_t i = start; i < stop; ++i) {
      tally.add(task, tape, bound.forward(data[i].word), data[i].label,
                outputs);
    }
  }

  MetricsRecord rec;
  tally.fill(task, &rec);
  rec.relational_error = relational_error_applies(model)
                             ? relational_error(std::get<MatrixNetModel>(model))
                             : kNaN;
  rec.wall_clock_sec = seconds_since(t0);
  return rec;
}

TrainResult train_model(const AnyModel& init,
                        const std::vector<Sample>& train_set,
                        const std::vector<Sample>& val_set,
                        const TrainConfig& cfg) {
  if (cfg.epochs <= 0 || cfg.batch_size <= 0 || cfg.learning_rate <= 0.0) {
    throw std::invalid_argument(
        "training needs positive epochs, batch size, and learning rate");
  }
  if (train_set.empty()) {
    throw std::invalid_argument("empty training set");
  }

  AnyModel model = init;
  const auto refs = model_params(model);
  const TaskKind task = model_task(model);
  const int outputs = model_outputs(model);
  const bool relation_on = std::holds_alternative<MatrixNetModel>(model) &&
                           !cfg.relation.relation_words.empty();

  // Adam owns the canonical parameter values; the model is refreshed after
  // every step so BoundModel feeds current weights.
  std::vector<Matrix> params;
  params.reserve(refs.size());
  for (const ParamRef& p : refs) params.push_back(*p.value);
  AdamState adam = make_adam(params, cfg.learning_rate);
  std::vector<Matrix> grads(params.size());

  TrainResult out;
  out.model = model;
  out.best_val_loss = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  const auto t0 = std::chrono::steady_clock::now();
  Tape tape;
  long long global_batch = 0;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::mt19937_64 erng(derive_seed(cfg.seed, std::uint64_t(epoch)));
    shuffle_in_place(order, erng);

    MetricTally tally;
    for (std::size_t start = 0; start < order.size();
         start += std::size_t(cfg.batch_size)) {
      const std::size_t stop =
          std::min(order.size(), start + std::size_t(cfg.batch_size));
      try {
        tape.reset();
        BoundModel bound(tape, model);

        Tape::NodeId sum = -1;
        MetricTally batch_tally;
        for (std::size_t i = start; i < stop; ++i) {
          const Sample& s = train_set[order[i]];
          const Tape::NodeId loss_id = batch_tally.add(
              task, tape, bound.forward(s.word), s.label, outputs);
          sum = sum < 0 ? loss_id : tape.add(sum, loss_id);
        }
        const Tape::NodeId mean_loss =
            tape.scale(sum, 1.0 / double(stop - start));
        Tape::NodeId root = mean_loss;
        if (relation_on &&
            global_batch % std::max(1, cfg.relation.apply_every) == 0) {
          root = tape.add(mean_loss, bound.relation_loss(cfg.relation));
        }
        if (!std::isfinite(tape.value(root)(0, 0))) {
          throw NumericalError("non-finite batch loss");
        }

        tape.backward(root);
        const auto& ids = bound.param_ids();
        for (std::size_t p = 0; p < params.size(); ++p) {
          grads[p] = tape.grad(ids[p]);
        }
        adam_step(params, grads, adam);
        for (std::size_t p = 0; p < params.size(); ++p) {
          *refs[p].value = params[p];
        }

        tally.loss_sum += batch_tally.loss_sum;
        tally.acc_sum += batch_tally.acc_sum;
        tally.rounded_sum += batch_tally.rounded_sum;
        tally.count += batch_tally.count;
      } catch (const NumericalError& e) {
        throw TrainingDiverged(
            "training diverged at epoch " + std::to_string(epoch) +
            ", batch " + std::to_string(global_batch) + " (samples " +
            std::to_string(start) + ".." + std::to_string(stop - 1) +
            " of the shuffled order): " + e.what() +
            "; parameter norms:" + param_norms_string(refs));
      }
      ++global_batch;
    }

    MetricsRecord train_rec;
    tally.fill(task, &train_rec);
    train_rec.epoch = epoch;
    train_rec.split = "train";
    train_rec.relational_error = kNaN;
    train_rec.wall_clock_sec = seconds_since(t0);
    out.history.push_back(train_rec);

    double selection_loss = train_rec.loss;
    if (!val_set.empty()) {
      MetricsRecord val_rec = evaluate(model, val_set);
      val_rec.epoch = epoch;
      val_rec.split = "val";
      val_rec.wall_clock_sec = seconds_since(t0);
      out.history.push_back(val_rec);
      selection_loss = val_rec.loss;
      if (cfg.verbose) {
        std::fprintf(stderr,
                     "epoch %d  train loss %.6g  val loss %.6g  (%.1fs)\n",
                     epoch, train_rec.loss, val_rec.loss,
                     val_rec.wall_clock_sec);
      }
    } else if (cfg.verbose) {
      std::fprintf(stderr, "epoch %d  train loss %.6g  (%.1fs)\n", epoch,
                   train_rec.loss, train_rec.wall_clock_sec);
    }

    if (selection_loss <= out.best_val_loss) {
      out.best_val_loss = selection_loss;
      out.best_epoch = epoch;
      out.model = model;
    }
  }

  if (!cfg.checkpoint_path.empty()) {
    save_checkpoint(out.model, cfg.checkpoint_path,
                    {{"best_epoch", double(out.best_epoch)},
                     {"best_val_loss", out.best_val_loss}});
  }
  return out;
}

std::string metrics_csv(const std::vector<MetricsRecord>& history) {
  std::ostringstream out;
  out << "epoch,split,loss,accuracy,rounded_accuracy,relational_error,"
         "wall_clock_sec\n";
  for (const MetricsRecord& r : history) {
    out << r.epoch << ',' << r.split;
    csv_cell(out, r.loss);
    csv_cell(out, r.accuracy);
    csv_cell(out, r.rounded_accuracy);
    csv_cell(out, r.relational_error);
    csv_cell(out, r.wall_clock_sec);
    out << '\n';
  }
  return out.str();
}

void write_metrics_csv(const std::vector<MetricsRecord>& history,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << metrics_csv(history);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace grouprep
