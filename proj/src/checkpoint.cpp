#include "grouprep/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace grouprep {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "grouprep-checkpoint";
constexpr int kVersion = 1;

json matrix_to_json(const Matrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> data;
  data.reserve(std::size_t(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      data.push_back(m(r, c));
    }
  }
  j["data"] = std::move(data);
  return j;
}

Matrix matrix_from_json(const json& j, const std::string& name) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (rows < 0 || cols < 0 || Eigen::Index(data.size()) != rows * cols) {
    throw ParseError("checkpoint matrix '" + name + "': rows*cols != data size");
  }
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = data[k++];
    }
  }
  return m;
}

json architecture_to_json(const AnyModel& model) {
  json arch;
  arch["kind"] = model_kind(model);
  arch["family"] = model_presentation(model).name;
  arch["task"] = task_name(model_task(model));
  arch["outputs"] = model_outputs(model);
  if (const auto* m = std::get_if<MatrixNetModel>(&model)) {
    arch["variant"] = variant_name(m->block.variant);
    arch["matrix_dim"] = m->block.matrix_dim;
    arch["channels"] = m->block.channels;
    arch["hidden_dim"] = m->block.hidden_dim;
    arch["activation"] = activation_name(m->block.activation);
    arch["head_hidden_dim"] = m->head.hidden_dim;
    arch["head_activation"] = activation_name(m->head.activation);
  } else if (const auto* m = std::get_if<MlpBaselineModel>(&model)) {
    arch["max_len"] = m->max_len;
    arch["hidden_dim"] = m->hidden_dim;
    arch["activation"] = activation_name(m->activation);
  } else {
    const auto& fixed = std::get<FixedRepModel>(model);
    arch["hidden_dim"] = fixed.hidden_dim;
    arch["activation"] = activation_name(fixed.activation);
  }
  return arch;
}

// Builds a freshly initialized model of the recorded architecture; the
// caller overwrites its parameters with the stored ones.
AnyModel architecture_from_json(const json& arch) {
  const auto kind = arch.at("kind").get<std::string>();
  const auto pres = presentation_from_name(arch.at("family").get<std::string>());
  const auto task = parse_task(arch.at("task").get<std::string>());
  const int outputs = arch.at("outputs").get<int>();
  if (kind == "matrixnet") {
    MatrixBlockConfig block;
    block.variant = parse_variant(arch.at("variant").get<std::string>());
    block.matrix_dim = arch.at("matrix_dim").get<int>();
    block.channels = arch.at("channels").get<int>();
    block.hidden_dim = arch.at("hidden_dim").get<int>();
    block.activation = parse_activation(arch.at("activation").get<std::string>());
    HeadConfig head;
    head.hidden_dim = arch.at("head_hidden_dim").get<int>();
    head.activation = parse_activation(arch.at("head_activation").get<std::string>());
    return make_matrixnet(pres, block, head, task, outputs, 0);
  }
  if (kind == "mlp") {
    return make_mlp_baseline(pres, task, outputs,
                             arch.at("max_len").get<int>(),
                             arch.at("hidden_dim").get<int>(),
                             parse_activation(arch.at("activation").get<std::string>()),
                             0);
  }
  if (kind == "fixed_rep") {
    auto model = make_fixed_rep(pres, outputs, arch.at("hidden_dim").get<int>(),
                                parse_activation(arch.at("activation").get<std::string>()),
                                0);
    model.task = task;
    return model;
  }
  throw ParseError("unknown checkpoint model kind: " + kind);
}

}  // namespace

std::string checkpoint_to_json(const AnyModel& model,
                               const std::map<std::string, double>& extra) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["model"] = architecture_to_json(model);
  json params = json::object();
  for (const auto& [name, value] : model_named_params(model)) {
    params[name] = matrix_to_json(*value);
  }
  j["params"] = std::move(params);
  j["extra"] = extra;
  return j.dump(2);
}

Checkpoint checkpoint_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormat) {
      throw ParseError("not a checkpoint file");
    }
    if (j.at("version").get<int>() != kVersion) {
      throw ParseError("unsupported checkpoint version");
    }
    Checkpoint ck;
    ck.model = architecture_from_json(j.at("model"));
    const json& params = j.at("params");
    for (ParamRef p : model_params(ck.model)) {
      if (!params.contains(p.name)) {
        throw ParseError("checkpoint missing parameter '" + p.name + "'");
      }
      Matrix stored = matrix_from_json(params.at(p.name), p.name);
      if (stored.rows() != p.value->rows() || stored.cols() != p.value->cols()) {
        throw ParseError("checkpoint parameter '" + p.name +
                         "' has the wrong shape for the recorded architecture");
      }
      *p.value = std::move(stored);
    }
    if (j.contains("extra")) {
      ck.extra = j.at("extra").get<std::map<std::string, double>>();
    }
    return ck;
  } catch (const json::exception& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const AnyModel& model, const std::string& path,
                     const std::map<std::string, double>& extra) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << checkpoint_to_json(model, extra) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_json(ss.str());
}

}  // namespace grouprep
