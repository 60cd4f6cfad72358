#pragma once

// JSON checkpoints: the architecture metadata needed to rebuild a model plus
// every parameter matrix in row-major order.  The JSON writer emits doubles
// with round-trip-exact decimal, so save followed by load reproduces every
// parameter bit for bit.

#include <map>
#include <string>

#include "grouprep/matrixnet.hpp"

namespace grouprep {

struct Checkpoint {
  AnyModel model;
  std::map<std::string, double> extra;  // free-form scalars (epoch, val loss)
};

std::string checkpoint_to_json(const AnyModel& model,
                               const std::map<std::string, double>& extra = {});
Checkpoint checkpoint_from_json(const std::string& text);

void save_checkpoint(const AnyModel& model, const std::string& path,
                     const std::map<std::string, double>& extra = {});
Checkpoint load_checkpoint(const std::string& path);

}  // namespace grouprep
