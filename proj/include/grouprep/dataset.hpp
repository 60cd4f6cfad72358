#pragma once

// Dataset construction, splitting, and JSONL serialization for the two
// tasks: element-order classification (labels are indices into the family's
// achievable-order set) and braid-word multiplicity regression (labels are
// the integer multiplicity vectors from the categorical engine).
//
// Everything here is deterministic: a manifest records the generation
// parameters plus a content hash, and regenerating from the manifest
// reproduces the file byte for byte.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "grouprep/perm.hpp"
#include "grouprep/word.hpp"
#include "grouprep/zigzag.hpp"

namespace grouprep {

// Order task: class index.  Braid task: multiplicity vector.
using Label = std::variant<long long, JHVector>;

struct Sample {
  Word word;
  Label label;

  bool operator==(const Sample&) const = default;
};

struct DatasetManifest {
  std::string family;
  std::string task;  // "order" | "braid"
  std::string mode;  // "sample" | "enumerate"
  long long count = 0;
  int max_len = 0;
  std::uint64_t seed = 0;
  bool include_identity = false;
  bool allow_inverses = false;
  bool reduced = true;    // braid words freely reduced
  int start_vertex = 1;   // braid task
  std::string label_space;
  std::uint64_t content_hash = 0;
};

// `count` words of exactly `max_len` symbols over the generators plus the
// identity symbol, inverses included only when they differ from the
// generators; labels are order-class indices.
std::vector<Sample> gen_order_dataset(const GroupPresentation& pres,
                                      long long count, int max_len,
                                      std::uint64_t seed);

// All words up to `max_len` over the braid generators and their inverses,
// including the empty word, in length-then-lexicographic order.  With
// `reduced` (the default) only freely reduced words appear.
std::vector<Sample> enumerate_braid_dataset(const GroupPresentation& pres,
                                            int max_len, int start_vertex,
                                            bool reduced = true);

// `count` freely reduced words of exactly `length` symbols, uniform over
// that set (first symbol 2g ways, every extension avoids cancellation).
std::vector<Sample> sample_braid_dataset(const GroupPresentation& pres,
                                         long long count, int length,
                                         int start_vertex, std::uint64_t seed);

// Count of freely reduced braid words of exactly `length` symbols.
long long reduced_word_count(int num_generators, int length);

struct SplitResult {
  std::vector<Sample> train, val, test;
};

// Seeded shuffle, then contiguous cut; fractions must be nonnegative and sum
// to 1.  Rounding leftovers land in the test split.
SplitResult split_dataset(const std::vector<Sample>& samples, double train_frac,
                          double val_frac, double test_frac,
                          std::uint64_t seed);

// One record per line: {"word": [signed ints], "label": int | [ints]}.
void write_jsonl(const std::vector<Sample>& samples, const std::string& path);
std::vector<Sample> read_jsonl(const std::string& path);

// 64-bit FNV-1a over the file's bytes.
std::uint64_t fnv1a_file(const std::string& path);

std::string manifest_to_json(const DatasetManifest& m);
DatasetManifest manifest_from_json(const std::string& text);

// Sidecar path: "<dataset>.manifest.json".
void write_manifest(const DatasetManifest& m, const std::string& dataset_path);
DatasetManifest read_manifest(const std::string& dataset_path);

// Rebuilds the sample list the manifest describes (not the file itself).
std::vector<Sample> generate_from_manifest(const DatasetManifest& m);

// Label-space descriptors, e.g. "order-classes:16" or "multiplicities:3".
std::string order_label_space(const Family& family);
std::string braid_label_space(const Family& family);

}  // namespace grouprep
