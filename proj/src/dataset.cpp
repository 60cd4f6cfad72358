#include "grouprep/dataset.hpp"

#include <cassert>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "grouprep/rng.hpp"

namespace grouprep {

namespace {

using nlohmann::json;

int braid_strands(const GroupPresentation& pres) {
  const auto* fam = std::get_if<BraidFamily>(&pres.family);
  if (fam == nullptr) {
    throw std::invalid_argument("braid datasets need a braid family, got " +
                                pres.name);
  }
  return fam->n;
}

Label braid_label(const GroupPresentation& pres, const Word& w,
                  int start_vertex) {
  return braid_word_label(w, start_vertex, braid_strands(pres));
}

// Canonical alphabet order for enumeration: s1, s1', s2, s2', ...
std::vector<SignedGen> braid_alphabet(int num_generators) {
  std::vector<SignedGen> out;
  for (int k = 1; k <= num_generators; ++k) {
    out.push_back(gen(k));
    out.push_back(inv(k));
  }
  return out;
}

bool cancels(SignedGen a, SignedGen b) {
  return a.index == b.index && a.sign == -b.sign;
}

json sample_to_json(const Sample& s) {
  json rec;
  rec["word"] = word_to_ints(s.word);
  if (const auto* idx = std::get_if<long long>(&s.label)) {
    rec["label"] = *idx;
  } else {
    rec["label"] = std::get<JHVector>(s.label);
  }
  return rec;
}

Sample sample_from_json(const json& rec) {
  Sample s;
  s.word = word_from_ints(rec.at("word").get<std::vector<int>>());
  const json& label = rec.at("label");
  if (label.is_array()) {
    s.label = label.get<JHVector>();
  } else {
    s.label = label.get<long long>();
  }
  return s;
}

}  // namespace

std::vector<Sample> gen_order_dataset(const GroupPresentation& pres,
                                      long long count, int max_len,
                                      std::uint64_t seed) {
  if (count < 0 || max_len < 1) {
    throw std::invalid_argument("order dataset needs count >= 0, max_len >= 1");
  }
  const auto classes = order_class_set(pres.family);
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  out.reserve(std::size_t(count));
  for (long long i = 0; i < count; ++i) {
    Sample s;
    s.word = sample_word(pres.num_generators, max_len,
                         /*include_identity=*/true,
                         /*allow_inverses=*/!pres.self_inverse_generators, rng);
    s.label = (long long)order_class_index(pres, s.word, classes);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Sample> enumerate_braid_dataset(const GroupPresentation& pres,
                                            int max_len, int start_vertex,
                                            bool reduced) {
  if (max_len < 0) throw std::invalid_argument("max_len must be >= 0");
  const auto alphabet = braid_alphabet(pres.num_generators);
  std::vector<Word> frontier = {Word{}};
  std::vector<Sample> out;
  out.push_back({Word{}, braid_label(pres, Word{}, start_vertex)});
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (SignedGen a : alphabet) {
        if (reduced && !w.empty() && cancels(w.symbols.back(), a)) continue;
        Word ext = w;
        ext.symbols.push_back(a);
        next.push_back(std::move(ext));
      }
    }
    for (const Word& w : next) {
      out.push_back({w, braid_label(pres, w, start_vertex)});
    }
    frontier = std::move(next);
  }
  return out;
}

long long reduced_word_count(int num_generators, int length) {
  assert(num_generators >= 1);
  if (length == 0) return 1;
  long long count = 2 * num_generators;
  for (int i = 1; i < length; ++i) count *= 2 * num_generators - 1;
  return count;
}

std::vector<Sample> sample_braid_dataset(const GroupPresentation& pres,
                                         long long count, int length,
                                         int start_vertex,
                                         std::uint64_t seed) {
  if (count < 0 || length < 0) {
    throw std::invalid_argument("braid sampling needs count, length >= 0");
  }
  const auto alphabet = braid_alphabet(pres.num_generators);
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  out.reserve(std::size_t(count));
  for (long long i = 0; i < count; ++i) {
    Word w;
    for (int pos = 0; pos < length; ++pos) {
      std::vector<SignedGen> allowed;
      for (SignedGen a : alphabet) {
        if (!w.empty() && cancels(w.symbols.back(), a)) continue;
        allowed.push_back(a);
      }
      w.symbols.push_back(allowed[uniform_index(rng, allowed.size())]);
    }
    out.push_back({w, braid_label(pres, w, start_vertex)});
  }
  return out;
}

SplitResult split_dataset(const std::vector<Sample>& samples,
                          double train_frac, double val_frac, double test_frac,
                          std::uint64_t seed) {
  if (train_frac < 0 || val_frac < 0 || test_frac < 0 ||
      std::abs(train_frac + val_frac + test_frac - 1.0) > 1e-9) {
    throw std::invalid_argument("split fractions must be >= 0 and sum to 1");
  }
  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  shuffle_in_place(order, rng);

  const auto n = samples.size();
  const auto n_train = std::size_t(std::floor(train_frac * double(n)));
  const auto n_val = std::size_t(std::floor(val_frac * double(n)));
  SplitResult split;
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& s = samples[order[i]];
    if (i < n_train) {
      split.train.push_back(s);
    } else if (i < n_train + n_val) {
      split.val.push_back(s);
    } else {
      split.test.push_back(s);
    }
  }
  return split;
}

void write_jsonl(const std::vector<Sample>& samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const Sample& s : samples) {
    out << sample_to_json(s).dump() << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<Sample> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<Sample> out;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(sample_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= std::uint8_t(buf[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  return hash;
}

std::string manifest_to_json(const DatasetManifest& m) {
  json j;
  j["family"] = m.family;
  j["task"] = m.task;
  j["mode"] = m.mode;
  j["count"] = m.count;
  j["max_len"] = m.max_len;
  j["seed"] = m.seed;
  j["include_identity"] = m.include_identity;
  j["allow_inverses"] = m.allow_inverses;
  j["reduced"] = m.reduced;
  j["start_vertex"] = m.start_vertex;
  j["label_space"] = m.label_space;
  j["content_hash"] = m.content_hash;
  return j.dump(2);
}

DatasetManifest manifest_from_json(const std::string& text) {
  const json j = json::parse(text);
  DatasetManifest m;
  m.family = j.at("family").get<std::string>();
  m.task = j.at("task").get<std::string>();
  m.mode = j.at("mode").get<std::string>();
  m.count = j.at("count").get<long long>();
  m.max_len = j.at("max_len").get<int>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.include_identity = j.at("include_identity").get<bool>();
  m.allow_inverses = j.at("allow_inverses").get<bool>();
  m.reduced = j.at("reduced").get<bool>();
  m.start_vertex = j.at("start_vertex").get<int>();
  m.label_space = j.at("label_space").get<std::string>();
  m.content_hash = j.at("content_hash").get<std::uint64_t>();
  return m;
}

void write_manifest(const DatasetManifest& m, const std::string& dataset_path) {
  std::ofstream out(dataset_path + ".manifest.json");
  if (!out) {
    throw std::runtime_error("cannot write manifest for: " + dataset_path);
  }
  out << manifest_to_json(m) << '\n';
}

DatasetManifest read_manifest(const std::string& dataset_path) {
  std::ifstream in(dataset_path + ".manifest.json");
  if (!in) {
    throw std::runtime_error("missing manifest for: " + dataset_path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return manifest_from_json(ss.str());
}

std::vector<Sample> generate_from_manifest(const DatasetManifest& m) {
  const auto pres = presentation_from_name(m.family);
  if (m.task == "order") {
    return gen_order_dataset(pres, m.count, m.max_len, m.seed);
  }
  if (m.task != "braid") {
    throw std::invalid_argument("unknown dataset task: " + m.task);
  }
  if (m.mode == "enumerate") {
    return enumerate_braid_dataset(pres, m.max_len, m.start_vertex, m.reduced);
  }
  if (m.mode != "sample") {
    throw std::invalid_argument("unknown dataset mode: " + m.mode);
  }
  return sample_braid_dataset(pres, m.count, m.max_len, m.start_vertex, m.seed);
}

std::string order_label_space(const Family& family) {
  return "order-classes:" + std::to_string(order_class_set(family).size());
}

std::string braid_label_space(const Family& family) {
  const auto* fam = std::get_if<BraidFamily>(&family);
  if (fam == nullptr) {
    throw std::invalid_argument("braid label space needs a braid family");
  }
  return "multiplicities:" + std::to_string(fam->n);
}

}  // namespace grouprep
