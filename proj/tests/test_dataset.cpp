#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "grouprep/dataset.hpp"
#include "grouprep/perm.hpp"
#include "grouprep/word.hpp"
#include "grouprep/zigzag.hpp"

using namespace grouprep;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("dataset_test_") + name;
}

void remove_file(const std::string& path) { std::remove(path.c_str()); }

// Order of a permutation by repeated composition, independent of the
// cycle-type shortcut the library uses.
long long order_by_iteration(const Permutation& p) {
  Permutation acc = p;
  long long order = 1;
  while (!acc.is_identity()) {
    acc = acc.compose(p);
    ++order;
    REQUIRE(order < 100000);
  }
  return order;
}

}  // namespace

TEST_CASE("enumerated braid datasets count freely reduced words") {
  const auto pres = presentation_from_name("B3");

  // 2g * (2g-1)^(k-1) reduced words of each exact length k, plus the empty
  // word: 1 + 4 + 12 + 36 + 108 + 324 + 972 = 1457 for g = 2, k <= 6.
  const auto data = enumerate_braid_dataset(pres, 6, 1);
  CHECK(data.size() == 1457);

  std::map<std::size_t, long long> by_len;
  for (const Sample& s : data) ++by_len[s.word.size()];
  CHECK(by_len[0] == 1);
  for (int k = 1; k <= 6; ++k) {
    CHECK(by_len[std::size_t(k)] == reduced_word_count(2, k));
  }
  CHECK(reduced_word_count(2, 1) == 4);
  CHECK(reduced_word_count(2, 4) == 108);

  // Length-then-lexicographic order over the alphabet s1, s1', s2, s2'.
  CHECK(data[0].word.empty());
  CHECK(data[1].word == parse_word("s1"));
  CHECK(data[2].word == parse_word("s1'"));
  CHECK(data[3].word == parse_word("s2"));
  CHECK(data[4].word == parse_word("s2'"));
  CHECK(data[5].word == parse_word("s1 s1"));

  // Reduced words never contain an adjacent cancelling pair.
  for (const Sample& s : data) {
    CHECK(free_reduce(s.word) == s.word);
  }
}

TEST_CASE("enumerated braid datasets can include unreduced words") {
  const auto pres = presentation_from_name("B3");
  const auto data = enumerate_braid_dataset(pres, 3, 1, /*reduced=*/false);
  CHECK(data.size() == 1 + 4 + 16 + 64);

  bool saw_cancelling = false;
  for (const Sample& s : data) {
    if (free_reduce(s.word) != s.word) saw_cancelling = true;
  }
  CHECK(saw_cancelling);
}

TEST_CASE("braid labels are the categorical multiplicity vectors") {
  const auto pres = presentation_from_name("B3");
  const auto data = enumerate_braid_dataset(pres, 4, 1);
  for (const Sample& s : data) {
    CHECK(std::get<JHVector>(s.label) == braid_word_label(s.word, 1, 3));
  }
  // The empty word leaves the generating object untouched.
  CHECK(std::get<JHVector>(data[0].label) == JHVector({1, 0, 0}));
}

TEST_CASE("sampled braid datasets are reduced, exact-length, deterministic") {
  const auto pres = presentation_from_name("B3");
  const auto a = sample_braid_dataset(pres, 200, 7, 1, 99);
  const auto b = sample_braid_dataset(pres, 200, 7, 1, 99);
  const auto c = sample_braid_dataset(pres, 200, 7, 1, 100);
  CHECK(a == b);
  CHECK(a != c);

  for (const Sample& s : a) {
    CHECK(s.word.size() == 7);
    CHECK(free_reduce(s.word) == s.word);
    CHECK(std::get<JHVector>(s.label) == braid_word_label(s.word, 1, 3));
  }

  // All four first symbols occur across 200 draws.
  std::map<int, int> first_counts;
  for (const Sample& s : a) {
    const SignedGen f = s.word.symbols.front();
    ++first_counts[f.sign * f.index];
  }
  CHECK(first_counts.size() == 4);
}

TEST_CASE("braid-equivalent words get equal labels") {
  const auto pres = presentation_from_name("B3");
  const Word lhs = parse_word("s1 s2 s1");
  const Word rhs = parse_word("s2 s1 s2");
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    Word prefix = free_reduce(sample_word(2, 5, false, true, rng));
    Word a = prefix, b = prefix;
    a.symbols.insert(a.symbols.end(), lhs.symbols.begin(), lhs.symbols.end());
    b.symbols.insert(b.symbols.end(), rhs.symbols.begin(), rhs.symbols.end());
    CHECK(braid_word_label(a, 1, 3) == braid_word_label(b, 1, 3));
  }
}

TEST_CASE("order datasets cross-check against brute-force element orders") {
  const auto pres = presentation_from_name("S5");
  const auto classes = order_class_set(pres.family);
  const auto data = gen_order_dataset(pres, 200, 12, 5);

  CHECK(data.size() == 200);
  for (const Sample& s : data) {
    CHECK(s.word.size() == 12);
    // Self-inverse generators: no explicit inverses in the alphabet.
    for (SignedGen g : s.word.symbols) CHECK(g.sign == +1);

    const long long idx = std::get<long long>(s.label);
    REQUIRE(idx >= 0);
    REQUIRE(std::size_t(idx) < classes.size());
    CHECK(classes[std::size_t(idx)] == order_by_iteration(word_to_perm(pres, s.word)));
  }

  // The identity symbol is part of the sampling alphabet.
  bool saw_identity = false;
  for (const Sample& s : data) {
    for (SignedGen g : s.word.symbols) {
      if (g.index == 0) saw_identity = true;
    }
  }
  CHECK(saw_identity);

  CHECK(gen_order_dataset(pres, 200, 12, 5) == data);
  CHECK(gen_order_dataset(pres, 200, 12, 6) != data);
}

TEST_CASE("order datasets over non-self-inverse families use inverses") {
  const auto pres = presentation_from_name("C3x5");
  const auto data = gen_order_dataset(pres, 300, 8, 11);
  bool saw_inverse = false;
  for (const Sample& s : data) {
    for (SignedGen g : s.word.symbols) {
      if (g.sign < 0) saw_inverse = true;
    }
  }
  CHECK(saw_inverse);
}

TEST_CASE("split_dataset partitions with leftovers in test") {
  const auto pres = presentation_from_name("B3");
  const auto data = enumerate_braid_dataset(pres, 3, 1);  // 53 samples
  REQUIRE(data.size() == 53);

  const auto split = split_dataset(data, 0.6, 0.2, 0.2, 42);
  CHECK(split.train.size() == 31);  // floor(0.6 * 53)
  CHECK(split.val.size() == 10);    // floor(0.2 * 53)
  CHECK(split.test.size() == 12);   // remainder

  // Same multiset of samples, nothing lost or duplicated.
  auto key = [](const Sample& s) { return format_word(s.word); };
  std::map<std::string, int> before, after;
  for (const Sample& s : data) ++before[key(s)];
  for (const Sample& s : split.train) ++after[key(s)];
  for (const Sample& s : split.val) ++after[key(s)];
  for (const Sample& s : split.test) ++after[key(s)];
  CHECK(before == after);

  // Deterministic in the seed, and actually shuffled.
  const auto again = split_dataset(data, 0.6, 0.2, 0.2, 42);
  CHECK(again.train == split.train);
  CHECK(again.test == split.test);
  const auto other = split_dataset(data, 0.6, 0.2, 0.2, 43);
  CHECK(other.train != split.train);

  CHECK_THROWS_AS(split_dataset(data, 0.5, 0.2, 0.2, 1), std::invalid_argument);
  CHECK_THROWS_AS(split_dataset(data, -0.2, 0.6, 0.6, 1), std::invalid_argument);
}

TEST_CASE("jsonl round-trips both label kinds") {
  const std::string path = temp_path("roundtrip.jsonl");

  std::vector<Sample> samples;
  samples.push_back({parse_word("s1 s2' e"), Label(JHVector{3, 1, 0})});
  samples.push_back({Word{}, Label(7LL)});
  write_jsonl(samples, path);

  // Signed integer encoding on disk: +k / -k / 0.
  std::ifstream in(path);
  std::string line1, line2;
  std::getline(in, line1);
  std::getline(in, line2);
  CHECK(line1 == R"({"label":[3,1,0],"word":[1,-2,0]})");
  CHECK(line2 == R"({"label":7,"word":[]})");

  CHECK(read_jsonl(path) == samples);
  remove_file(path);
}

TEST_CASE("jsonl parse errors name the offending line") {
  const std::string path = temp_path("bad.jsonl");
  {
    std::ofstream out(path);
    out << R"({"word":[1],"label":2})" << '\n';
    out << "not json" << '\n';
  }
  CHECK_THROWS_WITH_AS(read_jsonl(path), doctest::Contains(":2:"), ParseError);
  remove_file(path);
}

TEST_CASE("fnv1a_file matches published test vectors") {
  const std::string path = temp_path("fnv.bin");
  {
    std::ofstream out(path, std::ios::binary);
  }
  CHECK(fnv1a_file(path) == 0xcbf29ce484222325ULL);  // empty input
  {
    std::ofstream out(path, std::ios::binary);
    out << "a";
  }
  CHECK(fnv1a_file(path) == 0xaf63dc4c8601ec8cULL);
  {
    std::ofstream out(path, std::ios::binary);
    out << "foobar";
  }
  CHECK(fnv1a_file(path) == 0x85944171f73967e8ULL);
  remove_file(path);
}

TEST_CASE("manifest round-trips and regenerates the dataset byte for byte") {
  const auto pres = presentation_from_name("B3");
  const std::string path = temp_path("b3.jsonl");

  DatasetManifest m;
  m.family = "B3";
  m.task = "braid";
  m.mode = "enumerate";
  m.max_len = 4;
  m.reduced = true;
  m.start_vertex = 1;
  m.label_space = braid_label_space(pres.family);
  CHECK(m.label_space == "multiplicities:3");

  const auto data = generate_from_manifest(m);
  m.count = (long long)data.size();
  write_jsonl(data, path);
  m.content_hash = fnv1a_file(path);
  write_manifest(m, path);

  const DatasetManifest loaded = read_manifest(path);
  CHECK(manifest_to_json(loaded) == manifest_to_json(m));
  CHECK(loaded.content_hash == m.content_hash);

  // Regeneration from the manifest alone reproduces the exact file.
  const std::string path2 = temp_path("b3_again.jsonl");
  write_jsonl(generate_from_manifest(loaded), path2);
  CHECK(fnv1a_file(path2) == loaded.content_hash);

  remove_file(path);
  remove_file(path + ".manifest.json");
  remove_file(path2);
}

TEST_CASE("manifest regeneration covers sampled order datasets") {
  DatasetManifest m;
  m.family = "S5";
  m.task = "order";
  m.mode = "sample";
  m.count = 150;
  m.max_len = 9;
  m.seed = 2024;
  m.include_identity = true;
  m.allow_inverses = false;
  m.label_space = order_label_space(parse_family("S5"));
  CHECK(m.label_space == "order-classes:6");  // orders {1,2,3,4,5,6}

  const auto a = generate_from_manifest(m);
  const auto b = generate_from_manifest(m);
  CHECK(a.size() == 150);
  CHECK(a == b);

  m.seed = 2025;
  CHECK(generate_from_manifest(m) != a);

  m.task = "unknown";
  CHECK_THROWS_AS(generate_from_manifest(m), std::invalid_argument);
}
