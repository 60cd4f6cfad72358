#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "grouprep/perm.hpp"
#include "grouprep/rng.hpp"

using namespace grouprep;

namespace {

// Independent order oracle: compose until the identity comes back.
long long brute_force_order(const Permutation& p) {
  Permutation acc = p;
  long long order = 1;
  while (!acc.is_identity()) {
    acc = acc.compose(p);
    ++order;
  }
  return order;
}

long long brute_force_order(const GroupPresentation& pres, const Word& w) {
  if (std::holds_alternative<SymmetricFamily>(pres.family)) {
    return brute_force_order(word_to_perm(pres, w));
  }
  // Product families: concatenate w with itself until the identity element.
  Word acc = w;
  long long order = 1;
  auto is_id = [&](const ProductElement& e) {
    for (long long r : e.residues) {
      if (r != 0) return false;
    }
    for (const auto& p : e.components) {
      if (!p.is_identity()) return false;
    }
    return true;
  };
  while (!is_id(word_to_element(pres, acc))) {
    acc.symbols.insert(acc.symbols.end(), w.symbols.begin(), w.symbols.end());
    ++order;
  }
  return order;
}

}  // namespace

TEST_CASE("adjacent transposition words compose left to right") {
  auto s3 = presentation_from_name("S3");
  Permutation p = word_to_perm(s3, Word({gen(1), gen(2)}));
  // 3-cycle 0 -> 1 -> 2 -> 0.
  CHECK(p(0) == 1);
  CHECK(p(1) == 2);
  CHECK(p(2) == 0);
  CHECK(element_order(p) == 3);
}

TEST_CASE("disjoint transpositions") {
  auto s5 = presentation_from_name("S5");
  Permutation p = word_to_perm(s5, Word({gen(1), gen(3)}));
  CHECK(cycle_type(p) == std::vector<int>({2, 2, 1}));
  CHECK(element_order(p) == 2);
}

TEST_CASE("order is the lcm of the cycle type") {
  // Cycles (0 1) and (2 3 4) in S_5.
  Permutation p(std::vector<int>{1, 0, 3, 4, 2});
  CHECK(cycle_type(p) == std::vector<int>({3, 2}));
  CHECK(element_order(p) == 6);
  CHECK(brute_force_order(p) == 6);
}

TEST_CASE("element_order agrees with brute force on all short S_5 words") {
  auto s5 = presentation_from_name("S5");
  // All words of length <= 4 over the four generators.
  std::vector<Word> frontier = {Word{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (int g = 1; g <= 4; ++g) {
        Word ext = w;
        ext.symbols.push_back(gen(g));
        next.push_back(ext);
      }
    }
    for (const auto& w : next) {
      CHECK(word_order(s5, w) == brute_force_order(s5, w));
    }
    frontier = std::move(next);
  }
}

TEST_CASE("identity symbols do not change the permutation") {
  auto s5 = presentation_from_name("S5");
  Word w({gen(1), idgen(), gen(3), idgen()});
  CHECK(word_to_perm(s5, w) == word_to_perm(s5, free_reduce(w)));
}

TEST_CASE("cyclic product elements") {
  auto c23 = presentation_from_name("C2x3");
  Word w({gen(1), gen(2)});
  auto e = word_to_element(c23, w);
  REQUIRE(e.residues.size() == 2);
  CHECK(e.residues[0] == 1);
  CHECK(e.residues[1] == 1);
  CHECK(element_order(c23, e) == 6);
  CHECK(brute_force_order(c23, w) == 6);

  // Inverses wrap around.
  auto e2 = word_to_element(c23, Word({inv(2)}));
  CHECK(e2.residues[1] == 2);
  CHECK(element_order(c23, e2) == 3);
}

TEST_CASE("direct power elements act factor by factor") {
  auto s5sq = make_presentation(DirectPowerFamily{5, 2});
  REQUIRE(s5sq.num_generators == 8);
  // Generator 5 is the first generator of the second factor.
  auto e = word_to_element(s5sq, Word({gen(1), gen(5), gen(6)}));
  CHECK(element_order(e.components[0]) == 2);
  CHECK(element_order(e.components[1]) == 3);
  CHECK(element_order(s5sq, e) == 6);
}

TEST_CASE("standard relations evaluate to the identity element") {
  auto s5 = presentation_from_name("S5");
  for (const auto& r : s5.relations) {
    CHECK(word_to_perm(s5, r).is_identity());
  }
  auto c = presentation_from_name("C4x6");
  for (const auto& r : c.relations) {
    CHECK(element_order(c, word_to_element(c, r)) == 1);
  }
  auto p = make_presentation(DirectPowerFamily{4, 2});
  for (const auto& r : p.relations) {
    CHECK(element_order(p, word_to_element(p, r)) == 1);
  }
}

TEST_CASE("order class sets match the group structure") {
  auto s10 = order_class_set(SymmetricFamily{10});
  CHECK(s10.size() == 16);
  CHECK(s10 == std::vector<long long>(
                   {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 20, 21, 30}));

  CHECK(order_class_set(SymmetricFamily{12}).size() == 23);
  CHECK(order_class_set(SymmetricFamily{8}) ==
        std::vector<long long>({1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 15}));

  // Every order divides lcm(11,...,15) = 60060 = 2^2*3*5*7*11*13, and every
  // divisor is achieved (the generator tuple has order 60060), so the count is
  // tau(60060) = 3*2^5 = 96.  Cross-checked by brute-force lcm enumeration
  // over all divisor combinations.
  CHECK(order_class_set(CyclicProductFamily{{11, 12, 13, 14, 15}}).size() == 96);

  auto s54 = order_class_set(DirectPowerFamily{5, 4});
  CHECK(s54 == std::vector<long long>({1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60}));
}

TEST_CASE("order divides the group size") {
  std::mt19937_64 rng(99);
  auto check_family = [&](const GroupPresentation& pres, int length) {
    const long long size = group_size(pres.family);
    for (int trial = 0; trial < 200; ++trial) {
      Word w = sample_word(pres.num_generators, length, true,
                           !pres.self_inverse_generators, rng);
      CHECK(size % word_order(pres, w) == 0);
    }
  };
  check_family(presentation_from_name("S6"), 20);
  check_family(presentation_from_name("S10"), 40);
  check_family(presentation_from_name("C11x12x13x14x15"), 24);
  check_family(make_presentation(DirectPowerFamily{5, 4}), 30);
}

TEST_CASE("order_class_index looks up the classification label") {
  auto s10 = presentation_from_name("S10");
  auto classes = order_class_set(s10.family);
  CHECK(order_class_index(s10, Word({gen(1)}), classes) == 1);  // order 2
  CHECK(order_class_index(s10, Word{}, classes) == 0);          // identity
}

TEST_CASE("infinite families are rejected") {
  auto b3 = presentation_from_name("B3");
  CHECK_THROWS_AS(order_class_set(b3.family), NotImplementedError);
  CHECK_THROWS_AS(word_to_perm(b3, Word({gen(1)})), NotImplementedError);
  CHECK_THROWS_AS(group_size(b3.family), NotImplementedError);
}
