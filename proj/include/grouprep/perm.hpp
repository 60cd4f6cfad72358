#pragma once

#include <vector>

#include "grouprep/word.hpp"

namespace grouprep {

// Permutation of {0..n-1} stored as the image table: images[x] = p(x).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int n);  // identity
  explicit Permutation(std::vector<int> images);

  static Permutation transposition(int n, int a, int b);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& images() const { return images_; }

  // Function composition: (p.compose(q))(x) = p(q(x)).
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  bool is_identity() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

// Element of a product-structured group: one residue per cyclic factor or one
// permutation per direct-power factor.
struct ProductElement {
  std::vector<long long> residues;          // cyclic factors, residues mod orders
  std::vector<Permutation> components;      // direct-power factors
};

// Evaluates a word over S_n as a permutation.  Symbol s_i is the adjacent
// transposition (i-1, i); the identity symbol is skipped; signs are ignored
// because transpositions are involutions.  The first symbol of the word is the
// outermost factor: word (a, b) maps x to a(b(x)).
Permutation word_to_perm(const GroupPresentation& pres, const Word& w);

// Evaluates a word over CyclicProduct or DirectPower families.
ProductElement word_to_element(const GroupPresentation& pres, const Word& w);

// Cycle lengths sorted descending, fixed points included.
std::vector<int> cycle_type(const Permutation& p);

// Order of the element: lcm of cycle lengths.
long long element_order(const Permutation& p);

// Order of a product element: lcm across factors; a residue a in C_m has
// order m / gcd(a, m).
long long element_order(const GroupPresentation& pres, const ProductElement& e);

// Order of the group element represented by the word.
long long word_order(const GroupPresentation& pres, const Word& w);

// Sorted set of element orders attained in the group.  Symmetric families
// enumerate partitions; product families combine per-factor order sets.
// Infinite families (braid) are rejected.
std::vector<long long> order_class_set(const Family& family);

// Index of the word's order within order_class_set (classification label).
int order_class_index(const GroupPresentation& pres, const Word& w,
                      const std::vector<long long>& classes);

// Total group size, used for Lagrange checks; throws on overflow-prone input.
long long group_size(const Family& family);

}  // namespace grouprep
