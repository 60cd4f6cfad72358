#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "grouprep/word.hpp"

namespace grouprep {

// Exact scalar for categorical computations.  Pivoting during reduction
// divides by accumulated coefficients, so arbitrary precision is required.
using Rational = boost::multiprecision::cpp_rational;

// Basis morphism between indecomposable projectives P_i over the zig-zag
// algebra on a type-A quiver with n vertices.  Stored in path notation:
// `arrow {from, to}` is the length-1 path from -> to, which is the hom
// generator P_to -> P_from; `idem(i)` and `loop(i)` are the degree-0 and
// degree-2 endomorphism generators of P_i.  Composites of total degree > 2
// vanish, straight-through length-2 paths vanish, and both back-and-forth
// loops based at a vertex coincide.
struct BasisPath {
  enum class Kind { Idem, Arrow, Loop };

  Kind kind = Kind::Idem;
  int from = 0;  // path source vertex; equals `to` for Idem and Loop
  int to = 0;    // path target vertex

  static BasisPath idem(int i) { return {Kind::Idem, i, i}; }
  static BasisPath arrow(int from, int to) { return {Kind::Arrow, from, to}; }
  static BasisPath loop(int i) { return {Kind::Loop, i, i}; }

  int internal_degree() const {
    switch (kind) {
      case Kind::Idem: return 0;
      case Kind::Arrow: return 1;
      default: return 2;
    }
  }
  // As a module morphism the path from->to is a hom P_to -> P_from.
  int hom_source() const { return to; }
  int hom_target() const { return from; }

  bool operator==(const BasisPath&) const = default;
};

std::string to_string(const BasisPath& p);

// Product p * q: traverse q first, then p; defined when cod(q) == dom(p).
// Returns nullopt for the zero composite.  Back-and-forth arrow pairs give the
// loop based at the common endpoint.
std::optional<BasisPath> compose_paths(const BasisPath& p, const BasisPath& q);

// Basis of Hom(P_i, P_j) as (path, internal degree) pairs: Idem and Loop when
// i == j, the single arrow j -> i when |i - j| = 1, empty otherwise.
std::vector<BasisPath> hom_basis(int i, int j, int n);

// One direct summand P_vertex[shift] of a term of a complex.  The internal
// grading shift is identified with the homological one; `shift` is the single
// grading, `position` (kept by the complex) is chain bookkeeping.
struct ProjSummand {
  int vertex = 0;
  int shift = 0;

  bool operator==(const ProjSummand&) const = default;
  auto operator<=>(const ProjSummand&) const = default;
};

// Differential entry: coeff * path.  The entry from summand U at position t to
// summand V at position t + 1 stores the path V.vertex ->..-> U.vertex (hom
// P_{U.vertex} -> P_{V.vertex}); composing entry a then entry b in chain order
// is compose_paths(a.path, b.path).  The path's internal degree must equal
// U.shift - V.shift + 1.
struct MorEntry {
  Rational coeff = 0;
  BasisPath path;
};

// Bounded complex of shifted projectives.  Terms are ordered summand lists per
// homological position; differentials are dense (rows: position t + 1
// summands, columns: position t summands), with absent entries stored as zero
// coefficients.
class Complex {
 public:
  explicit Complex(int n) : n_(n) {}

  int algebra_size() const { return n_; }
  bool empty() const { return terms_.empty(); }
  int min_position() const;
  int max_position() const;

  const std::vector<ProjSummand>& term(int position) const;
  std::size_t term_size(int position) const { return term(position).size(); }

  const MorEntry& entry(int position, std::size_t row, std::size_t col) const;

  void add_summand(int position, ProjSummand s);
  // Adds coeff * path into the entry from column summand `col` at `position`
  // to row summand `row` at `position` + 1, checking the degree rule.
  void add_entry(int position, std::size_t row, std::size_t col, const Rational& coeff,
                 const BasisPath& path);

  // Structural checks: entry degrees obey the grading rule and d(d(x)) = 0.
  void check_valid() const;

 private:
  friend Complex minimize(Complex x);

  void ensure_matrix(int position);

  int n_;
  std::map<int, std::vector<ProjSummand>> terms_;
  // diffs_[t]: row-major (term(t+1).size() x term(t).size()) entry matrix.
  std::map<int, std::vector<MorEntry>> diffs_;
};

// Multiset of composition multiplicities: counts[i - 1] = number of summands
// with vertex i across all positions and shifts.
using JHVector = std::vector<long long>;

// P_j as a one-term complex at position 0, shift 0.
Complex projective_object(int j, int n);

// Spherical twist at P_i (sign +1) or its inverse (sign -1) applied to x.
// The result is a valid complex but not reduced; callers usually follow with
// minimize().
Complex twist(int i, int sign, const Complex& x);

// Gaussian elimination of isomorphism entries (nonzero multiples of an idem
// between equal-vertex summands in adjacent positions) until none remain.
// Homotopy equivalent to the input; the reduced complex has no such entries up
// to exact rational cancellation.
Complex minimize(Complex x);

JHVector jh_multiplicities(const Complex& x);

// Sorted (position, vertex, shift) triples; the isomorphism-class fingerprint
// of a reduced complex.
std::vector<std::tuple<int, int, int>> summand_multiset(const Complex& x);

// Per-vertex graded multiplicities: for vertex i, a sorted list of
// (shift, count) pairs, empty when the vertex does not occur.
using GradedPoly = std::vector<std::pair<int, long long>>;
std::vector<GradedPoly> graded_multiplicities(const Complex& x);

// Applies the twists named by a braid word to P_j, rightmost symbol first,
// minimizing after every step.  Word symbols s_k map to twists at vertex k and
// must satisfy k <= n - 1.
Complex apply_braid_word(const Word& w, int start_vertex, int n);

JHVector braid_word_label(const Word& w, int start_vertex, int n);

}  // namespace grouprep
