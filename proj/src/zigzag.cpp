#include "grouprep/zigzag.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <sstream>
#include <tuple>

namespace grouprep {

namespace {

std::size_t find_basis_index(const std::vector<BasisPath>& basis, const BasisPath& p) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k] == p) return k;
  }
  throw std::logic_error("composite path missing from hom basis");
}

}  // namespace

std::string to_string(const BasisPath& p) {
  std::ostringstream os;
  switch (p.kind) {
    case BasisPath::Kind::Idem: os << "idem(" << p.from << ")"; break;
    case BasisPath::Kind::Arrow: os << "arrow(" << p.from << "->" << p.to << ")"; break;
    case BasisPath::Kind::Loop: os << "loop(" << p.from << ")"; break;
  }
  return os.str();
}

std::optional<BasisPath> compose_paths(const BasisPath& p, const BasisPath& q) {
  if (q.to != p.from) return std::nullopt;
  if (p.internal_degree() + q.internal_degree() > 2) return std::nullopt;
  if (p.kind == BasisPath::Kind::Idem) return q;
  if (q.kind == BasisPath::Kind::Idem) return p;
  // Both arrows.  Straight-through length-2 paths vanish; a back-and-forth
  // pair gives the loop based at the common endpoint.
  if (q.from == p.to) return BasisPath::loop(q.from);
  return std::nullopt;
}

std::vector<BasisPath> hom_basis(int i, int j, int n) {
  if (i < 1 || i > n || j < 1 || j > n) {
    throw std::invalid_argument("hom_basis: vertex out of range");
  }
  if (i == j) return {BasisPath::idem(i), BasisPath::loop(i)};
  if (std::abs(i - j) == 1) return {BasisPath::arrow(j, i)};
  return {};
}

int Complex::min_position() const {
  assert(!terms_.empty());
  return terms_.begin()->first;
}

int Complex::max_position() const {
  assert(!terms_.empty());
  return terms_.rbegin()->first;
}

const std::vector<ProjSummand>& Complex::term(int position) const {
  static const std::vector<ProjSummand> empty;
  auto it = terms_.find(position);
  return it == terms_.end() ? empty : it->second;
}

const MorEntry& Complex::entry(int position, std::size_t row, std::size_t col) const {
  auto it = diffs_.find(position);
  assert(it != diffs_.end());
  const std::size_t cols = term(position).size();
  assert(row < term(position + 1).size() && col < cols);
  return it->second[row * cols + col];
}

void Complex::add_summand(int position, ProjSummand s) {
  assert(s.vertex >= 1 && s.vertex <= n_);
  // Summands must be added before any differential touching the position.
  assert(diffs_.find(position) == diffs_.end() &&
         diffs_.find(position - 1) == diffs_.end());
  terms_[position].push_back(s);
}

void Complex::ensure_matrix(int position) {
  auto it = diffs_.find(position);
  if (it == diffs_.end()) {
    diffs_[position].assign(term(position + 1).size() * term(position).size(), MorEntry{});
  } else {
    assert(it->second.size() == term(position + 1).size() * term(position).size());
  }
}

void Complex::add_entry(int position, std::size_t row, std::size_t col,
                        const Rational& coeff, const BasisPath& path) {
  ensure_matrix(position);
  const ProjSummand& source = term(position).at(col);
  const ProjSummand& target = term(position + 1).at(row);
  // The entry is a hom P_{source.vertex} -> P_{target.vertex}, i.e. a path
  // target.vertex -> source.vertex, of degree source.shift - target.shift + 1.
  assert(path.from == target.vertex && path.to == source.vertex);
  assert(path.internal_degree() == source.shift - target.shift + 1);
  MorEntry& e = diffs_[position][row * term(position).size() + col];
  if (e.coeff == 0) {
    e.path = path;
    e.coeff = coeff;
  } else {
    assert(e.path == path);
    e.coeff += coeff;
  }
}

void Complex::check_valid() const {
  for (const auto& [t, mat] : diffs_) {
    const auto& cols = term(t);
    const auto& rows = term(t + 1);
    if (mat.size() != rows.size() * cols.size()) {
      throw std::logic_error("differential dimensions out of sync");
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const MorEntry& e = mat[r * cols.size() + c];
        if (e.coeff == 0) continue;
        if (e.path.from != rows[r].vertex || e.path.to != cols[c].vertex ||
            e.path.internal_degree() != cols[c].shift - rows[r].shift + 1) {
          throw std::logic_error("differential entry violates the degree rule");
        }
      }
    }
  }
  // d(d(x)) = 0, checked entrywise with exact arithmetic.
  for (const auto& [t, mat] : diffs_) {
    auto next = diffs_.find(t + 1);
    if (next == diffs_.end()) continue;
    const auto& a = term(t);
    const auto& b = term(t + 1);
    const auto& c = term(t + 2);
    for (std::size_t u = 0; u < a.size(); ++u) {
      for (std::size_t w = 0; w < c.size(); ++w) {
        Rational sum = 0;
        for (std::size_t v = 0; v < b.size(); ++v) {
          const MorEntry& first = mat[v * a.size() + u];
          const MorEntry& second = next->second[w * b.size() + v];
          if (first.coeff == 0 || second.coeff == 0) continue;
          if (compose_paths(first.path, second.path)) {
            sum += first.coeff * second.coeff;
          }
        }
        if (sum != 0) throw std::logic_error("d(d(x)) != 0");
      }
    }
  }
}

Complex projective_object(int j, int n) {
  if (j < 1 || j > n) throw std::invalid_argument("projective_object: vertex out of range");
  Complex x(n);
  x.add_summand(0, ProjSummand{j, 0});
  return x;
}

namespace {

// Shared scaffolding for both twist directions: records where the added
// copies of P_i live.  copy_index[t][k][f] is the summand index of the copy
// attached to hom basis element f of summand k of x.term(t).
struct CopyIndex {
  std::map<int, std::vector<std::vector<std::size_t>>> at;
};

Complex twist_positive(int i, const Complex& x) {
  const int n = x.algebra_size();
  Complex out(n);
  if (x.empty()) return out;
  const int lo = x.min_position();
  const int hi = x.max_position();

  // Originals first; they keep their summand indices.
  for (int t = lo; t <= hi; ++t) {
    for (const auto& s : x.term(t)) out.add_summand(t, s);
  }
  // One copy of P_i at position t - 1 for every hom P_i -> P_{S.vertex}; a
  // degree-m hom against shift s lands at shift s + m - 1.
  CopyIndex copies;
  for (int t = lo; t <= hi; ++t) {
    const auto& summands = x.term(t);
    auto& here = copies.at[t];
    here.resize(summands.size());
    for (std::size_t k = 0; k < summands.size(); ++k) {
      const auto basis = hom_basis(i, summands[k].vertex, n);
      for (const auto& f : basis) {
        here[k].push_back(out.term(t - 1).size());
        out.add_summand(t - 1,
                        ProjSummand{i, summands[k].shift + f.internal_degree() - 1});
      }
    }
  }

  for (int t = lo; t <= hi; ++t) {
    const auto& summands = x.term(t);
    // Evaluation: each copy maps onto its summand by its hom basis element.
    for (std::size_t k = 0; k < summands.size(); ++k) {
      const auto basis = hom_basis(i, summands[k].vertex, n);
      for (std::size_t f = 0; f < basis.size(); ++f) {
        out.add_entry(t - 1, k, copies.at[t][k][f], 1, basis[f]);
      }
    }
    // Entries of x, kept as they are, and the induced map on copies (with the
    // cone sign), given by post-composing hom basis elements with d.
    const auto& rows = x.term(t + 1);
    if (rows.empty()) continue;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < summands.size(); ++c) {
        const MorEntry& e = x.entry(t, r, c);
        if (e.coeff == 0) continue;
        out.add_entry(t, r, c, e.coeff, e.path);
        const auto src_basis = hom_basis(i, summands[c].vertex, n);
        const auto dst_basis = hom_basis(i, rows[r].vertex, n);
        for (std::size_t f = 0; f < src_basis.size(); ++f) {
          auto composite = compose_paths(src_basis[f], e.path);
          if (!composite) continue;
          const std::size_t g = find_basis_index(dst_basis, *composite);
          out.add_entry(t - 1, copies.at[t + 1][r][g], copies.at[t][c][f], -e.coeff,
                        BasisPath::idem(i));
        }
      }
    }
  }
  out.check_valid();
  return out;
}

Complex twist_negative(int i, const Complex& x) {
  const int n = x.algebra_size();
  Complex out(n);
  if (x.empty()) return out;
  const int lo = x.min_position();
  const int hi = x.max_position();

  for (int t = lo; t <= hi; ++t) {
    for (const auto& s : x.term(t)) out.add_summand(t, s);
  }
  // One copy of P_i at position t + 1 for every hom P_{S.vertex} -> P_i; a
  // degree-m hom against shift s lands at shift s - m + 1.
  CopyIndex copies;
  for (int t = lo; t <= hi; ++t) {
    const auto& summands = x.term(t);
    auto& here = copies.at[t];
    here.resize(summands.size());
    for (std::size_t k = 0; k < summands.size(); ++k) {
      const auto basis = hom_basis(summands[k].vertex, i, n);
      for (const auto& g : basis) {
        here[k].push_back(out.term(t + 1).size());
        out.add_summand(t + 1,
                        ProjSummand{i, summands[k].shift - g.internal_degree() + 1});
      }
    }
  }

  for (int t = lo; t <= hi; ++t) {
    const auto& summands = x.term(t);
    // Coevaluation: each summand maps into its copies by the hom basis.
    for (std::size_t k = 0; k < summands.size(); ++k) {
      const auto basis = hom_basis(summands[k].vertex, i, n);
      for (std::size_t g = 0; g < basis.size(); ++g) {
        out.add_entry(t, copies.at[t][k][g], k, 1, basis[g]);
      }
    }
    // Entries of x change sign (the x part sits inside a shifted cone); the
    // induced map on copies pre-composes hom basis elements with d.
    const auto& rows = x.term(t + 1);
    if (rows.empty()) continue;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < summands.size(); ++c) {
        const MorEntry& e = x.entry(t, r, c);
        if (e.coeff == 0) continue;
        out.add_entry(t, r, c, -e.coeff, e.path);
        const auto src_basis = hom_basis(summands[c].vertex, i, n);
        const auto dst_basis = hom_basis(rows[r].vertex, i, n);
        for (std::size_t g2 = 0; g2 < dst_basis.size(); ++g2) {
          auto composite = compose_paths(e.path, dst_basis[g2]);
          if (!composite) continue;
          const std::size_t g = find_basis_index(src_basis, *composite);
          out.add_entry(t + 1, copies.at[t + 1][r][g2], copies.at[t][c][g], e.coeff,
                        BasisPath::idem(i));
        }
      }
    }
  }
  out.check_valid();
  return out;
}

}  // namespace

Complex twist(int i, int sign, const Complex& x) {
  if (i < 1 || i > x.algebra_size()) {
    throw std::invalid_argument("twist: vertex out of range");
  }
  if (sign != +1 && sign != -1) throw std::invalid_argument("twist: sign must be +-1");
  return sign > 0 ? twist_positive(i, x) : twist_negative(i, x);
}

Complex minimize(Complex x) {
  if (x.empty()) return x;
  const int lo = x.min_position();
  const int width = x.max_position() - lo + 1;

  // Mutable working copy: sums[k] is the summand list at position lo + k,
  // mats[k] the (sums[k+1] x sums[k]) entry matrix.
  std::vector<std::vector<ProjSummand>> sums(static_cast<std::size_t>(width));
  std::vector<std::vector<std::vector<MorEntry>>> mats(static_cast<std::size_t>(width));
  for (int k = 0; k < width; ++k) {
    sums[static_cast<std::size_t>(k)] = x.term(lo + k);
  }
  for (int k = 0; k + 1 < width; ++k) {
    auto& m = mats[static_cast<std::size_t>(k)];
    m.assign(sums[static_cast<std::size_t>(k) + 1].size(),
             std::vector<MorEntry>(sums[static_cast<std::size_t>(k)].size()));
    if (x.diffs_.find(lo + k) == x.diffs_.end()) continue;
    for (std::size_t r = 0; r < m.size(); ++r) {
      for (std::size_t c = 0; c < sums[static_cast<std::size_t>(k)].size(); ++c) {
        m[r][c] = x.entry(lo + k, r, c);
      }
    }
  }

  // Greedy Gaussian elimination, first pivot found in position order.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int k = 0; k + 1 < width && !changed; ++k) {
      auto& m = mats[static_cast<std::size_t>(k)];
      const std::size_t n_rows = sums[static_cast<std::size_t>(k) + 1].size();
      const std::size_t n_cols = sums[static_cast<std::size_t>(k)].size();
      for (std::size_t r = 0; r < n_rows && !changed; ++r) {
        for (std::size_t c = 0; c < n_cols && !changed; ++c) {
          const MorEntry pivot = m[r][c];
          if (pivot.coeff == 0 || pivot.path.kind != BasisPath::Kind::Idem) continue;
          assert(sums[static_cast<std::size_t>(k)][c].vertex ==
                 sums[static_cast<std::size_t>(k) + 1][r].vertex);
          changed = true;

          // Schur complement: d -= beta pivot^{-1} alpha over the non-pivot
          // entries sharing the pivot's row or column.
          for (std::size_t r2 = 0; r2 < n_rows; ++r2) {
            if (r2 == r || m[r2][c].coeff == 0) continue;
            const MorEntry beta = m[r2][c];
            for (std::size_t c2 = 0; c2 < n_cols; ++c2) {
              if (c2 == c || m[r][c2].coeff == 0) continue;
              const MorEntry alpha = m[r][c2];
              auto composite = compose_paths(alpha.path, beta.path);
              if (!composite) continue;
              MorEntry& target = m[r2][c2];
              const Rational add = -(beta.coeff * alpha.coeff / pivot.coeff);
              if (target.coeff == 0) {
                target.path = *composite;
                target.coeff = add;
              } else {
                assert(target.path == *composite);
                target.coeff += add;
              }
            }
          }

          // Drop the pivot pair: row summand from position k + 1, column
          // summand from position k, and every entry touching them.
          m.erase(m.begin() + static_cast<std::ptrdiff_t>(r));
          for (auto& row : m) row.erase(row.begin() + static_cast<std::ptrdiff_t>(c));
          sums[static_cast<std::size_t>(k) + 1].erase(
              sums[static_cast<std::size_t>(k) + 1].begin() + static_cast<std::ptrdiff_t>(r));
          sums[static_cast<std::size_t>(k)].erase(
              sums[static_cast<std::size_t>(k)].begin() + static_cast<std::ptrdiff_t>(c));
          if (k + 2 < width) {
            for (auto& row : mats[static_cast<std::size_t>(k) + 1]) {
              row.erase(row.begin() + static_cast<std::ptrdiff_t>(r));
            }
          }
          if (k > 0) {
            auto& prev = mats[static_cast<std::size_t>(k) - 1];
            prev.erase(prev.begin() + static_cast<std::ptrdiff_t>(c));
          }
        }
      }
    }
  }

  Complex out(x.algebra_size());
  for (int k = 0; k < width; ++k) {
    for (const auto& s : sums[static_cast<std::size_t>(k)]) out.add_summand(lo + k, s);
  }
  for (int k = 0; k + 1 < width; ++k) {
    const auto& m = mats[static_cast<std::size_t>(k)];
    for (std::size_t r = 0; r < m.size(); ++r) {
      for (std::size_t c = 0; c < m[r].size(); ++c) {
        if (m[r][c].coeff != 0) {
          out.add_entry(lo + k, r, c, m[r][c].coeff, m[r][c].path);
        }
      }
    }
  }
  out.check_valid();
  return out;
}

JHVector jh_multiplicities(const Complex& x) {
  Complex reduced = minimize(x);
  JHVector counts(static_cast<std::size_t>(x.algebra_size()), 0);
  if (reduced.empty()) return counts;
  for (int t = reduced.min_position(); t <= reduced.max_position(); ++t) {
    for (const auto& s : reduced.term(t)) {
      counts[static_cast<std::size_t>(s.vertex - 1)] += 1;
    }
  }
  return counts;
}

std::vector<std::tuple<int, int, int>> summand_multiset(const Complex& x) {
  std::vector<std::tuple<int, int, int>> out;
  if (x.empty()) return out;
  for (int t = x.min_position(); t <= x.max_position(); ++t) {
    for (const auto& s : x.term(t)) out.emplace_back(t, s.vertex, s.shift);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GradedPoly> graded_multiplicities(const Complex& x) {
  Complex reduced = minimize(x);
  std::vector<std::map<int, long long>> acc(static_cast<std::size_t>(x.algebra_size()));
  if (!reduced.empty()) {
    for (int t = reduced.min_position(); t <= reduced.max_position(); ++t) {
      for (const auto& s : reduced.term(t)) {
        acc[static_cast<std::size_t>(s.vertex - 1)][s.shift] += 1;
      }
    }
  }
  std::vector<GradedPoly> out;
  out.reserve(acc.size());
  for (const auto& m : acc) out.emplace_back(m.begin(), m.end());
  return out;
}

Complex apply_braid_word(const Word& w, int start_vertex, int n) {
  if (start_vertex < 1 || start_vertex > n) {
    throw std::invalid_argument("apply_braid_word: start vertex out of range");
  }
  for (const auto& s : w.symbols) {
    if (s.index > n - 1) {
      throw InvalidWordError("braid generator index exceeds algebra size");
    }
  }
  Complex x = projective_object(start_vertex, n);
  for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it) {
    if (it->index == 0) continue;
    x = minimize(twist(it->index, it->sign, x));
  }
  return x;
}

JHVector braid_word_label(const Word& w, int start_vertex, int n) {
  return jh_multiplicities(apply_braid_word(w, start_vertex, n));
}

}  // namespace grouprep
