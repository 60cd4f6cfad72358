#include "grouprep/perm.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <set>

namespace grouprep {

namespace {

long long lcm_ll(long long a, long long b) { return std::lcm(a, b); }

// All attainable element orders of S_n: lcms over partitions of n.
void partition_orders(int remaining, int max_part, long long current,
                      std::set<long long>& out) {
  if (remaining == 0) {
    out.insert(current);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    partition_orders(remaining - part, part, lcm_ll(current, part), out);
  }
}

std::set<long long> symmetric_order_set(int n) {
  std::set<long long> out;
  partition_orders(n, n, 1, out);
  return out;
}

std::vector<long long> divisors(long long m) {
  std::vector<long long> out;
  for (long long d = 1; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      if (d != m / d) out.push_back(m / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Orders attainable by combining one order from each factor set via lcm.
std::set<long long> combine_order_sets(const std::vector<std::set<long long>>& factors) {
  std::set<long long> acc = {1};
  for (const auto& fs : factors) {
    std::set<long long> next;
    for (long long a : acc) {
      for (long long b : fs) next.insert(lcm_ll(a, b));
    }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

Permutation::Permutation(int n) : images_(static_cast<std::size_t>(n)) {
  assert(n >= 0);
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("not a permutation image table");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::transposition(int n, int a, int b) {
  Permutation p(n);
  std::swap(p.images_[static_cast<std::size_t>(a)], p.images_[static_cast<std::size_t>(b)]);
  return p;
}

Permutation Permutation::compose(const Permutation& other) const {
  assert(degree() == other.degree());
  std::vector<int> out(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) {
    out[x] = images_[static_cast<std::size_t>(other.images_[x])];
  }
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> out(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) {
    out[static_cast<std::size_t>(images_[x])] = static_cast<int>(x);
  }
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != static_cast<int>(x)) return false;
  }
  return true;
}

Permutation word_to_perm(const GroupPresentation& pres, const Word& w) {
  const auto* sym = std::get_if<SymmetricFamily>(&pres.family);
  if (sym == nullptr) {
    throw NotImplementedError("word_to_perm requires a symmetric family");
  }
  validate_word(pres, w);
  Permutation p(sym->n);
  for (const auto& s : w.symbols) {
    if (s.index == 0) continue;
    p = p.compose(Permutation::transposition(sym->n, s.index - 1, s.index));
  }
  return p;
}

ProductElement word_to_element(const GroupPresentation& pres, const Word& w) {
  validate_word(pres, w);
  ProductElement e;
  if (const auto* cyc = std::get_if<CyclicProductFamily>(&pres.family)) {
    e.residues.assign(cyc->orders.size(), 0);
    for (const auto& s : w.symbols) {
      if (s.index == 0) continue;
      const auto f = static_cast<std::size_t>(s.index - 1);
      const long long m = cyc->orders[f];
      e.residues[f] = ((e.residues[f] + s.sign) % m + m) % m;
    }
  } else if (const auto* pow = std::get_if<DirectPowerFamily>(&pres.family)) {
    e.components.assign(static_cast<std::size_t>(pow->copies), Permutation(pow->base_n));
    const int per = pow->base_n - 1;
    for (const auto& s : w.symbols) {
      if (s.index == 0) continue;
      const int f = (s.index - 1) / per;
      const int local = (s.index - 1) % per;
      auto& comp = e.components[static_cast<std::size_t>(f)];
      comp = comp.compose(Permutation::transposition(pow->base_n, local, local + 1));
    }
  } else {
    throw NotImplementedError("word_to_element requires a product family");
  }
  return e;
}

std::vector<int> cycle_type(const Permutation& p) {
  std::vector<bool> seen(static_cast<std::size_t>(p.degree()), false);
  std::vector<int> lengths;
  for (int x = 0; x < p.degree(); ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    int len = 0;
    for (int y = x; !seen[static_cast<std::size_t>(y)]; y = p(y)) {
      seen[static_cast<std::size_t>(y)] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

long long element_order(const Permutation& p) {
  long long order = 1;
  for (int len : cycle_type(p)) order = lcm_ll(order, len);
  return order;
}

long long element_order(const GroupPresentation& pres, const ProductElement& e) {
  long long order = 1;
  if (const auto* cyc = std::get_if<CyclicProductFamily>(&pres.family)) {
    for (std::size_t f = 0; f < cyc->orders.size(); ++f) {
      const long long m = cyc->orders[f];
      order = lcm_ll(order, m / std::gcd(e.residues[f], m));
    }
  } else {
    for (const auto& comp : e.components) order = lcm_ll(order, element_order(comp));
  }
  return order;
}

long long word_order(const GroupPresentation& pres, const Word& w) {
  if (std::holds_alternative<SymmetricFamily>(pres.family)) {
    return element_order(word_to_perm(pres, w));
  }
  if (std::holds_alternative<CyclicProductFamily>(pres.family) ||
      std::holds_alternative<DirectPowerFamily>(pres.family)) {
    return element_order(pres, word_to_element(pres, w));
  }
  throw NotImplementedError("word_order requires a finite family");
}

std::vector<long long> order_class_set(const Family& family) {
  std::set<long long> out;
  if (const auto* sym = std::get_if<SymmetricFamily>(&family)) {
    out = symmetric_order_set(sym->n);
  } else if (const auto* cyc = std::get_if<CyclicProductFamily>(&family)) {
    std::vector<std::set<long long>> factors;
    for (long long m : cyc->orders) {
      auto divs = divisors(m);
      factors.emplace_back(divs.begin(), divs.end());
    }
    out = combine_order_sets(factors);
  } else if (const auto* pow = std::get_if<DirectPowerFamily>(&family)) {
    std::vector<std::set<long long>> factors(static_cast<std::size_t>(pow->copies),
                                             symmetric_order_set(pow->base_n));
    out = combine_order_sets(factors);
  } else {
    throw NotImplementedError("order_class_set: infinite family has no class set");
  }
  return {out.begin(), out.end()};
}

int order_class_index(const GroupPresentation& pres, const Word& w,
                      const std::vector<long long>& classes) {
  const long long order = word_order(pres, w);
  auto it = std::lower_bound(classes.begin(), classes.end(), order);
  if (it == classes.end() || *it != order) {
    throw std::logic_error("element order missing from class set");
  }
  return static_cast<int>(it - classes.begin());
}

long long group_size(const Family& family) {
  auto checked_mul = [](long long a, long long b) {
    if (a > 0 && b > 0 && a > std::numeric_limits<long long>::max() / b) {
      throw std::overflow_error("group size overflow");
    }
    return a * b;
  };
  auto factorial = [&](int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f = checked_mul(f, i);
    return f;
  };
  if (const auto* sym = std::get_if<SymmetricFamily>(&family)) return factorial(sym->n);
  if (const auto* cyc = std::get_if<CyclicProductFamily>(&family)) {
    long long size = 1;
    for (long long m : cyc->orders) size = checked_mul(size, m);
    return size;
  }
  if (const auto* pow = std::get_if<DirectPowerFamily>(&family)) {
    long long size = 1;
    for (int f = 0; f < pow->copies; ++f) size = checked_mul(size, factorial(pow->base_n));
    return size;
  }
  throw NotImplementedError("group_size: infinite family");
}

}  // namespace grouprep
