#include "grouprep/word.hpp"

#include <cassert>
#include <charconv>
#include <sstream>

#include "grouprep/rng.hpp"

namespace grouprep {

namespace {

Word braid_relation(int i) {
  // s_i s_{i+1} s_i s_{i+1}' s_i' s_{i+1}'
  return Word({gen(i), gen(i + 1), gen(i), inv(i + 1), inv(i), inv(i + 1)});
}

Word braid_relation_self_inverse(int i) {
  return Word({gen(i), gen(i + 1), gen(i), gen(i + 1), gen(i), gen(i + 1)});
}

Word commutator(int i, int j) { return Word({gen(i), gen(j), inv(i), inv(j)}); }

Word commutator_self_inverse(int i, int j) {
  return Word({gen(i), gen(j), gen(i), gen(j)});
}

// Relations of S_n with generators offset so that factor f of a direct power
// can reuse them.  offset = 0 gives plain S_n relations.
void append_symmetric_relations(std::vector<Word>& out, int n, int offset) {
  for (int i = 1; i <= n - 1; ++i) {
    out.push_back(Word({gen(offset + i), gen(offset + i)}));
  }
  for (int i = 1; i <= n - 2; ++i) {
    Word r = braid_relation_self_inverse(i);
    for (auto& s : r.symbols) s.index += offset;
    out.push_back(r);
  }
  for (int i = 1; i <= n - 1; ++i) {
    for (int j = i + 2; j <= n - 1; ++j) {
      out.push_back(commutator_self_inverse(offset + i, offset + j));
    }
  }
}

}  // namespace

std::vector<Word> standard_relations(const Family& family) {
  std::vector<Word> out;
  if (const auto* sym = std::get_if<SymmetricFamily>(&family)) {
    append_symmetric_relations(out, sym->n, 0);
  } else if (const auto* braid = std::get_if<BraidFamily>(&family)) {
    for (int i = 1; i <= braid->n - 2; ++i) out.push_back(braid_relation(i));
    for (int i = 1; i <= braid->n - 1; ++i) {
      for (int j = i + 2; j <= braid->n - 1; ++j) {
        out.push_back(commutator(i, j));
      }
    }
  } else if (const auto* cyc = std::get_if<CyclicProductFamily>(&family)) {
    const int k = static_cast<int>(cyc->orders.size());
    for (int i = 1; i <= k; ++i) {
      Word r;
      for (long long p = 0; p < cyc->orders[i - 1]; ++p) r.symbols.push_back(gen(i));
      out.push_back(r);
    }
    for (int i = 1; i <= k; ++i) {
      for (int j = i + 1; j <= k; ++j) out.push_back(commutator(i, j));
    }
  } else if (const auto* pow = std::get_if<DirectPowerFamily>(&family)) {
    const int per = pow->base_n - 1;
    for (int f = 0; f < pow->copies; ++f) {
      append_symmetric_relations(out, pow->base_n, f * per);
    }
    // Generators of distinct factors commute.
    const int total = per * pow->copies;
    for (int a = 1; a <= total; ++a) {
      for (int b = a + 1; b <= total; ++b) {
        if ((a - 1) / per != (b - 1) / per) {
          out.push_back(commutator_self_inverse(a, b));
        }
      }
    }
  }
  return out;
}

GroupPresentation make_presentation(const Family& family) {
  GroupPresentation pres;
  pres.family = family;
  pres.name = family_name(family);
  if (const auto* sym = std::get_if<SymmetricFamily>(&family)) {
    if (sym->n < 2) throw std::invalid_argument("SymmetricFamily requires n >= 2");
    pres.num_generators = sym->n - 1;
    pres.self_inverse_generators = true;
  } else if (const auto* braid = std::get_if<BraidFamily>(&family)) {
    if (braid->n < 2) throw std::invalid_argument("BraidFamily requires n >= 2");
    pres.num_generators = braid->n - 1;
    pres.self_inverse_generators = false;
  } else if (const auto* cyc = std::get_if<CyclicProductFamily>(&family)) {
    if (cyc->orders.empty()) {
      throw std::invalid_argument("CyclicProductFamily requires at least one factor");
    }
    for (long long m : cyc->orders) {
      if (m < 1) throw std::invalid_argument("cyclic factor order must be positive");
    }
    pres.num_generators = static_cast<int>(cyc->orders.size());
    pres.self_inverse_generators = false;
  } else if (const auto* pow = std::get_if<DirectPowerFamily>(&family)) {
    if (pow->base_n < 2 || pow->copies < 1) {
      throw std::invalid_argument("DirectPowerFamily requires base_n >= 2, copies >= 1");
    }
    pres.num_generators = (pow->base_n - 1) * pow->copies;
    pres.self_inverse_generators = true;
  }
  pres.relations = standard_relations(family);
  return pres;
}

Family parse_family(const std::string& name) {
  if (name.size() < 2) throw ParseError("unrecognized family name: " + name);
  auto parse_int = [&](std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || value <= 0) {
      throw ParseError("unrecognized family name: " + name);
    }
    return value;
  };
  if (name[0] == 'B') return BraidFamily{parse_int(std::string_view(name).substr(1))};
  if (name[0] == 'C') {
    CyclicProductFamily fam;
    std::string_view rest = std::string_view(name).substr(1);
    while (true) {
      auto pos = rest.find('x');
      fam.orders.push_back(parse_int(rest.substr(0, pos)));
      if (pos == std::string_view::npos) break;
      rest = rest.substr(pos + 1);
    }
    return fam;
  }
  if (name[0] == 'S') {
    auto caret = name.find('^');
    if (caret == std::string::npos) {
      return SymmetricFamily{parse_int(std::string_view(name).substr(1))};
    }
    int base = parse_int(std::string_view(name).substr(1, caret - 1));
    int copies = parse_int(std::string_view(name).substr(caret + 1));
    return DirectPowerFamily{base, copies};
  }
  throw ParseError("unrecognized family name: " + name);
}

GroupPresentation presentation_from_name(const std::string& name) {
  return make_presentation(parse_family(name));
}

std::string family_name(const Family& family) {
  std::ostringstream os;
  if (const auto* sym = std::get_if<SymmetricFamily>(&family)) {
    os << 'S' << sym->n;
  } else if (const auto* braid = std::get_if<BraidFamily>(&family)) {
    os << 'B' << braid->n;
  } else if (const auto* cyc = std::get_if<CyclicProductFamily>(&family)) {
    os << 'C';
    for (std::size_t i = 0; i < cyc->orders.size(); ++i) {
      if (i) os << 'x';
      os << cyc->orders[i];
    }
  } else if (const auto* pow = std::get_if<DirectPowerFamily>(&family)) {
    os << 'S' << pow->base_n << '^' << pow->copies;
  }
  return os.str();
}

void validate_word(const GroupPresentation& pres, const Word& w) {
  for (const auto& s : w.symbols) {
    if (s.index < 0 || s.index > pres.num_generators) {
      throw InvalidWordError("generator index " + std::to_string(s.index) +
                             " out of range for " + pres.name);
    }
    if (s.sign != +1 && s.sign != -1) {
      throw InvalidWordError("symbol sign must be +1 or -1");
    }
    if (s.index == 0 && s.sign != +1) {
      throw InvalidWordError("identity symbol cannot be inverted");
    }
  }
}

Eigen::MatrixXd signed_one_hot(const GroupPresentation& pres, const Word& w) {
  validate_word(pres, w);
  Eigen::MatrixXd enc =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(w.size()), pres.num_generators);
  for (Eigen::Index k = 0; k < enc.rows(); ++k) {
    const SignedGen& s = w.symbols[static_cast<std::size_t>(k)];
    if (s.index == 0) continue;
    enc(k, s.index - 1) = pres.self_inverse_generators ? 1.0 : static_cast<double>(s.sign);
  }
  return enc;
}

Word free_reduce(const Word& w) {
  std::vector<SignedGen> stack;
  stack.reserve(w.size());
  for (const auto& s : w.symbols) {
    if (s.index == 0) continue;
    if (!stack.empty() && stack.back().index == s.index && stack.back().sign == -s.sign) {
      stack.pop_back();
    } else {
      stack.push_back(s);
    }
  }
  return Word(std::move(stack));
}

Word inverse_word(const Word& w) {
  Word out;
  out.symbols.reserve(w.size());
  for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it) {
    out.symbols.push_back(it->index == 0 ? idgen() : SignedGen{it->index, -it->sign});
  }
  return out;
}

Word sample_word(int num_generators, int length, bool include_identity,
                 bool allow_inverses, std::mt19937_64& rng) {
  if (num_generators < 1 || length < 0) {
    throw std::invalid_argument("sample_word: bad num_generators/length");
  }
  const int base = include_identity ? num_generators + 1 : num_generators;
  const int alphabet = allow_inverses ? base + num_generators : base;
  Word w;
  w.symbols.reserve(static_cast<std::size_t>(length));
  for (int k = 0; k < length; ++k) {
    auto pick = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(alphabet)));
    if (include_identity && pick == 0) {
      w.symbols.push_back(idgen());
    } else {
      const int shifted = include_identity ? pick - 1 : pick;
      if (shifted < num_generators) {
        w.symbols.push_back(gen(shifted + 1));
      } else {
        w.symbols.push_back(inv(shifted - num_generators + 1));
      }
    }
  }
  return w;
}

Word parse_word(const std::string& text) {
  Word w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "e") {
      w.symbols.push_back(idgen());
      continue;
    }
    bool inverse = false;
    if (tok.size() > 1 && tok.back() == '\'') {
      inverse = true;
      tok.pop_back();
    }
    if (tok.size() < 2 || tok[0] != 's') {
      throw ParseError("bad word token: " + tok);
    }
    int index = 0;
    auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), index);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || index < 1) {
      throw ParseError("bad word token: " + tok);
    }
    w.symbols.push_back(inverse ? inv(index) : gen(index));
  }
  return w;
}

std::string format_word(const Word& w) {
  std::ostringstream os;
  for (std::size_t k = 0; k < w.symbols.size(); ++k) {
    if (k) os << ' ';
    const auto& s = w.symbols[k];
    if (s.index == 0) {
      os << 'e';
    } else {
      os << 's' << s.index;
      if (s.sign < 0) os << '\'';
    }
  }
  return os.str();
}

std::vector<int> word_to_ints(const Word& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (const auto& s : w.symbols) out.push_back(s.sign * s.index);
  return out;
}

Word word_from_ints(const std::vector<int>& ints) {
  Word w;
  w.symbols.reserve(ints.size());
  for (int v : ints) {
    w.symbols.push_back(v == 0 ? idgen() : (v > 0 ? gen(v) : inv(-v)));
  }
  return w;
}

}  // namespace grouprep
