#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace grouprep {

struct InvalidWordError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotImplementedError : std::logic_error {
  using std::logic_error::logic_error;
};

// One symbol of a word: a generator index with a sign.  Index 0 is the
// identity generator and always carries sign +1.  Generator indices are
// 1-based so that the signed integer encoding (+k / -k / 0) is unambiguous.
struct SignedGen {
  int index = 0;
  int sign = +1;

  bool operator==(const SignedGen&) const = default;
};

inline SignedGen gen(int index) { return {index, +1}; }
inline SignedGen inv(int index) { return {index, -1}; }
inline SignedGen idgen() { return {0, +1}; }

// A word is a finite sequence of symbols.  Operations that need to know the
// group take the presentation explicitly.
struct Word {
  std::vector<SignedGen> symbols;

  Word() = default;
  explicit Word(std::vector<SignedGen> syms) : symbols(std::move(syms)) {}

  std::size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  bool operator==(const Word&) const = default;
};

// Generator families with known presentations.
struct SymmetricFamily {
  int n;  // S_n, generators s_1..s_{n-1} are adjacent transpositions
};
struct BraidFamily {
  int n;  // B_n, generators s_1..s_{n-1}
};
struct CyclicProductFamily {
  std::vector<long long> orders;  // C_{n_1} x ... x C_{n_k}, one generator each
};
struct DirectPowerFamily {
  int base_n;  // base group S_{base_n}
  int copies;  // (S_{base_n})^copies, generators grouped factor by factor
};

using Family =
    std::variant<SymmetricFamily, BraidFamily, CyclicProductFamily, DirectPowerFamily>;

struct GroupPresentation {
  std::string name;
  int num_generators = 0;
  bool self_inverse_generators = false;
  Family family;
  std::vector<Word> relations;
};

// Builds the presentation (generator count, self-inverse flag, standard
// relations) for a family.
GroupPresentation make_presentation(const Family& family);

// Parses family names: "S10", "B3", "C11x12x13x14x15", "S5^4".
Family parse_family(const std::string& name);
GroupPresentation presentation_from_name(const std::string& name);
std::string family_name(const Family& family);

// The defining relations as single words (r = identity).  Self-inverse
// families spell inverses as the generators themselves.
std::vector<Word> standard_relations(const Family& family);

// Throws InvalidWordError unless every symbol has a valid index for the
// presentation and identity symbols carry sign +1.
void validate_word(const GroupPresentation& pres, const Word& w);

// Signed one-hot encoding: one row per symbol, row k is sign * e_{index-1},
// identity rows are zero.  Shape |w| x num_generators.  For self-inverse
// families the sign is ignored (always +1).
Eigen::MatrixXd signed_one_hot(const GroupPresentation& pres, const Word& w);

// Removes identity symbols and cancels adjacent inverse pairs until a fixed
// point.  Purely free-group reduction; group relations are not applied.
Word free_reduce(const Word& w);

// Reverses the word and flips every sign (identity symbols stay identity).
Word inverse_word(const Word& w);

// A word of exactly `length` symbols drawn i.i.d. uniformly from the alphabet:
// generators 1..num_generators, optionally the identity, optionally explicit
// inverses.  Deterministic given the generator state.
Word sample_word(int num_generators, int length, bool include_identity,
                 bool allow_inverses, std::mt19937_64& rng);

// Text syntax: "s<k>" generator, "s<k>'" inverse, "e" identity, whitespace
// separated.  The empty string is the empty word.
Word parse_word(const std::string& text);
std::string format_word(const Word& w);

// Signed integer encoding used by JSONL datasets: +k / -k for s_k / s_k',
// 0 for the identity symbol.
std::vector<int> word_to_ints(const Word& w);
Word word_from_ints(const std::vector<int>& ints);

}  // namespace grouprep
