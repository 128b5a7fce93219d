#pragma once

// Alphabets, words, substitution rules and the language machinery they
// generate: incidence matrices, primitivity, a bounded aperiodicity check
// and exact enumeration of the length-n blocks of the subshift language.

#include "dimgroup/exact.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dimgroup {

using LetterId = int;

/// Ordered finite set of distinct letter tokens. The order is fixed at
/// construction (first appearance on rule left-hand sides) and indexes every
/// vector and matrix derived from the substitution.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  std::size_t size() const { return letters_.size(); }
  const std::string& name(LetterId id) const { return letters_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::string>& letters() const { return letters_; }
  std::optional<LetterId> find(const std::string& token) const;
  bool single_char() const;  // every letter a one-character token

private:
  std::vector<std::string> letters_;
  std::map<std::string, LetterId> index_;
};

/// A finite sequence of letter ids over some alphabet.
using Word = std::vector<LetterId>;

enum class AperiodicityKind { aperiodic, periodic, unknown };

struct AperiodicityVerdict {
  AperiodicityKind kind;
  int period = 0;  // set when kind == periodic
};

class Substitution {
public:
  Substitution(Alphabet alphabet, std::vector<Word> rules);

  /// Parse the external file format: one `letter -> word` rule per line,
  /// `#` comments, blank lines ignored. Words are plain concatenations of
  /// single-character letters or '.'-separated multi-character letters.
  static Substitution parse(std::istream& in);
  static Substitution parse_string(const std::string& text);
  static Substitution parse_file(const std::string& path);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }
  const Word& image(LetterId a) const { return rules_.at(static_cast<std::size_t>(a)); }
  const std::vector<Word>& rules() const { return rules_; }

  Word apply(const Word& w) const;
  Substitution power(int k) const;  // sigma^k, k >= 1

  /// entry (a,b) = occurrences of a in sigma(b); columns sum to |sigma(b)|.
  Mat incidence() const;

  /// Strict positivity of some incidence power M^k, 1 <= k <= |A|^2.
  bool is_primitive() const;

  /// Bounded semi-decision; pre: primitive.
  AperiodicityVerdict aperiodicity(int max_len = 64) const;

  /// All length-n factors of the substitution language, sorted. Pre: primitive.
  std::vector<Word> language_blocks(int n) const;

  LetterId first_letter(LetterId a) const { return image(a).front(); }
  LetterId last_letter(LetterId a) const { return image(a).back(); }

  /// Proper in the substitution sense: all images share the same first
  /// letter and all share the same last letter.
  bool is_proper() const;

  std::string word_to_string(const Word& w) const;
  std::string rules_to_string() const;  // re-emits the file format

  static constexpr std::size_t kMaxAlphabet = 64;

private:
  Alphabet alphabet_;
  std::vector<Word> rules_;
};

}  // namespace dimgroup
