#pragma once

// Shared fixtures: the named substitutions and the seeded random corpus used
// by the property suites and the acceptance run.

#include "dimgroup/substitution.hpp"

#include <random>
#include <string>
#include <vector>

namespace dimgroup::testing {

inline Substitution thue_morse() { return Substitution::parse_string("a -> ab\nb -> ba\n"); }
inline Substitution fibonacci() { return Substitution::parse_string("a -> ab\nb -> a\n"); }
inline Substitution proper_aab_abb() {
  return Substitution::parse_string("a -> aab\nb -> abb\n");
}
inline Substitution proper_aabab_abb() {
  return Substitution::parse_string("a -> aabab\nb -> abb\n");
}

constexpr unsigned long kCorpusSeed = 0x5eedULL;

/// Seeded primitive aperiodic substitutions with |A| <= 3 and images of
/// length <= 4. Deterministic for a fixed seed.
inline std::vector<Substitution> random_corpus(std::size_t count,
                                               unsigned long seed = kCorpusSeed) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  const std::vector<std::string> names{"a", "b", "c"};
  std::vector<Substitution> out;
  while (out.size() < count) {
    const std::size_t n = 2 + rng() % 2;  // 2 or 3 letters
    std::vector<Word> rules(n);
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t len = 1 + rng() % 4;
      for (std::size_t i = 0; i < len; ++i)
        rules[a].push_back(static_cast<LetterId>(rng() % n));
    }
    try {
      Substitution s(Alphabet({names.begin(), names.begin() + static_cast<long>(n)}),
                     std::move(rules));
      if (!s.is_primitive()) continue;
      if (s.aperiodicity().kind != AperiodicityKind::aperiodic) continue;
      out.push_back(std::move(s));
    } catch (...) {
      continue;
    }
  }
  return out;
}

/// The three named substitutions plus the random corpus: the acceptance corpus.
inline std::vector<Substitution> acceptance_corpus(std::size_t random_count = 20,
                                                   unsigned long seed = kCorpusSeed) {
  std::vector<Substitution> out{thue_morse(), fibonacci(), proper_aab_abb()};
  for (Substitution& s : random_corpus(random_count, seed)) out.push_back(std::move(s));
  return out;
}

}  // namespace dimgroup::testing
