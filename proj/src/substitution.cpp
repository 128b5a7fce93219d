#include "dimgroup/substitution.hpp"

#include "dimgroup/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace dimgroup {

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw ParseError("alphabet is empty");
  if (letters_.size() > Substitution::kMaxAlphabet)
    throw ParseError("alphabet exceeds " + std::to_string(Substitution::kMaxAlphabet) + " letters");
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    const auto& t = letters_[i];
    if (t.empty()) throw ParseError("empty letter token");
    // '>' is banned so the rule arrow can never occur inside a token
    if (t.find_first_of(" \t.#>") != std::string::npos)
      throw ParseError("letter token '" + t + "' contains a reserved character");
    if (!index_.emplace(t, static_cast<LetterId>(i)).second)
      throw ParseError("duplicate letter '" + t + "'");
  }
}

std::optional<LetterId> Alphabet::find(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Alphabet::single_char() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](const std::string& s) { return s.size() == 1; });
}

Substitution::Substitution(Alphabet alphabet, std::vector<Word> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
  if (rules_.size() != alphabet_.size()) throw ParseError("rule count != alphabet size");
  for (const Word& img : rules_) {
    if (img.empty()) throw ParseError("empty rule image");
    for (LetterId a : img)
      if (a < 0 || static_cast<std::size_t>(a) >= alphabet_.size())
        throw ParseError("rule image letter out of range");
  }
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Word parse_word(const std::string& text, const Alphabet& alpha, int line_no) {
  Word w;
  auto undeclared = [&](const std::string& tok) {
    return ParseError("line " + std::to_string(line_no) + ": image uses undeclared letter '" +
                      tok + "'");
  };
  // '.'-separated tokens whenever the alphabet has multi-character letters
  // (a dotless word is then a single letter); plain per-character otherwise
  if (text.find('.') != std::string::npos || !alpha.single_char()) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto dot = text.find('.', pos);
      std::string tok = text.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
      if (tok.empty())
        throw ParseError("line " + std::to_string(line_no) + ": empty letter between '.'");
      auto id = alpha.find(tok);
      if (!id) throw undeclared(tok);
      w.push_back(*id);
      if (dot == std::string::npos) break;
      pos = dot + 1;
    }
  } else {
    for (char c : text) {
      auto id = alpha.find(std::string(1, c));
      if (!id) throw undeclared(std::string(1, c));
      w.push_back(*id);
    }
  }
  return w;
}

}  // namespace

Substitution Substitution::parse(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> raw;  // (lhs, rhs) per rule line
  std::string line;
  int line_no = 0;
  std::vector<int> line_nos;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto arrow = s.find("->");
    if (arrow == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected 'letter -> word'");
    std::string lhs = trim(s.substr(0, arrow));
    std::string rhs = trim(s.substr(arrow + 2));
    if (lhs.empty()) throw ParseError("line " + std::to_string(line_no) + ": missing letter");
    if (rhs.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty image");
    raw.emplace_back(lhs, rhs);
    line_nos.push_back(line_no);
  }
  if (raw.empty()) throw ParseError("empty substitution file");

  std::vector<std::string> letters;
  for (const auto& [lhs, rhs] : raw) {
    if (std::find(letters.begin(), letters.end(), lhs) != letters.end())
      throw ParseError("duplicate rule for letter '" + lhs + "'");
    letters.push_back(lhs);
  }
  Alphabet alpha(letters);
  std::vector<Word> rules(alpha.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    rules[i] = parse_word(raw[i].second, alpha, line_nos[i]);
  return Substitution(std::move(alpha), std::move(rules));
}

Substitution Substitution::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

Substitution Substitution::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse(in);
}

Word Substitution::apply(const Word& w) const {
  Word out;
  for (LetterId a : w) {
    const Word& img = image(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

Substitution Substitution::power(int k) const {
  if (k < 1) throw PreconditionError("substitution power requires k >= 1");
  std::vector<Word> cur = rules_;
  for (int i = 1; i < k; ++i) {
    std::vector<Word> next(cur.size());
    for (std::size_t a = 0; a < cur.size(); ++a) next[a] = apply(cur[a]);
    cur = std::move(next);
  }
  return Substitution(alphabet_, std::move(cur));
}

Mat Substitution::incidence() const {
  const std::size_t n = alphabet_.size();
  Mat m = zero_mat(n, n);
  for (std::size_t b = 0; b < n; ++b)
    for (LetterId a : rules_[b]) m[static_cast<std::size_t>(a)][b] += 1;
  return m;
}

bool Substitution::is_primitive() const {
  const std::size_t n = alphabet_.size();
  // boolean reachability on the support of M
  std::vector<std::vector<bool>> cur(n, std::vector<bool>(n, false)), base = cur;
  Mat m = incidence();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i][j] = m[i][j] > 0;
  cur = base;
  const std::size_t bound = n * n;
  for (std::size_t k = 1; k <= bound; ++k) {
    bool all = true;
    for (std::size_t i = 0; i < n && all; ++i)
      for (std::size_t j = 0; j < n && all; ++j)
        if (!cur[i][j]) all = false;
    if (all) return true;
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t)
        if (cur[i][t])
          for (std::size_t j = 0; j < n; ++j)
            if (base[t][j]) next[i][j] = true;
    cur = std::move(next);
  }
  return false;
}

std::vector<Word> Substitution::language_blocks(int n) const {
  if (n < 1) throw PreconditionError("language_blocks requires n >= 1");
  if (!is_primitive()) throw PreconditionError("language_blocks requires a primitive substitution");

  // Replace sigma by a power tau with min image length >= 2; then a window of
  // length K in tau(v) touches at most K letters of v, so iterating on the
  // set of factors of length <= K is a complete closure. The only primitive
  // substitution whose images never grow is the one-letter identity; its
  // language is the single letter.
  Substitution tau = *this;
  {
    auto min_len = [](const Substitution& s) {
      std::size_t m = SIZE_MAX;
      for (const Word& w : s.rules()) m = std::min(m, w.size());
      return m;
    };
    auto max_len = [](const Substitution& s) {
      std::size_t m = 0;
      for (const Word& w : s.rules()) m = std::max(m, w.size());
      return m;
    };
    if (max_len(tau) == 1) return n == 1 ? std::vector<Word>{Word{0}} : std::vector<Word>{};
    int guard = 0;
    while (min_len(tau) < 2) {
      std::vector<Word> next(alphabet_.size());
      for (std::size_t a = 0; a < alphabet_.size(); ++a) next[a] = tau.apply(rules_[a]);
      tau = Substitution(alphabet_, std::move(next));
      if (++guard > 64) throw CapExceededError("image growth stalled in language_blocks");
    }
  }

  const std::size_t cap = static_cast<std::size_t>(std::max(n, 2));
  std::set<Word> factors;
  std::vector<Word> worklist;  // every inserted factor gets substituted once
  auto add_factors = [&](const Word& w) {
    for (std::size_t len = 1; len <= cap; ++len) {
      if (w.size() < len) break;
      for (std::size_t i = 0; i + len <= w.size(); ++i) {
        Word f(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i + len));
        auto [it, inserted] = factors.insert(std::move(f));
        if (inserted) worklist.push_back(*it);
      }
    }
  };
  for (std::size_t a = 0; a < alphabet_.size(); ++a) add_factors(tau.image(static_cast<LetterId>(a)));
  while (!worklist.empty()) {
    Word w = std::move(worklist.back());
    worklist.pop_back();
    add_factors(tau.apply(w));
  }
  std::vector<Word> out;
  for (const Word& w : factors)
    if (w.size() == static_cast<std::size_t>(n)) out.push_back(w);
  return out;  // std::set iteration is already sorted
}

AperiodicityVerdict Substitution::aperiodicity(int max_len) const {
  if (max_len < 4) max_len = 4;
  // complexity p(len) > len at any length certifies aperiodicity of the
  // (minimal) subshift; aperiodic inputs exit within the first few lengths
  std::vector<Word> blocks;
  for (int len = 1; len <= max_len; ++len) {
    blocks = language_blocks(len);
    if (blocks.size() > static_cast<std::size_t>(len))
      return {AperiodicityKind::aperiodic, 0};
  }
  for (int p = 1; p <= max_len / 4; ++p) {
    bool all = true;
    for (const Word& w : blocks) {
      for (std::size_t i = 0; i + static_cast<std::size_t>(p) < w.size(); ++i)
        if (w[i] != w[i + static_cast<std::size_t>(p)]) {
          all = false;
          break;
        }
      if (!all) break;
    }
    if (all) return {AperiodicityKind::periodic, p};
  }
  return {AperiodicityKind::unknown, 0};
}

bool Substitution::is_proper() const {
  for (std::size_t a = 1; a < alphabet_.size(); ++a) {
    if (first_letter(static_cast<LetterId>(a)) != first_letter(0)) return false;
    if (last_letter(static_cast<LetterId>(a)) != last_letter(0)) return false;
  }
  return true;
}

std::string Substitution::word_to_string(const Word& w) const {
  std::ostringstream os;
  const bool dotted = !alphabet_.single_char();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && dotted) os << '.';
    os << alphabet_.name(w[i]);
  }
  return os.str();
}

std::string Substitution::rules_to_string() const {
  std::ostringstream os;
  for (std::size_t a = 0; a < alphabet_.size(); ++a)
    os << alphabet_.name(static_cast<LetterId>(a)) << " -> "
       << word_to_string(rules_[a]) << "\n";
  return os.str();
}

}  // namespace dimgroup
