#include "dimgroup/bratteli.hpp"

#include "dimgroup/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dimgroup {

StationaryOrderedDiagram::StationaryOrderedDiagram(std::vector<std::string> vertex_names,
                                                   std::vector<std::vector<int>> fan_in)
    : vertex_names_(std::move(vertex_names)), fan_in_(std::move(fan_in)) {
  if (vertex_names_.size() != fan_in_.size())
    throw PreconditionError("diagram: name/fan-in size mismatch");
  const int n = static_cast<int>(fan_in_.size());
  std::vector<bool> is_source(fan_in_.size(), false);
  for (const auto& in : fan_in_) {
    if (in.empty()) throw PreconditionError("diagram: vertex with empty fan-in");
    for (int s : in) {
      if (s < 0 || s >= n) throw PreconditionError("diagram: edge source out of range");
      is_source[static_cast<std::size_t>(s)] = true;
    }
  }
  for (std::size_t v = 0; v < is_source.size(); ++v)
    if (!is_source[v])
      throw PreconditionError("diagram: vertex '" + vertex_names_[v] + "' has empty s^{-1}");
}

StationaryOrderedDiagram StationaryOrderedDiagram::from_substitution(const Substitution& s) {
  std::vector<std::vector<int>> fan_in(s.alphabet_size());
  for (std::size_t b = 0; b < s.alphabet_size(); ++b)
    for (LetterId a : s.image(static_cast<LetterId>(b))) fan_in[b].push_back(a);
  return StationaryOrderedDiagram(s.alphabet().letters(), std::move(fan_in));
}

Substitution StationaryOrderedDiagram::to_substitution() const {
  std::vector<Word> rules(fan_in_.size());
  for (std::size_t v = 0; v < fan_in_.size(); ++v)
    rules[v] = Word(fan_in_[v].begin(), fan_in_[v].end());
  return Substitution(Alphabet(vertex_names_), std::move(rules));
}

std::vector<OrderedEdge> StationaryOrderedDiagram::edges() const {
  std::vector<OrderedEdge> out;
  for (std::size_t v = 0; v < fan_in_.size(); ++v)
    for (std::size_t i = 0; i < fan_in_[v].size(); ++i)
      out.push_back({fan_in_[v][i], static_cast<int>(v), static_cast<int>(i) + 1});
  return out;
}

Mat StationaryOrderedDiagram::incidence() const { return to_substitution().incidence(); }

StationaryOrderedDiagram StationaryOrderedDiagram::telescope(int k) const {
  if (k < 1) throw PreconditionError("telescope requires k >= 1");
  // k-step paths in lex order are exactly the letter positions of sigma^k
  return from_substitution(to_substitution().power(k));
}

std::string triple_name(const std::vector<std::string>& base_names,
                        const std::array<int, 3>& t) {
  bool single = true;
  for (const auto& n : base_names) single = single && n.size() == 1;
  std::string sep = single ? "" : "-";
  return base_names[static_cast<std::size_t>(t[0])] + sep +
         base_names[static_cast<std::size_t>(t[1])] + sep +
         base_names[static_cast<std::size_t>(t[2])];
}

StationaryOrderedDiagram triple_diagram(const StationaryOrderedDiagram& d,
                                        const std::vector<std::array<int, 3>>& blocks3) {
  std::vector<std::array<int, 3>> verts = blocks3;
  std::sort(verts.begin(), verts.end());
  std::map<std::array<int, 3>, int> index;
  for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = static_cast<int>(i);

  std::vector<std::string> names;
  names.reserve(verts.size());
  for (const auto& t : verts) names.push_back(triple_name(d.vertex_names(), t));

  std::vector<std::vector<int>> fan_in(verts.size());
  for (std::size_t ti = 0; ti < verts.size(); ++ti) {
    const auto [u, v, w] = verts[ti];
    const std::vector<int>& into_v = d.fan_in(v);
    if (into_v.empty()) throw PreconditionError("triple: middle vertex with no incoming edges");
    const int before = d.fan_in(u).back();   // source of the last edge into u
    const int after = d.fan_in(w).front();   // source of the first edge into w
    const std::size_t k = into_v.size();
    for (std::size_t i = 0; i < k; ++i) {
      std::array<int, 3> src{i == 0 ? before : into_v[i - 1], into_v[i],
                             i + 1 == k ? after : into_v[i + 1]};
      auto it = index.find(src);
      if (it == index.end())
        throw PreconditionError("triple: lifted source (" + d.vertex_name(src[0]) + "," +
                                d.vertex_name(src[1]) + "," + d.vertex_name(src[2]) +
                                ") is not a supplied block");
      fan_in[ti].push_back(it->second);
    }
  }
  return StationaryOrderedDiagram(std::move(names), std::move(fan_in));
}

std::vector<Triple> triples_of(const Substitution& s) {
  std::vector<Word> blocks = s.language_blocks(3);
  std::vector<Triple> out;
  out.reserve(blocks.size());
  for (const Word& w : blocks) out.push_back({w[0], w[1], w[2]});
  std::sort(out.begin(), out.end());
  return out;
}

Substitution tripled_substitution(const Substitution& s) {
  if (!s.is_primitive()) throw PreconditionError("tripled_substitution requires primitivity");
  std::vector<Triple> triples = triples_of(s);
  if (triples.empty())
    throw PreconditionError("tripled_substitution: the language has no 3-blocks");
  std::map<Triple, LetterId> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    index[triples[i]] = static_cast<LetterId>(i);
    names.push_back(triple_name(s.alphabet().letters(), triples[i]));
  }
  std::vector<Word> rules(triples.size());
  for (std::size_t ti = 0; ti < triples.size(); ++ti) {
    const auto [a, b, c] = triples[ti];
    const Word& sb = s.image(b);
    const LetterId am = s.last_letter(a);
    const LetterId c1 = s.first_letter(c);
    Word seq;
    seq.push_back(am);
    seq.insert(seq.end(), sb.begin(), sb.end());
    seq.push_back(c1);
    for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
      Triple t{seq[i], seq[i + 1], seq[i + 2]};
      auto it = index.find(t);
      if (it == index.end())
        throw PreconditionError("tripled_substitution: image letter outside A^Q");
      rules[ti].push_back(it->second);
    }
  }
  return Substitution(Alphabet(names), std::move(rules));
}

ExtremePaths max_min_paths(const StationaryOrderedDiagram& d, int level) {
  if (level < 1) throw PreconditionError("max_min_paths requires level >= 1");
  ExtremePaths out;
  for (int v = 0; v < static_cast<int>(d.vertex_count()); ++v) {
    FinitePath maxp, minp;
    int cur = v;
    for (int l = level; l >= 2; --l) {
      const auto& in = d.fan_in(cur);
      maxp.edges.push_back({in.back(), cur, static_cast<int>(in.size())});
      cur = in.back();
    }
    maxp.edges.push_back({kTopVertex, cur, 1});
    std::reverse(maxp.edges.begin(), maxp.edges.end());
    cur = v;
    for (int l = level; l >= 2; --l) {
      const auto& in = d.fan_in(cur);
      minp.edges.push_back({in.front(), cur, 1});
      cur = in.front();
    }
    minp.edges.push_back({kTopVertex, cur, 1});
    std::reverse(minp.edges.begin(), minp.edges.end());
    out.maximal.push_back(std::move(maxp));
    out.minimal.push_back(std::move(minp));
  }
  return out;
}

namespace {

/// Does the self-map settle on a unique fixed point from every vertex?
bool unique_fixed_cycle(const std::vector<int>& map) {
  std::set<int> image;
  for (std::size_t v = 0; v < map.size(); ++v) image.insert(static_cast<int>(v));
  for (std::size_t step = 0; step <= map.size(); ++step) {
    std::set<int> next;
    for (int v : image) next.insert(map[static_cast<std::size_t>(v)]);
    if (next == image) break;
    image = std::move(next);
  }
  return image.size() == 1 && map[static_cast<std::size_t>(*image.begin())] == *image.begin();
}

}  // namespace

Properness is_properly_ordered_bounded(const StationaryOrderedDiagram& d, int depth) {
  if (depth < 2) throw PreconditionError("is_properly_ordered_bounded requires depth >= 2");
  std::vector<int> last_src, first_src;
  for (int v = 0; v < static_cast<int>(d.vertex_count()); ++v) {
    last_src.push_back(d.fan_in(v).back());
    first_src.push_back(d.fan_in(v).front());
  }
  // exact for stationary diagrams; `depth` only caps the (already bounded)
  // eventual-image iteration, so unknown never arises here
  return unique_fixed_cycle(last_src) && unique_fixed_cycle(first_src) ? Properness::proper
                                                                       : Properness::non_proper;
}

std::vector<StagePath> stage_paths_into(const StationaryOrderedDiagram& d, int v, int length) {
  if (length == 0) return {StagePath{}};
  std::vector<StagePath> out;
  const auto& in = d.fan_in(v);
  for (std::size_t i = 0; i < in.size(); ++i) {  // last edge most significant
    for (StagePath p : stage_paths_into(d, in[i], length - 1)) {
      p.push_back({in[i], v, static_cast<int>(i) + 1});
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<PathInterval> enumerate_path_intervals(const StationaryOrderedDiagram& d,
                                                   int n_levels) {
  if (n_levels < 1) throw PreconditionError("enumerate_path_intervals requires n_levels >= 1");
  std::vector<PathInterval> out;
  const std::size_t nv = d.vertex_count();
  for (int span = 1; span <= n_levels; ++span) {
    for (int v = 0; v < static_cast<int>(nv); ++v) {
      std::vector<StagePath> paths = stage_paths_into(d, v, span);
      for (std::size_t i = 0; i < paths.size(); ++i) {
        for (std::size_t j = i; j < paths.size(); ++j) {
          if (paths[i].front().source != paths[j].front().source) continue;
          PathInterval pi;
          pi.level_lo = 0;
          pi.level_hi = span;
          pi.lower = paths[i];
          pi.upper = paths[j];
          pi.contents.assign(paths.begin() + static_cast<long>(i),
                             paths.begin() + static_cast<long>(j));
          pi.source_counts.assign(nv, 0);
          for (const StagePath& p : pi.contents)
            ++pi.source_counts[static_cast<std::size_t>(p.front().source)];
          out.push_back(std::move(pi));
        }
      }
    }
  }
  return out;
}

std::string to_dot(const StationaryOrderedDiagram& d, int levels) {
  std::ostringstream os;
  os << "digraph bratteli {\n  rankdir=TB;\n  node [shape=circle];\n";
  os << "  \"L0\" [label=\"*\" shape=point];\n";
  for (int l = 1; l <= levels; ++l)
    for (std::size_t v = 0; v < d.vertex_count(); ++v)
      os << "  \"L" << l << "_" << v << "\" [label=\"" << d.vertex_name(static_cast<int>(v))
         << "\"];\n";
  for (std::size_t v = 0; v < d.vertex_count(); ++v)
    os << "  \"L0\" -> \"L1_" << v << "\" [label=\"1\"];\n";
  for (int l = 2; l <= levels; ++l)
    for (std::size_t v = 0; v < d.vertex_count(); ++v) {
      const auto& in = d.fan_in(static_cast<int>(v));
      for (std::size_t i = 0; i < in.size(); ++i)
        os << "  \"L" << l - 1 << "_" << in[i] << "\" -> \"L" << l << "_" << v << "\" [label=\""
           << i + 1 << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace dimgroup
