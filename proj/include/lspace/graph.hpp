#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "lspace/bitset.hpp"
#include "lspace/errors.hpp"

namespace lspace {

// Plain description of a finite labelled directed graph, as read from
// input.  Vertex and label order is input order.
struct GraphSpec {
  struct Edge {
    std::string src;
    std::string dst;
    std::string label;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
};

// A finite directed graph with edges labelled from a finite alphabet.
// The alphabet is exactly the set of labels appearing on edges, in order
// of first appearance.  Immutable after construction.
class LabelledGraph {
 public:
  struct Edge {
    int src;
    int dst;
    int label;
  };

  static LabelledGraph build(const GraphSpec& spec) {
    LabelledGraph g;
    if (spec.vertices.empty()) throw InputError("graph has no vertices");
    for (const auto& v : spec.vertices) {
      if (g.vertex_index_.count(v))
        throw InputError("duplicate vertex id: " + v);
      g.vertex_index_.emplace(v, static_cast<int>(g.vertices_.size()));
      g.vertices_.push_back(v);
    }
    for (const auto& e : spec.edges) {
      auto s = g.vertex_index_.find(e.src);
      auto t = g.vertex_index_.find(e.dst);
      if (s == g.vertex_index_.end())
        throw InputError("unknown vertex: " + e.src);
      if (t == g.vertex_index_.end())
        throw InputError("unknown vertex: " + e.dst);
      auto l = g.label_index_.find(e.label);
      int label;
      if (l == g.label_index_.end()) {
        label = static_cast<int>(g.labels_.size());
        g.label_index_.emplace(e.label, label);
        g.labels_.push_back(e.label);
      } else {
        label = l->second;
      }
      g.edges_.push_back({s->second, t->second, label});
    }
    g.build_steps();
    return g;
  }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int label_count() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }

  const std::string& vertex_name(int v) const { return vertices_[v]; }
  const std::string& label_name(int a) const { return labels_[a]; }

  int vertex_index(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) throw InputError("unknown vertex: " + id);
    return it->second;
  }

  int label_index(const std::string& label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end())
      throw InputError("letter not in alphabet: " + label);
    return it->second;
  }

  Bitset empty_set() const { return Bitset(vertex_count()); }
  Bitset full_set() const { return Bitset::full(vertex_count()); }
  Bitset singleton(int v) const { return Bitset::singleton(vertex_count(), v); }

  // Endpoints of single edges labelled `label` whose source lies in `from`.
  Bitset letter_range(const Bitset& from, int label) const {
    Bitset out(vertex_count());
    for (int v = from.find_first(); v != -1; v = from.find_next(v))
      out |= succ_[label][v];
    return out;
  }

  // Sources of single edges labelled `label` whose endpoint lies in `to`.
  Bitset letter_source(const Bitset& to, int label) const {
    Bitset out(vertex_count());
    for (int v = to.find_first(); v != -1; v = to.find_next(v))
      out |= pred_[label][v];
    return out;
  }

  // Convenience: resolve a list of vertex ids into a set.
  Bitset vertex_set(const std::vector<std::string>& ids) const {
    Bitset out(vertex_count());
    for (const auto& id : ids) out.set(vertex_index(id));
    return out;
  }

  std::vector<std::string> vertex_names(const Bitset& set) const {
    std::vector<std::string> out;
    for (int v = set.find_first(); v != -1; v = set.find_next(v))
      out.push_back(vertices_[v]);
    return out;
  }

  // "{a,b,c}" with vertices in vertex order; "{}" for the empty set.
  std::string set_to_string(const Bitset& set) const {
    std::string out = "{";
    bool first = true;
    for (int v = set.find_first(); v != -1; v = set.find_next(v)) {
      if (!first) out += ",";
      out += vertices_[v];
      first = false;
    }
    out += "}";
    return out;
  }

 private:
  void build_steps() {
    succ_.assign(labels_.size(),
                 std::vector<Bitset>(vertices_.size(), empty_set()));
    pred_.assign(labels_.size(),
                 std::vector<Bitset>(vertices_.size(), empty_set()));
    for (const auto& e : edges_) {
      succ_[e.label][e.src].set(e.dst);
      pred_[e.label][e.dst].set(e.src);
    }
  }

  std::vector<std::string> vertices_;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> vertex_index_;
  std::unordered_map<std::string, int> label_index_;
  // succ_[label][vertex]: targets of label-edges out of vertex.
  std::vector<std::vector<Bitset>> succ_;
  std::vector<std::vector<Bitset>> pred_;
};

// A nonempty word over a graph's alphabet, stored as label indices.
class Word {
 public:
  static Word from_indices(const LabelledGraph& g, std::vector<int> letters) {
    if (letters.empty()) throw InputError("empty word");
    for (int a : letters)
      if (a < 0 || a >= g.label_count())
        throw InputError("letter not in alphabet");
    return Word(std::move(letters));
  }

  static Word from_labels(const LabelledGraph& g,
                          const std::vector<std::string>& labels) {
    std::vector<int> letters;
    letters.reserve(labels.size());
    for (const auto& l : labels) letters.push_back(g.label_index(l));
    if (letters.empty()) throw InputError("empty word");
    return Word(std::move(letters));
  }

  // Accepts either comma-separated labels ("ab,ba") or, when every
  // character of the string is itself a label, plain concatenation
  // ("abc").
  static Word parse(const LabelledGraph& g, const std::string& text) {
    return Word(parse_letters(g, text));
  }

  // Empty result allowed; used for ultimately periodic prefixes.
  static std::vector<int> parse_letters(const LabelledGraph& g,
                                        const std::string& text) {
    std::vector<int> letters;
    if (text.empty()) return letters;
    if (text.find(',') != std::string::npos) {
      std::size_t pos = 0;
      while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string token = text.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        letters.push_back(g.label_index(token));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      return letters;
    }
    // Single token: either one multi-character label or a run of
    // single-character labels.
    try {
      letters.push_back(g.label_index(text));
      return letters;
    } catch (const InputError&) {
      if (text.size() < 2) throw;
    }
    letters.clear();
    for (char c : text) letters.push_back(g.label_index(std::string(1, c)));
    return letters;
  }

  int length() const { return static_cast<int>(letters_.size()); }
  const std::vector<int>& letters() const { return letters_; }

  std::string to_string(const LabelledGraph& g) const {
    return format_letters(g, letters_);
  }

  // Concatenates when every alphabet label is one character, otherwise
  // joins with commas, so the result parses back unambiguously.
  static std::string format_letters(const LabelledGraph& g,
                                    const std::vector<int>& letters) {
    bool all_single = true;
    for (const auto& l : g.labels())
      if (l.size() != 1) all_single = false;
    std::string out;
    for (std::size_t k = 0; k < letters.size(); ++k) {
      if (k && !all_single) out += ",";
      out += g.label_name(letters[k]);
    }
    return out;
  }

 private:
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw InputError("empty word");
  }

  std::vector<int> letters_;
};

// prefix . cycle . cycle . ...  The cycle must be nonempty.
struct UltimatelyPeriodicWord {
  std::vector<int> prefix;
  std::vector<int> cycle;

  static UltimatelyPeriodicWord make(const LabelledGraph& g,
                                     std::vector<int> prefix,
                                     std::vector<int> cycle) {
    if (cycle.empty()) throw InputError("cycle must be nonempty");
    for (int a : prefix)
      if (a < 0 || a >= g.label_count())
        throw InputError("letter not in alphabet");
    for (int a : cycle)
      if (a < 0 || a >= g.label_count())
        throw InputError("letter not in alphabet");
    return {std::move(prefix), std::move(cycle)};
  }
};

// Endpoints of paths labelled `w` that start inside `from`, computed
// letter by letter.
inline Bitset relative_range(const LabelledGraph& g, const Bitset& from,
                             const Word& w) {
  Bitset cur = from;
  for (int a : w.letters()) cur = g.letter_range(cur, a);
  return cur;
}

// Endpoints of all paths labelled `w`.
inline Bitset word_range(const LabelledGraph& g, const Word& w) {
  return relative_range(g, g.full_set(), w);
}

// Start vertices of all paths labelled `w`, computed back to front.
inline Bitset word_source(const LabelledGraph& g, const Word& w) {
  Bitset cur = g.full_set();
  const auto& letters = w.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    cur = g.letter_source(cur, *it);
  return cur;
}

// Labels of edges whose source lies in `from`, as sorted label indices.
inline std::vector<int> outgoing_labels(const LabelledGraph& g,
                                        const Bitset& from) {
  std::vector<bool> seen(g.label_count(), false);
  for (const auto& e : g.edges())
    if (from.test(e.src)) seen[e.label] = true;
  std::vector<int> out;
  for (int a = 0; a < g.label_count(); ++a)
    if (seen[a]) out.push_back(a);
  return out;
}

struct GraphValidation {
  bool has_no_sinks = true;
  bool is_left_resolving = true;
  bool is_row_finite = true;  // always true for finite graphs
  std::vector<int> sink_vertices;
  // (vertex, label) pairs with two or more incoming edges of that label.
  std::vector<std::pair<int, int>> label_collisions;
};

inline GraphValidation validate_graph(const LabelledGraph& g) {
  GraphValidation rep;
  std::vector<int> out_degree(g.vertex_count(), 0);
  // in_label_count[v][a]: incoming a-edges of v.
  std::vector<std::vector<int>> in_label_count(
      g.vertex_count(), std::vector<int>(g.label_count(), 0));
  for (const auto& e : g.edges()) {
    ++out_degree[e.src];
    ++in_label_count[e.dst][e.label];
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (out_degree[v] == 0) {
      rep.has_no_sinks = false;
      rep.sink_vertices.push_back(v);
    }
    for (int a = 0; a < g.label_count(); ++a) {
      if (in_label_count[v][a] > 1) {
        rep.is_left_resolving = false;
        rep.label_collisions.emplace_back(v, a);
      }
    }
  }
  return rep;
}

}  // namespace lspace
