#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lspace/bitset.hpp"
#include "lspace/errors.hpp"
#include "lspace/family.hpp"
#include "lspace/graph.hpp"
#include "lspace/hs.hpp"
#include "lspace/tails.hpp"

namespace lspace {

// Deliberately naive reference implementations.  They work on raw set
// vectors with linear scans and recompute every range from the graph,
// sharing no index tables with the main path, so a structural bug
// cannot cancel out across both sides.

struct OracleBudget {
  int max_family_size = 16;
  int max_word_length = 0;  // 0: use the family size
  int max_subfamily_bits = 20;
};

namespace oracle_detail {

inline int find_set(const std::vector<Bitset>& family, const Bitset& s) {
  for (std::size_t i = 0; i < family.size(); ++i)
    if (family[i] == s) return static_cast<int>(i);
  return -1;
}

inline bool mask_has(std::uint32_t mask, int i) { return mask >> i & 1; }

// Definitional hereditary check on a subfamily mask.
inline bool naive_hereditary(const LabelledGraph& g,
                             const std::vector<Bitset>& family,
                             std::uint32_t mask) {
  int n = static_cast<int>(family.size());
  for (int i = 0; i < n; ++i) {
    if (!mask_has(mask, i)) continue;
    for (int a = 0; a < g.label_count(); ++a) {
      int r = find_set(family, g.letter_range(family[i], a));
      if (r < 0 || !mask_has(mask, r)) return false;
    }
    for (int j = 0; j < n; ++j) {
      if (mask_has(mask, j)) {
        int u = find_set(family, family[i] | family[j]);
        if (u < 0 || !mask_has(mask, u)) return false;
      }
      if (family[j].is_subset_of(family[i]) && !mask_has(mask, j))
        return false;
    }
  }
  return true;
}

inline bool naive_saturated(const LabelledGraph& g,
                            const std::vector<Bitset>& family,
                            std::uint32_t mask) {
  int n = static_cast<int>(family.size());
  for (int i = 0; i < n; ++i) {
    if (mask_has(mask, i)) continue;
    bool feeds = true;
    for (int a = 0; a < g.label_count(); ++a) {
      int r = find_set(family, g.letter_range(family[i], a));
      if (r < 0 || !mask_has(mask, r)) feeds = false;
    }
    if (feeds) return false;
  }
  return true;
}

inline void check_subfamily_budget(const std::vector<Bitset>& family,
                                   const OracleBudget& budget) {
  if (static_cast<int>(family.size()) > budget.max_subfamily_bits ||
      static_cast<int>(family.size()) > 31)
    throw Error("oracle budget exceeded");
}

}  // namespace oracle_detail

// All hereditary-and-saturated subfamilies by scanning every subfamily
// mask, normalized to contain the empty set, sorted and deduplicated.
inline std::vector<Bitset> oracle_enumerate_hs(const LabelledGraph& g,
                                               const std::vector<Bitset>& family,
                                               const OracleBudget& budget = {}) {
  oracle_detail::check_subfamily_budget(family, budget);
  int n = static_cast<int>(family.size());
  int empty_idx = oracle_detail::find_set(family, g.empty_set());

  std::vector<Bitset> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if (!oracle_detail::naive_hereditary(g, family, mask)) continue;
    if (!oracle_detail::naive_saturated(g, family, mask)) continue;
    Bitset as_bits(n);
    for (int i = 0; i < n; ++i)
      if (oracle_detail::mask_has(mask, i)) as_bits.set(i);
    if (empty_idx >= 0) as_bits.set(empty_idx);
    out.push_back(std::move(as_bits));
  }
  std::sort(out.begin(), out.end(),
            [](const Bitset& a, const Bitset& b) { return lex_less(a, b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Word-by-word search for A ≥ B: walk the distinct prefix-range values
// level by level up to the word-length budget.  A repeated range value
// can only repeat ranges already tested, which is what caps the useful
// word length at the family size.
inline bool oracle_sees(const LabelledGraph& g,
                        const std::vector<Bitset>& family, const Bitset& a,
                        const Bitset& b, const OracleBudget& budget = {}) {
  int limit = budget.max_word_length > 0 ? budget.max_word_length
                                         : static_cast<int>(family.size());
  std::vector<Bitset> visited;
  std::vector<Bitset> level{a};
  for (int len = 1; len <= limit && !level.empty(); ++len) {
    std::vector<Bitset> next;
    for (const Bitset& x : level) {
      for (int letter = 0; letter < g.label_count(); ++letter) {
        Bitset r = g.letter_range(x, letter);
        if (oracle_detail::find_set(visited, r) >= 0) continue;
        if (oracle_detail::find_set(next, r) >= 0) continue;
        next.push_back(r);
      }
    }
    for (const Bitset& r : next) {
      if (b.is_subset_of(r)) return true;
      visited.push_back(r);
    }
    level = std::move(next);
  }
  return false;
}

// Smallest hereditary-and-saturated superfamily: intersect every
// enumerated hereditary-and-saturated subfamily that contains H.
inline Bitset oracle_saturate(const LabelledGraph& g,
                              const std::vector<Bitset>& family,
                              const Bitset& h_mask,
                              const OracleBudget& budget = {}) {
  std::vector<Bitset> all = oracle_enumerate_hs(g, family, budget);
  Bitset inter = Bitset::full(static_cast<int>(family.size()));
  bool found = false;
  for (const Bitset& hs : all) {
    if (h_mask.is_subset_of(hs)) {
      inter &= hs;
      found = true;
    }
  }
  if (!found) throw Error("no hereditary-saturated superfamily");
  return inter;
}

// Seeded random graph corpus.  Every vertex gets at least one outgoing
// edge (no sinks by construction); instances whose generated family
// exceeds the oracle budget or whose space fails verification are
// rejected and redrawn, so each accepted instance is a verified space.
struct CorpusOptions {
  unsigned seed = 12345;
  int instances = 200;
  int max_vertices = 4;
  int max_labels = 3;
  OracleBudget budget;
};

inline std::vector<GraphSpec> generate_corpus(const CorpusOptions& opts) {
  std::mt19937 rng(opts.seed);
  std::vector<GraphSpec> out;
  while (static_cast<int>(out.size()) < opts.instances) {
    std::uniform_int_distribution<int> nv_dist(1, opts.max_vertices);
    std::uniform_int_distribution<int> nl_dist(1, opts.max_labels);
    int nv = nv_dist(rng);
    int nl = nl_dist(rng);

    GraphSpec spec;
    for (int v = 0; v < nv; ++v) spec.vertices.push_back("v" + std::to_string(v));
    std::uniform_int_distribution<int> dst_dist(0, nv - 1);
    std::uniform_int_distribution<int> label_dist(0, nl - 1);
    std::uniform_int_distribution<int> extra_dist(0, 2 * nv);
    auto label_name = [](int l) { return std::string(1, static_cast<char>('a' + l)); };
    for (int v = 0; v < nv; ++v)
      spec.edges.push_back({spec.vertices[v], spec.vertices[dst_dist(rng)],
                            label_name(label_dist(rng))});
    int extras = extra_dist(rng);
    for (int e = 0; e < extras; ++e)
      spec.edges.push_back({spec.vertices[dst_dist(rng)],
                            spec.vertices[dst_dist(rng)],
                            label_name(label_dist(rng))});

    try {
      LabelledGraph g = LabelledGraph::build(spec);
      SetFamily fam = generate_family(g, opts.budget.max_family_size);
      SpaceReport rep = verify_space(g, fam);
      if (!rep.all_assumptions_hold()) continue;
    } catch (const Error&) {
      continue;
    }
    out.push_back(std::move(spec));
  }
  return out;
}

// Full equivalence run: lattice enumeration, the sees relation on all
// member pairs, the hereditary predicate on all subfamily masks, and
// saturation on all hereditary masks — main path versus oracle.
struct OracleRunReport {
  unsigned seed = 0;
  int instances = 0;
  long long comparisons = 0;
  bool passed = true;
  std::optional<int> first_divergence;  // corpus index
  std::string divergence_kind;
  GraphSpec divergent_spec;
};

inline OracleRunReport run_oracle_check(const CorpusOptions& opts = {}) {
  OracleRunReport rep;
  rep.seed = opts.seed;
  std::vector<GraphSpec> corpus = generate_corpus(opts);
  rep.instances = static_cast<int>(corpus.size());

  for (int ci = 0; ci < static_cast<int>(corpus.size()); ++ci) {
    const GraphSpec& spec = corpus[ci];
    auto diverge = [&](const std::string& kind) {
      if (rep.passed) {
        rep.passed = false;
        rep.first_divergence = ci;
        rep.divergence_kind = kind;
        rep.divergent_spec = spec;
      }
    };

    LabelledSpace sp = make_space(LabelledGraph::build(spec), std::nullopt,
                                  false, opts.budget.max_family_size);
    const std::vector<Bitset>& raw = sp.family().sets();
    int n = sp.size();

    HSLattice lattice = enumerate_hs(sp);
    std::vector<Bitset> oracle_hs = oracle_enumerate_hs(sp.graph(), raw,
                                                        opts.budget);
    ++rep.comparisons;
    if (lattice.members != oracle_hs) {
      diverge("enumerate_hs");
      continue;
    }

    ReachIndex idx(sp);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        ++rep.comparisons;
        bool fast = idx.sees(i, j);
        bool slow = oracle_sees(sp.graph(), raw, raw[i], raw[j], opts.budget);
        if (fast != slow) diverge("sees");
      }
    }
    if (!rep.passed) continue;

    if (n <= 31 && n <= opts.budget.max_subfamily_bits) {
      for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        Bitset as_bits(n);
        for (int i = 0; i < n; ++i)
          if (oracle_detail::mask_has(mask, i)) as_bits.set(i);
        bool naive_h = oracle_detail::naive_hereditary(sp.graph(), raw, mask);
        ++rep.comparisons;
        if (naive_h != is_hereditary(sp, as_bits)) {
          diverge("is_hereditary");
          break;
        }
        if (!naive_h) continue;
        ++rep.comparisons;
        if (!(saturate(sp, as_bits) ==
              oracle_saturate(sp.graph(), raw, as_bits, opts.budget))) {
          diverge("saturate");
          break;
        }
      }
    }
  }
  return rep;
}

}  // namespace lspace
