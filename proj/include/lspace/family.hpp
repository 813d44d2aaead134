#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lspace/bitset.hpp"
#include "lspace/errors.hpp"
#include "lspace/graph.hpp"

namespace lspace {

// A duplicate-free collection of vertex sets over one graph, kept in
// canonical order (lexicographic on ascending vertex indices, so the
// empty set is always member 0 when present).
class SetFamily {
 public:
  SetFamily() = default;

  static SetFamily from_sets(std::vector<Bitset> sets) {
    SetFamily f;
    for (auto& s : sets) f.insert(std::move(s));
    f.sort();
    return f;
  }

  // Returns true if the set was new.  Call sort() after a batch of
  // inserts to restore canonical order.
  bool insert(Bitset s) {
    auto [it, fresh] = index_.emplace(s, static_cast<int>(sets_.size()));
    if (fresh) sets_.push_back(std::move(s));
    return fresh;
  }

  void sort() {
    std::sort(sets_.begin(), sets_.end(),
              [](const Bitset& a, const Bitset& b) { return lex_less(a, b); });
    index_.clear();
    for (std::size_t i = 0; i < sets_.size(); ++i)
      index_.emplace(sets_[i], static_cast<int>(i));
  }

  int size() const { return static_cast<int>(sets_.size()); }
  bool empty() const { return sets_.empty(); }
  const Bitset& operator[](int i) const { return sets_[i]; }
  const std::vector<Bitset>& sets() const { return sets_; }

  bool contains(const Bitset& s) const { return index_.count(s) != 0; }

  // Canonical index of a member, or -1.
  int index_of(const Bitset& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
  }

  bool operator==(const SetFamily& other) const { return sets_ == other.sets_; }

 private:
  std::vector<Bitset> sets_;
  std::unordered_map<Bitset, int, BitsetHash> index_;
};

// Smallest family containing the empty set and every single-letter word
// range, closed under single-letter relative ranges, pairwise union,
// pairwise intersection, and relative complement.  Closure under all
// word ranges follows from r(A, a·β) = r(r(A, a), β).
inline SetFamily generate_family(const LabelledGraph& g,
                                 int max_family_size = 4096) {
  std::vector<Bitset> work;
  std::unordered_map<Bitset, bool, BitsetHash> seen;
  auto push = [&](Bitset s) {
    if (seen.emplace(s, true).second) {
      work.push_back(std::move(s));
      if (static_cast<int>(work.size()) > max_family_size)
        throw Error("family too large");
    }
  };

  push(g.empty_set());
  for (int a = 0; a < g.label_count(); ++a)
    push(g.letter_range(g.full_set(), a));

  // Worklist closure: combine each newly added set with everything
  // added before it, then take its letter ranges.  Copies, not
  // references, into `work`: push can reallocate it.
  for (std::size_t i = 0; i < work.size(); ++i) {
    Bitset x = work[i];
    for (int a = 0; a < g.label_count(); ++a) push(g.letter_range(x, a));
    for (std::size_t j = 0; j <= i; ++j) {
      Bitset y = work[j];
      push(x | y);
      push(x & y);
      push(x - y);
      push(y - x);
    }
  }
  return SetFamily::from_sets(std::move(work));
}

struct WlrCounterexample {
  Bitset a;
  Bitset b;
  int letter;
};

struct SpaceReport {
  bool is_accommodating = true;
  bool is_non_degenerate = true;
  bool is_weakly_left_resolving = true;
  bool is_set_finite = true;           // automatic on finite graphs
  bool is_receiver_set_finite = true;  // automatic on finite graphs
  bool has_no_sinks = true;
  std::optional<WlrCounterexample> wlr_counterexample;

  bool all_assumptions_hold() const {
    return is_accommodating && is_non_degenerate && is_weakly_left_resolving &&
           is_set_finite && is_receiver_set_finite && has_no_sinks;
  }

  // Names of failed flags, in report order.
  std::vector<std::string> failed_flags() const {
    std::vector<std::string> out;
    if (!is_accommodating) out.push_back("accommodating");
    if (!is_non_degenerate) out.push_back("non-degenerate");
    if (!is_weakly_left_resolving) out.push_back("weakly left-resolving");
    if (!is_set_finite) out.push_back("set-finite");
    if (!is_receiver_set_finite) out.push_back("receiver set-finite");
    if (!has_no_sinks) out.push_back("no sinks");
    return out;
  }
};

// Report-only check of every structural flag of (g, F).  The weakly
// left-resolving test scans all member pairs against all single
// letters; with range closure this extends to arbitrary words by
// induction via r(A∩B, a·β) = r(r(A,a) ∩ r(B,a), β).
inline SpaceReport verify_space(const LabelledGraph& g, const SetFamily& F) {
  SpaceReport rep;
  rep.has_no_sinks = validate_graph(g).has_no_sinks;

  for (int a = 0; a < g.label_count(); ++a)
    if (!F.contains(g.letter_range(g.full_set(), a)))
      rep.is_accommodating = false;
  for (int i = 0; i < F.size() && rep.is_accommodating; ++i)
    for (int a = 0; a < g.label_count(); ++a)
      if (!F.contains(g.letter_range(F[i], a))) rep.is_accommodating = false;
  for (int i = 0; i < F.size() && rep.is_accommodating; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (!F.contains(F[i] | F[j]) || !F.contains(F[i] & F[j])) {
        rep.is_accommodating = false;
        break;
      }
    }
  }

  for (int i = 0; i < F.size() && rep.is_non_degenerate; ++i)
    for (int j = 0; j < F.size(); ++j)
      if (!F.contains(F[i] - F[j])) {
        rep.is_non_degenerate = false;
        break;
      }

  // First counterexample under ascending (i, j, letter) scan.
  for (int i = 0; i < F.size() && rep.is_weakly_left_resolving; ++i) {
    for (int j = 0; j < F.size() && rep.is_weakly_left_resolving; ++j) {
      for (int a = 0; a < g.label_count(); ++a) {
        Bitset lhs = g.letter_range(F[i] & F[j], a);
        Bitset rhs = g.letter_range(F[i], a) & g.letter_range(F[j], a);
        if (!(lhs == rhs)) {
          rep.is_weakly_left_resolving = false;
          rep.wlr_counterexample = WlrCounterexample{F[i], F[j], a};
          break;
        }
      }
    }
  }
  return rep;
}

// A graph together with a verified accommodating family and the tables
// every downstream computation shares.  Constructed via make_space.
class LabelledSpace {
 public:
  const LabelledGraph& graph() const { return graph_; }
  const SetFamily& family() const { return family_; }
  const SpaceReport& report() const { return report_; }
  bool verified() const { return report_.all_assumptions_hold(); }

  int size() const { return family_.size(); }

  // letter_range_idx(i, a): family index of r(B_i, a).  Only available
  // on verified spaces (range closure guarantees membership).
  int letter_range_idx(int i, int a) const {
    require_verified();
    return letter_range_idx_[i][a];
  }

  // Family indices of the subsets of member i that belong to B,
  // including i itself and the empty set.
  const std::vector<int>& subsets_of(int i) const {
    require_verified();
    return subsets_of_[i];
  }

  const std::vector<int>& supersets_of(int i) const {
    require_verified();
    return supersets_of_[i];
  }

  void require_verified() const {
    if (!verified()) throw AssumptionError("space unverified");
  }

  friend LabelledSpace make_space(LabelledGraph g, std::optional<SetFamily> F,
                                  bool allow_unverified, int max_family_size);

 private:
  LabelledSpace(LabelledGraph g, SetFamily F, SpaceReport rep)
      : graph_(std::move(g)), family_(std::move(F)), report_(rep) {
    if (verified()) build_tables();
  }

  void build_tables() {
    int n = family_.size();
    letter_range_idx_.assign(n, std::vector<int>(graph_.label_count(), -1));
    subsets_of_.assign(n, {});
    supersets_of_.assign(n, {});
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < graph_.label_count(); ++a)
        letter_range_idx_[i][a] = family_.index_of(graph_.letter_range(family_[i], a));
      for (int j = 0; j < n; ++j) {
        if (family_[j].is_subset_of(family_[i])) subsets_of_[i].push_back(j);
        if (family_[i].is_subset_of(family_[j])) supersets_of_[i].push_back(j);
      }
    }
  }

  LabelledGraph graph_;
  SetFamily family_;
  SpaceReport report_;
  std::vector<std::vector<int>> letter_range_idx_;
  std::vector<std::vector<int>> subsets_of_;
  std::vector<std::vector<int>> supersets_of_;
};

// Builds a LabelledSpace, generating the family when none is supplied.
// Fails on any Assumption violation unless allow_unverified is set; an
// unverified space still carries its report but refuses the index
// tables that lattice, tail and topology computations rely on.
inline LabelledSpace make_space(LabelledGraph g,
                                std::optional<SetFamily> F = std::nullopt,
                                bool allow_unverified = false,
                                int max_family_size = 4096) {
  SetFamily family = F ? std::move(*F) : generate_family(g, max_family_size);
  SpaceReport rep = verify_space(g, family);
  if (!rep.all_assumptions_hold() && !allow_unverified) {
    std::string msg = "assumption violated:";
    for (const auto& flag : rep.failed_flags()) msg += " " + flag;
    if (rep.wlr_counterexample) {
      const auto& cx = *rep.wlr_counterexample;
      msg += " (A=" + g.set_to_string(cx.a) + ", B=" + g.set_to_string(cx.b) +
             ", letter " + g.label_name(cx.letter) + ")";
    }
    throw AssumptionError(msg);
  }
  return LabelledSpace(std::move(g), std::move(family), rep);
}

}  // namespace lspace
