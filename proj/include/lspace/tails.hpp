#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lspace/bitset.hpp"
#include "lspace/errors.hpp"
#include "lspace/family.hpp"
#include "lspace/graph.hpp"
#include "lspace/hs.hpp"

namespace lspace {

// Reachability over the single-letter step relation on family members,
// plus the derived "sees" relation A ≥ B (some nonempty word's range
// from A contains B).  Built once per space and shared read-only.
class ReachIndex {
 public:
  explicit ReachIndex(const LabelledSpace& sp) {
    sp.require_verified();
    int n = sp.size();
    int letters = sp.graph().label_count();

    // contains_[k]: members included in member k.
    std::vector<Bitset> contains(n, Bitset(n));
    for (int k = 0; k < n; ++k)
      for (int j : sp.subsets_of(k)) contains[k].set(j);

    reach_.assign(n, Bitset(n));
    sees_.assign(n, Bitset(n));
    for (int i = 0; i < n; ++i) {
      std::vector<int> queue;
      auto visit = [&](int k) {
        if (!reach_[i].test(k)) {
          reach_[i].set(k);
          queue.push_back(k);
        }
      };
      for (int a = 0; a < letters; ++a) visit(sp.letter_range_idx(i, a));
      for (std::size_t q = 0; q < queue.size(); ++q)
        for (int a = 0; a < letters; ++a)
          visit(sp.letter_range_idx(queue[q], a));
      for (int k = reach_[i].find_first(); k != -1;
           k = reach_[i].find_next(k))
        sees_[i] |= contains[k];
    }
  }

  // Members reachable from i by a nonempty word (as exact ranges).
  const Bitset& reach(int i) const { return reach_[i]; }

  // sees(i, j): member j is contained in some nonempty-word range of i.
  bool sees(int i, int j) const { return sees_[i].test(j); }

  // Mask of all j seen by i.
  const Bitset& seen_by(int i) const { return sees_[i]; }

 private:
  std::vector<Bitset> reach_;
  std::vector<Bitset> sees_;
};

// Convenience form over explicit vertex sets; builds a throwaway index.
inline bool sees(const LabelledSpace& sp, const Bitset& a, const Bitset& b) {
  int i = sp.family().index_of(a);
  int j = sp.family().index_of(b);
  if (i < 0 || j < 0) throw InputError("set not in family");
  return ReachIndex(sp).sees(i, j);
}

// S ≫ T: every member of S sees some member of T.  Vacuously true for
// empty S.
inline bool family_sees(const LabelledSpace& sp, const ReachIndex& idx,
                        const Bitset& S, const Bitset& T) {
  (void)sp;
  for (int i = S.find_first(); i != -1; i = S.find_next(i))
    if (!idx.seen_by(i).intersects(T)) return false;
  return true;
}

// A candidate maximal tail with its full axiom report.  Witnesses are
// family indices.
struct Tail {
  Bitset members;  // subfamily mask over family indices
  bool nonempty = false;
  bool no_empty_set = false;
  bool axiom_a = false;  // cofinality: common C with A ≥ C, B ≥ C
  bool axiom_b = false;  // non-termination: some letter range stays in D
  bool axiom_c = false;  // upward closure under ≥
  std::optional<std::pair<int, int>> witness_a;  // (A, B) with no common C
  std::optional<int> witness_b;                  // A with no continuing letter
  std::optional<std::pair<int, int>> witness_c;  // (X outside, Y inside), X ≥ Y

  bool verified() const {
    return nonempty && no_empty_set && axiom_a && axiom_b && axiom_c;
  }
};

inline Tail is_maximal_tail(const LabelledSpace& sp, const ReachIndex& idx,
                            const Bitset& D) {
  sp.require_verified();
  Tail t;
  t.members = D;
  t.nonempty = D.any();
  int empty_idx = sp.family().index_of(sp.graph().empty_set());
  t.no_empty_set = empty_idx < 0 || !D.test(empty_idx);

  t.axiom_a = true;
  for (int i = D.find_first(); i != -1 && t.axiom_a; i = D.find_next(i)) {
    for (int j = D.find_first(); j != -1 && j <= i; j = D.find_next(j)) {
      Bitset common = idx.seen_by(i) & idx.seen_by(j) & D;
      if (common.none()) {
        t.axiom_a = false;
        t.witness_a = {j, i};
        break;
      }
    }
  }

  t.axiom_b = true;
  for (int i = D.find_first(); i != -1; i = D.find_next(i)) {
    bool continues = false;
    for (int a = 0; a < sp.graph().label_count(); ++a)
      if (D.test(sp.letter_range_idx(i, a))) continues = true;
    if (!continues) {
      t.axiom_b = false;
      t.witness_b = i;
      break;
    }
  }

  // (c) quantifies A over all of B, not just D.
  t.axiom_c = true;
  for (int x = 0; x < sp.size() && t.axiom_c; ++x) {
    if (D.test(x)) continue;
    Bitset seen_inside = idx.seen_by(x) & D;
    if (seen_inside.any()) {
      t.axiom_c = false;
      t.witness_c = {x, seen_inside.find_first()};
    }
  }
  return t;
}

inline Tail is_maximal_tail(const LabelledSpace& sp, const SetFamily& D) {
  ReachIndex idx(sp);
  return is_maximal_tail(sp, idx, subfamily_mask(sp, D));
}

// All maximal tails, in canonical order.  Complements of lattice
// members exhaust the candidates: every tail complement is hereditary
// and saturated.
inline std::vector<Tail> enumerate_tails(const LabelledSpace& sp,
                                         const ReachIndex& idx,
                                         const HSLattice& lattice) {
  std::vector<Tail> tails;
  for (const Bitset& H : lattice.members) {
    Bitset D = Bitset::full(sp.size()) - H;
    Tail t = is_maximal_tail(sp, idx, D);
    if (t.verified()) tails.push_back(std::move(t));
  }
  std::sort(tails.begin(), tails.end(), [](const Tail& a, const Tail& b) {
    return lex_less(a.members, b.members);
  });
  return tails;
}

// H is prime iff every lattice meet landing inside H has a factor
// inside H.  The top family is improper and excluded by convention.
inline bool is_prime_hs(const LabelledSpace& sp, const HSLattice& lattice,
                        int h_id) {
  (void)sp;
  if (h_id == lattice.top_id) throw Error("top family is not eligible");
  const Bitset& H = lattice.members[h_id];
  for (int i = 0; i < lattice.size(); ++i) {
    for (int j = 0; j <= i; ++j) {
      const Bitset& m = lattice.members[lattice.meet_table[i][j]];
      if (m.is_subset_of(H) && !lattice.members[i].is_subset_of(H) &&
          !lattice.members[j].is_subset_of(H))
        return false;
    }
  }
  return true;
}

// For every non-top lattice member: primeness of H must coincide with
// the complement verifying as a maximal tail.
struct PrimCorrespondence {
  bool ok = true;
  std::vector<int> prime_ids;  // lattice ids, ascending
  std::vector<int> tail_ids;   // lattice ids whose complement verifies
  std::optional<int> mismatch_id;

  int bijection_size() const { return static_cast<int>(prime_ids.size()); }
};

inline PrimCorrespondence verify_prim_correspondence(const LabelledSpace& sp,
                                                     const ReachIndex& idx,
                                                     const HSLattice& lattice) {
  PrimCorrespondence rep;
  for (int h = 0; h < lattice.size(); ++h) {
    if (h == lattice.top_id) continue;
    bool prime = is_prime_hs(sp, lattice, h);
    Bitset D = Bitset::full(sp.size()) - lattice.members[h];
    bool tail = is_maximal_tail(sp, idx, D).verified();
    if (prime) rep.prime_ids.push_back(h);
    if (tail) rep.tail_ids.push_back(h);
    if (prime != tail && !rep.mismatch_id) {
      rep.ok = false;
      rep.mismatch_id = h;
    }
  }
  return rep;
}

// Output of the word-driven construction: the prefix-range trace, the
// collected seed family, and the fixpoint with its axiom report.  The
// construction is verified, never trusted.
struct WordTailResult {
  std::vector<int> trace;  // member ids of A, r(A,w₁), r(A,w₁w₂), …
  Bitset d0;               // the trace as a mask
  Tail tail;               // fixpoint family, fully checked
};

inline WordTailResult tail_from_word(const LabelledSpace& sp,
                                     const ReachIndex& idx, int source,
                                     const UltimatelyPeriodicWord& w) {
  sp.require_verified();
  const LabelledGraph& g = sp.graph();
  if (sp.family()[source].none()) throw InputError("source set is empty");

  WordTailResult res;
  res.d0 = Bitset(sp.size());
  auto record = [&](int m) {
    if (!res.d0.test(m)) {
      res.d0.set(m);
      res.trace.push_back(m);
    }
  };

  record(source);
  int cur = source;
  std::vector<int> consumed;
  // Walk prefix then cycle repetitions; ranges repeat once a
  // (cycle position, current member) state recurs.
  std::vector<std::vector<bool>> visited(w.cycle.size(),
                                         std::vector<bool>(sp.size(), false));
  std::size_t t = 0;
  while (true) {
    int letter;
    std::size_t cycle_pos;
    if (t < w.prefix.size()) {
      letter = w.prefix[t];
      cycle_pos = w.cycle.size();  // not yet in the cycle
    } else {
      cycle_pos = (t - w.prefix.size()) % w.cycle.size();
      letter = w.cycle[cycle_pos];
      if (visited[cycle_pos][cur]) break;
      visited[cycle_pos][cur] = true;
    }
    consumed.push_back(letter);
    cur = sp.letter_range_idx(cur, letter);
    if (sp.family()[cur].none()) {
      std::string prefix = Word::format_letters(g, consumed);
      throw Error("word not realizable from " +
                  g.set_to_string(sp.family()[source]) + ": prefix \"" +
                  prefix + "\" has empty range");
    }
    record(cur);
    ++t;
  }

  // D_{k+1} = D_k ∪ {X : r(X,a) ∈ D_k for some letter a}.
  Bitset D = res.d0;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int x = 0; x < sp.size(); ++x) {
      if (D.test(x)) continue;
      for (int a = 0; a < g.label_count(); ++a) {
        if (D.test(sp.letter_range_idx(x, a))) {
          D.set(x);
          grew = true;
          break;
        }
      }
    }
  }
  res.tail = is_maximal_tail(sp, idx, D);
  return res;
}

// Check of the tail lemma: with K = {X ∉ H : A ≥ X} and the closure
// K̄ = hs_closure(K ∪ H), every Y ∈ K̄ ∖ H must see some Z ∈ K (then
// A ≥ Z and Y ≥ Z).  The closure absorbs H because K is hereditary
// only modulo H: subsets of K-members may fall into H.
struct TailLemmaReport {
  Bitset k;          // subfamily mask of K
  Bitset k_closure;  // hs_closure(K ∪ H)
  bool k_nonempty = false;
  bool passed = false;
  std::optional<int> failing_y;  // Y ∈ K̄ ∖ H seeing no member of K
};

inline TailLemmaReport tail_lemma_check(const LabelledSpace& sp,
                                        const ReachIndex& idx, const Bitset& H,
                                        int member_a) {
  sp.require_verified();
  if (!is_hereditary_saturated(sp, H))
    throw Error("input not hereditary-saturated");
  if (H.test(member_a)) throw Error("A is in H");

  TailLemmaReport rep;
  rep.k = idx.seen_by(member_a) - H;
  rep.k_nonempty = rep.k.any();
  rep.k_closure = hs_closure(sp, rep.k | H);
  rep.passed = rep.k_nonempty;
  Bitset candidates = rep.k_closure - H;
  for (int y = candidates.find_first(); y != -1;
       y = candidates.find_next(y)) {
    if (!idx.seen_by(y).intersects(rep.k)) {
      rep.passed = false;
      rep.failing_y = y;
      break;
    }
  }
  return rep;
}

}  // namespace lspace
