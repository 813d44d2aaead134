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

namespace lspace {

// Subfamilies of B are Bitsets over family indices (one bit per member
// of space.family(), in canonical order).  All functions here take and
// return that representation.

// Mask with only the empty set's bit, the normal form of "no ideal".
inline Bitset bottom_subfamily(const LabelledSpace& sp) {
  int e = sp.family().index_of(sp.graph().empty_set());
  if (e < 0) throw Error("family does not contain the empty set");
  return Bitset::singleton(sp.size(), e);
}

// Converts an explicit family into an index mask.
inline Bitset subfamily_mask(const LabelledSpace& sp, const SetFamily& S) {
  Bitset m(sp.size());
  for (const Bitset& s : S.sets()) {
    int i = sp.family().index_of(s);
    if (i < 0)
      throw InputError("set not in family: " + sp.graph().set_to_string(s));
    m.set(i);
  }
  return m;
}

inline SetFamily subfamily_sets(const LabelledSpace& sp, const Bitset& mask) {
  std::vector<Bitset> out;
  for (int i = mask.find_first(); i != -1; i = mask.find_next(i))
    out.push_back(sp.family()[i]);
  return SetFamily::from_sets(std::move(out));
}

// Why a subfamily fails to be hereditary.  Members are family indices.
struct HereditaryWitness {
  int condition;        // 1 = ranges, 2 = unions, 3 = subsets-in-B
  int member;           // the A that breaks the condition
  int other = -1;       // condition 2: the B of the union; 3: the subset
  int letter = -1;      // condition 1 only
  int escaped_set = -1; // family index of the set that should be inside
};

// Hereditary: member ranges stay inside, pairwise unions stay inside,
// and every family member contained in a member is itself a member.
inline std::optional<HereditaryWitness> hereditary_witness(
    const LabelledSpace& sp, const Bitset& H) {
  sp.require_verified();
  for (int i = H.find_first(); i != -1; i = H.find_next(i)) {
    for (int a = 0; a < sp.graph().label_count(); ++a) {
      int r = sp.letter_range_idx(i, a);
      if (!H.test(r)) return HereditaryWitness{1, i, -1, a, r};
    }
    for (int j = H.find_first(); j != -1 && j <= i; j = H.find_next(j)) {
      int u = sp.family().index_of(sp.family()[i] | sp.family()[j]);
      if (!H.test(u)) return HereditaryWitness{2, i, j, -1, u};
    }
    for (int j : sp.subsets_of(i))
      if (!H.test(j)) return HereditaryWitness{3, i, j, -1, j};
  }
  return std::nullopt;
}

inline bool is_hereditary(const LabelledSpace& sp, const Bitset& H) {
  return !hereditary_witness(sp, H).has_value();
}

// A ▷ H: every single-letter relative range of A lies in H.
inline bool feeds_into(const LabelledSpace& sp, int member, const Bitset& H) {
  for (int a = 0; a < sp.graph().label_count(); ++a)
    if (!H.test(sp.letter_range_idx(member, a))) return false;
  return true;
}

// Family index of a member outside H all of whose letter ranges lie in
// H, or nullopt when H is saturated.
inline std::optional<int> saturated_witness(const LabelledSpace& sp,
                                            const Bitset& H) {
  sp.require_verified();
  for (int i = 0; i < sp.size(); ++i)
    if (!H.test(i) && feeds_into(sp, i, H)) return i;
  return std::nullopt;
}

inline bool is_saturated(const LabelledSpace& sp, const Bitset& H) {
  return !saturated_witness(sp, H).has_value();
}

inline bool is_hereditary_saturated(const LabelledSpace& sp, const Bitset& H) {
  return is_hereditary(sp, H) && is_saturated(sp, H);
}

// Smallest saturated superfamily of a hereditary input: iterate
// H_{k+1} = H_k ∪ {A : A ▷ H_k} to fixpoint.  The union accumulation is
// explicit, so even a (rejected) non-hereditary input could not shrink.
inline Bitset saturate(const LabelledSpace& sp, const Bitset& H0) {
  sp.require_verified();
  if (auto w = hereditary_witness(sp, H0)) {
    std::string msg = "input not hereditary: condition " +
                      std::to_string(w->condition) + " fails at A=" +
                      sp.graph().set_to_string(sp.family()[w->member]);
    throw Error(msg);
  }
  Bitset H = H0 | bottom_subfamily(sp);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i = 0; i < sp.size(); ++i) {
      if (!H.test(i) && feeds_into(sp, i, H)) {
        H.set(i);
        grew = true;
      }
    }
  }
  return H;
}

// Smallest hereditary-and-saturated subfamily containing S: interleave
// hereditary closure (ranges, pairwise unions, subsets-in-B) with
// saturation sweeps until the joint fixpoint.
inline Bitset hs_closure(const LabelledSpace& sp, const Bitset& S) {
  sp.require_verified();
  Bitset H(sp.size());
  std::vector<int> members;
  auto add = [&](int i) {
    if (!H.test(i)) {
      H.set(i);
      members.push_back(i);
    }
  };
  add(bottom_subfamily(sp).find_first());
  for (int i = S.find_first(); i != -1; i = S.find_next(i)) add(i);

  std::size_t processed = 0;
  while (true) {
    while (processed < members.size()) {
      int i = members[processed];
      for (int a = 0; a < sp.graph().label_count(); ++a)
        add(sp.letter_range_idx(i, a));
      for (int j : sp.subsets_of(i)) add(j);
      for (std::size_t l = 0; l <= processed; ++l)
        add(sp.family().index_of(sp.family()[i] | sp.family()[members[l]]));
      ++processed;
    }
    bool grew = false;
    for (int i = 0; i < sp.size(); ++i) {
      if (!H.test(i) && feeds_into(sp, i, H)) {
        add(i);
        grew = true;
      }
    }
    if (!grew) break;
  }
  return H;
}

// All hereditary-and-saturated subfamilies, ordered canonically, with
// meet/join tables and the Hasse diagram of the inclusion order.
struct HSLattice {
  std::vector<Bitset> members;  // subfamily masks, canonical order
  int bottom_id = -1;
  int top_id = -1;
  std::vector<std::vector<int>> meet_table;
  std::vector<std::vector<int>> join_table;
  std::vector<std::pair<int, int>> hasse_edges;  // (lower, upper) covers

  int size() const { return static_cast<int>(members.size()); }

  int index_of(const Bitset& mask) const {
    for (int i = 0; i < size(); ++i)
      if (members[i] == mask) return i;
    return -1;
  }
};

// Enumerates the lattice from the principal closures hs_closure({A}),
// closed under binary meet (intersection) and join (closure of union).
// Every hereditary-and-saturated family is the join of the principal
// closures of its members, so this is exhaustive.
inline HSLattice enumerate_hs(const LabelledSpace& sp) {
  sp.require_verified();
  std::vector<Bitset> work;
  std::unordered_map<Bitset, bool, BitsetHash> seen;
  auto push = [&](Bitset m) {
    if (seen.emplace(m, true).second) work.push_back(std::move(m));
  };

  push(bottom_subfamily(sp));
  for (int i = 0; i < sp.size(); ++i)
    push(hs_closure(sp, Bitset::singleton(sp.size(), i)));
  for (std::size_t i = 0; i < work.size(); ++i) {
    Bitset x = work[i];
    for (std::size_t j = 0; j <= i; ++j) {
      push(x & work[j]);
      push(hs_closure(sp, x | work[j]));
    }
  }

  HSLattice lat;
  lat.members = std::move(work);
  std::sort(lat.members.begin(), lat.members.end(),
            [](const Bitset& a, const Bitset& b) { return lex_less(a, b); });

  int n = lat.size();
  std::unordered_map<Bitset, int, BitsetHash> index;
  for (int i = 0; i < n; ++i) index.emplace(lat.members[i], i);
  for (int i = 0; i < n; ++i) {
    if (lat.members[i].count() == 1) lat.bottom_id = i;
    if (lat.members[i].count() == sp.size()) lat.top_id = i;
  }

  lat.meet_table.assign(n, std::vector<int>(n, -1));
  lat.join_table.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      int m = index.at(lat.members[i] & lat.members[j]);
      int u = index.at(hs_closure(sp, lat.members[i] | lat.members[j]));
      lat.meet_table[i][j] = lat.meet_table[j][i] = m;
      lat.join_table[i][j] = lat.join_table[j][i] = u;
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || !lat.members[i].is_subset_of(lat.members[j])) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k) {
        if (k == i || k == j) continue;
        if (lat.members[i].is_subset_of(lat.members[k]) &&
            lat.members[k].is_subset_of(lat.members[j]))
          cover = false;
      }
      if (cover) lat.hasse_edges.emplace_back(i, j);
    }
  }
  std::sort(lat.hasse_edges.begin(), lat.hasse_edges.end());
  return lat;
}

inline Bitset meet(const LabelledSpace& sp, const Bitset& H1,
                   const Bitset& H2) {
  if (!is_hereditary_saturated(sp, H1) || !is_hereditary_saturated(sp, H2))
    throw Error("input not hereditary-saturated");
  return H1 & H2;
}

inline Bitset join(const LabelledSpace& sp, const Bitset& H1,
                   const Bitset& H2) {
  if (!is_hereditary_saturated(sp, H1) || !is_hereditary_saturated(sp, H2))
    throw Error("input not hereditary-saturated");
  return hs_closure(sp, H1 | H2);
}

// Union of all members of a subfamily, as a vertex set.
inline Bitset subfamily_union(const LabelledSpace& sp, const Bitset& H) {
  Bitset u = sp.graph().empty_set();
  for (int i = H.find_first(); i != -1; i = H.find_next(i))
    u |= sp.family()[i];
  return u;
}

// A ∼_H B iff A ∪ U_H = B ∪ U_H, with U_H = ∪H.  Because H is finite
// and union-closed, U_H ∈ H and this matches the existential form
// "A ∪ W = B ∪ W for some W ∈ H".
inline bool sim_equiv(const LabelledSpace& sp, const Bitset& H, int member_a,
                      int member_b) {
  Bitset u = subfamily_union(sp, H);
  return (sp.family()[member_a] | u) == (sp.family()[member_b] | u);
}

// Partition of B modulo H.  Class ids follow the first appearance of a
// class while scanning members in canonical order; the representative
// of [A] is the common value A ∪ U_H.
struct QuotientSpace {
  Bitset u_h;                           // ∪H as a vertex set
  std::vector<std::vector<int>> classes;  // member ids per class
  std::vector<Bitset> representatives;    // A ∪ U_H per class
  std::vector<int> class_of;              // member id -> class id
  bool quotient_wlr_verified = false;
};

inline QuotientSpace quotient(const LabelledSpace& sp, const Bitset& H) {
  if (!is_hereditary_saturated(sp, H))
    throw Error("input not hereditary-saturated");
  QuotientSpace q;
  q.u_h = subfamily_union(sp, H);
  q.class_of.assign(sp.size(), -1);
  std::unordered_map<Bitset, int, BitsetHash> by_rep;
  for (int i = 0; i < sp.size(); ++i) {
    Bitset rep = sp.family()[i] | q.u_h;
    auto [it, fresh] = by_rep.emplace(rep, static_cast<int>(q.classes.size()));
    if (fresh) {
      q.classes.emplace_back();
      q.representatives.push_back(rep);
    }
    q.class_of[i] = it->second;
    q.classes[it->second].push_back(i);
  }

  // The quotient is itself weakly left-resolving iff ∼ is a congruence
  // for single-letter ranges and ranges of representative
  // intersections split classwise.
  const LabelledGraph& g = sp.graph();
  bool ok = true;
  auto class_of_set = [&](const Bitset& s) {
    return q.class_of[sp.family().index_of(s)];
  };
  for (int i = 0; i < sp.size() && ok; ++i)
    for (int j = 0; j < sp.size() && ok; ++j) {
      if (q.class_of[i] != q.class_of[j]) continue;
      for (int a = 0; a < g.label_count(); ++a) {
        int ri = sp.letter_range_idx(i, a);
        int rj = sp.letter_range_idx(j, a);
        if (q.class_of[ri] != q.class_of[rj]) ok = false;
      }
    }
  for (std::size_t c1 = 0; c1 < q.representatives.size() && ok; ++c1)
    for (std::size_t c2 = 0; c2 <= c1 && ok; ++c2) {
      Bitset r1 = q.representatives[c1];
      Bitset r2 = q.representatives[c2];
      for (int a = 0; a < g.label_count(); ++a) {
        Bitset lhs = g.letter_range(r1 & r2, a);
        Bitset rhs = g.letter_range(r1, a) & g.letter_range(r2, a);
        if (class_of_set(lhs) != class_of_set(rhs)) ok = false;
      }
    }
  q.quotient_wlr_verified = ok;
  return q;
}

}  // namespace lspace
