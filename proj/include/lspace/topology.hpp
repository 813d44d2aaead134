#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "lspace/bitset.hpp"
#include "lspace/errors.hpp"
#include "lspace/family.hpp"
#include "lspace/hs.hpp"
#include "lspace/tails.hpp"

namespace lspace {

inline std::uint32_t subset_to_bits(const Bitset& b) {
  std::uint32_t out = 0;
  for (int i = b.find_first(); i != -1; i = b.find_next(i))
    out |= std::uint32_t{1} << i;
  return out;
}

inline Bitset bits_to_subset(int size, std::uint32_t bits) {
  Bitset out(size);
  for (int i = 0; i < size; ++i)
    if (bits >> i & 1) out.set(i);
  return out;
}

// The space χ of maximal tails with the closure operator
// ξ̄ = {D ∈ χ : D ≫ ∪_{T∈ξ} T} and its hull-kernel counterpart on the
// complement families.  Subsets of χ are Bitsets over tail ids.
class TailSpace {
 public:
  TailSpace(const LabelledSpace& sp, const ReachIndex& idx,
            const HSLattice& lattice)
      : tails_(enumerate_tails(sp, idx, lattice)) {
    int m = size();
    complement_ids_.reserve(m);
    complements_.reserve(m);
    for (const Tail& t : tails_) {
      Bitset H = Bitset::full(sp.size()) - t.members;
      int id = lattice.index_of(H);
      if (id < 0) throw Error("tail complement missing from lattice");
      complement_ids_.push_back(id);
      complements_.push_back(std::move(H));
    }

    // tail_hits[A]: tails owning a member that A sees.  A tail D lies
    // in ξ̄ iff every A ∈ D sees into some tail of ξ, so only the
    // distinct hit rows of D's members matter.
    std::vector<Bitset> tail_hits(sp.size(), Bitset(m));
    for (int a = 0; a < sp.size(); ++a)
      for (int j = 0; j < m; ++j)
        if (idx.seen_by(a).intersects(tails_[j].members)) tail_hits[a].set(j);
    hit_rows_.assign(m, {});
    for (int i = 0; i < m; ++i) {
      for (int a = tails_[i].members.find_first(); a != -1;
           a = tails_[i].members.find_next(a)) {
        const Bitset& row = tail_hits[a];
        auto& rows = hit_rows_[i];
        if (std::find(rows.begin(), rows.end(), row) == rows.end())
          rows.push_back(row);
      }
    }
  }

  int size() const { return static_cast<int>(tails_.size()); }
  const std::vector<Tail>& tails() const { return tails_; }
  const std::vector<int>& complement_ids() const { return complement_ids_; }
  const Bitset& complement(int i) const { return complements_[i]; }

  Bitset closure(const Bitset& xi) const {
    Bitset out(size());
    for (int i = 0; i < size(); ++i) {
      bool inside = true;
      for (const Bitset& row : hit_rows_[i]) {
        if (!row.intersects(xi)) {
          inside = false;
          break;
        }
      }
      if (inside) out.set(i);
    }
    return out;
  }

  // {D : H_D ⊇ ∩_{T∈ξ} H_T}; empty ξ maps to ∅ to match the closure.
  Bitset hull_kernel(const Bitset& xi) const {
    Bitset out(size());
    if (xi.none()) return out;
    int first = xi.find_first();
    Bitset inter = complements_[first];
    for (int t = xi.find_next(first); t != -1; t = xi.find_next(t))
      inter &= complements_[t];
    for (int i = 0; i < size(); ++i)
      if (inter.is_subset_of(complements_[i])) out.set(i);
    return out;
  }

  Bitset point_closure(int i) const {
    return closure(Bitset::singleton(size(), i));
  }

 private:
  std::vector<Tail> tails_;
  std::vector<int> complement_ids_;
  std::vector<Bitset> complements_;
  std::vector<std::vector<Bitset>> hit_rows_;
};

struct TopologyOptions {
  int max_exhaustive_size = 20;  // 2^20 subsets at most
  unsigned seed = 12345;         // sampled mode beyond that
  long long samples = 100000;
};

struct KuratowskiReport {
  bool exhaustive = true;
  long long subsets_checked = 0;
  long long pairs_checked = 0;
  bool empty_ok = true;
  bool extensive_ok = true;
  bool idempotent_ok = true;
  bool additive_ok = true;
  std::optional<Bitset> extensive_witness;
  std::optional<Bitset> idempotent_witness;
  std::optional<std::pair<Bitset, Bitset>> additive_witness;

  bool passed() const {
    return empty_ok && extensive_ok && idempotent_ok && additive_ok;
  }
};

// Checks the four closure axioms: ∅̄ = ∅, ξ ⊆ ξ̄, idempotence, and
// finite additivity.  Exhaustive over all subsets (and subset pairs for
// additivity) up to the size bound; seeded random sampling beyond.
inline KuratowskiReport verify_kuratowski(const TailSpace& ts,
                                          const TopologyOptions& opts = {}) {
  KuratowskiReport rep;
  int m = ts.size();
  Bitset empty(m);
  rep.empty_ok = ts.closure(empty).none();

  auto check_unary = [&](const Bitset& xi) {
    Bitset c = ts.closure(xi);
    if (rep.extensive_ok && !xi.is_subset_of(c)) {
      rep.extensive_ok = false;
      rep.extensive_witness = xi;
    }
    if (rep.idempotent_ok && !(ts.closure(c) == c)) {
      rep.idempotent_ok = false;
      rep.idempotent_witness = xi;
    }
  };
  auto check_pair = [&](const Bitset& xi, const Bitset& zeta) {
    if (!rep.additive_ok) return;
    Bitset lhs = ts.closure(xi | zeta);
    Bitset rhs = ts.closure(xi) | ts.closure(zeta);
    if (!(lhs == rhs)) {
      rep.additive_ok = false;
      rep.additive_witness = {xi, zeta};
    }
  };

  if (m <= opts.max_exhaustive_size) {
    std::uint64_t total = std::uint64_t{1} << m;
    std::vector<std::uint32_t> clo(total);
    for (std::uint64_t x = 0; x < total; ++x) {
      Bitset xi = bits_to_subset(m, static_cast<std::uint32_t>(x));
      clo[x] = subset_to_bits(ts.closure(xi));
      ++rep.subsets_checked;
      if (rep.extensive_ok && (x & clo[x]) != x) {
        rep.extensive_ok = false;
        rep.extensive_witness = xi;
      }
    }
    for (std::uint64_t x = 0; x < total && rep.idempotent_ok; ++x) {
      if (clo[clo[x]] != clo[x]) {
        rep.idempotent_ok = false;
        rep.idempotent_witness = bits_to_subset(m, static_cast<std::uint32_t>(x));
      }
    }
    for (std::uint64_t x = 0; x < total && rep.additive_ok; ++x) {
      for (std::uint64_t z = 0; z <= x; ++z) {
        ++rep.pairs_checked;
        if (clo[x | z] != (clo[x] | clo[z])) {
          rep.additive_ok = false;
          rep.additive_witness = {bits_to_subset(m, static_cast<std::uint32_t>(x)),
                                  bits_to_subset(m, static_cast<std::uint32_t>(z))};
          break;
        }
      }
    }
  } else {
    rep.exhaustive = false;
    std::mt19937_64 rng(opts.seed);
    auto draw = [&] {
      Bitset b(m);
      for (int i = 0; i < m; ++i)
        if (rng() & 1) b.set(i);
      return b;
    };
    for (long long k = 0; k < opts.samples; ++k) {
      Bitset xi = draw();
      Bitset zeta = draw();
      check_unary(xi);
      check_pair(xi, zeta);
      ++rep.subsets_checked;
      ++rep.pairs_checked;
    }
  }
  return rep;
}

struct HomeomorphismReport {
  bool exhaustive = true;
  bool passed = true;
  long long subsets_checked = 0;
  std::optional<Bitset> witness;
};

// The Φ(ξ̄) = Φ(ξ)‾ half of the homeomorphism: the tail closure must
// match the hull-kernel closure on every subset of χ.
inline HomeomorphismReport verify_homeomorphism(
    const TailSpace& ts, const TopologyOptions& opts = {}) {
  HomeomorphismReport rep;
  int m = ts.size();
  auto check = [&](const Bitset& xi) {
    ++rep.subsets_checked;
    if (rep.passed && !(ts.closure(xi) == ts.hull_kernel(xi))) {
      rep.passed = false;
      rep.witness = xi;
    }
  };
  if (m <= opts.max_exhaustive_size) {
    std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t x = 0; x < total; ++x)
      check(bits_to_subset(m, static_cast<std::uint32_t>(x)));
  } else {
    rep.exhaustive = false;
    std::mt19937_64 rng(opts.seed);
    for (long long k = 0; k < opts.samples; ++k) {
      Bitset xi(m);
      for (int i = 0; i < m; ++i)
        if (rng() & 1) xi.set(i);
      check(xi);
    }
  }
  return rep;
}

// All closed subsets of χ (the distinct closure images), canonically
// ordered.  Exhaustive by nature, hence the size guard.
inline std::vector<Bitset> closed_sets(const TailSpace& ts,
                                       int max_exhaustive_size = 20) {
  int m = ts.size();
  if (m > max_exhaustive_size) throw Error("use sampled mode");
  std::vector<Bitset> out;
  std::uint64_t total = std::uint64_t{1} << m;
  std::unordered_map<Bitset, bool, BitsetHash> seen;
  for (std::uint64_t x = 0; x < total; ++x) {
    Bitset c = ts.closure(bits_to_subset(m, static_cast<std::uint32_t>(x)));
    if (seen.emplace(c, true).second) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const Bitset& a, const Bitset& b) { return lex_less(a, b); });
  return out;
}

// D → D′ iff D′ ∈ closure({D}); reflexive edges included.  T₀ holds
// when no two distinct tails share their point closure.
struct SpecializationOrder {
  std::vector<std::pair<int, int>> edges;
  bool t0 = true;
};

inline SpecializationOrder specialization_order(const TailSpace& ts) {
  SpecializationOrder ord;
  std::vector<Bitset> pt;
  for (int i = 0; i < ts.size(); ++i) pt.push_back(ts.point_closure(i));
  for (int i = 0; i < ts.size(); ++i)
    for (int j = pt[i].find_first(); j != -1; j = pt[i].find_next(j))
      ord.edges.emplace_back(i, j);
  for (int i = 0; i < ts.size() && ord.t0; ++i)
    for (int j = 0; j < i; ++j)
      if (pt[i] == pt[j]) ord.t0 = false;
  return ord;
}

}  // namespace lspace
