#pragma once

#include <string>

#include "lspace/family.hpp"
#include "lspace/hs.hpp"
#include "lspace/topology.hpp"

namespace lspace {

inline std::string dot_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// "{{},{v},{v,w}}": a subfamily as the list of its member sets.
inline std::string subfamily_label(const LabelledSpace& sp,
                                   const Bitset& mask) {
  std::string out = "{";
  bool first = true;
  for (int i = mask.find_first(); i != -1; i = mask.find_next(i)) {
    if (!first) out += ",";
    out += sp.graph().set_to_string(sp.family()[i]);
    first = false;
  }
  out += "}";
  return out;
}

// Hasse diagram of the lattice, lower member pointing at its covers.
inline std::string lattice_dot(const LabelledSpace& sp,
                               const HSLattice& lattice) {
  std::string out = "digraph lattice {\n";
  for (int i = 0; i < lattice.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" +
           dot_escape(subfamily_label(sp, lattice.members[i])) + "\"];\n";
  for (const auto& [lower, upper] : lattice.hasse_edges)
    out += "  n" + std::to_string(lower) + " -> n" + std::to_string(upper) +
           ";\n";
  out += "}\n";
  return out;
}

// Specialization order on the maximal tails; reflexive edges omitted
// so the rendering shows only genuine specializations.
inline std::string prim_order_dot(const LabelledSpace& sp, const TailSpace& ts,
                                  const SpecializationOrder& order) {
  std::string out = "digraph prim {\n";
  for (int i = 0; i < ts.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" +
           dot_escape(subfamily_label(sp, ts.tails()[i].members)) + "\"];\n";
  for (const auto& [from, to] : order.edges)
    if (from != to)
      out += "  n" + std::to_string(from) + " -> n" + std::to_string(to) +
             ";\n";
  out += "}\n";
  return out;
}

}  // namespace lspace
