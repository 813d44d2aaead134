#pragma once

#include <fstream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lspace/dot.hpp"
#include "lspace/errors.hpp"
#include "lspace/family.hpp"
#include "lspace/graph.hpp"
#include "lspace/hs.hpp"
#include "lspace/json_io.hpp"
#include "lspace/oracle.hpp"
#include "lspace/tails.hpp"
#include "lspace/topology.hpp"

namespace lspace {

namespace cli_detail {

inline Json tail_to_json(const LabelledSpace& sp, const Tail& t) {
  Json j;
  j["sets"] = subfamily_to_json(sp.graph(), sp.family(), t.members);
  j["verified"] = t.verified();
  Json axioms;
  axioms["nonempty"] = t.nonempty;
  axioms["excludes_empty_set"] = t.no_empty_set;
  axioms["cofinality"] = t.axiom_a;
  axioms["non_termination"] = t.axiom_b;
  axioms["upward_closure"] = t.axiom_c;
  j["axioms"] = axioms;
  Json witnesses;
  if (t.witness_a) {
    witnesses["cofinality"] = {
        {"A", set_to_json(sp.graph(), sp.family()[t.witness_a->first])},
        {"B", set_to_json(sp.graph(), sp.family()[t.witness_a->second])}};
  } else {
    witnesses["cofinality"] = nullptr;
  }
  witnesses["non_termination"] =
      t.witness_b ? set_to_json(sp.graph(), sp.family()[*t.witness_b])
                  : Json(nullptr);
  if (t.witness_c) {
    witnesses["upward_closure"] = {
        {"outside", set_to_json(sp.graph(), sp.family()[t.witness_c->first])},
        {"inside", set_to_json(sp.graph(), sp.family()[t.witness_c->second])}};
  } else {
    witnesses["upward_closure"] = nullptr;
  }
  j["witnesses"] = witnesses;
  return j;
}

inline Json subset_ids_json(const Bitset& mask) {
  Json out = Json::array();
  for (int i = mask.find_first(); i != -1; i = mask.find_next(i))
    out.push_back(i);
  return out;
}

struct CommonArgs {
  std::string input;
  std::string output;
  int max_family_size = 4096;
  bool allow_unverified = false;
};

inline LabelledSpace build_space(const CommonArgs& args) {
  GraphSpec spec = load_graph_file(args.input);
  return make_space(LabelledGraph::build(spec), std::nullopt,
                    args.allow_unverified, args.max_family_size);
}

inline int cmd_validate(const CommonArgs& args, Json& doc) {
  GraphSpec spec = load_graph_file(args.input);
  LabelledGraph g = LabelledGraph::build(spec);
  GraphValidation gv = validate_graph(g);
  SetFamily fam = generate_family(g, args.max_family_size);
  SpaceReport rep = verify_space(g, fam);

  doc["graph"] = {{"vertices", g.vertex_count()},
                  {"edges", static_cast<int>(g.edges().size())},
                  {"labels", g.label_count()}};
  doc["has_no_sinks"] = gv.has_no_sinks;
  Json sinks = Json::array();
  for (int v : gv.sink_vertices) sinks.push_back(g.vertex_name(v));
  doc["sink_vertices"] = sinks;
  doc["is_left_resolving"] = gv.is_left_resolving;
  Json collisions = Json::array();
  for (const auto& [v, a] : gv.label_collisions)
    collisions.push_back(
        {{"vertex", g.vertex_name(v)}, {"label", g.label_name(a)}});
  doc["label_collisions"] = collisions;
  doc["is_row_finite"] = gv.is_row_finite;
  doc["family_size"] = fam.size();
  doc["is_accommodating"] = rep.is_accommodating;
  doc["is_non_degenerate"] = rep.is_non_degenerate;
  doc["is_weakly_left_resolving"] = rep.is_weakly_left_resolving;
  doc["is_set_finite"] = rep.is_set_finite;
  doc["is_receiver_set_finite"] = rep.is_receiver_set_finite;
  if (rep.wlr_counterexample) {
    const auto& cx = *rep.wlr_counterexample;
    doc["wlr_counterexample"] = {{"A", set_to_json(g, cx.a)},
                                 {"B", set_to_json(g, cx.b)},
                                 {"letter", g.label_name(cx.letter)}};
  } else {
    doc["wlr_counterexample"] = nullptr;
  }
  return rep.all_assumptions_hold() ? 0 : 1;
}

inline int cmd_family(const CommonArgs& args, Json& doc) {
  GraphSpec spec = load_graph_file(args.input);
  LabelledGraph g = LabelledGraph::build(spec);
  doc = family_to_json(g, generate_family(g, args.max_family_size));
  return 0;
}

inline int cmd_ideals(const CommonArgs& args, Json& doc) {
  LabelledSpace sp = build_space(args);
  HSLattice lattice = enumerate_hs(sp);
  doc["count"] = lattice.size();
  Json ideals = Json::array();
  for (int i = 0; i < lattice.size(); ++i)
    ideals.push_back(
        {{"id", i},
         {"sets", subfamily_to_json(sp.graph(), sp.family(),
                                    lattice.members[i])}});
  doc["ideals"] = ideals;
  doc["bottom"] = lattice.bottom_id;
  doc["top"] = lattice.top_id;
  Json hasse = Json::array();
  for (const auto& [lower, upper] : lattice.hasse_edges)
    hasse.push_back({lower, upper});
  doc["hasse_edges"] = hasse;
  doc["dot"] = lattice_dot(sp, lattice);
  return 0;
}

inline int cmd_tails(const CommonArgs& args, Json& doc) {
  LabelledSpace sp = build_space(args);
  HSLattice lattice = enumerate_hs(sp);
  ReachIndex idx(sp);
  std::vector<Tail> tails = enumerate_tails(sp, idx, lattice);
  doc["count"] = static_cast<int>(tails.size());
  Json list = Json::array();
  for (std::size_t i = 0; i < tails.size(); ++i) {
    Json t = tail_to_json(sp, tails[i]);
    Json entry;
    entry["id"] = static_cast<int>(i);
    entry["sets"] = t["sets"];
    entry["complement_ideal"] =
        lattice.index_of(Bitset::full(sp.size()) - tails[i].members);
    list.push_back(entry);
  }
  doc["tails"] = list;
  return 0;
}

inline int cmd_prim(const CommonArgs& args, bool dot_only, Json& doc,
                    std::string& dot_text) {
  LabelledSpace sp = build_space(args);
  HSLattice lattice = enumerate_hs(sp);
  ReachIndex idx(sp);
  TailSpace ts(sp, idx, lattice);
  SpecializationOrder order = specialization_order(ts);
  if (dot_only) {
    dot_text = prim_order_dot(sp, ts, order);
    return 0;
  }

  Json tails = Json::array();
  for (int i = 0; i < ts.size(); ++i)
    tails.push_back({{"id", i},
                     {"sets", subfamily_to_json(sp.graph(), sp.family(),
                                                ts.tails()[i].members)},
                     {"complement_ideal", ts.complement_ids()[i]}});
  doc["tails"] = tails;

  TopologyOptions topts;
  if (ts.size() <= topts.max_exhaustive_size) {
    Json closed = Json::array();
    for (const Bitset& c : closed_sets(ts)) closed.push_back(subset_ids_json(c));
    doc["closed_sets"] = closed;
  } else {
    doc["closed_sets"] = nullptr;
  }
  Json edges = Json::array();
  for (const auto& [from, to] : order.edges) edges.push_back({from, to});
  doc["specialization_edges"] = edges;
  doc["t0"] = order.t0;
  KuratowskiReport kr = verify_kuratowski(ts, topts);
  HomeomorphismReport hr = verify_homeomorphism(ts, topts);
  doc["kuratowski_verified"] = kr.passed();
  doc["homeomorphism_verified"] = hr.passed;
  doc["exhaustive"] = kr.exhaustive && hr.exhaustive;
  return 0;
}

inline int cmd_quotient(const CommonArgs& args, int ideal_id, Json& doc) {
  LabelledSpace sp = build_space(args);
  HSLattice lattice = enumerate_hs(sp);
  if (ideal_id < 0 || ideal_id >= lattice.size())
    throw InputError("ideal id out of range");
  QuotientSpace q = quotient(sp, lattice.members[ideal_id]);
  doc["ideal"] = ideal_id;
  doc["u_h"] = set_to_json(sp.graph(), q.u_h);
  doc["count"] = static_cast<int>(q.classes.size());
  Json classes = Json::array();
  for (std::size_t c = 0; c < q.classes.size(); ++c) {
    Json members = Json::array();
    for (int m : q.classes[c])
      members.push_back(set_to_json(sp.graph(), sp.family()[m]));
    classes.push_back(
        {{"representative", set_to_json(sp.graph(), q.representatives[c])},
         {"members", members}});
  }
  doc["classes"] = classes;
  doc["quotient_weakly_left_resolving"] = q.quotient_wlr_verified;
  return 0;
}

inline int cmd_tail_from_word(const CommonArgs& args, const std::string& set_arg,
                              const std::string& prefix_arg,
                              const std::string& cycle_arg, Json& doc) {
  LabelledSpace sp = build_space(args);
  const LabelledGraph& g = sp.graph();

  std::vector<std::string> ids;
  std::size_t pos = 0;
  while (pos <= set_arg.size()) {
    std::size_t comma = set_arg.find(',', pos);
    ids.push_back(set_arg.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  Bitset source_set = g.vertex_set(ids);
  int source = sp.family().index_of(source_set);
  if (source < 0)
    throw InputError("set not in family: " + g.set_to_string(source_set));

  UltimatelyPeriodicWord w = UltimatelyPeriodicWord::make(
      g, Word::parse_letters(g, prefix_arg), Word::parse_letters(g, cycle_arg));

  ReachIndex idx(sp);
  WordTailResult res = tail_from_word(sp, idx, source, w);
  doc["source"] = set_to_json(g, source_set);
  doc["prefix"] = Word::format_letters(g, w.prefix);
  doc["cycle"] = Word::format_letters(g, w.cycle);
  Json trace = Json::array();
  for (int m : res.trace) trace.push_back(set_to_json(g, sp.family()[m]));
  doc["trace"] = trace;
  doc["tail"] = tail_to_json(sp, res.tail);
  return 0;
}

inline int cmd_check_oracle(unsigned seed, int instances, Json& doc) {
  CorpusOptions opts;
  opts.seed = seed;
  opts.instances = instances;
  OracleRunReport rep = run_oracle_check(opts);
  doc["seed"] = rep.seed;
  doc["instances"] = rep.instances;
  doc["comparisons"] = rep.comparisons;
  doc["passed"] = rep.passed;
  if (rep.first_divergence) {
    doc["first_divergence"] = {{"index", *rep.first_divergence},
                               {"kind", rep.divergence_kind},
                               {"graph", graph_to_json(rep.divergent_spec)}};
  } else {
    doc["first_divergence"] = nullptr;
  }
  return rep.passed ? 0 : 1;
}

}  // namespace cli_detail

// Entry point shared by the binary and the tests.  `args` excludes the
// program name.  Returns the process exit status: 0 success, 1 domain
// or assumption failure, 2 input/usage error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  using cli_detail::CommonArgs;

  CLI::App app{"labelled-space ideal and primitive-ideal structure tool"};
  app.require_subcommand(1);

  CommonArgs common;
  bool prim_dot = false;
  int ideal_id = 0;
  std::string set_arg, prefix_arg, cycle_arg;
  unsigned seed = 12345;
  int instances = 200;

  auto add_common = [&](CLI::App* cmd, bool with_input = true) {
    if (with_input)
      cmd->add_option("input", common.input, "graph JSON file")->required();
    cmd->add_option("--max-family-size", common.max_family_size,
                    "cap on generated family size");
    cmd->add_flag("--allow-unverified", common.allow_unverified,
                  "build the space even if assumptions fail");
    cmd->add_option("-o,--output", common.output,
                    "write output here instead of stdout");
  };

  CLI::App* validate = app.add_subcommand("validate", "verify the space assumptions");
  add_common(validate);
  CLI::App* family = app.add_subcommand("family", "generate the set family");
  add_common(family);
  CLI::App* ideals = app.add_subcommand("ideals", "enumerate the ideal lattice");
  add_common(ideals);
  CLI::App* tails = app.add_subcommand("tails", "enumerate the maximal tails");
  add_common(tails);
  CLI::App* prim = app.add_subcommand("prim", "topology on the maximal tails");
  add_common(prim);
  prim->add_flag("--dot", prim_dot, "emit the specialization order as DOT");
  CLI::App* quot = app.add_subcommand("quotient", "quotient the family by an ideal");
  add_common(quot);
  quot->add_option("--ideal", ideal_id, "lattice id of the ideal")->required();
  CLI::App* word = app.add_subcommand("tail-from-word",
                                      "build a tail from an eventually periodic word");
  add_common(word);
  word->add_option("--set", set_arg, "source set, comma-separated vertex ids")
      ->required();
  word->add_option("--prefix", prefix_arg, "finite prefix of the word");
  word->add_option("--cycle", cycle_arg, "repeated cycle of the word")->required();
  CLI::App* oracle = app.add_subcommand("check-oracle",
                                        "compare against brute-force oracles");
  add_common(oracle, false);
  oracle->add_option("--seed", seed, "corpus random seed");
  oracle->add_option("--instances", instances, "number of corpus graphs");

  std::vector<const char*> argv;
  argv.push_back("lspace");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Json doc;
    std::string text;
    int status = 0;
    if (validate->parsed()) {
      status = cli_detail::cmd_validate(common, doc);
    } else if (family->parsed()) {
      status = cli_detail::cmd_family(common, doc);
    } else if (ideals->parsed()) {
      status = cli_detail::cmd_ideals(common, doc);
    } else if (tails->parsed()) {
      status = cli_detail::cmd_tails(common, doc);
    } else if (prim->parsed()) {
      status = cli_detail::cmd_prim(common, prim_dot, doc, text);
    } else if (quot->parsed()) {
      status = cli_detail::cmd_quotient(common, ideal_id, doc);
    } else if (word->parsed()) {
      status = cli_detail::cmd_tail_from_word(common, set_arg, prefix_arg,
                                              cycle_arg, doc);
    } else if (oracle->parsed()) {
      status = cli_detail::cmd_check_oracle(seed, instances, doc);
    }
    if (text.empty()) text = doc.dump(2) + "\n";
    if (common.output.empty()) {
      out << text;
    } else {
      std::ofstream file(common.output);
      if (!file) throw InputError("cannot write output: " + common.output);
      file << text;
    }
    return status;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lspace
