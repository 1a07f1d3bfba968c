#pragma once

// JSON and DOT interfaces.  Every emitter walks its value in canonical order
// so identical inputs always produce identical bytes.
//
// Network documents:
//   { "cells": ["1", ...], "edge_types": ["solid", ...],
//     "edges": [{"source": "5", "target": "1", "type": "solid"}, ...] }
// Duplicate edge objects encode multiplicity; declared order is preserved on
// re-serialization.
//
// Partition documents: list of classes as lists of cell names, canonical
// class order, singletons included.
//
// Lattice documents:
//   { "cells": [...], "elements": [partition...], "cover_edges": [[i,j],...] }

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

#include "ccn/errors.hpp"
#include "ccn/lattice.hpp"
#include "ccn/network.hpp"
#include "ccn/one_input.hpp"
#include "ccn/partition.hpp"
#include "ccn/union_compose.hpp"

namespace ccn {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Network

inline Network parse_network(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("cells") || !doc["cells"].is_array())
    throw ParseError("network document needs a \"cells\" array");
  if (!doc.contains("edge_types") || !doc["edge_types"].is_array())
    throw ParseError("network document needs an \"edge_types\" array");
  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw ParseError("network document needs an \"edges\" array");
  std::vector<std::string> cells, types;
  for (const auto& c : doc["cells"]) {
    if (!c.is_string()) throw ParseError("cell names must be strings");
    cells.push_back(c.get<std::string>());
  }
  for (const auto& t : doc["edge_types"]) {
    if (!t.is_string()) throw ParseError("edge type names must be strings");
    types.push_back(t.get<std::string>());
  }
  std::vector<std::array<std::string, 3>> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_object() || !e.contains("source") || !e.contains("target") || !e.contains("type"))
      throw ParseError("each edge needs \"source\", \"target\" and \"type\"");
    edges.push_back({e["source"].get<std::string>(), e["target"].get<std::string>(),
                     e["type"].get<std::string>()});
  }
  return make_network(std::move(cells), std::move(types), edges);
}

inline json network_to_json(const Network& n) {
  json doc;
  doc["cells"] = n.cells;
  doc["edge_types"] = n.edge_types;
  doc["edges"] = json::array();
  for (const auto& e : n.edges)
    doc["edges"].push_back({{"source", n.cells[static_cast<std::size_t>(e.source)]},
                            {"target", n.cells[static_cast<std::size_t>(e.target)]},
                            {"type", n.edge_types[static_cast<std::size_t>(e.type)]}});
  return doc;
}

// ---------------------------------------------------------------------------
// Partition

inline json partition_to_json(const Partition& p, const std::vector<std::string>& cells) {
  json out = json::array();
  for (const auto& cls : p.classes()) {
    json c = json::array();
    for (int cell : cls) c.push_back(cells[static_cast<std::size_t>(cell)]);
    out.push_back(std::move(c));
  }
  return out;
}

inline Partition partition_from_json(const json& doc, const std::vector<std::string>& cells) {
  if (!doc.is_array()) throw ParseError("partition document must be a list of classes");
  std::vector<std::vector<int>> classes;
  for (const auto& cls : doc) {
    if (!cls.is_array()) throw ParseError("partition classes must be lists of cell names");
    std::vector<int> ids;
    for (const auto& name : cls) {
      if (!name.is_string()) throw ParseError("partition cell names must be strings");
      auto it = std::find(cells.begin(), cells.end(), name.get<std::string>());
      if (it == cells.end())
        throw ParseError("partition references unknown cell \"" + name.get<std::string>() + "\"");
      ids.push_back(static_cast<int>(it - cells.begin()));
    }
    classes.push_back(std::move(ids));
  }
  try {
    return Partition::from_classes(static_cast<int>(cells.size()), classes);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid partition: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Validation report

inline json report_to_json(const ValidationReport& r) {
  json doc;
  doc["is_homogeneous"] = r.is_homogeneous;
  doc["is_asymmetric_inputs"] = r.is_asymmetric_inputs;
  doc["is_regular"] = r.is_regular;
  doc["is_connected"] = r.is_connected;
  doc["components"] = r.components;
  if (r.is_homogeneous) {
    json v = json::object();
    for (const auto& [t, val] : r.valency_per_type) v[t] = val;
    doc["valency_per_type"] = std::move(v);
  }
  doc["violations"] = r.violations;
  return doc;
}

// ---------------------------------------------------------------------------
// Lattice documents

struct LatticeDoc {
  std::vector<std::string> cells;
  std::vector<Partition> elements;  // canonical order
};

inline json lattice_to_json(const SyncLattice& l, const json* provenance = nullptr) {
  json doc;
  doc["cells"] = l.cells();
  doc["elements"] = json::array();
  for (const Partition& p : l.elements()) doc["elements"].push_back(partition_to_json(p, l.cells()));
  doc["cover_edges"] = json::array();
  for (auto [a, b] : l.hasse()) doc["cover_edges"].push_back({a, b});
  if (provenance) doc["provenance"] = *provenance;
  return doc;
}

inline LatticeDoc lattice_doc_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("cells") || !doc.contains("elements"))
    throw ParseError("lattice document needs \"cells\" and \"elements\"");
  LatticeDoc out;
  for (const auto& c : doc["cells"]) {
    if (!c.is_string()) throw ParseError("lattice cell names must be strings");
    out.cells.push_back(c.get<std::string>());
  }
  for (const auto& e : doc["elements"]) out.elements.push_back(partition_from_json(e, out.cells));
  std::sort(out.elements.begin(), out.elements.end());
  out.elements.erase(std::unique(out.elements.begin(), out.elements.end()), out.elements.end());
  return out;
}

/// One node per element labeled by its polydiagonal text, one arrow per
/// cover edge, bottom at the rank source.
inline std::string lattice_to_dot(const SyncLattice& l) {
  std::string dot = "digraph synchrony_lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  for (int i = 0; i < l.size(); ++i) {
    const Partition& p = l.elements()[static_cast<std::size_t>(i)];
    std::string label = p.is_singletons() ? std::string("⊤") : render(p, l.cells());
    dot += "  n" + std::to_string(i) + " [label=\"" + label + "\"];\n";
  }
  for (auto [a, b] : l.hasse())
    dot += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  dot += "}\n";
  return dot;
}

// ---------------------------------------------------------------------------
// One-input structure

inline json decomposition_to_json(const RingTreeDecomposition& d,
                                  const std::vector<std::string>& cells) {
  auto name = [&](int c) { return cells[static_cast<std::size_t>(c)]; };
  json doc;
  doc["ring"] = json::array();
  for (int r : d.ring) doc["ring"].push_back(name(r));
  doc["depth"] = d.depth;
  json anchor = json::object(), dist = json::object();
  for (int c = 0; c < d.graph.n; ++c) {
    anchor[name(c)] = name(d.anchor[static_cast<std::size_t>(c)]);
    dist[name(c)] = d.dist[static_cast<std::size_t>(c)];
  }
  doc["anchor"] = std::move(anchor);
  doc["dist"] = std::move(dist);
  doc["leaves"] = json::array();
  for (int c : d.leaves) doc["leaves"].push_back(name(c));
  doc["tails"] = json::array();
  for (const auto& tail : d.tails) {
    json t = json::array();
    for (int c : tail) t.push_back(name(c));
    doc["tails"].push_back(std::move(t));
  }
  return doc;
}

inline json spectral_to_json(const SpectralSummary& s, const std::vector<std::string>& cells) {
  auto name = [&](int c) { return cells[static_cast<std::size_t>(c)]; };
  json doc;
  doc["ring_length"] = s.m;
  json roots = json::array();
  for (int j = 0; j < s.m; ++j) roots.push_back(j);
  doc["root_of_unity_exponents"] = std::move(roots);
  doc["zero_multiplicity"] = s.zero_multiplicity;
  doc["zero_eigenspace_dim"] = s.zero_eigenspace_dim;
  json expo = json::object();
  for (int c = 0; c < s.decomposition.graph.n; ++c)
    expo[name(c)] = s.exponent[static_cast<std::size_t>(c)];
  doc["exponent"] = std::move(expo);
  doc["zero_eigenbasis"] = json::array();
  for (int c : s.zero_eigenbasis) doc["zero_eigenbasis"].push_back(name(c));
  doc["jordan_chains"] = json::array();
  for (const auto& chain : s.jordan_chains) {
    json jc;
    jc["family"] = json::array();
    for (int r : chain.family) jc["family"].push_back(name(r));
    jc["layers"] = json::array();
    for (const auto& layer : chain.layers) {
      json l = json::array();
      for (int c : layer) l.push_back(name(c));
      jc["layers"].push_back(std::move(l));
    }
    doc["jordan_chains"].push_back(std::move(jc));
  }
  return doc;
}

inline json pattern_to_json(const PatternClass& pc, const RingTreeDecomposition& d,
                            const std::vector<std::string>& cells) {
  auto name = [&](int c) { return cells[static_cast<std::size_t>(c)]; };
  json doc;
  doc["kind"] = pattern_kind_name(pc.kind);
  doc["ring_period"] = pc.ring_period;
  if (!pc.layers.empty()) {
    doc["layers"] = json::array();
    for (const auto& layer : pc.layers) {
      json l = json::array();
      for (int c : layer) l.push_back(name(c));
      doc["layers"].push_back(std::move(l));
    }
  }
  if (!pc.tails.empty()) {
    doc["tails"] = json::array();
    for (const auto& td : pc.tails) {
      json t;
      t["leaf"] = name(td.leaf);
      t["detach"] = td.detach;
      t["post_classes"] = td.post_classes;
      doc["tails"].push_back(std::move(t));
    }
  }
  (void)d;
  return doc;
}

// ---------------------------------------------------------------------------
// Union breakdown

inline json breakdown_to_json(const UnionLatticeBreakdown& bd,
                              const std::vector<std::string>& cells) {
  json doc;
  doc["valency_case"] = bd.equal_valency ? "equal" : "unequal";
  for (const auto& [key, list] : {std::pair<const char*, const std::vector<Partition>*>{"nb", &bd.nb},
                                  {"pb", &bd.pb},
                                  {"npb", &bd.npb}}) {
    json arr = json::array();
    for (const Partition& p : *list) arr.push_back(partition_to_json(p, cells));
    doc[key] = std::move(arr);
  }
  return doc;
}

}  // namespace ccn
