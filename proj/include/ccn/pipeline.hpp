#pragma once

// End-to-end lattice computation and lattice-document comparison.
//
// Methods:
//   auto        validate -> per-type subnetworks -> components -> irreducible
//               closure per component -> fold union composition -> intersect
//               across types.  Requires a homogeneous asymmetric-input
//               network; anything else is directed to "brute".
//   irreducible connected 1-input regular networks only.
//   compose     single-type multi-component networks; component lattices come
//               from the irreducible closure (1-input) or the oracle.
//   intersect   oracle per edge-type subnetwork, then intersection.
//   brute       oracle on the full network.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccn/errors.hpp"
#include "ccn/json_io.hpp"
#include "ccn/lattice.hpp"
#include "ccn/network.hpp"
#include "ccn/one_input.hpp"
#include "ccn/oracle.hpp"
#include "ccn/union_compose.hpp"

namespace ccn {

enum class LatticeMethod { Auto, Irreducible, Compose, Intersect, Brute };

inline const char* method_name(LatticeMethod m) {
  switch (m) {
    case LatticeMethod::Auto: return "auto";
    case LatticeMethod::Irreducible: return "irreducible";
    case LatticeMethod::Compose: return "compose";
    case LatticeMethod::Intersect: return "intersect";
    case LatticeMethod::Brute: return "brute";
  }
  return "auto";
}

struct PipelineResult {
  SyncLattice lattice;
  std::string method;
  std::vector<std::pair<std::string, int>> stages;  // (stage name, element count)
  std::optional<UnionLatticeBreakdown> breakdown;   // last composition step
};

namespace detail {

/// Lattice of one connected component: irreducible closure when it is a
/// 1-input network, exhaustive enumeration otherwise.
inline SyncLattice component_lattice(const Network& comp, const OracleConfig& cfg) {
  const ValidationReport r = validate(comp);
  if (comp.type_count() == 1 && r.is_homogeneous && r.is_connected &&
      !r.valency_per_type.empty() && r.valency_per_type[0].second == 1) {
    const RingTreeDecomposition d = ring_tree_decompose(as_functional_graph(comp));
    return lattice_from_irreducibles(enumerate_join_irreducibles(d), comp);
  }
  return enumerate_balanced(comp, cfg);
}

/// Index map for renaming partitions between two orderings of one cell set.
inline std::vector<int> cell_index_map(const std::vector<std::string>& from,
                                       const Network& target) {
  std::vector<int> to_target(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    int idx = target.cell_index(from[i]);
    if (idx < 0)
      throw UniverseMismatch("relabel: cell \"" + from[i] + "\" missing from target network");
    to_target[i] = idx;
  }
  return to_target;
}

inline Partition relabel_partition(const Partition& p, const std::vector<int>& to_target) {
  std::vector<int> labels(to_target.size(), 0);
  for (std::size_t i = 0; i < to_target.size(); ++i)
    labels[static_cast<std::size_t>(to_target[i])] = p.class_of(static_cast<int>(i));
  return Partition::from_assignment(labels);
}

/// Rebuilds a lattice over a network with the same cell names in a different
/// order (components are concatenated in component order, the caller wants
/// declaration order).
inline SyncLattice relabel_lattice(const SyncLattice& l, const Network& target) {
  const std::vector<int> to_target = cell_index_map(l.cells(), target);
  std::vector<Partition> remapped;
  remapped.reserve(l.elements().size());
  for (const Partition& p : l.elements()) remapped.push_back(relabel_partition(p, to_target));
  return SyncLattice::build(std::move(remapped), target, l.sum_closed());
}

/// Lattice for a single-type network that may be disconnected: left fold of
/// the union composition over component lattices, relabelled back to the
/// network's declaration order.
inline SyncLattice single_type_lattice(const Network& sub, const OracleConfig& cfg,
                                       std::vector<std::pair<std::string, int>>* stages,
                                       const std::string& stage_prefix,
                                       std::optional<UnionLatticeBreakdown>* breakdown_out) {
  auto comps = connected_components(sub);
  if (stages) stages->emplace_back(stage_prefix + "components", static_cast<int>(comps.size()));
  Network acc_net = comps[0].first;
  SyncLattice acc = component_lattice(acc_net, cfg);
  if (stages)
    stages->emplace_back(stage_prefix + "component 1 lattice", acc.size());
  for (std::size_t k = 1; k < comps.size(); ++k) {
    SyncLattice lk = component_lattice(comps[k].first, cfg);
    if (stages)
      stages->emplace_back(stage_prefix + "component " + std::to_string(k + 1) + " lattice",
                           lk.size());
    UnionComposeResult step = compose_union_lattice(acc_net, acc, comps[k].first, lk, cfg);
    acc_net = disjoint_union(acc_net, comps[k].first);
    acc = std::move(step.lattice);
    if (breakdown_out) *breakdown_out = std::move(step.breakdown);
  }
  if (comps.size() == 1) {
    if (stages) stages->emplace_back(stage_prefix + "lattice", acc.size());
    return acc;
  }
  // Fold order concatenates components; rename everything back to the
  // network's declaration order, breakdown included.
  if (breakdown_out && *breakdown_out) {
    const std::vector<int> to_target = cell_index_map(acc_net.cells, sub);
    for (auto* list : {&(*breakdown_out)->nb, &(*breakdown_out)->pb, &(*breakdown_out)->npb}) {
      for (Partition& p : *list) p = relabel_partition(p, to_target);
      std::sort(list->begin(), list->end());
    }
  }
  SyncLattice result = relabel_lattice(acc, sub);
  if (stages) stages->emplace_back(stage_prefix + "lattice", result.size());
  return result;
}

}  // namespace detail

inline PipelineResult run_lattice(const Network& net, LatticeMethod method,
                                  const OracleConfig& cfg = {}) {
  PipelineResult out;
  out.method = method_name(method);
  const ValidationReport report = validate(net);

  switch (method) {
    case LatticeMethod::Brute: {
      SyncLattice l = enumerate_balanced(net, cfg);
      out.stages.emplace_back("balanced", l.size());
      out.lattice = std::move(l);
      return out;
    }

    case LatticeMethod::Irreducible: {
      if (!(report.is_regular && !report.valency_per_type.empty() &&
            report.valency_per_type[0].second == 1 && report.is_connected))
        throw MethodInapplicable(
            "method \"irreducible\" needs a connected 1-input regular network");
      const RingTreeDecomposition d = ring_tree_decompose(as_functional_graph(net));
      const std::vector<Partition> irr = enumerate_join_irreducibles(d);
      out.stages.emplace_back("irreducibles", static_cast<int>(irr.size()));
      SyncLattice l = lattice_from_irreducibles(irr, net);
      out.stages.emplace_back("lattice", l.size());
      out.lattice = std::move(l);
      return out;
    }

    case LatticeMethod::Compose: {
      if (net.type_count() != 1)
        throw MethodInapplicable("method \"compose\" needs a single-type network");
      if (report.components < 2)
        throw MethodInapplicable("method \"compose\" needs a multi-component network");
      if (!report.is_homogeneous)
        throw MethodInapplicable("method \"compose\" needs a homogeneous network");
      std::optional<UnionLatticeBreakdown> bd;
      SyncLattice l = detail::single_type_lattice(net, cfg, &out.stages, "", &bd);
      if (bd) {
        out.stages.emplace_back("nb", static_cast<int>(bd->nb.size()));
        out.stages.emplace_back("pb", static_cast<int>(bd->pb.size()));
        out.stages.emplace_back("npb", static_cast<int>(bd->npb.size()));
      }
      out.breakdown = std::move(bd);
      out.lattice = std::move(l);
      return out;
    }

    case LatticeMethod::Intersect: {
      if (net.type_count() < 1) throw MethodInapplicable("network has no edge types");
      std::vector<SyncLattice> per_type;
      for (const std::string& t : net.edge_types) {
        SyncLattice l = enumerate_balanced(edge_type_subnetwork(net, t), cfg);
        out.stages.emplace_back(t + " lattice", l.size());
        per_type.push_back(std::move(l));
      }
      SyncLattice l = intersect_lattices(per_type);
      out.stages.emplace_back("intersection", l.size());
      out.lattice = std::move(l);
      return out;
    }

    case LatticeMethod::Auto: {
      if (!report.is_homogeneous || !report.is_asymmetric_inputs)
        throw MethodInapplicable(
            "method \"auto\" needs a homogeneous network with asymmetric inputs; use --method "
            "brute for general networks");
      std::vector<SyncLattice> per_type;
      for (const std::string& t : net.edge_types) {
        Network sub = edge_type_subnetwork(net, t);
        per_type.push_back(detail::single_type_lattice(sub, cfg, &out.stages, t + ": ", nullptr));
      }
      SyncLattice l = per_type.size() == 1 ? std::move(per_type[0]) : intersect_lattices(per_type);
      out.stages.emplace_back("intersection", l.size());
      out.lattice = std::move(l);
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Lattice document comparison

struct LatticeDiff {
  std::vector<Partition> only_in_a;
  std::vector<Partition> only_in_b;
  int common = 0;
  bool equal = false;
};

inline LatticeDiff compare_lattice_docs(const LatticeDoc& a, const LatticeDoc& b,
                                        bool ignore_top) {
  if (a.cells != b.cells)
    throw UniverseMismatch("compare: lattice documents are over different cell universes");
  std::vector<Partition> ea = a.elements;
  std::vector<Partition> eb = b.elements;
  if (ignore_top) {
    const Partition top = Partition::singletons(static_cast<int>(a.cells.size()));
    std::erase(ea, top);
    std::erase(eb, top);
  }
  LatticeDiff d;
  std::set_difference(ea.begin(), ea.end(), eb.begin(), eb.end(),
                      std::back_inserter(d.only_in_a));
  std::set_difference(eb.begin(), eb.end(), ea.begin(), ea.end(),
                      std::back_inserter(d.only_in_b));
  std::vector<Partition> common;
  std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(common));
  d.common = static_cast<int>(common.size());
  d.equal = d.only_in_a.empty() && d.only_in_b.empty();
  return d;
}

inline json diff_to_json(const LatticeDiff& d, const std::vector<std::string>& cells) {
  json doc;
  doc["equal"] = d.equal;
  doc["common"] = d.common;
  doc["only_in_a"] = json::array();
  for (const Partition& p : d.only_in_a) doc["only_in_a"].push_back(partition_to_json(p, cells));
  doc["only_in_b"] = json::array();
  for (const Partition& p : d.only_in_b) doc["only_in_b"].push_back(partition_to_json(p, cells));
  return doc;
}

}  // namespace ccn
