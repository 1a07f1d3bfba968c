#pragma once

// Synchrony lattice of a disjoint union from the component lattices.
//
// Balanced partitions of a two-part union fall into three classes:
//
//   - non-bipartite: no class crosses the parts; these are exactly the
//     concatenations of one balanced partition per part;
//   - pairing bipartite: every cross equality is an isolated 2-class; these
//     correspond one-to-one to interior symmetries made of cross
//     transpositions, enumerated structurally for 1-input parts by aligning
//     the rings and recursively matching tree children;
//   - non-pairing bipartite: lifts of pairing partitions of the quotients at
//     nontrivial non-bipartite partitions.
//
// Parts with different valencies admit only non-bipartite synchrony.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ccn/lattice.hpp"
#include "ccn/network.hpp"
#include "ccn/one_input.hpp"
#include "ccn/oracle.hpp"
#include "ccn/partition.hpp"

namespace ccn {

/// All concatenations of one element per component lattice ("dotted
/// intersections"); never merges cells across the parts.
inline std::vector<Partition> nb_compose(const SyncLattice& l1, const SyncLattice& l2) {
  for (const auto& c : l2.cells())
    if (std::find(l1.cells().begin(), l1.cells().end(), c) != l1.cells().end())
      throw std::invalid_argument("nb_compose: overlapping cell name \"" + c + "\"");
  const int n1 = static_cast<int>(l1.cells().size());
  const int n2 = static_cast<int>(l2.cells().size());
  std::vector<Partition> out;
  out.reserve(static_cast<std::size_t>(l1.size()) * static_cast<std::size_t>(l2.size()));
  for (const Partition& a : l1.elements())
    for (const Partition& b : l2.elements()) {
      std::vector<int> labels(static_cast<std::size_t>(n1 + n2));
      for (int i = 0; i < n1; ++i) labels[static_cast<std::size_t>(i)] = a.class_of(i);
      for (int i = 0; i < n2; ++i)
        labels[static_cast<std::size_t>(n1 + i)] = a.class_count() + b.class_of(i);
      out.push_back(Partition::from_assignment(labels));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Input-closed bijection between a subset of each part's cells; its cross
/// transpositions form an interior symmetry of the union.
struct PairingMatch {
  std::vector<std::pair<int, int>> pairs;  // (cell of part 1, cell of part 2), sorted
};

namespace detail {

struct ComponentView {
  std::vector<int> cells;  // original indices within the part
  RingTreeDecomposition decomposition;
};

inline bool is_one_input_part(const Network& part) {
  const ValidationReport r = validate(part);
  return part.type_count() == 1 && r.is_homogeneous && !r.valency_per_type.empty() &&
         r.valency_per_type[0].second == 1;
}

inline std::vector<ComponentView> component_views(const Network& part) {
  std::vector<ComponentView> views;
  for (auto& [compnet, cells] : connected_components(part)) {
    ComponentView v;
    v.cells = cells;
    v.decomposition = ring_tree_decompose(as_functional_graph(compnet));
    views.push_back(std::move(v));
  }
  return views;
}

using PairSet = std::vector<std::pair<int, int>>;

/// All ways to extend the matched pair (a, b) with partial injective
/// matchings of their tree children, recursively.  Every extension keeps the
/// match input-closed.
inline std::vector<PairSet> node_matches(const ComponentView& va, const ComponentView& vb, int a,
                                         int b) {
  const auto& ca = va.decomposition.children[static_cast<std::size_t>(a)];
  const auto& cb = vb.decomposition.children[static_cast<std::size_t>(b)];
  std::vector<PairSet> result;
  std::vector<char> used(cb.size(), 0);
  PairSet current{{a, b}};
  std::function<void(std::size_t)> extend = [&](std::size_t ia) {
    if (ia == ca.size()) {
      result.push_back(current);
      return;
    }
    extend(ia + 1);  // leave this child unmatched
    for (std::size_t ib = 0; ib < cb.size(); ++ib) {
      if (used[ib]) continue;
      used[ib] = 1;
      for (const PairSet& sub : node_matches(va, vb, ca[ia], cb[ib])) {
        std::size_t mark = current.size();
        current.insert(current.end(), sub.begin(), sub.end());
        extend(ia + 1);
        current.resize(mark);
      }
      used[ib] = 0;
    }
  };
  extend(0);
  return result;
}

/// Matches between two connected components: rings must have equal length
/// and the match covers both rings under one of the m rotations.
inline std::vector<PairSet> connected_matches(const ComponentView& va, const ComponentView& vb) {
  const int m = va.decomposition.ring_length();
  std::vector<PairSet> out;
  if (m != vb.decomposition.ring_length()) return out;
  for (int offset = 0; offset < m; ++offset) {
    std::vector<std::vector<PairSet>> per_pair;
    for (int i = 0; i < m; ++i)
      per_pair.push_back(node_matches(
          va, vb, va.decomposition.ring[static_cast<std::size_t>(i)],
          vb.decomposition.ring[static_cast<std::size_t>((i + offset) % m)]));
    PairSet current;
    std::function<void(std::size_t)> combine = [&](std::size_t i) {
      if (i == per_pair.size()) {
        out.push_back(current);
        return;
      }
      for (const PairSet& choice : per_pair[i]) {
        std::size_t mark = current.size();
        current.insert(current.end(), choice.begin(), choice.end());
        combine(i + 1);
        current.resize(mark);
      }
    };
    combine(0);
  }
  return out;
}

}  // namespace detail

/// Structural enumeration for (possibly disconnected) 1-input regular parts
/// with one shared edge type.  A match pairs a nonempty set of part-1
/// components with distinct part-2 components of equal ring length and, per
/// matched pair, picks one connected match.  Every returned match induces an
/// interior symmetry of the disjoint union, which is re-verified.
inline std::vector<PairingMatch> pairing_matches(const Network& n1, const Network& n2) {
  if (n1.edge_types != n2.edge_types)
    throw std::invalid_argument("pairing_matches: parts have different edge types");
  if (!detail::is_one_input_part(n1) || !detail::is_one_input_part(n2))
    throw std::invalid_argument("pairing_matches: parts are not 1-input regular");

  const std::vector<detail::ComponentView> a = detail::component_views(n1);
  const std::vector<detail::ComponentView> b = detail::component_views(n2);

  // Per compatible component pair, the connected matches in part-local cells.
  std::vector<std::vector<std::vector<detail::PairSet>>> table(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[i].resize(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
      for (const detail::PairSet& local : detail::connected_matches(a[i], b[j])) {
        detail::PairSet global;
        for (auto [x, y] : local)
          global.emplace_back(a[i].cells[static_cast<std::size_t>(x)],
                              b[j].cells[static_cast<std::size_t>(y)]);
        table[i][j].push_back(std::move(global));
      }
    }
  }

  std::vector<PairingMatch> out;
  std::vector<char> used_b(b.size(), 0);
  detail::PairSet current;
  std::function<void(std::size_t)> assemble = [&](std::size_t i) {
    if (i == a.size()) {
      if (!current.empty()) {
        PairingMatch m;
        m.pairs = current;
        std::sort(m.pairs.begin(), m.pairs.end());
        out.push_back(std::move(m));
      }
      return;
    }
    assemble(i + 1);  // component i unmatched
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used_b[j] || table[i][j].empty()) continue;
      used_b[j] = 1;
      for (const detail::PairSet& choice : table[i][j]) {
        std::size_t mark = current.size();
        current.insert(current.end(), choice.begin(), choice.end());
        assemble(i + 1);
        current.resize(mark);
      }
      used_b[j] = 0;
    }
  };
  assemble(0);

  std::sort(out.begin(), out.end(), [](const PairingMatch& x, const PairingMatch& y) {
    if (x.pairs.size() != y.pairs.size()) return x.pairs.size() < y.pairs.size();
    return x.pairs < y.pairs;
  });

  const Network u = disjoint_union(n1, n2);
  const int off = n1.cell_count();
  for (const PairingMatch& m : out) {
    std::vector<std::pair<int, int>> transpositions;
    for (auto [x, y] : m.pairs) transpositions.emplace_back(x, off + y);
    if (!is_interior_symmetry(u, symmetry_from_transpositions(u.cell_count(), transpositions)))
      throw std::logic_error("enumerated pairing match is not an interior symmetry");
  }
  return out;
}

/// One partition of the union per match: paired 2-classes, all else
/// singletons.  Each result is balanced for the union by construction.
inline std::vector<Partition> pb_compose(const Network& n1, const Network& n2,
                                         const std::vector<PairingMatch>& matches) {
  const Network u = disjoint_union(n1, n2);
  const int off = n1.cell_count();
  std::vector<Partition> out;
  for (const PairingMatch& m : matches) {
    std::vector<int> labels(static_cast<std::size_t>(u.cell_count()));
    std::iota(labels.begin(), labels.end(), 0);
    for (auto [x, y] : m.pairs) labels[static_cast<std::size_t>(off + y)] = x;
    Partition p = Partition::from_assignment(labels);
    if (!is_balanced(u, p))
      throw std::logic_error("pairing match does not induce a balanced partition");
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {
/// Pairing-shaped balanced partitions of a two-part union: structural match
/// enumeration when both parts are 1-input, exhaustive filtering otherwise.
inline std::vector<Partition> pairing_partitions(const Network& union_net, int n1_cells,
                                                 const OracleConfig& cfg) {
  std::vector<int> part1_cells(static_cast<std::size_t>(n1_cells));
  std::iota(part1_cells.begin(), part1_cells.end(), 0);
  std::vector<int> part2_cells;
  for (int c = n1_cells; c < union_net.cell_count(); ++c) part2_cells.push_back(c);
  const Network p1 = induced_subnetwork(union_net, part1_cells);
  const Network p2 = induced_subnetwork(union_net, part2_cells);
  if (is_one_input_part(p1) && is_one_input_part(p2))
    return pb_compose(p1, p2, pairing_matches(p1, p2));
  std::vector<char> side(static_cast<std::size_t>(union_net.cell_count()), 0);
  for (int c = n1_cells; c < union_net.cell_count(); ++c) side[static_cast<std::size_t>(c)] = 1;
  return pairing_shaped_balanced(union_net, side, cfg);
}
}  // namespace detail

/// Lifts of pairing partitions of the quotients at nontrivial non-bipartite
/// partitions.  The quotient of a two-part union at such a partition is
/// itself a two-part union with the part-1 classes listed first.
inline std::vector<Partition> npb_compose(const Network& union_net, int n1_cells,
                                          const std::vector<Partition>& nb,
                                          const OracleConfig& cfg = {}) {
  std::set<Partition> results;
  for (const Partition& p : nb) {
    if (p.is_singletons()) continue;  // quotient at the top is the union itself
    const QuotientResult q = quotient(union_net, p);
    int q1 = 0;
    for (int rep : q.representative)
      if (rep < n1_cells) ++q1;
    for (const Partition& qp : detail::pairing_partitions(q.quotient, q1, cfg)) {
      Partition lifted = lift_partition(q, qp);
      if (!is_balanced(union_net, lifted))
        throw std::logic_error("lift of a quotient pairing partition is not balanced");
      results.insert(std::move(lifted));
    }
  }
  return {results.begin(), results.end()};
}

struct UnionLatticeBreakdown {
  std::vector<Partition> nb, pb, npb;
  bool equal_valency = false;
};

struct UnionComposeResult {
  SyncLattice lattice;
  UnionLatticeBreakdown breakdown;
};

/// Full composition for the disjoint union of two identical-edge parts from
/// their verified lattices.  Unequal valencies keep only the non-bipartite
/// class; otherwise all three classes are produced, deduplicated and
/// verified as a lattice over the union network.
inline UnionComposeResult compose_union_lattice(const Network& n1, const SyncLattice& l1,
                                                const Network& n2, const SyncLattice& l2,
                                                const OracleConfig& cfg = {}) {
  if (n1.edge_types != n2.edge_types)
    throw std::invalid_argument("compose_union_lattice: mismatched edge types");
  if (n1.cells != l1.cells() || n2.cells != l2.cells())
    throw std::invalid_argument("compose_union_lattice: lattice does not match its network");
  const ValidationReport r1 = validate(n1);
  const ValidationReport r2 = validate(n2);
  if (!r1.is_homogeneous || !r2.is_homogeneous)
    throw std::invalid_argument("compose_union_lattice: parts must be homogeneous");
  const Network u = disjoint_union(n1, n2);

  UnionLatticeBreakdown bd;
  bd.nb = nb_compose(l1, l2);
  int v1 = 0, v2 = 0;
  for (auto& [t, v] : r1.valency_per_type) v1 += v;
  for (auto& [t, v] : r2.valency_per_type) v2 += v;
  bd.equal_valency = (v1 == v2);
  if (bd.equal_valency) {
    bd.pb = detail::pairing_partitions(u, n1.cell_count(), cfg);
    bd.npb = npb_compose(u, n1.cell_count(), bd.nb, cfg);
    // The three classes are disjoint by construction; drop any duplicate
    // arising from distinct quotient routes to one subspace.
    std::set<Partition> seen(bd.nb.begin(), bd.nb.end());
    seen.insert(bd.pb.begin(), bd.pb.end());
    std::vector<Partition> npb_clean;
    for (const Partition& p : bd.npb)
      if (!seen.count(p)) npb_clean.push_back(p);
    bd.npb = std::move(npb_clean);
  }

  std::vector<Partition> all = bd.nb;
  all.insert(all.end(), bd.pb.begin(), bd.pb.end());
  all.insert(all.end(), bd.npb.begin(), bd.npb.end());
  const bool asym = validate(u).is_asymmetric_inputs;
  SyncLattice lattice = SyncLattice::build(std::move(all), u, asym);
  return {std::move(lattice), std::move(bd)};
}

}  // namespace ccn
