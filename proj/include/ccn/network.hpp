#pragma once

// Network data model and structural operations: validation, identical-edge
// subnetworks, components, unions, joins, adjacency views, interior
// symmetries, balanced-colouring checks and quotients.
//
// Edges are stored source -> target: the target receives the input.  Cell
// declaration order is the canonical index order for every matrix, partition
// and serialized output.

#include <algorithm>
#include <array>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ccn/errors.hpp"
#include "ccn/partition.hpp"

namespace ccn {

struct Network {
  struct Edge {
    int source = 0;
    int target = 0;
    int type = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  std::vector<std::string> cells;       // canonical order = declaration order
  std::vector<std::string> edge_types;  // declaration order
  std::vector<Edge> edges;              // duplicates encode multiplicity

  int cell_count() const { return static_cast<int>(cells.size()); }
  int type_count() const { return static_cast<int>(edge_types.size()); }

  int cell_index(std::string_view name) const {
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i] == name) return static_cast<int>(i);
    return -1;
  }
  int type_index(std::string_view name) const {
    for (std::size_t i = 0; i < edge_types.size(); ++i)
      if (edge_types[i] == name) return static_cast<int>(i);
    return -1;
  }
};

/// Validating constructor shared by the JSON parser and the test fixtures.
/// Edge triples are (source, target, type) by name.
inline Network make_network(std::vector<std::string> cells, std::vector<std::string> edge_types,
                            const std::vector<std::array<std::string, 3>>& edges) {
  if (cells.empty()) throw ParseError("network has an empty cell list");
  {
    std::unordered_set<std::string> seen;
    for (const auto& c : cells) {
      if (c.empty()) throw ParseError("cell names must be nonempty");
      if (!seen.insert(c).second) throw ParseError("duplicate cell name \"" + c + "\"");
    }
    seen.clear();
    for (const auto& t : edge_types) {
      if (t.empty()) throw ParseError("edge type names must be nonempty");
      if (!seen.insert(t).second) throw ParseError("duplicate edge type \"" + t + "\"");
    }
  }
  Network n;
  n.cells = std::move(cells);
  n.edge_types = std::move(edge_types);
  n.edges.reserve(edges.size());
  for (const auto& [src, tgt, typ] : edges) {
    int s = n.cell_index(src);
    int t = n.cell_index(tgt);
    int ty = n.type_index(typ);
    if (s < 0) throw ParseError("edge references undeclared cell \"" + src + "\"");
    if (t < 0) throw ParseError("edge references undeclared cell \"" + tgt + "\"");
    if (ty < 0) throw ParseError("edge references undeclared type \"" + typ + "\"");
    n.edges.push_back({s, t, ty});
  }
  return n;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  bool is_homogeneous = false;
  bool is_asymmetric_inputs = false;
  bool is_regular = false;
  bool is_connected = false;
  int components = 0;
  // Defined only when homogeneous; declaration order.
  std::vector<std::pair<std::string, int>> valency_per_type;
  std::vector<std::string> violations;
};

namespace detail {
/// In-degree per (cell, type).
inline std::vector<std::vector<int>> indegrees(const Network& n) {
  std::vector<std::vector<int>> deg(
      static_cast<std::size_t>(n.type_count()),
      std::vector<int>(static_cast<std::size_t>(n.cell_count()), 0));
  for (const auto& e : n.edges) ++deg[static_cast<std::size_t>(e.type)][static_cast<std::size_t>(e.target)];
  return deg;
}

inline std::vector<int> component_labels(const Network& n, int* count_out) {
  const int nc = n.cell_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nc));
  for (const auto& e : n.edges) {
    adj[static_cast<std::size_t>(e.source)].push_back(e.target);
    adj[static_cast<std::size_t>(e.target)].push_back(e.source);
  }
  std::vector<int> label(static_cast<std::size_t>(nc), -1);
  int comp = 0;
  for (int start = 0; start < nc; ++start) {
    if (label[static_cast<std::size_t>(start)] != -1) continue;
    std::queue<int> q;
    q.push(start);
    label[static_cast<std::size_t>(start)] = comp;
    while (!q.empty()) {
      int c = q.front();
      q.pop();
      for (int d : adj[static_cast<std::size_t>(c)])
        if (label[static_cast<std::size_t>(d)] == -1) {
          label[static_cast<std::size_t>(d)] = comp;
          q.push(d);
        }
    }
    ++comp;
  }
  if (count_out) *count_out = comp;
  return label;
}
}  // namespace detail

inline ValidationReport validate(const Network& n) {
  ValidationReport r;
  const auto deg = detail::indegrees(n);
  r.is_homogeneous = true;
  r.is_asymmetric_inputs = true;
  for (int t = 0; t < n.type_count(); ++t) {
    const auto& d = deg[static_cast<std::size_t>(t)];
    for (int c = 0; c < n.cell_count(); ++c) {
      if (d[static_cast<std::size_t>(c)] != d[0] && r.is_homogeneous) {
        r.is_homogeneous = false;
        r.violations.push_back("cell " + n.cells[static_cast<std::size_t>(c)] + " receives " +
                               std::to_string(d[static_cast<std::size_t>(c)]) + " inputs of type " +
                               n.edge_types[static_cast<std::size_t>(t)] + " but cell " +
                               n.cells[0] + " receives " + std::to_string(d[0]) +
                               " (homogeneity)");
      }
      if (d[static_cast<std::size_t>(c)] > 1 && r.is_asymmetric_inputs) {
        r.is_asymmetric_inputs = false;
        r.violations.push_back("cell " + n.cells[static_cast<std::size_t>(c)] + " receives " +
                               std::to_string(d[static_cast<std::size_t>(c)]) + " inputs of type " +
                               n.edge_types[static_cast<std::size_t>(t)] + " (asymmetric inputs)");
      }
    }
  }
  if (r.is_homogeneous)
    for (int t = 0; t < n.type_count(); ++t)
      r.valency_per_type.emplace_back(n.edge_types[static_cast<std::size_t>(t)],
                                      deg[static_cast<std::size_t>(t)][0]);
  r.is_regular = r.is_homogeneous && n.type_count() == 1;
  detail::component_labels(n, &r.components);
  r.is_connected = (r.components <= 1);
  return r;
}

// ---------------------------------------------------------------------------
// Structural constructions

inline Network edge_type_subnetwork(const Network& n, const std::string& type) {
  int t = n.type_index(type);
  if (t < 0) throw std::invalid_argument("unknown edge type \"" + type + "\"");
  Network sub;
  sub.cells = n.cells;
  sub.edge_types = {type};
  for (const auto& e : n.edges)
    if (e.type == t) sub.edges.push_back({e.source, e.target, 0});
  return sub;
}

/// Subnetwork induced on a sorted cell-index subset; keeps the full edge-type
/// list and only edges with both endpoints inside.
inline Network induced_subnetwork(const Network& n, const std::vector<int>& cell_subset) {
  std::vector<int> local(static_cast<std::size_t>(n.cell_count()), -1);
  Network sub;
  sub.edge_types = n.edge_types;
  for (std::size_t i = 0; i < cell_subset.size(); ++i) {
    local[static_cast<std::size_t>(cell_subset[i])] = static_cast<int>(i);
    sub.cells.push_back(n.cells[static_cast<std::size_t>(cell_subset[i])]);
  }
  for (const auto& e : n.edges) {
    int s = local[static_cast<std::size_t>(e.source)];
    int t = local[static_cast<std::size_t>(e.target)];
    if (s >= 0 && t >= 0) sub.edges.push_back({s, t, e.type});
  }
  return sub;
}

/// Undirected components in order of their smallest cell; each component
/// network inherits canonical cell order and the full edge-type list.
inline std::vector<std::pair<Network, std::vector<int>>> connected_components(const Network& n) {
  int count = 0;
  const auto label = detail::component_labels(n, &count);
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(count));
  for (int c = 0; c < n.cell_count(); ++c)
    groups[static_cast<std::size_t>(label[static_cast<std::size_t>(c)])].push_back(c);
  std::vector<std::pair<Network, std::vector<int>>> out;
  out.reserve(groups.size());
  for (auto& g : groups) out.emplace_back(induced_subnetwork(n, g), std::move(g));
  return out;
}

inline Network disjoint_union(const Network& a, const Network& b) {
  if (a.cells.empty() || b.cells.empty())
    throw std::invalid_argument("disjoint_union: both operands must be nonempty");
  if (a.edge_types != b.edge_types)
    throw std::invalid_argument("disjoint_union: edge-type lists differ");
  for (const auto& c : b.cells)
    if (a.cell_index(c) >= 0)
      throw std::invalid_argument("disjoint_union: cell name \"" + c + "\" appears in both operands");
  Network u = a;
  const int off = a.cell_count();
  u.cells.insert(u.cells.end(), b.cells.begin(), b.cells.end());
  for (const auto& e : b.edges) u.edges.push_back({e.source + off, e.target + off, e.type});
  return u;
}

/// Disjoint union plus one edge of the single shared type from every cell of
/// each part to every cell of the other part.
inline Network join_networks(const Network& a, const Network& b) {
  if (a.type_count() != 1 || b.type_count() != 1)
    throw std::invalid_argument("join_networks: operands must have exactly one edge type");
  Network u = disjoint_union(a, b);
  const int na = a.cell_count();
  const int nb = b.cell_count();
  for (int s = 0; s < na; ++s)
    for (int t = 0; t < nb; ++t) u.edges.push_back({s, na + t, 0});
  for (int s = 0; s < nb; ++s)
    for (int t = 0; t < na; ++t) u.edges.push_back({na + s, t, 0});
  return u;
}

// ---------------------------------------------------------------------------
// Adjacency views

using Matrix = std::vector<std::vector<int>>;

namespace detail {
inline Matrix adjacency_by_type_index(const Network& n, int t, const std::vector<int>* order) {
  const int nc = n.cell_count();
  std::vector<int> pos(static_cast<std::size_t>(nc), -1);
  if (order) {
    if (static_cast<int>(order->size()) != nc)
      throw std::invalid_argument("adjacency_matrix: order is not a permutation of the cells");
    for (std::size_t i = 0; i < order->size(); ++i) {
      int c = (*order)[i];
      if (c < 0 || c >= nc || pos[static_cast<std::size_t>(c)] != -1)
        throw std::invalid_argument("adjacency_matrix: order is not a permutation of the cells");
      pos[static_cast<std::size_t>(c)] = static_cast<int>(i);
    }
  } else {
    std::iota(pos.begin(), pos.end(), 0);
  }
  Matrix m(static_cast<std::size_t>(nc), std::vector<int>(static_cast<std::size_t>(nc), 0));
  for (const auto& e : n.edges)
    if (e.type == t)
      ++m[static_cast<std::size_t>(pos[static_cast<std::size_t>(e.target)])]
         [static_cast<std::size_t>(pos[static_cast<std::size_t>(e.source)])];
  return m;
}
}  // namespace detail

/// Row = receiving cell, column = source cell, entries count multiplicity.
inline Matrix adjacency_matrix(const Network& n, const std::string& type,
                               const std::vector<int>* order = nullptr) {
  int t = n.type_index(type);
  if (t < 0) throw std::invalid_argument("unknown edge type \"" + type + "\"");
  return detail::adjacency_by_type_index(n, t, order);
}

// ---------------------------------------------------------------------------
// Interior symmetry

struct InteriorSymmetry {
  std::vector<int> support;  // the set S
  std::vector<int> map;      // permutation of all cells, identity off S
};

inline InteriorSymmetry symmetry_from_transpositions(
    int cell_count, const std::vector<std::pair<int, int>>& pairs) {
  InteriorSymmetry s;
  s.map.resize(static_cast<std::size_t>(cell_count));
  std::iota(s.map.begin(), s.map.end(), 0);
  for (auto [a, b] : pairs) {
    s.map[static_cast<std::size_t>(a)] = b;
    s.map[static_cast<std::size_t>(b)] = a;
    s.support.push_back(a);
    s.support.push_back(b);
  }
  std::sort(s.support.begin(), s.support.end());
  return s;
}

inline bool is_interior_symmetry(const Network& n, const InteriorSymmetry& sym) {
  const int nc = n.cell_count();
  if (static_cast<int>(sym.map.size()) != nc)
    throw std::invalid_argument("interior symmetry map has wrong size");
  std::vector<char> in_support(static_cast<std::size_t>(nc), 0);
  for (int c : sym.support) {
    if (c < 0 || c >= nc) throw std::invalid_argument("interior symmetry support out of range");
    in_support[static_cast<std::size_t>(c)] = 1;
  }
  std::vector<char> hit(static_cast<std::size_t>(nc), 0);
  for (int c = 0; c < nc; ++c) {
    int image = sym.map[static_cast<std::size_t>(c)];
    if (image < 0 || image >= nc || hit[static_cast<std::size_t>(image)])
      throw std::invalid_argument("interior symmetry map is not a permutation");
    hit[static_cast<std::size_t>(image)] = 1;
    if (!in_support[static_cast<std::size_t>(c)] && image != c)
      throw std::invalid_argument("interior symmetry map moves a cell outside its support");
  }
  for (int t = 0; t < n.type_count(); ++t) {
    const Matrix a = detail::adjacency_by_type_index(n, t, nullptr);
    for (int c : sym.support)
      for (int d = 0; d < nc; ++d)
        if (a[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] !=
            a[static_cast<std::size_t>(sym.map[static_cast<std::size_t>(c)])]
             [static_cast<std::size_t>(sym.map[static_cast<std::size_t>(d)])])
          return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Balanced colourings

/// Combinatorial criterion: cells of one class receive, per edge type, the
/// same number of inputs from every class.  For asymmetric-input networks
/// this reduces to the single-source colour condition.
inline bool is_balanced(const Network& n, const Partition& p) {
  if (p.arity() != n.cell_count())
    throw std::invalid_argument("is_balanced: partition arity does not match cell count");
  const int k = p.class_count();
  for (int t = 0; t < n.type_count(); ++t) {
    std::vector<std::vector<int>> sig(
        static_cast<std::size_t>(n.cell_count()),
        std::vector<int>(static_cast<std::size_t>(k), 0));
    for (const auto& e : n.edges)
      if (e.type == t)
        ++sig[static_cast<std::size_t>(e.target)][static_cast<std::size_t>(p.class_of(e.source))];
    for (const auto& cls : p.classes()) {
      const auto& ref = sig[static_cast<std::size_t>(cls.front())];
      for (int cell : cls)
        if (sig[static_cast<std::size_t>(cell)] != ref) return false;
    }
  }
  return true;
}

/// Independent linear-algebra route: apply each adjacency matrix to the
/// class-indicator basis of the polydiagonal and test membership by the
/// equality pattern.  Must agree with is_balanced on every input.
inline bool invariance_check(const Network& n, const Partition& p) {
  if (p.arity() != n.cell_count())
    throw std::invalid_argument("invariance_check: partition arity does not match cell count");
  const int nc = n.cell_count();
  for (int t = 0; t < n.type_count(); ++t) {
    const Matrix a = detail::adjacency_by_type_index(n, t, nullptr);
    for (const auto& cls : p.classes()) {
      std::vector<int> image(static_cast<std::size_t>(nc), 0);
      for (int r = 0; r < nc; ++r) {
        int v = 0;
        for (int c : cls) v += a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        image[static_cast<std::size_t>(r)] = v;
      }
      for (const auto& other : p.classes()) {
        int ref = image[static_cast<std::size_t>(other.front())];
        for (int cell : other)
          if (image[static_cast<std::size_t>(cell)] != ref) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Quotients, restriction and lift

struct QuotientResult {
  Network quotient;
  Partition partition;             // the balanced partition that defined it
  std::vector<int> class_map;      // original cell -> quotient cell
  std::vector<int> representative; // quotient cell -> minimal original member
};

inline QuotientResult quotient(const Network& n, const Partition& p) {
  if (!is_balanced(n, p))
    throw std::invalid_argument("quotient: partition is not balanced for the network");
  QuotientResult out;
  out.partition = p;
  out.class_map.assign(p.assignment().begin(), p.assignment().end());
  out.quotient.edge_types = n.edge_types;
  for (const auto& cls : p.classes()) {
    out.representative.push_back(cls.front());
    out.quotient.cells.push_back(n.cells[static_cast<std::size_t>(cls.front())]);
  }
  // Per class, project the inputs of its representative; balance makes the
  // choice of representative immaterial.
  for (int k = 0; k < p.class_count(); ++k) {
    int rep = out.representative[static_cast<std::size_t>(k)];
    for (const auto& e : n.edges)
      if (e.target == rep) out.quotient.edges.push_back({p.class_of(e.source), k, e.type});
  }
  return out;
}

/// Partition of quotient cells induced by a partition of the original cells
/// that merges whole quotient classes (its subspace lies inside the
/// quotient's subspace).
inline Partition restrict_partition(const QuotientResult& q, const Partition& finer) {
  if (finer.arity() != q.partition.arity())
    throw std::invalid_argument("restrict_partition: arity does not match the original network");
  if (!refines(q.partition, finer))
    throw std::invalid_argument(
        "restrict_partition: partition does not merge whole classes of the quotient partition");
  std::vector<int> labels;
  labels.reserve(q.representative.size());
  for (int rep : q.representative) labels.push_back(finer.class_of(rep));
  return Partition::from_assignment(labels);
}

/// Partition of original cells: two cells equivalent iff their quotient
/// classes are equivalent under qp.
inline Partition lift_partition(const QuotientResult& q, const Partition& qp) {
  if (qp.arity() != static_cast<int>(q.representative.size()))
    throw std::invalid_argument("lift_partition: arity does not match the quotient network");
  std::vector<int> labels;
  labels.reserve(q.class_map.size());
  for (int cls : q.class_map) labels.push_back(qp.class_of(cls));
  return Partition::from_assignment(labels);
}

}  // namespace ccn
