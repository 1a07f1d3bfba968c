#pragma once

// Structure theory of connected 1-input regular networks.
//
// Such a network is a functional graph: every cell has exactly one input, so
// following inputs from any cell walks into a unique ring with directed
// trees hanging off it.  All spectral data of the adjacency matrix is exact
// and combinatorial:
//
//   - the ring of length m contributes the m-th roots of unity, with
//     eigenvectors whose entries are powers of one primitive root, recorded
//     as an exponent per cell (exponent of the input = exponent + 1 mod m);
//   - the tree cells contribute the eigenvalue 0; its eigenspace is spanned
//     by leaf indicators, and families of pairwise-disjoint subtrees give
//     the generalized eigenvectors, layer by layer of distance to the roots.
//
// The join-irreducible balanced partitions come in two families: level sets
// of the exponent map modulo each divisor of m, and layer partitions of
// disjoint subtree families.  Their closure under class intersection is the
// whole synchrony lattice.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccn/errors.hpp"
#include "ccn/lattice.hpp"
#include "ccn/network.hpp"
#include "ccn/partition.hpp"

namespace ccn {

struct FunctionalGraph {
  int n = 0;
  std::vector<int> input;  // input[c] = the unique source feeding c
};

/// Requires a connected regular network of valency 1.
inline FunctionalGraph as_functional_graph(const Network& n) {
  const ValidationReport r = validate(n);
  if (!(r.is_regular && !r.valency_per_type.empty() && r.valency_per_type[0].second == 1))
    throw std::invalid_argument("network is not 1-input regular");
  if (!r.is_connected)
    throw std::invalid_argument("network is disconnected; split into components first");
  FunctionalGraph g;
  g.n = n.cell_count();
  g.input.assign(static_cast<std::size_t>(g.n), -1);
  for (const auto& e : n.edges) g.input[static_cast<std::size_t>(e.target)] = e.source;
  return g;
}

struct RingTreeDecomposition {
  FunctionalGraph graph;
  std::vector<int> ring;  // (r_0..r_{m-1}), input(r_i) = r_{i+1 mod m}, r_0 minimal
  std::vector<char> on_ring;
  std::vector<int> anchor;  // ring cell whose tree contains the cell (self on ring)
  std::vector<int> dist;    // distance to the ring, 0 on ring
  std::vector<std::vector<int>> children;  // tree children (edges directed away from ring)
  std::vector<int> leaves;                 // cells with no outgoing edge, ascending
  std::vector<std::vector<int>> tails;     // root-to-leaf paths, each starting at a ring cell
  int depth = 0;

  int ring_length() const { return static_cast<int>(ring.size()); }

  /// Ring cells in ring order, then tree cells by (distance, index).  In this
  /// order the adjacency matrix has the cyclic block upper-left and a
  /// strictly lower triangular block lower-right.
  std::vector<int> ring_first_order() const {
    std::vector<int> order = ring;
    std::vector<int> rest;
    for (int c = 0; c < graph.n; ++c)
      if (!on_ring[static_cast<std::size_t>(c)]) rest.push_back(c);
    std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) {
      return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)];
    });
    order.insert(order.end(), rest.begin(), rest.end());
    return order;
  }

  /// Descendant-closed subtree rooted at a non-ring cell, ascending.
  std::vector<int> subtree_cells(int root) const {
    if (on_ring[static_cast<std::size_t>(root)])
      throw std::invalid_argument("subtree roots must lie off the ring");
    std::vector<int> out, stack{root};
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      out.push_back(c);
      for (int child : children[static_cast<std::size_t>(c)]) stack.push_back(child);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline RingTreeDecomposition ring_tree_decompose(const FunctionalGraph& g) {
  RingTreeDecomposition d;
  d.graph = g;
  const int n = g.n;

  // Walk the input map from cell 0 until a cell repeats; the repeated suffix
  // is the unique ring.
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  std::vector<int> path;
  int c = 0;
  while (pos[static_cast<std::size_t>(c)] == -1) {
    pos[static_cast<std::size_t>(c)] = static_cast<int>(path.size());
    path.push_back(c);
    c = g.input[static_cast<std::size_t>(c)];
  }
  std::vector<int> cycle(path.begin() + pos[static_cast<std::size_t>(c)], path.end());
  auto min_it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), min_it, cycle.end());
  d.ring = std::move(cycle);

  d.on_ring.assign(static_cast<std::size_t>(n), 0);
  for (int r : d.ring) d.on_ring[static_cast<std::size_t>(r)] = 1;

  d.children.assign(static_cast<std::size_t>(n), {});
  std::vector<int> outdeg(static_cast<std::size_t>(n), 0);
  for (int cell = 0; cell < n; ++cell) {
    ++outdeg[static_cast<std::size_t>(g.input[static_cast<std::size_t>(cell)])];
    if (!d.on_ring[static_cast<std::size_t>(cell)])
      d.children[static_cast<std::size_t>(g.input[static_cast<std::size_t>(cell)])].push_back(cell);
  }

  d.anchor.assign(static_cast<std::size_t>(n), -1);
  d.dist.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> stack;
  for (int r : d.ring) {
    d.anchor[static_cast<std::size_t>(r)] = r;
    d.dist[static_cast<std::size_t>(r)] = 0;
    stack.push_back(r);
  }
  while (!stack.empty()) {
    int cell = stack.back();
    stack.pop_back();
    for (int child : d.children[static_cast<std::size_t>(cell)]) {
      d.dist[static_cast<std::size_t>(child)] = d.dist[static_cast<std::size_t>(cell)] + 1;
      d.anchor[static_cast<std::size_t>(child)] =
          d.on_ring[static_cast<std::size_t>(cell)] ? cell : d.anchor[static_cast<std::size_t>(cell)];
      stack.push_back(child);
    }
  }

  for (int cell = 0; cell < n; ++cell)
    if (outdeg[static_cast<std::size_t>(cell)] == 0) d.leaves.push_back(cell);

  d.depth = 0;
  for (int cell = 0; cell < n; ++cell) d.depth = std::max(d.depth, d.dist[static_cast<std::size_t>(cell)]);

  // Root-to-leaf paths, ring cell first, ordered by ring position then by
  // child index along the way.
  std::vector<int> tail;
  std::function<void(int)> walk = [&](int cell) {
    tail.push_back(cell);
    if (outdeg[static_cast<std::size_t>(cell)] == 0) d.tails.push_back(tail);
    for (int child : d.children[static_cast<std::size_t>(cell)]) walk(child);
    tail.pop_back();
  };
  for (int r : d.ring)
    if (!d.children[static_cast<std::size_t>(r)].empty()) walk(r);

  return d;
}

// ---------------------------------------------------------------------------
// Spectral summary

struct JordanChainDescriptor {
  std::vector<int> family;                // subtree roots, ascending
  std::vector<std::vector<int>> layers;   // layer j = family cells at distance j
  int length() const { return static_cast<int>(layers.size()); }
};

struct SpectralSummary {
  RingTreeDecomposition decomposition;
  int m = 0;                     // ring length; eigenvalues are the m-th roots of unity
  int zero_multiplicity = 0;     // n - m
  int zero_eigenspace_dim = 0;   // number of tails
  std::vector<int> exponent;     // e(c) with e(input(c)) = e(c) + 1 mod m, e(r_0) = 0
  std::vector<int> zero_eigenbasis;  // leaf cells; their indicators span the kernel
  std::vector<JordanChainDescriptor> jordan_chains;  // one per admissible subtree family
};

/// Chain layers for a family of pairwise-disjoint subtrees rooted off the
/// ring; verifies the defining relations A u_j = u_{j+1}, A u_last = 0.
inline JordanChainDescriptor jordan_chain_for(const RingTreeDecomposition& d,
                                              std::vector<int> family_roots) {
  if (family_roots.empty()) throw std::invalid_argument("subtree family may not be empty");
  std::sort(family_roots.begin(), family_roots.end());
  std::vector<char> member(static_cast<std::size_t>(d.graph.n), 0);
  for (int root : family_roots)
    for (int cell : d.subtree_cells(root)) {
      if (member[static_cast<std::size_t>(cell)])
        throw std::invalid_argument("subtree family members overlap");
      member[static_cast<std::size_t>(cell)] = 1;
    }
  JordanChainDescriptor desc;
  desc.family = family_roots;
  for (int root : family_roots) {
    std::vector<std::pair<int, int>> stack{{root, 0}};
    while (!stack.empty()) {
      auto [cell, depth] = stack.back();
      stack.pop_back();
      if (static_cast<int>(desc.layers.size()) <= depth)
        desc.layers.resize(static_cast<std::size_t>(depth) + 1);
      desc.layers[static_cast<std::size_t>(depth)].push_back(cell);
      for (int child : d.children[static_cast<std::size_t>(cell)])
        stack.push_back({child, depth + 1});
    }
  }
  for (auto& layer : desc.layers) std::sort(layer.begin(), layer.end());

  // A maps the indicator of a set S to the indicator of the cells fed by S,
  // so each layer must feed exactly the next and the last must feed nothing.
  for (std::size_t j = 0; j < desc.layers.size(); ++j) {
    std::vector<int> fed;
    for (int cell = 0; cell < d.graph.n; ++cell)
      if (std::binary_search(desc.layers[j].begin(), desc.layers[j].end(),
                             d.graph.input[static_cast<std::size_t>(cell)]))
        fed.push_back(cell);
    if (j + 1 < desc.layers.size()) {
      if (fed != desc.layers[j + 1]) throw std::logic_error("chain layer relation violated");
    } else if (!fed.empty()) {
      throw std::logic_error("last chain layer is not in the kernel");
    }
  }
  return desc;
}

inline JordanChainDescriptor jordan_chain_for(const SpectralSummary& s,
                                              const std::vector<int>& family_roots) {
  return jordan_chain_for(s.decomposition, family_roots);
}

namespace detail {
/// All nonempty families of pairwise-disjoint subtrees rooted off the ring:
/// antichains of the tree forest.  Each node either joins the family (its
/// whole subtree is then spoken for) or defers to choices among its children.
inline std::vector<std::vector<int>> subtree_families(const RingTreeDecomposition& d,
                                                      std::size_t limit = 200000) {
  std::function<std::vector<std::vector<int>>(const std::vector<int>&)> over_nodes =
      [&](const std::vector<int>& nodes) {
        std::vector<std::vector<int>> acc{{}};
        for (int v : nodes) {
          std::vector<std::vector<int>> mine = over_nodes(d.children[static_cast<std::size_t>(v)]);
          mine.push_back({v});
          std::vector<std::vector<int>> next;
          next.reserve(acc.size() * mine.size());
          for (const auto& left : acc)
            for (const auto& right : mine) {
              std::vector<int> merged = left;
              merged.insert(merged.end(), right.begin(), right.end());
              next.push_back(std::move(merged));
              if (next.size() > limit)
                throw CapExceeded("subtree family enumeration exceeds " + std::to_string(limit) +
                                  " families");
            }
          acc = std::move(next);
        }
        return acc;
      };
  std::vector<int> top;
  for (int r : d.ring)
    for (int child : d.children[static_cast<std::size_t>(r)]) top.push_back(child);
  std::vector<std::vector<int>> families = over_nodes(top);
  std::vector<std::vector<int>> out;
  for (auto& f : families) {
    if (f.empty()) continue;
    std::sort(f.begin(), f.end());
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}
}  // namespace detail

/// e(r_0) = 0 on the minimal ring cell and e(input(c)) = e(c) + 1 mod m
/// everywhere; tree cells therefore sit one step behind their input.
inline std::vector<int> exponent_map(const RingTreeDecomposition& d) {
  const int m = d.ring_length();
  std::vector<int> e(static_cast<std::size_t>(d.graph.n), 0);
  for (int i = 0; i < m; ++i) e[static_cast<std::size_t>(d.ring[static_cast<std::size_t>(i)])] = i;
  std::vector<int> order(static_cast<std::size_t>(d.graph.n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return d.dist[static_cast<std::size_t>(a)] < d.dist[static_cast<std::size_t>(b)];
  });
  for (int c : order)
    if (!d.on_ring[static_cast<std::size_t>(c)])
      e[static_cast<std::size_t>(c)] =
          (e[static_cast<std::size_t>(d.graph.input[static_cast<std::size_t>(c)])] - 1 + m) % m;
  return e;
}

inline SpectralSummary spectral_summary(const RingTreeDecomposition& d) {
  SpectralSummary s;
  s.decomposition = d;
  s.m = d.ring_length();
  s.zero_multiplicity = d.graph.n - s.m;
  s.zero_eigenspace_dim = static_cast<int>(d.leaves.size());
  s.zero_eigenbasis = d.leaves;
  s.exponent = exponent_map(d);
  for (const auto& family : detail::subtree_families(d))
    s.jordan_chains.push_back(jordan_chain_for(d, family));
  return s;
}

/// Exponent vector of the eigenvector for the j-th root of unity: entry
/// c -> j * e(c) mod m, meaning the complex entry is that power of the
/// primitive m-th root.
inline std::vector<int> eigenvector_for(const SpectralSummary& s, int j) {
  if (j < 0 || j >= s.m) throw std::invalid_argument("root index out of range");
  std::vector<int> v(s.exponent.size());
  for (std::size_t c = 0; c < s.exponent.size(); ++c) v[c] = (j * s.exponent[c]) % s.m;
  return v;
}

/// Exact check of A v = w^j v for an exponent vector: each cell's entry must
/// be its input's entry shifted by j, all mod m.
inline bool eigen_relation_holds(const SpectralSummary& s, int j,
                                 const std::vector<int>& exponent_vector) {
  const auto& g = s.decomposition.graph;
  for (int c = 0; c < g.n; ++c)
    if (exponent_vector[static_cast<std::size_t>(g.input[static_cast<std::size_t>(c)])] !=
        (exponent_vector[static_cast<std::size_t>(c)] + j) % s.m)
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Join-irreducible balanced partitions

struct JoinIrreducible {
  enum class Kind { Divisor, Chain };
  Partition partition;
  Kind kind = Kind::Divisor;
  int q = 0;                 // divisor family: classes are level sets of e mod q
  std::vector<int> family;   // chain family: the subtree roots
};

inline std::vector<JoinIrreducible> enumerate_join_irreducibles_detailed(
    const RingTreeDecomposition& d) {
  const int m = d.ring_length();
  const std::vector<int> e = exponent_map(d);
  std::vector<JoinIrreducible> out;
  for (int q = 1; q <= m; ++q) {
    if (m % q != 0) continue;
    std::vector<int> labels(static_cast<std::size_t>(d.graph.n));
    for (int c = 0; c < d.graph.n; ++c)
      labels[static_cast<std::size_t>(c)] = e[static_cast<std::size_t>(c)] % q;
    JoinIrreducible ji;
    ji.partition = Partition::from_assignment(labels);
    ji.kind = JoinIrreducible::Kind::Divisor;
    ji.q = q;
    out.push_back(std::move(ji));
  }
  for (const auto& family : detail::subtree_families(d)) {
    const JordanChainDescriptor chain = jordan_chain_for(d, family);
    std::vector<int> labels(static_cast<std::size_t>(d.graph.n), 0);
    for (std::size_t j = 0; j < chain.layers.size(); ++j)
      for (int cell : chain.layers[j]) labels[static_cast<std::size_t>(cell)] = static_cast<int>(j) + 1;
    JoinIrreducible ji;
    ji.partition = Partition::from_assignment(labels);
    ji.kind = JoinIrreducible::Kind::Chain;
    ji.family = chain.family;
    out.push_back(std::move(ji));
  }
  return out;
}

inline std::vector<Partition> enumerate_join_irreducibles(const RingTreeDecomposition& d) {
  std::vector<Partition> out;
  for (auto& ji : enumerate_join_irreducibles_detailed(d)) out.push_back(std::move(ji.partition));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Closure of the irreducibles under class intersection plus the
/// all-singleton top, verified as a sum-closed lattice for the network.
inline SyncLattice lattice_from_irreducibles(const std::vector<Partition>& irreducibles,
                                             const Network& net) {
  std::vector<Partition> closed = sum_closure(irreducibles);
  return SyncLattice::build(std::move(closed), net, /*require_sum_closure=*/true);
}

// ---------------------------------------------------------------------------
// Balanced colouring patterns

struct PatternClass {
  enum class Kind {
    FullSync,
    PeriodicRingWrapped,
    AllDistinctRingWrapped,
    LeafSubset,
    SubtreeChain,
    Composite
  };
  struct TailDetach {
    int leaf = -1;
    int detach = -1;                 // index in the tail of the first non-wrapped cell, -1 if none
    std::vector<int> post_classes;   // class ids from the detach point to the leaf
  };
  Kind kind = Kind::Composite;
  int ring_period = 0;
  std::vector<std::vector<int>> layers;  // LeafSubset / SubtreeChain
  std::vector<TailDetach> tails;         // Composite record
};

inline const char* pattern_kind_name(PatternClass::Kind k) {
  switch (k) {
    case PatternClass::Kind::FullSync: return "full_sync";
    case PatternClass::Kind::PeriodicRingWrapped: return "periodic_ring_wrapped";
    case PatternClass::Kind::AllDistinctRingWrapped: return "all_distinct_ring_wrapped";
    case PatternClass::Kind::LeafSubset: return "leaf_subset";
    case PatternClass::Kind::SubtreeChain: return "subtree_chain";
    case PatternClass::Kind::Composite: return "composite";
  }
  return "composite";
}

/// Valency-1 balance check straight on the input map: same colour implies
/// same input colour.
inline bool balanced_on(const FunctionalGraph& g, const Partition& p) {
  if (p.arity() != g.n) throw std::invalid_argument("partition arity does not match the graph");
  for (const auto& cls : p.classes()) {
    int ref = p.class_of(g.input[static_cast<std::size_t>(cls.front())]);
    for (int cell : cls)
      if (p.class_of(g.input[static_cast<std::size_t>(cell)]) != ref) return false;
  }
  return true;
}

inline PatternClass classify_pattern(const RingTreeDecomposition& d, const Partition& p) {
  if (!balanced_on(d.graph, p))
    throw std::invalid_argument("classify_pattern: partition is not balanced");
  PatternClass out;
  const int m = d.ring_length();
  const std::vector<int> exponent = exponent_map(d);

  if (p.is_one_class()) {
    out.kind = PatternClass::Kind::FullSync;
    out.ring_period = 1;
    return out;
  }

  // Ring colours repeat with a minimal period dividing m, with all colours
  // inside one period distinct.
  int q = m;
  for (int cand = 1; cand <= m; ++cand) {
    if (m % cand != 0) continue;
    bool periodic = true;
    for (int i = 0; i < m && periodic; ++i)
      periodic = p.class_of(d.ring[static_cast<std::size_t>(i)]) ==
                 p.class_of(d.ring[static_cast<std::size_t>((i + cand) % m)]);
    if (periodic) {
      q = cand;
      break;
    }
  }
  out.ring_period = q;

  // Wrapped colouring: the divisor partition for q.
  std::vector<int> wrapped_labels(static_cast<std::size_t>(d.graph.n));
  for (int c = 0; c < d.graph.n; ++c)
    wrapped_labels[static_cast<std::size_t>(c)] = exponent[static_cast<std::size_t>(c)] % q;
  const Partition wrapped = Partition::from_assignment(wrapped_labels);
  if (p == wrapped) {
    out.kind = q == m ? PatternClass::Kind::AllDistinctRingWrapped
                      : PatternClass::Kind::PeriodicRingWrapped;
    return out;
  }

  // One ring colour with detached subtrees: background class plus the layer
  // classes of a descendant-closed family.
  if (q == 1) {
    const int background = p.class_of(d.ring[0]);
    std::vector<int> off;
    for (int c = 0; c < d.graph.n; ++c)
      if (p.class_of(c) != background) off.push_back(c);
    bool closed = true;
    for (int c : off)
      for (int child : d.children[static_cast<std::size_t>(c)])
        if (p.class_of(child) == background) closed = false;
    if (closed && !off.empty()) {
      std::vector<int> chain_depth(static_cast<std::size_t>(d.graph.n), -1);
      std::vector<std::vector<int>> layers;
      std::sort(off.begin(), off.end(), [&](int a, int b) {
        return d.dist[static_cast<std::size_t>(a)] < d.dist[static_cast<std::size_t>(b)];
      });
      for (int c : off) {
        int in = d.graph.input[static_cast<std::size_t>(c)];
        int depth = (p.class_of(in) == background) ? 0 : chain_depth[static_cast<std::size_t>(in)] + 1;
        chain_depth[static_cast<std::size_t>(c)] = depth;
        if (static_cast<int>(layers.size()) <= depth) layers.resize(static_cast<std::size_t>(depth) + 1);
        layers[static_cast<std::size_t>(depth)].push_back(c);
      }
      for (auto& layer : layers) std::sort(layer.begin(), layer.end());
      std::set<std::vector<int>> layer_set(layers.begin(), layers.end());
      std::set<std::vector<int>> class_set;
      for (const auto& cls : p.classes())
        if (p.class_of(cls.front()) != background) class_set.insert(cls);
      if (layer_set == class_set) {
        out.kind = layers.size() == 1 ? PatternClass::Kind::LeafSubset
                                      : PatternClass::Kind::SubtreeChain;
        out.layers = std::move(layers);
        return out;
      }
    }
  }

  // Composite: record, per tail, where the colours stop following the
  // wrapped ring colouring and the colour word after that point.
  out.kind = PatternClass::Kind::Composite;
  auto is_wrapped = [&](int c) {
    int residue = exponent[static_cast<std::size_t>(c)] % q;
    return p.class_of(c) == p.class_of(d.ring[static_cast<std::size_t>(residue)]);
  };
  for (const auto& tail : d.tails) {
    PatternClass::TailDetach td;
    td.leaf = tail.back();
    for (std::size_t i = 0; i < tail.size(); ++i) {
      if (td.detach == -1 && !is_wrapped(tail[i])) td.detach = static_cast<int>(i);
      if (td.detach != -1) td.post_classes.push_back(p.class_of(tail[i]));
    }
    out.tails.push_back(std::move(td));
  }
  // Cross-tail consistency: same-coloured cells past their detach points sit
  // at the same offset and continue with the same colour word.  Balance
  // guarantees this; violation indicates internal corruption.
  for (std::size_t a = 0; a < out.tails.size(); ++a)
    for (std::size_t b = a + 1; b < out.tails.size(); ++b) {
      const auto& ta = out.tails[a];
      const auto& tb = out.tails[b];
      if (ta.detach == -1 || tb.detach == -1) continue;
      for (std::size_t i = 0; i < ta.post_classes.size(); ++i)
        for (std::size_t j = 0; j < tb.post_classes.size(); ++j)
          if (ta.post_classes[i] == tb.post_classes[j]) {
            if (i != j || !std::equal(ta.post_classes.begin(),
                                      ta.post_classes.begin() + static_cast<long>(i),
                                      tb.post_classes.begin()))
              throw std::logic_error("inconsistent post-detach colour sequences across tails");
          }
    }
  return out;
}

}  // namespace ccn
