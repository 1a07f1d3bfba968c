#pragma once

// Canonical set partitions of {0..n-1}.
//
// A partition stands in for the coordinate-equality subspace it defines:
// cells in one class are the coordinates forced equal.  The correspondence
// reverses the order people expect, so it is spelled out once here and the
// two composition operations are named after what they do to classes, not
// to subspaces:
//
//   - a FINER partition (more classes) defines a LARGER subspace;
//   - class_intersection (common refinement) realizes the subspace SUM;
//   - equivalence_closure (transitive closure of the union of the two
//     relations) realizes the subspace INTERSECTION.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ccn {

class Partition {
 public:
  Partition() = default;

  static Partition singletons(int arity) {
    std::vector<int> a(static_cast<std::size_t>(arity));
    std::iota(a.begin(), a.end(), 0);
    return Partition(arity, std::move(a));
  }

  static Partition one_class(int arity) {
    return Partition(arity, std::vector<int>(static_cast<std::size_t>(arity), 0));
  }

  /// Builds from an arbitrary labelling of cells; classes are renumbered by
  /// first occurrence, which yields the canonical form directly.
  static Partition from_assignment(const std::vector<int>& labels) {
    std::unordered_map<int, int> renumber;
    std::vector<int> canon(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto [it, fresh] = renumber.try_emplace(labels[i], static_cast<int>(renumber.size()));
      canon[i] = it->second;
      (void)fresh;
    }
    return Partition(static_cast<int>(labels.size()), std::move(canon));
  }

  /// Builds from raw class sets over {0..arity-1}; rejects overlaps, gaps and
  /// out-of-range indices.
  static Partition from_classes(int arity, const std::vector<std::vector<int>>& raw) {
    if (arity < 0) throw std::invalid_argument("partition arity must be nonnegative");
    std::vector<int> labels(static_cast<std::size_t>(arity), -1);
    int covered = 0;
    for (std::size_t k = 0; k < raw.size(); ++k) {
      if (raw[k].empty()) throw std::invalid_argument("partition class may not be empty");
      for (int cell : raw[k]) {
        if (cell < 0 || cell >= arity)
          throw std::invalid_argument("partition class contains out-of-range cell index " +
                                      std::to_string(cell));
        if (labels[static_cast<std::size_t>(cell)] != -1)
          throw std::invalid_argument("partition classes overlap at cell index " +
                                      std::to_string(cell));
        labels[static_cast<std::size_t>(cell)] = static_cast<int>(k);
        ++covered;
      }
    }
    if (covered != arity)
      throw std::invalid_argument("partition classes do not cover every cell");
    return from_assignment(labels);
  }

  int arity() const { return arity_; }
  int class_count() const { return static_cast<int>(classes_.size()); }

  /// Classes sorted by minimal element, each sorted ascending.
  const std::vector<std::vector<int>>& classes() const { return classes_; }

  int class_of(int cell) const { return assign_[static_cast<std::size_t>(cell)]; }

  /// Canonical restricted-growth string: assignment[i] is the class index of
  /// cell i, classes numbered in order of first appearance.
  const std::vector<int>& assignment() const { return assign_; }

  bool is_singletons() const { return class_count() == arity_; }
  bool is_one_class() const { return arity_ > 0 && class_count() == 1; }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.assign_ == b.assign_;
  }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }

  /// Canonical total order: class count, then restricted-growth string.
  /// Listing a balanced set in this order runs from coarse to fine.
  friend bool operator<(const Partition& a, const Partition& b) {
    if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
    if (a.class_count() != b.class_count()) return a.class_count() < b.class_count();
    return a.assign_ < b.assign_;
  }

 private:
  Partition(int arity, std::vector<int> canonical_assign)
      : arity_(arity), assign_(std::move(canonical_assign)) {
    int k = 0;
    for (int label : assign_) k = std::max(k, label + 1);
    classes_.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < arity_; ++i)
      classes_[static_cast<std::size_t>(assign_[static_cast<std::size_t>(i)])].push_back(i);
  }

  int arity_ = 0;
  std::vector<int> assign_;
  std::vector<std::vector<int>> classes_;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int label : p.assignment()) {
      h ^= static_cast<std::uint64_t>(label) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline void require_same_arity(const Partition& p, const Partition& q) {
  if (p.arity() != q.arity())
    throw std::invalid_argument("partitions have different arities (" +
                                std::to_string(p.arity()) + " vs " + std::to_string(q.arity()) +
                                ")");
}

/// True iff every class of p is contained in some class of q (p is finer).
/// Note the order reversal against subspaces: subspace(q) is contained in
/// subspace(p) exactly when refines(p, q).
inline bool refines(const Partition& p, const Partition& q) {
  require_same_arity(p, q);
  for (const auto& cls : p.classes()) {
    int target = q.class_of(cls.front());
    for (int cell : cls)
      if (q.class_of(cell) != target) return false;
  }
  return true;
}

/// Common refinement: classes are the nonempty pairwise intersections.
/// Realizes the sum of the two subspaces.
inline Partition class_intersection(const Partition& p, const Partition& q) {
  require_same_arity(p, q);
  const int n = p.arity();
  std::vector<int> labels(static_cast<std::size_t>(n));
  const int qk = q.class_count();
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = p.class_of(i) * qk + q.class_of(i);
  return Partition::from_assignment(labels);
}

/// Finest partition coarser than both: transitive closure of the union of
/// the two equivalences.  Realizes the intersection of the two subspaces.
inline Partition equivalence_closure(const Partition& p, const Partition& q) {
  require_same_arity(p, q);
  const int n = p.arity();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };
  for (const Partition* part : {&p, &q})
    for (const auto& cls : part->classes())
      for (std::size_t i = 1; i < cls.size(); ++i) unite(cls[0], cls[i]);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = find(i);
  return Partition::from_assignment(labels);
}

/// Polydiagonal notation: non-singleton classes as "x1=x3=x6, x2=x5"; the
/// all-singleton partition renders as the empty string.
inline std::string render(const Partition& p, const std::vector<std::string>& cells) {
  if (static_cast<int>(cells.size()) != p.arity())
    throw std::invalid_argument("render: cell list does not match partition arity");
  std::string out;
  for (const auto& cls : p.classes()) {
    if (cls.size() < 2) continue;
    if (!out.empty()) out += ", ";
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (i) out += '=';
      out += 'x';
      out += cells[static_cast<std::size_t>(cls[i])];
    }
  }
  return out;
}

/// Inverse of render: parses "x1=x3=x6, x2=x5" back into a partition over
/// the given cell list, unmentioned cells becoming singletons.
inline Partition parse_polydiagonal(const std::string& text,
                                    const std::vector<std::string>& cells) {
  auto cell_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("polydiagonal references unknown cell \"" + name + "\"");
  };
  std::vector<int> labels(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) labels[i] = static_cast<int>(cells.size() + i);
  std::size_t pos = 0;
  int cls = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(", ", pos);
    if (end == std::string::npos) end = text.size();
    std::string group = text.substr(pos, end - pos);
    std::size_t at = 0;
    while (at < group.size()) {
      std::size_t eq = group.find('=', at);
      if (eq == std::string::npos) eq = group.size();
      std::string token = group.substr(at, eq - at);
      if (token.empty() || token.front() != 'x')
        throw std::invalid_argument("polydiagonal tokens must look like x<cell>");
      labels[static_cast<std::size_t>(cell_index(token.substr(1)))] = cls;
      at = eq + 1;
    }
    ++cls;
    pos = end == text.size() ? end : end + 2;
  }
  return Partition::from_assignment(labels);
}

/// Closure of the generators under class_intersection (all finite subspace
/// sums).  The worklist only ever meets against generators, which suffices
/// because class_intersection is associative, commutative and idempotent.
inline std::vector<Partition> sum_closure(const std::vector<Partition>& generators) {
  std::unordered_set<Partition, PartitionHash> seen;
  std::vector<Partition> work;
  for (const Partition& g : generators)
    if (seen.insert(g).second) work.push_back(g);
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (const Partition& g : generators) {
      Partition s = class_intersection(work[i], g);
      if (seen.insert(s).second) work.push_back(std::move(s));
    }
  }
  std::sort(work.begin(), work.end());
  return work;
}

}  // namespace ccn
