#pragma once

// Finite lattice of balanced partitions in subspace order, with Hasse
// structure, meets/joins, irreducible detection and lattice intersection.
//
// Order convention: a <= b means subspace(a) is contained in subspace(b),
// which holds exactly when b's partition refines a's.  The top is therefore
// the all-singleton partition and the bottom, when present, the one-class
// partition.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ccn/errors.hpp"
#include "ccn/network.hpp"
#include "ccn/partition.hpp"

namespace ccn {

/// In subspace order: a <= b iff b's partition refines a's.
inline bool subspace_leq(const Partition& a, const Partition& b) { return refines(b, a); }

class SyncLattice {
 public:
  SyncLattice() = default;

  /// Verifies every element balanced, inserts the all-singleton top, checks
  /// closure under subspace intersection (always) and under subspace sum
  /// (when required); any violation throws with a rendered witness.
  static SyncLattice build(std::vector<Partition> elements, const Network& net,
                           bool require_sum_closure) {
    SyncLattice l;
    l.cells_ = net.cells;
    l.sum_closed_ = require_sum_closure;
    for (const Partition& p : elements) {
      if (p.arity() != net.cell_count())
        throw std::invalid_argument("lattice element arity does not match the network");
      if (!is_balanced(net, p))
        throw std::invalid_argument("lattice element is not balanced: {" + render(p, net.cells) +
                                    "}");
    }
    elements.push_back(Partition::singletons(net.cell_count()));
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    l.elements_ = std::move(elements);
    l.verify_closure(require_sum_closure);
    return l;
  }

  const std::vector<std::string>& cells() const { return cells_; }
  const std::vector<Partition>& elements() const { return elements_; }
  int size() const { return static_cast<int>(elements_.size()); }
  bool sum_closed() const { return sum_closed_; }

  int index_of(const Partition& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it != elements_.end() && *it == p) return static_cast<int>(it - elements_.begin());
    return -1;
  }
  bool contains(const Partition& p) const { return index_of(p) >= 0; }

  /// All-singleton partition; present in every verified lattice.
  const Partition& top() const { return element_at(index_of(Partition::singletons(arity()))); }

  /// Minimum element in subspace order (the one-class partition when present).
  const Partition& bottom() const {
    int best = 0;
    for (int i = 1; i < size(); ++i)
      if (subspace_leq(elements_[static_cast<std::size_t>(i)],
                       elements_[static_cast<std::size_t>(best)]))
        best = i;
    // the minimum must compare below everything, else the set is not a lattice
    for (int i = 0; i < size(); ++i)
      if (!subspace_leq(elements_[static_cast<std::size_t>(best)],
                        elements_[static_cast<std::size_t>(i)]))
        throw std::logic_error("lattice has no minimum element");
    return elements_[static_cast<std::size_t>(best)];
  }

  /// Greatest lower bound = subspace intersection = equivalence closure.
  Partition meet(const Partition& a, const Partition& b) const {
    require_member(a);
    require_member(b);
    Partition m = equivalence_closure(a, b);
    if (!contains(m))
      throw std::logic_error("lattice is not meet-closed at {" + render(a, cells_) + "} and {" +
                             render(b, cells_) + "}");
    return m;
  }

  /// Least upper bound.  In sum-closed lattices this is the class
  /// intersection (subspace sum); otherwise the least element above both.
  Partition join(const Partition& a, const Partition& b) const {
    require_member(a);
    require_member(b);
    if (sum_closed_) {
      Partition s = class_intersection(a, b);
      if (!contains(s))
        throw std::logic_error("sum-closed lattice is missing the join of {" + render(a, cells_) +
                               "} and {" + render(b, cells_) + "}");
      return s;
    }
    std::optional<Partition> best;
    for (const Partition& x : elements_) {
      if (!(subspace_leq(a, x) && subspace_leq(b, x))) continue;
      if (!best || subspace_leq(x, *best)) best = x;
    }
    if (!best) throw std::logic_error("join does not exist in the lattice");
    for (const Partition& x : elements_)
      if (subspace_leq(a, x) && subspace_leq(b, x) && !subspace_leq(*best, x))
        throw std::logic_error("lattice join is not unique: incomparable upper bounds");
    return *best;
  }

  /// Cover pairs (a, b) with a < b and nothing strictly between, as indices
  /// into elements(), sorted lexicographically.  The canonical element order
  /// is a linear extension of the subspace order, so i < j in every pair.
  /// A strict step in subspace order strictly raises the class count, which
  /// prunes both the comparability scan and the betweenness checks.
  std::vector<std::pair<int, int>> hasse() const {
    const int n = size();
    auto count = [&](int i) { return elements_[static_cast<std::size_t>(i)].class_count(); };
    std::vector<std::vector<char>> leq(static_cast<std::size_t>(n),
                                       std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
      leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
      for (int j = 0; j < n; ++j)
        if (count(i) < count(j))
          leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              subspace_leq(elements_[static_cast<std::size_t>(i)],
                           elements_[static_cast<std::size_t>(j)]);
    }
    std::vector<std::pair<int, int>> covers;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j || !leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
        bool direct = true;
        for (int k = 0; k < n && direct; ++k) {
          if (k == i || k == j || count(k) <= count(i) || count(k) >= count(j)) continue;
          if (leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
              leq[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
            direct = false;
        }
        if (direct) covers.emplace_back(i, j);
      }
    std::sort(covers.begin(), covers.end());
    return covers;
  }

  /// Elements with a unique lower cover, excluding the bottom.
  std::vector<int> join_irreducibles() const { return irreducibles(/*lower=*/true); }
  /// Elements with a unique upper cover, excluding the top.
  std::vector<int> meet_irreducibles() const { return irreducibles(/*lower=*/false); }

  /// Join-irreducibles plus the bottom: the natural generator set.
  std::vector<Partition> join_generators() const {
    std::vector<Partition> g;
    for (int i : join_irreducibles()) g.push_back(elements_[static_cast<std::size_t>(i)]);
    g.push_back(bottom());
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
  }

  /// True iff every element is a join of a subset of q (the empty join being
  /// the bottom).
  bool is_join_dense(const std::vector<Partition>& q) const {
    for (const Partition& y : q) require_member(y);
    for (const Partition& x : elements_) {
      Partition j = bottom();
      for (const Partition& y : q)
        if (subspace_leq(y, x)) j = join(j, y);
      if (!(j == x)) return false;
    }
    return true;
  }

 private:
  friend SyncLattice intersect_lattices(const std::vector<SyncLattice>& ls);

  int arity() const { return static_cast<int>(cells_.size()); }

  const Partition& element_at(int i) const {
    if (i < 0) throw std::logic_error("lattice element lookup failed");
    return elements_[static_cast<std::size_t>(i)];
  }

  void require_member(const Partition& p) const {
    if (!contains(p))
      throw std::invalid_argument("partition {" + render(p, cells_) + "} is not in the lattice");
  }

  std::vector<int> irreducibles(bool lower) const {
    const auto covers = hasse();
    std::vector<int> degree(static_cast<std::size_t>(size()), 0);
    for (auto [a, b] : covers) ++degree[static_cast<std::size_t>(lower ? b : a)];
    const Partition& excluded = lower ? bottom() : top();
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (degree[static_cast<std::size_t>(i)] == 1 &&
          !(elements_[static_cast<std::size_t>(i)] == excluded))
        out.push_back(i);
    return out;
  }

  // Exhaustive over all pairs up to a pair budget; beyond it, a seed-pinned
  // sample of pairs keeps verification time bounded on very large lattices.
  void verify_closure(bool require_sum_closure) const {
    const std::uint64_t n = static_cast<std::uint64_t>(size());
    const std::uint64_t pairs = n * (n - 1) / 2;
    constexpr std::uint64_t kPairBudget = 5'000'000;
    auto check_pair = [&](std::size_t i, std::size_t j) {
      Partition m = equivalence_closure(elements_[i], elements_[j]);
      if (index_of(m) < 0)
        throw std::invalid_argument("set is not closed under subspace intersection: {" +
                                    render(elements_[i], cells_) + "} with {" +
                                    render(elements_[j], cells_) + "}");
      if (require_sum_closure) {
        Partition s = class_intersection(elements_[i], elements_[j]);
        if (index_of(s) < 0)
          throw std::invalid_argument("set is not closed under subspace sum: {" +
                                      render(elements_[i], cells_) + "} with {" +
                                      render(elements_[j], cells_) + "}");
      }
    };
    if (pairs <= kPairBudget) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) check_pair(i, j);
    } else {
      std::mt19937_64 rng(0x5ca1ab1eULL);
      std::uniform_int_distribution<std::size_t> pick(0, static_cast<std::size_t>(n - 1));
      for (std::uint64_t k = 0; k < kPairBudget; ++k) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i != j) check_pair(i, j);
      }
    }
  }

  std::vector<std::string> cells_;
  std::vector<Partition> elements_;  // sorted canonically
  bool sum_closed_ = false;
};

/// Element-set intersection of lattices over one cell universe, re-verified.
inline SyncLattice intersect_lattices(const std::vector<SyncLattice>& ls) {
  if (ls.empty()) throw std::invalid_argument("intersect_lattices: no lattices given");
  for (const SyncLattice& l : ls)
    if (l.cells() != ls.front().cells())
      throw UniverseMismatch("intersect_lattices: lattices are over different cell universes");
  std::vector<Partition> common = ls.front().elements();
  for (std::size_t i = 1; i < ls.size(); ++i) {
    std::vector<Partition> next;
    std::set_intersection(common.begin(), common.end(), ls[i].elements().begin(),
                          ls[i].elements().end(), std::back_inserter(next));
    common = std::move(next);
  }
  SyncLattice out;
  out.cells_ = ls.front().cells();
  out.elements_ = std::move(common);
  bool sum = true;
  for (const SyncLattice& l : ls) sum = sum && l.sum_closed();
  out.sum_closed_ = sum;
  out.verify_closure(sum);
  return out;
}

}  // namespace ccn
