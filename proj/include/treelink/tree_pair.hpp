#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "treelink/tree.hpp"

namespace treelink {

// Group element as a pair of trees with equal leaf counts.  The minus tree
// subdivides the domain interval, the plus tree the range: the element maps
// the k-th minus leaf interval affinely onto the k-th plus leaf interval.
// Two pairs represent the same element exactly when their reductions agree.
template <int Arity>
class TreePair {
public:
  TreePair() = default;  // identity: a pair of single leaves

  TreePair(Tree<Arity> plus, Tree<Arity> minus)
      : plus_(std::move(plus)), minus_(std::move(minus)) {
    if (plus_.leaf_count() != minus_.leaf_count())
      throw std::invalid_argument("tree pair leaf counts differ: " +
                                  std::to_string(plus_.leaf_count()) + " vs " +
                                  std::to_string(minus_.leaf_count()));
  }

  const Tree<Arity>& plus() const noexcept { return plus_; }
  const Tree<Arity>& minus() const noexcept { return minus_; }
  int leaf_count() const noexcept { return plus_.leaf_count(); }
  bool is_identity() const noexcept { return plus_.is_leaf(); }

  friend bool operator==(const TreePair&, const TreePair&) = default;
  friend auto operator<=>(const TreePair&, const TreePair&) = default;

private:
  Tree<Arity> plus_;
  Tree<Arity> minus_;
};

using BinaryPair = TreePair<2>;
using TernaryPair = TreePair<3>;

// Leaf indices at which both trees carry a caret over the same leaves, so
// collapsing it in both yields an equivalent pair.
template <int Arity>
std::vector<int> common_caret_leaves(const TreePair<Arity>& g) {
  std::vector<int> a = g.plus().caret_leaves();
  std::vector<int> b = g.minus().caret_leaves();
  std::vector<int> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      out.push_back(a[i]);
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

template <int Arity>
TreePair<Arity> remove_common_caret(const TreePair<Arity>& g, int leaf_index) {
  return TreePair<Arity>(g.plus().collapse_caret(leaf_index),
                         g.minus().collapse_caret(leaf_index));
}

template <int Arity>
bool is_reduced(const TreePair<Arity>& g) {
  return common_caret_leaves(g).empty();
}

// Collapse common carets until none remain, leftmost first.  The result is
// the canonical representative of the group element.
template <int Arity>
TreePair<Arity> reduce(TreePair<Arity> g) {
  for (;;) {
    std::vector<int> hits = common_caret_leaves(g);
    if (hits.empty()) return g;
    g = remove_common_caret(g, hits.front());
  }
}

// Graft the same subtree at the same leaf of both trees; the element is
// unchanged up to reduction.
template <int Arity>
TreePair<Arity> inflate(const TreePair<Arity>& g, int leaf_index,
                        const Tree<Arity>& subtree) {
  return TreePair<Arity>(g.plus().graft(leaf_index, subtree),
                         g.minus().graft(leaf_index, subtree));
}

// Caret inflation: graft a single caret.
template <int Arity>
TreePair<Arity> inflate(const TreePair<Arity>& g, int leaf_index) {
  Tree<Arity> caret =
      Tree<Arity>::parse("(" + std::string(Arity, '.') + ")");
  return inflate(g, leaf_index, caret);
}

template <int Arity>
TreePair<Arity> inverse(const TreePair<Arity>& g) {
  return TreePair<Arity>(g.minus(), g.plus());
}

// Product a*b (a after b).  Both minus(a) and plus(b) are refined to their
// smallest common tree; the refining pieces are carried over to plus(a) and
// minus(b).  The result is reduced.
template <int Arity>
TreePair<Arity> multiply(const TreePair<Arity>& a, const TreePair<Arity>& b) {
  Tree<Arity> mid = common_refinement(a.minus(), b.plus());
  std::vector<Tree<Arity>> over_a = mid.pieces_over(a.minus());
  std::vector<Tree<Arity>> over_b = mid.pieces_over(b.plus());
  return reduce(TreePair<Arity>(a.plus().graft_all(over_a),
                                b.minus().graft_all(over_b)));
}

template <int Arity>
TreePair<Arity> operator*(const TreePair<Arity>& a, const TreePair<Arity>& b) {
  return multiply(a, b);
}

namespace detail {

inline void iota_rec(const std::string& code, std::size_t& p,
                     std::string& out) {
  if (code[p] == '.') {
    out.push_back('.');
    ++p;
    return;
  }
  ++p;  // '('
  out.push_back('(');
  iota_rec(code, p, out);
  out.push_back('.');
  iota_rec(code, p, out);
  ++p;  // ')'
  out.push_back(')');
}

}  // namespace detail

// Binary-to-ternary embedding on trees: a leaf maps to a leaf, a node (A B)
// maps to (A' . B') with a fresh middle leaf.  A tree with n leaves maps to
// one with 2n-1 leaves.
inline Tree<3> iota(const Tree<2>& t) {
  std::string out;
  out.reserve(2 * t.str().size());
  std::size_t p = 0;
  detail::iota_rec(t.str(), p, out);
  return Tree<3>::parse(out);
}

// The induced group embedding; it sends reduced pairs to reduced pairs and
// respects multiplication and inversion.
inline TreePair<3> iota(const TreePair<2>& g) {
  return TreePair<3>(iota(g.plus()), iota(g.minus()));
}

}  // namespace treelink
