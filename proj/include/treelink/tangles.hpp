#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treelink/tree.hpp"
#include "treelink/tree_pair.hpp"

namespace treelink {

// Thrown by matching_to_tree when the input matching is not the matching of
// any ternary tree.
class NotTangledError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Permutation of {0, ..., size-1}.
class Permutation {
public:
  explicit Permutation(std::vector<int> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (int v : map_) {
      if (v < 0 || v >= static_cast<int>(map_.size()) || seen[v])
        throw std::invalid_argument("not a permutation");
      seen[v] = true;
    }
  }

  static Permutation identity(int size) {
    std::vector<int> map(size);
    for (int i = 0; i < size; ++i) map[i] = i;
    return Permutation(std::move(map));
  }

  int size() const noexcept { return static_cast<int>(map_.size()); }
  int operator()(int x) const { return map_.at(x); }
  const std::vector<int>& map() const noexcept { return map_; }

  // Cycle decomposition; each cycle starts at its smallest element and
  // cycles are ordered by smallest element.  Fixed points are included as
  // 1-cycles when include_fixed is set.
  std::vector<std::vector<int>> cycles(bool include_fixed = true) const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(map_.size(), false);
    for (int s = 0; s < size(); ++s) {
      if (seen[s]) continue;
      std::vector<int> cyc;
      int x = s;
      do {
        seen[x] = true;
        cyc.push_back(x);
        x = map_[x];
      } while (x != s);
      if (cyc.size() > 1 || include_fixed) out.push_back(std::move(cyc));
    }
    return out;
  }

  int cycle_count(bool include_fixed = true) const {
    return static_cast<int>(cycles(include_fixed).size());
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> map_;
};

// a after b.
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("composing permutations of different sizes");
  std::vector<int> map(a.size());
  for (int x = 0; x < a.size(); ++x) map[x] = a(b(x));
  return Permutation(std::move(map));
}

// Fixed-point-free involution on {0, ..., 2n+1}, presented as a perfect
// matching of the 2n+2 axis points.
class TangledMatching {
public:
  explicit TangledMatching(std::vector<int> succ) : succ_(std::move(succ)) {
    std::string why = malformed_reason(succ_);
    if (!why.empty()) throw std::invalid_argument(why);
  }

  static TangledMatching from_pairs(
      const std::vector<std::pair<int, int>>& pairs) {
    int m = static_cast<int>(pairs.size()) * 2;
    std::vector<int> succ(m, -1);
    for (auto [a, b] : pairs) {
      if (a < 0 || b < 0 || a >= m || b >= m)
        throw std::invalid_argument("matching pair out of range");
      if (succ[a] != -1 || succ[b] != -1)
        throw std::invalid_argument("matching point used twice");
      succ[a] = b;
      succ[b] = a;
    }
    return TangledMatching(std::move(succ));
  }

  // Empty when succ is a fixed-point-free involution on an even domain;
  // otherwise a human-readable description of the defect.
  static std::string malformed_reason(const std::vector<int>& succ) {
    int m = static_cast<int>(succ.size());
    if (m == 0 || m % 2 != 0) return "domain size must be even and positive";
    for (int i = 0; i < m; ++i) {
      if (succ[i] < 0 || succ[i] >= m)
        return "value out of range at point " + std::to_string(i);
      if (succ[i] == i) return "fixed point at " + std::to_string(i);
      if (succ[succ[i]] != i) return "not an involution at " + std::to_string(i);
    }
    return "";
  }

  int points() const noexcept { return static_cast<int>(succ_.size()); }
  int caret_count() const noexcept { return points() / 2 - 1; }
  int operator()(int x) const { return succ_.at(x); }
  const std::vector<int>& succ() const noexcept { return succ_; }

  // Chords as (min, max) pairs, sorted by first coordinate.
  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < points(); ++i)
      if (i < succ_[i]) out.emplace_back(i, succ_[i]);
    return out;
  }

  Permutation permutation() const { return Permutation(succ_); }

  friend bool operator==(const TangledMatching&, const TangledMatching&) =
      default;

private:
  std::vector<int> succ_;
};

// The matching of a ternary tree with 2n+1 leaves: axis point i is the i-th
// leaf, point 0 is where the root strand returns to the axis.  Within the
// tree the strands pass straight through every node, pairing the left child
// with the right child and the middle child with the parent.
//
// Following a strand from a leaf: climb as long as the current node is a
// middle child; from a left (right) child of v, descend into v's right
// (left) child along middle edges to a leaf.  Point 0 pairs with the leaf
// reached from the root along middle edges.
inline TangledMatching tangled_matching(const Tree<3>& t) {
  NodeTable<3> tab = node_table(t);
  constexpr int kMiddle = 1;
  auto foot = [&](int v) {
    while (!tab.is_leaf(v)) v = tab.nodes[v].child[kMiddle];
    return tab.nodes[v].leaf_no;
  };
  int points = t.leaf_count() + 1;
  std::vector<int> succ(points, -1);
  for (int leaf = 1; leaf < points; ++leaf) {
    int x = tab.leaf_node[leaf - 1];
    int partner = -1;
    for (;;) {
      int v = tab.nodes[x].parent;
      if (v == -1) {
        partner = 0;  // climbed out of the root
        break;
      }
      int slot = tab.nodes[x].slot;
      if (slot == kMiddle) {
        x = v;
        continue;
      }
      partner = foot(tab.nodes[v].child[slot == 0 ? 2 : 0]);
      break;
    }
    succ[leaf] = partner;
    if (partner == 0) succ[0] = leaf;
  }
  return TangledMatching(std::move(succ));
}

// Inverse of tangled_matching.  Repeatedly locate the smallest i >= 1 with
// p(i) = i+2 (the leftmost caret), remove points i and i+2 and close up the
// labels, until the 4-point base matching {(0,2),(1,3)} remains; then graft
// the carets back in reverse order.  Throws NotTangledError when the
// reduction gets stuck or the base is wrong.
inline Tree<3> matching_to_tree(const TangledMatching& m) {
  if (m.points() == 2) {
    // Only {(0,1)} is possible, and it is the matching of a single leaf.
    return Tree<3>::leaf();
  }
  std::vector<int> p = m.succ();
  std::vector<int> caret_at;  // leaf index of each removed caret, in order
  while (p.size() > 4) {
    int hit = -1;
    for (int i = 1; i + 2 < static_cast<int>(p.size()); ++i) {
      if (p[i] == i + 2) {
        hit = i;
        break;
      }
    }
    if (hit == -1)
      throw NotTangledError("no caret pair (i, i+2) with i >= 1");
    caret_at.push_back(hit);
    // Delete points hit and hit+2; the survivor hit+1 becomes hit, and
    // every label above hit+2 drops by 2.
    auto relabel = [&](int x) { return x > hit + 2 ? x - 2 : x - 1; };
    std::vector<int> q(p.size() - 2);
    for (int x = 0; x < static_cast<int>(p.size()); ++x) {
      if (x == hit || x == hit + 2) continue;
      int nx = x < hit ? x : relabel(x);
      int y = p[x];
      q[nx] = y < hit ? y : relabel(y);
    }
    p = std::move(q);
  }
  if (!(p[0] == 2 && p[1] == 3))
    throw NotTangledError("reduction did not reach the base matching");
  Tree<3> t = Tree<3>::parse("(...)");
  Tree<3> caret = Tree<3>::parse("(...)");
  for (auto it = caret_at.rbegin(); it != caret_at.rend(); ++it)
    t = t.graft(*it, caret);
  return t;
}

// Chords {a,c} and {b,d} with a < b < c < d cross.
inline bool chords_cross(std::pair<int, int> x, std::pair<int, int> y) {
  if (x.first > y.first) std::swap(x, y);
  return x.first < y.first && y.first < x.second && x.second < y.second;
}

inline std::vector<std::array<int, 4>> crossing_list(
    const TangledMatching& m) {
  std::vector<std::pair<int, int>> ch = m.pairs();
  std::vector<std::array<int, 4>> out;
  for (std::size_t i = 0; i < ch.size(); ++i) {
    for (std::size_t j = i + 1; j < ch.size(); ++j) {
      if (chords_cross(ch[i], ch[j]))
        out.push_back({ch[i].first, ch[i].second, ch[j].first, ch[j].second});
    }
  }
  return out;
}

inline int crossing_count(const TangledMatching& m) {
  return static_cast<int>(crossing_list(m).size());
}

// One failed check from validate_tangled.  clause 0 reports malformed input
// (not a fixed-point-free involution); clauses 2..5 are the chord-geometry
// conditions, numbered to match the characterization subsets.
struct Violation {
  int clause;
  std::vector<int> witness;
  std::string message;
};

// Checks the defining properties of tree matchings on a raw successor
// array:
//   (2) every chord crosses some other chord,
//   (3) no three chords pairwise cross as {a1,a4},{a2,a5},{a3,a6},
//   (4) no four chords form {a1,a4},{a5,a8},{a2,a7},{a3,a6},
//   (5) the number of crossings equals n (points = 2n+2).
// Returns all violations found; empty means the matching passes.
inline std::vector<Violation> validate_tangled(const std::vector<int>& succ) {
  std::vector<Violation> out;
  std::string why = TangledMatching::malformed_reason(succ);
  if (!why.empty()) {
    out.push_back({0, {}, why});
    return out;
  }
  TangledMatching m{succ};
  std::vector<std::pair<int, int>> ch = m.pairs();
  int k = static_cast<int>(ch.size());

  // The lone chord of the trivial matching is exempt from (2).
  for (int i = 0; i < k && k > 1; ++i) {
    bool crossed = false;
    for (int j = 0; j < k && !crossed; ++j)
      crossed = j != i && chords_cross(ch[i], ch[j]);
    if (!crossed)
      out.push_back({2,
                     {ch[i].first, ch[i].second},
                     "chord crosses nothing"});
  }

  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      for (int l = 0; l < k; ++l) {
        if (i == j || j == l || i == l) continue;
        // chords X=(x1,x2), Y=(y1,y2), Z=(z1,z2) in the forbidden pattern
        // x1 < y1 < z1 < x2 < y2 < z2
        auto [x1, x2] = ch[i];
        auto [y1, y2] = ch[j];
        auto [z1, z2] = ch[l];
        if (x1 < y1 && y1 < z1 && z1 < x2 && x2 < y2 && y2 < z2)
          out.push_back({3, {x1, y1, z1, x2, y2, z2},
                         "three chords in a pairwise-crossing ladder"});
      }
    }
  }

  for (int a = 0; a < k; ++a) {
    for (int c = 0; c < k; ++c) {
      for (int d = 0; d < k; ++d) {
        for (int b = 0; b < k; ++b) {
          if (a == c || a == d || a == b || c == d || c == b || d == b)
            continue;
          // A=(a1,a4), C=(a2,a7), D=(a3,a6), B=(a5,a8):
          // a1 < a2 < a3 < a4 < a5 < a6 < a7 < a8
          auto [a1, a4] = ch[a];
          auto [a2, a7] = ch[c];
          auto [a3, a6] = ch[d];
          auto [a5, a8] = ch[b];
          if (a1 < a2 && a2 < a3 && a3 < a4 && a4 < a5 && a5 < a6 &&
              a6 < a7 && a7 < a8)
            out.push_back({4, {a1, a2, a3, a4, a5, a6, a7, a8},
                           "four chords in the forbidden nesting"});
        }
      }
    }
  }

  int crossings = crossing_count(m);
  if (crossings != m.caret_count())
    out.push_back({5,
                   {},
                   "crossing count " + std::to_string(crossings) +
                       " != " + std::to_string(m.caret_count())});
  return out;
}

inline std::vector<Violation> validate_tangled(const TangledMatching& m) {
  return validate_tangled(m.succ());
}

// The permutation data of a pair of trees with a common leaf count.
//
// composition is plus-matching after minus-matching.  traversal holds the
// orbits of the alternating walk that applies the minus matching first and
// the plus matching second: the first orbit starts at point 1, later orbits
// at the smallest point not yet visited.  Each orbit has even length and
// closes on a plus step.  The orbit count is the number of components of
// the link of the pair; the composition always has exactly twice as many
// cycles (counting fixed points) as there are orbits.
struct ThompsonData {
  TangledMatching plus;
  TangledMatching minus;
  Permutation composition;
  std::vector<std::vector<int>> traversal;
  int component_count;
};

inline ThompsonData thompson_permutation(const TangledMatching& plus,
                                         const TangledMatching& minus) {
  if (plus.points() != minus.points())
    throw std::invalid_argument("matchings have different point counts");
  int m = plus.points();
  std::vector<int> comp(m);
  for (int x = 0; x < m; ++x) comp[x] = plus(minus(x));

  std::vector<std::vector<int>> orbits;
  std::vector<bool> seen(m, false);
  auto emit_orbit = [&](int start) {
    std::vector<int> orbit{start};
    seen[start] = true;
    int x = start;
    for (;;) {
      x = minus(x);
      orbit.push_back(x);
      seen[x] = true;
      x = plus(x);
      if (x == start) break;
      orbit.push_back(x);
      seen[x] = true;
    }
    orbits.push_back(std::move(orbit));
  };
  if (m >= 2) emit_orbit(1);
  for (int s = 0; s < m; ++s)
    if (!seen[s]) emit_orbit(s);

  int count = static_cast<int>(orbits.size());
  return ThompsonData{plus, minus, Permutation(std::move(comp)),
                      std::move(orbits), count};
}

inline ThompsonData thompson_permutation(const TreePair<3>& g) {
  return thompson_permutation(tangled_matching(g.plus()),
                              tangled_matching(g.minus()));
}

inline int component_count(const TreePair<3>& g) {
  return thompson_permutation(g).component_count;
}

}  // namespace treelink
