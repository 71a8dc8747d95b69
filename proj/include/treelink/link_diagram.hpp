#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "treelink/tree.hpp"
#include "treelink/tree_pair.hpp"

namespace treelink {

// Crossing sign convention for the drawn diagram.  standard puts the
// left-right arc of every node on top; positive flips the lower tree so
// its middle-parent strands run on top.  The choice never changes which
// strands are connected, only which one is drawn over.
enum class Convention { standard, positive };

inline Convention convention_from_string(const std::string& s) {
  if (s == "standard") return Convention::standard;
  if (s == "positive") return Convention::positive;
  throw std::invalid_argument("unknown convention: " + s);
}

inline std::string to_string(Convention c) {
  return c == Convention::standard ? "standard" : "positive";
}

// Link diagram of a tree pair.  The plus tree hangs above the axis, the
// minus tree below, leaves of both trees meet at axis marks 1..2n+1 and
// the two root strands close up around the left through mark 0.  Every
// internal node is a crossing where the left-right arc passes over or
// under the middle-parent strand.
//
// Segments are the diagram edges between crossings: one per internal tree
// edge, one per axis mark (mark i ties the upper leaf i strand to the
// lower one, mark 0 is the outer root-to-root strand).  A pair of single
// leaves yields one closed segment and no crossings.
struct LinkDiagram {
  static constexpr int kLeft = 0;
  static constexpr int kMiddle = 1;
  static constexpr int kRight = 2;
  static constexpr int kParent = 3;

  struct Crossing {
    bool upper;     // node of the plus tree
    int node;       // preorder node index within its tree
    bool arc_over;  // the left-right arc is the over strand
  };

  struct Segment {
    // Global port ids (4*crossing + port); end[0] is the upper end of a
    // leaf strand and the plus side of the outer strand.  {-1,-1} marks a
    // closed loop with no crossings.
    std::array<int, 2> end{-1, -1};
    std::vector<int> marks;  // axis marks on this segment
  };

  int axis_points = 0;
  std::vector<Crossing> crossings;  // plus tree in preorder, then minus
  std::vector<Segment> segments;
  std::vector<int> port_to_segment;
  TreePair<3> source;
  Convention convention = Convention::standard;

  static int partner(int port) { return port ^ 2; }
  int port_id(int crossing, int port) const { return 4 * crossing + port; }
};

inline LinkDiagram build_diagram(const TreePair<3>& g,
                                 Convention convention = Convention::standard) {
  LinkDiagram d;
  d.source = g;
  d.convention = convention;
  d.axis_points = g.leaf_count() + 1;
  if (g.plus().is_leaf()) {
    LinkDiagram::Segment loop;
    loop.marks = {0, 1};
    d.segments.push_back(std::move(loop));
    return d;
  }

  NodeTable<3> up = node_table(g.plus());
  NodeTable<3> down = node_table(g.minus());

  // Crossing ids: internal nodes of the plus tree in preorder, then the
  // minus tree.
  auto index_crossings = [&](const NodeTable<3>& tab, bool upper,
                             std::vector<int>& of_node) {
    of_node.assign(tab.nodes.size(), -1);
    for (std::size_t v = 0; v < tab.nodes.size(); ++v) {
      if (tab.is_leaf(static_cast<int>(v))) continue;
      of_node[v] = static_cast<int>(d.crossings.size());
      bool arc_over = upper || convention == Convention::standard;
      d.crossings.push_back({upper, static_cast<int>(v), arc_over});
    }
  };
  std::vector<int> up_cross, down_cross;
  index_crossings(up, true, up_cross);
  index_crossings(down, false, down_cross);

  auto add_segment = [&](int end0, int end1, std::vector<int> marks) {
    d.segments.push_back({{end0, end1}, std::move(marks)});
  };

  // Internal tree edges.
  auto internal_edges = [&](const NodeTable<3>& tab,
                            const std::vector<int>& cross) {
    for (std::size_t v = 0; v < tab.nodes.size(); ++v) {
      int p = tab.nodes[v].parent;
      if (p == -1 || tab.is_leaf(static_cast<int>(v))) continue;
      add_segment(d.port_id(cross[v], LinkDiagram::kParent),
                  d.port_id(cross[p], tab.nodes[v].slot), {});
    }
  };
  internal_edges(up, up_cross);
  internal_edges(down, down_cross);

  // Leaf strands through axis marks 1..2n+1.
  for (int i = 1; i < d.axis_points; ++i) {
    int un = up.leaf_node[i - 1];
    int dn = down.leaf_node[i - 1];
    add_segment(d.port_id(up_cross[up.nodes[un].parent], up.nodes[un].slot),
                d.port_id(down_cross[down.nodes[dn].parent],
                          down.nodes[dn].slot),
                {i});
  }

  // Outer strand through mark 0.
  add_segment(d.port_id(up_cross[0], LinkDiagram::kParent),
              d.port_id(down_cross[0], LinkDiagram::kParent), {0});

  d.port_to_segment.assign(4 * d.crossings.size(), -1);
  for (std::size_t s = 0; s < d.segments.size(); ++s) {
    for (int e : d.segments[s].end)
      if (e >= 0) d.port_to_segment[e] = static_cast<int>(s);
  }
  return d;
}

// One pass through a crossing while walking a strand.
struct Passage {
  int crossing;
  int in_port;   // port by which the strand enters the crossing
  bool over;     // the strand is the over strand here
};

// A closed strand of the diagram with a chosen orientation: the segments
// in walk order (enter_end is the segment end the walk enters at), the
// crossing passages between them, and the axis marks in visit order.
struct OrientedLoop {
  std::vector<int> segments;
  std::vector<int> enter_end;
  std::vector<Passage> passages;
  std::vector<int> marks;
};

namespace detail {

// Walk a closed strand starting by entering `seg0` at its end `from0`.
inline OrientedLoop walk_loop(const LinkDiagram& d, int seg0, int from0) {
  OrientedLoop loop;
  int s = seg0, from = from0;
  do {
    loop.segments.push_back(s);
    loop.enter_end.push_back(from);
    const auto& seg = d.segments[s];
    if (from == 0)
      loop.marks.insert(loop.marks.end(), seg.marks.begin(), seg.marks.end());
    else
      loop.marks.insert(loop.marks.end(), seg.marks.rbegin(),
                        seg.marks.rend());
    int exit_port = seg.end[1 - from];
    if (exit_port < 0) break;  // closed circle, no crossings
    int c = exit_port / 4;
    int port = exit_port % 4;
    bool arc_strand =
        port == LinkDiagram::kLeft || port == LinkDiagram::kRight;
    loop.passages.push_back(
        {c, port, arc_strand == d.crossings[c].arc_over});
    int next_port = d.port_id(c, LinkDiagram::partner(port));
    s = d.port_to_segment[next_port];
    from = d.segments[s].end[0] == next_port ? 0 : 1;
  } while (s != seg0 || from != from0);
  return loop;
}

}  // namespace detail

// Components of the diagram found by strand tracing alone; loops are
// oriented to pass their smallest axis mark downward (from the upper
// half-plane to the lower) and are listed by smallest mark.
struct TraceResult {
  std::vector<OrientedLoop> loops;
  int component_count = 0;
};

inline TraceResult trace_components(const LinkDiagram& d) {
  TraceResult out;
  std::vector<char> used(d.segments.size(), 0);
  for (std::size_t s0 = 0; s0 < d.segments.size(); ++s0) {
    if (used[s0]) continue;
    OrientedLoop probe = detail::walk_loop(d, static_cast<int>(s0), 0);
    for (int s : probe.segments) used[s] = 1;
    // Reorient: enter the segment carrying the smallest mark at its upper
    // end.  Every component meets the axis, so the minimum exists.
    int best = -1, best_mark = 0;
    for (std::size_t k = 0; k < probe.segments.size(); ++k) {
      const auto& marks = d.segments[probe.segments[k]].marks;
      if (marks.empty()) continue;
      int m = *std::min_element(marks.begin(), marks.end());
      if (best == -1 || m < best_mark) {
        best = probe.segments[k];
        best_mark = m;
      }
    }
    out.loops.push_back(detail::walk_loop(d, best, 0));
  }
  std::sort(out.loops.begin(), out.loops.end(),
            [](const OrientedLoop& a, const OrientedLoop& b) {
              return a.marks.front() < b.marks.front();
            });
  out.component_count = static_cast<int>(out.loops.size());
  return out;
}

// Planar diagram code: one quadruple per crossing, arcs numbered from 1 in
// walk order component by component, each quadruple read counterclockwise
// from the arc entering under the crossing.
struct PDCode {
  std::vector<std::array<int, 4>> tuples;

  std::string text() const {
    std::string out;
    for (const auto& t : tuples) {
      out += "X(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
             std::to_string(t[2]) + "," + std::to_string(t[3]) + ")\n";
    }
    return out;
  }
};

namespace detail {

// Counterclockwise port order around a crossing, starting from kParent.
// An upper crossing has its parent edge above and children below; a lower
// crossing is the mirror image.
inline std::array<int, 4> ccw_ports(bool upper) {
  if (upper)
    return {LinkDiagram::kParent, LinkDiagram::kLeft, LinkDiagram::kMiddle,
            LinkDiagram::kRight};
  return {LinkDiagram::kParent, LinkDiagram::kRight, LinkDiagram::kMiddle,
          LinkDiagram::kLeft};
}

// Arc labels: segment -> 1-based number in trace order.
inline std::vector<int> arc_labels(const LinkDiagram& d,
                                   const TraceResult& trace) {
  std::vector<int> label(d.segments.size(), 0);
  int next = 1;
  for (const OrientedLoop& loop : trace.loops)
    for (int s : loop.segments) label[s] = next++;
  return label;
}

}  // namespace detail

inline PDCode pd_code(const LinkDiagram& d) {
  TraceResult trace = trace_components(d);
  std::vector<int> label = detail::arc_labels(d, trace);
  // in_port of the under passage at each crossing.
  std::vector<int> under_in(d.crossings.size(), -1);
  for (const OrientedLoop& loop : trace.loops)
    for (const Passage& p : loop.passages)
      if (!p.over) under_in[p.crossing] = p.in_port;
  PDCode pd;
  for (std::size_t c = 0; c < d.crossings.size(); ++c) {
    std::array<int, 4> order = detail::ccw_ports(d.crossings[c].upper);
    int at = 0;
    while (order[at] != under_in[c]) ++at;
    std::array<int, 4> tuple;
    for (int k = 0; k < 4; ++k) {
      int port = order[(at + k) % 4];
      tuple[k] = label[d.port_to_segment[d.port_id(static_cast<int>(c), port)]];
    }
    pd.tuples.push_back(tuple);
  }
  return pd;
}

// Gauss code: per component, the crossings in visit order with O/U marks.
// Crossings are numbered from 1 in diagram order.
struct GaussCode {
  struct Token {
    bool over;
    int crossing;  // 1-based
  };
  std::vector<std::vector<Token>> components;

  std::string text() const {
    std::string out;
    for (const auto& comp : components) {
      for (std::size_t i = 0; i < comp.size(); ++i) {
        if (i) out += ' ';
        out += (comp[i].over ? 'O' : 'U');
        out += std::to_string(comp[i].crossing);
      }
      out += '\n';
    }
    return out;
  }
};

inline GaussCode gauss_code(const LinkDiagram& d) {
  TraceResult trace = trace_components(d);
  GaussCode gc;
  for (const OrientedLoop& loop : trace.loops) {
    std::vector<GaussCode::Token> comp;
    for (const Passage& p : loop.passages)
      comp.push_back({p.over, p.crossing + 1});
    gc.components.push_back(std::move(comp));
  }
  return gc;
}

}  // namespace treelink
