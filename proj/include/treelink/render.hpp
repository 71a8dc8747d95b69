#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "treelink/link_diagram.hpp"

namespace treelink {

struct RenderOptions {
  double scale = 1.0;  // global size multiplier
  double gap = 0.18;   // half-width of undercrossing gaps, in axis units
  bool labels = true;  // number the axis marks
};

namespace detail {

inline std::string fnum(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  return s == "-0.000" ? "0.000" : s;
}

constexpr std::array<const char*, 8> kPalette = {
    "1F77B4", "D62728", "2CA02C", "9467BD",
    "FF7F0E", "17BECF", "8C564B", "E377C2"};

struct Piece {
  enum Kind { kLine, kQuad, kEllipse } kind;
  // kLine: pts[0], pts[1].  kQuad: start, control, end.  kEllipse:
  // pts[0] = center, pts[1] = radii.
  std::array<std::array<double, 2>, 3> pts{};
  int segment = 0;
};

struct Scene {
  std::vector<Piece> pieces;
  int axis_points = 0;
  std::vector<int> component_of_segment;
  int components = 0;
  int crossings = 0;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};

// Strand x and apex height per node.  A strand sits at its node's middle
// spine foot; a node's crossing is at (foot, span/2 + 1/2), which nests
// every cap strictly above the caps of its children.
struct TreeGeom {
  NodeTable<3> tab;
  std::vector<double> x;
  std::vector<double> y;  // apex height, 0 for leaves
};

inline TreeGeom tree_geom(const Tree<3>& t) {
  TreeGeom g{node_table(t), {}, {}};
  const auto& tab = g.tab;
  int n = static_cast<int>(tab.nodes.size());
  g.x.assign(n, 0.0);
  g.y.assign(n, 0.0);
  std::vector<int> lo(n), hi(n);
  for (int v = n - 1; v >= 0; --v) {
    if (tab.is_leaf(v)) {
      lo[v] = hi[v] = tab.nodes[v].leaf_no;
      g.x[v] = tab.nodes[v].leaf_no;
      continue;
    }
    lo[v] = lo[tab.nodes[v].child[0]];
    hi[v] = hi[tab.nodes[v].child[2]];
    int f = tab.nodes[v].child[1];
    while (!tab.is_leaf(f)) f = tab.nodes[f].child[1];
    g.x[v] = tab.nodes[f].leaf_no;
    g.y[v] = (hi[v] - lo[v]) / 2.0 + 0.5;
  }
  return g;
}

inline std::array<double, 2> lerp(const std::array<double, 2>& a,
                                  const std::array<double, 2>& b, double t) {
  return {a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t};
}

inline std::array<double, 2> quad_at(const std::array<double, 2>& p0,
                                     const std::array<double, 2>& c,
                                     const std::array<double, 2>& p1,
                                     double t) {
  return lerp(lerp(p0, c, t), lerp(c, p1, t), t);
}

inline Scene build_scene(const LinkDiagram& d, const RenderOptions& opt) {
  Scene sc;
  sc.axis_points = d.axis_points;
  sc.crossings = static_cast<int>(d.crossings.size());
  TraceResult tr = trace_components(d);
  sc.components = tr.component_count;
  sc.component_of_segment.assign(d.segments.size(), 0);
  for (std::size_t k = 0; k < tr.loops.size(); ++k)
    for (int s : tr.loops[k].segments)
      sc.component_of_segment[s] = static_cast<int>(k);

  auto push = [&](Piece p) { sc.pieces.push_back(std::move(p)); };
  double g = opt.gap;

  if (d.crossings.empty()) {
    Piece e{Piece::kEllipse, {{{0.5, 0.0}, {0.5, 0.4}, {0, 0}}}, 0};
    push(e);
    sc.xmin = 0;
    sc.xmax = 1;
    sc.ymin = -0.4;
    sc.ymax = 0.4;
    return sc;
  }

  int upper_internal = d.source.plus().internal_count();
  double root_top[2] = {0, 0};  // outer strand heights, plus then minus
  double root_x[2] = {0, 0};

  for (int side = 0; side < 2; ++side) {
    bool upper = side == 0;
    const Tree<3>& tree = upper ? d.source.plus() : d.source.minus();
    TreeGeom geo = tree_geom(tree);
    double sign = upper ? 1.0 : -1.0;
    std::vector<int> cr(geo.tab.nodes.size(), -1);
    {
      int k = upper ? 0 : upper_internal;
      for (std::size_t v = 0; v < geo.tab.nodes.size(); ++v)
        if (!geo.tab.is_leaf(static_cast<int>(v))) cr[v] = k++;
    }
    auto under_gap = [&](int node) {
      // The middle-parent strand dips under exactly when the arc is over.
      return d.crossings[cr[node]].arc_over ? g : 0.0;
    };

    for (std::size_t v = 0; v < geo.tab.nodes.size(); ++v) {
      if (geo.tab.is_leaf(static_cast<int>(v))) continue;
      int c = cr[v];
      bool arc_over = d.crossings[c].arc_over;
      const auto& nd = geo.tab.nodes[v];
      double xl = geo.x[nd.child[0]], xf = geo.x[v], xr = geo.x[nd.child[2]];
      double yv = geo.y[v];
      int seg_l = d.port_to_segment[d.port_id(c, LinkDiagram::kLeft)];
      int seg_r = d.port_to_segment[d.port_id(c, LinkDiagram::kRight)];

      std::array<double, 2> lp0{xl, sign * (yv - 0.5)}, lc{xl, sign * yv},
          lp1{xf, sign * yv};
      std::array<double, 2> rp0{xf, sign * yv}, rc{xr, sign * yv},
          rp1{xr, sign * (yv - 0.5)};
      if (arc_over) {
        push({Piece::kQuad, {lp0, lc, lp1}, seg_l});
        push({Piece::kQuad, {rp0, rc, rp1}, seg_r});
      } else {
        double t1 = std::sqrt(std::clamp(1.0 - g / (xf - xl), 0.25, 1.0));
        push({Piece::kQuad, {lp0, lerp(lp0, lc, t1), quad_at(lp0, lc, lp1, t1)},
              seg_l});
        double t2 = std::sqrt(std::clamp(g / (xr - xf), 0.0, 0.75));
        push({Piece::kQuad,
              {quad_at(rp0, rc, rp1, t2), lerp(rc, rp1, t2), rp1},
              seg_r});
      }
    }

    // Tree edges: the parent strand of every non-root node, and every leaf
    // strand up from the axis.
    for (std::size_t v = 1; v < geo.tab.nodes.size(); ++v) {
      const auto& nd = geo.tab.nodes[v];
      if (nd.parent == -1) continue;  // only the root
      int pc = cr[nd.parent];
      double x = geo.x[v];
      double bottom = geo.tab.is_leaf(static_cast<int>(v))
                          ? 0.0
                          : geo.y[v] + under_gap(static_cast<int>(v));
      double top = nd.slot == LinkDiagram::kMiddle
                       ? geo.y[nd.parent] - under_gap(nd.parent)
                       : geo.y[nd.parent] - 0.5;
      int seg = d.port_to_segment[d.port_id(pc, nd.slot)];
      push({Piece::kLine,
            {{{x, sign * bottom}, {x, sign * top}, {0, 0}}},
            seg});
    }

    // Root strand up to the outer arc.
    double top = geo.y[0] + 0.5;
    int seg = d.port_to_segment[d.port_id(cr[0], LinkDiagram::kParent)];
    push({Piece::kLine,
          {{{geo.x[0], sign * (geo.y[0] + under_gap(0))},
            {geo.x[0], sign * top},
            {0, 0}}},
          seg});
    root_top[side] = top;
    root_x[side] = geo.x[0];
  }

  // Outer strand: across the top, down through mark 0, across the bottom.
  int outer_seg = static_cast<int>(d.segments.size()) - 1;
  auto line = [&](double x0, double y0, double x1, double y1) {
    push({Piece::kLine, {{{x0, y0}, {x1, y1}, {0, 0}}}, outer_seg});
  };
  line(root_x[0], root_top[0], 0.0, root_top[0]);
  line(0.0, root_top[0], 0.0, -root_top[1]);
  line(0.0, -root_top[1], root_x[1], -root_top[1]);

  sc.xmin = 0;
  sc.xmax = sc.axis_points - 1;
  sc.ymin = -root_top[1];
  sc.ymax = root_top[0];
  return sc;
}

}  // namespace detail

inline std::string render_svg(const LinkDiagram& d,
                              const RenderOptions& opt = {}) {
  using detail::fnum;
  detail::Scene sc = detail::build_scene(d, opt);
  double pad = 0.7;
  double unit = 40.0 * opt.scale;
  auto X = [&](double x) { return fnum((x - sc.xmin + pad) * unit); };
  auto Y = [&](double y) { return fnum((sc.ymax - y + pad) * unit); };
  std::string w = fnum((sc.xmax - sc.xmin + 2 * pad) * unit);
  std::string h = fnum((sc.ymax - sc.ymin + 2 * pad) * unit);

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + w + " " +
         h + "\" width=\"" + w + "\" height=\"" + h + "\">\n";
  out += "<!-- axis-points=" + std::to_string(sc.axis_points) +
         " crossings=" + std::to_string(sc.crossings) +
         " components=" + std::to_string(sc.components) +
         " convention=" + to_string(d.convention) + " -->\n";
  out += "<line x1=\"" + X(sc.xmin) + "\" y1=\"" + Y(0) + "\" x2=\"" +
         X(sc.xmax) + "\" y2=\"" + Y(0) +
         "\" stroke=\"#cccccc\" stroke-width=\"" + fnum(unit * 0.02) +
         "\" stroke-dasharray=\"" + fnum(unit * 0.1) + "\"/>\n";

  std::string sw = fnum(unit * 0.07);
  for (const auto& p : sc.pieces) {
    std::string color =
        std::string("#") +
        detail::kPalette[sc.component_of_segment[p.segment] % 8];
    if (p.kind == detail::Piece::kEllipse) {
      out += "<ellipse cx=\"" + X(p.pts[0][0]) + "\" cy=\"" + Y(p.pts[0][1]) +
             "\" rx=\"" + fnum(p.pts[1][0] * unit) + "\" ry=\"" +
             fnum(p.pts[1][1] * unit) + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"" + sw + "\"/>\n";
      continue;
    }
    std::string dpath = "M " + X(p.pts[0][0]) + " " + Y(p.pts[0][1]);
    if (p.kind == detail::Piece::kLine)
      dpath += " L " + X(p.pts[1][0]) + " " + Y(p.pts[1][1]);
    else
      dpath += " Q " + X(p.pts[1][0]) + " " + Y(p.pts[1][1]) + " " +
               X(p.pts[2][0]) + " " + Y(p.pts[2][1]);
    out += "<path d=\"" + dpath + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"" + sw + "\" stroke-linecap=\"round\"/>\n";
  }

  for (int i = 0; i < sc.axis_points; ++i) {
    out += "<circle cx=\"" + X(i) + "\" cy=\"" + Y(0) + "\" r=\"" +
           fnum(unit * 0.06) + "\" fill=\"#333333\"/>\n";
    if (opt.labels) {
      out += "<text x=\"" + X(i) + "\" y=\"" + Y(-0.45) + "\" font-size=\"" +
             fnum(unit * 0.3) +
             "\" text-anchor=\"middle\" fill=\"#555555\">" +
             std::to_string(i) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

inline std::string render_tikz(const LinkDiagram& d,
                               const RenderOptions& opt = {}) {
  using detail::fnum;
  detail::Scene sc = detail::build_scene(d, opt);
  std::string out;
  out += "% axis-points=" + std::to_string(sc.axis_points) +
         " crossings=" + std::to_string(sc.crossings) +
         " components=" + std::to_string(sc.components) +
         " convention=" + to_string(d.convention) + "\n";
  for (std::size_t i = 0; i < detail::kPalette.size(); ++i)
    out += "\\definecolor{c" + std::to_string(i) + "}{HTML}{" +
           detail::kPalette[i] + "}\n";
  out += "\\begin{tikzpicture}[x=" + fnum(opt.scale) + "cm,y=" +
         fnum(opt.scale) + "cm,line width=0.9pt]\n";
  auto pt = [&](double x, double y) {
    return "(" + fnum(x) + "," + fnum(y) + ")";
  };
  out += "\\draw[gray!50,dashed,line width=0.4pt] " + pt(sc.xmin, 0) +
         " -- " + pt(sc.xmax, 0) + ";\n";
  for (const auto& p : sc.pieces) {
    std::string color =
        "c" + std::to_string(sc.component_of_segment[p.segment] % 8);
    if (p.kind == detail::Piece::kEllipse) {
      out += "\\draw[" + color + "] " + pt(p.pts[0][0], p.pts[0][1]) +
             " ellipse [x radius=" + fnum(p.pts[1][0]) +
             ", y radius=" + fnum(p.pts[1][1]) + "];\n";
    } else if (p.kind == detail::Piece::kLine) {
      out += "\\draw[" + color + "] " + pt(p.pts[0][0], p.pts[0][1]) +
             " -- " + pt(p.pts[1][0], p.pts[1][1]) + ";\n";
    } else {
      // quadratic segment emitted as the equivalent cubic
      auto c1 = detail::lerp(p.pts[0], p.pts[1], 2.0 / 3.0);
      auto c2 = detail::lerp(p.pts[2], p.pts[1], 2.0 / 3.0);
      out += "\\draw[" + color + "] " + pt(p.pts[0][0], p.pts[0][1]) +
             " .. controls " + pt(c1[0], c1[1]) + " and " + pt(c2[0], c2[1]) +
             " .. " + pt(p.pts[2][0], p.pts[2][1]) + ";\n";
    }
  }
  for (int i = 0; i < sc.axis_points; ++i) {
    out += "\\fill[black] " + pt(i, 0) + " circle [radius=0.06];\n";
    if (opt.labels)
      out += "\\node[below=2pt,font=\\tiny,gray] at " + pt(i, 0) + " {" +
             std::to_string(i) + "};\n";
  }
  out += "\\end{tikzpicture}\n";
  return out;
}

inline std::string render(const LinkDiagram& d, const std::string& format,
                          const RenderOptions& opt = {}) {
  if (format == "svg") return render_svg(d, opt);
  if (format == "tikz") return render_tikz(d, opt);
  throw std::invalid_argument("unknown render format: " + format);
}

}  // namespace treelink
