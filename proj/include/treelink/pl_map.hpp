#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "treelink/tree.hpp"
#include "treelink/tree_pair.hpp"

namespace treelink {

using Rational = boost::multiprecision::cpp_rational;

// Increasing piecewise linear homeomorphism of [0,1], stored as its
// breakpoint list from (0,0) to (1,1).  The list may contain collinear
// interior points (they record where a generating partition had a leaf
// boundary); equality compares the underlying functions, so collinear
// points are immaterial.
class PLMap {
public:
  using Point = std::pair<Rational, Rational>;

  PLMap() : points_{{0, 0}, {1, 1}} {}

  explicit PLMap(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.size() < 2)
      throw std::invalid_argument("a PL map needs at least two breakpoints");
    if (points_.front() != Point{0, 0} || points_.back() != Point{1, 1})
      throw std::invalid_argument("a PL map must fix 0 and 1");
    for (std::size_t i = 1; i < points_.size(); ++i) {
      if (points_[i - 1].first >= points_[i].first ||
          points_[i - 1].second >= points_[i].second)
        throw std::invalid_argument("breakpoints must be strictly increasing");
    }
  }

  static PLMap identity() { return PLMap(); }

  const std::vector<Point>& points() const noexcept { return points_; }

  Rational operator()(const Rational& x) const {
    if (x < 0 || x > 1) throw std::domain_error("argument outside [0,1]");
    // Last segment whose left endpoint is <= x.
    std::size_t k = points_.size() - 2;
    for (std::size_t i = 1; i + 1 < points_.size(); ++i) {
      if (points_[i].first > x) {
        k = i - 1;
        break;
      }
    }
    const auto& [x0, y0] = points_[k];
    const auto& [x1, y1] = points_[k + 1];
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  }

  // Same function with collinear interior breakpoints removed.
  PLMap canonical() const {
    std::vector<Point> out;
    out.reserve(points_.size());
    for (const Point& p : points_) {
      while (out.size() >= 2) {
        const Point& a = out[out.size() - 2];
        const Point& b = out.back();
        if ((b.second - a.second) * (p.first - b.first) ==
            (p.second - b.second) * (b.first - a.first))
          out.pop_back();
        else
          break;
      }
      out.push_back(p);
    }
    return PLMap(std::move(out));
  }

  // Segment slopes, one per consecutive breakpoint pair.
  std::vector<Rational> slopes() const {
    std::vector<Rational> out;
    out.reserve(points_.size() - 1);
    for (std::size_t i = 1; i < points_.size(); ++i) {
      out.push_back((points_[i].second - points_[i - 1].second) /
                    (points_[i].first - points_[i - 1].first));
    }
    return out;
  }

  // Function equality.
  friend bool operator==(const PLMap& a, const PLMap& b) {
    return a.canonical().points_ == b.canonical().points_;
  }

private:
  std::vector<Point> points_;
};

inline PLMap inverse(const PLMap& f) {
  std::vector<PLMap::Point> pts;
  pts.reserve(f.points().size());
  for (const auto& [x, y] : f.points()) pts.emplace_back(y, x);
  return PLMap(std::move(pts));
}

// Composition f after g.  Breakpoints are the breakpoints of g together
// with the g-preimages of the breakpoints of f.
inline PLMap compose(const PLMap& f, const PLMap& g) {
  std::vector<Rational> xs;
  for (const auto& [x, y] : g.points()) xs.push_back(x);
  PLMap ginv = inverse(g);
  for (const auto& [x, y] : f.points()) xs.push_back(ginv(x));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<PLMap::Point> pts;
  pts.reserve(xs.size());
  for (const Rational& x : xs) pts.emplace_back(x, f(g(x)));
  return PLMap(std::move(pts));
}

// Boundaries of the leaf intervals of the standard self-similar partition:
// each internal node splits its interval into Arity equal parts.  Returns
// leaf_count()+1 values from 0 to 1.
template <int Arity>
std::vector<Rational> leaf_boundaries(const Tree<Arity>& t) {
  std::vector<Rational> out;
  out.emplace_back(0);
  struct Rec {
    const std::string& code;
    std::size_t p = 0;
    std::vector<Rational>& out;
    void walk(const Rational& a, const Rational& b) {
      if (code[p] == '.') {
        ++p;
        out.push_back(b);
        return;
      }
      ++p;  // '('
      Rational w = (b - a) / Arity;
      for (int k = 0; k < Arity; ++k) walk(a + w * k, a + w * (k + 1));
      ++p;  // ')'
    }
  } rec{t.str(), 0, out};
  rec.walk(Rational(0), Rational(1));
  return out;
}

// The piecewise linear map of a pair: the k-th minus leaf interval is sent
// affinely onto the k-th plus leaf interval.  Breakpoints are kept at every
// leaf boundary of the minus tree, even where adjacent slopes agree.
template <int Arity>
PLMap pl_map(const TreePair<Arity>& g) {
  std::vector<Rational> xs = leaf_boundaries(g.minus());
  std::vector<Rational> ys = leaf_boundaries(g.plus());
  std::vector<PLMap::Point> pts;
  pts.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) pts.emplace_back(xs[i], ys[i]);
  return PLMap(std::move(pts));
}

}  // namespace treelink
