#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "treelink/enumeration.hpp"
#include "treelink/tangles.hpp"
#include "treelink/tree.hpp"
#include "treelink/tree_pair.hpp"

namespace treelink {

// Orbit list in a form independent of discovery order: every orbit rotated
// to start at its smallest point, orbits sorted by starting point.
inline std::vector<std::vector<int>> normalized_traversal(
    const std::vector<std::vector<int>>& orbits) {
  std::vector<std::vector<int>> out;
  out.reserve(orbits.size());
  for (const std::vector<int>& orbit : orbits) {
    auto at = std::min_element(orbit.begin(), orbit.end());
    std::vector<int> rot(orbit.size());
    std::rotate_copy(orbit.begin(), at, orbit.end(), rot.begin());
    out.push_back(std::move(rot));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CensusRecord {
  int n = 0;  // internal nodes per tree
  BigInt tree_count = 0;
  BigInt pair_count = 0;
  // histogram[k] = ordered pairs whose link has k components, k = 1..n+1
  std::vector<std::uint64_t> histogram;
  std::uint64_t distinct_compositions = 0;
  std::uint64_t distinct_traversals = 0;
};

// Exhaustive census over all ordered pairs of n-caret ternary trees.  The
// result does not depend on the worker count: pairs are striped over
// workers and merged with commutative operations only.
inline CensusRecord census(int n, int workers = 1, int bound = 5) {
  if (n < 1) throw std::invalid_argument("census needs n >= 1");
  if (n > bound)
    throw std::invalid_argument("census bound exceeded: n = " +
                                std::to_string(n) + " > " +
                                std::to_string(bound));
  std::vector<Tree<3>> trees = enumerate_trees<3>(2 * n + 1);
  std::vector<TangledMatching> matchings;
  matchings.reserve(trees.size());
  for (const Tree<3>& t : trees) matchings.push_back(tangled_matching(t));

  std::uint64_t count = trees.size();
  std::uint64_t total = count * count;
  if (workers < 1) workers = 1;
  if (static_cast<std::uint64_t>(workers) > total)
    workers = static_cast<int>(total);

  struct Local {
    std::vector<std::uint64_t> hist;
    std::set<std::vector<int>> compositions;
    std::set<std::vector<std::vector<int>>> traversals;
  };
  std::vector<Local> locals(workers);
  auto run = [&](int w) {
    Local& loc = locals[w];
    loc.hist.assign(n + 2, 0);
    for (std::uint64_t idx = w; idx < total;
         idx += static_cast<std::uint64_t>(workers)) {
      ThompsonData td = thompson_permutation(matchings[idx / count],
                                             matchings[idx % count]);
      ++loc.hist[td.component_count];
      loc.compositions.insert(td.composition.map());
      loc.traversals.insert(normalized_traversal(td.traversal));
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (std::thread& t : pool) t.join();
  }

  CensusRecord rec;
  rec.n = n;
  rec.tree_count = count;
  rec.pair_count = total;
  rec.histogram.assign(n + 2, 0);
  std::set<std::vector<int>> compositions;
  std::set<std::vector<std::vector<int>>> traversals;
  for (Local& loc : locals) {
    for (std::size_t k = 0; k < loc.hist.size(); ++k)
      rec.histogram[k] += loc.hist[k];
    compositions.merge(loc.compositions);
    traversals.merge(loc.traversals);
  }
  rec.distinct_compositions = compositions.size();
  rec.distinct_traversals = traversals.size();
  return rec;
}

// Check of the matching characterization at size n: among all fixed-point-
// free involutions on 2n+2 points, the ones satisfying the four chord
// conditions are exactly the matchings of ternary trees.
struct CharacterizationReport {
  int n = 0;
  std::uint64_t involution_count = 0;
  // survivors[mask] = involutions passing every property in mask; bit k of
  // mask stands for property k+2 of validate_tangled.
  std::array<std::uint64_t, 16> survivors{};
  std::uint64_t image_size = 0;
  bool holds = false;
  std::vector<std::vector<int>> extra;  // pass all four, not a tree matching
  // tree matchings failing some property, with the failing clause
  std::vector<std::pair<std::vector<int>, int>> image_failures;
};

inline CharacterizationReport verify_characterization(int n, int bound = 5) {
  if (n < 1) throw std::invalid_argument("characterization needs n >= 1");
  if (n > bound)
    throw std::invalid_argument("characterization bound exceeded: n = " +
                                std::to_string(n) + " > " +
                                std::to_string(bound));
  CharacterizationReport rep;
  rep.n = n;

  std::set<std::vector<int>> image;
  for (const Tree<3>& t : enumerate_trees<3>(2 * n + 1))
    image.insert(tangled_matching(t).succ());
  rep.image_size = image.size();

  for_each_involution(2 * n + 2, [&](const std::vector<int>& succ) {
    ++rep.involution_count;
    std::array<bool, 4> fails{};
    for (const Violation& v : validate_tangled(succ)) {
      if (v.clause >= 2 && v.clause <= 5) fails[v.clause - 2] = true;
    }
    int pass_mask = 0;
    for (int k = 0; k < 4; ++k)
      if (!fails[k]) pass_mask |= 1 << k;
    for (int mask = 0; mask < 16; ++mask)
      if ((pass_mask & mask) == mask) ++rep.survivors[mask];
    bool all = pass_mask == 15;
    bool in_image = image.count(succ) > 0;
    if (all && !in_image) rep.extra.push_back(succ);
    if (in_image && !all) {
      int clause = 0;
      for (int k = 0; k < 4; ++k)
        if (fails[k]) {
          clause = k + 2;
          break;
        }
      rep.image_failures.emplace_back(succ, clause);
    }
  });

  rep.holds = rep.extra.empty() && rep.image_failures.empty() &&
              rep.survivors[15] == rep.image_size;
  return rep;
}

// Generators for random walks: the embedded images of the two standard
// binary generators and their inverses.
inline std::vector<TreePair<3>> default_walk_generators() {
  BinaryPair x0{Tree<2>::parse("((..).)"), Tree<2>::parse("(.(..))")};
  BinaryPair x1{Tree<2>::parse("(.((..).))"), Tree<2>::parse("(.(.(..)))")};
  TreePair<3> g0 = iota(x0);
  TreePair<3> g1 = iota(x1);
  return {g0, g1, inverse(g0), inverse(g1)};
}

struct WalkResult {
  int steps = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::map<int, std::uint64_t> histogram;  // component count -> samples
};

// Uniform random products of the generators; the histogram collects the
// component count of each sample's final element.  Sample s draws from the
// stream (seed, s), so results do not depend on the worker count.
inline WalkResult random_walk(const std::vector<TreePair<3>>& generators,
                              int steps, int samples, std::uint64_t seed,
                              int workers = 1) {
  if (generators.empty())
    throw std::invalid_argument("random walk needs generators");
  if (steps < 0 || samples < 0)
    throw std::invalid_argument("steps and samples must be nonnegative");
  if (workers < 1) workers = 1;
  if (workers > samples && samples > 0) workers = samples;

  std::vector<std::map<int, std::uint64_t>> locals(workers);
  auto run = [&](int w) {
    for (int s = w; s < samples; s += workers) {
      Rng rng(seed, static_cast<std::uint64_t>(s));
      TreePair<3> g;
      for (int i = 0; i < steps; ++i)
        g = g * generators[static_cast<std::size_t>(
                rng.below(static_cast<std::uint64_t>(generators.size())))];
      ++locals[w][component_count(g)];
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (std::thread& t : pool) t.join();
  }

  WalkResult out;
  out.steps = steps;
  out.samples = samples;
  out.seed = seed;
  for (const auto& loc : locals)
    for (const auto& [k, v] : loc) out.histogram[k] += v;
  return out;
}

inline WalkResult random_walk(int steps, int samples, std::uint64_t seed,
                              int workers = 1) {
  return random_walk(default_walk_generators(), steps, samples, seed,
                     workers);
}

}  // namespace treelink
