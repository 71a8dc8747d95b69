// End-to-end acceptance checks.  Each criterion prints one PASS/FAIL line
// with its runtime and budget.  Two stated criteria are mathematically
// false (their comments explain why) and are reported as FAIL together
// with the measured law that refutes them; such a failure is counted as
// expected when its message matches the documented refutation exactly.
// The exit status is the number of unexpected failures, so the suite
// gates regressions while still reporting the impossible claims honestly.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treelink/treelink.hpp"

using namespace treelink;

namespace {

using Clock = std::chrono::steady_clock;

struct Harness {
  int index = 0;
  int failures = 0;
  int expected_failures = 0;

  // A criterion may declare the one failure message, by substring, that the
  // mathematics forces; only that exact outcome is tolerated.
  void run(const char* label, double budget_ms,
           const std::function<void(std::string&)>& body,
           const char* forced_failure = nullptr) {
    ++index;
    std::string fail;
    auto t0 = Clock::now();
    try {
      body(fail);
    } catch (const std::exception& e) {
      if (fail.empty()) fail = std::string("exception: ") + e.what();
    }
    double ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (fail.empty() && ms > budget_ms)
      fail = "over budget";
    bool pass = fail.empty();
    bool expected = !pass && forced_failure != nullptr &&
                    fail.find(forced_failure) != std::string::npos;
    if (!pass) ++failures;
    if (expected) ++expected_failures;
    std::printf("%s %2d  %-58s %10.2f ms (budget %g ms)\n",
                pass ? "PASS" : "FAIL", index, label, ms, budget_ms);
    if (!pass)
      std::printf("        %s%s\n", fail.c_str(),
                  expected ? " [documented impossibility]" : "");
  }
};

#define EXPECT(cond)                                             \
  do {                                                           \
    if (fail.empty() && !(cond)) fail = "failed: " #cond;        \
  } while (0)

TreePair<3> example_x() {
  return {Tree<3>::parse("(.(...).)"), Tree<3>::parse("(..(...))")};
}

using PairList = std::vector<std::pair<int, int>>;

}  // namespace

int main() {
  Harness h;

  h.run("two-caret example: matchings, composition, traversal", 1.0,
        [&](std::string& fail) {
          thompson_permutation(example_x());  // warm up allocators
          ThompsonData td = thompson_permutation(example_x());
          EXPECT(td.plus.pairs() == (PairList{{0, 3}, {1, 5}, {2, 4}}));
          EXPECT(td.minus.pairs() == (PairList{{0, 2}, {1, 4}, {3, 5}}));
          EXPECT(td.composition.map() ==
                 (std::vector<int>{4, 2, 3, 1, 5, 0}));
          EXPECT(td.traversal ==
                 (std::vector<std::vector<int>>{{1, 4, 2, 0, 3, 5}}));
          EXPECT(td.component_count == 1);
        });

  h.run("figure-eight pair: list roundtrip and 20-point orbit", 10.0,
        [&](std::string& fail) {
          TangledMatching plus = TangledMatching::from_pairs(
              {{1, 3}, {2, 8}, {4, 12}, {5, 7}, {6, 9},
               {10, 18}, {11, 14}, {13, 15}, {16, 0}, {17, 19}});
          TangledMatching minus = TangledMatching::from_pairs(
              {{1, 4}, {2, 0}, {3, 6}, {5, 8}, {7, 18},
               {9, 11}, {10, 14}, {12, 19}, {13, 16}, {15, 17}});
          Tree<3> tp = matching_to_tree(plus);
          Tree<3> tm = matching_to_tree(minus);
          EXPECT(tp.leaf_count() == 19);
          EXPECT(tangled_matching(tp) == plus);
          EXPECT(tangled_matching(tm) == minus);
          ThompsonData td = thompson_permutation(plus, minus);
          EXPECT(td.traversal ==
                 (std::vector<std::vector<int>>{
                     {1, 4, 12, 19, 17, 15, 13, 16, 0, 2,
                      8, 5, 7, 18, 10, 14, 11, 9, 6, 3}}));
          EXPECT(td.component_count == 1);
        });

  h.run("strand tracing equals orbit count, exhaustive + random", 30000.0,
        [&](std::string& fail) {
          std::uint64_t pairs = 0;
          for (int n = 1; n <= 4 && fail.empty(); ++n) {
            std::vector<Tree<3>> trees = enumerate_trees<3>(2 * n + 1);
            for (const Tree<3>& plus : trees) {
              for (const Tree<3>& minus : trees) {
                TreePair<3> g(plus, minus);
                ++pairs;
                if (trace_components(build_diagram(g)).component_count !=
                    component_count(g)) {
                  fail = "mismatch at (" + plus.str() + ", " + minus.str() +
                         ")";
                  break;
                }
              }
              if (!fail.empty()) break;
            }
          }
          EXPECT(pairs == 3179);
          Rng rng(20260815);
          for (int trial = 0; trial < 10000 && fail.empty(); ++trial) {
            int leaves = 1 + 2 * static_cast<int>(rng.below(std::uint64_t{11}));
            TreePair<3> g = random_pair<3>(leaves, rng);
            if (trace_components(build_diagram(g)).component_count !=
                component_count(g))
              fail = "random mismatch at (" + g.plus().str() + ", " +
                     g.minus().str() + ")";
          }
        });

  h.run("matching construction is a bijection, trees <= 13 leaves", 5000.0,
        [&](std::string& fail) {
          std::set<std::vector<int>> image;
          std::uint64_t total = 0;
          for (int leaves = 1; leaves <= 13 && fail.empty(); leaves += 2) {
            for (const Tree<3>& t : enumerate_trees<3>(leaves)) {
              TangledMatching m = tangled_matching(t);
              ++total;
              if (!validate_tangled(m).empty()) {
                fail = "matching of " + t.str() + " fails validation";
                break;
              }
              if (matching_to_tree(m) != t) {
                fail = "roundtrip broke at " + t.str();
                break;
              }
              image.insert(m.succ());
            }
          }
          EXPECT(total == 1773);
          EXPECT(image.size() == total);
        });

  h.run("chord conditions characterize tree matchings, n <= 5", 10000.0,
        [&](std::string& fail) {
          // The expected survivor sizes are not attainable at n = 5: twelve
          // involutions satisfy all four chord conditions yet arise from no
          // tree (smallest one, as chords: (0,2)(1,3)(4,9)(5,8)(6,11)(7,10);
          // after collapsing its only caret chord (1,3) the rest has no
          // caret chord left, so no collapse order can reach the base case).
          // Every tree matching does satisfy all four conditions, and for
          // n <= 4 the survivor set equals the tree image exactly.  The
          // report flags the failing size rather than aborting.
          std::vector<std::uint64_t> involutions = {3, 15, 105, 945, 10395};
          std::vector<std::uint64_t> trees = {1, 3, 12, 55, 273};
          for (int n = 1; n <= 5 && fail.empty(); ++n) {
            CharacterizationReport rep = verify_characterization(n);
            EXPECT(rep.involution_count == involutions[n - 1]);
            EXPECT(rep.image_size == trees[n - 1]);
            EXPECT(rep.image_failures.empty());
            if (fail.empty() && rep.survivors[15] != trees[n - 1])
              fail = "n=" + std::to_string(n) + ": " +
                     std::to_string(rep.survivors[15]) +
                     " involutions pass all four chord conditions but only " +
                     std::to_string(rep.image_size) +
                     " arise from trees (" + std::to_string(rep.extra.size()) +
                     " impostors); conditions are complete for n <= 4 only";
          }
        },
        "285 involutions pass all four chord conditions but only 273 arise "
        "from trees (12 impostors); conditions are complete for n <= 4 only");

  h.run("crossing count equals caret count, trees <= 13 leaves", 5000.0,
        [&](std::string& fail) {
          for (int leaves = 1; leaves <= 13 && fail.empty(); leaves += 2) {
            for (const Tree<3>& t : enumerate_trees<3>(leaves)) {
              if (crossing_count(tangled_matching(t)) != t.internal_count()) {
                fail = "crossing law broke at " + t.str();
                break;
              }
            }
          }
        });

  h.run("composition always has twice as many cycles as orbits", 30000.0,
        [&](std::string& fail) {
          for (int n = 1; n <= 4 && fail.empty(); ++n) {
            std::vector<Tree<3>> trees = enumerate_trees<3>(2 * n + 1);
            for (const Tree<3>& plus : trees) {
              for (const Tree<3>& minus : trees) {
                ThompsonData td =
                    thompson_permutation(TreePair<3>(plus, minus));
                if (td.composition.cycle_count() !=
                    2 * td.component_count) {
                  fail = "factor broke at (" + plus.str() + ", " +
                         minus.str() + ")";
                  break;
                }
              }
              if (!fail.empty()) break;
            }
          }
          Rng rng(11235813);
          for (int trial = 0; trial < 2000 && fail.empty(); ++trial) {
            int leaves = 1 + 2 * static_cast<int>(rng.below(std::uint64_t{11}));
            ThompsonData td =
                thompson_permutation(random_pair<3>(leaves, rng));
            EXPECT(td.composition.cycle_count() == 2 * td.component_count);
          }
        });

  h.run("group laws and the exact PL map functor, 1000 trials", 30000.0,
        [&](std::string& fail) {
          Rng rng(27182818);
          for (int trial = 0; trial < 1000 && fail.empty(); ++trial) {
            auto draw = [&] {
              int leaves =
                  1 + 2 * static_cast<int>(rng.below(std::uint64_t{11}));
              return random_pair<3>(leaves, rng);
            };
            TreePair<3> a = draw(), b = draw(), c = draw();
            EXPECT((a * b) * c == a * (b * c));
            EXPECT(a * inverse(a) == TreePair<3>());
            EXPECT(inverse(a) * a == TreePair<3>());
            EXPECT(pl_map(a * b) == compose(pl_map(a), pl_map(b)));
            EXPECT(pl_map(inverse(a)) == inverse(pl_map(a)));
          }
          EXPECT(pl_map(TreePair<3>()) == PLMap::identity());
        });

  h.run("binary embedding is an injective homomorphism, 1000 trials",
        10000.0, [&](std::string& fail) {
          EXPECT(iota(TreePair<2>()) == TreePair<3>());
          Rng rng(16180339);
          std::set<std::pair<std::string, std::string>> reduced, images;
          for (int trial = 0; trial < 1000 && fail.empty(); ++trial) {
            int leaves = 1 + static_cast<int>(rng.below(std::uint64_t{12}));
            TreePair<2> a = random_pair<2>(leaves, rng);
            TreePair<2> b = random_pair<2>(leaves, rng);
            EXPECT(iota(a * b) == iota(a) * iota(b));
            TreePair<2> r = reduce(a);
            TreePair<3> e = iota(r);
            EXPECT(e.leaf_count() == 2 * r.leaf_count() - 1);
            EXPECT(is_reduced(e));
            reduced.emplace(r.plus().str(), r.minus().str());
            images.emplace(e.plus().str(), e.minus().str());
          }
          EXPECT(reduced.size() == images.size());
        });

  h.run("enumeration counts and unranking order, n <= 6", 5000.0,
        [&](std::string& fail) {
          std::vector<std::uint64_t> ternary = {1, 1, 3, 12, 55, 273, 1428};
          for (int n = 0; n <= 6 && fail.empty(); ++n) {
            std::vector<Tree<3>> all = enumerate_trees<3>(2 * n + 1);
            EXPECT(BigInt(all.size()) == tree_count<3>(n));
            EXPECT(all.size() == ternary[n]);
            if (n <= 4) {
              for (std::size_t r = 0; r < all.size(); ++r)
                EXPECT(unrank_tree<3>(2 * n + 1, BigInt(r)) == all[r]);
            }
          }
          std::vector<std::uint64_t> binary = {1, 1, 2, 5, 14, 42, 132};
          for (int n = 0; n <= 6 && fail.empty(); ++n)
            EXPECT(enumerate_trees<2>(n + 1).size() == binary[n]);
        });

  h.run("component count survives inflation and inversion, 1000 trials",
        30000.0, [&](std::string& fail) {
          // The inflation half of this criterion is not attainable: grafting
          // the same caret at the same leaf of both trees splits off one
          // extra closed curve, so the count rises by exactly one.  Witness:
          // a diagonal pair (T, T) with k carets has composition id on
          // 2k + 2 points, hence k + 1 components, yet reduces to the
          // one-component trivial pair.  We run the stated check anyway and
          // report the measured law honestly.
          Rng rng(31415926);
          int unchanged = 0, plus_one = 0, other = 0;
          for (int trial = 0; trial < 1000 && fail.empty(); ++trial) {
            int leaves = 1 + 2 * static_cast<int>(rng.below(std::uint64_t{8}));
            TreePair<3> g = random_pair<3>(leaves, rng);
            int c = component_count(g);
            int leaf = 1 + static_cast<int>(
                               rng.below(static_cast<std::uint64_t>(leaves)));
            int delta = component_count(inflate(g, leaf)) - c;
            if (delta == 0)
              ++unchanged;
            else if (delta == 1)
              ++plus_one;
            else
              ++other;
            EXPECT(component_count(inverse(g)) == c);
          }
          if (fail.empty() && unchanged != 1000)
            fail = "inflation changed the count in " +
                   std::to_string(1000 - unchanged) + "/1000 trials (delta " +
                   "+1 in " + std::to_string(plus_one) + ", other in " +
                   std::to_string(other) + "): each common caret adds one " +
                   "split component, so invariance cannot hold";
        },
        "inflation changed the count in 1000/1000 trials (delta +1 in 1000, "
        "other in 0): each common caret adds one split component, so "
        "invariance cannot hold");

  h.run("census and random walk are deterministic across workers", 60000.0,
        [&](std::string& fail) {
          CensusRecord two = census(2);
          EXPECT(two.histogram == (std::vector<std::uint64_t>{0, 6, 0, 3}));
          EXPECT(two.distinct_compositions == 7);
          EXPECT(two.distinct_traversals == 9);

          CensusRecord three = census(3);
          for (int workers : {2, 4}) {
            CensusRecord again = census(3, workers);
            EXPECT(again.histogram == three.histogram);
            EXPECT(again.distinct_compositions ==
                   three.distinct_compositions);
            EXPECT(again.distinct_traversals == three.distinct_traversals);
          }

          WalkResult walk = random_walk(16, 200, 11);
          EXPECT(random_walk(16, 200, 11).histogram == walk.histogram);
          EXPECT(random_walk(16, 200, 11, 3).histogram == walk.histogram);
          std::uint64_t total = 0;
          for (const auto& [k, v] : walk.histogram) total += v;
          EXPECT(total == 200);
        });

  int unexpected = h.failures - h.expected_failures;
  std::printf("%d of %d criteria failed", h.failures, h.index);
  if (h.expected_failures > 0)
    std::printf(" (%d documented impossibilit%s, %d unexpected)",
                h.expected_failures, h.expected_failures == 1 ? "y" : "ies",
                unexpected);
  std::printf("\n");
  return unexpected;
}
