#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "treelink/tree.hpp"
#include "treelink/tree_pair.hpp"

namespace treelink {

using BigInt = boost::multiprecision::cpp_int;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seeded generator with unbiased bounded sampling.  Streams derived from
// (seed, stream) pairs are independent, which keeps parallel sampling
// deterministic regardless of the worker count.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : eng_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

  std::uint64_t next() { return eng_(); }

  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("empty sampling range");
    std::uint64_t reject_below = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t x = next();
      if (x >= reject_below) return x % n;
    }
  }

  BigInt below(const BigInt& n) {
    if (n <= 0) throw std::invalid_argument("empty sampling range");
    if (n == 1) return 0;
    unsigned bits = boost::multiprecision::msb(n) + 1;
    unsigned words = (bits + 63) / 64;
    unsigned top_bits = bits - 64 * (words - 1);
    std::uint64_t top_mask =
        top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1);
    for (;;) {
      BigInt x = 0;
      for (unsigned w = 0; w < words; ++w) {
        std::uint64_t word = next();
        if (w == 0) word &= top_mask;
        x = (x << 64) | word;
      }
      if (x < n) return x;
    }
  }

private:
  std::mt19937_64 eng_;
};

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Number of Arity-ary trees with the given number of internal nodes:
// binom(Arity*n, n) / ((Arity-1)*n + 1).
template <int Arity>
BigInt tree_count(int internal) {
  if (internal < 0) return 0;
  return binomial(Arity * internal, internal) / ((Arity - 1) * internal + 1);
}

template <int Arity>
BigInt tree_count_by_leaves(int leaves) {
  if (leaves < 1 || (leaves - 1) % (Arity - 1) != 0) return 0;
  return tree_count<Arity>((leaves - 1) / (Arity - 1));
}

namespace detail {

// Cached tree and forest counts; a forest is an ordered sequence of trees.
template <int Arity>
class TreeCounter {
public:
  const BigInt& trees(int leaves) {
    auto it = t_.find(leaves);
    if (it != t_.end()) return it->second;
    return t_.emplace(leaves, tree_count_by_leaves<Arity>(leaves))
        .first->second;
  }

  const BigInt& forests(int k, int m) {
    auto key = std::make_pair(k, m);
    auto it = f_.find(key);
    if (it != f_.end()) return it->second;
    BigInt total = 0;
    if (k == 0) {
      total = m == 0 ? 1 : 0;
    } else {
      for (int l = 1; l <= m - (k - 1); l += Arity - 1)
        total += trees(l) * forests(k - 1, m - l);
    }
    return f_.emplace(key, std::move(total)).first->second;
  }

private:
  std::map<int, BigInt> t_;
  std::map<std::pair<int, int>, BigInt> f_;
};

template <int Arity>
Tree<Arity> unrank_tree_impl(int leaves, BigInt rank, TreeCounter<Arity>& tc);

// Rank order: first tree's leaf count ascending, then the first tree's own
// rank, then the rest of the forest recursively.
template <int Arity>
std::vector<Tree<Arity>> unrank_forest(int k, int m, BigInt rank,
                                       TreeCounter<Arity>& tc) {
  if (k == 0) return {};
  for (int l = 1; l <= m - (k - 1); l += Arity - 1) {
    BigInt rest = tc.forests(k - 1, m - l);
    BigInt block = tc.trees(l) * rest;
    if (rank < block) {
      std::vector<Tree<Arity>> out;
      out.push_back(unrank_tree_impl<Arity>(l, rank / rest, tc));
      std::vector<Tree<Arity>> tail =
          unrank_forest<Arity>(k - 1, m - l, rank % rest, tc);
      out.insert(out.end(), tail.begin(), tail.end());
      return out;
    }
    rank -= block;
  }
  throw std::out_of_range("forest rank out of range");
}

template <int Arity>
Tree<Arity> unrank_tree_impl(int leaves, BigInt rank, TreeCounter<Arity>& tc) {
  if (leaves == 1) {
    if (rank != 0) throw std::out_of_range("tree rank out of range");
    return Tree<Arity>::leaf();
  }
  return Tree<Arity>::node(unrank_forest<Arity>(Arity, leaves, rank, tc));
}

}  // namespace detail

template <int Arity>
Tree<Arity> unrank_tree(int leaves, const BigInt& rank) {
  if (tree_count_by_leaves<Arity>(leaves) == 0)
    throw std::invalid_argument("no trees with " + std::to_string(leaves) +
                                " leaves");
  detail::TreeCounter<Arity> tc;
  return detail::unrank_tree_impl<Arity>(leaves, rank, tc);
}

// All trees with the given leaf count, in unrank order: the first child's
// leaf count varies slowest, ranks of the children tie-break left to right.
template <int Arity>
std::vector<Tree<Arity>> enumerate_trees(int leaves) {
  if (tree_count_by_leaves<Arity>(leaves) == 0)
    throw std::invalid_argument("no trees with " + std::to_string(leaves) +
                                " leaves");
  std::map<int, std::vector<std::string>> memo;
  std::function<const std::vector<std::string>&(int)> trees;
  std::function<std::vector<std::string>(int, int)> forests =
      [&](int k, int m) -> std::vector<std::string> {
    if (k == 0)
      return m == 0 ? std::vector<std::string>{""}
                    : std::vector<std::string>{};
    std::vector<std::string> out;
    for (int l = 1; l <= m - (k - 1); l += Arity - 1) {
      const std::vector<std::string>& heads = trees(l);
      const std::vector<std::string> tails = forests(k - 1, m - l);
      for (const std::string& head : heads)
        for (const std::string& tail : tails) out.push_back(head + tail);
    }
    return out;
  };
  trees = [&](int l) -> const std::vector<std::string>& {
    auto it = memo.find(l);
    if (it != memo.end()) return it->second;
    std::vector<std::string> ts;
    if (l == 1) {
      ts.push_back(".");
    } else {
      for (const std::string& body : forests(Arity, l))
        ts.push_back("(" + body + ")");
    }
    return memo.emplace(l, std::move(ts)).first->second;
  };
  std::vector<Tree<Arity>> out;
  for (const std::string& code : trees(leaves))
    out.push_back(Tree<Arity>::parse(code));
  return out;
}

template <int Arity>
Tree<Arity> random_tree(int leaves, Rng& rng) {
  BigInt count = tree_count_by_leaves<Arity>(leaves);
  if (count == 0)
    throw std::invalid_argument("no trees with " + std::to_string(leaves) +
                                " leaves");
  return unrank_tree<Arity>(leaves, rng.below(count));
}

template <int Arity>
TreePair<Arity> random_pair(int leaves, Rng& rng) {
  Tree<Arity> plus = random_tree<Arity>(leaves, rng);
  Tree<Arity> minus = random_tree<Arity>(leaves, rng);
  return TreePair<Arity>(std::move(plus), std::move(minus));
}

// All fixed-point-free involutions on {0, ..., points-1}; there are
// (points-1)!! of them.  Pairs the smallest free point with every larger
// free point, so the visit order is deterministic.
inline void for_each_involution(
    int points, const std::function<void(const std::vector<int>&)>& fn) {
  if (points <= 0 || points % 2 != 0)
    throw std::invalid_argument("point count must be positive and even");
  std::vector<int> succ(points, -1);
  std::function<void()> rec = [&]() {
    int i = 0;
    while (i < points && succ[i] != -1) ++i;
    if (i == points) {
      fn(succ);
      return;
    }
    for (int j = i + 1; j < points; ++j) {
      if (succ[j] != -1) continue;
      succ[i] = j;
      succ[j] = i;
      rec();
      succ[i] = -1;
      succ[j] = -1;
    }
  };
  rec();
}

}  // namespace treelink
