#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "treelink/census.hpp"
#include "treelink/link_diagram.hpp"
#include "treelink/pl_map.hpp"
#include "treelink/tangles.hpp"
#include "treelink/tree_pair.hpp"

namespace treelink {

using Json = nlohmann::json;

inline Json bigint_to_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(UINT64_MAX))
    return v.convert_to<std::uint64_t>();
  return v.str();
}

template <int Arity>
Json pair_to_json(const TreePair<Arity>& g) {
  return Json{{"arity", Arity},
              {"plus", g.plus().str()},
              {"minus", g.minus().str()}};
}

template <int Arity>
TreePair<Arity> pair_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("plus") || !j.contains("minus"))
    throw std::invalid_argument(
        "pair JSON needs \"plus\" and \"minus\" fields");
  if (j.contains("arity") && j.at("arity").get<int>() != Arity)
    throw std::invalid_argument("expected arity " + std::to_string(Arity) +
                                ", got " +
                                std::to_string(j.at("arity").get<int>()));
  return TreePair<Arity>(
      Tree<Arity>::parse(j.at("plus").get<std::string>()),
      Tree<Arity>::parse(j.at("minus").get<std::string>()));
}

using AnyPair = std::variant<TreePair<2>, TreePair<3>>;

inline AnyPair any_pair_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("arity"))
    throw std::invalid_argument("pair JSON needs an \"arity\" field");
  int arity = j.at("arity").get<int>();
  if (arity == 2) return pair_from_json<2>(j);
  if (arity == 3) return pair_from_json<3>(j);
  throw std::invalid_argument("arity must be 2 or 3, got " +
                              std::to_string(arity));
}

inline Json matching_to_json(const TangledMatching& m) {
  Json out = Json::array();
  for (auto [a, b] : m.pairs()) out.push_back(Json::array({a, b}));
  return out;
}

inline TangledMatching matching_from_json(const Json& j) {
  if (!j.is_array())
    throw std::invalid_argument("matching JSON must be a list of pairs");
  std::vector<std::pair<int, int>> pairs;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("matching entries must be pairs");
    pairs.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return TangledMatching::from_pairs(pairs);
}

inline Json cycles_to_json(const std::vector<std::vector<int>>& cycles) {
  Json out = Json::array();
  for (const auto& c : cycles) out.push_back(c);
  return out;
}

inline std::string cycles_text(const std::vector<std::vector<int>>& cycles) {
  std::string out;
  for (const auto& c : cycles) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(c[i]);
    }
    out += ')';
  }
  return out;
}

inline std::string pairs_text(const TangledMatching& m) {
  std::vector<std::vector<int>> cycles;
  for (auto [a, b] : m.pairs()) cycles.push_back({a, b});
  return cycles_text(cycles);
}

inline Json thompson_to_json(const ThompsonData& td) {
  return Json{{"plus", matching_to_json(td.plus)},
              {"minus", matching_to_json(td.minus)},
              {"composition", cycles_to_json(td.composition.cycles())},
              {"traversal", cycles_to_json(td.traversal)},
              {"component_count", td.component_count}};
}

// Coordinate with denominator base^e, emitted as [numerator, e].
inline Json rational_to_json(const Rational& q, int base) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  int e = 0;
  while (den % base == 0) {
    den /= base;
    ++e;
  }
  if (den != 1)
    throw std::domain_error("denominator of " + q.str() +
                            " is not a power of " + std::to_string(base));
  return Json::array({bigint_to_json(num), e});
}

// Breakpoint list of a PL map: [[[xnum,xe],[ynum,ye]], ...] where each
// coordinate equals num / base^e.
inline Json plmap_to_json(const PLMap& f, int base) {
  Json out = Json::array();
  for (const auto& [x, y] : f.points())
    out.push_back(
        Json::array({rational_to_json(x, base), rational_to_json(y, base)}));
  return out;
}

inline std::string plmap_text(const PLMap& f) {
  std::string out;
  for (const auto& [x, y] : f.points()) {
    if (!out.empty()) out += ' ';
    out += "(" + x.str() + "," + y.str() + ")";
  }
  return out;
}

inline Json pd_to_json(const PDCode& pd) {
  Json out = Json::array();
  for (const auto& t : pd.tuples)
    out.push_back(Json::array({t[0], t[1], t[2], t[3]}));
  return out;
}

inline Json gauss_to_json(const GaussCode& gc) {
  Json out = Json::array();
  for (const auto& comp : gc.components) {
    Json line = Json::array();
    for (const auto& tok : comp)
      line.push_back((tok.over ? "O" : "U") + std::to_string(tok.crossing));
    out.push_back(std::move(line));
  }
  return out;
}

inline Json census_to_json(const std::vector<CensusRecord>& recs) {
  Json out = Json::array();
  for (const CensusRecord& r : recs) {
    Json components = Json::array();
    for (std::size_t k = 1; k < r.histogram.size(); ++k)
      components.push_back(r.histogram[k]);
    out.push_back(Json{{"n", r.n},
                       {"tree_count", bigint_to_json(r.tree_count)},
                       {"pair_count", bigint_to_json(r.pair_count)},
                       {"components", std::move(components)},
                       {"distinct_compositions", r.distinct_compositions},
                       {"distinct_traversals", r.distinct_traversals}});
  }
  return out;
}

inline std::string census_csv(const std::vector<CensusRecord>& recs) {
  std::size_t maxk = 0;
  for (const CensusRecord& r : recs)
    maxk = std::max(maxk, r.histogram.size() - 1);
  std::string out = "n,tree_count,pair_count";
  for (std::size_t k = 1; k <= maxk; ++k)
    out += ",components_" + std::to_string(k);
  out += ",distinct_compositions,distinct_traversals\n";
  for (const CensusRecord& r : recs) {
    out += std::to_string(r.n) + "," + r.tree_count.str() + "," +
           r.pair_count.str();
    for (std::size_t k = 1; k <= maxk; ++k)
      out += "," + std::to_string(k < r.histogram.size() ? r.histogram[k]
                                                         : 0);
    out += "," + std::to_string(r.distinct_compositions) + "," +
           std::to_string(r.distinct_traversals) + "\n";
  }
  return out;
}

inline Json characterization_to_json(const CharacterizationReport& rep) {
  Json survivors = Json::array();
  for (int mask = 0; mask < 16; ++mask) {
    Json props = Json::array();
    for (int k = 0; k < 4; ++k)
      if (mask & (1 << k)) props.push_back(k + 2);
    survivors.push_back(
        Json{{"properties", std::move(props)}, {"count", rep.survivors[mask]}});
  }
  Json extra = Json::array();
  for (const auto& succ : rep.extra) extra.push_back(succ);
  Json failures = Json::array();
  for (const auto& [succ, clause] : rep.image_failures)
    failures.push_back(Json{{"matching", succ}, {"clause", clause}});
  return Json{{"n", rep.n},
              {"involutions", rep.involution_count},
              {"survivors", std::move(survivors)},
              {"image_size", rep.image_size},
              {"holds", rep.holds},
              {"extra", std::move(extra)},
              {"image_failures", std::move(failures)}};
}

inline Json walk_to_json(const WalkResult& w) {
  Json hist = Json::array();
  for (const auto& [k, v] : w.histogram) hist.push_back(Json::array({k, v}));
  return Json{{"steps", w.steps},
              {"samples", w.samples},
              {"seed", w.seed},
              {"histogram", std::move(hist)}};
}

}  // namespace treelink
