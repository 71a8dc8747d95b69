// Command line front end.  Results go to stdout, diagnostics to stderr.
// Exit codes: 0 success, 1 domain or input data error, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "treelink/treelink.hpp"

namespace {

using namespace treelink;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Complete files only: write to a temporary name, then rename into place.
void write_file(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write to " + tmp + " failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Shared pair input: either --in (JSON, arity field decides) or --plus and
// --minus tree codes with --arity.
struct PairInput {
  std::string plus, minus, in;
  int arity = 3;

  void attach(CLI::App* cmd) {
    cmd->add_option("--plus", plus, "plus (range) tree code");
    cmd->add_option("--minus", minus, "minus (domain) tree code");
    cmd->add_option("--arity", arity, "tree arity (2 or 3)")
        ->check(CLI::Range(2, 3));
    cmd->add_option("--in", in, "pair JSON file, or - for stdin");
  }

  AnyPair load() const {
    if (!in.empty()) return any_pair_from_json(Json::parse(read_input(in)));
    if (plus.empty() || minus.empty())
      throw CLI::ValidationError(
          "pair input requires --in or both --plus and --minus");
    if (arity == 2)
      return TreePair<2>(Tree<2>::parse(plus), Tree<2>::parse(minus));
    return TreePair<3>(Tree<3>::parse(plus), Tree<3>::parse(minus));
  }

  TreePair<3> load_ternary() const {
    AnyPair p = load();
    if (auto* t = std::get_if<TreePair<3>>(&p)) return *t;
    throw CLI::ValidationError("this command requires ternary trees");
  }

  TreePair<2> load_binary() const {
    AnyPair p = load();
    if (auto* t = std::get_if<TreePair<2>>(&p)) return *t;
    throw CLI::ValidationError("this command requires binary trees");
  }
};

struct PrefixedPairInput {
  std::string file;
  PairInput inline_input;

  void attach(CLI::App* cmd, const std::string& name) {
    cmd->add_option("--" + name, file,
                    "pair JSON file for operand " + name + ", - for stdin");
    cmd->add_option("--" + name + "-plus", inline_input.plus,
                    "plus tree of operand " + name);
    cmd->add_option("--" + name + "-minus", inline_input.minus,
                    "minus tree of operand " + name);
  }

  AnyPair load(int arity) const {
    if (!file.empty())
      return any_pair_from_json(Json::parse(read_input(file)));
    PairInput pi = inline_input;
    pi.arity = arity;
    return pi.load();
  }
};

int run(int argc, char** argv) {
  CLI::App app{
      "tree pair arithmetic, tangled matchings and the links they close up "
      "into"};
  app.require_subcommand(1);

  // normalize
  auto* norm_cmd = app.add_subcommand(
      "normalize", "reduce a pair to its canonical representative");
  static PairInput norm_in;
  static bool norm_text = false;
  norm_in.attach(norm_cmd);
  norm_cmd->add_flag("--text", norm_text, "print the two tree codes as text");
  norm_cmd->callback([] {
    AnyPair p = norm_in.load();
    std::visit(
        [&](auto& g) {
          auto r = reduce(g);
          if (norm_text)
            std::cout << r.plus().str() << "\n" << r.minus().str() << "\n";
          else
            std::cout << dump(pair_to_json(r));
        },
        p);
  });

  // perm
  auto* perm_cmd = app.add_subcommand(
      "perm", "matchings, composition and traversal of a ternary pair");
  static PairInput perm_in;
  static bool perm_json = false;
  perm_in.attach(perm_cmd);
  perm_cmd->add_flag("--json", perm_json, "structured output");
  perm_cmd->callback([] {
    ThompsonData td = thompson_permutation(perm_in.load_ternary());
    if (perm_json) {
      std::cout << dump(thompson_to_json(td));
      return;
    }
    std::cout << "plus:        " << pairs_text(td.plus) << "\n";
    std::cout << "minus:       " << pairs_text(td.minus) << "\n";
    std::cout << "composition: " << cycles_text(td.composition.cycles())
              << "\n";
    std::cout << "traversal:   " << cycles_text(td.traversal) << "\n";
    std::cout << "components:  " << td.component_count << "\n";
  });

  // components
  auto* comp_cmd =
      app.add_subcommand("components", "number of link components of a pair");
  static PairInput comp_in;
  comp_in.attach(comp_cmd);
  comp_cmd->callback([] {
    std::cout << component_count(comp_in.load_ternary()) << "\n";
  });

  // pdcode
  auto* pd_cmd = app.add_subcommand("pdcode", "planar diagram code");
  static PairInput pd_in;
  static std::string pd_convention = "standard";
  static bool pd_json = false;
  pd_in.attach(pd_cmd);
  pd_cmd->add_option("--convention", pd_convention,
                     "crossing convention: standard or positive");
  pd_cmd->add_flag("--json", pd_json, "structured output");
  pd_cmd->callback([] {
    LinkDiagram d = build_diagram(pd_in.load_ternary(),
                                  convention_from_string(pd_convention));
    PDCode pd = pd_code(d);
    if (pd_json)
      std::cout << dump(pd_to_json(pd));
    else
      std::cout << pd.text();
  });

  // gauss
  auto* gauss_cmd =
      app.add_subcommand("gauss", "Gauss code, one line per component");
  static PairInput gauss_in;
  static std::string gauss_convention = "standard";
  static bool gauss_json = false;
  gauss_in.attach(gauss_cmd);
  gauss_cmd->add_option("--convention", gauss_convention,
                        "crossing convention: standard or positive");
  gauss_cmd->add_flag("--json", gauss_json, "structured output");
  gauss_cmd->callback([] {
    LinkDiagram d = build_diagram(gauss_in.load_ternary(),
                                  convention_from_string(gauss_convention));
    GaussCode gc = gauss_code(d);
    if (gauss_json)
      std::cout << dump(gauss_to_json(gc));
    else
      std::cout << gc.text();
  });

  // render
  auto* render_cmd = app.add_subcommand("render", "draw the link diagram");
  static PairInput render_in;
  static std::string render_format = "svg";
  static std::string render_convention = "standard";
  static std::string render_out;
  static RenderOptions render_opts;
  static bool render_no_labels = false;
  render_in.attach(render_cmd);
  render_cmd->add_option("--format", render_format, "svg or tikz");
  render_cmd->add_option("--convention", render_convention,
                         "crossing convention: standard or positive");
  render_cmd->add_option("--out", render_out, "output file (default stdout)");
  render_cmd->add_option("--scale", render_opts.scale, "size multiplier");
  render_cmd->add_option("--gap", render_opts.gap,
                         "undercrossing gap, axis units");
  render_cmd->add_flag("--no-labels", render_no_labels,
                       "omit axis mark numbers");
  render_cmd->callback([] {
    RenderOptions opts = render_opts;
    opts.labels = !render_no_labels;
    LinkDiagram d = build_diagram(render_in.load_ternary(),
                                  convention_from_string(render_convention));
    emit(render(d, render_format, opts), render_out);
  });

  // census
  auto* census_cmd = app.add_subcommand(
      "census", "exhaustive statistics over all pairs with 1..n carets");
  static int census_n = 0;
  static int census_workers = 1;
  static int census_bound = 5;
  static std::string census_csv_path, census_json_path;
  static bool census_json_stdout = false;
  static bool census_quiet = false;
  census_cmd->add_option("--n", census_n, "largest caret count")->required();
  census_cmd->add_option("--workers", census_workers, "worker threads");
  census_cmd->add_option("--bound", census_bound,
                         "refuse census above this caret count");
  census_cmd->add_option("--csv", census_csv_path, "also write CSV here");
  census_cmd->add_option("--json", census_json_path, "also write JSON here");
  census_cmd->add_flag("--json-stdout", census_json_stdout,
                       "print JSON instead of CSV");
  census_cmd->add_flag("--quiet", census_quiet, "no stdout report");
  census_cmd->callback([] {
    std::vector<CensusRecord> recs;
    for (int k = 1; k <= census_n; ++k)
      recs.push_back(census(k, census_workers, census_bound));
    std::string csv = census_csv(recs);
    std::string json = dump(census_to_json(recs));
    if (!census_csv_path.empty()) write_file(census_csv_path, csv);
    if (!census_json_path.empty()) write_file(census_json_path, json);
    if (!census_quiet) std::cout << (census_json_stdout ? json : csv);
  });

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "check the matching characterization exhaustively");
  static int verify_n = 5;
  static int verify_bound = 5;
  static bool verify_json = false;
  verify_cmd->add_option("--n", verify_n, "largest caret count");
  verify_cmd->add_option("--bound", verify_bound,
                         "refuse sizes above this caret count");
  verify_cmd->add_flag("--json", verify_json, "structured output");
  verify_cmd->callback([] {
    bool all_hold = true;
    Json out = Json::array();
    for (int k = 1; k <= verify_n; ++k) {
      CharacterizationReport rep = verify_characterization(k, verify_bound);
      all_hold = all_hold && rep.holds;
      if (verify_json) {
        out.push_back(characterization_to_json(rep));
      } else {
        std::cout << "n=" << rep.n << " involutions=" << rep.involution_count
                  << " survivors=" << rep.survivors[15]
                  << " tree_matchings=" << rep.image_size
                  << " holds=" << (rep.holds ? "yes" : "no") << "\n";
        for (const auto& succ : rep.extra) {
          std::cout << "  extra survivor:";
          for (int v : succ) std::cout << ' ' << v;
          std::cout << "\n";
        }
        for (const auto& [succ, clause] : rep.image_failures) {
          std::cout << "  tree matching failing clause " << clause << ":";
          for (int v : succ) std::cout << ' ' << v;
          std::cout << "\n";
        }
      }
    }
    if (verify_json) std::cout << dump(out);
    if (!all_hold) throw std::runtime_error("characterization check failed");
  });

  // walk
  auto* walk_cmd = app.add_subcommand(
      "walk", "random products of the embedded binary generators");
  static int walk_steps = 32;
  static int walk_samples = 100;
  static std::uint64_t walk_seed = 1;
  static int walk_workers = 1;
  static bool walk_json = false;
  walk_cmd->add_option("--steps", walk_steps, "generators per sample");
  walk_cmd->add_option("--samples", walk_samples, "number of samples");
  walk_cmd->add_option("--seed", walk_seed, "random seed");
  walk_cmd->add_option("--workers", walk_workers, "worker threads");
  walk_cmd->add_flag("--json", walk_json, "structured output");
  walk_cmd->callback([] {
    WalkResult w = random_walk(walk_steps, walk_samples, walk_seed,
                               walk_workers);
    if (walk_json) {
      std::cout << dump(walk_to_json(w));
      return;
    }
    std::cout << "steps=" << w.steps << " samples=" << w.samples
              << " seed=" << w.seed << "\n";
    for (const auto& [k, v] : w.histogram)
      std::cout << k << " " << v << "\n";
  });

  // multiply
  auto* mul_cmd =
      app.add_subcommand("multiply", "reduced product of two pairs");
  static PrefixedPairInput mul_a, mul_b;
  static int mul_arity = 3;
  mul_a.attach(mul_cmd, "a");
  mul_b.attach(mul_cmd, "b");
  mul_cmd->add_option("--arity", mul_arity, "tree arity for inline operands")
      ->check(CLI::Range(2, 3));
  mul_cmd->callback([] {
    AnyPair a = mul_a.load(mul_arity);
    AnyPair b = mul_b.load(mul_arity);
    if (a.index() != b.index())
      throw std::invalid_argument("operands have different arities");
    if (auto* a3 = std::get_if<TreePair<3>>(&a))
      std::cout << dump(pair_to_json(*a3 * std::get<TreePair<3>>(b)));
    else
      std::cout << dump(
          pair_to_json(std::get<TreePair<2>>(a) * std::get<TreePair<2>>(b)));
  });

  // inverse
  auto* inv_cmd = app.add_subcommand("inverse", "swap range and domain");
  static PairInput inv_in;
  inv_in.attach(inv_cmd);
  inv_cmd->callback([] {
    AnyPair p = inv_in.load();
    std::visit([](auto& g) { std::cout << dump(pair_to_json(inverse(g))); },
               p);
  });

  // iota
  auto* iota_cmd = app.add_subcommand(
      "iota", "embed a binary pair as a ternary pair");
  static PairInput iota_in;
  iota_in.attach(iota_cmd);
  iota_cmd->callback([] {
    PairInput pi = iota_in;
    if (pi.in.empty()) pi.arity = 2;
    std::cout << dump(pair_to_json(iota(pi.load_binary())));
  });

  // plmap
  auto* pl_cmd = app.add_subcommand(
      "plmap", "piecewise linear map of a pair, exact breakpoints");
  static PairInput pl_in;
  static bool pl_text = false;
  pl_in.attach(pl_cmd);
  pl_cmd->add_flag("--text", pl_text, "fractions instead of JSON");
  pl_cmd->callback([] {
    AnyPair p = pl_in.load();
    if (auto* t3 = std::get_if<TreePair<3>>(&p)) {
      PLMap f = pl_map(*t3);
      std::cout << (pl_text ? plmap_text(f) + "\n"
                            : dump(plmap_to_json(f, 3)));
    } else {
      PLMap f = pl_map(std::get<TreePair<2>>(p));
      std::cout << (pl_text ? plmap_text(f) + "\n"
                            : dump(plmap_to_json(f, 2)));
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
