#include <catch2/catch_amalgamated.hpp>

#include "treelink/enumeration.hpp"
#include "treelink/tree.hpp"
#include "treelink/tree_pair.hpp"

using namespace treelink;

namespace {

TreePair<3> example_x() {
  return {Tree<3>::parse("(.(...).)"), Tree<3>::parse("(..(...))")};
}

}  // namespace

TEST_CASE("parse and serialize round trip") {
  for (const char* code : {".", "(...)", "(.(...).)", "((...)..)",
                           "((...)(...)(...))", "(.(.(...).).)"}) {
    CHECK(Tree<3>::parse(code).str() == code);
  }
  for (const char* code : {".", "(..)", "((..).)", "((..)((..)(..)))"}) {
    CHECK(Tree<2>::parse(code).str() == code);
  }
}

TEST_CASE("parse ignores whitespace only") {
  CHECK(Tree<3>::parse(" ( . ( . . . ) . )\n").str() == "(.(...).)");
  CHECK(Tree<2>::parse("\t(. \r\n(..))").str() == "(.(..))");
}

TEST_CASE("parse errors carry byte offsets") {
  auto offset_of = [](auto fn) -> std::size_t {
    try {
      fn();
    } catch (const ParseError& e) {
      return e.offset();
    }
    FAIL("expected ParseError");
    return static_cast<std::size_t>(-1);
  };
  CHECK(offset_of([] { Tree<3>::parse(""); }) == 0);
  CHECK(offset_of([] { Tree<3>::parse("(.."); }) == 3);
  CHECK(offset_of([] { Tree<3>::parse("(..)"); }) == 3);
  CHECK(offset_of([] { Tree<3>::parse("(....)"); }) == 4);
  CHECK(offset_of([] { Tree<3>::parse(")"); }) == 0);
  CHECK(offset_of([] { Tree<3>::parse("(...)."); }) == 5);
  CHECK(offset_of([] { Tree<3>::parse("(.x.)"); }) == 2);
  CHECK(offset_of([] { Tree<3>::parse(" (...)(...)"); }) == 6);
  CHECK(offset_of([] { Tree<2>::parse("(...)"); }) == 3);
  CHECK(offset_of([] { Tree<3>::parse("((...)(...))"); }) == 11);
}

TEST_CASE("leaf and node counting") {
  Tree<3> t = Tree<3>::parse("(.(...).)");
  CHECK(t.leaf_count() == 5);
  CHECK(t.internal_count() == 2);
  CHECK(Tree<3>::leaf().leaf_count() == 1);
  CHECK(Tree<3>::leaf().internal_count() == 0);
  CHECK(Tree<2>::parse("((..).)").internal_count() == 2);
}

TEST_CASE("node and children") {
  Tree<3> t = Tree<3>::node(Tree<3>::leaf(), Tree<3>::parse("(...)"),
                            Tree<3>::leaf());
  CHECK(t.str() == "(.(...).)");
  auto kids = t.children();
  REQUIRE(kids.size() == 3);
  CHECK(kids[0].str() == ".");
  CHECK(kids[1].str() == "(...)");
  CHECK(kids[2].str() == ".");
  CHECK_THROWS_AS(Tree<3>::leaf().children(), std::logic_error);
}

TEST_CASE("graft replaces a leaf") {
  Tree<3> caret = Tree<3>::parse("(...)");
  CHECK(graft(caret, 2, caret).str() == "(.(...).)");
  CHECK(graft(caret, 1, caret).str() == "((...)..)");
  CHECK(graft(caret, 3, caret).str() == "(..(...))");
  CHECK_THROWS_AS(graft(caret, 0, caret), std::out_of_range);
  CHECK_THROWS_AS(graft(caret, 4, caret), std::out_of_range);
}

TEST_CASE("caret detection and collapse") {
  CHECK(Tree<3>::parse("(.(...).)").caret_leaves() ==
        std::vector<int>{2});
  CHECK(Tree<3>::parse("((...)(...)(...))").caret_leaves() ==
        std::vector<int>{1, 4, 7});
  CHECK(Tree<3>::parse("(...)").caret_leaves() == std::vector<int>{1});
  CHECK(Tree<3>::leaf().caret_leaves().empty());

  CHECK(Tree<3>::parse("(.(...).)").collapse_caret(2).str() == "(...)");
  CHECK(Tree<3>::parse("(...)").collapse_caret(1).str() == ".");
  CHECK_THROWS_AS(Tree<3>::parse("(.(...).)").collapse_caret(1),
                  std::invalid_argument);
}

TEST_CASE("common refinement and pieces") {
  Tree<3> a = Tree<3>::parse("(.(...).)");
  Tree<3> b = Tree<3>::parse("(..(...))");
  Tree<3> c = common_refinement(a, b);
  CHECK(c.str() == "(.(...)(...))");
  CHECK(c.refines(a));
  CHECK(c.refines(b));
  CHECK_FALSE(a.refines(b));
  CHECK(common_refinement(a, a) == a);

  auto pieces = c.pieces_over(a);
  REQUIRE(pieces.size() == 5);
  CHECK(pieces[4].str() == "(...)");
  CHECK(a.graft_all(pieces) == c);
  CHECK_THROWS_AS(a.pieces_over(b), std::invalid_argument);
}

TEST_CASE("common refinement is a least upper bound on random trees") {
  Rng rng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    int leaves = 1 + 2 * static_cast<int>(rng.below(std::uint64_t{7}));
    Tree<3> a = random_tree<3>(leaves, rng);
    Tree<3> b = random_tree<3>(leaves, rng);
    Tree<3> c = common_refinement(a, b);
    CHECK(c.refines(a));
    CHECK(c.refines(b));
    CHECK(common_refinement(b, a) == c);
    // a refinement of both that c refines too
    Tree<3> d = common_refinement(c, random_tree<3>(leaves, rng));
    CHECK(d.refines(c));
  }
}

TEST_CASE("pair construction checks leaf counts") {
  CHECK_THROWS_AS(TreePair<3>(Tree<3>::parse("(...)"), Tree<3>::leaf()),
                  std::invalid_argument);
  CHECK(TreePair<3>().is_identity());
}

TEST_CASE("reduce removes common carets leftmost first") {
  TreePair<3> x = example_x();
  CHECK(is_reduced(x));
  CHECK(reduce(x) == x);

  TreePair<3> inflated = inflate(x, 3);
  CHECK_FALSE(is_reduced(inflated));
  CHECK(common_caret_leaves(inflated) == std::vector<int>{3});
  CHECK(reduce(inflated) == x);

  TreePair<3> twice = inflate(inflate(x, 2), 5);
  CHECK(reduce(twice) == x);

  // grafting the same subtree anywhere reduces away
  TreePair<3> big = inflate(x, 4, Tree<3>::parse("(.(...).)"));
  CHECK(reduce(big) == x);
}

TEST_CASE("identity caret pair reduces to the leaf pair") {
  TreePair<3> e(Tree<3>::parse("(...)"), Tree<3>::parse("(...)"));
  CHECK(reduce(e) == TreePair<3>());
}

TEST_CASE("multiplication satisfies the group laws") {
  TreePair<3> x = example_x();
  TreePair<3> e;
  CHECK(x * inverse(x) == e);
  CHECK(inverse(x) * x == e);
  CHECK(x * e == x);
  CHECK(e * x == x);
  CHECK(inverse(inverse(x)) == x);

  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    int leaves = 1 + 2 * static_cast<int>(rng.below(std::uint64_t{5}));
    TreePair<3> a = reduce(random_pair<3>(leaves, rng));
    TreePair<3> b = reduce(random_pair<3>(leaves, rng));
    TreePair<3> c = reduce(random_pair<3>(leaves, rng));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * inverse(a) == e);
    CHECK(inverse(a * b) == inverse(b) * inverse(a));
    CHECK(is_reduced(a * b));
  }
}

TEST_CASE("cancelling product leaves the common factor out") {
  // (T+, T) * (T, T-) = (T+, T-)
  Tree<3> tp = Tree<3>::parse("((...)..)");
  Tree<3> t = Tree<3>::parse("(.(...).)");
  Tree<3> tm = Tree<3>::parse("(..(...))");
  TreePair<3> a(tp, t), b(t, tm);
  CHECK(a * b == reduce(TreePair<3>(tp, tm)));
}

TEST_CASE("binary to ternary embedding on trees") {
  CHECK(iota(Tree<2>::leaf()).str() == ".");
  CHECK(iota(Tree<2>::parse("(..)")).str() == "(...)");
  CHECK(iota(Tree<2>::parse("((..).)")).str() == "((...)..)");
  CHECK(iota(Tree<2>::parse("(.(..))")).str() == "(..(...))");
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    int leaves = 1 + static_cast<int>(rng.below(std::uint64_t{10}));
    Tree<2> t = random_tree<2>(leaves, rng);
    CHECK(iota(t).leaf_count() == 2 * leaves - 1);
  }
}

TEST_CASE("embedding respects the group structure") {
  BinaryPair x0{Tree<2>::parse("((..).)"), Tree<2>::parse("(.(..))")};
  BinaryPair x1{Tree<2>::parse("(.((..).))"), Tree<2>::parse("(.(.(..)))")};
  CHECK(iota(x0) ==
        TreePair<3>(Tree<3>::parse("((...)..)"), Tree<3>::parse("(..(...))")));
  CHECK(reduce(iota(x0 * x1)) == reduce(iota(x0) * iota(x1)));
  CHECK(iota(inverse(x0)) == inverse(iota(x0)));
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    int leaves = 1 + static_cast<int>(rng.below(std::uint64_t{8}));
    BinaryPair a = reduce(random_pair<2>(leaves, rng));
    BinaryPair b = reduce(random_pair<2>(leaves, rng));
    CHECK(reduce(iota(a * b)) == reduce(iota(a) * iota(b)));
    CHECK(is_reduced(iota(a)));
  }
}

TEST_CASE("node table records parents, slots and leaves") {
  NodeTable<3> tab = node_table(Tree<3>::parse("(.(...).)"));
  REQUIRE(tab.nodes.size() == 7);
  CHECK(tab.root == 0);
  CHECK(tab.nodes[0].parent == -1);
  CHECK(tab.leaf_node == std::vector<int>{1, 3, 4, 5, 6});
  CHECK(tab.nodes[2].parent == 0);
  CHECK(tab.nodes[2].slot == 1);
  CHECK(tab.nodes[3].parent == 2);
  CHECK(tab.nodes[3].slot == 0);
  CHECK(tab.nodes[6].slot == 2);
  CHECK(tab.nodes[0].child[0] == 1);
  CHECK(tab.nodes[0].child[1] == 2);
  CHECK(tab.nodes[0].child[2] == 6);
}
