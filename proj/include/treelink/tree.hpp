#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treelink {

// Parse failure carrying the byte offset of the offending position in the
// original input (offsets count every byte, including whitespace).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at byte " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

// Rooted planar tree of fixed branching arity. The representation is the
// preorder code: '(' opens an internal node followed by exactly Arity
// subtree codes, '.' is a leaf. The code is also the canonical text form,
// so serialize(parse(s)) strips whitespace and nothing else.
template <int Arity>
class Tree {
  static_assert(Arity == 2 || Arity == 3, "only binary and ternary trees");

public:
  Tree() : code_(1, '.') {}

  static Tree leaf() { return Tree(); }

  static Tree node(const std::vector<Tree>& children) {
    if (children.size() != static_cast<std::size_t>(Arity))
      throw std::invalid_argument("node requires exactly " +
                                  std::to_string(Arity) + " children");
    std::string code;
    code.reserve(2 + children.size() * 2);
    code.push_back('(');
    for (const Tree& c : children) code += c.code_;
    code.push_back(')');
    return Tree(std::move(code), raw_tag{});
  }

  static Tree node(const Tree& a, const Tree& b)
    requires(Arity == 2)
  {
    return node(std::vector<Tree>{a, b});
  }

  static Tree node(const Tree& a, const Tree& b, const Tree& c)
    requires(Arity == 3)
  {
    return node(std::vector<Tree>{a, b, c});
  }

  // Grammar: tree ::= "." | "(" tree{Arity} ")".  Whitespace between tokens
  // is ignored.  Throws ParseError with a byte offset on malformed input.
  static Tree parse(std::string_view text) {
    std::string code;
    code.reserve(text.size());
    // need = number of subtree codes still owed; open = unclosed '(' count.
    // A node is "saturated" once its Arity subtrees have been seen, at which
    // point the next token must be ')'.
    std::vector<int> pending;  // children still owed per open node
    bool done = false;         // a complete top-level tree has been read
    std::size_t i = 0;
    for (; i < text.size(); ++i) {
      char ch = text[i];
      if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
      if (done) throw ParseError("trailing input after complete tree", i);
      switch (ch) {
        case '.':
          if (!pending.empty() && pending.back() == 0)
            throw ParseError("expected ')'", i);
          code.push_back('.');
          if (pending.empty()) done = true;
          else --pending.back();
          break;
        case '(':
          if (!pending.empty() && pending.back() == 0)
            throw ParseError("expected ')'", i);
          code.push_back('(');
          pending.push_back(Arity);
          break;
        case ')':
          if (pending.empty())
            throw ParseError("unmatched ')'", i);
          if (pending.back() != 0)
            throw ParseError("node has too few subtrees", i);
          code.push_back(')');
          pending.pop_back();
          if (pending.empty()) {
            done = true;
          } else {
            --pending.back();
          }
          break;
        default:
          throw ParseError(std::string("unexpected character '") + ch + "'",
                           i);
      }
    }
    if (!done) throw ParseError("unexpected end of input", text.size());
    return Tree(std::move(code), raw_tag{});
  }

  const std::string& str() const noexcept { return code_; }
  bool is_leaf() const noexcept { return code_.size() == 1; }

  int leaf_count() const noexcept {
    int n = 0;
    for (char ch : code_)
      if (ch == '.') ++n;
    return n;
  }

  int internal_count() const noexcept {
    return (leaf_count() - 1) / (Arity - 1);
  }

  // Children of the root; requires an internal root.
  std::vector<Tree> children() const {
    if (is_leaf()) throw std::logic_error("leaf has no children");
    std::vector<Tree> out;
    out.reserve(Arity);
    std::size_t p = 1;
    for (int k = 0; k < Arity; ++k) {
      std::size_t e = subtree_end(code_, p);
      out.push_back(Tree(code_.substr(p, e - p), raw_tag{}));
      p = e;
    }
    return out;
  }

  // Replace the i-th leaf (1-based, left to right) by `scion`.
  Tree graft(int leaf_index, const Tree& scion) const {
    std::size_t pos = leaf_pos(leaf_index);
    std::string code = code_;
    code.replace(pos, 1, scion.code_);
    return Tree(std::move(code), raw_tag{});
  }

  // Replace every leaf: the k-th leaf (1-based) becomes pieces[k-1].
  Tree graft_all(const std::vector<Tree>& pieces) const {
    if (pieces.size() != static_cast<std::size_t>(leaf_count()))
      throw std::invalid_argument("piece count must equal leaf count");
    std::string code;
    std::size_t k = 0;
    for (char ch : code_) {
      if (ch == '.')
        code += pieces[k++].code_;
      else
        code.push_back(ch);
    }
    return Tree(std::move(code), raw_tag{});
  }

  // True when this tree refines `base`: it is obtainable from `base` by
  // grafting subtrees onto leaves.
  bool refines(const Tree& base) const {
    std::size_t p = 0, q = 0;
    return match_refine(base.code_, p, code_, q) && p == base.code_.size() &&
           q == code_.size();
  }

  // Decompose a refinement of `base` into the subtrees sitting over each
  // leaf of `base` (in leaf order).  Throws if this tree does not refine it.
  std::vector<Tree> pieces_over(const Tree& base) const {
    std::vector<Tree> out;
    std::size_t p = 0, q = 0;
    if (!split_refine(base.code_, p, code_, q, out) ||
        p != base.code_.size() || q != code_.size())
      throw std::invalid_argument("tree does not refine the given base");
    return out;
  }

  // 1-based leaf indices i such that leaves i..i+Arity-1 are the children of
  // a single node (a caret: a node all of whose children are leaves).
  std::vector<int> caret_leaves() const {
    static const std::string caret = caret_code();
    std::vector<int> out;
    int leaf_no = 0;
    for (std::size_t i = 0; i < code_.size(); ++i) {
      if (code_[i] == '.') ++leaf_no;
      if (code_.compare(i, caret.size(), caret) == 0) out.push_back(leaf_no + 1);
    }
    return out;
  }

  // Inverse of grafting a caret at leaf i: collapse the caret whose leftmost
  // leaf is the i-th leaf back to a single leaf.
  Tree collapse_caret(int leaf_index) const {
    static const std::string caret = caret_code();
    int leaf_no = 0;
    for (std::size_t i = 0; i < code_.size(); ++i) {
      if (code_[i] == '.') ++leaf_no;
      if (leaf_no + 1 == leaf_index &&
          code_.compare(i, caret.size(), caret) == 0) {
        std::string code = code_;
        code.replace(i, caret.size(), ".");
        return Tree(std::move(code), raw_tag{});
      }
    }
    throw std::invalid_argument("no caret at leaf " +
                                std::to_string(leaf_index));
  }

  // Smallest common refinement of two trees: at each position keep whichever
  // subtree goes deeper.
  static Tree common_refinement(const Tree& a, const Tree& b) {
    std::string code;
    code.reserve(a.code_.size() + b.code_.size());
    std::size_t p = 0, q = 0;
    refine_rec(a.code_, p, b.code_, q, code);
    return Tree(std::move(code), raw_tag{});
  }

  friend bool operator==(const Tree&, const Tree&) = default;
  friend auto operator<=>(const Tree&, const Tree&) = default;

private:
  struct raw_tag {};
  Tree(std::string code, raw_tag) : code_(std::move(code)) {}

  static std::string caret_code() {
    return "(" + std::string(static_cast<std::size_t>(Arity), '.') + ")";
  }

  // One past the end of the subtree code starting at `pos`.
  static std::size_t subtree_end(const std::string& code, std::size_t pos) {
    if (code[pos] == '.') return pos + 1;
    int depth = 0;
    do {
      if (code[pos] == '(')
        ++depth;
      else if (code[pos] == ')')
        --depth;
      ++pos;
    } while (depth > 0);
    return pos;
  }

  std::size_t leaf_pos(int leaf_index) const {
    if (leaf_index < 1)
      throw std::out_of_range("leaf index must be positive");
    int seen = 0;
    for (std::size_t i = 0; i < code_.size(); ++i) {
      if (code_[i] == '.' && ++seen == leaf_index) return i;
    }
    throw std::out_of_range("leaf index " + std::to_string(leaf_index) +
                            " out of range");
  }

  static void refine_rec(const std::string& a, std::size_t& p,
                         const std::string& b, std::size_t& q,
                         std::string& out) {
    if (a[p] == '.') {
      std::size_t e = subtree_end(b, q);
      out.append(b, q, e - q);
      ++p;
      q = e;
      return;
    }
    if (b[q] == '.') {
      std::size_t e = subtree_end(a, p);
      out.append(a, p, e - p);
      p = e;
      ++q;
      return;
    }
    out.push_back('(');
    ++p;
    ++q;
    for (int k = 0; k < Arity; ++k) refine_rec(a, p, b, q, out);
    out.push_back(')');
    ++p;  // skip ')'
    ++q;
  }

  static bool match_refine(const std::string& base, std::size_t& p,
                           const std::string& fine, std::size_t& q) {
    if (base[p] == '.') {
      ++p;
      q = subtree_end(fine, q);
      return true;
    }
    if (fine[q] != '(') return false;
    ++p;
    ++q;
    for (int k = 0; k < Arity; ++k)
      if (!match_refine(base, p, fine, q)) return false;
    ++p;
    ++q;
    return true;
  }

  static bool split_refine(const std::string& base, std::size_t& p,
                           const std::string& fine, std::size_t& q,
                           std::vector<Tree>& out) {
    if (base[p] == '.') {
      std::size_t e = subtree_end(fine, q);
      out.push_back(Tree(fine.substr(q, e - q), raw_tag{}));
      ++p;
      q = e;
      return true;
    }
    if (fine[q] != '(') return false;
    ++p;
    ++q;
    for (int k = 0; k < Arity; ++k)
      if (!split_refine(base, p, fine, q, out)) return false;
    ++p;
    ++q;
    return true;
  }

  std::string code_;
};

using BinaryTree = Tree<2>;
using TernaryTree = Tree<3>;

template <int Arity>
Tree<Arity> graft(const Tree<Arity>& stock, int leaf_index,
                  const Tree<Arity>& scion) {
  return stock.graft(leaf_index, scion);
}

template <int Arity>
Tree<Arity> common_refinement(const Tree<Arity>& a, const Tree<Arity>& b) {
  return Tree<Arity>::common_refinement(a, b);
}

// Flattened preorder node table; the traversal order fixes the node and
// leaf numbering used by the matching and diagram code.
template <int Arity>
struct NodeTable {
  struct Node {
    int parent = -1;                // preorder index of parent, -1 at root
    int slot = -1;                  // index among the parent's children
    std::array<int, Arity> child;   // preorder indices, unset for leaves
    int leaf_no = 0;                // 1-based leaf number, 0 for internal
  };

  std::vector<Node> nodes;
  std::vector<int> leaf_node;  // leaf_node[i] = preorder index of leaf i+1
  int root = 0;

  bool is_leaf(int v) const { return nodes[v].leaf_no > 0; }
};

template <int Arity>
NodeTable<Arity> node_table(const Tree<Arity>& t) {
  const std::string& code = t.str();
  NodeTable<Arity> tab;
  tab.nodes.reserve(code.size());
  // Stack of (node index, next child slot) for open internal nodes.
  std::vector<std::pair<int, int>> open;
  for (char ch : code) {
    if (ch == ')') {
      open.pop_back();
      continue;
    }
    int idx = static_cast<int>(tab.nodes.size());
    typename NodeTable<Arity>::Node node;
    node.child.fill(-1);
    if (!open.empty()) {
      auto& [parent, slot] = open.back();
      node.parent = parent;
      node.slot = slot;
      tab.nodes[parent].child[slot] = idx;
      ++slot;
    }
    if (ch == '.') {
      node.leaf_no = static_cast<int>(tab.leaf_node.size()) + 1;
      tab.leaf_node.push_back(idx);
    }
    tab.nodes.push_back(std::move(node));
    if (ch == '(') open.emplace_back(idx, 0);
  }
  return tab;
}

}  // namespace treelink
