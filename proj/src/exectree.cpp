#include "medflow/exectree.hpp"

#include <algorithm>

#include "medflow/parser.hpp"

namespace medflow {

std::vector<int> ExecutionTree::leaves() const {
  std::vector<int> out;
  for (const auto& n : nodes)
    if (n.children.empty()) out.push_back(n.id);
  return out;
}

std::vector<int> ExecutionTree::path_to(int n) const {
  std::vector<int> out;
  for (; n >= 0; n = nodes[static_cast<std::size_t>(n)].parent) out.push_back(n);
  std::reverse(out.begin(), out.end());
  return out;
}

std::string ExecutionTree::dot() const {
  std::string out = "digraph et {\n";
  for (const auto& n : nodes) {
    std::string label = n.assign ? print_stmt_head(*n.assign) : (n.id == 0 ? "Start" : "skip");
    out += "  n" + std::to_string(n.id) + " [label=\"" + label + "\"];\n";
  }
  for (const auto& n : nodes)
    if (n.parent >= 0)
      out += "  n" + std::to_string(n.parent) + " -> n" + std::to_string(n.id) + " [label=\"" +
             (n.edge ? print_expr(*n.edge) : std::string("TRUE")) + "\"];\n";
  return out + "}\n";
}

namespace {

struct Attach {
  int node;      // -1 while Start does not exist yet
  ExprPtr cond;  // pending edge label, null for TRUE
};

class Builder {
 public:
  ExecutionTree tree;

  int make(int parent, ExprPtr cond, StmtPtr assign) {
    ETNode n;
    n.id = static_cast<int>(tree.nodes.size());
    n.parent = parent;
    n.edge = std::move(cond);
    n.assign = std::move(assign);
    tree.nodes.push_back(n);
    if (parent >= 0) tree.nodes[static_cast<std::size_t>(parent)].children.push_back(n.id);
    return n.id;
  }

  // A node that can carry outgoing branch edges.
  int settle(const Attach& a) {
    if (a.node < 0) return make(-1, nullptr, nullptr);
    if (!a.cond) return a.node;
    return make(a.node, a.cond, nullptr);
  }

  std::vector<Attach> build(const Block& b, std::vector<Attach> at) {
    for (const auto& s : b) {
      std::vector<Attach> next;
      for (const auto& a : at) {
        if (s->kind == Stmt::Kind::If) {
          int n = settle(a);
          auto neg = Expr::op("not", {s->expr});
          auto t = build(s->then_branch, {Attach{n, s->expr}});
          auto f = build(s->else_branch, {Attach{n, neg}});
          next.insert(next.end(), t.begin(), t.end());
          next.insert(next.end(), f.begin(), f.end());
        } else {
          next.push_back(Attach{make(a.node, a.cond, s), nullptr});
        }
      }
      at = std::move(next);
    }
    return at;
  }
};

}  // namespace

ExecutionTree to_tree(const Block& fragment) {
  Builder b;
  auto ends = b.build(fragment, {Attach{-1, nullptr}});
  for (const auto& a : ends)
    if (a.node < 0 || a.cond) b.settle(a);
  return b.tree;
}

}  // namespace medflow
