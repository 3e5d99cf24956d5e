#pragma once

#include <string>
#include <vector>

#include "medflow/ast.hpp"

namespace medflow {

struct ETNode {
  int id = 0;
  StmtPtr assign;     // null for Start without assignment and for skip nodes
  int parent = -1;
  ExprPtr edge;       // condition on the edge from the parent; null means TRUE
  std::vector<int> children;
};

struct ExecutionTree {
  std::vector<ETNode> nodes;  // nodes[0] is Start

  std::vector<int> leaves() const;
  std::vector<int> path_to(int n) const;  // Start .. n
  std::string dot() const;
};

// Branches get the guard and its negation as edge labels; statements after
// an if are copied below each of its branch ends.
ExecutionTree to_tree(const Block& fragment);

}  // namespace medflow
