// Decomposes a small graph and prints each vertex's rank.
#include <iostream>

#include "eulerdag/eulerdag.hpp"

int main() {
  using namespace eulerdag;
  ParsedGraph pg = parse_edge_list_string(
      "a b\nb c\nc a\n"   // a cycle: lands in the Eulerian part
      "c d\nd e\nb e\n");  // hierarchy edges above the cycle
  PipelineResult pr = greedy_and_refine(pg.graph, GreedyVariant::kReverse);
  const Decomposition& d = pr.solved.decomposition;
  std::cout << "euler edges: " << d.euler.size() << ", dag edges: " << d.dag.size() << '\n';
  Ranking r = assign_ranks(pg.graph, d);
  for (VertexId v = 0; v < r.size(); ++v) std::cout << pg.names.label(v) << '\t' << r[v] << '\n';
  std::cout << "agony: " << agony(pg.graph, r) << '\n';
}
