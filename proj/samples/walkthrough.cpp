// Walks from the generated ray system to the mixed-rank table1 set and its
// pre/post-selection proof.

#include <iostream>

#include "ksforge/ksforge.hpp"

int main() {
  using namespace ksforge;

  const RaySystem sys = RaySystem::build();
  std::cout << sys.rays.size() << " rays, " << sys.bases.size() << " bases\n";

  const auto parents = enumerate_parents(sys);
  std::cout << parents.size() << " parents of type " << kParentSignature << "\n\n";

  // Table 2 is written in its own ray numbering; find where it sits.
  const auto map = match_fixture(fixtures::table2_bases(), sys.bases);
  const auto geo = RayGeometry::relabeled(sys, map);

  const auto table2 = fixtures::table2_parent();
  const auto analysis = analyze_parent(table2);
  const KSSet child = derive_child(table2, analysis, fixtures::table1_config(), "fixture:table2");
  std::cout << io::to_text(child) << '\n';
  std::cout << io::to_text(parity_contradiction(child)) << '\n';

  const KSSet split = split_rank2(child, 25, 27);
  std::cout << io::to_text(state_dependent_proof(split, 33, 12, geo));

  const auto run = enumerate_children(table2, "fixture:table2");
  std::cout << "\nchildren of table2: " << run.certificate.successes << " of " << run.certificate.total << " configurations\n";
}
