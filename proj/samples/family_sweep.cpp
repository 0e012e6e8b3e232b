// log zeta_K(2)/g over the first imaginary quadratic fields, written as CSV.
#include <iostream>

#include "zetafam/zetafam.hpp"

int main(int argc, char** argv) {
  using namespace zetafam;
  FamilySpec spec;
  spec.generator = ImaginaryQuadratic{};
  spec.N = argc > 1 ? std::stoul(argv[1]) : 50;
  const ExperimentTable table = run_theorem1(spec, Cplx(2.0, 0.0));
  std::cout << table.to_csv();
  std::cerr << "terminal residual " << format_optional(table.terminal_residual()) << '\n';
}
