// Invariants of a few small fields: discriminant, genus, class data and the
// Euler-Kronecker constant.
#include <cstdio>

#include "zetafam/zetafam.hpp"

int main() {
  using namespace zetafam;
  for (const FieldDescriptor& F : {FieldDescriptor::quadratic(-1), FieldDescriptor::quadratic(5),
                                   FieldDescriptor::quadratic_from_discriminant(-23), FieldDescriptor::cyclotomic(7)}) {
    const FieldInvariants inv = field_invariants(F);
    const ZetaEngine engine(F);
    std::printf("%-16s D=%-8s g=%-10s kappa=%-14s gamma_K=%s\n", F.id().c_str(), inv.discriminant.str().c_str(),
                format_double(inv.genus).c_str(), format_double(engine.residue()).c_str(),
                format_double(euler_kronecker(engine).value).c_str());
    if (F.is_quadratic()) {
      const ClassData cd = class_data(F);
      std::printf("%16s h=%llu R=%s w=%llu\n", "", static_cast<unsigned long long>(cd.h), format_double(cd.R).c_str(),
                  static_cast<unsigned long long>(cd.w));
    }
  }
}
