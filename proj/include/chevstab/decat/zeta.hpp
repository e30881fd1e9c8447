#pragma once

#include "../core/laurent.hpp"
#include "../space/space.hpp"

namespace chevstab {

// zeta_X(s)^{-1} as a Laurent polynomial in q, from the rational form of the zeta function
inline LaurentQW zeta_inverse(const SpaceSpec& X, int s) {
  auto factor = [s](int j) { return LaurentQW(1) - LaurentQW::q_power(j - s); };
  switch (X.family()) {
    case SpaceFamily::Affine:
      return factor(X.family_param());
    case SpaceFamily::ProjSpace: {
      LaurentQW p(1);
      for (int j = 0; j <= X.family_param(); ++j) p = p * factor(j);
      return p;
    }
    case SpaceFamily::Curve:
      throw UnsupportedError("zeta function of " + X.name() + " depends on its Frobenius eigenvalues");
    case SpaceFamily::Custom:
      break;
  }
  // custom Tate space with even classes: N_e = sum_h q^{e e_h}
  if (!X.trace_supported()) throw UnsupportedError("zeta function needs frobExp on every class");
  LaurentQW p(1);
  for (const auto& b : X.basis()) {
    if (b.c % 2 != 0) throw UnsupportedError("zeta closed form needs classes in even degree");
    p = p * factor(*b.e);
  }
  return p;
}

}  // namespace chevstab
