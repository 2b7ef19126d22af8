#pragma once

#include <vector>

#include "gorhom/complex.hpp"
#include "gorhom/resolution.hpp"

namespace gorhom {

/// P_L → … → P_0 → target in Ch. maps[0] is the augmentation, maps[k] : P_k → P_{k-1}.
struct ComplexResolution {
  ChainComplex target;
  std::vector<ChainComplex> terms;
  std::vector<ChainMap> maps;
  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
};

/// Exact with projective cycle modules (equivalently a sum of disks on projectives).
bool is_projective_complex(const ChainComplex& p);

/// Cover by ⊕_n D^n(F_n), F_n → X_n free, then iterate on kernels. Stops once a kernel is
/// zero or itself projective.
ComplexResolution disk_resolution(const ChainComplex& x, std::size_t len);
/// Terms projective, composites zero, degreewise exact, augmentation onto. Throws CheckFailed.
void verify_complex_resolution(const ComplexResolution& r);

/// Ext^i in Ch: cohomology of chain-map groups Hom(P_j, Y) under precomposition.
FPModule ext_ch(unsigned i, const ChainComplex& x, const ChainComplex& y);
/// Same, reusing a resolution of x computed to length at least i + 1.
FPModule ext_ch(unsigned i, const ComplexResolution& r, const ChainComplex& y);

/// Degreewise cohomology of Hom̄(P_•, Y). Degree n is Ext^i(X, Σ^{-n} Y).
ChainComplex bar_ext(unsigned i, const ChainComplex& x, const ChainComplex& y);
/// Homology of P_• ⊗̄ Y.
ChainComplex bar_tor(unsigned i, const ChainComplex& x, const ChainComplex& y);

Dimension pd_complex(const ChainComplex& x);

/// Ext̄^1(X, Y⁺) → Tor̄_1(X, Y)⁺ with ℤ/N, N = exponent(Y), induced by
/// f ↦ (p ⊗ y ↦ (-1)^n f_k(p)(y)) on Hom̄(P, Y⁺)_n.
struct ExtTorDuality {
  ChainComplex ext;   // bar_ext(1, X, Y⁺)
  ChainComplex tor;   // bar_tor(1, X, Y)
  ChainComplex dual;  // pontryagin(tor, N)
  ChainMap map;       // ext → dual
};
ExtTorDuality ext_tor_duality(const ChainComplex& x, const ChainComplex& y);

}  // namespace gorhom
