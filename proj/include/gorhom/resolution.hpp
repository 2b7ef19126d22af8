#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gorhom/module.hpp"

namespace gorhom {

/// Homological dimension; nullopt is ∞.
using Dimension = std::optional<unsigned>;
std::string dimension_string(const Dimension& d);

/// P_L → … → P_0 → target. maps[0] is the augmentation P_0 → target,
/// maps[k] : P_k → P_{k-1}. syzygies[k] = ker(maps[k]) as computed.
struct Resolution {
  FPModule target;
  std::vector<FPModule> terms;
  std::vector<ModuleHom> maps;
  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
};

/// R^g → M sending basis vector j to generator j.
ModuleHom free_cover(const FPModule& m);

/// Stops early once a kernel vanishes (always by length 1 over ℤ).
Resolution free_resolution(const FPModule& m, std::size_t len);
/// Composites zero, exact at interior terms, augmentation onto. Throws CheckFailed.
void verify_resolution(const Resolution& r);

/// i-th kernel of the standard free resolution, with projective summands kept.
FPModule syzygy(const FPModule& m, std::size_t i);
/// Remove free (ℤ) or projective (ℤ/m) summands; result in canonical diagonal form.
FPModule strip_projective(const FPModule& m);

/// Prime-power decomposition of the torsion part: (p, exponent) pairs, sorted.
std::vector<std::pair<Int, unsigned>> elementary_divisors(const FPModule& m);

bool is_projective(const FPModule& m);
/// Over ℤ/m injective = projective. Refused over ℤ.
bool is_injective_module(const FPModule& m);

/// Essential embedding into an injective module (ℤ/m only).
ModuleHom injective_envelope(const FPModule& m);
FPModule cosyzygy(const FPModule& m, std::size_t i);

/// Hom(M, ℤ/n) with exponent(M) | n; default n = exponent(M). Refused if M has a free ℤ summand.
FPModule character_dual(const FPModule& m);
FPModule character_dual(const FPModule& m, const Int& n);
/// Hom(f, ℤ/n): dual(N) → dual(M) for f: M → N.
ModuleHom character_dual(const ModuleHom& f, const Int& n);

Dimension pd(const FPModule& m);
Dimension id(const FPModule& m);
Dimension fd(const FPModule& m);

/// Injective hom with its cokernel.
struct InclusionWitness {
  ModuleHom incl;
  FPModule quotient;
  ModuleHom projection;
};
/// Verifies injectivity; throws CheckFailed otherwise.
InclusionWitness make_inclusion(const ModuleHom& incl);

/// W-test moduli used by is_w_pure over ℤ (the ℤ/d family; ℤ itself is always tested).
std::vector<Int> w_test_moduli(const InclusionWitness& w);
bool is_w_pure(const InclusionWitness& w);

}  // namespace gorhom
