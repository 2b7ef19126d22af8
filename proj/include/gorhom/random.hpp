#pragma once

// Seeded generators for property checks. Deterministic for a given engine state.

#include <random>

#include "gorhom/complex.hpp"
#include "gorhom/module.hpp"

namespace gorhom::gen {

using Engine = std::mt19937_64;

/// Pick uniformly from [lo, hi].
long uniform(Engine& rng, long lo, long hi);

/// Diagonal module with up to max_gens summands. Over ℤ/m orders are divisors of m;
/// over ℤ orders come from `z_orders` (0 means a free summand).
FPModule module(Engine& rng, const Ring& ring, std::size_t max_gens, const std::vector<Int>& z_orders = {0, 2, 3, 4});
/// Finite module whose orders divide `exponent_bound` and whose size is at most max_size.
FPModule finite_module(Engine& rng, const Ring& ring, const Int& exponent_bound, std::size_t max_gens, const Int& max_size);
/// Uniform element of Hom(m, n) (coefficients drawn in [0, 5] over ℤ).
ModuleHom hom(Engine& rng, const FPModule& m, const FPModule& n);
/// Random coordinate columns of elements of m.
Matrix elements(Engine& rng, const FPModule& m, std::size_t count);

/// Complex in degrees [lo, lo+len-1], terms of size at most max_size; each ∂ lands in the
/// cycles below, so ∂∂ = 0 by construction.
ChainComplex complex(Engine& rng, const Ring& ring, int lo, int len, const Int& max_size = 16);
/// Random chain map x → y, built degreewise by lifting through the target cycles (may be zero).
ChainMap chain_map(Engine& rng, const ChainComplex& x, const ChainComplex& y, int attempts = 20);

}  // namespace gorhom::gen
