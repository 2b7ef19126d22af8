#pragma once

#include "gorhom/resolution.hpp"

namespace gorhom {

enum class Variance { Ext, Tor };

struct DerivedModule {
  FPModule value;
  unsigned degree = 0;
  Variance variance = Variance::Ext;
  std::size_t resolution_length = 0;  // length requested from free_resolution
};

/// H^i(Hom(P, N)) for P → M free; resolution length defaults to i+1.
DerivedModule ext(unsigned i, const FPModule& m, const FPModule& n);
DerivedModule ext(unsigned i, const FPModule& m, const FPModule& n, std::size_t resolution_length);
/// H_i(P ⊗ N).
DerivedModule tor(unsigned i, const FPModule& m, const FPModule& n);
DerivedModule tor(unsigned i, const FPModule& m, const FPModule& n, std::size_t resolution_length);

/// 0 → A -α-> B -β-> C → 0.
struct ShortExact {
  ModuleHom alpha;
  ModuleHom beta;
};
/// Throws CheckFailed unless exact.
void verify_short_exact(const ShortExact& s);

/// Tor_1(W, C) -δ-> W⊗A -> W⊗B -> W⊗C -> 0 with exactness flags.
struct TorLesReport {
  FPModule tor1;  // Tor_1(W, C), via a free resolution of C
  FPModule wa, wb, wc;
  ModuleHom delta, w_alpha, w_beta;
  bool exact_at_wa = false;
  bool exact_at_wb = false;
  bool onto_wc = false;
  bool exact() const { return exact_at_wa && exact_at_wb && onto_wc; }
};
TorLesReport tor_les(const FPModule& w, const ShortExact& ses);

/// g ∘ f = 0 and ker g = im f.
bool exact_at(const ModuleHom& f, const ModuleHom& g);

}  // namespace gorhom
