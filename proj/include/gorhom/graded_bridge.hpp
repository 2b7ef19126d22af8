#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gorhom/complex_derived.hpp"
#include "gorhom/gorenstein.hpp"

namespace gorhom {

/// Graded module over A = R[x]/(x²), kept as its complex: degree-n piece is carrier_n and
/// x acts by the boundary.
struct GradedAModule {
  ChainComplex carrier;
  const Ring& base() const { return carrier.ring(); }
  /// A itself: R·1 in degree `degree`, R·x one below.
  static GradedAModule free(const Ring& base, int degree = 0);
  /// N in one degree, x acting by 0.
  static GradedAModule trivial(const FPModule& n, int degree = 0);
};

ChainComplex phi(const GradedAModule& m);
GradedAModule psi(const ChainComplex& x);

/// Degree-preserving A-linear map given piece by piece.
struct GradedAHom {
  GradedAModule src, dst;
  std::map<int, ModuleHom> pieces;
};
/// Commutes with x on every piece.
bool is_a_linear(const GradedAHom& f);
ChainMap phi(const GradedAHom& f);  // throws CheckFailed unless A-linear
GradedAHom psi(const ChainMap& f);

GradedAModule a_tensor(const GradedAModule& m, const GradedAModule& n);

/// Ext in graded A-modules (degree-preserving homs).
FPModule ext_a(unsigned i, const GradedAModule& m, const GradedAModule& n);
/// Nonzero Ext^i_A(M, N(s)) by shift s, where N(s)_d = N_{d+s}. Their sum is the Ext of the
/// underlying ungraded modules.
std::map<int, FPModule> ext_a_shifts(unsigned i, const GradedAModule& m, const GradedAModule& n);
FPModule ext_a_total(unsigned i, const GradedAModule& m, const GradedAModule& n);
/// N(s) as a graded module: Σ^{-s} of the carrier.
GradedAModule shift(const GradedAModule& n, int s);

ChainComplex tor_a(unsigned i, const GradedAModule& m, const GradedAModule& n);

// ---------------------------------------------------------------- dg classes

enum class DgKind { Projective, Injective, Flat };
std::string dg_kind_name(DgKind k);

/// Sufficient condition (bounded, each term in P_r / I_r / F_r) plus sampled checks against
/// exact test complexes. `sufficient_only` is always set: acceptance is not a proof of the
/// converse and rejection only says the degreewise rule fails.
struct DgCertificate {
  bool degreewise = false;
  std::size_t samples = 0;
  std::size_t samples_passed = 0;
  bool sufficient_only = true;
  std::vector<std::string> trail;
};
struct DgResult {
  bool accepted = false;
  DgCertificate certificate;
};
/// Exact complexes used as the orthogonal test family within degrees [lo, hi].
std::vector<ChainComplex> dg_test_family(DgKind kind, const Ring& ring, unsigned r, int lo, int hi);
DgResult dg_class_test(const ChainComplex& x, DgKind kind, unsigned r, std::uint64_t seed = 1);

struct CorrespondenceReport {
  DgResult dg;
  GorensteinReport a_side;  // classify(phi(psi(x)))
  bool exact = false;
  bool gp_r = false;    // psi(x) ∈ GP_r
  bool in_w = false;    // psi(x) ∈ W
  bool consistent = false;
  std::vector<std::string> trail;
};
/// Base must be ℤ. Checks dg-r-projective ⟹ GP_r and exact ⟺ W on this instance.
CorrespondenceReport correspondence_harness(const ChainComplex& x, unsigned r, std::uint64_t seed = 1);

}  // namespace gorhom
