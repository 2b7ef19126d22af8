#pragma once

#include <string>
#include <variant>
#include <vector>

#include "gorhom/complex_derived.hpp"
#include "gorhom/derived.hpp"

namespace gorhom {

/// A Gorenstein dimension: a value, ∞, or not decided over this ring.
struct GDim {
  bool computable = true;
  Dimension value;
  static GDim of(Dimension d) { return GDim{true, d}; }
  static GDim unknown() { return GDim{false, std::nullopt}; }
  bool at_most(unsigned r) const { return computable && value && *value <= r; }
  std::string to_string() const;
  friend bool operator==(const GDim& a, const GDim& b) { return a.computable == b.computable && a.value == b.value; }
};

enum class Rule {
  QuasiFrobenius,         // ℤ/m: every module is Gorenstein projective, injective and flat
  FiniteGlobalDimension,  // ℤ: GP = P and GF = F, so Gpd = pd and Gfd = fd
  InjectiveNotComputed,   // ℤ: no finitely generated injectives to test against
  Degreewise,             // complexes: the degreewise characterization over these rings
  WByFinitePd,            // modules: W = finite projective dimension
  WByExactCycles,         // complexes: exact with cycles of finite projective dimension
};
std::string rule_name(Rule r);

using Subject = std::variant<FPModule, ChainComplex>;

struct GorensteinReport {
  Subject subject;
  GDim gpd, gid, gfd;
  Dimension pd;  // pd of the module, or pd_complex
  bool w_member = false;
  std::vector<Rule> justification;
  /// "Gpd = 0 (quasi-Frobenius collapse); pd = ∞"
  std::string gpd_line() const;
};

GorensteinReport classify(const FPModule& m);
GorensteinReport classify(const ChainComplex& x);
GorensteinReport classify(const Subject& s);

/// Bound on Gpd for every object: 0 over ℤ/m, 1 over ℤ.
unsigned fdi(const Ring& ring);
unsigned fdp(const Ring& ring);

bool gp_r_member(const Subject& s, unsigned r);
/// Throws Refused over ℤ.
bool gi_r_member(const Subject& s, unsigned r);
bool gf_r_member(const Subject& s, unsigned r);
bool p_r_member(const FPModule& m, unsigned r);
bool w_member(const Subject& s);
/// M ∈ GP_r iff Ω^r M is Gorenstein projective.
bool gp_r_member_by_syzygy(const FPModule& m, unsigned r);

// ---------------------------------------------------------------- cogenerating sets

enum class CogenKind { T_syzygy, S_r_injective, X_complexes };

/// T = {R/(d) : d | m}; S(r) = minimal syzygies Ω^i(J), i ≥ r, J indecomposable injective,
/// up to the first zero. Both need ℤ/m. Throws Refused over ℤ.
std::vector<FPModule> cogenerating_modules(CogenKind kind, const Ring& ring, unsigned r = 0);
/// Spheres S^k(R/(d)) and S^k(R) for |k| ≤ bound. Needs ℤ/m.
std::vector<ChainComplex> cogenerating_complexes(const Ring& ring, int bound);

/// Sampled orthogonality: Ext¹(s, y) for every s in the set against sampled class members,
/// and whether each sampled non-member is caught by some s. Not a proof.
struct CogenerationReport {
  std::vector<std::vector<CanonicalForm>> member_ext;  // [s][y]
  std::vector<bool> nonmember_detected;
  bool members_orthogonal = true;
  bool nonmembers_detected = true;
  bool passed() const { return members_orthogonal && nonmembers_detected; }
};
CogenerationReport verify_cogeneration(const std::vector<FPModule>& set, const std::vector<FPModule>& members,
                                       const std::vector<FPModule>& nonmembers);
CogenerationReport verify_cogeneration(const std::vector<ChainComplex>& set, const std::vector<ChainComplex>& members,
                                       const std::vector<ChainComplex>& nonmembers);

// ---------------------------------------------------------------- approximations

enum class CotorsionPair { GP_W, W_GI, Pr_perp, GFr_perp };
enum class Side { Cover, Envelope };
enum class ModuleClass { GP, GI, GF, W, P, PPerp, GFPerp };
std::string class_name(ModuleClass c, unsigned r);
/// Membership decided by the ring rules above; throws Refused where undecided.
bool in_class(ModuleClass c, unsigned r, const FPModule& m);

/// Cover: 0 → B → A → X → 0 (A left, B right). Envelope: 0 → X → B′ → A′ → 0.
struct ApproximationWitness {
  CotorsionPair pair;
  unsigned r = 0;
  Side side = Side::Cover;
  FPModule x;
  ShortExact sequence;
  std::vector<std::string> certificates;
};
ModuleClass left_class(CotorsionPair p);
ModuleClass right_class(CotorsionPair p);
ApproximationWitness approximation_witness(CotorsionPair pair, const FPModule& x, Side side, unsigned r = 0);
/// Recomputes exactness and memberships from the raw maps.
bool verify_witness(const ApproximationWitness& w);

// ---------------------------------------------------------------- filtrations

/// Either all cyclic modules or an explicit list.
struct FiltrationSet {
  bool cyclics = true;
  std::vector<FPModule> members;
  static FiltrationSet all_cyclics() { return FiltrationSet{true, {}}; }
  static FiltrationSet of(std::vector<FPModule> m) { return FiltrationSet{false, std::move(m)}; }
  bool contains(const FPModule& q) const;
};

struct FiltrationChain {
  FPModule module;
  std::vector<InclusionWitness> stages;  // M_1 ⊆ … ⊆ M_ℓ = M inside M; M_0 = 0 is implicit
  std::vector<FPModule> quotients;       // M_{i+1}/M_i
  std::size_t length() const { return stages.size(); }
};

/// Peels the lexicographically least element of maximal order among those generating a
/// cyclic piece in s. Throws CheckFailed when no element qualifies.
FiltrationChain build_filtration(const FPModule& m, const FiltrationSet& s);
bool verify_filtration(const FiltrationChain& c, const FiltrationSet& s);

// ---------------------------------------------------------------- purity

struct PurityClosureReport {
  GorensteinReport sub, quotient;
  std::vector<FPModule> test_modules;  // W-members used
  std::vector<TorLesReport> les;
  bool passed() const;
};
/// Needs w W-pure and its target Gorenstein flat; throws Refused otherwise.
PurityClosureReport w_purity_closure_check(const FPModule& e, const InclusionWitness& w);

}  // namespace gorhom
