#pragma once

// Brute-force engine for small finite modules over ℤ/n. Nothing here calls
// Smith normal form: structure comes from element tables and enumeration.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "gorhom/complex.hpp"
#include "gorhom/module.hpp"

namespace gorhom::oracle {

class BoundExceeded : public std::runtime_error {
 public:
  explicit BoundExceeded(const std::string& what) : std::runtime_error("oracle bound exceeded: " + what) {}
};

inline constexpr unsigned kMaxRing = 16;
inline constexpr std::size_t kMaxModule = 64;
inline constexpr std::size_t kMaxTable = 256;  // internal tables (Hom groups, duals)
inline constexpr std::size_t kMaxWork = std::size_t{1} << 22;

using Elem = std::uint16_t;

/// Module over ℤ/n as explicit addition and scalar tables; element 0 is zero.
class FiniteModuleTable {
 public:
  FiniteModuleTable() = default;
  /// Checks abelian group and module axioms exhaustively.
  FiniteModuleTable(unsigned ring_size, std::vector<std::vector<Elem>> add, std::vector<std::vector<Elem>> act);

  unsigned ring_size() const { return n_; }
  std::size_t size() const { return add_.size(); }
  Elem add(Elem a, Elem b) const { return add_[a][b]; }
  Elem act(unsigned r, Elem a) const { return act_[r % n_][a]; }
  Elem neg(Elem a) const { return act(n_ - 1, a); }
  unsigned order(Elem a) const;

 private:
  unsigned n_ = 1;
  std::vector<std::vector<Elem>> add_;
  std::vector<std::vector<Elem>> act_;
};

/// Realize a finite diagonal module as a table over ℤ/n (n a multiple of the exponent).
FiniteModuleTable translate(const FPModule& m, unsigned n);
/// Mixed-radix index of a coordinate column of a finite diagonal module, as used by translate.
Elem element_index(const FPModule& m, const Matrix& coords);
Matrix element_coords(const FPModule& m, Elem e);
/// Element map of a hom between finite diagonal modules.
std::vector<Elem> translate(const ModuleHom& f);
/// ℤ/n-module (ℤ/n)^gens / span(relation columns), built by closure (no linear algebra).
FiniteModuleTable from_presentation(unsigned n, std::size_t gens, const std::vector<std::vector<long>>& rel_columns);

/// Invariant factors from counts of elements killed by each prime power.
std::vector<Int> invariant_factors(const FiniteModuleTable& m);
CanonicalForm canonical_form(const FiniteModuleTable& m, const Ring& ring);

/// Generators g_i with relative orders r_i: r_i g_i = Σ_{j<i} c_ij g_j; normal forms are unique.
struct PcPresentation {
  std::vector<Elem> gens;
  std::vector<unsigned> rel_order;
  std::vector<std::vector<unsigned>> rel_coeffs;  // row i has i entries
  std::vector<std::vector<unsigned>> normal_form;  // per element, coefficient of each generator
};
PcPresentation pc_presentation(const FiniteModuleTable& m);

/// Every hom as the full element map M → N.
std::vector<std::vector<Elem>> enumerate_homs(const FiniteModuleTable& m, const FiniteModuleTable& n);
/// Hom(M, N) with pointwise operations.
FiniteModuleTable hom_table(const FiniteModuleTable& m, const FiniteModuleTable& n);
/// Hom(M, ℤ/e) with e = exponent(M), or the given e.
FiniteModuleTable dual(const FiniteModuleTable& m);
FiniteModuleTable dual(const FiniteModuleTable& m, unsigned e);
unsigned exponent(const FiniteModuleTable& m);

struct GroupType {
  Int order;
  std::vector<Int> factors;
};
/// Ext^1 classes: cocycles on the relations of a pc-presentation modulo coboundaries.
GroupType brute_ext1(const FiniteModuleTable& m, const FiniteModuleTable& n);
/// Tor_1(M, N) ≅ Ext^1(M, N⁺) for finite modules.
GroupType brute_tor1(const FiniteModuleTable& m, const FiniteModuleTable& n);
/// |M ⊗ N| = |Hom(M, N⁺)|.
Int tensor_size(const FiniteModuleTable& m, const FiniteModuleTable& n);
/// Ω¹ from the free cover on pc generators: kernel enumerated inside (ℤ/n)^k.
std::vector<Int> syzygy_factors(const FiniteModuleTable& m);

/// Bounded complex of tables; d[i] is the element map of ∂_{lo+i+1}.
struct TableComplex {
  int lo = 0;
  std::vector<FiniteModuleTable> terms;
  std::vector<std::vector<Elem>> d;
  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
};
TableComplex translate(const ChainComplex& x, unsigned n);

/// Number of chain maps x → y, counted degree by degree over enumerated homs.
Int count_chain_maps(const TableComplex& x, const TableComplex& y);
/// |(X⊗Y)_n / B_n| as the number of functionals on (X⊗Y)_n killing B_n, each given by
/// homs X_k → Hom(Y_{n-k}, ℤ/e). e must be a multiple of every exponent.
Int bar_tensor_size(const TableComplex& x, const TableComplex& y, int n, unsigned e);

/// Graded module over A = F_2[x]/(x²) as a total 0/1 matrix of x with a degree per basis
/// vector; x lowers degree by one.
struct F2GradedModule {
  std::vector<int> degree;
  std::vector<std::vector<int>> x;  // x[row][col]
  std::size_t dim() const { return degree.size(); }
};
/// Reads a complex over ℤ/2 as such a module (basis = generators, x = ∂).
F2GradedModule f2_graded(const ChainComplex& c);
/// dim Ext¹_A(M, N(s)): extension cocycles c : M → N of degree s-1 with x_N c + c x_M = 0,
/// modulo x_N h + h x_M for h of degree s.
unsigned a_ext1_dim(const F2GradedModule& m, const F2GradedModule& n, int s);
/// dim Ext¹_A(M, N) ignoring the grading.
unsigned a_ext1_dim_ungraded(const F2GradedModule& m, const F2GradedModule& n);
/// Tor_i^A(M, N) for i ≥ 0 from the normalized bar complex, whose terms are all M ⊗ N with
/// differential x⊗1 + 1⊗x; result by degree (bar degree i lowers degree by i).
std::map<int, unsigned> a_tor_dims(unsigned i, const F2GradedModule& m, const F2GradedModule& n);
/// Every graded A-module (complex over ℤ/2) in degrees [lo, hi] with pieces of dimension
/// ≤ max_dim, one per iso class: sums of spheres and disks fixed by dimensions and ranks.
std::vector<ChainComplex> f2_graded_modules(int lo, int hi, unsigned max_dim);

}  // namespace gorhom::oracle
