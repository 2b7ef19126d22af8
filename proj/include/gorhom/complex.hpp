#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gorhom/module.hpp"

namespace gorhom {

/// Bounded chain complex, ∂_n : X_n → X_{n-1}. Terms outside [lo, hi] are zero.
class ChainComplex {
 public:
  ChainComplex() = default;
  /// boundaries[i] is ∂_{lo+i+1}. Throws CheckFailed if some ∂∂ ≠ 0.
  ChainComplex(Ring ring, int lo, std::vector<FPModule> terms, std::vector<ModuleHom> boundaries);
  static ChainComplex zero(const Ring& ring);

  const Ring& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  FPModule term(int n) const;
  /// ∂_n, zero outside the window.
  ModuleHom d(int n) const;

  bool is_zero() const;
  bool is_finite() const;
  /// Window shrunk to the nonzero terms.
  ChainComplex trimmed() const;

  friend bool operator==(const ChainComplex& a, const ChainComplex& b);
  friend bool operator!=(const ChainComplex& a, const ChainComplex& b) { return !(a == b); }

 private:
  Ring ring_;
  int lo_ = 0;
  std::vector<FPModule> terms_;
  std::vector<ModuleHom> d_;  // d_[i] = ∂_{lo+i}; d_[0] maps to zero
};

ChainComplex sphere(int m, const FPModule& c);
/// C in degrees m and m-1 with identity boundary.
ChainComplex disk(int m, const FPModule& c);
/// (Σ^k X)_n = X_{n-k}, ∂ = (-1)^k ∂^X.
ChainComplex suspension(int k, const ChainComplex& x);
ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);
/// lcm of the term exponents; throws Refused if some term is infinite.
Int exponent(const ChainComplex& x);

/// Degree-0 map commuting with the boundaries.
class ChainMap {
 public:
  ChainMap() = default;
  /// Missing components are zero. Throws CheckFailed unless ∂f = f∂.
  ChainMap(ChainComplex src, ChainComplex dst, std::map<int, ModuleHom> components);
  static ChainMap identity(const ChainComplex& x);
  static ChainMap zero(const ChainComplex& x, const ChainComplex& y);

  const ChainComplex& src() const { return src_; }
  const ChainComplex& dst() const { return dst_; }
  ModuleHom at(int n) const;
  bool is_zero() const;

  ChainMap compose(const ChainMap& g) const;
  ChainMap operator*(const ChainMap& g) const { return compose(g); }
  ChainMap operator+(const ChainMap& g) const;
  ChainMap operator-(const ChainMap& g) const;

  friend bool operator==(const ChainMap& a, const ChainMap& b);
  friend bool operator!=(const ChainMap& a, const ChainMap& b) { return !(a == b); }

 private:
  ChainComplex src_, dst_;
  std::map<int, ModuleHom> comps_;
};

bool is_isomorphism(const ChainMap& f);
ChainMap suspension(int k, const ChainMap& f);

/// f_k : X_k → Y_{k+degree}.
struct DegreeMap {
  ChainComplex src, dst;
  int degree = 0;
  std::map<int, ModuleHom> components;
  ModuleHom at(int k) const;
};

/// s_k : X_k → Y_{k+1} with f_k = ∂ s_k + s_{k-1} ∂.
struct Homotopy {
  ChainMap map;
  std::map<int, ModuleHom> components;
  ModuleHom at(int k) const;
};
bool verify_homotopy(const Homotopy& h);
/// One linear system over all degrees; the result is re-verified.
std::optional<Homotopy> null_homotopy(const ChainMap& f);

FPModule homology(const ChainComplex& x, int m);
bool is_exact(const ChainComplex& x);

struct ComplexKernel {
  ChainComplex complex;
  ChainMap inclusion;
};
ComplexKernel kernel(const ChainMap& g);

struct ComplexCokernel {
  ChainComplex complex;
  ChainMap projection;
  std::map<int, Matrix> section;
};
ComplexCokernel cokernel(const ChainMap& f);

/// Degreewise ker g / im f with the induced boundary.
struct ComplexHomology {
  ChainComplex complex;
  ComplexKernel cycles;
  ChainMap projection;  // cycles → complex
  std::map<int, Matrix> section;
};
ComplexHomology homology(const ChainMap& f, const ChainMap& g);

/// h with f ∘ h = g, when f is degreewise injective.
std::optional<ChainMap> factor_through(const ChainMap& f, const ChainMap& g);

/// Block bookkeeping shared by ⊗ and Hom′: degree n is a concatenation of pieces indexed by k.
template <class Space>
struct Block {
  int k;
  Space space;
  std::size_t offset;
};

/// (X⊗Y)_n = ⊕_k X_k ⊗ Y_{n-k}, ∂(x⊗y) = ∂x⊗y + (-1)^k x⊗∂y.
struct TensorComplex {
  ChainComplex x, y, complex;
  std::map<int, std::vector<Block<TensorSpace>>> blocks;
  const Block<TensorSpace>* find(int n, int k) const;
};
TensorComplex tensor_data(const ChainComplex& x, const ChainComplex& y);
ChainComplex tensor(const ChainComplex& x, const ChainComplex& y);
ChainMap tensor_map(const TensorComplex& from, const TensorComplex& to, const ChainMap& f, const ChainMap& g);

/// (X⊗Y)_n / B_n(X⊗Y), boundary induced by ∂^X ⊗ 1.
struct BarTensor {
  TensorComplex tensor;
  ChainComplex complex;
  std::map<int, Cokernel> quotients;  // (X⊗Y)_n → complex_n
};
BarTensor bar_tensor_data(const ChainComplex& x, const ChainComplex& y);
ChainComplex bar_tensor(const ChainComplex& x, const ChainComplex& y);
ChainMap bar_tensor_map(const BarTensor& from, const BarTensor& to, const ChainMap& f, const ChainMap& g);

/// Hom′(X,Y)_n = ∏_k Hom(X_k, Y_{n+k}), (∂f)_k = ∂^Y f_k - (-1)^n f_{k-1} ∂^X_k.
struct HomPrime {
  ChainComplex x, y, complex;
  std::map<int, std::vector<Block<HomSpace>>> blocks;
  DegreeMap element(int n, const Matrix& coords) const;
  Matrix coordinates(const DegreeMap& f) const;
};
HomPrime hom_prime_data(const ChainComplex& x, const ChainComplex& y);
ChainComplex hom_prime(const ChainComplex& x, const ChainComplex& y);

/// Hom̄(X,Y)_n = Z_n(Hom′(X,Y)), boundary f ↦ (∂^Y f_k)_k.
struct BarHom {
  HomPrime hom;
  ChainComplex complex;
  std::map<int, ModuleHom> inclusions;  // Z_n → Hom′_n (not a chain map: the boundaries differ)
  DegreeMap element(int n, const Matrix& coords) const;
  /// Degree-0 element as a chain map.
  ChainMap chain_map(const Matrix& coords) const;
  std::optional<Matrix> coordinates(const DegreeMap& f) const;
};
BarHom bar_hom_data(const ChainComplex& x, const ChainComplex& y);
/// Only Z_n(Hom′(X,Y)), as a one-term complex in degree n.
BarHom bar_hom_cycles(const ChainComplex& x, const ChainComplex& y, int n);
ChainComplex bar_hom(const ChainComplex& x, const ChainComplex& y);
/// Precomposition with p : to.x → from.x.
ChainMap bar_hom_pre(const BarHom& from, const BarHom& to, const ChainMap& p);

/// (X⁺)_m = Hom(X_{-m-1}, ℤ/N), ∂_m = (-1)^{m-1} Hom(∂_{-m}, ℤ/N). Default N = exponent(X).
ChainComplex pontryagin(const ChainComplex& x);
ChainComplex pontryagin(const ChainComplex& x, const Int& n);
/// f⁺ : Y⁺ → X⁺ for f : X → Y.
ChainMap pontryagin(const ChainMap& f, const Int& n);

/// X⁺ ≅ Hom̄(X, D⁰(ℤ/N)): phi_m(f) = (-1)^m f_{-m-1}, psi its inverse.
struct PontryaginIso {
  BarHom bar;
  ChainComplex dual;
  ChainMap phi;  // bar.complex → dual
  ChainMap psi;  // dual → bar.complex
};
PontryaginIso pontryagin_iso(const ChainComplex& x, const Int& n);

}  // namespace gorhom
