#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gorhom/error.hpp"
#include "gorhom/exact_linear.hpp"

namespace gorhom {

/// Finitely presented module kept in diagonal form ⊕_i R/(o_i).
/// o_i = 0 is a free ℤ summand; over ℤ/m every o_i divides m and o_i = m is free.
/// Summands of order 1 are never stored.
class FPModule {
 public:
  FPModule() = default;
  FPModule(Ring ring, std::vector<Int> orders);

  static FPModule zero(const Ring& ring) { return FPModule(ring, {}); }
  static FPModule free(const Ring& ring, std::size_t rank);
  static FPModule cyclic(const Ring& ring, const Int& order);
  static FPModule direct_sum(const FPModule& a, const FPModule& b);

  const Ring& ring() const { return ring_; }
  std::size_t gens() const { return orders_.size(); }
  const std::vector<Int>& orders() const { return orders_; }
  const Int& order(std::size_t i) const { return orders_[i]; }
  bool is_free_generator(std::size_t i) const { return orders_[i] == ring_.free_order(); }

  bool is_zero() const { return orders_.empty(); }
  /// No free ℤ summand (always true over ℤ/m).
  bool is_finite() const;
  /// Number of elements; throws Refused when infinite.
  Int cardinality() const;
  /// lcm of the orders; 0 if there is a free ℤ summand.
  Int exponent() const;

  /// Diagonal relation matrix (gens × gens).
  Matrix relations() const;
  /// Reduce coordinate columns entrywise modulo the generator orders.
  Matrix reduce(Matrix coords) const;
  bool is_zero_element(const Matrix& coords) const;

  friend bool operator==(const FPModule& a, const FPModule& b) {
    return a.ring_ == b.ring_ && a.orders_ == b.orders_;
  }
  friend bool operator!=(const FPModule& a, const FPModule& b) { return !(a == b); }

 private:
  Ring ring_;
  std::vector<Int> orders_;
};

/// Invariant factors d_1 | d_2 | … (all ≠ 1, all > 0) plus free ℤ-rank.
/// Over ℤ/m a free summand appears as the factor m and free_rank is 0.
struct CanonicalForm {
  Ring ring;
  std::vector<Int> factors;
  std::size_t free_rank = 0;

  bool is_zero() const { return factors.empty() && free_rank == 0; }
  /// "0", "Z/2 ⊕ Z/4", "Z/2 ⊕ Z ⊕ Z".
  std::string to_string() const;
  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.ring == b.ring && a.factors == b.factors && a.free_rank == b.free_rank;
  }
  friend bool operator!=(const CanonicalForm& a, const CanonicalForm& b) { return !(a == b); }
};

CanonicalForm canonical_form(const FPModule& m);
/// Canonical diagonal module with the given invariant factors.
FPModule from_canonical(const CanonicalForm& c);
bool isomorphic(const FPModule& a, const FPModule& b);

/// R^gens / colspan(rels) ≅ module. to_module: old coordinates → new (module.gens × gens);
/// from_module: new → old (gens × module.gens).
struct Presentation {
  FPModule module;
  Matrix to_module;
  Matrix from_module;
};
Presentation present(const Ring& ring, std::size_t gens, const Matrix& rels);

/// Homomorphism of diagonal modules; column j is the image of source generator j,
/// stored reduced modulo the target orders.
class ModuleHom {
 public:
  ModuleHom() = default;
  /// Throws CheckFailed if the matrix does not respect the source relations.
  ModuleHom(FPModule src, FPModule dst, Matrix mat);

  static ModuleHom identity(const FPModule& m);
  static ModuleHom zero(const FPModule& src, const FPModule& dst);

  const FPModule& src() const { return src_; }
  const FPModule& dst() const { return dst_; }
  const Matrix& matrix() const { return mat_; }

  bool is_zero() const { return mat_.is_zero(); }
  /// Image of coordinate columns.
  Matrix apply(const Matrix& coords) const;

  /// (*this) ∘ g
  ModuleHom compose(const ModuleHom& g) const;
  ModuleHom operator*(const ModuleHom& g) const { return compose(g); }
  ModuleHom operator+(const ModuleHom& g) const;
  ModuleHom operator-(const ModuleHom& g) const;
  ModuleHom operator-() const;
  ModuleHom scaled(const Int& c) const;

  static ModuleHom direct_sum(const ModuleHom& f, const ModuleHom& g);

  friend bool operator==(const ModuleHom& a, const ModuleHom& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.mat_ == b.mat_;
  }
  friend bool operator!=(const ModuleHom& a, const ModuleHom& b) { return !(a == b); }

 private:
  FPModule src_, dst_;
  Matrix mat_;
};

/// Submodule of `ambient` generated by the columns of `gens`.
struct Submodule {
  FPModule module;
  ModuleHom inclusion;  // module → ambient
  Matrix corestriction;  // generator columns → module coordinates (module.gens × gens.cols)
};
Submodule submodule(const FPModule& ambient, const Matrix& gens);

struct Kernel {
  FPModule module;
  ModuleHom inclusion;
};
struct Cokernel {
  FPModule module;
  ModuleHom projection;
  Matrix section;  // target coordinates of each cokernel generator (dst.gens × module.gens)
};
struct Image {
  FPModule module;
  ModuleHom inclusion;     // image → dst
  ModuleHom corestriction;  // src → image
};

Kernel kernel(const ModuleHom& f);
Cokernel cokernel(const ModuleHom& f);
Image image(const ModuleHom& f);
bool is_injective(const ModuleHom& f);
bool is_surjective(const ModuleHom& f);
bool is_isomorphism(const ModuleHom& f);

/// Some x with f(x) = y for each column y, or nullopt.
std::optional<Matrix> lift(const ModuleHom& f, const Matrix& y);

/// Factor g through f: h with f ∘ h = g (same target), or nullopt.
std::optional<ModuleHom> factor_through(const ModuleHom& f, const ModuleHom& g);

/// H = ker(g) / im(f) for A -f-> B -g-> C with g∘f = 0.
struct Homology {
  FPModule module;
  Kernel cycles;
  ModuleHom projection;  // cycles.module → module
  Matrix section;        // cycles coordinates of each homology generator
};
Homology homology(const ModuleHom& f, const ModuleHom& g);

/// Hom_R(M, N) with explicit coordinates.
class HomSpace {
 public:
  HomSpace(FPModule m, FPModule n);
  const FPModule& module() const { return module_; }
  const FPModule& source() const { return m_; }
  const FPModule& target() const { return n_; }
  ModuleHom map(const Matrix& coords) const;
  Matrix coordinates(const ModuleHom& f) const;

  /// Generator index for matrix position (row, col), if any; its map has entry step(s) there.
  std::optional<std::size_t> slot(std::size_t row, std::size_t col) const { return index_[row * m_.gens() + col]; }
  std::size_t slot_row(std::size_t s) const { return slots_[s].row; }
  std::size_t slot_col(std::size_t s) const { return slots_[s].col; }
  const Int& step(std::size_t s) const { return slots_[s].step; }

 private:
  struct Slot {
    std::size_t row, col;
    Int step;
  };
  FPModule m_, n_, module_;
  std::vector<Slot> slots_;
  std::vector<std::optional<std::size_t>> index_;
};

/// Hom(g, N): Hom(M, N) → Hom(M', N) for g: M' → M.
ModuleHom hom_pre(const HomSpace& from, const HomSpace& to, const ModuleHom& g);
/// Hom(M, f): Hom(M, N) → Hom(M, N') for f: N → N'.
ModuleHom hom_post(const HomSpace& from, const HomSpace& to, const ModuleHom& f);

/// M ⊗_R N on generators e_j ⊗ e_i (order gcd), order-1 pairs dropped.
class TensorSpace {
 public:
  TensorSpace(FPModule m, FPModule n);
  const FPModule& module() const { return module_; }
  const FPModule& left() const { return m_; }
  const FPModule& right() const { return n_; }
  /// Index of e_j ⊗ e_i, or nullopt if that generator is zero.
  std::optional<std::size_t> index(std::size_t j, std::size_t i) const;

 private:
  FPModule m_, n_, module_;
  std::vector<std::optional<std::size_t>> index_;
};

/// f ⊗ g between tensor spaces.
ModuleHom tensor_map(const TensorSpace& from, const TensorSpace& to, const ModuleHom& f, const ModuleHom& g);

FPModule hom_module(const FPModule& m, const FPModule& n);
FPModule tensor_module(const FPModule& m, const FPModule& n);

/// The j-th summand injection / projection of A ⊕ B.
ModuleHom sum_injection(const FPModule& a, const FPModule& b, int which);
ModuleHom sum_projection(const FPModule& a, const FPModule& b, int which);

}  // namespace gorhom
