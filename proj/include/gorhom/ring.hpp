#pragma once

#include <string>

#include "gorhom/integer.hpp"

namespace gorhom {

/// A supported commutative base ring: ℤ or ℤ/m with m ≥ 2.
class Ring {
 public:
  enum class Kind { Integers, IntegersMod };

  /// ℤ.
  Ring() = default;

  static Ring integers() { return Ring(); }
  static Ring integers_mod(const Int& modulus);

  Kind kind() const { return kind_; }
  bool is_integers() const { return kind_ == Kind::Integers; }
  bool is_finite() const { return kind_ == Kind::IntegersMod; }

  /// m for ℤ/m, 0 for ℤ.
  const Int& modulus() const { return modulus_; }

  /// Canonical representative: identity over ℤ, residue in [0, m) over ℤ/m.
  Int reduce(const Int& x) const { return is_integers() ? x : mod(x, modulus_); }

  /// Order of a rank-one free module, as stored in diagonal presentations (0 over ℤ, m over ℤ/m).
  const Int& free_order() const { return modulus_; }

  bool is_unit(const Int& x) const;

  /// "Z" or "Z/m".
  std::string name() const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }
  friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

 private:
  Kind kind_ = Kind::Integers;
  Int modulus_ = 0;
};

/// Parses "Z", "ℤ", "Z/4", "ℤ/4" (whitespace tolerant). Throws std::invalid_argument.
Ring parse_ring(const std::string& text);

}  // namespace gorhom
