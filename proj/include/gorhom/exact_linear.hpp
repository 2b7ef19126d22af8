#pragma once

#include <optional>
#include <vector>

#include "gorhom/matrix.hpp"

namespace gorhom {

/// u·a·v = d with d diagonal, d_i | d_{i+1}; over ℤ/m each nonzero d_i divides m.
struct SNFResult {
  Matrix d;
  Matrix u;
  Matrix v;
  Matrix a;
  Matrix u_inverse;  // filled only when requested
  std::size_t rank = 0;

  /// Nonzero diagonal entries d_1..d_rank.
  std::vector<Int> invariants() const;
};

struct SNFOptions {
  bool u = true;
  bool v = true;
  bool u_inverse = false;
};

SNFResult snf(const Matrix& a, SNFOptions opts = {});

/// One solution of a·x = b (b may have several columns), or nullopt.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

/// Columns generate {x : a·x = 0}; over ℤ/m torsion solutions are included.
Matrix kernel_generators(const Matrix& a);

/// Factor once, solve many right-hand sides.
class LinearSystem {
 public:
  explicit LinearSystem(const Matrix& a);

  std::optional<Matrix> solve(const Matrix& b) const;
  bool solvable(const Matrix& b) const { return solve(b).has_value(); }
  Matrix kernel() const;
  std::size_t rank() const { return rank_; }
  const Matrix& matrix() const { return a_; }

 private:
  Matrix a_;
  Matrix u_;
  Matrix v_;
  std::vector<Int> d_;
  std::size_t rank_ = 0;
};

}  // namespace gorhom
