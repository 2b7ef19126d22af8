#pragma once

// Smith normal form by elementary row/column operations, generic over the
// scalar arithmetic: ℤ (mpz) or ℤ/m (int64 for small m, mpz otherwise).

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "gorhom/integer.hpp"

namespace gorhom::detail {

template <class T>
struct Split {
  T part;
  T unit;
  T unit_inverse;
};

template <class T>
struct ExtGcd {
  T g, s, t;  // g = s*a + t*b
};

/// ℤ with exact big integers.
struct IntegerArith {
  using T = Int;
  T reduce(const T& x) const { return x; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  bool zero(const T& a) const { return a == 0; }
  T measure(const T& a) const { return abs(a); }
  Split<T> split(const T& a) const {
    if (a < 0) return {T(-a), T(-1), T(-1)};
    return {a, T(1), T(1)};
  }
  bool divides(const T& c, const T& a) const { return mpz_divisible_p(a.get_mpz_t(), c.get_mpz_t()) != 0; }
  T quot(const T& a, const T& c) const {
    T q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    return q;
  }
  ExtGcd<T> xgcd(const T& a, const T& b) const {
    ExtGcd<T> r;
    mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }
  /// Multiplier that annihilates a normalized pivot, or nullopt if none (ℤ has no torsion).
  std::optional<T> annihilator(const T&) const { return std::nullopt; }
};

/// ℤ/m with m < 2^31 in machine words.
struct SmallModArith {
  using T = std::int64_t;
  T m;
  T reduce(T x) const {
    x %= m;
    return x < 0 ? x + m : x;
  }
  T add(T a, T b) const {
    T s = a + b;
    return s >= m ? s - m : s;
  }
  T sub(T a, T b) const {
    T s = a - b;
    return s < 0 ? s + m : s;
  }
  T mul(T a, T b) const { return (a * b) % m; }
  bool zero(T a) const { return a == 0; }
  T measure(T a) const { return std::gcd(a, m); }
  Split<T> split(T a) const {
    if (a == 0) return {0, 1, 1};
    const auto s = unit_split(Int(static_cast<long>(a)), Int(static_cast<long>(m)));
    return {s.part.get_si(), s.unit.get_si(), s.unit_inverse.get_si()};
  }
  bool divides(T c, T a) const { return a % c == 0; }
  T quot(T a, T c) const { return a / c; }
  ExtGcd<T> xgcd(T a, T b) const {
    // Extended Euclid on non-negative representatives.
    T old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      const T q = old_r / r;
      T tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * s;
      old_s = s;
      s = tmp;
      tmp = old_t - q * t;
      old_t = t;
      t = tmp;
    }
    return {old_r, reduce(old_s), reduce(old_t)};
  }
  std::optional<T> annihilator(T c) const { return m / c; }
};

/// ℤ/m for large m in big integers.
struct BigModArith {
  using T = Int;
  T m;
  T reduce(const T& x) const { return mod(x, m); }
  T add(const T& a, const T& b) const { return reduce(a + b); }
  T sub(const T& a, const T& b) const { return reduce(a - b); }
  T mul(const T& a, const T& b) const { return reduce(a * b); }
  bool zero(const T& a) const { return a == 0; }
  T measure(const T& a) const { return gcd(a, m); }
  Split<T> split(const T& a) const {
    if (a == 0) return {0, 1, 1};
    const auto s = unit_split(a, m);
    return {s.part, s.unit, s.unit_inverse};
  }
  bool divides(const T& c, const T& a) const { return mpz_divisible_p(a.get_mpz_t(), c.get_mpz_t()) != 0; }
  T quot(const T& a, const T& c) const { return a / c; }
  ExtGcd<T> xgcd(const T& a, const T& b) const {
    ExtGcd<T> r;
    mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    r.s = reduce(r.s);
    r.t = reduce(r.t);
    return r;
  }
  std::optional<T> annihilator(const T& c) const { return m / c; }
};

/// In-place Smith reduction u·a·v = d with optional transform tracking.
/// Pivot: nonzero entry of least measure, ties by lowest (row, column).
template <class A>
class Smith {
 public:
  using T = typename A::T;

  Smith(A arith, std::size_t rows, std::size_t cols, std::vector<T> a, bool want_u, bool want_uinv, bool want_v)
      : ar(std::move(arith)), rows(rows), cols(cols), a(std::move(a)) {
    if (want_u) u = identity(rows);
    if (want_uinv) uinv = identity(rows);
    if (want_v) v = identity(cols);
  }

  A ar;
  std::size_t rows, cols;
  std::vector<T> a;
  std::vector<T> u, uinv, v;
  std::size_t rank = 0;

  T& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }

  void run() {
    const std::size_t n = std::min(rows, cols);
    for (std::size_t t = 0; t < n; ++t) {
      if (!place_pivot(t)) break;
      reduce_at(t);
      rank = t + 1;
    }
  }

  std::vector<T> diagonal() {
    std::vector<T> d;
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) d.push_back(at(i, i));
    return d;
  }

 private:
  std::vector<T> identity(std::size_t n) const {
    std::vector<T> id(n * n, T(0));
    for (std::size_t i = 0; i < n; ++i) id[i * n + i] = T(1);
    return id;
  }

  bool place_pivot(std::size_t t) {
    bool found = false;
    std::size_t bi = 0, bj = 0;
    T best{};
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        const T& e = at(i, j);
        if (ar.zero(e)) continue;
        T meas = ar.measure(e);
        if (!found || meas < best) {
          found = true;
          best = meas;
          bi = i;
          bj = j;
        }
      }
    if (!found) return false;
    if (bi != t) swap_rows(t, bi, t);
    if (bj != t) swap_cols(t, bj, t);
    const auto s = ar.split(at(t, t));
    if (s.unit != T(1)) scale_row(t, s.unit_inverse, s.unit, t);
    return true;
  }

  void reduce_at(std::size_t t) {
    for (;;) {
      for (std::size_t i = t + 1; i < rows; ++i)
        if (!ar.zero(at(i, t))) eliminate_row(t, i);
      for (std::size_t j = t + 1; j < cols; ++j)
        if (!ar.zero(at(t, j))) eliminate_col(t, j);
      bool column_clear = true;
      for (std::size_t i = t + 1; i < rows && column_clear; ++i) column_clear = ar.zero(at(i, t));
      if (!column_clear) continue;
      const T p = at(t, t);
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!ar.divides(p, at(i, j))) {
            bad = i;
            break;
          }
      if (bad == rows) return;
      combine_rows(t, bad, T(1), T(1), T(0), T(1), t);
    }
  }

  void eliminate_row(std::size_t t, std::size_t i) {
    const T p = at(t, t), q = at(i, t);
    if (ar.divides(p, q)) {
      const T c = ar.quot(q, p);
      combine_rows(t, i, T(1), T(0), ar.reduce(T(0) - c), T(1), t);
    } else {
      const auto x = ar.xgcd(p, q);
      combine_rows(t, i, x.s, x.t, ar.reduce(T(0) - ar.quot(q, x.g)), ar.reduce(ar.quot(p, x.g)), t);
    }
  }

  void eliminate_col(std::size_t t, std::size_t j) {
    const T p = at(t, t), q = at(t, j);
    if (ar.divides(p, q)) {
      const T c = ar.quot(q, p);
      combine_cols(t, j, T(1), T(0), ar.reduce(T(0) - c), T(1), t);
    } else {
      const auto x = ar.xgcd(p, q);
      combine_cols(t, j, x.s, x.t, ar.reduce(T(0) - ar.quot(q, x.g)), ar.reduce(ar.quot(p, x.g)), t);
    }
  }

  // Row ops touch columns >= from in `a` (earlier columns are zero in active rows).
  void swap_rows(std::size_t i, std::size_t k, std::size_t from) {
    for (std::size_t j = from; j < cols; ++j) std::swap(a[i * cols + j], a[k * cols + j]);
    if (!u.empty())
      for (std::size_t j = 0; j < rows; ++j) std::swap(u[i * rows + j], u[k * rows + j]);
    if (!uinv.empty())
      for (std::size_t r = 0; r < rows; ++r) std::swap(uinv[r * rows + i], uinv[r * rows + k]);
  }

  void scale_row(std::size_t i, const T& w, const T& winv, std::size_t from) {
    for (std::size_t j = from; j < cols; ++j) a[i * cols + j] = ar.mul(a[i * cols + j], w);
    if (!u.empty())
      for (std::size_t j = 0; j < rows; ++j) u[i * rows + j] = ar.mul(u[i * rows + j], w);
    if (!uinv.empty())
      for (std::size_t r = 0; r < rows; ++r) uinv[r * rows + i] = ar.mul(uinv[r * rows + i], winv);
  }

  // row_t <- al*row_t + be*row_i ; row_i <- ga*row_t + de*row_i  (determinant 1)
  void combine_rows(std::size_t t, std::size_t i, const T& al, const T& be, const T& ga, const T& de,
                    std::size_t from) {
    auto apply = [&](std::vector<T>& m, std::size_t width, std::size_t start) {
      for (std::size_t j = start; j < width; ++j) {
        const T x = m[t * width + j], y = m[i * width + j];
        m[t * width + j] = ar.add(ar.mul(al, x), ar.mul(be, y));
        m[i * width + j] = ar.add(ar.mul(ga, x), ar.mul(de, y));
      }
    };
    apply(a, cols, from);
    if (!u.empty()) apply(u, rows, 0);
    if (!uinv.empty()) {
      // Right-multiply by the inverse [[de, -be], [-ga, al]] on columns (t, i).
      for (std::size_t r = 0; r < rows; ++r) {
        const T x = uinv[r * rows + t], y = uinv[r * rows + i];
        uinv[r * rows + t] = ar.sub(ar.mul(de, x), ar.mul(ga, y));
        uinv[r * rows + i] = ar.sub(ar.mul(al, y), ar.mul(be, x));
      }
    }
  }

  void swap_cols(std::size_t j, std::size_t k, std::size_t from) {
    for (std::size_t i = from; i < rows; ++i) std::swap(a[i * cols + j], a[i * cols + k]);
    if (!v.empty())
      for (std::size_t i = 0; i < cols; ++i) std::swap(v[i * cols + j], v[i * cols + k]);
  }

  // col_t <- al*col_t + be*col_j ; col_j <- ga*col_t + de*col_j
  void combine_cols(std::size_t t, std::size_t j, const T& al, const T& be, const T& ga, const T& de,
                    std::size_t from) {
    auto apply = [&](std::vector<T>& m, std::size_t width, std::size_t height, std::size_t start) {
      for (std::size_t i = start; i < height; ++i) {
        const T x = m[i * width + t], y = m[i * width + j];
        m[i * width + t] = ar.add(ar.mul(al, x), ar.mul(be, y));
        m[i * width + j] = ar.add(ar.mul(ga, x), ar.mul(de, y));
      }
    };
    apply(a, cols, rows, from);
    if (!v.empty()) apply(v, cols, cols, 0);
  }
};

}  // namespace gorhom::detail
