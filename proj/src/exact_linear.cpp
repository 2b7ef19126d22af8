#include "gorhom/exact_linear.hpp"

#include <stdexcept>

#include "smith_engine.hpp"

namespace gorhom {

namespace {

struct RawSmith {
  std::vector<Int> diag;
  std::size_t rank = 0;
  Matrix u, uinv, v;
};

template <class A, class In, class Out>
RawSmith run_engine(A arith, const Matrix& a, SNFOptions opts, In in, Out out) {
  using T = typename A::T;
  std::vector<T> data;
  data.reserve(a.entries().size());
  for (const auto& e : a.entries()) data.push_back(in(e));
  detail::Smith<A> s(arith, a.rows(), a.cols(), std::move(data), opts.u, opts.u_inverse, opts.v);
  s.run();
  RawSmith r;
  r.rank = s.rank;
  for (const auto& x : s.diagonal()) r.diag.push_back(out(x));
  auto pack = [&](const std::vector<T>& m, std::size_t n) {
    std::vector<Int> e;
    e.reserve(m.size());
    for (const auto& x : m) e.push_back(out(x));
    return Matrix(a.ring(), n, n, std::move(e));
  };
  if (opts.u) r.u = pack(s.u, a.rows());
  if (opts.u_inverse) r.uinv = pack(s.uinv, a.rows());
  if (opts.v) r.v = pack(s.v, a.cols());
  return r;
}

RawSmith smith(const Matrix& a, SNFOptions opts) {
  const Ring& ring = a.ring();
  if (ring.is_integers()) {
    auto id = [](const Int& x) { return x; };
    return run_engine(detail::IntegerArith{}, a, opts, id, id);
  }
  const Int& m = ring.modulus();
  if (m < Int(1L << 31)) {
    return run_engine(
        detail::SmallModArith{m.get_si()}, a, opts, [](const Int& x) { return static_cast<std::int64_t>(x.get_si()); },
        [](std::int64_t x) { return Int(static_cast<long>(x)); });
  }
  auto id = [](const Int& x) { return x; };
  return run_engine(detail::BigModArith{m}, a, opts, id, id);
}

}  // namespace

std::vector<Int> SNFResult::invariants() const {
  std::vector<Int> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(d.at(i, i));
  return out;
}

SNFResult snf(const Matrix& a, SNFOptions opts) {
  RawSmith r = smith(a, opts);
  SNFResult res;
  res.a = a;
  res.rank = r.rank;
  res.d = Matrix(a.ring(), a.rows(), a.cols());
  for (std::size_t i = 0; i < r.diag.size(); ++i) res.d.set(i, i, r.diag[i]);
  res.u = std::move(r.u);
  res.v = std::move(r.v);
  res.u_inverse = std::move(r.uinv);
  return res;
}

LinearSystem::LinearSystem(const Matrix& a) : a_(a) {
  RawSmith r = smith(a, {true, true, false});
  u_ = std::move(r.u);
  v_ = std::move(r.v);
  d_ = std::move(r.diag);
  rank_ = r.rank;
}

std::optional<Matrix> LinearSystem::solve(const Matrix& b) const {
  if (b.rows() != a_.rows()) throw std::invalid_argument("solve: dimension mismatch");
  const Ring& ring = a_.ring();
  const Matrix c = u_ * b;
  Matrix y(ring, a_.cols(), b.cols());
  for (std::size_t k = 0; k < b.cols(); ++k) {
    for (std::size_t i = 0; i < a_.rows(); ++i) {
      const Int& ci = c.at(i, k);
      if (i < rank_) {
        if (!mpz_divisible_p(ci.get_mpz_t(), d_[i].get_mpz_t())) return std::nullopt;
        y.set(i, k, ci / d_[i]);
      } else if (ci != 0) {
        return std::nullopt;
      }
    }
  }
  return v_ * y;
}

Matrix LinearSystem::kernel() const {
  const Ring& ring = a_.ring();
  std::vector<Matrix> cols;
  if (ring.is_finite()) {
    const Int& m = ring.modulus();
    for (std::size_t i = 0; i < rank_; ++i)
      if (d_[i] != 1) cols.push_back(v_.column(i).scaled(m / d_[i]));
  }
  for (std::size_t i = rank_; i < a_.cols(); ++i) cols.push_back(v_.column(i));
  // over ℤ, sign so the first nonzero entry is positive
  if (ring.is_integers())
    for (auto& c : cols)
      for (std::size_t r = 0; r < c.rows(); ++r)
        if (c.at(r, 0) != 0) {
          if (c.at(r, 0) < 0) c = -c;
          break;
        }
  Matrix k(ring, a_.cols(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) k.paste(0, j, cols[j]);
  return k;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) { return LinearSystem(a).solve(b); }

Matrix kernel_generators(const Matrix& a) { return LinearSystem(a).kernel(); }

}  // namespace gorhom
