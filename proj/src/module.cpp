#include "gorhom/module.hpp"

#include <algorithm>
#include <map>

namespace gorhom {

namespace {

Int checked_quotient(const Int& a, const Int& b) {
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
    throw CheckFailed("coordinate " + a.get_str() + " not divisible by " + b.get_str());
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int reduce_by(const Int& x, const Int& order) { return order > 0 ? mod(x, order) : x; }

}  // namespace

// ---------------------------------------------------------------- FPModule

FPModule::FPModule(Ring ring, std::vector<Int> orders) : ring_(std::move(ring)), orders_(std::move(orders)) {
  for (const auto& o : orders_) {
    if (ring_.is_integers()) {
      if (o < 0 || o == 1) throw std::invalid_argument("module order must be 0 or >= 2 over Z, got " + o.get_str());
    } else if (o < 2 || !mpz_divisible_p(ring_.modulus().get_mpz_t(), o.get_mpz_t())) {
      throw std::invalid_argument("module order must be a nontrivial divisor of " + ring_.modulus().get_str() +
                                  ", got " + o.get_str());
    }
  }
}

FPModule FPModule::free(const Ring& ring, std::size_t rank) {
  return FPModule(ring, std::vector<Int>(rank, ring.free_order()));
}

FPModule FPModule::cyclic(const Ring& ring, const Int& order) {
  Int o = ring.is_integers() ? abs(order) : gcd(order, ring.modulus());
  if (o == 1) return zero(ring);
  return FPModule(ring, {o});
}

FPModule FPModule::direct_sum(const FPModule& a, const FPModule& b) {
  if (a.ring_ != b.ring_) throw std::invalid_argument("direct sum: ring mismatch");
  std::vector<Int> o = a.orders_;
  o.insert(o.end(), b.orders_.begin(), b.orders_.end());
  return FPModule(a.ring_, std::move(o));
}

bool FPModule::is_finite() const {
  return std::none_of(orders_.begin(), orders_.end(), [](const Int& o) { return o == 0; });
}

Int FPModule::cardinality() const {
  if (!is_finite()) throw Refused("module has a free Z summand; it is infinite");
  Int c = 1;
  for (const auto& o : orders_) c *= o;
  return c;
}

Int FPModule::exponent() const {
  Int e = 1;
  for (const auto& o : orders_) {
    if (o == 0) return 0;
    e = lcm(e, o);
  }
  return e;
}

Matrix FPModule::relations() const { return Matrix::diagonal(ring_, orders_); }

Matrix FPModule::reduce(Matrix coords) const {
  for (std::size_t i = 0; i < coords.rows(); ++i)
    if (orders_[i] > 0)
      for (std::size_t j = 0; j < coords.cols(); ++j) coords.set(i, j, mod(coords.at(i, j), orders_[i]));
  return coords;
}

bool FPModule::is_zero_element(const Matrix& coords) const { return reduce(coords).is_zero(); }

// ---------------------------------------------------------------- canonical forms

std::string CanonicalForm::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (const auto& d : factors) {
    if (!out.empty()) out += " ⊕ ";
    out += "Z/" + d.get_str();
  }
  for (std::size_t i = 0; i < free_rank; ++i) {
    if (!out.empty()) out += " ⊕ ";
    out += "Z";
  }
  return out;
}

CanonicalForm canonical_form(const FPModule& m) {
  CanonicalForm c;
  c.ring = m.ring();
  // prime → exponents, merged into invariant factors from the top down
  std::map<Int, std::vector<unsigned>> primary;
  for (const auto& o : m.orders()) {
    if (o == 0) {
      ++c.free_rank;
      continue;
    }
    for (const auto& [p, e] : factorize(o)) primary[p].push_back(e);
  }
  std::size_t count = 0;
  for (auto& [p, es] : primary) {
    std::sort(es.rbegin(), es.rend());
    count = std::max(count, es.size());
  }
  std::vector<Int> factors(count, 1);
  for (const auto& [p, es] : primary)
    for (std::size_t k = 0; k < es.size(); ++k) {
      Int pk;
      mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), es[k]);
      factors[count - 1 - k] *= pk;
    }
  c.factors = std::move(factors);
  return c;
}

FPModule from_canonical(const CanonicalForm& c) {
  std::vector<Int> orders = c.factors;
  orders.insert(orders.end(), c.free_rank, Int(0));
  return FPModule(c.ring, std::move(orders));
}

bool isomorphic(const FPModule& a, const FPModule& b) { return canonical_form(a) == canonical_form(b); }

// ---------------------------------------------------------------- presentations

namespace {

// Columns are zero or a single normalized non-unit entry, rows hit at most once.
std::optional<Presentation> diagonal_fast_path(const Ring& ring, std::size_t gens, const Matrix& rels) {
  std::vector<Int> orders(gens, ring.free_order());
  std::vector<bool> used(gens, false);
  for (std::size_t j = 0; j < rels.cols(); ++j) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < gens; ++i) {
      if (rels.at(i, j) == 0) continue;
      if (hit) return std::nullopt;
      hit = i;
    }
    if (!hit) continue;
    const Int& e = rels.at(*hit, j);
    if (used[*hit]) return std::nullopt;
    if (ring.is_integers() ? e < 2 : (e == 1 || !mpz_divisible_p(ring.modulus().get_mpz_t(), e.get_mpz_t())))
      return std::nullopt;
    used[*hit] = true;
    orders[*hit] = e;
  }
  return Presentation{FPModule(ring, std::move(orders)), Matrix::identity(ring, gens), Matrix::identity(ring, gens)};
}

}  // namespace

Presentation present(const Ring& ring, std::size_t gens, const Matrix& rels) {
  if (rels.rows() != gens) throw std::invalid_argument("relation matrix must have one row per generator");
  if (rels.ring() != ring) throw std::invalid_argument("relation matrix over a different ring");
  if (auto fast = diagonal_fast_path(ring, gens, rels)) return *fast;
  const SNFResult s = snf(rels, {true, false, true});
  std::vector<Int> orders;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < gens; ++i) {
    const Int d = i < s.rank ? s.d.at(i, i) : ring.free_order();
    if (d == 1) continue;
    keep.push_back(i);
    orders.push_back(d);
  }
  return Presentation{FPModule(ring, std::move(orders)), s.u.select_rows(keep), s.u_inverse.select_columns(keep)};
}

// ---------------------------------------------------------------- homs

ModuleHom::ModuleHom(FPModule src, FPModule dst, Matrix mat)
    : src_(std::move(src)), dst_(std::move(dst)), mat_(std::move(mat)) {
  if (src_.ring() != dst_.ring() || mat_.ring() != src_.ring()) throw std::invalid_argument("hom: ring mismatch");
  if (mat_.rows() != dst_.gens() || mat_.cols() != src_.gens())
    throw std::invalid_argument("hom: matrix shape " + std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()) +
                                " does not match " + std::to_string(dst_.gens()) + "x" + std::to_string(src_.gens()));
  mat_ = dst_.reduce(std::move(mat_));
  const bool finite_ring = src_.ring().is_finite();
  for (std::size_t j = 0; j < src_.gens(); ++j) {
    const Int& a = src_.order(j);
    if (a == 0 || (finite_ring && src_.is_free_generator(j))) continue;
    for (std::size_t i = 0; i < dst_.gens(); ++i) {
      const Int& f = mat_.at(i, j);
      if (f == 0) continue;
      const Int& b = dst_.order(i);
      const bool ok = b == 0 ? false : mpz_divisible_p(Int(a * f).get_mpz_t(), b.get_mpz_t()) != 0;
      if (!ok) throw CheckFailed("hom does not respect the relation of source generator " + std::to_string(j));
    }
  }
}

ModuleHom ModuleHom::identity(const FPModule& m) { return ModuleHom(m, m, Matrix::identity(m.ring(), m.gens())); }

ModuleHom ModuleHom::zero(const FPModule& src, const FPModule& dst) {
  return ModuleHom(src, dst, Matrix(src.ring(), dst.gens(), src.gens()));
}

Matrix ModuleHom::apply(const Matrix& coords) const { return dst_.reduce(mat_ * coords); }

ModuleHom ModuleHom::compose(const ModuleHom& g) const {
  if (g.dst_ != src_) throw std::invalid_argument("compose: target/source mismatch");
  return ModuleHom(g.src_, dst_, mat_ * g.mat_);
}

ModuleHom ModuleHom::operator+(const ModuleHom& g) const {
  if (g.src_ != src_ || g.dst_ != dst_) throw std::invalid_argument("hom sum: mismatch");
  return ModuleHom(src_, dst_, mat_ + g.mat_);
}

ModuleHom ModuleHom::operator-(const ModuleHom& g) const { return *this + (-g); }

ModuleHom ModuleHom::operator-() const { return ModuleHom(src_, dst_, -mat_); }

ModuleHom ModuleHom::scaled(const Int& c) const { return ModuleHom(src_, dst_, mat_.scaled(c)); }

ModuleHom ModuleHom::direct_sum(const ModuleHom& f, const ModuleHom& g) {
  return ModuleHom(FPModule::direct_sum(f.src_, g.src_), FPModule::direct_sum(f.dst_, g.dst_),
                   Matrix::dsum(f.mat_, g.mat_));
}

ModuleHom sum_injection(const FPModule& a, const FPModule& b, int which) {
  const FPModule s = FPModule::direct_sum(a, b);
  const FPModule& part = which == 0 ? a : b;
  Matrix m(s.ring(), s.gens(), part.gens());
  const std::size_t off = which == 0 ? 0 : a.gens();
  for (std::size_t i = 0; i < part.gens(); ++i) m.set(off + i, i, 1);
  return ModuleHom(part, s, m);
}

ModuleHom sum_projection(const FPModule& a, const FPModule& b, int which) {
  const FPModule s = FPModule::direct_sum(a, b);
  const FPModule& part = which == 0 ? a : b;
  Matrix m(s.ring(), part.gens(), s.gens());
  const std::size_t off = which == 0 ? 0 : a.gens();
  for (std::size_t i = 0; i < part.gens(); ++i) m.set(i, off + i, 1);
  return ModuleHom(s, part, m);
}

// ---------------------------------------------------------------- kernels etc.

namespace {

// [F | diag(orders of dst)]
Matrix relation_block(const Matrix& f, const FPModule& dst) { return Matrix::hcat(f, dst.relations()); }

}  // namespace

Submodule submodule(const FPModule& ambient, const Matrix& gens) {
  const Ring& ring = ambient.ring();
  const std::size_t k = gens.cols();
  const Matrix ker = kernel_generators(relation_block(gens, ambient));
  const Matrix rels = ker.block(0, 0, k, ker.cols());
  Presentation p = present(ring, k, rels);
  ModuleHom incl(p.module, ambient, gens * p.from_module);
  return Submodule{std::move(p.module), std::move(incl), std::move(p.to_module)};
}

Kernel kernel(const ModuleHom& f) {
  const Matrix ker = kernel_generators(relation_block(f.matrix(), f.dst()));
  Submodule s = submodule(f.src(), ker.block(0, 0, f.src().gens(), ker.cols()));
  return Kernel{std::move(s.module), std::move(s.inclusion)};
}

Cokernel cokernel(const ModuleHom& f) {
  Presentation p = present(f.dst().ring(), f.dst().gens(), relation_block(f.matrix(), f.dst()));
  ModuleHom proj(f.dst(), p.module, p.to_module);
  return Cokernel{std::move(p.module), std::move(proj), std::move(p.from_module)};
}

Image image(const ModuleHom& f) {
  Submodule s = submodule(f.dst(), f.matrix());
  ModuleHom co(f.src(), s.module, s.corestriction);
  return Image{std::move(s.module), std::move(s.inclusion), std::move(co)};
}

bool is_injective(const ModuleHom& f) { return kernel(f).module.is_zero(); }
bool is_surjective(const ModuleHom& f) { return cokernel(f).module.is_zero(); }
bool is_isomorphism(const ModuleHom& f) { return is_injective(f) && is_surjective(f); }

std::optional<Matrix> lift(const ModuleHom& f, const Matrix& y) {
  const auto x = solve(relation_block(f.matrix(), f.dst()), y);
  if (!x) return std::nullopt;
  return f.src().reduce(x->block(0, 0, f.src().gens(), y.cols()));
}

std::optional<ModuleHom> factor_through(const ModuleHom& f, const ModuleHom& g) {
  if (f.dst() != g.dst()) throw std::invalid_argument("factor_through: targets differ");
  const auto x = lift(f, g.matrix());
  if (!x) return std::nullopt;
  return ModuleHom(g.src(), f.src(), *x);
}

Homology homology(const ModuleHom& f, const ModuleHom& g) {
  if (f.dst() != g.src()) throw std::invalid_argument("homology: maps not composable");
  Kernel z = kernel(g);
  const auto fz = factor_through(z.inclusion, f);
  if (!fz) throw CheckFailed("homology: composite of consecutive maps is not zero");
  Cokernel c = cokernel(*fz);
  return Homology{std::move(c.module), std::move(z), std::move(c.projection), std::move(c.section)};
}

// ---------------------------------------------------------------- Hom and ⊗

HomSpace::HomSpace(FPModule m, FPModule n) : m_(std::move(m)), n_(std::move(n)) {
  if (m_.ring() != n_.ring()) throw std::invalid_argument("Hom: ring mismatch");
  const Ring& ring = m_.ring();
  index_.assign(n_.gens() * m_.gens(), std::nullopt);
  std::vector<Int> orders;
  for (std::size_t i = 0; i < n_.gens(); ++i)
    for (std::size_t j = 0; j < m_.gens(); ++j) {
      const Int& a = m_.order(j);
      const Int& b = n_.order(i);
      Int step, order;
      if (b == 0) {
        if (a != 0) continue;
        step = 1;
        order = 0;
      } else if (a == 0) {
        step = 1;
        order = b;
      } else {
        order = gcd(a, b);
        step = b / order;
      }
      if (order == 1) continue;
      index_[i * m_.gens() + j] = slots_.size();
      slots_.push_back({i, j, step});
      orders.push_back(order);
    }
  module_ = FPModule(ring, std::move(orders));
}

ModuleHom HomSpace::map(const Matrix& coords) const {
  Matrix f(m_.ring(), n_.gens(), m_.gens());
  for (std::size_t s = 0; s < slots_.size(); ++s) f.set(slots_[s].row, slots_[s].col, coords.at(s, 0) * slots_[s].step);
  return ModuleHom(m_, n_, f);
}

Matrix HomSpace::coordinates(const ModuleHom& f) const {
  if (f.src() != m_ || f.dst() != n_) throw std::invalid_argument("HomSpace::coordinates: wrong hom type");
  Matrix c(m_.ring(), slots_.size(), 1);
  for (std::size_t s = 0; s < slots_.size(); ++s) c.set(s, 0, checked_quotient(f.matrix().at(slots_[s].row, slots_[s].col), slots_[s].step));
  return module_.reduce(c);
}

ModuleHom hom_pre(const HomSpace& from, const HomSpace& to, const ModuleHom& g) {
  if (g.dst() != from.source() || g.src() != to.source() || from.target() != to.target())
    throw std::invalid_argument("hom_pre: incompatible spaces");
  const FPModule& n = from.target();
  Matrix out(n.ring(), to.module().gens(), from.module().gens());
  for (std::size_t s = 0; s < from.module().gens(); ++s) {
    const std::size_t i = from.slot_row(s), j = from.slot_col(s);
    for (std::size_t jp = 0; jp < g.src().gens(); ++jp) {
      const Int& gj = g.matrix().at(j, jp);
      if (gj == 0) continue;
      const auto t = to.slot(i, jp);
      const Int v = reduce_by(from.step(s) * gj, n.order(i));
      if (!t) {
        if (v != 0) throw CheckFailed("hom_pre: value outside Hom");
        continue;
      }
      out.set(*t, s, checked_quotient(v, to.step(*t)));
    }
  }
  return ModuleHom(from.module(), to.module(), out);
}

ModuleHom hom_post(const HomSpace& from, const HomSpace& to, const ModuleHom& f) {
  if (f.src() != from.target() || f.dst() != to.target() || from.source() != to.source())
    throw std::invalid_argument("hom_post: incompatible spaces");
  const FPModule& np = to.target();
  Matrix out(np.ring(), to.module().gens(), from.module().gens());
  for (std::size_t s = 0; s < from.module().gens(); ++s) {
    const std::size_t i = from.slot_row(s), j = from.slot_col(s);
    for (std::size_t ip = 0; ip < np.gens(); ++ip) {
      const Int& fi = f.matrix().at(ip, i);
      if (fi == 0) continue;
      const auto t = to.slot(ip, j);
      const Int v = reduce_by(from.step(s) * fi, np.order(ip));
      if (!t) {
        if (v != 0) throw CheckFailed("hom_post: value outside Hom");
        continue;
      }
      out.set(*t, s, checked_quotient(v, to.step(*t)));
    }
  }
  return ModuleHom(from.module(), to.module(), out);
}

TensorSpace::TensorSpace(FPModule m, FPModule n) : m_(std::move(m)), n_(std::move(n)) {
  if (m_.ring() != n_.ring()) throw std::invalid_argument("tensor: ring mismatch");
  index_.assign(m_.gens() * n_.gens(), std::nullopt);
  std::vector<Int> orders;
  for (std::size_t j = 0; j < m_.gens(); ++j)
    for (std::size_t i = 0; i < n_.gens(); ++i) {
      const Int g = gcd(m_.order(j), n_.order(i));
      if (g == 1) continue;
      index_[j * n_.gens() + i] = orders.size();
      orders.push_back(g);
    }
  module_ = FPModule(m_.ring(), std::move(orders));
}

std::optional<std::size_t> TensorSpace::index(std::size_t j, std::size_t i) const { return index_[j * n_.gens() + i]; }

ModuleHom tensor_map(const TensorSpace& from, const TensorSpace& to, const ModuleHom& f, const ModuleHom& g) {
  if (f.src() != from.left() || g.src() != from.right() || f.dst() != to.left() || g.dst() != to.right())
    throw std::invalid_argument("tensor_map: incompatible spaces");
  Matrix out(f.src().ring(), to.module().gens(), from.module().gens());
  for (std::size_t j = 0; j < from.left().gens(); ++j)
    for (std::size_t i = 0; i < from.right().gens(); ++i) {
      const auto s = from.index(j, i);
      if (!s) continue;
      for (std::size_t jp = 0; jp < to.left().gens(); ++jp) {
        const Int& fj = f.matrix().at(jp, j);
        if (fj == 0) continue;
        for (std::size_t ip = 0; ip < to.right().gens(); ++ip) {
          const Int& gi = g.matrix().at(ip, i);
          if (gi == 0) continue;
          if (const auto t = to.index(jp, ip)) out.add_to(*t, *s, fj * gi);
        }
      }
    }
  return ModuleHom(from.module(), to.module(), out);
}

FPModule hom_module(const FPModule& m, const FPModule& n) { return HomSpace(m, n).module(); }
FPModule tensor_module(const FPModule& m, const FPModule& n) { return TensorSpace(m, n).module(); }

}  // namespace gorhom
