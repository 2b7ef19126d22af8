#include "gorhom/complex.hpp"

#include <algorithm>
#include <limits>

namespace gorhom {

namespace {

int sign(int k) { return k % 2 == 0 ? 1 : -1; }

FPModule concat(const Ring& ring, const std::vector<FPModule>& parts) {
  std::vector<Int> o;
  for (const auto& p : parts) o.insert(o.end(), p.orders().begin(), p.orders().end());
  return FPModule(ring, std::move(o));
}

void put(Matrix& m, std::size_t r0, std::size_t c0, const Matrix& b, int s = 1) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (b.at(i, j) != 0) m.add_to(r0 + i, c0 + j, s * b.at(i, j));
}

Matrix rows_of(const Matrix& c, std::size_t off, std::size_t n) { return c.block(off, 0, n, c.cols()); }

Matrix unit_column(const Ring& ring, std::size_t n, std::size_t i) {
  Matrix e(ring, n, 1);
  e.set(i, 0, 1);
  return e;
}

// Build a complex from per-degree terms and a boundary function over [lo, hi].
template <class F>
ChainComplex assemble(const Ring& ring, int lo, int hi, const std::map<int, FPModule>& terms, F&& boundary) {
  if (hi < lo) return ChainComplex::zero(ring);
  std::vector<FPModule> t;
  std::vector<ModuleHom> d;
  for (int n = lo; n <= hi; ++n) t.push_back(terms.at(n));
  for (int n = lo + 1; n <= hi; ++n) d.push_back(boundary(n));
  return ChainComplex(ring, lo, std::move(t), std::move(d));
}

}  // namespace

// ---------------------------------------------------------------- complexes

ChainComplex::ChainComplex(Ring ring, int lo, std::vector<FPModule> terms, std::vector<ModuleHom> boundaries)
    : ring_(std::move(ring)), lo_(lo), terms_(std::move(terms)) {
  if (terms_.empty()) terms_.push_back(FPModule::zero(ring_));
  if (boundaries.size() + 1 != terms_.size()) throw std::invalid_argument("complex: need one boundary per adjacent pair");
  for (const auto& t : terms_)
    if (t.ring() != ring_) throw std::invalid_argument("complex: ring mismatch");
  d_.push_back(ModuleHom::zero(terms_[0], FPModule::zero(ring_)));
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (boundaries[i].src() != terms_[i + 1] || boundaries[i].dst() != terms_[i])
      throw std::invalid_argument("complex: boundary at degree " + std::to_string(lo_ + int(i) + 1) + " has wrong shape");
    d_.push_back(std::move(boundaries[i]));
  }
  for (std::size_t i = 2; i < d_.size(); ++i)
    if (!(d_[i - 1] * d_[i]).is_zero())
      throw CheckFailed("∂² ≠ 0 at degree " + std::to_string(lo_ + int(i)));
}

ChainComplex ChainComplex::zero(const Ring& ring) { return ChainComplex(ring, 0, {}, {}); }

FPModule ChainComplex::term(int n) const {
  if (n < lo_ || n > hi()) return FPModule::zero(ring_);
  return terms_[n - lo_];
}

ModuleHom ChainComplex::d(int n) const {
  if (n > lo_ && n <= hi()) return d_[n - lo_];
  return ModuleHom::zero(term(n), term(n - 1));
}

bool ChainComplex::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const FPModule& t) { return t.is_zero(); });
}

bool ChainComplex::is_finite() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const FPModule& t) { return t.is_finite(); });
}

ChainComplex ChainComplex::trimmed() const {
  int a = lo_, b = hi();
  while (a <= b && term(a).is_zero()) ++a;
  while (b >= a && term(b).is_zero()) --b;
  if (a > b) return zero(ring_);
  std::vector<FPModule> t;
  std::vector<ModuleHom> d;
  for (int n = a; n <= b; ++n) t.push_back(term(n));
  for (int n = a + 1; n <= b; ++n) d.push_back(this->d(n));
  return ChainComplex(ring_, a, std::move(t), std::move(d));
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
  if (a.ring_ != b.ring_) return false;
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  for (int n = lo; n <= hi; ++n)
    if (a.term(n) != b.term(n) || a.d(n) != b.d(n)) return false;
  return true;
}

ChainComplex sphere(int m, const FPModule& c) { return ChainComplex(c.ring(), m, {c}, {}); }

ChainComplex disk(int m, const FPModule& c) { return ChainComplex(c.ring(), m - 1, {c, c}, {ModuleHom::identity(c)}); }

ChainComplex suspension(int k, const ChainComplex& x) {
  std::vector<FPModule> t;
  std::vector<ModuleHom> d;
  for (int n = x.lo(); n <= x.hi(); ++n) t.push_back(x.term(n));
  for (int n = x.lo() + 1; n <= x.hi(); ++n) d.push_back(x.d(n).scaled(sign(k)));
  return ChainComplex(x.ring(), x.lo() + k, std::move(t), std::move(d));
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  if (a.ring() != b.ring()) throw std::invalid_argument("direct sum: ring mismatch");
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::map<int, FPModule> t;
  for (int n = lo; n <= hi; ++n) t[n] = FPModule::direct_sum(a.term(n), b.term(n));
  return assemble(a.ring(), lo, hi, t, [&](int n) { return ModuleHom::direct_sum(a.d(n), b.d(n)); });
}

Int exponent(const ChainComplex& x) {
  Int e = 1;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    if (!x.term(n).is_finite()) throw Refused("complex has a term with a free Z summand");
    e = lcm(e, x.term(n).exponent());
  }
  return e;
}

// ---------------------------------------------------------------- chain maps

ChainMap::ChainMap(ChainComplex src, ChainComplex dst, std::map<int, ModuleHom> components)
    : src_(std::move(src)), dst_(std::move(dst)) {
  if (src_.ring() != dst_.ring()) throw std::invalid_argument("chain map: ring mismatch");
  for (auto& [n, f] : components) {
    if (f.src() != src_.term(n) || f.dst() != dst_.term(n))
      throw std::invalid_argument("chain map: component at degree " + std::to_string(n) + " has wrong shape");
    if (!f.is_zero()) comps_.emplace(n, std::move(f));
  }
  const int lo = std::min(src_.lo(), dst_.lo()), hi = std::max(src_.hi(), dst_.hi()) + 1;
  for (int n = lo; n <= hi; ++n)
    if (dst_.d(n) * at(n) != at(n - 1) * src_.d(n))
      throw CheckFailed("chain map does not commute with the boundaries at degree " + std::to_string(n));
}

ChainMap ChainMap::identity(const ChainComplex& x) {
  std::map<int, ModuleHom> c;
  for (int n = x.lo(); n <= x.hi(); ++n) c.emplace(n, ModuleHom::identity(x.term(n)));
  return ChainMap(x, x, std::move(c));
}

ChainMap ChainMap::zero(const ChainComplex& x, const ChainComplex& y) { return ChainMap(x, y, {}); }

ModuleHom ChainMap::at(int n) const {
  auto it = comps_.find(n);
  if (it != comps_.end()) return it->second;
  return ModuleHom::zero(src_.term(n), dst_.term(n));
}

bool ChainMap::is_zero() const { return comps_.empty(); }

ChainMap ChainMap::compose(const ChainMap& g) const {
  if (g.dst_ != src_) throw std::invalid_argument("chain map compose: mismatch");
  std::map<int, ModuleHom> c;
  for (const auto& [n, h] : g.comps_) c.emplace(n, at(n) * h);
  return ChainMap(g.src_, dst_, std::move(c));
}

ChainMap ChainMap::operator+(const ChainMap& g) const {
  std::map<int, ModuleHom> c;
  for (int n = src_.lo(); n <= src_.hi(); ++n) c.emplace(n, at(n) + g.at(n));
  return ChainMap(src_, dst_, std::move(c));
}

ChainMap ChainMap::operator-(const ChainMap& g) const {
  std::map<int, ModuleHom> c;
  for (int n = src_.lo(); n <= src_.hi(); ++n) c.emplace(n, at(n) - g.at(n));
  return ChainMap(src_, dst_, std::move(c));
}

bool operator==(const ChainMap& a, const ChainMap& b) {
  if (a.src_ != b.src_ || a.dst_ != b.dst_) return false;
  for (int n = a.src_.lo(); n <= a.src_.hi(); ++n)
    if (a.at(n) != b.at(n)) return false;
  return true;
}

bool is_isomorphism(const ChainMap& f) {
  const int lo = std::min(f.src().lo(), f.dst().lo()), hi = std::max(f.src().hi(), f.dst().hi());
  for (int n = lo; n <= hi; ++n)
    if (!is_isomorphism(f.at(n))) return false;
  return true;
}

ChainMap suspension(int k, const ChainMap& f) {
  std::map<int, ModuleHom> c;
  for (int n = f.src().lo(); n <= f.src().hi(); ++n) c.emplace(n + k, f.at(n));
  return ChainMap(suspension(k, f.src()), suspension(k, f.dst()), std::move(c));
}

ModuleHom DegreeMap::at(int k) const {
  auto it = components.find(k);
  if (it != components.end()) return it->second;
  return ModuleHom::zero(src.term(k), dst.term(k + degree));
}

ModuleHom Homotopy::at(int k) const {
  auto it = components.find(k);
  if (it != components.end()) return it->second;
  return ModuleHom::zero(map.src().term(k), map.dst().term(k + 1));
}

bool verify_homotopy(const Homotopy& h) {
  const ChainComplex& x = h.map.src();
  const ChainComplex& y = h.map.dst();
  for (const auto& [k, s] : h.components)
    if (s.src() != x.term(k) || s.dst() != y.term(k + 1)) return false;
  for (int n = std::min(x.lo(), y.lo()) - 1; n <= std::max(x.hi(), y.hi()) + 1; ++n)
    if (h.map.at(n) != y.d(n + 1) * h.at(n) + h.at(n - 1) * x.d(n)) return false;
  return true;
}

std::optional<Homotopy> null_homotopy(const ChainMap& f) {
  const HomPrime hp = hom_prime_data(f.src(), f.dst());
  DegreeMap g{f.src(), f.dst(), 0, {}};
  for (int k = f.src().lo(); k <= f.src().hi(); ++k) g.components.emplace(k, f.at(k));
  const auto s = lift(hp.complex.d(1), hp.coordinates(g));
  if (!s) return std::nullopt;
  Homotopy h{f, hp.element(1, *s).components};
  if (!verify_homotopy(h)) throw CheckFailed("null homotopy failed verification");
  return h;
}

// ---------------------------------------------------------------- homology, kernels

FPModule homology(const ChainComplex& x, int m) { return homology(x.d(m + 1), x.d(m)).module; }

bool is_exact(const ChainComplex& x) {
  for (int m = x.lo(); m <= x.hi(); ++m)
    if (!homology(x, m).is_zero()) return false;
  return true;
}

ComplexKernel kernel(const ChainMap& g) {
  const ChainComplex& b = g.src();
  std::map<int, Kernel> ks;
  std::map<int, FPModule> t;
  for (int n = b.lo(); n <= b.hi(); ++n) {
    ks.emplace(n, kernel(g.at(n)));
    t[n] = ks.at(n).module;
  }
  const ChainComplex k = assemble(b.ring(), b.lo(), b.hi(), t, [&](int n) {
    return *factor_through(ks.at(n - 1).inclusion, b.d(n) * ks.at(n).inclusion);
  });
  std::map<int, ModuleHom> incl;
  for (auto& [n, kn] : ks) incl.emplace(n, kn.inclusion);
  return ComplexKernel{k, ChainMap(k, b, std::move(incl))};
}

ComplexCokernel cokernel(const ChainMap& f) {
  const ChainComplex& b = f.dst();
  std::map<int, Cokernel> cs;
  std::map<int, FPModule> t;
  for (int n = b.lo(); n <= b.hi(); ++n) {
    cs.emplace(n, cokernel(f.at(n)));
    t[n] = cs.at(n).module;
  }
  const ChainComplex q = assemble(b.ring(), b.lo(), b.hi(), t, [&](int n) {
    return ModuleHom(t.at(n), t.at(n - 1), cs.at(n - 1).projection.matrix() * b.d(n).matrix() * cs.at(n).section);
  });
  std::map<int, ModuleHom> proj;
  std::map<int, Matrix> sec;
  for (auto& [n, c] : cs) {
    proj.emplace(n, c.projection);
    sec.emplace(n, c.section);
  }
  return ComplexCokernel{q, ChainMap(b, q, std::move(proj)), std::move(sec)};
}

std::optional<ChainMap> factor_through(const ChainMap& f, const ChainMap& g) {
  std::map<int, ModuleHom> c;
  for (int n = g.src().lo(); n <= g.src().hi(); ++n) {
    auto h = factor_through(f.at(n), g.at(n));
    if (!h) return std::nullopt;
    c.emplace(n, std::move(*h));
  }
  return ChainMap(g.src(), f.src(), std::move(c));
}

ComplexHomology homology(const ChainMap& f, const ChainMap& g) {
  if (!(g * f).is_zero()) throw CheckFailed("homology of chain maps: composite is nonzero");
  ComplexKernel cyc = kernel(g);
  const auto into = factor_through(cyc.inclusion, f);
  if (!into) throw CheckFailed("homology of chain maps: image not inside the kernel");
  ComplexCokernel q = cokernel(*into);
  return ComplexHomology{q.complex, std::move(cyc), q.projection, std::move(q.section)};
}

// ---------------------------------------------------------------- tensor

const Block<TensorSpace>* TensorComplex::find(int n, int k) const {
  auto it = blocks.find(n);
  if (it == blocks.end()) return nullptr;
  for (const auto& b : it->second)
    if (b.k == k) return &b;
  return nullptr;
}

namespace {

// ∂x⊗y part and/or (-1)^k x⊗∂y part of the tensor boundary at degree n.
ModuleHom tensor_boundary(const TensorComplex& t, const std::map<int, FPModule>& terms, int n, bool x_part, bool y_part) {
  const FPModule src = terms.count(n) ? terms.at(n) : FPModule::zero(t.x.ring());
  const FPModule dst = terms.count(n - 1) ? terms.at(n - 1) : FPModule::zero(t.x.ring());
  Matrix m(t.x.ring(), dst.gens(), src.gens());
  if (t.blocks.count(n))
    for (const auto& b : t.blocks.at(n)) {
      const int j = n - b.k;
      if (x_part)
        if (const auto* tb = t.find(n - 1, b.k - 1))
          put(m, tb->offset, b.offset,
              tensor_map(b.space, tb->space, t.x.d(b.k), ModuleHom::identity(t.y.term(j))).matrix());
      if (y_part)
        if (const auto* tb = t.find(n - 1, b.k))
          put(m, tb->offset, b.offset,
              tensor_map(b.space, tb->space, ModuleHom::identity(t.x.term(b.k)), t.y.d(j)).matrix(), sign(b.k));
    }
  return ModuleHom(src, dst, m);
}

}  // namespace

TensorComplex tensor_data(const ChainComplex& x, const ChainComplex& y) {
  if (x.ring() != y.ring()) throw std::invalid_argument("tensor: ring mismatch");
  TensorComplex t{x, y, ChainComplex::zero(x.ring()), {}};
  const int lo = x.lo() + y.lo(), hi = x.hi() + y.hi();
  std::map<int, FPModule> terms;
  for (int n = lo; n <= hi; ++n) {
    std::vector<FPModule> parts;
    std::size_t off = 0;
    for (int k = x.lo(); k <= x.hi(); ++k) {
      if (n - k < y.lo() || n - k > y.hi()) continue;
      TensorSpace s(x.term(k), y.term(n - k));
      if (s.module().is_zero()) continue;
      parts.push_back(s.module());
      t.blocks[n].push_back(Block<TensorSpace>{k, std::move(s), off});
      off += parts.back().gens();
    }
    terms[n] = concat(x.ring(), parts);
  }
  t.complex = assemble(x.ring(), lo, hi, terms, [&](int n) { return tensor_boundary(t, terms, n, true, true); });
  return t;
}

ChainComplex tensor(const ChainComplex& x, const ChainComplex& y) { return tensor_data(x, y).complex; }

ChainMap tensor_map(const TensorComplex& from, const TensorComplex& to, const ChainMap& f, const ChainMap& g) {
  std::map<int, ModuleHom> c;
  for (const auto& [n, bs] : from.blocks) {
    const FPModule src = from.complex.term(n), dst = to.complex.term(n);
    Matrix m(src.ring(), dst.gens(), src.gens());
    for (const auto& b : bs)
      if (const auto* tb = to.find(n, b.k))
        put(m, tb->offset, b.offset, tensor_map(b.space, tb->space, f.at(b.k), g.at(n - b.k)).matrix());
    c.emplace(n, ModuleHom(src, dst, m));
  }
  return ChainMap(from.complex, to.complex, std::move(c));
}

BarTensor bar_tensor_data(const ChainComplex& x, const ChainComplex& y) {
  BarTensor bt{tensor_data(x, y), ChainComplex::zero(x.ring()), {}};
  const ChainComplex& t = bt.tensor.complex;
  std::map<int, FPModule> terms, tt;
  for (int n = t.lo(); n <= t.hi(); ++n) {
    bt.quotients.emplace(n, cokernel(t.d(n + 1)));
    terms[n] = bt.quotients.at(n).module;
    tt[n] = t.term(n);
  }
  bt.complex = assemble(x.ring(), t.lo(), t.hi(), terms, [&](int n) {
    const ModuleHom dx = tensor_boundary(bt.tensor, tt, n, true, false);
    return ModuleHom(terms.at(n), terms.at(n - 1),
                     bt.quotients.at(n - 1).projection.matrix() * dx.matrix() * bt.quotients.at(n).section);
  });
  return bt;
}

ChainComplex bar_tensor(const ChainComplex& x, const ChainComplex& y) { return bar_tensor_data(x, y).complex; }

ChainMap bar_tensor_map(const BarTensor& from, const BarTensor& to, const ChainMap& f, const ChainMap& g) {
  const ChainMap fg = tensor_map(from.tensor, to.tensor, f, g);
  std::map<int, ModuleHom> c;
  for (const auto& [n, q] : from.quotients) {
    const FPModule dst = to.complex.term(n);
    Matrix m = to.quotients.count(n) ? to.quotients.at(n).projection.matrix() * fg.at(n).matrix() * q.section
                                     : Matrix(q.module.ring(), 0, q.module.gens());
    c.emplace(n, ModuleHom(q.module, dst, m));
  }
  return ChainMap(from.complex, to.complex, std::move(c));
}

// ---------------------------------------------------------------- Hom′ and Hom̄

namespace {

// Post-composition part (and optionally the -(-1)^n f∂ part) of the Hom′ boundary at degree n.
ModuleHom hom_boundary(const HomPrime& h, const std::map<int, FPModule>& terms, int n, bool pre_part) {
  const FPModule src = terms.count(n) ? terms.at(n) : FPModule::zero(h.x.ring());
  const FPModule dst = terms.count(n - 1) ? terms.at(n - 1) : FPModule::zero(h.x.ring());
  Matrix m(h.x.ring(), dst.gens(), src.gens());
  auto find = [&](int deg, int k) -> const Block<HomSpace>* {
    auto it = h.blocks.find(deg);
    if (it == h.blocks.end()) return nullptr;
    for (const auto& b : it->second)
      if (b.k == k) return &b;
    return nullptr;
  };
  if (h.blocks.count(n))
    for (const auto& b : h.blocks.at(n)) {
      if (const auto* tb = find(n - 1, b.k)) put(m, tb->offset, b.offset, hom_post(b.space, tb->space, h.y.d(n + b.k)).matrix());
      if (pre_part)
        if (const auto* tb = find(n - 1, b.k + 1))
          put(m, tb->offset, b.offset, hom_pre(b.space, tb->space, h.x.d(b.k + 1)).matrix(), -sign(n));
    }
  return ModuleHom(src, dst, m);
}

}  // namespace

namespace {

// Hom′(X,Y) restricted to degrees [lo, hi] of its natural window.
HomPrime hom_prime_window(const ChainComplex& x, const ChainComplex& y, int lo, int hi) {
  if (x.ring() != y.ring()) throw std::invalid_argument("hom: ring mismatch");
  HomPrime h{x, y, ChainComplex::zero(x.ring()), {}};
  lo = std::max(lo, y.lo() - x.hi());
  hi = std::min(hi, y.hi() - x.lo());
  std::map<int, FPModule> terms;
  for (int n = lo; n <= hi; ++n) {
    std::vector<FPModule> parts;
    std::size_t off = 0;
    for (int k = x.lo(); k <= x.hi(); ++k) {
      if (n + k < y.lo() || n + k > y.hi()) continue;
      HomSpace s(x.term(k), y.term(n + k));
      if (s.module().is_zero()) continue;
      parts.push_back(s.module());
      h.blocks[n].push_back(Block<HomSpace>{k, std::move(s), off});
      off += parts.back().gens();
    }
    terms[n] = concat(x.ring(), parts);
  }
  h.complex = assemble(x.ring(), lo, hi, terms, [&](int n) { return hom_boundary(h, terms, n, true); });
  return h;
}

}  // namespace

HomPrime hom_prime_data(const ChainComplex& x, const ChainComplex& y) {
  return hom_prime_window(x, y, std::numeric_limits<int>::min() / 2, std::numeric_limits<int>::max() / 2);
}

ChainComplex hom_prime(const ChainComplex& x, const ChainComplex& y) { return hom_prime_data(x, y).complex; }

DegreeMap HomPrime::element(int n, const Matrix& coords) const {
  DegreeMap f{x, y, n, {}};
  if (blocks.count(n))
    for (const auto& b : blocks.at(n)) f.components.emplace(b.k, b.space.map(rows_of(coords, b.offset, b.space.module().gens())));
  return f;
}

Matrix HomPrime::coordinates(const DegreeMap& f) const {
  Matrix c(x.ring(), complex.term(f.degree).gens(), 1);
  if (blocks.count(f.degree))
    for (const auto& b : blocks.at(f.degree)) c.paste(b.offset, 0, b.space.coordinates(f.at(b.k)));
  return c;
}

BarHom bar_hom_data(const ChainComplex& x, const ChainComplex& y) {
  BarHom bh{hom_prime_data(x, y), ChainComplex::zero(x.ring()), {}};
  const ChainComplex& hc = bh.hom.complex;
  std::map<int, FPModule> terms, ht;
  for (int n = hc.lo(); n <= hc.hi(); ++n) ht[n] = hc.term(n);
  for (int n = hc.lo(); n <= hc.hi(); ++n) {
    Kernel k = kernel(hc.d(n));
    terms[n] = k.module;
    bh.inclusions.emplace(n, std::move(k.inclusion));
  }
  bh.complex = assemble(x.ring(), hc.lo(), hc.hi(), terms, [&](int n) {
    return *factor_through(bh.inclusions.at(n - 1), hom_boundary(bh.hom, ht, n, false) * bh.inclusions.at(n));
  });
  return bh;
}

ChainComplex bar_hom(const ChainComplex& x, const ChainComplex& y) { return bar_hom_data(x, y).complex; }

BarHom bar_hom_cycles(const ChainComplex& x, const ChainComplex& y, int n) {
  BarHom bh{hom_prime_window(x, y, n - 1, n), ChainComplex::zero(x.ring()), {}};
  Kernel k = kernel(bh.hom.complex.d(n));
  bh.complex = sphere(n, k.module);
  bh.inclusions.emplace(n, std::move(k.inclusion));
  return bh;
}

DegreeMap BarHom::element(int n, const Matrix& coords) const {
  if (!inclusions.count(n)) return DegreeMap{hom.x, hom.y, n, {}};
  return hom.element(n, inclusions.at(n).apply(coords));
}

ChainMap BarHom::chain_map(const Matrix& coords) const {
  return ChainMap(hom.x, hom.y, element(0, coords).components);
}

std::optional<Matrix> BarHom::coordinates(const DegreeMap& f) const {
  if (!inclusions.count(f.degree)) {
    for (const auto& [k, c] : f.components)
      if (!c.is_zero()) return std::nullopt;
    return Matrix(hom.x.ring(), 0, 1);
  }
  return lift(inclusions.at(f.degree), hom.coordinates(f));
}

ChainMap bar_hom_pre(const BarHom& from, const BarHom& to, const ChainMap& p) {
  std::map<int, ModuleHom> c;
  for (const auto& [n, incl] : from.inclusions) {
    const FPModule src = from.hom.complex.term(n), dst = to.hom.complex.term(n);
    Matrix m(src.ring(), dst.gens(), src.gens());
    if (from.hom.blocks.count(n) && to.hom.blocks.count(n))
      for (const auto& b : from.hom.blocks.at(n))
        for (const auto& tb : to.hom.blocks.at(n))
          if (tb.k == b.k) put(m, tb.offset, b.offset, hom_pre(b.space, tb.space, p.at(b.k)).matrix());
    const ModuleHom pre(src, dst, m);
    if (!to.inclusions.count(n)) {
      c.emplace(n, ModuleHom::zero(from.complex.term(n), to.complex.term(n)));
      continue;
    }
    auto h = factor_through(to.inclusions.at(n), pre * incl);
    if (!h) throw CheckFailed("precomposition does not preserve cycles");
    c.emplace(n, std::move(*h));
  }
  return ChainMap(from.complex, to.complex, std::move(c));
}

// ---------------------------------------------------------------- Pontryagin duals

ChainComplex pontryagin(const ChainComplex& x) { return pontryagin(x, exponent(x)); }

namespace {

FPModule stand_in(const Ring& ring, const Int& n) {
  return n == 1 ? FPModule::zero(ring) : FPModule::cyclic(ring, n);
}

void check_dual_modulus(const ChainComplex& x, const Int& n) {
  const Int e = exponent(x);
  if (!mpz_divisible_p(n.get_mpz_t(), e.get_mpz_t()))
    throw std::invalid_argument("pontryagin: exponent " + e.get_str() + " does not divide " + n.get_str());
}

}  // namespace

ChainComplex pontryagin(const ChainComplex& x, const Int& n) {
  check_dual_modulus(x, n);
  const FPModule q = stand_in(x.ring(), n);
  const int lo = -x.hi() - 1, hi = -x.lo() - 1;
  std::map<int, FPModule> terms;
  for (int m = lo; m <= hi; ++m) terms[m] = HomSpace(x.term(-m - 1), q).module();
  return assemble(x.ring(), lo, hi, terms, [&](int m) {
    const HomSpace from(x.term(-m - 1), q), to(x.term(-m), q);
    return hom_pre(from, to, x.d(-m)).scaled(sign(m - 1));
  });
}

ChainMap pontryagin(const ChainMap& f, const Int& n) {
  const FPModule q = stand_in(f.src().ring(), n);
  const ChainComplex ys = pontryagin(f.dst(), n), xs = pontryagin(f.src(), n);
  std::map<int, ModuleHom> c;
  for (int m = ys.lo(); m <= ys.hi(); ++m) {
    const HomSpace from(f.dst().term(-m - 1), q), to(f.src().term(-m - 1), q);
    c.emplace(m, hom_pre(from, to, f.at(-m - 1)));
  }
  return ChainMap(ys, xs, std::move(c));
}

PontryaginIso pontryagin_iso(const ChainComplex& x, const Int& n) {
  const FPModule q = stand_in(x.ring(), n);
  PontryaginIso iso{bar_hom_data(x, disk(0, q)), pontryagin(x, n), {}, {}};
  const ChainComplex& bar = iso.bar.complex;
  std::map<int, ModuleHom> phi, psi;
  for (int m = bar.lo(); m <= bar.hi(); ++m) {
    const FPModule src = bar.term(m), dst = iso.dual.term(m);
    const HomSpace hs(x.term(-m - 1), q);
    Matrix pm(x.ring(), dst.gens(), src.gens());
    for (std::size_t g = 0; g < src.gens(); ++g) {
      const DegreeMap f = iso.bar.element(m, unit_column(x.ring(), src.gens(), g));
      pm.paste(0, g, hs.coordinates(f.at(-m - 1).scaled(sign(m))));
    }
    phi.emplace(m, ModuleHom(src, dst, pm));
  }
  for (int m = iso.dual.lo(); m <= iso.dual.hi(); ++m) {
    const FPModule src = iso.dual.term(m), dst = bar.term(m);
    const HomSpace hs(x.term(-m - 1), q);
    Matrix sm(x.ring(), dst.gens(), src.gens());
    for (std::size_t g = 0; g < src.gens(); ++g) {
      const ModuleHom gh = hs.map(unit_column(x.ring(), src.gens(), g));
      DegreeMap f{x, iso.bar.hom.y, m, {}};
      f.components.emplace(-m - 1, gh.scaled(sign(m)));
      f.components.emplace(-m, gh * x.d(-m));
      const auto c = iso.bar.coordinates(f);
      if (!c) throw CheckFailed("pontryagin iso: inverse image is not a cycle");
      sm.paste(0, g, *c);
    }
    psi.emplace(m, ModuleHom(src, dst, sm));
  }
  iso.phi = ChainMap(bar, iso.dual, std::move(phi));
  iso.psi = ChainMap(iso.dual, bar, std::move(psi));
  return iso;
}

}  // namespace gorhom
