#include "gorhom/complex_derived.hpp"

#include <algorithm>

#include "gorhom/derived.hpp"

namespace gorhom {

namespace {

struct Cover {
  ChainComplex complex;
  ChainMap map;
};

// ⊕_n D^n(F_n) → X with F_n free on the generators of X_n.
// Degree k holds F_k ⊕ F_{k+1}; ∂(a, b) = (0, a); the map is [π_k | ∂_{k+1} π_{k+1}].
Cover disk_cover(const ChainComplex& x) {
  const Ring& ring = x.ring();
  auto rank = [&](int n) { return x.term(n).gens(); };
  const int lo = x.lo() - 1, hi = x.hi();
  std::vector<FPModule> terms;
  for (int k = lo; k <= hi; ++k) terms.push_back(FPModule::free(ring, rank(k) + rank(k + 1)));
  std::vector<ModuleHom> d;
  for (int k = lo + 1; k <= hi; ++k) {
    Matrix m(ring, rank(k - 1) + rank(k), rank(k) + rank(k + 1));
    m.paste(rank(k - 1), 0, Matrix::identity(ring, rank(k)));
    d.emplace_back(terms[k - lo], terms[k - 1 - lo], m);
  }
  ChainComplex p(ring, lo, terms, std::move(d));
  std::map<int, ModuleHom> eps;
  for (int k = lo; k <= hi; ++k)
    eps.emplace(k, ModuleHom(p.term(k), x.term(k), Matrix::hcat(Matrix::identity(ring, rank(k)), x.d(k + 1).matrix())));
  ChainMap e(p, x, std::move(eps));
  return Cover{std::move(p), std::move(e)};
}

ChainMap zero_from_nothing(const ChainComplex& c) { return ChainMap::zero(ChainComplex::zero(c.ring()), c); }
ChainMap zero_to_nothing(const ChainComplex& c) { return ChainMap::zero(c, ChainComplex::zero(c.ring())); }

// Hom̄(P_j, Y) with precomposition maps d[j] : C^j → C^{j+1}.
struct HomCochain {
  std::vector<BarHom> terms;
  std::vector<ChainMap> d;
};

// With `degree` set only that piece of each Hom̄ is built.
HomCochain hom_cochain(const ComplexResolution& r, const ChainComplex& y, std::size_t upto, std::optional<int> degree = {}) {
  HomCochain h;
  const std::size_t top = std::min(upto, r.length());
  for (std::size_t j = 0; j <= top; ++j)
    h.terms.push_back(degree ? bar_hom_cycles(r.terms[j], y, *degree) : bar_hom_data(r.terms[j], y));
  for (std::size_t j = 0; j < top; ++j) h.d.push_back(bar_hom_pre(h.terms[j], h.terms[j + 1], r.maps[j + 1]));
  return h;
}

std::optional<ComplexHomology> cohomology_at(const HomCochain& h, unsigned i) {
  if (i >= h.terms.size()) return std::nullopt;
  const ChainComplex& c = h.terms[i].complex;
  const ChainMap f = i == 0 ? zero_from_nothing(c) : h.d[i - 1];
  const ChainMap g = i < h.d.size() ? h.d[i] : zero_to_nothing(c);
  return homology(f, g);
}

struct TensorChain {
  std::vector<BarTensor> terms;
  std::vector<ChainMap> d;  // d[j] : T_{j+1} → T_j
};

TensorChain tensor_chain(const ComplexResolution& r, const ChainComplex& y, std::size_t upto) {
  TensorChain t;
  const std::size_t top = std::min(upto, r.length());
  const ChainMap id = ChainMap::identity(y);
  for (std::size_t j = 0; j <= top; ++j) t.terms.push_back(bar_tensor_data(r.terms[j], y));
  for (std::size_t j = 0; j < top; ++j) t.d.push_back(bar_tensor_map(t.terms[j + 1], t.terms[j], r.maps[j + 1], id));
  return t;
}

std::optional<ComplexHomology> homology_at(const TensorChain& t, unsigned i) {
  if (i >= t.terms.size()) return std::nullopt;
  const ChainComplex& c = t.terms[i].complex;
  const ChainMap f = i < t.d.size() ? t.d[i] : zero_from_nothing(c);
  const ChainMap g = i == 0 ? zero_to_nothing(c) : t.d[i - 1];
  return homology(f, g);
}

}  // namespace

bool is_projective_complex(const ChainComplex& p) {
  if (!is_exact(p)) return false;
  for (int m = p.lo(); m <= p.hi(); ++m)
    if (!is_projective(kernel(p.d(m)).module)) return false;
  return true;
}

ComplexResolution disk_resolution(const ChainComplex& x, std::size_t len) {
  ComplexResolution r{x, {}, {}};
  if (is_projective_complex(x)) {
    r.terms.push_back(x);
    r.maps.push_back(ChainMap::identity(x));
    return r;
  }
  Cover c = disk_cover(x);
  r.terms.push_back(c.complex);
  r.maps.push_back(c.map);
  ComplexKernel k = kernel(c.map);
  for (std::size_t step = 1; step <= len; ++step) {
    if (k.complex.is_zero()) break;
    if (is_projective_complex(k.complex)) {
      r.terms.push_back(k.complex);
      r.maps.push_back(k.inclusion);
      break;
    }
    Cover next = disk_cover(k.complex);
    r.terms.push_back(next.complex);
    r.maps.push_back(k.inclusion * next.map);
    k = kernel(next.map);
  }
  return r;
}

void verify_complex_resolution(const ComplexResolution& r) {
  if (r.terms.size() != r.maps.size() || r.terms.empty()) throw CheckFailed("resolution: malformed");
  for (std::size_t j = 0; j < r.terms.size(); ++j)
    if (!is_projective_complex(r.terms[j])) throw CheckFailed("resolution term " + std::to_string(j) + " is not projective");
  const ChainComplex& x = r.target;
  for (int n = x.lo(); n <= x.hi(); ++n)
    if (!is_surjective(r.maps[0].at(n))) throw CheckFailed("augmentation not onto at degree " + std::to_string(n));
  for (std::size_t j = 0; j + 1 < r.maps.size(); ++j) {
    const ChainComplex& p = r.terms[j];
    for (int n = p.lo(); n <= p.hi(); ++n) {
      const ModuleHom& f = r.maps[j + 1].at(n);
      const ModuleHom& g = r.maps[j].at(n);
      if (!exact_at(f, g)) throw CheckFailed("resolution not exact at term " + std::to_string(j) + ", degree " + std::to_string(n));
    }
  }
}

FPModule ext_ch(unsigned i, const ChainComplex& x, const ChainComplex& y) {
  return ext_ch(i, disk_resolution(x, i + 1), y);
}

FPModule ext_ch(unsigned i, const ComplexResolution& r, const ChainComplex& y) {
  const ChainComplex& x = r.target;
  const HomCochain h = hom_cochain(r, y, i + 1, 0);
  if (i >= h.terms.size()) return FPModule::zero(x.ring());
  const FPModule c = h.terms[i].complex.term(0);
  const ModuleHom f = i == 0 ? ModuleHom::zero(FPModule::zero(x.ring()), c) : h.d[i - 1].at(0);
  const ModuleHom g = i < h.d.size() ? h.d[i].at(0) : ModuleHom::zero(c, FPModule::zero(x.ring()));
  return homology(f, g).module;
}

ChainComplex bar_ext(unsigned i, const ChainComplex& x, const ChainComplex& y) {
  const ComplexResolution r = disk_resolution(x, i + 1);
  const auto h = cohomology_at(hom_cochain(r, y, i + 1), i);
  return h ? h->complex : ChainComplex::zero(x.ring());
}

ChainComplex bar_tor(unsigned i, const ChainComplex& x, const ChainComplex& y) {
  if (x.ring() != y.ring()) throw std::invalid_argument("bar_tor: ring mismatch");
  const ComplexResolution r = disk_resolution(x, i + 1);
  const auto h = homology_at(tensor_chain(r, y, i + 1), i);
  return h ? h->complex : ChainComplex::zero(x.ring());
}

Dimension pd_complex(const ChainComplex& x) {
  if (!is_exact(x)) return std::nullopt;
  unsigned best = 0;
  for (int m = x.lo(); m <= x.hi(); ++m) {
    const Dimension d = pd(kernel(x.d(m)).module);
    if (!d) return std::nullopt;
    best = std::max(best, *d);
  }
  return best;
}

ExtTorDuality ext_tor_duality(const ChainComplex& x, const ChainComplex& y) {
  if (x.ring() != y.ring()) throw std::invalid_argument("duality: ring mismatch");
  const Ring& ring = x.ring();
  const Int n = exponent(y);
  const ChainComplex yd = pontryagin(y, n);
  const ComplexResolution r = disk_resolution(x, 2);
  const HomCochain hc = hom_cochain(r, yd, 2);
  const TensorChain tc = tensor_chain(r, y, 2);
  const auto e = cohomology_at(hc, 1);
  const auto t = homology_at(tc, 1);
  ExtTorDuality out;
  out.ext = e ? e->complex : ChainComplex::zero(ring);
  out.tor = t ? t->complex : ChainComplex::zero(ring);
  out.dual = pontryagin(out.tor, n);
  if (!e || !t || n == 1) {
    out.map = ChainMap::zero(out.ext, out.dual);
    return out;
  }
  const FPModule q = FPModule::cyclic(ring, n);
  const BarHom& c1 = hc.terms[1];
  const BarTensor& t1 = tc.terms[1];
  std::map<int, ModuleHom> comps;
  for (int deg = out.ext.lo(); deg <= out.ext.hi(); ++deg) {
    const FPModule src = out.ext.term(deg), dst = out.dual.term(deg);
    const int m = -deg - 1;
    const FPModule hm = out.tor.term(m);
    Matrix mat(ring, dst.gens(), src.gens());
    if (!src.is_zero() && !hm.is_zero()) {
      const HomSpace dual_space(hm, q);
      const Cokernel& quotient = t1.quotients.at(m);
      for (std::size_t g = 0; g < src.gens(); ++g) {
        const Matrix z = e->cycles.inclusion.at(deg).apply(e->section.at(deg).column(g));
        const DegreeMap f = c1.element(deg, z);
        Matrix values(ring, 1, hm.gens());
        for (std::size_t h = 0; h < hm.gens(); ++h) {
          const Matrix w = t->cycles.inclusion.at(m).apply(t->section.at(m).column(h));
          const Matrix tw = quotient.section * w;
          Int v = 0;
          const auto bit = t1.tensor.blocks.find(m);
          if (bit == t1.tensor.blocks.end()) continue;
          for (const auto& b : bit->second) {
            const int k = b.k, j = m - k;
            const HomSpace hs(y.term(j), q);
            const ModuleHom fk = f.at(k);
            for (std::size_t a = 0; a < r.terms[1].term(k).gens(); ++a) {
              const ModuleHom phi = hs.map(fk.matrix().column(a));
              for (std::size_t bi = 0; bi < y.term(j).gens(); ++bi)
                if (const auto idx = b.space.index(a, bi)) v += tw.at(b.offset + *idx, 0) * phi.matrix().at(0, bi);
            }
          }
          if (deg % 2 != 0) v = -v;
          values.set(0, h, v % n);
        }
        mat.paste(0, g, dual_space.coordinates(ModuleHom(hm, q, values)));
      }
    }
    comps.emplace(deg, ModuleHom(src, dst, mat));
  }
  out.map = ChainMap(out.ext, out.dual, std::move(comps));
  return out;
}

}  // namespace gorhom
