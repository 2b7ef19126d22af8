#include "gorhom/graded_bridge.hpp"

#include "gorhom/random.hpp"

namespace gorhom {

GradedAModule GradedAModule::free(const Ring& base, int degree) {
  return GradedAModule{disk(degree, FPModule::free(base, 1))};
}

GradedAModule GradedAModule::trivial(const FPModule& n, int degree) { return GradedAModule{sphere(degree, n)}; }

ChainComplex phi(const GradedAModule& m) { return m.carrier; }
GradedAModule psi(const ChainComplex& x) { return GradedAModule{x}; }

bool is_a_linear(const GradedAHom& f) {
  const ChainComplex& x = f.src.carrier;
  const ChainComplex& y = f.dst.carrier;
  auto piece = [&](int n) {
    auto it = f.pieces.find(n);
    return it != f.pieces.end() ? it->second : ModuleHom::zero(x.term(n), y.term(n));
  };
  for (const auto& [n, g] : f.pieces)
    if (g.src() != x.term(n) || g.dst() != y.term(n)) return false;
  const int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi()) + 1;
  for (int n = lo; n <= hi; ++n)
    if (y.d(n) * piece(n) != piece(n - 1) * x.d(n)) return false;
  return true;
}

ChainMap phi(const GradedAHom& f) {
  if (!is_a_linear(f)) throw CheckFailed("graded map does not commute with x");
  return ChainMap(f.src.carrier, f.dst.carrier, f.pieces);
}

GradedAHom psi(const ChainMap& f) {
  GradedAHom g{psi(f.src()), psi(f.dst()), {}};
  for (int n = f.src().lo(); n <= f.src().hi(); ++n)
    if (!f.at(n).is_zero()) g.pieces.emplace(n, f.at(n));
  return g;
}

GradedAModule a_tensor(const GradedAModule& m, const GradedAModule& n) {
  if (m.base() != n.base()) throw std::invalid_argument("a_tensor: base ring mismatch");
  return psi(bar_tensor(phi(m), phi(n)));
}

FPModule ext_a(unsigned i, const GradedAModule& m, const GradedAModule& n) {
  if (m.base() != n.base()) throw std::invalid_argument("ext_a: base ring mismatch");
  return ext_ch(i, phi(m), phi(n));
}

GradedAModule shift(const GradedAModule& n, int s) { return psi(suspension(-s, phi(n))); }

std::map<int, FPModule> ext_a_shifts(unsigned i, const GradedAModule& m, const GradedAModule& n) {
  if (m.base() != n.base()) throw std::invalid_argument("ext_a: base ring mismatch");
  std::map<int, FPModule> out;
  const ChainComplex x = phi(m).trimmed(), y = phi(n).trimmed();
  if (x.is_zero() || y.is_zero()) return out;
  // the i-th resolution term lives in [x.lo - 1 - i, x.hi]; N(s) in [y.lo - s, y.hi - s]
  const int s_lo = y.lo() - x.hi() - 1, s_hi = y.hi() - x.lo() + static_cast<int>(i) + 2;
  const ComplexResolution r = disk_resolution(x, i + 1);
  for (int s = s_lo; s <= s_hi; ++s) {
    FPModule e = ext_ch(i, r, suspension(-s, y));
    if (!e.is_zero()) out.emplace(s, std::move(e));
  }
  return out;
}

FPModule ext_a_total(unsigned i, const GradedAModule& m, const GradedAModule& n) {
  FPModule sum = FPModule::zero(m.base());
  for (const auto& [s, e] : ext_a_shifts(i, m, n)) sum = FPModule::direct_sum(sum, e);
  return sum;
}

ChainComplex tor_a(unsigned i, const GradedAModule& m, const GradedAModule& n) {
  if (m.base() != n.base()) throw std::invalid_argument("tor_a: base ring mismatch");
  return bar_tor(i, phi(m), phi(n));
}

// ---------------------------------------------------------------- dg classes

std::string dg_kind_name(DgKind k) {
  switch (k) {
    case DgKind::Projective: return "dg-projective";
    case DgKind::Injective: return "dg-injective";
    case DgKind::Flat: return "dg-flat";
  }
  return "?";
}

namespace {

Dimension term_dimension(DgKind kind, const FPModule& m) {
  switch (kind) {
    case DgKind::Projective: return pd(m);
    case DgKind::Injective: return id(m);
    case DgKind::Flat: return fd(m);
  }
  return std::nullopt;
}

const char* dimension_label(DgKind kind) {
  switch (kind) {
    case DgKind::Projective: return "pd";
    case DgKind::Injective: return "id";
    case DgKind::Flat: return "fd";
  }
  return "?";
}

// 0 → R/(p) → R/(p²) → R/(p) → 0 over ℤ/m with p² | m, or ℤ -2-> ℤ → ℤ/2 over ℤ,
// placed so the middle term sits in degree n.
std::vector<ChainComplex> short_exact_complexes(const Ring& ring, int n) {
  std::vector<ChainComplex> out;
  auto three = [&](const FPModule& a, const FPModule& b, const FPModule& c, const Matrix& f, const Matrix& g) {
    out.emplace_back(ring, n - 1, std::vector<FPModule>{c, b, a}, std::vector<ModuleHom>{ModuleHom(b, c, g), ModuleHom(a, b, f)});
  };
  if (ring.is_integers()) {
    const FPModule z = FPModule::free(ring, 1), t = FPModule::cyclic(ring, 2);
    three(z, z, t, Matrix::column_vector(ring, {2}), Matrix::column_vector(ring, {1}));
    return out;
  }
  for (const auto& [p, v] : factorize(ring.modulus())) {
    if (v < 2) continue;
    const FPModule a = FPModule::cyclic(ring, p), b = FPModule::cyclic(ring, p * p);
    three(a, b, a, Matrix::column_vector(ring, {p}), Matrix::column_vector(ring, {1}));
  }
  return out;
}

}  // namespace

std::vector<ChainComplex> dg_test_family(DgKind kind, const Ring& ring, unsigned r, int lo, int hi) {
  std::vector<ChainComplex> out;
  // over ℤ with r ≥ 1 the orthogonal cycles are injective, and only 0 is finitely generated
  if (ring.is_integers() && r >= 1) return out;
  if (kind == DgKind::Injective && ring.is_integers()) throw Refused("dg-injective test over Z");
  std::vector<FPModule> pieces;
  if (ring.is_integers()) {
    pieces = {FPModule::free(ring, 1), FPModule::cyclic(ring, 2), FPModule::cyclic(ring, 3)};
  } else {
    for (const Int& d : divisors(ring.modulus()))
      if (d > 1) pieces.push_back(FPModule::cyclic(ring, d));
  }
  for (int n = lo; n <= hi + 1; ++n)
    for (const FPModule& c : pieces) out.push_back(disk(n, c));
  for (int n = lo; n <= hi; ++n)
    for (ChainComplex& s : short_exact_complexes(ring, n)) out.push_back(std::move(s));
  return out;
}

DgResult dg_class_test(const ChainComplex& x, DgKind kind, unsigned r, std::uint64_t seed) {
  if (kind == DgKind::Injective && x.ring().is_integers()) throw Refused("dg-injective test needs Z/m (no f.g. injectives over Z)");
  DgResult res;
  DgCertificate& cert = res.certificate;
  cert.degreewise = true;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    const Dimension d = term_dimension(kind, x.term(n));
    if (!d || *d > r) {
      cert.degreewise = false;
      cert.trail.push_back("degree " + std::to_string(n) + ": " + dimension_label(kind) + " " + dimension_string(d) + " > " +
                           std::to_string(r));
    }
  }
  if (!cert.degreewise) return res;
  cert.trail.push_back(std::string("bounded, every term has ") + dimension_label(kind) + " <= " + std::to_string(r));

  const ChainComplex xt = x.trimmed();
  if (xt.is_zero()) {
    res.accepted = true;
    return res;
  }
  gen::Engine rng(seed);
  const auto family = dg_test_family(kind, x.ring(), r, xt.lo(), xt.hi());
  if (family.empty()) cert.trail.push_back("no finitely generated test complexes for this ring and r");
  for (const ChainComplex& e : family) {
    if (kind == DgKind::Flat) {
      ++cert.samples;
      if (is_exact(tensor(xt, e))) ++cert.samples_passed;
      continue;
    }
    for (int t = 0; t < 3; ++t) {
      const ChainMap f = kind == DgKind::Projective ? gen::chain_map(rng, xt, e) : gen::chain_map(rng, e, xt);
      ++cert.samples;
      if (null_homotopy(f)) ++cert.samples_passed;
    }
  }
  const std::string what = kind == DgKind::Flat ? "tensor products with exact test complexes exact"
                                                : "sampled maps null-homotopic";
  cert.trail.push_back(what + ": " + std::to_string(cert.samples_passed) + "/" + std::to_string(cert.samples));
  res.accepted = cert.samples_passed == cert.samples;
  return res;
}

CorrespondenceReport correspondence_harness(const ChainComplex& x, unsigned r, std::uint64_t seed) {
  if (!x.ring().is_integers()) throw Refused("correspondence harness: base ring must be Z (finite global dimension)");
  CorrespondenceReport rep;
  rep.trail.push_back("base Z: noetherian of global dimension 1");
  rep.dg = dg_class_test(x, DgKind::Projective, r, seed);
  rep.a_side = classify(phi(psi(x)));
  rep.exact = is_exact(x);
  rep.gp_r = rep.a_side.gpd.at_most(r);
  rep.in_w = rep.a_side.w_member;
  rep.trail.push_back(std::string("dg-") + std::to_string(r) + "-projective: " + (rep.dg.accepted ? "yes" : "no"));
  rep.trail.push_back("psi(x) in GP_" + std::to_string(r) + ": " + (rep.gp_r ? "yes" : "no") + " (" + rep.a_side.gpd_line() + ")");
  rep.trail.push_back(std::string("exact: ") + (rep.exact ? "yes" : "no") + "; psi(x) in W: " + (rep.in_w ? "yes" : "no"));
  rep.consistent = (!rep.dg.accepted || rep.gp_r) && rep.exact == rep.in_w;
  return rep;
}

}  // namespace gorhom
