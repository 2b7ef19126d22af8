#include "gorhom/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_set>

namespace gorhom::oracle {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw BoundExceeded(what);
}

std::vector<unsigned> small_primes_of(std::size_t x) {
  std::vector<unsigned> ps;
  for (unsigned p = 2; p * p <= x; ++p)
    if (x % p == 0) {
      ps.push_back(p);
      while (x % p == 0) x /= p;
    }
  if (x > 1) ps.push_back(static_cast<unsigned>(x));
  return ps;
}

// Invariant factors of a finite abelian group G of the given order, from
// killed(d) = |{g : d·g = 0}|.
std::vector<Int> factors_from_killed(std::size_t order, const std::function<std::size_t(unsigned)>& killed) {
  std::map<unsigned, std::vector<unsigned>> exps;  // prime → exponents of cyclic factors
  for (unsigned p : small_primes_of(order)) {
    std::size_t prev = 1;
    unsigned pj = 1;
    std::vector<unsigned> at_least;  // at_least[j-1] = #factors of order ≥ p^j
    for (unsigned j = 1;; ++j) {
      pj *= p;
      const std::size_t cur = killed(pj);
      if (cur == prev) break;
      std::size_t ratio = cur / prev;
      unsigned c = 0;
      while (ratio > 1) {
        ratio /= p;
        ++c;
      }
      at_least.push_back(c);
      prev = cur;
    }
    for (std::size_t j = 0; j < at_least.size(); ++j) {
      const unsigned next = j + 1 < at_least.size() ? at_least[j + 1] : 0;
      for (unsigned c = 0; c < at_least[j] - next; ++c) exps[p].push_back(static_cast<unsigned>(j + 1));
    }
  }
  std::size_t count = 0;
  for (auto& [p, es] : exps) {
    std::sort(es.rbegin(), es.rend());
    count = std::max(count, es.size());
  }
  std::vector<Int> f(count, 1);
  for (const auto& [p, es] : exps)
    for (std::size_t k = 0; k < es.size(); ++k)
      for (unsigned e = 0; e < es[k]; ++e) f[count - 1 - k] *= p;
  return f;
}

FiniteModuleTable cyclic_table(unsigned n, unsigned order) {
  std::vector<std::vector<Elem>> add(order, std::vector<Elem>(order)), act(n, std::vector<Elem>(order));
  for (unsigned a = 0; a < order; ++a) {
    for (unsigned b = 0; b < order; ++b) add[a][b] = static_cast<Elem>((a + b) % order);
    for (unsigned r = 0; r < n; ++r) act[r][a] = static_cast<Elem>((r * a) % order);
  }
  return FiniteModuleTable(n, std::move(add), std::move(act));
}

Elem times(const FiniteModuleTable& m, unsigned k, Elem a) { return m.act(k % m.ring_size(), a); }

}  // namespace

FiniteModuleTable::FiniteModuleTable(unsigned n, std::vector<std::vector<Elem>> add, std::vector<std::vector<Elem>> act)
    : n_(n), add_(std::move(add)), act_(std::move(act)) {
  require(n_ >= 1 && n_ <= kMaxRing, "ring size " + std::to_string(n_));
  const std::size_t s = add_.size();
  require(s >= 1 && s <= kMaxTable, "module size " + std::to_string(s));
  if (act_.size() != n_) throw std::invalid_argument("scalar table needs one row per ring element");
  for (const auto& row : add_)
    if (row.size() != s) throw std::invalid_argument("addition table is not square");
  for (const auto& row : act_)
    if (row.size() != s) throw std::invalid_argument("scalar table has wrong width");
  for (std::size_t a = 0; a < s; ++a) {
    if (add_[0][a] != a || add_[a][0] != a) throw std::invalid_argument("element 0 is not the identity");
    bool has_inverse = false;
    for (std::size_t b = 0; b < s; ++b) {
      if (add_[a][b] >= s) throw std::invalid_argument("addition table out of range");
      if (add_[a][b] != add_[b][a]) throw std::invalid_argument("addition not commutative");
      if (add_[a][b] == 0) has_inverse = true;
      for (std::size_t c = 0; c < s; ++c)
        if (add_[add_[a][b]][c] != add_[a][add_[b][c]]) throw std::invalid_argument("addition not associative");
    }
    if (!has_inverse) throw std::invalid_argument("element without inverse");
  }
  for (unsigned r = 0; r < n_; ++r)
    for (std::size_t a = 0; a < s; ++a) {
      if (act_[r][a] >= s) throw std::invalid_argument("scalar table out of range");
      // r·a is a added r times over ℤ/n
      Elem sum = 0;
      for (unsigned k = 0; k < r; ++k) sum = add_[sum][a];
      if (act_[r][a] != sum) throw std::invalid_argument("scalar action is not repeated addition");
    }
  for (std::size_t a = 0; a < s; ++a) {
    Elem sum = 0;
    for (unsigned k = 0; k < n_; ++k) sum = add_[sum][a];
    if (sum != 0) throw std::invalid_argument("n does not annihilate the module");
  }
}

unsigned FiniteModuleTable::order(Elem a) const {
  unsigned k = 1;
  Elem x = a;
  while (x != 0) {
    x = add_[x][a];
    ++k;
  }
  return k;
}

FiniteModuleTable translate(const FPModule& m, unsigned n) {
  if (!m.is_finite()) throw Refused("oracle translate: infinite module");
  require(n <= kMaxRing, "ring size " + std::to_string(n));
  if (n % m.exponent().get_ui() != 0) throw std::invalid_argument("oracle translate: exponent does not divide n");
  std::vector<unsigned> radix;
  std::size_t size = 1;
  for (const auto& o : m.orders()) {
    radix.push_back(static_cast<unsigned>(o.get_ui()));
    size *= radix.back();
    require(size <= kMaxModule, "module size");
  }
  auto decode = [&](std::size_t x) {
    std::vector<unsigned> c(radix.size());
    for (std::size_t i = 0; i < radix.size(); ++i) {
      c[i] = x % radix[i];
      x /= radix[i];
    }
    return c;
  };
  auto encode = [&](const std::vector<unsigned>& c) {
    std::size_t x = 0;
    for (std::size_t i = radix.size(); i-- > 0;) x = x * radix[i] + c[i];
    return static_cast<Elem>(x);
  };
  std::vector<std::vector<Elem>> add(size, std::vector<Elem>(size)), act(n, std::vector<Elem>(size));
  for (std::size_t a = 0; a < size; ++a) {
    const auto ca = decode(a);
    for (std::size_t b = 0; b < size; ++b) {
      auto cb = decode(b);
      for (std::size_t i = 0; i < radix.size(); ++i) cb[i] = (ca[i] + cb[i]) % radix[i];
      add[a][b] = encode(cb);
    }
    for (unsigned r = 0; r < n; ++r) {
      auto c = ca;
      for (std::size_t i = 0; i < radix.size(); ++i) c[i] = (r * c[i]) % radix[i];
      act[r][a] = encode(c);
    }
  }
  return FiniteModuleTable(n, std::move(add), std::move(act));
}

Elem element_index(const FPModule& m, const Matrix& coords) {
  std::size_t x = 0;
  for (std::size_t i = m.gens(); i-- > 0;) {
    const Int o = m.order(i);
    x = x * o.get_ui() + mod(coords.at(i, 0), o).get_ui();
  }
  return static_cast<Elem>(x);
}

Matrix element_coords(const FPModule& m, Elem e) {
  Matrix c(m.ring(), m.gens(), 1);
  std::size_t x = e;
  for (std::size_t i = 0; i < m.gens(); ++i) {
    const std::size_t o = m.order(i).get_ui();
    c.set(i, 0, static_cast<unsigned long>(x % o));
    x /= o;
  }
  return c;
}

std::vector<Elem> translate(const ModuleHom& f) {
  const std::size_t s = f.src().cardinality().get_ui();
  require(s <= kMaxWork, "hom source size");
  std::vector<Elem> out(s);
  for (std::size_t a = 0; a < s; ++a)
    out[a] = element_index(f.dst(), f.apply(element_coords(f.src(), static_cast<Elem>(a))));
  return out;
}

FiniteModuleTable from_presentation(unsigned n, std::size_t gens, const std::vector<std::vector<long>>& rels) {
  require(n <= kMaxRing, "ring size");
  std::size_t total = 1;
  for (std::size_t i = 0; i < gens; ++i) {
    total *= n;
    require(total <= kMaxWork, "ambient free module");
  }
  auto decode = [&](std::size_t x) {
    std::vector<unsigned> c(gens);
    for (std::size_t i = 0; i < gens; ++i) {
      c[i] = x % n;
      x /= n;
    }
    return c;
  };
  auto encode = [&](const std::vector<unsigned>& c) {
    std::size_t x = 0;
    for (std::size_t i = gens; i-- > 0;) x = x * n + c[i];
    return x;
  };
  auto plus = [&](std::size_t a, std::size_t b) {
    auto ca = decode(a), cb = decode(b);
    for (std::size_t i = 0; i < gens; ++i) ca[i] = (ca[i] + cb[i]) % n;
    return encode(ca);
  };
  // span of the relations by closure
  std::vector<char> in_span(total, 0);
  std::vector<std::size_t> span{0};
  in_span[0] = 1;
  for (const auto& col : rels) {
    std::vector<unsigned> c(gens);
    for (std::size_t i = 0; i < gens; ++i) c[i] = static_cast<unsigned>(((col[i] % long(n)) + long(n)) % long(n));
    const std::size_t v = encode(c);
    for (std::size_t k = 0; k < span.size(); ++k) {
      std::size_t x = plus(span[k], v);
      while (!in_span[x]) {
        in_span[x] = 1;
        span.push_back(x);
        x = plus(x, v);
      }
    }
  }
  std::vector<long> cls(total, -1);
  std::vector<std::size_t> rep;
  for (std::size_t x = 0; x < total; ++x) {
    if (cls[x] >= 0) continue;
    require(rep.size() < kMaxModule, "quotient size");
    for (std::size_t s : span) cls[plus(x, s)] = static_cast<long>(rep.size());
    rep.push_back(x);
  }
  const std::size_t size = rep.size();
  std::vector<std::vector<Elem>> add(size, std::vector<Elem>(size)), act(n, std::vector<Elem>(size));
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) add[a][b] = static_cast<Elem>(cls[plus(rep[a], rep[b])]);
    for (unsigned r = 0; r < n; ++r) {
      auto c = decode(rep[a]);
      for (auto& e : c) e = (r * e) % n;
      act[r][a] = static_cast<Elem>(cls[encode(c)]);
    }
  }
  return FiniteModuleTable(n, std::move(add), std::move(act));
}

std::vector<Int> invariant_factors(const FiniteModuleTable& m) {
  return factors_from_killed(m.size(), [&](unsigned d) {
    std::size_t c = 0;
    for (std::size_t a = 0; a < m.size(); ++a)
      if (times(m, d, static_cast<Elem>(a)) == 0) ++c;
    return c;
  });
}

CanonicalForm canonical_form(const FiniteModuleTable& m, const Ring& ring) {
  CanonicalForm c;
  c.ring = ring;
  c.factors = invariant_factors(m);
  return c;
}

unsigned exponent(const FiniteModuleTable& m) {
  unsigned e = 1;
  for (std::size_t a = 0; a < m.size(); ++a) e = std::lcm(e, m.order(static_cast<Elem>(a)));
  return e;
}

PcPresentation pc_presentation(const FiniteModuleTable& m) {
  PcPresentation pc;
  const std::size_t s = m.size();
  std::vector<char> in_span(s, 0);
  std::vector<Elem> span{0};
  in_span[0] = 1;
  std::vector<std::vector<unsigned>> nf(s);
  nf[0] = {};
  while (span.size() < s) {
    Elem g = 0;
    unsigned best = 0;
    for (std::size_t a = 0; a < s; ++a)
      if (!in_span[a] && m.order(static_cast<Elem>(a)) > best) {
        best = m.order(static_cast<Elem>(a));
        g = static_cast<Elem>(a);
      }
    unsigned r = 1;
    Elem x = g;
    while (!in_span[x]) {
      x = m.add(x, g);
      ++r;
    }
    const std::size_t i = pc.gens.size();
    std::vector<unsigned> coeffs = nf[x];
    coeffs.resize(i, 0);
    pc.gens.push_back(g);
    pc.rel_order.push_back(r);
    pc.rel_coeffs.push_back(coeffs);
    const std::size_t old = span.size();
    for (std::size_t k = 0; k < old; ++k) nf[span[k]].resize(i + 1, 0);
    Elem cg = 0;
    for (unsigned c = 1; c < r; ++c) {
      cg = m.add(cg, g);
      for (std::size_t k = 0; k < old; ++k) {
        const Elem y = m.add(span[k], cg);
        in_span[y] = 1;
        span.push_back(y);
        nf[y] = nf[span[k]];
        nf[y][i] = c;
      }
    }
  }
  for (auto& v : nf) v.resize(pc.gens.size(), 0);
  pc.normal_form = std::move(nf);
  return pc;
}

std::vector<std::vector<Elem>> enumerate_homs(const FiniteModuleTable& m, const FiniteModuleTable& n) {
  if (m.ring_size() != n.ring_size()) throw std::invalid_argument("enumerate_homs: different rings");
  require(m.size() <= kMaxTable && n.size() <= kMaxTable, "hom enumeration input");
  const PcPresentation pc = pc_presentation(m);
  const std::size_t k = pc.gens.size();
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> y(k, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      require((out.size() + 1) * m.size() <= kMaxWork, "hom count");
      std::vector<Elem> f(m.size());
      for (std::size_t a = 0; a < m.size(); ++a) {
        Elem v = 0;
        for (std::size_t t = 0; t < k; ++t) v = n.add(v, times(n, pc.normal_form[a][t], y[t]));
        f[a] = v;
      }
      out.push_back(std::move(f));
      return;
    }
    Elem rhs = 0;
    for (std::size_t j = 0; j < i; ++j) rhs = n.add(rhs, times(n, pc.rel_coeffs[i][j], y[j]));
    for (std::size_t c = 0; c < n.size(); ++c) {
      const Elem cand = static_cast<Elem>(c);
      // r_i · y_i computed by repeated addition (r_i may exceed ring size only if equal to it)
      Elem lhs = 0;
      for (unsigned t = 0; t < pc.rel_order[i]; ++t) lhs = n.add(lhs, cand);
      if (lhs != rhs) continue;
      y[i] = cand;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

FiniteModuleTable hom_table(const FiniteModuleTable& m, const FiniteModuleTable& n) {
  const auto homs = enumerate_homs(m, n);
  require(homs.size() <= kMaxTable, "Hom group size " + std::to_string(homs.size()));
  std::map<std::vector<Elem>, Elem> index;
  for (std::size_t h = 0; h < homs.size(); ++h) index[homs[h]] = static_cast<Elem>(h);
  if (index.at(std::vector<Elem>(m.size(), 0)) != 0) throw std::logic_error("zero hom not first");
  const std::size_t s = homs.size();
  std::vector<std::vector<Elem>> add(s, std::vector<Elem>(s)), act(m.ring_size(), std::vector<Elem>(s));
  std::vector<Elem> tmp(m.size());
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < s; ++b) {
      for (std::size_t x = 0; x < m.size(); ++x) tmp[x] = n.add(homs[a][x], homs[b][x]);
      add[a][b] = index.at(tmp);
    }
    for (unsigned r = 0; r < m.ring_size(); ++r) {
      for (std::size_t x = 0; x < m.size(); ++x) tmp[x] = n.act(r, homs[a][x]);
      act[r][a] = index.at(tmp);
    }
  }
  return FiniteModuleTable(m.ring_size(), std::move(add), std::move(act));
}

FiniteModuleTable dual(const FiniteModuleTable& m) { return dual(m, exponent(m)); }

FiniteModuleTable dual(const FiniteModuleTable& m, unsigned e) {
  if (m.ring_size() % e != 0) throw std::invalid_argument("dual: ℤ/e is not a module over the ring");
  return hom_table(m, cyclic_table(m.ring_size(), e));
}

GroupType brute_ext1(const FiniteModuleTable& m, const FiniteModuleTable& n) {
  if (m.ring_size() != n.ring_size()) throw std::invalid_argument("brute_ext1: different rings");
  const unsigned r = m.ring_size();
  const PcPresentation pc = pc_presentation(m);
  const std::size_t k = pc.gens.size();
  // relation vectors ρ_i in (ℤ/r)^k
  std::vector<std::vector<unsigned>> rho(k, std::vector<unsigned>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    rho[i][i] = pc.rel_order[i] % r;
    for (std::size_t j = 0; j < i; ++j) rho[i][j] = (r - pc.rel_coeffs[i][j] % r) % r;
  }
  std::size_t fsize = 1, nk = 1;
  for (std::size_t i = 0; i < k; ++i) {
    fsize *= r;
    nk *= n.size();
    require(fsize <= kMaxWork && nk <= kMaxWork, "ext cocycle space");
  }
  // syzygies a with Σ a_i ρ_i = 0, reduced to a generating set
  auto decode = [&](std::size_t x, std::size_t base) {
    std::vector<unsigned> c(k);
    for (std::size_t i = 0; i < k; ++i) {
      c[i] = static_cast<unsigned>(x % base);
      x /= base;
    }
    return c;
  };
  auto encode = [&](const std::vector<unsigned>& c, std::size_t base) {
    std::size_t x = 0;
    for (std::size_t i = k; i-- > 0;) x = x * base + c[i];
    return x;
  };
  std::vector<std::vector<unsigned>> syz_gens;
  std::unordered_set<std::size_t> syz_span{0};
  for (std::size_t x = 1; x < fsize; ++x) {
    const auto a = decode(x, r);
    bool zero = true;
    for (std::size_t j = 0; j < k && zero; ++j) {
      unsigned s = 0;
      for (std::size_t i = 0; i < k; ++i) s = (s + a[i] * rho[i][j]) % r;
      zero = s == 0;
    }
    if (!zero || syz_span.count(x)) continue;
    syz_gens.push_back(a);
    std::vector<std::size_t> old(syz_span.begin(), syz_span.end());
    for (std::size_t base : old) {
      auto cur = decode(base, r);
      for (;;) {
        for (std::size_t i = 0; i < k; ++i) cur[i] = (cur[i] + a[i]) % r;
        const std::size_t e = encode(cur, r);
        if (!syz_span.insert(e).second) break;
      }
    }
  }
  // cocycles z ∈ N^k killed by every syzygy
  auto combo = [&](const std::vector<unsigned>& coeffs, const std::vector<Elem>& z) {
    Elem v = 0;
    for (std::size_t i = 0; i < k; ++i) v = n.add(v, times(n, coeffs[i], z[i]));
    return v;
  };
  auto zdecode = [&](std::size_t x) {
    std::vector<Elem> z(k);
    for (std::size_t i = 0; i < k; ++i) {
      z[i] = static_cast<Elem>(x % n.size());
      x /= n.size();
    }
    return z;
  };
  auto zencode = [&](const std::vector<Elem>& z) {
    std::size_t x = 0;
    for (std::size_t i = k; i-- > 0;) x = x * n.size() + z[i];
    return x;
  };
  std::vector<std::size_t> cocycles;
  for (std::size_t x = 0; x < nk; ++x) {
    const auto z = zdecode(x);
    bool ok = true;
    for (const auto& a : syz_gens)
      if (combo(a, z) != 0) {
        ok = false;
        break;
      }
    if (ok) cocycles.push_back(x);
  }
  // coboundaries: z_i = ρ_i(y)
  std::unordered_set<std::size_t> cob;
  for (std::size_t x = 0; x < nk; ++x) {
    const auto y = zdecode(x);
    std::vector<Elem> z(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<unsigned> row(rho[i].begin(), rho[i].end());
      z[i] = combo(row, y);
    }
    cob.insert(zencode(z));
  }
  GroupType g;
  const std::size_t order = cocycles.size() / cob.size();
  g.order = static_cast<unsigned long>(order);
  g.factors = factors_from_killed(order, [&](unsigned d) {
    std::size_t c = 0;
    for (std::size_t x : cocycles) {
      auto z = zdecode(x);
      for (auto& e : z) e = times(n, d, e);
      if (cob.count(zencode(z))) ++c;
    }
    return c / cob.size();
  });
  return g;
}

GroupType brute_tor1(const FiniteModuleTable& m, const FiniteModuleTable& n) { return brute_ext1(m, dual(n)); }

Int tensor_size(const FiniteModuleTable& m, const FiniteModuleTable& n) {
  return static_cast<unsigned long>(enumerate_homs(m, dual(n)).size());
}

std::vector<Int> syzygy_factors(const FiniteModuleTable& m) {
  const unsigned r = m.ring_size();
  const PcPresentation pc = pc_presentation(m);
  const std::size_t k = pc.gens.size();
  std::size_t fsize = 1;
  for (std::size_t i = 0; i < k; ++i) {
    fsize *= r;
    require(fsize <= kMaxWork, "free cover size");
  }
  std::vector<std::vector<unsigned>> ker;
  for (std::size_t x = 0; x < fsize; ++x) {
    std::vector<unsigned> c(k);
    std::size_t t = x;
    Elem v = 0;
    for (std::size_t i = 0; i < k; ++i) {
      c[i] = static_cast<unsigned>(t % r);
      t /= r;
      v = m.add(v, times(m, c[i], pc.gens[i]));
    }
    if (v == 0) ker.push_back(std::move(c));
  }
  return factors_from_killed(ker.size(), [&](unsigned d) {
    std::size_t cnt = 0;
    for (const auto& c : ker)
      if (std::all_of(c.begin(), c.end(), [&](unsigned e) { return (std::size_t(d) * e) % r == 0; })) ++cnt;
    return cnt;
  });
}

TableComplex translate(const ChainComplex& x, unsigned n) {
  TableComplex t;
  t.lo = x.lo();
  for (int k = x.lo(); k <= x.hi(); ++k) t.terms.push_back(translate(x.term(k), n));
  for (int k = x.lo() + 1; k <= x.hi(); ++k) t.d.push_back(translate(x.d(k)));
  return t;
}

namespace {

const std::vector<Elem>* boundary(const TableComplex& x, int k) {
  if (k <= x.lo || k > x.hi()) return nullptr;
  return &x.d[static_cast<std::size_t>(k - x.lo - 1)];
}

const FiniteModuleTable* term(const TableComplex& x, int k) {
  if (k < x.lo || k > x.hi()) return nullptr;
  return &x.terms[static_cast<std::size_t>(k - x.lo)];
}

}  // namespace

Int count_chain_maps(const TableComplex& x, const TableComplex& y) {
  if (!x.terms.empty() && !y.terms.empty() && x.terms[0].ring_size() != y.terms[0].ring_size())
    throw std::invalid_argument("count_chain_maps: different rings");
  // counts per hom at the previous degree; f_{lo-1} = 0
  std::vector<std::vector<Elem>> prev_maps{{}};
  std::vector<Int> prev_counts{1};
  for (int k = x.lo; k <= x.hi(); ++k) {
    const FiniteModuleTable& xk = *term(x, k);
    const FiniteModuleTable* yk = term(y, k);
    std::vector<std::vector<Elem>> maps;
    if (yk) {
      maps = enumerate_homs(xk, *yk);
    } else {
      maps.push_back(std::vector<Elem>(xk.size(), 0));
    }
    const auto* dx = boundary(x, k);
    const auto* dy = boundary(y, k);
    std::vector<Int> counts(maps.size(), 0);
    for (std::size_t a = 0; a < maps.size(); ++a)
      for (std::size_t b = 0; b < prev_maps.size(); ++b) {
        if (prev_counts[b] == 0) continue;
        bool ok = true;
        for (std::size_t e = 0; e < xk.size() && ok; ++e) {
          const Elem lhs = dy ? (*dy)[maps[a][e]] : 0;
          const Elem rhs = (dx && !prev_maps[b].empty()) ? prev_maps[b][(*dx)[e]] : 0;
          ok = lhs == rhs;
        }
        if (ok) counts[a] += prev_counts[b];
      }
    prev_maps = std::move(maps);
    prev_counts = std::move(counts);
  }
  Int total = 0;
  for (const Int& c : prev_counts) total += c;
  return total;
}

Int bar_tensor_size(const TableComplex& x, const TableComplex& y, int n, unsigned e) {
  if (x.terms.empty() || y.terms.empty()) return 1;
  const unsigned r = x.terms[0].ring_size();
  const FiniteModuleTable ce = cyclic_table(r, e);
  // φ_k : X_k → Hom(Y_{n-k}, ℤ/e); functionals on Y are indexed as in hom_table
  struct Level {
    int k;
    std::vector<std::vector<Elem>> functionals;  // on Y_{n-k}
    std::vector<std::vector<Elem>> maps;         // X_k → functionals
  };
  std::vector<Level> levels;
  for (int k = x.lo; k <= x.hi(); ++k) {
    const FiniteModuleTable* yj = term(y, n - k);
    if (!yj) continue;
    Level lv{k, enumerate_homs(*yj, ce), {}};
    lv.maps = enumerate_homs(*term(x, k), hom_table(*yj, ce));
    levels.push_back(std::move(lv));
  }
  if (levels.empty()) return 1;
  // φ vanishes on ∂(x ⊗ y) = ∂x ⊗ y + (-1)^{k'} x ⊗ ∂y for x ∈ X_{k'}, y ∈ Y_{n+1-k'};
  // the two terms live in the levels k'-1 and k' (either may be missing)
  auto compatible = [&](int kp, const Level* prev, const std::vector<Elem>* f, const Level* cur,
                        const std::vector<Elem>* g) {
    const FiniteModuleTable* xk = term(x, kp);
    const FiniteModuleTable* yj = term(y, n + 1 - kp);
    if (!xk || !yj) return true;
    const auto* dx = boundary(x, kp);
    const auto* dy = boundary(y, n + 1 - kp);
    for (std::size_t a = 0; a < xk->size(); ++a)
      for (std::size_t b = 0; b < yj->size(); ++b) {
        unsigned v = 0;
        if (prev && dx) v = prev->functionals[(*f)[(*dx)[a]]][b];
        if (cur && dy) {
          const unsigned w = cur->functionals[(*g)[a]][(*dy)[b]];
          v = (kp % 2 == 0) ? (v + w) % e : (v + e - w) % e;
        }
        if (v != 0) return false;
      }
    return true;
  };
  const Level& first = levels.front();
  std::vector<Int> counts(first.maps.size(), 0);
  for (std::size_t a = 0; a < first.maps.size(); ++a)
    counts[a] = compatible(first.k, nullptr, nullptr, &first, &first.maps[a]) ? 1 : 0;
  for (std::size_t i = 1; i < levels.size(); ++i) {
    const Level& prev = levels[i - 1];
    const Level& cur = levels[i];
    std::vector<Int> next(cur.maps.size(), 0);
    for (std::size_t a = 0; a < prev.maps.size(); ++a) {
      if (counts[a] == 0) continue;
      for (std::size_t b = 0; b < cur.maps.size(); ++b)
        if (compatible(cur.k, &prev, &prev.maps[a], &cur, &cur.maps[b])) next[b] += counts[a];
    }
    counts = std::move(next);
  }
  const Level& last = levels.back();
  Int total = 0;
  for (std::size_t a = 0; a < last.maps.size(); ++a)
    if (counts[a] != 0 && compatible(last.k + 1, &last, &last.maps[a], nullptr, nullptr)) total += counts[a];
  return total;
}

// ---------------------------------------------------------------- A = F_2[x]/(x²)

namespace {

using F2Rows = std::vector<std::vector<int>>;

unsigned f2_rank(F2Rows rows) {
  unsigned rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][c] != 0)
        for (std::size_t k = c; k < cols; ++k) rows[r][k] ^= rows[rank][k];
    ++rank;
  }
  return rank;
}

// The map u ↦ x_N u + u x_M on linear maps M → N, restricted to entries (i, j) with
// keep(i, j); columns of the result are the images of the kept unit maps, as rows here.
F2Rows commutator_images(const F2GradedModule& m, const F2GradedModule& n, const std::function<bool(std::size_t, std::size_t)>& keep) {
  const std::size_t dm = m.dim(), dn = n.dim();
  F2Rows out;
  for (std::size_t i = 0; i < dn; ++i)
    for (std::size_t j = 0; j < dm; ++j) {
      if (!keep(i, j)) continue;
      // u = e_{ij}: (x_N u)(a, b) = x_N[a][i] [b = j]; (u x_M)(a, b) = [a = i] x_M[j][b]
      std::vector<int> img(dn * dm, 0);
      for (std::size_t a = 0; a < dn; ++a) img[a * dm + j] ^= n.x[a][i];
      for (std::size_t b = 0; b < dm; ++b) img[i * dm + b] ^= m.x[j][b];
      out.push_back(std::move(img));
    }
  return out;
}

unsigned ext1_dim(const F2GradedModule& m, const F2GradedModule& n, const std::function<bool(std::size_t, std::size_t)>& cocycle,
                  const std::function<bool(std::size_t, std::size_t)>& cobound) {
  const F2Rows c = commutator_images(m, n, cocycle);
  const unsigned cycles = static_cast<unsigned>(c.size()) - f2_rank(c);
  return cycles - f2_rank(commutator_images(m, n, cobound));
}

}  // namespace

F2GradedModule f2_graded(const ChainComplex& c) {
  if (!c.ring().is_finite() || c.ring().modulus() != 2) throw std::invalid_argument("f2_graded: needs a complex over Z/2");
  F2GradedModule out;
  std::vector<std::size_t> offset;
  for (int d = c.lo(); d <= c.hi(); ++d) {
    offset.push_back(out.degree.size());
    for (std::size_t g = 0; g < c.term(d).gens(); ++g) out.degree.push_back(d);
  }
  out.x.assign(out.dim(), std::vector<int>(out.dim(), 0));
  for (int d = c.lo() + 1; d <= c.hi(); ++d) {
    const Matrix b = c.d(d).matrix();
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        out.x[offset[d - 1 - c.lo()] + i][offset[d - c.lo()] + j] = b.at(i, j) == 0 ? 0 : 1;
  }
  return out;
}

unsigned a_ext1_dim(const F2GradedModule& m, const F2GradedModule& n, int s) {
  return ext1_dim(
      m, n, [&](std::size_t i, std::size_t j) { return n.degree[i] == m.degree[j] - 1 + s; },
      [&](std::size_t i, std::size_t j) { return n.degree[i] == m.degree[j] + s; });
}

unsigned a_ext1_dim_ungraded(const F2GradedModule& m, const F2GradedModule& n) {
  auto all = [](std::size_t, std::size_t) { return true; };
  return ext1_dim(m, n, all, all);
}

std::map<int, unsigned> a_tor_dims(unsigned i, const F2GradedModule& m, const F2GradedModule& n) {
  // D = x⊗1 + 1⊗x on M ⊗ N, basis (a, b) ↦ a·dim N + b; D lowers total degree by one
  const std::size_t dm = m.dim(), dn = n.dim();
  auto total = [&](std::size_t a, std::size_t b) { return m.degree[a] + n.degree[b]; };
  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t a = 0; a < dm; ++a)
    for (std::size_t b = 0; b < dn; ++b) by_degree[total(a, b)].push_back(a * dn + b);
  // rows: images of the basis vectors of total degree t
  auto images = [&](int t) {
    F2Rows rows;
    auto it = by_degree.find(t);
    if (it == by_degree.end()) return rows;
    for (std::size_t v : it->second) {
      const std::size_t a = v / dn, b = v % dn;
      std::vector<int> img(dm * dn, 0);
      for (std::size_t a2 = 0; a2 < dm; ++a2) img[a2 * dn + b] ^= m.x[a2][a];
      for (std::size_t b2 = 0; b2 < dn; ++b2) img[a * dn + b2] ^= n.x[b2][b];
      rows.push_back(std::move(img));
    }
    return rows;
  };
  std::map<int, unsigned> out;
  for (const auto& [t, basis] : by_degree) {
    // bar degree i piece of total degree t sits in Tor degree t - i
    const unsigned in_rank = f2_rank(images(t + 1));
    const unsigned cycles = i == 0 ? static_cast<unsigned>(basis.size()) : static_cast<unsigned>(basis.size()) - f2_rank(images(t));
    if (cycles > in_rank) out[t - static_cast<int>(i)] = cycles - in_rank;
  }
  return out;
}

std::vector<ChainComplex> f2_graded_modules(int lo, int hi, unsigned max_dim) {
  const Ring f2 = Ring::integers_mod(2);
  const FPModule k = FPModule::cyclic(f2, 2);
  auto copies = [&](ChainComplex acc, const ChainComplex& c, unsigned times) {
    for (unsigned i = 0; i < times; ++i) acc = direct_sum(acc, c);
    return acc;
  };
  std::vector<ChainComplex> out;
  const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
  std::vector<unsigned> dim(len), rank(len + 1, 0);  // rank[i]: rank of ∂ out of degree lo+i
  // choose dims and ranks from the top degree down; ∂ out of degree lo is zero
  std::function<void(std::size_t)> rec = [&](std::size_t left) {
    if (left == 0) {
      ChainComplex c = ChainComplex::zero(f2);
      for (std::size_t i = 0; i < len; ++i) {
        const int n = lo + static_cast<int>(i);
        c = copies(c, disk(n, k), rank[i]);
        c = copies(c, sphere(n, k), dim[i] - rank[i] - rank[i + 1]);
      }
      out.push_back(c);
      return;
    }
    const std::size_t i = left - 1;
    for (unsigned d = 0; d <= max_dim; ++d) {
      if (d < rank[i + 1]) continue;
      dim[i] = d;
      const unsigned top = i == 0 ? 0 : std::min(d - rank[i + 1], max_dim);
      for (unsigned r = 0; r <= top; ++r) {
        rank[i] = r;
        rec(i);
      }
      rank[i] = 0;
    }
  };
  rec(len);
  return out;
}

}  // namespace gorhom::oracle
