#include "omloq/dynalg.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace omloq {

std::vector<MonoId> DynElem::members() const {
  std::vector<MonoId> out;
  for (auto i = ids.find_first(); i != Bits::npos; i = ids.find_next(i)) {
    out.push_back(static_cast<MonoId>(i));
  }
  return out;
}

// ---- algebra ---------------------------------------------------------------

DynAlgebra::DynAlgebra(std::shared_ptr<const InvMonoid> mono)
    : mono_(std::move(mono)), carrier_(mono_->size()) {
  carrier_.set();
}

DynAlgebra::DynAlgebra(std::shared_ptr<const InvMonoid> mono, Bits carrier)
    : mono_(std::move(mono)), carrier_(std::move(carrier)) {
  if (carrier_.size() != mono_->size()) {
    throw std::invalid_argument("carrier mask is not sized to the monoid");
  }
}

void DynAlgebra::own(const DynElem& a) const {
  if (a.mono != mono_.get() || a.ids.size() != mono_->size()) {
    throw std::invalid_argument("element belongs to a different algebra");
  }
}

DynElem DynAlgebra::empty() const {
  return DynElem{mono_.get(), Bits(mono_->size())};
}

DynElem DynAlgebra::full() const { return DynElem{mono_.get(), carrier_}; }

DynElem DynAlgebra::unit() const { return single(mono_->unit()); }

DynElem DynAlgebra::single(MonoId a) const {
  if (a >= mono_->size()) throw std::out_of_range("monoid id out of range");
  DynElem r = empty();
  r.ids.set(a);
  return r;
}

DynElem DynAlgebra::test(Elem m) const { return single(mono_->generator(m)); }

DynElem DynAlgebra::from_ids(std::span<const MonoId> ids) const {
  DynElem r = empty();
  for (MonoId a : ids) {
    if (a >= mono_->size()) throw std::out_of_range("monoid id out of range");
    r.ids.set(a);
  }
  return r;
}

DynElem DynAlgebra::mul(const DynElem& a, const DynElem& b) const {
  own(a);
  own(b);
  DynElem r = empty();
  for (auto i = a.ids.find_first(); i != Bits::npos; i = a.ids.find_next(i)) {
    for (auto j = b.ids.find_first(); j != Bits::npos;
         j = b.ids.find_next(j)) {
      r.ids.set(mono_->compose(static_cast<MonoId>(i), static_cast<MonoId>(j)));
    }
  }
  return r;
}

DynElem DynAlgebra::join(const DynElem& a, const DynElem& b) const {
  own(a);
  own(b);
  return DynElem{mono_.get(), a.ids | b.ids};
}

DynElem DynAlgebra::join_of(std::span<const DynElem> xs) const {
  DynElem r = empty();
  for (const DynElem& x : xs) {
    own(x);
    r.ids |= x.ids;
  }
  return r;
}

DynElem DynAlgebra::star(const DynElem& a) const {
  own(a);
  DynElem r = empty();
  for (auto i = a.ids.find_first(); i != Bits::npos; i = a.ids.find_next(i)) {
    r.ids.set(mono_->star(static_cast<MonoId>(i)));
  }
  return r;
}

namespace {

Elem top_join(const InvMonoid& mono, const DynElem& a) {
  const Oml& l = *mono.lattice();
  Elem m = l.bot();
  for (auto i = a.ids.find_first(); i != Bits::npos; i = a.ids.find_next(i)) {
    m = l.join(m, mono.elem(static_cast<MonoId>(i)).tbl[l.top()]);
  }
  return m;
}

}  // namespace

DynElem DynAlgebra::tilde(const DynElem& a) const {
  own(a);
  return test(lattice().perp(top_join(*mono_, a)));
}

DynElem DynAlgebra::tilde_tilde(const DynElem& a) const {
  own(a);
  return test(top_join(*mono_, a));
}

DynElem DynAlgebra::tilde_tilde_iterated(const DynElem& a) const {
  return tilde(tilde(a));
}

std::optional<Elem> DynAlgebra::as_test(const DynElem& a) const {
  own(a);
  if (a.count() != 1) return std::nullopt;
  const auto id = static_cast<MonoId>(a.ids.find_first());
  if (!mono_->is_generator(id)) return std::nullopt;
  return mono_->elem(id).tbl[lattice().top()];
}

Elem DynAlgebra::action(const DynElem& k, Elem v) const {
  return *as_test(tilde(tilde(mul(k, test(v)))));
}

std::optional<Elem> DynAlgebra::separating_test(const DynElem& s,
                                                const DynElem& t) const {
  for (std::size_t v = 0; v < lattice().size(); ++v) {
    if (action(s, static_cast<Elem>(v)) != action(t, static_cast<Elem>(v))) {
      return static_cast<Elem>(v);
    }
  }
  return std::nullopt;
}

std::string DynAlgebra::describe(const DynElem& a) const {
  std::string s = "{";
  bool first = true;
  for (auto i = a.ids.find_first(); i != Bits::npos; i = a.ids.find_next(i)) {
    if (!first) s += ", ";
    s += mono_->name(static_cast<MonoId>(i));
    first = false;
  }
  return s + "}";
}

// ---- sampling --------------------------------------------------------------

bool is_exhaustive(const DynAlgebra& alg, const SamplePolicy& policy) {
  return alg.carrier_size() <= policy.exhaustive_threshold &&
         alg.carrier_size() < 63;
}

std::vector<DynElem> sample_family(const DynAlgebra& alg,
                                   const SamplePolicy& policy) {
  std::vector<MonoId> ids;
  for (auto i = alg.carrier().find_first(); i != Bits::npos;
       i = alg.carrier().find_next(i)) {
    ids.push_back(static_cast<MonoId>(i));
  }
  std::vector<DynElem> out;
  if (is_exhaustive(alg, policy)) {
    const std::uint64_t total = std::uint64_t{1} << ids.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      DynElem e = alg.empty();
      for (std::size_t k = 0; k < ids.size(); ++k) {
        if (mask >> k & 1) e.ids.set(ids[k]);
      }
      out.push_back(std::move(e));
    }
    return out;
  }

  std::set<Bits> seen;
  auto push = [&](DynElem e) {
    if (alg.in_carrier(e) && seen.insert(e.ids).second) {
      out.push_back(std::move(e));
    }
  };
  push(alg.empty());
  push(alg.full());
  push(alg.unit());
  for (MonoId a : ids) push(alg.single(a));
  const std::size_t n = alg.lattice().size();
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = m + 1; k < n; ++k) {
      push(alg.join(alg.test(static_cast<Elem>(m)),
                    alg.test(static_cast<Elem>(k))));
    }
  }
  std::mt19937_64 gen(policy.seed);
  for (std::size_t r = 0; r < policy.random; ++r) {
    DynElem e = alg.empty();
    std::uint64_t word = 0;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (k % 64 == 0) word = gen();
      if (word >> (k % 64) & 1) e.ids.set(ids[k]);
    }
    push(std::move(e));
  }
  const std::size_t base = std::min<std::size_t>(out.size(), 32);
  for (std::size_t i = 0; i < base; ++i) {
    const DynElem x = out[i];
    const DynElem y = out[(i + 1) % base];
    push(alg.star(x));
    push(alg.tilde(x));
    push(alg.mul(x, y));
  }
  return out;
}

namespace {

std::string family_note(const DynAlgebra& alg, const SamplePolicy& policy,
                        std::size_t size) {
  if (is_exhaustive(alg, policy)) {
    return "exhaustive over " + std::to_string(size) + " subsets";
  }
  return "sampled " + std::to_string(size) + " subsets (seed " +
         std::to_string(policy.seed) + ")";
}

}  // namespace

// ---- test lattice ----------------------------------------------------------

std::optional<Elem> TestLattice::index(const DynElem& a) const {
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems[i].ids == a.ids) return static_cast<Elem>(i);
  }
  return std::nullopt;
}

TestLattice test_lattice(const DynAlgebra& alg, Exec exec) {
  TestLattice tl;
  tl.report = Report("test lattice of " + alg.lattice().name());
  Report& r = tl.report;
  const InvMonoid& mono = alg.monoid();
  tl.index_of_id.assign(mono.size(), -1);

  std::map<Bits, int> where;
  auto add = [&](const DynElem& e) {
    if (where.emplace(e.ids, static_cast<int>(tl.elems.size())).second) {
      tl.elems.push_back(e);
    }
  };
  add(alg.tilde(alg.empty()));
  for (auto i = alg.carrier().find_first(); i != Bits::npos;
       i = alg.carrier().find_next(i)) {
    add(alg.tilde(alg.single(static_cast<MonoId>(i))));
  }
  for (std::size_t i = 0; i < tl.elems.size(); ++i) {
    if (tl.elems[i].count() == 1) {
      tl.index_of_id[tl.elems[i].ids.find_first()] = static_cast<int>(i);
    }
  }
  const std::size_t k = tl.elems.size();
  auto desc = [&](std::uint64_t i) { return alg.describe(tl.elems[i]); };
  auto idx = [&](const DynElem& e) -> int {
    auto it = where.find(e.ids);
    return it == where.end() ? -1 : it->second;
  };

  // ~ maps tests to tests, and ~ of a union of tests is again a test
  r.add(scan(
      "tilde-closed", k * k,
      [&](std::uint64_t i) {
        const DynElem& x = tl.elems[i / k];
        const DynElem& y = tl.elems[i % k];
        return idx(alg.tilde(x)) >= 0 && idx(alg.tilde(alg.join(x, y))) >= 0;
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{desc(i / k), desc(i % k)};
      },
      exec));
  if (!r.passed()) return tl;

  std::vector<int> vee(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      vee[i * k + j] = idx(alg.tilde(alg.tilde(alg.join(tl.elems[i],
                                                        tl.elems[j]))));
    }
  }
  auto preceq = [&](std::size_t i, std::size_t j) {
    return vee[i * k + j] == static_cast<int>(j);
  };
  r.add(scan(
      "preceq/partial-order", k * k * k,
      [&](std::uint64_t t) {
        const std::size_t a = t / (k * k), b = t / k % k, c = t % k;
        if (!preceq(a, a)) return false;
        if (preceq(a, b) && preceq(b, a) && a != b) return false;
        return !(preceq(a, b) && preceq(b, c)) || preceq(a, c);
      },
      [&](std::uint64_t t) {
        return std::vector<std::string>{desc(t / (k * k)), desc(t / k % k),
                                        desc(t % k)};
      },
      exec));
  if (!r.passed()) return tl;

  std::vector<std::string> labels;
  std::vector<Elem> perp;
  std::vector<std::pair<Elem, Elem>> leq;
  for (std::size_t i = 0; i < k; ++i) {
    labels.push_back(desc(i));
    perp.push_back(static_cast<Elem>(idx(alg.tilde(tl.elems[i]))));
    for (std::size_t j = 0; j < k; ++j) {
      if (preceq(i, j)) {
        leq.emplace_back(static_cast<Elem>(i), static_cast<Elem>(j));
      }
    }
  }
  try {
    tl.oml = std::make_shared<const Oml>(Oml::from_order(
        "tests(" + alg.lattice().name() + ")", labels, leq, perp));
  } catch (const LatticeError& e) {
    r.add("lattice", false, k * k, {}, e.what());
    return tl;
  }
  const Oml& t = *tl.oml;
  r.add(scan(
      "join-agrees", k * k,
      [&](std::uint64_t i) {
        return vee[i] == t.join(static_cast<Elem>(i / k),
                                static_cast<Elem>(i % k));
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{desc(i / k), desc(i % k)};
      },
      exec));
  r.add(scan(
      "meet-agrees", k * k,
      [&](std::uint64_t i) {
        const DynElem& x = tl.elems[i / k];
        const DynElem& y = tl.elems[i % k];
        const int w = idx(alg.tilde(alg.join(alg.tilde(x), alg.tilde(y))));
        return w == t.meet(static_cast<Elem>(i / k), static_cast<Elem>(i % k));
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{desc(i / k), desc(i % k)};
      },
      exec));
  r.append(validate_oml(t, exec), "oml");

  const Oml& m = alg.lattice();
  std::vector<Elem> dmap;
  for (std::size_t e = 0; e < m.size(); ++e) {
    const int i = idx(alg.test(static_cast<Elem>(e)));
    if (i < 0) {
      r.add("delta/defined", false, m.size(), {m.label(static_cast<Elem>(e))});
      return tl;
    }
    dmap.push_back(static_cast<Elem>(i));
  }
  if (dmap.size() != t.size()) {
    r.add("delta/defined", false, m.size(), {},
          std::to_string(m.size()) + " lattice elements for " +
              std::to_string(t.size()) + " tests");
    return tl;
  }
  tl.delta = OrthoIso{alg.lattice_ptr(), tl.oml, dmap};
  r.append(check_ortho_iso(*tl.delta, exec), "delta");
  return tl;
}

// ---- normal forms and atoms ------------------------------------------------

std::vector<DynElem> normal_form(const DynAlgebra& alg, const DynElem& a) {
  std::vector<DynElem> out;
  for (MonoId t : a.members()) out.push_back(alg.single(t));
  return out;
}

std::vector<DynElem> generated_test_monoid(const DynAlgebra& alg,
                                           std::uint64_t cap) {
  std::vector<DynElem> gens;
  std::set<Bits> gen_seen;
  auto add_gen = [&](const DynElem& e) {
    if (gen_seen.insert(e.ids).second) gens.push_back(e);
  };
  add_gen(alg.tilde(alg.empty()));
  for (auto i = alg.carrier().find_first(); i != Bits::npos;
       i = alg.carrier().find_next(i)) {
    add_gen(alg.tilde(alg.single(static_cast<MonoId>(i))));
  }

  std::vector<DynElem> out;
  std::set<Bits> seen;
  auto add = [&](DynElem e) {
    if (!seen.insert(e.ids).second) return;
    if (out.size() >= cap) {
      throw SizeExceeded("generated test monoid exceeds cap " +
                             std::to_string(cap),
                         out.size());
    }
    out.push_back(std::move(e));
  };
  add(alg.unit());
  for (const DynElem& g : gens) add(g);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const DynElem x = out[i];
    add(alg.star(x));
    for (const DynElem& g : gens) {
      add(alg.mul(x, g));
      add(alg.mul(g, x));
    }
  }
  return out;
}

AtomView::AtomView(const DynAlgebra& alg, std::vector<DynElem> basis)
    : alg_(&alg), basis_(std::move(basis)) {}

Bits AtomView::h(const DynElem& v) const {
  Bits s(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].ids.is_subset_of(v.ids)) s.set(i);
  }
  return s;
}

DynElem AtomView::join(const Bits& s) const {
  DynElem r = alg_->empty();
  for (auto i = s.find_first(); i != Bits::npos; i = s.find_next(i)) {
    r.ids |= basis_[i].ids;
  }
  return r;
}

Bits AtomView::mul(const Bits& a, const Bits& b) const {
  return h(alg_->mul(join(a), join(b)));
}

Bits AtomView::star(const Bits& a) const { return h(alg_->star(join(a))); }

Bits AtomView::tilde(const Bits& a) const { return h(alg_->tilde(join(a))); }

Bits AtomView::unit() const { return h(alg_->unit()); }

// ---- suites ----------------------------------------------------------------

Report verify_ida(const DynAlgebra& alg, const SamplePolicy& policy,
                  Exec exec) {
  const std::vector<DynElem> fam = sample_family(alg, policy);
  const std::size_t f = fam.size();
  const std::size_t t = std::min(f, policy.triple_cap);
  const std::string note = family_note(alg, policy, f);
  Report r("IDA suite on " + alg.lattice().name());
  auto d = [&](std::uint64_t i) { return alg.describe(fam[i]); };
  auto w1 = [&](std::uint64_t i) { return std::vector<std::string>{d(i)}; };
  auto w2 = [&](std::uint64_t i) {
    return std::vector<std::string>{d(i / f), d(i % f)};
  };
  auto w3 = [&](std::uint64_t i) {
    return std::vector<std::string>{d(i / (t * t)), d(i / t % t), d(i % t)};
  };
  auto tt = [&](const DynElem& x) { return alg.tilde(alg.tilde(x)); };
  auto add = [&](Check c) { c.note = note; r.add(std::move(c)); };

  add(scan(
      "IDA1/associative", t * t * t,
      [&](std::uint64_t i) {
        const DynElem &x = fam[i / (t * t)], &y = fam[i / t % t],
                      &z = fam[i % t];
        return alg.mul(alg.mul(x, y), z) == alg.mul(x, alg.mul(y, z));
      },
      w3, exec));
  add(scan(
      "IDA1/distributive-left", t * t * t,
      [&](std::uint64_t i) {
        const DynElem &x = fam[i / (t * t)], &y = fam[i / t % t],
                      &z = fam[i % t];
        return alg.mul(x, alg.join(y, z)) ==
               alg.join(alg.mul(x, y), alg.mul(x, z));
      },
      w3, exec));
  add(scan(
      "IDA1/distributive-right", t * t * t,
      [&](std::uint64_t i) {
        const DynElem &x = fam[i / (t * t)], &y = fam[i / t % t],
                      &z = fam[i % t];
        return alg.mul(alg.join(y, z), x) ==
               alg.join(alg.mul(y, x), alg.mul(z, x));
      },
      w3, exec));
  add(scan(
      "IDA1/empty-join", f,
      [&](std::uint64_t i) {
        return alg.mul(fam[i], alg.empty()).empty() &&
               alg.mul(alg.empty(), fam[i]).empty();
      },
      w1, exec));
  add(scan(
      "IDA1/unit", f,
      [&](std::uint64_t i) {
        return alg.mul(alg.unit(), fam[i]) == fam[i] &&
               alg.mul(fam[i], alg.unit()) == fam[i];
      },
      w1, exec));
  add(scan(
      "IDA1/star-involutive", f,
      [&](std::uint64_t i) { return alg.star(alg.star(fam[i])) == fam[i]; },
      w1, exec));
  add(scan(
      "IDA1/star-reverses-products", f * f,
      [&](std::uint64_t i) {
        const DynElem &x = fam[i / f], &y = fam[i % f];
        return alg.star(alg.mul(x, y)) == alg.mul(alg.star(y), alg.star(x));
      },
      w2, exec));
  add(scan(
      "IDA1/star-preserves-joins", f * f,
      [&](std::uint64_t i) {
        const DynElem &x = fam[i / f], &y = fam[i % f];
        return alg.star(alg.join(x, y)) == alg.join(alg.star(x), alg.star(y));
      },
      w2, exec));
  add(scan(
      "IDA2", f * f,
      [&](std::uint64_t i) {
        const DynElem &x = fam[i / f], &y = fam[i % f];
        return alg.tilde(alg.mul(x, tt(y))) == alg.tilde(alg.mul(x, y));
      },
      w2, exec));
  add(scan(
      "IDA3/pairs", f * f,
      [&](std::uint64_t i) {
        const DynElem &x = fam[i / f], &y = fam[i % f];
        return alg.tilde(alg.join(tt(x), tt(y))) == alg.tilde(alg.join(x, y));
      },
      w2, exec));
  // the families F[0..k) for every k, including the empty family
  add(scan(
      "IDA3/prefixes", f + 1,
      [&](std::uint64_t k) {
        DynElem lhs = alg.empty(), rhs = alg.empty();
        for (std::size_t i = 0; i < k; ++i) {
          lhs.ids |= tt(fam[i]).ids;
          rhs.ids |= fam[i].ids;
        }
        return alg.tilde(lhs) == alg.tilde(rhs);
      },
      [&](std::uint64_t k) {
        return std::vector<std::string>{"first " + std::to_string(k)};
      },
      exec));
  add(scan(
      "IDA4", f,
      [&](std::uint64_t i) {
        const DynElem x = alg.tilde(fam[i]);
        return alg.star(x) == x;
      },
      w1, exec));
  add(scan(
      "IDA5", f * f,
      [&](std::uint64_t i) {
        const DynElem &x = fam[i / f], &y = fam[i % f];
        const DynElem nx = alg.tilde(x);
        return tt(alg.mul(tt(x), y)) ==
               alg.tilde(alg.join(nx, alg.tilde(alg.join(nx, y))));
      },
      w2, exec));
  add(scan(
      "tilde-tilde-closed-form", f,
      [&](std::uint64_t i) {
        return alg.tilde_tilde(fam[i]) == alg.tilde_tilde_iterated(fam[i]);
      },
      w1, exec));
  return r;
}

Report verify_module(const DynAlgebra& alg, const SamplePolicy& policy,
                     Exec exec) {
  const Oml& l = alg.lattice();
  const std::size_t n = l.size();
  const std::vector<DynElem> fam = sample_family(alg, policy);
  const std::size_t f = fam.size();
  const std::size_t c = std::min(f, policy.triple_cap);
  const std::string note = family_note(alg, policy, f);
  Report r("module suite on " + l.name());
  auto d = [&](std::uint64_t i) { return alg.describe(fam[i]); };
  auto lb = [&](std::uint64_t v) { return l.label(static_cast<Elem>(v)); };
  auto add = [&](Check ch) { ch.note = note; r.add(std::move(ch)); };
  auto tt = [&](const DynElem& x) { return alg.tilde(alg.tilde(x)); };
  // ⋁ of tests in ~K, read back as a lattice element
  auto vee = [&](std::span<const Elem> vs) {
    DynElem u = alg.empty();
    for (Elem v : vs) u.ids |= alg.test(v).ids;
    return *alg.as_test(tt(u));
  };

  // subsets of tests: ∅, every pair, everything
  std::vector<std::vector<Elem>> tsets{{}};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      tsets.push_back({static_cast<Elem>(a), static_cast<Elem>(b)});
    }
  }
  tsets.emplace_back();
  for (std::size_t a = 0; a < n; ++a) tsets.back().push_back(static_cast<Elem>(a));
  const std::size_t ns = tsets.size();

  add(scan(
      "A1", f * ns,
      [&](std::uint64_t i) {
        const DynElem& v = fam[i / ns];
        const auto& s = tsets[i % ns];
        std::vector<Elem> acted;
        for (Elem x : s) acted.push_back(alg.action(v, x));
        return alg.action(v, vee(s)) == vee(acted);
      },
      [&](std::uint64_t i) {
        std::vector<std::string> w{d(i / ns)};
        for (Elem x : tsets[i % ns]) w.push_back(lb(x));
        return w;
      },
      exec));
  add(scan(
      "A2", f * f * n,
      [&](std::uint64_t i) {
        const DynElem &x = fam[i / (f * n)], &y = fam[i / n % f];
        const auto a = static_cast<Elem>(i % n);
        const Elem both[] = {alg.action(x, a), alg.action(y, a)};
        return alg.action(alg.join(x, y), a) == vee(both);
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{d(i / (f * n)), d(i / n % f),
                                        lb(i % n)};
      },
      exec));
  add(scan(
      "A2/whole-family", n,
      [&](std::uint64_t a) {
        std::vector<Elem> acted;
        for (const DynElem& x : fam) {
          acted.push_back(alg.action(x, static_cast<Elem>(a)));
        }
        return alg.action(alg.join_of(fam), static_cast<Elem>(a)) ==
               vee(acted);
      },
      [&](std::uint64_t a) { return std::vector<std::string>{lb(a)}; },
      exec));
  add(scan(
      "A3", f * f * n,
      [&](std::uint64_t i) {
        const DynElem &u = fam[i / (f * n)], &w = fam[i / n % f];
        const auto a = static_cast<Elem>(i % n);
        return alg.action(u, alg.action(w, a)) ==
               alg.action(alg.mul(u, w), a);
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{d(i / (f * n)), d(i / n % f),
                                        lb(i % n)};
      },
      exec));
  add(scan(
      "A4", n,
      [&](std::uint64_t a) {
        return alg.action(alg.unit(), static_cast<Elem>(a)) == a;
      },
      [&](std::uint64_t a) { return std::vector<std::string>{lb(a)}; },
      exec));
  add(scan(
      "triple-tilde", f,
      [&](std::uint64_t i) {
        return alg.tilde(tt(fam[i])) == alg.tilde(fam[i]);
      },
      [&](std::uint64_t i) { return std::vector<std::string>{d(i)}; },
      exec));
  add(scan(
      "sasaki-action", n * n,
      [&](std::uint64_t i) {
        const auto u = static_cast<Elem>(i / n), v = static_cast<Elem>(i % n);
        return alg.action(alg.test(u), v) == sasaki_projection(l, u, v);
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{lb(i / n), lb(i % n)};
      },
      exec));
  add(scan(
      "hom/joins", f * f,
      [&](std::uint64_t i) {
        const DynElem &x = fam[i / f], &y = fam[i % f];
        const Elem parts[] = {*alg.as_test(tt(x)), *alg.as_test(tt(y))};
        return *alg.as_test(tt(alg.join(x, y))) == vee(parts);
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{d(i / f), d(i % f)};
      },
      exec));
  add(scan(
      "hom/product", f * f,
      [&](std::uint64_t i) {
        const DynElem &u = fam[i / f], &v = fam[i % f];
        return *alg.as_test(tt(alg.mul(u, v))) ==
               alg.action(u, *alg.as_test(tt(v)));
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{d(i / f), d(i % f)};
      },
      exec));
  // action signatures make the congruence scan cheap
  std::vector<std::vector<Elem>> sig(c);
  for_each_index(
      c,
      [&](std::uint64_t i) {
        for (std::size_t v = 0; v < n; ++v) {
          sig[i].push_back(alg.action(fam[i], static_cast<Elem>(v)));
        }
      },
      exec);
  auto same = [&](const DynElem& x, const DynElem& y) {
    return alg.equiv(x, y);
  };
  add(scan(
      "congruence", c * c * c,
      [&](std::uint64_t i) {
        const std::size_t a = i / (c * c), b = i / c % c;
        if (a == b || sig[a] != sig[b]) return true;
        const DynElem &s = fam[a], &t = fam[b], &q = fam[i % c];
        return same(alg.mul(s, q), alg.mul(t, q)) &&
               same(alg.mul(q, s), alg.mul(q, t)) &&
               same(alg.join(s, q), alg.join(t, q));
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{d(i / (c * c)), d(i / c % c),
                                        d(i % c)};
      },
      exec));
  return r;
}

Report verify_toda(const DynAlgebra& alg, const SamplePolicy& policy,
                   Exec exec) {
  Report r("TODA suite on " + alg.lattice().name());
  const TestLattice tl = test_lattice(alg, exec);
  r.append(tl.report, "TODA1");

  std::vector<DynElem> gen;
  try {
    gen = generated_test_monoid(alg, 4 * alg.monoid().size() + 16);
  } catch (const SizeExceeded& e) {
    r.inconclusive("TODA2", e.what());
    return r;
  }
  const std::size_t g = gen.size();
  auto gd = [&](std::uint64_t i) { return alg.describe(gen[i]); };

  r.add(scan(
      "TODA2/generated-in-carrier", g,
      [&](std::uint64_t i) { return alg.in_carrier(gen[i]); },
      [&](std::uint64_t i) { return std::vector<std::string>{gd(i)}; },
      exec));
  {
    std::set<Bits> singles;
    for (auto i = alg.carrier().find_first(); i != Bits::npos;
         i = alg.carrier().find_next(i)) {
      singles.insert(alg.single(static_cast<MonoId>(i)).ids);
    }
    std::set<Bits> got;
    for (const DynElem& e : gen) got.insert(e.ids);
    std::vector<std::string> w;
    for (const Bits& b : singles) {
      if (!got.count(b)) {
        w.push_back("missing " + alg.describe(DynElem{&alg.monoid(), b}));
        break;
      }
    }
    if (w.empty()) {
      for (const Bits& b : got) {
        if (!singles.count(b)) {
          w.push_back("extra " + alg.describe(DynElem{&alg.monoid(), b}));
          break;
        }
      }
    }
    r.add("T/singletons", w.empty(), g, w);
  }

  std::vector<DynElem> inside;
  for (const DynElem& e : gen) {
    if (alg.in_carrier(e)) inside.push_back(e);
  }
  const std::vector<DynElem> fam = sample_family(alg, policy);
  const std::size_t f = fam.size();
  auto fd = [&](std::uint64_t i) { return alg.describe(fam[i]); };

  if (is_exhaustive(alg, policy)) {
    // union closure of the generated monoid, then closure under ⊙ and *
    std::set<Bits> rs{alg.empty().ids};
    for (const DynElem& e : inside) {
      std::vector<Bits> add;
      for (const Bits& b : rs) add.push_back(b | e.ids);
      rs.insert(add.begin(), add.end());
    }
    const std::uint64_t want = std::uint64_t{1} << alg.carrier_size();
    r.add("TODA2/covers-carrier", rs.size() == want, want, {},
          std::to_string(rs.size()) + " of " + std::to_string(want) +
              " subsets regenerated");
    const std::vector<Bits> rv(rs.begin(), rs.end());
    const std::size_t k = rv.size();
    auto el = [&](std::size_t i) { return DynElem{&alg.monoid(), rv[i]}; };
    r.add(scan(
        "TODA2/closed", k * k,
        [&](std::uint64_t i) {
          const DynElem x = el(i / k), y = el(i % k);
          return alg.in_carrier(alg.mul(x, y)) && alg.in_carrier(alg.star(x));
        },
        [&](std::uint64_t i) {
          return std::vector<std::string>{alg.describe(el(i / k)),
                                          alg.describe(el(i % k))};
        },
        exec));
  } else {
    AtomView hv(alg, inside);
    r.add(scan(
        "TODA2/regenerates-family", f,
        [&](std::uint64_t i) { return hv.join(hv.h(fam[i])) == fam[i]; },
        [&](std::uint64_t i) { return std::vector<std::string>{fd(i)}; },
        exec));
    const std::size_t gi = inside.size();
    r.add(scan(
        "TODA2/closed", gi * gi,
        [&](std::uint64_t i) {
          return alg.in_carrier(alg.mul(inside[i / gi], inside[i % gi]));
        },
        [&](std::uint64_t i) {
          return std::vector<std::string>{alg.describe(inside[i / gi]),
                                          alg.describe(inside[i % gi])};
        },
        exec));
  }

  AtomView hv(alg, gen);
  r.add(scan(
      "TODA3/normal-form-rejoins", f,
      [&](std::uint64_t i) {
        const std::vector<DynElem> s = normal_form(alg, fam[i]);
        for (const DynElem& e : s) {
          if (e.count() != 1 || !e.ids.is_subset_of(fam[i].ids)) return false;
        }
        return alg.join_of(s) == fam[i] && s.size() == fam[i].count();
      },
      [&](std::uint64_t i) { return std::vector<std::string>{fd(i)}; },
      exec));
  // sets of generated elements, read off the family bit patterns
  auto as_atoms = [&](const DynElem& a) {
    Bits s(g);
    for (auto i = a.ids.find_first(); i != Bits::npos && i < g;
         i = a.ids.find_next(i)) {
      s.set(i);
    }
    return s;
  };
  r.add(scan(
      "TODA3/unique-decomposition", f,
      [&](std::uint64_t i) {
        const Bits s = as_atoms(fam[i]);
        return hv.h(hv.join(s)) == s;
      },
      [&](std::uint64_t i) { return std::vector<std::string>{fd(i)}; },
      exec));
  r.add(scan(
      "TODA4", g * g,
      [&](std::uint64_t i) {
        const std::size_t a = i / g, b = i % g;
        return a == b || alg.separating_test(gen[a], gen[b]).has_value();
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{gd(i / g), gd(i % g)};
      },
      exec));

  // atoms of the inclusion order are the generated monoid elements
  std::set<Bits> gset;
  for (const DynElem& e : gen) gset.insert(e.ids);
  r.add(scan(
      "atoms/exactly-T", f,
      [&](std::uint64_t i) {
        const DynElem& a = fam[i];
        if (a.empty()) return true;
        bool has_smaller = false;
        for (const DynElem& e : gen) {
          if (e.ids.is_proper_subset_of(a.ids) && !e.empty()) has_smaller = true;
        }
        const bool atom = a.count() == 1 && !has_smaller;
        return atom == (gset.count(a.ids) > 0);
      },
      [&](std::uint64_t i) { return std::vector<std::string>{fd(i)}; },
      exec));
  r.add(scan(
      "atoms/atomic", f,
      [&](std::uint64_t i) {
        if (fam[i].empty()) return true;
        for (const DynElem& e : gen) {
          if (e.ids.is_subset_of(fam[i].ids)) return true;
        }
        return false;
      },
      [&](std::uint64_t i) { return std::vector<std::string>{fd(i)}; },
      exec));

  r.add(scan(
      "h/join-of-h", f,
      [&](std::uint64_t i) { return hv.join(hv.h(fam[i])) == fam[i]; },
      [&](std::uint64_t i) { return std::vector<std::string>{fd(i)}; },
      exec));
  r.add(scan(
      "h/operations", f * f,
      [&](std::uint64_t i) {
        const DynElem &x = fam[i / f], &y = fam[i % f];
        const Bits hx = hv.h(x), hy = hv.h(y);
        return hv.h(alg.join(x, y)) == (hx | hy) &&
               hv.h(alg.mul(x, y)) == hv.mul(hx, hy) &&
               hv.h(alg.star(x)) == hv.star(hx) &&
               hv.h(alg.tilde(x)) == hv.tilde(hx);
      },
      [&](std::uint64_t i) { return std::vector<std::string>{fd(i / f),
                                                             fd(i % f)}; },
      exec));
  r.add("h/unit", hv.h(alg.unit()) == hv.unit() && hv.unit().count() == 1, 1);
  Report out(r.subject());
  for (Check ch : r.checks()) {
    if (ch.note.empty() && ch.name.rfind("TODA1", 0) != 0) {
      ch.note = family_note(alg, policy, f);
    }
    out.add(std::move(ch));
  }
  return out;
}

std::optional<std::pair<DynElem, Elem>> find_tilde_inequivalence(
    const DynAlgebra& alg, std::span<const DynElem> family) {
  for (const DynElem& a : family) {
    if (auto v = alg.separating_test(a, alg.tilde_tilde(a))) {
      return std::pair{a, *v};
    }
  }
  return std::nullopt;
}

// ---- μ and ν ---------------------------------------------------------------

DynElem mu_map(const DynAlgebra& alg, MonoId f) {
  if (f >= alg.monoid().size() || !alg.carrier().test(f)) {
    throw std::invalid_argument("element is not in the algebra's monoid");
  }
  return alg.single(f);
}

Report check_mu(const DynAlgebra& alg, Exec exec) {
  const InvMonoid& mono = alg.monoid();
  const std::size_t q = mono.size();
  Report r("mu on " + alg.lattice().name());
  auto nm = [&](std::uint64_t a) { return mono.name(static_cast<MonoId>(a)); };
  r.add("unit", mu_map(alg, mono.unit()) == alg.unit(), 1);
  r.add(scan(
      "generators", alg.lattice().size(),
      [&](std::uint64_t m) {
        const auto e = static_cast<Elem>(m);
        return mu_map(alg, mono.generator(e)) == alg.test(e);
      },
      [&](std::uint64_t m) {
        return std::vector<std::string>{
            alg.lattice().label(static_cast<Elem>(m))};
      },
      exec));
  r.add(scan(
      "product", q * q,
      [&](std::uint64_t i) {
        const auto a = static_cast<MonoId>(i / q), b = static_cast<MonoId>(i % q);
        return mu_map(alg, mono.compose(a, b)) ==
               alg.mul(mu_map(alg, a), mu_map(alg, b));
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{nm(i / q), nm(i % q)};
      },
      exec));
  r.add(scan(
      "involution", q,
      [&](std::uint64_t a) {
        const auto x = static_cast<MonoId>(a);
        return mu_map(alg, mono.star(x)) == alg.star(mu_map(alg, x));
      },
      [&](std::uint64_t a) { return std::vector<std::string>{nm(a)}; },
      exec));
  r.add(scan(
      "injective", q * q,
      [&](std::uint64_t i) {
        const auto a = static_cast<MonoId>(i / q), b = static_cast<MonoId>(i % q);
        return a == b || !(mu_map(alg, a) == mu_map(alg, b));
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{nm(i / q), nm(i % q)};
      },
      exec));
  {
    std::set<Bits> image, gen;
    for (MonoId a = 0; a < q; ++a) image.insert(mu_map(alg, a).ids);
    for (const DynElem& e : generated_test_monoid(alg)) gen.insert(e.ids);
    r.add("onto-generated-monoid", image == gen, q, {},
          std::to_string(image.size()) + " images, " +
              std::to_string(gen.size()) + " generated");
  }
  return r;
}

Table action_table(const DynAlgebra& alg, const TestLattice& tl,
                   const DynElem& k) {
  Table t(tl.elems.size());
  for (std::size_t i = 0; i < tl.elems.size(); ++i) {
    auto j = tl.index(alg.tilde(alg.tilde(alg.mul(k, tl.elems[i]))));
    if (!j) throw std::logic_error("action left the test set");
    t[i] = *j;
  }
  return t;
}

NuMap nu_map(const DynAlgebra& alg, const TestLattice& tl, std::uint64_t cap,
             Exec exec) {
  if (!tl.oml || !tl.delta || !tl.report.passed()) {
    throw PreconditionError("test lattice of '" + alg.lattice().name() +
                            "' was not established");
  }
  NuMap nu;
  nu.target =
      std::make_shared<const InvMonoid>(generate_T(tl.oml, cap, exec));
  const InvMonoid& src = alg.monoid();
  const InvMonoid& dst = *nu.target;
  const std::size_t q = src.size();
  nu.image.assign(q, std::nullopt);
  for_each_index(
      q,
      [&](std::uint64_t a) {
        if (!alg.carrier().test(a)) return;
        nu.image[a] = dst.find(
            action_table(alg, tl, alg.single(static_cast<MonoId>(a))));
      },
      exec);

  Report& r = nu.report;
  r = Report("nu on " + alg.lattice().name());
  auto nm = [&](std::uint64_t a) { return src.name(static_cast<MonoId>(a)); };
  r.add(scan(
      "into-target", q,
      [&](std::uint64_t a) {
        return !alg.carrier().test(a) || nu.image[a].has_value();
      },
      [&](std::uint64_t a) { return std::vector<std::string>{nm(a)}; },
      exec));
  if (!r.passed()) return nu;
  r.add("unit", nu.image[src.unit()] == dst.unit(), 1);
  r.add(scan(
      "product", q * q,
      [&](std::uint64_t i) {
        const auto a = static_cast<MonoId>(i / q), b = static_cast<MonoId>(i % q);
        return nu.image[src.compose(a, b)] ==
               dst.compose(*nu.image[a], *nu.image[b]);
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{nm(i / q), nm(i % q)};
      },
      exec));
  r.add(scan(
      "involution", q,
      [&](std::uint64_t a) {
        const auto x = static_cast<MonoId>(a);
        return nu.image[src.star(x)] == dst.star(*nu.image[x]);
      },
      [&](std::uint64_t a) { return std::vector<std::string>{nm(a)}; },
      exec));
  r.add(scan(
      "injective", q * q,
      [&](std::uint64_t i) {
        const std::size_t a = i / q, b = i % q;
        return a == b || nu.image[a] != nu.image[b];
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{nm(i / q), nm(i % q)};
      },
      exec));
  {
    std::vector<char> hit(dst.size(), 0);
    for (const auto& x : nu.image) {
      if (x) hit[*x] = 1;
    }
    auto miss = std::find(hit.begin(), hit.end(), 0);
    r.add("surjective", miss == hit.end(), dst.size(),
          miss == hit.end()
              ? std::vector<std::string>{}
              : std::vector<std::string>{dst.name(
                    static_cast<MonoId>(miss - hit.begin()))});
  }
  const Oml& m = alg.lattice();
  const std::size_t n = m.size();
  r.add(scan(
      "tests-to-projections", n,
      [&](std::uint64_t u) {
        const auto e = static_cast<Elem>(u);
        return nu.image[src.generator(e)] == dst.generator((*tl.delta)(e));
      },
      [&](std::uint64_t u) {
        return std::vector<std::string>{m.label(static_cast<Elem>(u))};
      },
      exec));
  r.add(scan(
      "order-on-tests", n * n,
      [&](std::uint64_t i) {
        const auto u = static_cast<Elem>(i / n), v = static_cast<Elem>(i % n);
        const MonoId pu = *nu.image[src.generator(u)];
        const MonoId pv = *nu.image[src.generator(v)];
        return m.leq(u, v) == (dst.compose(pv, pu) == pu);
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{m.label(static_cast<Elem>(i / n)),
                                        m.label(static_cast<Elem>(i % n))};
      },
      exec));
  return nu;
}

}  // namespace omloq
