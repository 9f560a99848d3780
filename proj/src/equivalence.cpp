#include "omloq/equivalence.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace omloq {

Report TodaHandle::report() const {
  Report r("gamma(" + oml->name() + ")");
  r.append(monoid_audit, "monoid");
  r.append(ida, "ida");
  r.append(module, "module");
  r.append(toda, "toda");
  r.add("SFDA", ida.passed() && tests.report.passed(), 1, {},
        "IDA suite and test lattice together");
  return r;
}

TodaPtr gamma_object(const OmlPtr& m, const GammaOptions& opts) {
  return gamma_object(std::make_shared<const InvMonoid>(
                          generate_T(m, opts.monoid_cap, opts.exec)),
                      opts);
}

TodaPtr gamma_object(std::shared_ptr<const InvMonoid> mono,
                     const GammaOptions& opts) {
  auto h = std::make_shared<TodaHandle>();
  h->oml = mono->lattice();
  h->monoid = mono;
  h->alg = std::make_shared<const DynAlgebra>(mono);
  h->tests = test_lattice(*h->alg, opts.exec);
  h->monoid_audit = audit_minimality(*mono, opts.exec);
  h->ida = verify_ida(*h->alg, opts.policy, opts.exec);
  h->module = verify_module(*h->alg, opts.policy, opts.exec);
  h->toda = verify_toda(*h->alg, opts.policy, opts.exec);
  h->verified = h->monoid_audit.passed() && h->ida.passed() &&
                h->module.passed() && h->toda.passed() &&
                h->tests.report.passed();
  return h;
}

// ---- morphisms -------------------------------------------------------------

DynElem DynMorphism::operator()(const DynElem& a) const {
  DynElem r = dst->alg->empty();
  for (MonoId x : a.members()) r.ids.set(atoms.at(x));
  return r;
}

DynMorphism identity_morphism(const TodaPtr& h) {
  DynMorphism id{h, h, std::vector<MonoId>(h->monoid->size())};
  for (MonoId a = 0; a < id.atoms.size(); ++a) id.atoms[a] = a;
  return id;
}

DynMorphism compose(const DynMorphism& second, const DynMorphism& first) {
  if (first.dst != second.src) {
    throw std::invalid_argument("morphisms do not compose");
  }
  DynMorphism r{first.src, second.dst, first.atoms};
  for (MonoId& a : r.atoms) a = second.atoms.at(a);
  return r;
}

Report verify_morphism(const DynMorphism& phi, const SamplePolicy& policy,
                       Exec exec) {
  const DynAlgebra& s = *phi.src->alg;
  const DynAlgebra& t = *phi.dst->alg;
  Report r("morphism " + s.lattice().name() + " -> " + t.lattice().name());
  {
    std::set<MonoId> img(phi.atoms.begin(), phi.atoms.end());
    const bool ok = phi.atoms.size() == s.monoid().size() &&
                    img.size() == phi.atoms.size() &&
                    img.size() == t.monoid().size();
    r.add("bijective", ok, phi.atoms.size(), {},
          ok ? "" : std::to_string(img.size()) + " images of " +
                        std::to_string(t.monoid().size()));
    if (!ok) return r;
  }
  const std::vector<DynElem> fam = sample_family(s, policy);
  const std::size_t f = fam.size();
  auto w1 = [&](std::uint64_t i) {
    return std::vector<std::string>{s.describe(fam[i])};
  };
  auto w2 = [&](std::uint64_t i) {
    return std::vector<std::string>{s.describe(fam[i / f]),
                                    s.describe(fam[i % f])};
  };
  r.add("unit", phi(s.unit()) == t.unit(), 1);
  r.add(scan(
      "join", f * f,
      [&](std::uint64_t i) {
        const DynElem &x = fam[i / f], &y = fam[i % f];
        return phi(s.join(x, y)) == t.join(phi(x), phi(y));
      },
      w2, exec));
  r.add(scan(
      "mul", f * f,
      [&](std::uint64_t i) {
        const DynElem &x = fam[i / f], &y = fam[i % f];
        return phi(s.mul(x, y)) == t.mul(phi(x), phi(y));
      },
      w2, exec));
  r.add(scan(
      "star", f,
      [&](std::uint64_t i) { return phi(s.star(fam[i])) == t.star(phi(fam[i])); },
      w1, exec));
  r.add(scan(
      "tilde", f,
      [&](std::uint64_t i) {
        return phi(s.tilde(fam[i])) == t.tilde(phi(fam[i]));
      },
      w1, exec));
  return r;
}

DynMorphism gamma_morphism(const OrthoIso& k, const TodaPtr& src,
                           const TodaPtr& dst) {
  if (!(*k.src == *src->oml) || !(*k.dst == *dst->oml)) {
    throw std::invalid_argument("morphism endpoints do not match the algebras");
  }
  if (!check_ortho_iso(k, Exec::serial).passed()) {
    throw PreconditionError("not an ortholattice isomorphism");
  }
  const std::size_t n = k.map.size();
  std::vector<Elem> inv(n);
  for (std::size_t x = 0; x < n; ++x) inv[k.map[x]] = static_cast<Elem>(x);
  DynMorphism phi{src, dst, {}};
  for (const MonoidElem& e : src->monoid->elems()) {
    Table t(n);
    for (std::size_t y = 0; y < n; ++y) t[y] = k.map[e.tbl[inv[y]]];
    auto id = dst->monoid->find(t);
    if (!id) {
      throw std::logic_error("conjugate of " + src->monoid->name(e.id) +
                             " is missing from the target monoid");
    }
    phi.atoms.push_back(*id);
  }
  return phi;
}

OmlPtr psi_object(const TodaHandle& h) {
  if (!h.verified || !h.tests.oml) {
    throw PreconditionError("algebra over '" + h.oml->name() +
                            "' is not verified");
  }
  return h.tests.oml;
}

OrthoIso psi_morphism(const DynMorphism& phi) {
  const TestLattice& s = phi.src->tests;
  const TestLattice& t = phi.dst->tests;
  if (!s.oml || !t.oml) throw PreconditionError("test lattice missing");
  OrthoIso g{s.oml, t.oml, {}};
  for (const DynElem& e : s.elems) {
    auto j = t.index(phi(e));
    if (!j) {
      throw std::logic_error("image of test " + phi.src->alg->describe(e) +
                             " is not a test");
    }
    g.map.push_back(*j);
  }
  return g;
}

Report check_naturality_mu(const OrthoIso& k, const TodaPtr& src,
                           const TodaPtr& dst, Exec exec) {
  Report r("mu naturality " + src->oml->name() + " -> " + dst->oml->name());
  const DynMorphism phi = gamma_morphism(k, src, dst);
  const OrthoIso psi = psi_morphism(phi);
  r.append(check_ortho_iso(psi, exec), "psi");
  const OrthoIso& d1 = *src->tests.delta;
  const OrthoIso& d2 = *dst->tests.delta;
  const Oml& m = *src->oml;
  auto lb = [&](std::uint64_t x) {
    return std::vector<std::string>{m.label(static_cast<Elem>(x))};
  };
  r.add(scan(
      "square", m.size(),
      [&](std::uint64_t x) {
        const auto e = static_cast<Elem>(x);
        return psi(d1(e)) == d2(k(e));
      },
      lb, exec));
  r.add(scan(
      "tests-map-to-tests", m.size(),
      [&](std::uint64_t x) {
        const auto e = static_cast<Elem>(x);
        return phi(src->alg->test(e)) == dst->alg->test(k(e));
      },
      lb, exec));
  return r;
}

// ---- λ ---------------------------------------------------------------------

LambdaComponent lambda_component(const TodaPtr& h, const GammaOptions& opts) {
  if (!h->verified) {
    throw PreconditionError("algebra over '" + h->oml->name() +
                            "' is not verified");
  }
  LambdaComponent lc;
  lc.source = h;
  lc.report = Report("lambda at " + h->oml->name());
  Report& r = lc.report;
  const DynAlgebra& alg = *h->alg;
  lc.nu = nu_map(alg, h->tests, opts.monoid_cap, opts.exec);
  r.append(lc.nu.report, "nu");
  if (!lc.nu.report.passed()) return lc;
  lc.target = gamma_object(lc.nu.target, opts);
  r.add("target-verified", lc.target->verified, 1, {},
        "suites on the algebra over the test lattice");
  lc.lambda = DynMorphism{h, lc.target, {}};
  for (const auto& x : lc.nu.image) lc.lambda.atoms.push_back(*x);
  const DynAlgebra& tgt = *lc.target->alg;

  const std::vector<DynElem> fam = sample_family(alg, opts.policy);
  const std::size_t f = fam.size();
  auto w1 = [&](std::uint64_t i) {
    return std::vector<std::string>{alg.describe(fam[i])};
  };
  auto w2 = [&](std::uint64_t i) {
    return std::vector<std::string>{alg.describe(fam[i / f]),
                                    alg.describe(fam[i % f])};
  };
  const DynMorphism& lam = lc.lambda;

  r.add(scan(
      "normal-form-singletons", f,
      [&](std::uint64_t i) {
        const auto s = normal_form(alg, fam[i]);
        for (const DynElem& e : s) {
          if (e.count() != 1) return false;
        }
        return s.size() == fam[i].count();
      },
      w1, opts.exec));
  r.add(scan(
      "cardinality", f,
      [&](std::uint64_t i) { return lam(fam[i]).count() == fam[i].count(); },
      w1, opts.exec));

  // generic path: atoms below A via h, each sent to its action table
  const AtomView hv(alg, generated_test_monoid(alg));
  const InvMonoid& dm = *lc.nu.target;
  r.add(scan(
      "generic-path", f,
      [&](std::uint64_t i) {
        DynElem out = tgt.empty();
        const Bits s = hv.h(fam[i]);
        for (auto j = s.find_first(); j != Bits::npos; j = s.find_next(j)) {
          auto id = dm.find(action_table(alg, h->tests, hv.basis()[j]));
          if (!id) return false;
          out.ids.set(*id);
        }
        return out == lam(fam[i]);
      },
      w1, opts.exec));
  r.add("unit", lam(alg.unit()) == tgt.unit(), 1);
  r.append(verify_morphism(lam, opts.policy, opts.exec), "hom");

  // 𝒫(𝒯(K)) -> 𝒫(𝒯(Lin(~K))), S ↦ λ(⊔S), against the transported operations
  auto via = [&](const Bits& s) { return lam(hv.join(s)); };
  r.add(scan(
      "corollary/via-h", f * f,
      [&](std::uint64_t i) {
        const Bits s = hv.h(fam[i / f]), t = hv.h(fam[i % f]);
        return via(s | t) == tgt.join(via(s), via(t)) &&
               via(hv.mul(s, t)) == tgt.mul(via(s), via(t)) &&
               via(hv.star(s)) == tgt.star(via(s)) &&
               via(hv.tilde(s)) == tgt.tilde(via(s)) &&
               hv.h(hv.join(s)) == s;
      },
      w2, opts.exec));
  r.add("corollary/via-h-unit", via(hv.unit()) == tgt.unit(), 1);
  return lc;
}

Report check_naturality_lambda(const DynMorphism& phi,
                               const LambdaComponent& at_src,
                               const LambdaComponent& at_dst,
                               const GammaOptions& opts) {
  Report r("lambda naturality " + phi.src->oml->name() + " -> " +
           phi.dst->oml->name());
  if (!at_src.report.passed() || !at_dst.report.passed()) {
    r.inconclusive("square", "lambda component failed");
    return r;
  }
  if (at_src.source != phi.src || at_dst.source != phi.dst) {
    throw std::invalid_argument("lambda components do not match the morphism");
  }
  const OrthoIso psi = psi_morphism(phi);
  const DynMorphism gp = gamma_morphism(psi, at_src.target, at_dst.target);
  const DynAlgebra& alg = *phi.src->alg;
  std::vector<DynElem> fam = sample_family(alg, opts.policy);
  {
    std::set<Bits> seen;
    for (const DynElem& e : fam) seen.insert(e.ids);
    const std::size_t q = alg.monoid().size();
    for (MonoId a = 0; a < q; ++a) {
      for (MonoId b = a + 1; b < q; ++b) {
        DynElem e = alg.join(alg.single(a), alg.single(b));
        if (seen.insert(e.ids).second) fam.push_back(std::move(e));
      }
    }
  }
  r.add(scan(
      "square", fam.size(),
      [&](std::uint64_t i) {
        return gp(at_src.lambda(fam[i])) == at_dst.lambda(phi(fam[i]));
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{alg.describe(fam[i])};
      },
      opts.exec));
  return r;
}

// ---- round trip ------------------------------------------------------------

Report round_trip_report(const OmlPtr& m, std::span<const OrthoIso> morphisms,
                         const GammaOptions& opts) {
  Report r("round trip of " + m->name());
  const TodaPtr h = gamma_object(m, opts);
  r.append(h->report(), "gamma");
  if (!h->verified) return r;
  r.append(check_mu(*h->alg, opts.exec), "mu");
  auto lam = std::make_shared<LambdaComponent>(lambda_component(h, opts));
  r.append(lam->report, "lambda");
  if (!lam->report.passed()) return r;

  struct Node {
    TodaPtr h;
    std::shared_ptr<LambdaComponent> lam;
  };
  std::vector<Node> nodes{{h, lam}};
  auto node_for = [&](const OmlPtr& l) -> Node {
    for (const Node& nd : nodes) {
      if (*nd.h->oml == *l) return nd;
    }
    TodaPtr d = gamma_object(l, opts);
    std::shared_ptr<LambdaComponent> dl;
    if (d->verified) {
      dl = std::make_shared<LambdaComponent>(lambda_component(d, opts));
    }
    nodes.push_back({d, dl});
    return nodes.back();
  };

  std::vector<OrthoIso> ks{identity_iso(m)};
  ks.insert(ks.end(), morphisms.begin(), morphisms.end());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const OrthoIso& k = ks[i];
    const std::string p = "morphism[" + std::to_string(i) + "]";
    if (!(*k.src == *m)) {
      throw std::invalid_argument(p + " does not start at " + m->name());
    }
    const Node dn = node_for(k.dst);
    if (!dn.h->verified || !dn.lam) {
      r.append(dn.h->report(), p + "/target");
      continue;
    }
    const DynMorphism phi = gamma_morphism(k, h, dn.h);
    r.append(verify_morphism(phi, opts.policy, opts.exec), p + "/gamma");
    const DynMorphism back = gamma_morphism(inverse(k), dn.h, h);
    r.add(p + "/functor/inverse", compose(back, phi) == identity_morphism(h),
          1);
    const OrthoIso psi = psi_morphism(phi);
    if (i == 0) {
      r.add(p + "/functor/gamma-identity", phi == identity_morphism(h), 1);
      r.add(p + "/functor/psi-identity",
            psi.map == identity_iso(psi.src).map, 1);
    }
    if (dn.h == h) {
      const DynMorphism twice = compose(phi, phi);
      r.add(p + "/functor/gamma-composition",
            gamma_morphism(compose(k, k), h, h) == twice, 1);
      r.add(p + "/functor/psi-composition",
            psi_morphism(twice).map == compose(psi, psi).map, 1);
      r.append(check_naturality_lambda(twice, *lam, *lam, opts),
               p + "/lambda-composed");
    }
    r.append(check_naturality_mu(k, h, dn.h, opts.exec), p + "/mu");
    r.append(check_naturality_lambda(phi, *lam, *dn.lam, opts),
             p + "/lambda");
  }
  return r;
}

}  // namespace omloq
