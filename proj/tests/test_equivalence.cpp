#include <doctest.h>

#include "omloq/equivalence.hpp"
#include "oracle.hpp"

using namespace omloq;

namespace {

OmlPtr share(Oml l) { return std::make_shared<const Oml>(std::move(l)); }

OrthoIso morph(const char* file, const OmlPtr& src, const OmlPtr& dst) {
  return resolve_morphism(load_morphism(oracle::data(file)), src, dst);
}

GammaOptions quick() {
  GammaOptions o;
  o.policy.random = 40;
  return o;
}

}  // namespace

TEST_CASE("Γ on objects") {
  const TodaPtr c = gamma_object(share(catalog("chain2")));
  CHECK(c->verified);
  CHECK(c->monoid->size() == 2);
  CHECK(psi_object(*c)->size() == 2);

  const TodaPtr b2 = gamma_object(share(catalog("boolean", 2)));
  CHECK(b2->verified);
  CHECK(audit_boolean(*b2->monoid).passed());
  CHECK_MESSAGE(b2->report().passed(), b2->report().to_text());
  CHECK(b2->report().find("SFDA")->ok());

  CHECK_THROWS_AS(gamma_object(share(catalog("o6"))), PreconditionError);
}

TEST_CASE("Γ on morphisms") {
  const OmlPtr mo2 = share(load_lattice(oracle::data("mo2.lat")));
  const TodaPtr h = gamma_object(mo2, quick());
  REQUIRE(h->verified);
  const DynAlgebra& A = *h->alg;

  CHECK(gamma_morphism(identity_iso(mo2), h, h) == identity_morphism(h));

  const OrthoIso swap = morph("mo2_swap.morph", mo2, mo2);
  const DynMorphism g = gamma_morphism(swap, h, h);
  CHECK(g(A.test(mo2->at("a"))) == A.test(mo2->at("b")));
  CHECK(g(A.test(mo2->at("b'"))) == A.test(mo2->at("a'")));
  CHECK(verify_morphism(g, quick().policy).passed());
  CHECK(compose(gamma_morphism(inverse(swap), h, h), g) ==
        identity_morphism(h));

  // Γ(l ∘ k) = Γ(l) ∘ Γ(k) over every pair of automorphisms
  const auto autos = find_automorphisms(mo2);
  REQUIRE(autos.size() == 8);
  for (const OrthoIso& k : autos) {
    for (const OrthoIso& l : autos) {
      CHECK(gamma_morphism(compose(l, k), h, h) ==
            compose(gamma_morphism(l, h, h), gamma_morphism(k, h, h)));
      CHECK(psi_morphism(compose(gamma_morphism(l, h, h),
                                 gamma_morphism(k, h, h)))
                .map == compose(psi_morphism(gamma_morphism(l, h, h)),
                                psi_morphism(gamma_morphism(k, h, h)))
                            .map);
    }
  }

  // Ψ(Γ(k)) ∘ δ = δ ∘ k
  const OrthoIso psi = psi_morphism(g);
  const OrthoIso& d = *h->tests.delta;
  for (Elem m = 0; m < mo2->size(); ++m) CHECK(psi(d(m)) == d(swap(m)));

  const OrthoIso bad = morph("mo2_bad_perp.morph", mo2, mo2);
  CHECK_THROWS_AS(gamma_morphism(bad, h, h), PreconditionError);
  const TodaPtr c = gamma_object(share(catalog("chain2")));
  CHECK_THROWS_AS(gamma_morphism(swap, h, c), std::invalid_argument);
}

TEST_CASE("μ naturality") {
  const OmlPtr b2 = share(load_lattice(oracle::data("b2.lat")));
  const OmlPtr b2alt = share(load_lattice(oracle::data("b2alt.lat")));
  const TodaPtr h1 = gamma_object(b2), h2 = gamma_object(b2alt);
  CHECK(check_naturality_mu(identity_iso(b2), h1, h1).passed());
  const Report r =
      check_naturality_mu(morph("b2_relabel.morph", b2, b2alt), h1, h2);
  CHECK_MESSAGE(r.passed(), r.to_text());

  const OmlPtr mo3 = share(load_lattice(oracle::data("mo3.lat")));
  const TodaPtr h3 = gamma_object(mo3, quick());
  CHECK(check_naturality_mu(morph("mo3_cycle.morph", mo3, mo3), h3, h3)
            .passed());
}

TEST_CASE("λ component") {
  const OmlPtr mo2 = share(catalog("mo", 2));
  const TodaPtr h = gamma_object(mo2, quick());
  const LambdaComponent lc = lambda_component(h, quick());
  CHECK_MESSAGE(lc.report.passed(), lc.report.to_text());
  const DynAlgebra& A = *h->alg;
  const DynAlgebra& T = *lc.target->alg;
  CHECK(lc.lambda(A.empty()).empty());
  CHECK(lc.lambda(A.unit()) == T.unit());
  const Elem a = mo2->at("a"), b = mo2->at("b");
  const DynElem pa = A.test(a);
  const DynElem pab = A.mul(pa, A.test(b));
  const DynElem img = lc.lambda(A.join(pa, pab));
  CHECK(img.count() == 2);
  const OrthoIso& d = *h->tests.delta;
  CHECK(img == T.join(T.test(d(a)), T.mul(T.test(d(a)), T.test(d(b)))));
  CHECK(lc.target->oml == h->tests.oml);
}

TEST_CASE("λ naturality") {
  const OmlPtr mo2 = share(catalog("mo", 2));
  const TodaPtr h = gamma_object(mo2, quick());
  const LambdaComponent lc = lambda_component(h, quick());
  const DynMorphism id = identity_morphism(h);
  CHECK(check_naturality_lambda(id, lc, lc, quick()).passed());
  for (const OrthoIso& k : find_automorphisms(mo2)) {
    const DynMorphism g = gamma_morphism(k, h, h);
    const Report r = check_naturality_lambda(g, lc, lc, quick());
    CHECK_MESSAGE(r.passed(), r.to_text());
    CHECK(check_naturality_lambda(compose(g, g), lc, lc, quick()).passed());
  }
}

TEST_CASE("round trips") {
  CHECK(round_trip_report(share(catalog("chain2")), {}, quick()).passed());
  const OmlPtr b2 = share(load_lattice(oracle::data("b2.lat")));
  const OmlPtr b2alt = share(load_lattice(oracle::data("b2alt.lat")));
  const OrthoIso rel[] = {morph("b2_relabel.morph", b2, b2alt)};
  const Report r = round_trip_report(b2, rel, quick());
  CHECK_MESSAGE(r.passed(), r.to_text());
  CHECK(r.find("morphism[1]/lambda/square") != nullptr);
  CHECK(r.find("morphism[0]/functor/gamma-identity")->ok());

  const OmlPtr mo2 = share(load_lattice(oracle::data("mo2.lat")));
  const OrthoIso swap[] = {morph("mo2_swap.morph", mo2, mo2)};
  const Report m = round_trip_report(mo2, swap, quick());
  CHECK_MESSAGE(m.passed(), m.to_text());
  CHECK(m.find("morphism[1]/functor/gamma-composition")->ok());
  CHECK(m.find("morphism[1]/mu/square")->ok());

  const OrthoIso foreign[] = {identity_iso(b2)};
  CHECK_THROWS_AS(round_trip_report(mo2, foreign, quick()),
                  std::invalid_argument);
}
