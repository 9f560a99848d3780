#include <doctest.h>

#include "omloq/dynalg.hpp"
#include "oracle.hpp"

using namespace omloq;

namespace {

struct Fixture {
  OmlPtr l;
  std::shared_ptr<const InvMonoid> mono;
  DynAlgebra alg;

  explicit Fixture(Oml lat)
      : l(std::make_shared<const Oml>(std::move(lat))),
        mono(std::make_shared<const InvMonoid>(generate_T(l))),
        alg(mono) {}
};

// k • v as the join of the images a(v), with the oracle's own lub
Elem action_oracle(const Oml& l, const InvMonoid& m, const DynElem& k,
                   Elem v) {
  int acc = l.bot();
  for (MonoId a : k.members()) {
    acc = oracle::lub(l, static_cast<Elem>(acc), m.elem(a).tbl[v]);
  }
  return static_cast<Elem>(acc);
}

}  // namespace

TEST_CASE("operations on Γ(MO2)") {
  Fixture fx(catalog("mo", 2));
  const DynAlgebra& A = fx.alg;
  const Oml& l = *fx.l;
  const Elem a = l.at("a"), b = l.at("b"), ap = l.at("a'");
  const DynElem pa = A.test(a), pb = A.test(b);

  CHECK(A.mul(pa, pb) ==
        A.single(fx.mono->compose(fx.mono->generator(a),
                                  fx.mono->generator(b))));
  CHECK(A.mul(A.unit(), A.join(pa, pb)) == A.join(pa, pb));
  CHECK(A.mul(A.empty(), pa).empty());
  CHECK(A.star(A.mul(pa, pb)) == A.mul(pb, pa));
  CHECK(A.star(pa) == pa);
  CHECK(A.star(A.empty()).empty());

  CHECK(A.tilde(A.empty()) == A.unit());
  CHECK(A.tilde_tilde(A.empty()) == A.test(l.bot()));
  for (Elem m = 0; m < l.size(); ++m) {
    CHECK(A.tilde(A.test(m)) == A.test(l.perp(m)));
    CHECK(A.tilde_tilde(A.test(m)) == A.test(m));
  }
  CHECK(A.tilde_tilde(A.join(pa, pb)) == A.unit());
  CHECK(A.tilde_tilde_iterated(A.join(pa, A.test(ap))) == A.unit());

  CHECK(A.action(A.unit(), b) == b);
  CHECK(A.action(pa, b) == a);
  CHECK(A.equiv(pa, pa));
  CHECK_FALSE(A.equiv(pa, pb));
  CHECK(A.action(pa, l.top()) == a);
  CHECK(A.action(pb, l.top()) == b);

  CHECK(A.describe(A.join(pa, A.mul(pa, pb))) == "{pi[a], pi[a]pi[b]}");
  CHECK(A.as_test(pa) == a);
  CHECK_FALSE(A.as_test(A.mul(pa, pb)).has_value());
}

TEST_CASE("action agrees with the pointwise join oracle") {
  Fixture fx(catalog("mo", 2));
  for (const DynElem& k : sample_family(fx.alg, {})) {
    for (Elem v = 0; v < fx.l->size(); ++v) {
      CHECK(fx.alg.action(k, v) == action_oracle(*fx.l, *fx.mono, k, v));
    }
  }
}

TEST_CASE("operands from another algebra are rejected") {
  Fixture x(catalog("mo", 2)), y(catalog("mo", 2));
  CHECK_THROWS_AS(x.alg.mul(x.alg.unit(), y.alg.unit()),
                  std::invalid_argument);
  CHECK_THROWS_AS(x.alg.single(999), std::out_of_range);
}

TEST_CASE("sample family") {
  Fixture b2(catalog("boolean", 2));
  CHECK(sample_family(b2.alg, {}).size() == 16);
  CHECK(is_exhaustive(b2.alg, {}));
  Fixture mo2(catalog("mo", 2));
  const auto fam = sample_family(mo2.alg, {});
  CHECK_FALSE(is_exhaustive(mo2.alg, {}));
  CHECK(fam.size() > 200);
  CHECK(fam == sample_family(mo2.alg, {}));
  SamplePolicy other;
  other.seed = 1;
  CHECK_FALSE(fam == sample_family(mo2.alg, other));
}

TEST_CASE("≡ and ~~ are different relations") {
  // Boolean actions are joins of meets, so A ≡ ~~A throughout Γ(B2)
  Fixture b2(catalog("boolean", 2));
  const auto fam = sample_family(b2.alg, {});
  CHECK_FALSE(find_tilde_inequivalence(b2.alg, fam).has_value());

  Fixture mo2(catalog("mo", 2));
  const Oml& l = *mo2.l;
  const DynElem ab = mo2.alg.join(mo2.alg.test(l.at("a")), mo2.alg.test(l.at("b")));
  CHECK(mo2.alg.action(ab, l.at("a'")) == l.at("b"));
  CHECK(mo2.alg.action(mo2.alg.tilde_tilde(ab), l.at("a'")) == l.at("a'"));
  const auto fam2 = sample_family(mo2.alg, {});
  auto found = find_tilde_inequivalence(mo2.alg, fam2);
  REQUIRE(found.has_value());
  CHECK(found->first.count() > 1);
  CHECK(mo2.alg.tilde_tilde(found->first) ==
        mo2.alg.tilde_tilde_iterated(found->first));
}

TEST_CASE("test lattice is ortho-isomorphic to M") {
  for (auto [name, k, size] : {std::tuple{"chain2", 0, 2}, {"boolean", 2, 4},
                               {"boolean", 3, 8}, {"mo", 2, 6}, {"mo", 3, 8}}) {
    CAPTURE(name);
    Fixture fx(catalog(name, k));
    const TestLattice tl = test_lattice(fx.alg);
    CHECK_MESSAGE(tl.report.passed(), tl.report.to_text());
    REQUIRE(tl.oml);
    CHECK(tl.oml->size() == static_cast<std::size_t>(size));
    REQUIRE(tl.delta);
    for (Elem m = 0; m < fx.l->size(); ++m) {
      CHECK(tl.elems[(*tl.delta)(m)] == fx.alg.test(m));
    }
    CHECK(tl.report.to_json() == test_lattice(fx.alg, Exec::serial).report.to_json());
  }
}

TEST_CASE("normal forms and atoms") {
  Fixture fx(catalog("mo", 2));
  const DynAlgebra& A = fx.alg;
  const Oml& l = *fx.l;
  CHECK(normal_form(A, A.empty()).empty());
  CHECK(normal_form(A, A.unit()) == std::vector<DynElem>{A.unit()});
  const DynElem pa = A.test(l.at("a"));
  const DynElem pab = A.mul(pa, A.test(l.at("b")));
  const auto s = normal_form(A, A.join(pa, pab));
  CHECK(s.size() == 2);
  CHECK(A.join_of(s) == A.join(pa, pab));

  const auto gen = generated_test_monoid(A);
  CHECK(gen.size() == fx.mono->size());
  for (const DynElem& g : gen) CHECK(g.count() == 1);
  AtomView hv(A, gen);
  CHECK(hv.h(A.empty()).none());
  CHECK(hv.h(pa).count() == 1);
  const DynElem three = A.join(A.join(pa, pab), A.test(l.at("b'")));
  CHECK(hv.h(three).count() == 3);
  CHECK(hv.join(hv.h(three)) == three);
  CHECK(hv.unit() == hv.h(A.unit()));
}

TEST_CASE("IDA, module and TODA suites pass on Γ of the corpus") {
  for (auto [name, k] : {std::pair{"chain2", 0}, {"boolean", 2}, {"mo", 2},
                         {"boolean", 3}}) {
    CAPTURE(name);
    CAPTURE(k);
    Fixture fx(catalog(name, k));
    const Report ida = verify_ida(fx.alg, {});
    CHECK_MESSAGE(ida.passed(), ida.to_text());
    const Report mod = verify_module(fx.alg, {});
    CHECK_MESSAGE(mod.passed(), mod.to_text());
    const Report toda = verify_toda(fx.alg, {});
    CHECK_MESSAGE(toda.passed(), toda.to_text());
    const Report mu = check_mu(fx.alg);
    CHECK_MESSAGE(mu.passed(), mu.to_text());
  }
  Fixture b2(catalog("boolean", 2));
  const Report ida = verify_ida(b2.alg, {});
  CHECK(ida.find("IDA2")->checked == 256);
  CHECK(ida.find("IDA2")->note == "exhaustive over 16 subsets");
  CHECK(verify_toda(b2.alg, {}).find("TODA2/covers-carrier") != nullptr);
}

TEST_CASE("serial and parallel suites agree") {
  Fixture fx(catalog("mo", 2));
  SamplePolicy p;
  p.random = 40;
  CHECK(verify_ida(fx.alg, p, Exec::serial).to_json() ==
        verify_ida(fx.alg, p, Exec::parallel).to_json());
  CHECK(verify_toda(fx.alg, p, Exec::serial).to_json() ==
        verify_toda(fx.alg, p, Exec::parallel).to_json());
  CHECK(verify_module(fx.alg, p, Exec::serial).to_json() ==
        verify_module(fx.alg, p, Exec::parallel).to_json());
}

TEST_CASE("dropping a monoid element breaks TODA2") {
  for (auto [name, k] : {std::pair{"mo", 2}, {"chain2", 0}}) {
    CAPTURE(name);
    Fixture fx(catalog(name, k));
    Bits carrier(fx.mono->size());
    carrier.set();
    // the zero map for chain2, the last non-generator otherwise
    MonoId drop = 0;
    for (MonoId a = 0; a < fx.mono->size(); ++a) {
      if (!fx.mono->is_generator(a)) drop = a;
    }
    carrier.reset(drop);
    const DynAlgebra bad(fx.mono, carrier);
    const Report r = verify_toda(bad, {});
    CHECK_FALSE(r.passed());
    bool toda2_failed = false;
    for (const Check& c : r.checks()) {
      if (c.name.rfind("TODA2", 0) == 0 && c.status == Status::fail) {
        toda2_failed = true;
        CHECK_FALSE(c.witness.empty());
      }
    }
    CHECK(toda2_failed);
  }
}

TEST_CASE("mu and nu") {
  Fixture fx(catalog("mo", 2));
  const DynAlgebra& A = fx.alg;
  const Oml& l = *fx.l;
  CHECK(mu_map(A, fx.mono->unit()) == A.unit());
  for (Elem m = 0; m < l.size(); ++m) {
    CHECK(mu_map(A, fx.mono->generator(m)) == A.test(m));
  }
  CHECK_THROWS_AS(mu_map(A, 999), std::invalid_argument);

  const TestLattice tl = test_lattice(A);
  const NuMap nu = nu_map(A, tl);
  CHECK_MESSAGE(nu.report.passed(), nu.report.to_text());
  CHECK(nu.target->size() == fx.mono->size());
  CHECK(nu.image[fx.mono->unit()] == nu.target->unit());
  // ν({π_a ∘ π_b}) is π_δ(a) ∘ π_δ(b) on the test lattice
  const Elem a = l.at("a"), b = l.at("b");
  const MonoId ab = fx.mono->compose(fx.mono->generator(a),
                                     fx.mono->generator(b));
  CHECK(nu.image[ab] ==
        nu.target->compose(nu.target->generator((*tl.delta)(a)),
                           nu.target->generator((*tl.delta)(b))));
  const Table t = action_table(A, tl, A.single(ab));
  for (Elem v = 0; v < l.size(); ++v) {
    CHECK(t[(*tl.delta)(v)] == (*tl.delta)(action_oracle(l, *fx.mono,
                                                           A.single(ab), v)));
  }
}
