#include <doctest.h>

#include <set>

#include "omloq/linmap.hpp"
#include "oracle.hpp"

using namespace omloq;

namespace {

OmlPtr share(Oml l) { return std::make_shared<const Oml>(std::move(l)); }

// Orthogonality adjoint by existential search: for each y, every g(y) with
// f(x) <= y⊥ <=> x <= g(y)⊥ for all x. Returns nullopt unless exactly one
// candidate exists for every y.
std::optional<Table> adjoint_oracle(const Oml& l, const Table& f) {
  const std::size_t n = l.size();
  Table g(n);
  for (std::size_t y = 0; y < n; ++y) {
    int found = 0;
    for (std::size_t c = 0; c < n; ++c) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) {
        ok = l.leq(f[x], l.perp(y)) == l.leq(x, l.perp(c));
      }
      if (ok) {
        g[y] = static_cast<Elem>(c);
        ++found;
      }
    }
    if (found != 1) return std::nullopt;
  }
  return g;
}

Table tbl(const Oml& l, std::initializer_list<const char*> labels) {
  Table t;
  for (const char* s : labels) t.push_back(l.at(s));
  return t;
}

}  // namespace

TEST_CASE("order adjoints") {
  OmlPtr mo2 = share(catalog("mo", 2));
  const Oml& l = *mo2;
  CHECK(order_adjoint(identity_map(mo2).map) == identity_map(mo2).map);
  for (Elem m = 0; m < l.size(); ++m) {
    CHECK(order_adjoint(sasaki_map(mo2, m).map) == hook_map(mo2, m));
  }
  CHECK(order_adjoint(constant_map(mo2, l.bot())) == constant_map(mo2, l.top()));

  try {
    order_adjoint(constant_map(mo2, l.top()));
    FAIL("expected NotJoinPreserving");
  } catch (const NotJoinPreserving& e) {
    CHECK(e.witness().empty());
  }
  // a ∨ a' = 1 but the map below sends a, a' to 0 and 1 to 1
  EndoMap f = make_endomap(mo2, tbl(l, {"0", "0", "0", "0", "0", "1"}));
  try {
    order_adjoint(f);
    FAIL("expected NotJoinPreserving");
  } catch (const NotJoinPreserving& e) {
    CHECK(e.witness().size() == 2);
  }
}

TEST_CASE("orthogonality adjoints") {
  OmlPtr mo2 = share(catalog("mo", 2));
  for (Elem m = 0; m < mo2->size(); ++m) {
    LinMap p = as_linear(sasaki_map(mo2, m).map);
    CHECK(p.adj == p.map);
  }
  CHECK(as_linear(identity_map(mo2).map).adj == identity_map(mo2).map);
  EndoMap z = constant_map(mo2, mo2->bot());
  CHECK(as_linear(z).adj == z);
  auto r = orth_adjoint(constant_map(mo2, mo2->top()));
  REQUIRE(std::holds_alternative<NotLinear>(r));
  CHECK(std::get<NotLinear>(r).reason == "not join-preserving");
}

TEST_CASE("orth_adjoint agrees with the existential oracle on all tables") {
  for (Oml base : {catalog("chain2"), catalog("boolean", 2), catalog("o6")}) {
    OmlPtr l = share(base);
    const std::size_t n = l->size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= n;
    for (std::size_t c = 0; c < total; ++c) {
      Table t(n);
      std::size_t rest = c;
      for (std::size_t x = 0; x < n; ++x) {
        t[x] = static_cast<Elem>(rest % n);
        rest /= n;
      }
      auto got = orth_adjoint(EndoMap{l, t});
      auto want = adjoint_oracle(*l, t);
      REQUIRE(std::holds_alternative<LinMap>(got) == want.has_value());
      if (want) CHECK(std::get<LinMap>(got).adj.tbl == *want);
    }
  }
}

TEST_CASE("composition on mo2") {
  OmlPtr mo2 = share(catalog("mo", 2));
  const Oml& l = *mo2;
  LinMap pa = sasaki_map(mo2, l.at("a"));
  LinMap pb = sasaki_map(mo2, l.at("b"));
  LinMap ab = compose(pa, pb);
  // 0, b' go to 0; a, a', b, 1 go to a
  CHECK(ab.table() == tbl(l, {"0", "a", "a", "a", "0", "a"}));
  CHECK(ab.adj.tbl == compose(pb, pa).table());
  CHECK(compose(ab, identity_map(mo2)) == ab);
  OmlPtr other = share(catalog("mo", 3));
  CHECK_THROWS_AS(compose(pa, identity_map(other)), std::invalid_argument);
}

TEST_CASE("adjoint of a product reverses on Lin(mo2)") {
  OmlPtr mo2 = share(catalog("mo", 2));
  auto lin = enumerate_lin(mo2);
  for (std::size_t i = 0; i < lin.size(); i += 7) {
    for (std::size_t j = 0; j < lin.size(); j += 5) {
      LinMap h = compose(lin[i], lin[j]);
      auto want = adjoint_oracle(*mo2, h.table());
      REQUIRE(want.has_value());
      CHECK(h.adj.tbl == *want);
      CHECK(h.adj.tbl == compose(star(lin[j]), star(lin[i])).table());
    }
  }
}

TEST_CASE("pointwise joins") {
  OmlPtr mo2 = share(catalog("mo", 2));
  const Oml& l = *mo2;
  CHECK(pointwise_join({}, mo2) == zero_map(mo2));
  LinMap pa = sasaki_map(mo2, l.at("a"));
  LinMap pb = sasaki_map(mo2, l.at("b"));
  std::vector<LinMap> two{pa, pb};
  LinMap j = pointwise_join(two, mo2);
  for (Elem x = 0; x < l.size(); ++x) {
    CHECK(j(x) == l.join(pa(x), pb(x)));
  }
  CHECK(std::holds_alternative<LinMap>(orth_adjoint(j.map)));
  std::vector<LinMap> one{pa};
  CHECK(pointwise_join(one, mo2) == pa);
}

TEST_CASE("foulis perp and bracket") {
  OmlPtr mo2 = share(catalog("mo", 2));
  const Oml& l = *mo2;
  for (Elem m = 0; m < l.size(); ++m) {
    CHECK(foulis_perp(sasaki_map(mo2, m)) == sasaki_map(mo2, l.perp(m)));
  }
  CHECK(foulis_perp(identity_map(mo2)) == zero_map(mo2));
  CHECK(foulis_perp(zero_map(mo2)) == identity_map(mo2));
  LinMap ab = compose(sasaki_map(mo2, l.at("a")), sasaki_map(mo2, l.at("b")));
  CHECK(bracket(ab) == foulis_perp(star(ab)));
}

TEST_CASE("enumerate_lin equals the brute-force oracle") {
  for (Oml base : {catalog("chain2"), catalog("boolean", 2), catalog("mo", 2),
                   catalog("o6")}) {
    OmlPtr l = share(base);
    auto fast = enumerate_lin(l, kDefaultLinCap, Exec::parallel);
    auto serial = enumerate_lin(l, kDefaultLinCap, Exec::serial);
    auto brute = enumerate_lin_brute(l);
    REQUIRE(fast.size() == brute.size());
    REQUIRE(serial.size() == brute.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(fast[i].table() == brute[i].table());
      CHECK(fast[i].adj.tbl == brute[i].adj.tbl);
      CHECK(serial[i].table() == brute[i].table());
    }
  }
  auto chain = enumerate_lin(share(catalog("chain2")));
  CHECK(chain.size() == 2);
}

TEST_CASE("enumerate_lin respects its cap") {
  OmlPtr mo2 = share(catalog("mo", 2));
  try {
    enumerate_lin(mo2, 100);
    FAIL("expected SizeExceeded");
  } catch (const SizeExceeded& e) {
    CHECK(e.count() == 1296);  // 6^4
  }
  CHECK_THROWS_AS(enumerate_lin(mo2, 0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_lin_brute(share(catalog("mo", 3))), SizeExceeded);
}

TEST_CASE("foulis suite on Lin(chain2) and Lin(B2)") {
  for (Oml base : {catalog("chain2"), catalog("boolean", 2)}) {
    OmlPtr l = share(base);
    auto lin = enumerate_lin(l);
    Report r = verify_foulis(l, lin);
    INFO(r.to_text());
    CHECK(r.passed());
    CHECK(verify_foulis(l, lin, Exec::serial).to_json() == r.to_json());
  }
}

TEST_CASE("foulis suite on Lin(mo2)") {
  OmlPtr l = share(catalog("mo", 2));
  auto lin = enumerate_lin(l);
  Report r = verify_foulis(l, lin);
  INFO(r.to_text());
  CHECK(r.passed());
}

TEST_CASE("foulis suite on an unclosed carrier is inconclusive") {
  OmlPtr l = share(catalog("boolean", 2));
  std::vector<LinMap> only{identity_map(l)};
  Report r = verify_foulis(l, only);
  CHECK(r.find("carrier/closed")->status == Status::fail);
  CHECK(r.find("O3")->status == Status::inconclusive);
  CHECK(r.find("O3")->note == "carrier not closed");
  CHECK(r.find("FQ3")->status == Status::inconclusive);
}

TEST_CASE("brackets are exactly the sasaki projections") {
  for (Oml base : {catalog("chain2"), catalog("boolean", 2), catalog("mo", 2)}) {
    OmlPtr l = share(base);
    auto lin = enumerate_lin(l);
    std::set<Table> brackets, projections;
    for (const LinMap& f : lin) brackets.insert(bracket(f).table());
    for (Elem m = 0; m < l->size(); ++m) {
      Table t(l->size());
      for (Elem x = 0; x < l->size(); ++x) t[x] = oracle::pi(*l, m, x);
      projections.insert(t);
    }
    CHECK(brackets == projections);
  }
}

TEST_CASE("left module on M") {
  OmlPtr mo2 = share(catalog("mo", 2));
  const Oml& l = *mo2;
  auto lin = enumerate_lin(mo2);
  CHECK(verify_left_module_on_M(mo2, lin).passed());
  LinMap pa = sasaki_map(mo2, l.at("a"));
  LinMap pb = sasaki_map(mo2, l.at("b"));
  LinMap ab = compose(pa, pb);
  std::vector<LinMap> two{pa, pb};
  LinMap j = pointwise_join(two, mo2);
  for (Elem x = 0; x < l.size(); ++x) {
    CHECK(identity_map(mo2)(x) == x);
    CHECK(ab(x) == pa(pb(x)));
    CHECK(j(x) == l.join(pa(x), pb(x)));
  }
}

TEST_CASE("sasaki characterization and galois adjunction") {
  for (Oml base : {catalog("chain2"), catalog("boolean", 3), catalog("mo", 3),
                   catalog("boolean", 4), catalog("mo", 4)}) {
    OmlPtr l = share(base);
    CHECK(verify_sasaki_characterization(l).passed());
    CHECK(verify_galois(l).passed());
  }
  // on o6 the projection is no longer left adjoint to the hook
  OmlPtr o6 = share(catalog("o6"));
  CHECK(verify_galois(o6).failed());
}

TEST_CASE("sasaki lattice of Lin(M) is ortho-isomorphic to M") {
  for (Oml base : {catalog("chain2"), catalog("boolean", 2), catalog("mo", 2)}) {
    OmlPtr l = share(base);
    auto lin = enumerate_lin(l);
    SasakiLattice s = sasaki_lattice(l, lin);
    INFO(s.report.to_text());
    CHECK(s.report.passed());
    REQUIRE(s.lattice);
    CHECK(s.lattice->size() == l->size());
    CHECK(check_ortho_iso(s.to_m).passed());
  }
}

TEST_CASE("non-monotone sasaki projections in finite lattices") {
  Oml mo2 = catalog("mo", 2);
  auto hit = find_nonmonotone(mo2);
  REQUIRE(hit);
  auto [u, v, x] = *hit;
  CHECK(mo2.leq(u, v));
  CHECK_FALSE(mo2.leq(oracle::pi(mo2, u, x), oracle::pi(mo2, v, x)));
  CHECK_FALSE(find_nonmonotone(catalog("boolean", 3)));
}
