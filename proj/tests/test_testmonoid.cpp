#include <doctest.h>

#include <set>
#include <sstream>

#include "omloq/testmonoid.hpp"
#include "oracle.hpp"

using namespace omloq;

namespace {

OmlPtr share(Oml l) { return std::make_shared<const Oml>(std::move(l)); }

std::set<Table> tables(const InvMonoid& m) {
  std::set<Table> s;
  for (const MonoidElem& e : m.elems()) s.insert(e.tbl);
  return s;
}

}  // namespace

TEST_CASE("monoid sizes match the closure oracle") {
  for (auto [name, k, expect] :
       {std::tuple{"chain2", 0, 2}, {"boolean", 2, 4}, {"boolean", 3, 8},
        {"mo", 2, 18}, {"mo", 3, 38}, {"mo", 4, 66}}) {
    CAPTURE(name);
    CAPTURE(k);
    const OmlPtr l = share(catalog(name, k));
    const InvMonoid m = generate_T(l);
    CHECK(m.size() == static_cast<std::size_t>(expect));
    CHECK(tables(m) == oracle::sasaki_closure(*l));
  }
}

TEST_CASE("corpus files generate the same monoid as the catalog") {
  const OmlPtr a = share(load_lattice(oracle::data("mo2.lat")));
  CHECK(tables(generate_T(a)) == tables(generate_T(share(catalog("mo", 2)))));
}

TEST_CASE("chain2 monoid is {identity, zero}") {
  const OmlPtr l = share(catalog("chain2"));
  const InvMonoid m = generate_T(l);
  REQUIRE(m.size() == 2);
  CHECK(m.elem(m.unit()).tbl == Table{0, 1});
  CHECK(m.elem(m.generator(0)).tbl == Table{0, 0});
  CHECK(m.compose(m.generator(0), m.unit()) == m.generator(0));
}

TEST_CASE("MO2 products and involution") {
  const OmlPtr l = share(catalog("mo", 2));
  const InvMonoid m = generate_T(l);
  const Elem a = l->at("a"), b = l->at("b");
  const MonoId ab = m.compose(m.generator(a), m.generator(b));
  const MonoId ba = m.compose(m.generator(b), m.generator(a));
  // order 0 a a' b b' 1
  CHECK(m.elem(ab).tbl == Table{0, 1, 1, 1, 0, 1});
  CHECK(m.elem(ab).word == std::vector<Elem>{a, b});
  CHECK(m.star(ab) == ba);
  CHECK(m.star(m.unit()) == m.unit());
  for (Elem x = 0; x < l->size(); ++x) {
    CHECK(m.star(m.generator(x)) == m.generator(x));
  }
  CHECK(m.name(ab) == "pi[a]pi[b]");
  // a length-3 word that is not a product of two generators
  const MonoId aba = m.compose(ab, m.generator(l->at("a'")));
  CHECK(m.elem(aba).tbl == Table{0, 0, 1, 1, 1, 1});
  CHECK(m.elem(aba).word.size() == 3);
  // π_a ∘ π_a' is the zero map
  CHECK(m.compose(m.generator(a), m.generator(l->at("a'"))) ==
        m.generator(l->bot()));
  for (MonoId x = 0; x < m.size(); ++x) {
    CHECK(m.compose(m.unit(), x) == x);
    CHECK(m.compose(x, m.unit()) == x);
  }
  CHECK_THROWS_AS(m.compose(0, static_cast<MonoId>(m.size())),
                  std::out_of_range);
  CHECK_THROWS_AS(m.star(static_cast<MonoId>(m.size())), std::out_of_range);
}

TEST_CASE("words are shortest") {
  const OmlPtr l = share(catalog("mo", 3));
  const InvMonoid m = generate_T(l);
  // BFS assigns non-decreasing word lengths
  for (MonoId x = 1; x < m.size(); ++x) {
    CHECK(m.elem(x - 1).word.size() <= m.elem(x).word.size());
  }
  // no word of length j reaches an element first found at a longer length
  std::set<Table> seen;
  std::vector<Table> layer;
  for (Elem g = 0; g < l->size(); ++g) {
    layer.push_back(m.elem(m.generator(g)).tbl);
    seen.insert(layer.back());
  }
  for (std::size_t len = 2; !layer.empty(); ++len) {
    std::vector<Table> next;
    for (const Table& t : layer) {
      for (Elem g = 0; g < l->size(); ++g) {
        Table h(t.size());
        for (std::size_t x = 0; x < t.size(); ++x) {
          h[x] = oracle::pi(*l, g, t[x]);
        }
        if (seen.insert(h).second) {
          CHECK(m.elem(*m.find(h)).word.size() == len);
          next.push_back(h);
        }
      }
    }
    layer = std::move(next);
  }
  CHECK(seen.size() == m.size());
}

TEST_CASE("minimality audit") {
  for (auto [name, k] : {std::pair{"chain2", 0}, {"boolean", 2}, {"mo", 2},
                         {"mo", 3}}) {
    CAPTURE(name);
    const InvMonoid m = generate_T(share(catalog(name, k)));
    const Report r = audit_minimality(m);
    CHECK_MESSAGE(r.passed(), r.to_text());
    CHECK(r.to_json() == audit_minimality(m, Exec::serial).to_json());
  }
  const InvMonoid mo2 = generate_T(share(catalog("mo", 2)));
  CHECK(audit_minimality(mo2).find("least/subsets")->checked == 4095);
  const InvMonoid mo3 = generate_T(share(catalog("mo", 3)));
  CHECK(audit_minimality(mo3).find("least/decomposition") != nullptr);
}

TEST_CASE("Boolean monoids are the meet semilattice") {
  for (int k = 0; k <= 4; ++k) {
    const InvMonoid m = generate_T(share(catalog("boolean", k)));
    CHECK(m.size() == (std::size_t{1} << k));
    CHECK(audit_boolean(m).passed());
  }
  const Report r = audit_boolean(generate_T(share(catalog("mo", 2))));
  CHECK(r.find("commutative")->status == Status::fail);
  CHECK(r.find("bijection-with-lattice")->status == Status::fail);
}

TEST_CASE("generation guards") {
  CHECK_THROWS_AS(generate_T(share(catalog("o6"))), PreconditionError);
  try {
    generate_T(share(catalog("mo", 2)), 10);
    FAIL("no SizeExceeded");
  } catch (const SizeExceeded& e) {
    CHECK(e.count() == 10);
  }
  CHECK(generate_T(share(catalog("mo", 2)), 18).size() == 18);
}

TEST_CASE("Cayley CSV") {
  const InvMonoid m = generate_T(share(catalog("chain2")));
  std::ostringstream os;
  write_cayley_csv(os, m);
  CHECK(os.str() == "row,col,product\n0,0,0\n0,1,0\n1,0,0\n1,1,1\n");
}

TEST_CASE("as_linmap carries the adjoint") {
  const OmlPtr l = share(catalog("mo", 2));
  const InvMonoid m = generate_T(l);
  for (MonoId x = 0; x < m.size(); ++x) {
    const LinMap f = m.as_linmap(x);
    CHECK(f == as_linear(f.map));
    CHECK(f.adj == as_linear(f.map).adj);
  }
}
