#include <doctest.h>

#include "omloq/hilbert3.hpp"

using namespace omloq;

namespace {

// Rank from nonvanishing minors, independent of the echelon reduction.
int rank_oracle(const std::vector<Vec3>& rows) {
  const std::size_t m = rows.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        const Vec3 &a = rows[i], &b = rows[j], &c = rows[k];
        const BigInt det = a[0] * (b[1] * c[2] - b[2] * c[1]) -
                           a[1] * (b[0] * c[2] - b[2] * c[0]) +
                           a[2] * (b[0] * c[1] - b[1] * c[0]);
        if (det != 0) return 3;
      }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (int p = 0; p < 3; ++p)
        for (int q = p + 1; q < 3; ++q)
          if (rows[i][p] * rows[j][q] - rows[i][q] * rows[j][p] != 0) return 2;
  for (const Vec3& r : rows)
    if (r[0] != 0 || r[1] != 0 || r[2] != 0) return 1;
  return 0;
}

std::vector<Vec3> rows_of(const RatSubspace& a, const RatSubspace& b) {
  std::vector<Vec3> r = a.basis();
  r.insert(r.end(), b.basis().begin(), b.basis().end());
  return r;
}

bool within(const RatSubspace& a, const RatSubspace& b) {
  return rank_oracle(rows_of(a, b)) == static_cast<int>(b.dim());
}

BigInt dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace

TEST_CASE("span") {
  CHECK(span({e1()}).dim() == 1);
  CHECK(span({e1(), e1()}).dim() == 1);
  CHECK(span({vec3(0, 0, 0)}).dim() == 0);
  CHECK(span({}).dim() == 0);
  const RatSubspace x = span({vec3(1, 1, 1)});
  REQUIRE(x.dim() == 1);
  CHECK(x.basis()[0] == vec3(1, 1, 1));
  CHECK(span({vec3(-2, -2, -2)}) == x);
  CHECK(span({vec3(2, 4, 0), vec3(1, 1, 0)}) == span({e1(), e2()}));
  CHECK(span({e1(), e2()}).to_string() == "span((1,0,0), (0,1,0))");
  CHECK(RatSubspace().to_string() == "0");
}

TEST_CASE("orth, join and meet") {
  const RatSubspace u = span({e1()});
  CHECK(orth(u) == span({e2(), e3()}));
  CHECK(meet(u, orth(u)).dim() == 0);
  CHECK(join(span({vec3(1, 1, 0)}), span({e3()})) ==
        span({vec3(1, 1, 0), e3()}));
  CHECK(meet(span({e1(), e2()}), span({vec3(1, 1, 0), e3()})) ==
        span({vec3(1, 1, 0)}));
  CHECK(orth(RatSubspace()).dim() == 3);
  CHECK(orth(span({e1(), e2(), e3()})).dim() == 0);
}

TEST_CASE("sasaki projection") {
  const RatSubspace u = span({e1()}), v = span({e1(), e2()});
  const RatSubspace x = span({vec3(1, 1, 1)});
  CHECK(join(x, orth(u)).dim() == 3);
  CHECK(join(x, orth(v)) == span({vec3(1, 1, 0), e3()}));
  CHECK(sasaki3(u, x) == span({e1()}));
  CHECK(sasaki3(v, x) == span({vec3(1, 1, 0)}));
  CHECK(sasaki3(u, RatSubspace()).dim() == 0);
}

TEST_CASE("witness report") {
  const WitnessReport w = witness_report();
  CHECK_MESSAGE(w.passed(), w.report.to_text());
  CHECK(w.monotone_violation);
  CHECK(w.report.checks().size() == 4);
  CHECK(w.to_json().dump() ==
        R"({"u":{"dim":1,"basis":[[1,0,0]]},"v":{"dim":2,"basis":[[1,0,0],[0,1,0]]},)"
        R"("x":{"dim":1,"basis":[[1,1,1]]},"pi_u_x":{"dim":1,"basis":[[1,0,0]]},)"
        R"("pi_v_x":{"dim":1,"basis":[[1,1,0]]},"monotone_violation":true})");

  // x = span(e1): π_u(x) = u and π_v(x) = span(e1)
  const WitnessReport m = witness_report(vec3(1, 0, 0));
  CHECK_FALSE(m.passed());
  CHECK_FALSE(m.monotone_violation);
  CHECK(m.pi_u_x == span({e1()}));
  CHECK(m.pi_v_x == span({e1()}));

  // x = span(e2+e3): x ∨ u⊥ = u⊥, x ∨ v⊥ = span(e2, e3)
  const WitnessReport z = witness_report(vec3(0, 1, 1));
  CHECK(z.pi_u_x.dim() == 0);
  CHECK(z.pi_v_x == span({e2()}));
  CHECK_FALSE(z.monotone_violation);
}

TEST_CASE("stress set against the minor-rank oracle") {
  const auto subs = stress_set(3405691582ULL);
  REQUIRE(subs.size() == 50);
  CHECK(subs == stress_set(3405691582ULL));
  std::array<int, 4> dims{};
  for (const RatSubspace& a : subs) {
    ++dims[a.dim()];
    CHECK(rank_oracle(a.basis()) == static_cast<int>(a.dim()));
    const RatSubspace o = orth(a);
    for (const Vec3& x : a.basis())
      for (const Vec3& y : o.basis()) CHECK(dot(x, y) == 0);
    CHECK(a.dim() + o.dim() == 3);
  }
  for (int d : dims) CHECK(d > 0);
  for (const RatSubspace& a : subs) {
    for (const RatSubspace& b : subs) {
      const RatSubspace j = join(a, b), m = meet(a, b);
      CHECK(static_cast<int>(j.dim()) == rank_oracle(rows_of(a, b)));
      CHECK(within(a, j));
      CHECK(within(b, j));
      CHECK(within(m, a));
      CHECK(within(m, b));
      CHECK(m.dim() + j.dim() == a.dim() + b.dim());
    }
  }
  const Report r = verify_subspace_lattice(subs);
  CHECK_MESSAGE(r.passed(), r.to_text());
  CHECK(r.to_json() == verify_subspace_lattice(subs, Exec::serial).to_json());
}
