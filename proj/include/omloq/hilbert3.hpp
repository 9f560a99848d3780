#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "omloq/parallel.hpp"
#include "omloq/report.hpp"

namespace omloq {

using BigInt = boost::multiprecision::cpp_int;
using Vec3 = std::array<BigInt, 3>;

// A subspace of Q^3 held as its row-reduced echelon basis over the
// integers: every row primitive with a positive leading entry, and each
// pivot column zero outside its own row. Equal subspaces compare equal.
class RatSubspace {
 public:
  RatSubspace() = default;

  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec3>& basis() const { return basis_; }
  bool contains(const Vec3& w) const;
  bool subset_of(const RatSubspace& other) const;

  // "span((1,1,0), (0,0,1))", "0" for the zero subspace
  std::string to_string() const;
  nlohmann::ordered_json to_json() const;

  friend bool operator==(const RatSubspace&, const RatSubspace&) = default;

 private:
  friend RatSubspace span(std::vector<Vec3> vectors);
  std::vector<Vec3> basis_;
};

Vec3 vec3(long a, long b, long c);
inline Vec3 e1() { return vec3(1, 0, 0); }
inline Vec3 e2() { return vec3(0, 1, 0); }
inline Vec3 e3() { return vec3(0, 0, 1); }

// Zero vectors are ignored, so span({}) is the zero subspace.
RatSubspace span(std::vector<Vec3> vectors);
RatSubspace join(const RatSubspace& a, const RatSubspace& b);
RatSubspace meet(const RatSubspace& a, const RatSubspace& b);
RatSubspace orth(const RatSubspace& a);
// π_u(x) = u ∧ (x ∨ u⊥)
RatSubspace sasaki3(const RatSubspace& u, const RatSubspace& x);

struct WitnessReport {
  RatSubspace u, v, x;
  RatSubspace orth_u, orth_v;
  RatSubspace x_join_orth_u, x_join_orth_v;
  RatSubspace pi_u_x, pi_v_x;
  bool default_x = true;
  // u ⊆ v and π_u(x) ⊄ π_v(x)
  bool monotone_violation = false;
  Report report;

  bool passed() const { return report.passed(); }
  nlohmann::ordered_json to_json() const;
};

// u = span(e1), v = span(e1, e2). With the default x = span(e1+e2+e3) the
// report asserts u ⊆ v, π_u(x) = span(e1), π_v(x) = span(e1+e2) and the
// non-containment. Any other x only asserts the non-containment.
WitnessReport witness_report(const Vec3& x = vec3(1, 1, 1));

// `count` subspaces spanned by 0-3 vectors with entries in [-3, 3].
std::vector<RatSubspace> stress_set(std::uint64_t seed, std::size_t count = 50);

// Involution, antitone, a ∧ a⊥ = 0, a ∨ a⊥ = 1, dimension sum and the
// orthomodular law over all pairs of `subs`.
Report verify_subspace_lattice(const std::vector<RatSubspace>& subs,
                               Exec exec = Exec::parallel);

}  // namespace omloq
