#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "omloq/error.hpp"
#include "omloq/oml.hpp"

namespace omloq {

using Table = std::vector<Elem>;

struct TableHash {
  std::size_t operator()(const Table& t) const {
    return boost::hash_range(t.begin(), t.end());
  }
};

// A map M -> M given by its image table.
struct EndoMap {
  OmlPtr l;
  Table tbl;

  Elem operator()(Elem x) const { return tbl[x]; }
  friend bool operator==(const EndoMap& a, const EndoMap& b) {
    return a.tbl == b.tbl;
  }
};

// A join-preserving map together with its orthogonality adjoint.
struct LinMap {
  EndoMap map;
  EndoMap adj;

  Elem operator()(Elem x) const { return map.tbl[x]; }
  const OmlPtr& lattice() const { return map.l; }
  const Table& table() const { return map.tbl; }
  friend bool operator==(const LinMap& a, const LinMap& b) {
    return a.map == b.map;
  }
};

struct NotLinear {
  std::string reason;
  std::vector<std::string> witness;
};

// Thrown by order_adjoint. The witness is the subset whose join is not
// preserved (empty means f(0) != 0).
class NotJoinPreserving : public Error {
 public:
  NotJoinPreserving(const std::string& what, std::vector<std::string> witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  std::vector<std::string> witness_;
};

EndoMap make_endomap(const OmlPtr& l, Table tbl);

// "(0 a a 1)": the image table in label form.
std::string describe(const EndoMap& f);
inline std::string describe(const LinMap& f) { return describe(f.map); }

// Binary joins and the empty join; enough on a finite lattice.
std::optional<std::vector<std::string>> join_failure(const EndoMap& f);
bool is_join_preserving(const EndoMap& f);

// f_⊣(y) = ⋁{x : f(x) <= y}.
EndoMap order_adjoint(const EndoMap& f);

// f*(y) = (f_⊣(y⊥))⊥ followed by an exhaustive check of
// f(x) ⊥ y <=> x ⊥ f*(y).
std::variant<LinMap, NotLinear> orth_adjoint(const EndoMap& f,
                                             Exec exec = Exec::serial);
// Unwraps orth_adjoint; throws PreconditionError on NotLinear.
LinMap as_linear(const EndoMap& f);

LinMap identity_map(const OmlPtr& l);
LinMap zero_map(const OmlPtr& l);
LinMap sasaki_map(const OmlPtr& l, Elem m);
EndoMap hook_map(const OmlPtr& l, Elem m);
EndoMap constant_map(const OmlPtr& l, Elem c);

// f ∘ g. Throws std::invalid_argument on lattice mismatch.
LinMap compose(const LinMap& f, const LinMap& g);
LinMap star(const LinMap& f);
// Empty input gives the zero map of `l`.
LinMap pointwise_join(std::span<const LinMap> fs, const OmlPtr& l);
LinMap join2(const LinMap& f, const LinMap& g);
// f⊥ = π_{f(1)⊥}
LinMap foulis_perp(const LinMap& f);
// [f] = π_{f*(1)⊥}
LinMap bracket(const LinMap& f);

// f(x) <= g(x) for all x.
bool pointwise_leq(const LinMap& f, const LinMap& g);
// s ≤ t  <=>  s = t ∘ s.
bool foulis_leq(const LinMap& s, const LinMap& t);

// All of Lin(M), sorted by table. Join-preserving candidates come from
// monotone assignments on join-irreducibles; SizeExceeded carries the
// estimate n^|JI| when more than `cap` candidates are visited.
inline constexpr std::uint64_t kDefaultLinCap = 2'000'000;
std::vector<LinMap> enumerate_lin(const OmlPtr& l,
                                  std::uint64_t cap = kDefaultLinCap,
                                  Exec exec = Exec::parallel);
// Reference: every one of the n^n tables through orth_adjoint. n <= 6.
std::vector<LinMap> enumerate_lin_brute(const OmlPtr& l);

// FQ1-FQ3, O1-O3, the perp laws (annihilator, antitone, double perp,
// symmetric), the four derived identities, involution laws, and
// [Q] = {π_m}. Existential checks need a closed carrier and are reported
// inconclusive otherwise.
Report verify_foulis(const OmlPtr& l, std::span<const LinMap> maps,
                     Exec exec = Exec::parallel);

// A1-A4 for f • x = f(x), plus the trivial right 2-module action.
Report verify_left_module_on_M(const OmlPtr& l, std::span<const LinMap> maps,
                               Exec exec = Exec::parallel);

// Properties of every π_m: idempotent, self-adjoint, image = ↓m, π_m(1) = m.
Report verify_sasaki_characterization(const OmlPtr& l,
                                      Exec exec = Exec::parallel);
// π_m(x) <= y <=> x <= m⊥ ∨ (m ∧ y) for every triple.
Report verify_galois(const OmlPtr& l, Exec exec = Exec::parallel);

// The lattice of Sasaki projections read off Lin(M): order k1 = k2 ∘ k1,
// complement [k], top [0], meet (k1 ∘ [[k2] ∘ k1])⊥⊥, join [[k1 ⊔ k2]].
struct SasakiLattice {
  OmlPtr lattice;
  std::vector<LinMap> elems;  // indexed like lattice
  OrthoIso to_m;              // k -> k(1)
  Report report;
};
SasakiLattice sasaki_lattice(const OmlPtr& l, std::span<const LinMap> maps,
                             Exec exec = Exec::parallel);

// First (u, v, x) with u <= v and π_u(x) not <= π_v(x), if any.
std::optional<std::array<Elem, 3>> find_nonmonotone(const Oml& l);

}  // namespace omloq
