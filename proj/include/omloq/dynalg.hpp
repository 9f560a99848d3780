#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "omloq/oml.hpp"
#include "omloq/report.hpp"
#include "omloq/testmonoid.hpp"

namespace omloq {

inline constexpr std::uint64_t kDefaultSeed = 3405691582ULL;

// A subset of the test monoid. Bit i set means monoid element i is present,
// so equal sets have equal bitsets.
struct DynElem {
  const InvMonoid* mono = nullptr;
  Bits ids;

  std::size_t count() const { return ids.count(); }
  bool empty() const { return ids.none(); }
  std::vector<MonoId> members() const;

  friend bool operator==(const DynElem& a, const DynElem& b) {
    return a.mono == b.mono && a.ids == b.ids;
  }
  friend bool operator<(const DynElem& a, const DynElem& b) {
    return a.ids < b.ids;
  }
};

// Which elements the axiom suites quantify over. Carriers of at most
// `exhaustive_threshold` elements use every subset; larger ones use the
// structured family plus `random` seeded subsets. Laws quantified over three
// elements run on the first `triple_cap` members of the family.
struct SamplePolicy {
  std::uint64_t seed = kDefaultSeed;
  std::size_t random = 200;
  std::size_t exhaustive_threshold = 12;
  std::size_t triple_cap = 32;
};

// The powerset algebra over a test monoid: union, setwise ∘ and *, the unit
// {id}, and ~A = {π_{(⋁ a(1))⊥}}.
class DynAlgebra {
 public:
  explicit DynAlgebra(std::shared_ptr<const InvMonoid> mono);
  // Same operations, but the algebra claims only the ids in `carrier`.
  // Results may leave the carrier; verify_toda reports that.
  DynAlgebra(std::shared_ptr<const InvMonoid> mono, Bits carrier);

  const InvMonoid& monoid() const { return *mono_; }
  const std::shared_ptr<const InvMonoid>& monoid_ptr() const { return mono_; }
  const Oml& lattice() const { return *mono_->lattice(); }
  const OmlPtr& lattice_ptr() const { return mono_->lattice(); }
  const Bits& carrier() const { return carrier_; }
  std::size_t carrier_size() const { return carrier_.count(); }
  bool in_carrier(const DynElem& a) const {
    return a.ids.is_subset_of(carrier_);
  }

  DynElem empty() const;
  DynElem full() const;
  DynElem unit() const;
  DynElem single(MonoId a) const;
  // {π_m}
  DynElem test(Elem m) const;
  DynElem from_ids(std::span<const MonoId> ids) const;

  // Throw std::invalid_argument when the operands belong to other algebras.
  DynElem mul(const DynElem& a, const DynElem& b) const;
  DynElem join(const DynElem& a, const DynElem& b) const;
  DynElem join_of(std::span<const DynElem> xs) const;
  DynElem star(const DynElem& a) const;
  DynElem tilde(const DynElem& a) const;
  // {π_{⋁ a(1)}}
  DynElem tilde_tilde(const DynElem& a) const;
  DynElem tilde_tilde_iterated(const DynElem& a) const;

  // m when a = {π_m}.
  std::optional<Elem> as_test(const DynElem& a) const;
  // k • v = ~~(k ⊙ {π_v}), read back as a lattice element.
  Elem action(const DynElem& k, Elem v) const;
  // First test on which the two actions differ.
  std::optional<Elem> separating_test(const DynElem& s,
                                      const DynElem& t) const;
  bool equiv(const DynElem& s, const DynElem& t) const {
    return !separating_test(s, t);
  }

  // "{pi[a], pi[a]pi[b]}"
  std::string describe(const DynElem& a) const;

 private:
  void own(const DynElem& a) const;

  std::shared_ptr<const InvMonoid> mono_;
  Bits carrier_;
};

// The elements the suites quantify over, deduplicated, in a fixed order.
std::vector<DynElem> sample_family(const DynAlgebra& alg,
                                   const SamplePolicy& policy);
bool is_exhaustive(const DynAlgebra& alg, const SamplePolicy& policy);

// ~K as an ortholattice: order x ⪯ y <=> ~~(x ∪ y) = y, complement ~.
// Elements are listed in order of first appearance as ~A for A = ∅ and the
// singletons of the carrier. `delta` maps m to {π_m}.
struct TestLattice {
  OmlPtr oml;
  std::vector<DynElem> elems;
  std::vector<int> index_of_id;  // monoid id -> index in elems, or -1
  std::optional<OrthoIso> delta;
  Report report;

  std::optional<Elem> index(const DynElem& a) const;
};
TestLattice test_lattice(const DynAlgebra& alg, Exec exec = Exec::parallel);

// S_a: the singletons {t} for t in a.
std::vector<DynElem> normal_form(const DynAlgebra& alg, const DynElem& a);

// The involutive submonoid generated by the tests under ⊙ and *, computed
// by closure inside the algebra. Throws SizeExceeded above `cap`.
std::vector<DynElem> generated_test_monoid(const DynAlgebra& alg,
                                           std::uint64_t cap = 100'000);

// h(v) = {w in basis : w ⊆ v} with the operations carried over from the
// algebra: A ⊓· B = h(⊔A ⊙ ⊔B), A⋆ = h((⊔A)*), ~·A = h(~⊔A).
class AtomView {
 public:
  AtomView(const DynAlgebra& alg, std::vector<DynElem> basis);

  const std::vector<DynElem>& basis() const { return basis_; }
  Bits h(const DynElem& v) const;
  DynElem join(const Bits& s) const;
  Bits mul(const Bits& a, const Bits& b) const;
  Bits star(const Bits& a) const;
  Bits tilde(const Bits& a) const;
  Bits unit() const;

 private:
  const DynAlgebra* alg_;
  std::vector<DynElem> basis_;
};

// IDA1 (quantale laws), IDA2-IDA5, and the closed form of ~~.
Report verify_ida(const DynAlgebra& alg, const SamplePolicy& policy,
                  Exec exec = Exec::parallel);

// TODA1 via test_lattice, TODA2 by regenerating the carrier from the test
// monoid, TODA3 on normal forms, TODA4 over all pairs of singletons, plus
// the atom characterization and h.
Report verify_toda(const DynAlgebra& alg, const SamplePolicy& policy,
                   Exec exec = Exec::parallel);

// A1-A4 for the action on tests, ~~~v = ~v, u • (−) = π_u, ~~ as a module
// homomorphism, and ≡ as a congruence.
Report verify_module(const DynAlgebra& alg, const SamplePolicy& policy,
                     Exec exec = Exec::parallel);

// First A with A ≢ ~~A in the family, together with the separating test.
std::optional<std::pair<DynElem, Elem>> find_tilde_inequivalence(
    const DynAlgebra& alg, std::span<const DynElem> family);

// μ(f) = {f}. Throws std::invalid_argument for ids outside the carrier.
DynElem mu_map(const DynAlgebra& alg, MonoId f);
// Unit, products, involution, injectivity, and image = generated test monoid.
Report check_mu(const DynAlgebra& alg, Exec exec = Exec::parallel);

// k • (−) as a table over the indices of the test lattice.
Table action_table(const DynAlgebra& alg, const TestLattice& tl,
                   const DynElem& k);

// ν(k) = k • (−) for every carrier element, located in the test monoid
// generated over ~K. `image[a]` is unset when the action table is not found
// there.
struct NuMap {
  std::shared_ptr<const InvMonoid> target;
  std::vector<std::optional<MonoId>> image;
  Report report;
};
NuMap nu_map(const DynAlgebra& alg, const TestLattice& tl,
             std::uint64_t cap = kDefaultMonoidCap,
             Exec exec = Exec::parallel);

}  // namespace omloq
