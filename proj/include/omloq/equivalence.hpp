#pragma once

#include <memory>
#include <span>
#include <vector>

#include "omloq/dynalg.hpp"
#include "omloq/oml.hpp"
#include "omloq/report.hpp"
#include "omloq/testmonoid.hpp"

namespace omloq {

struct GammaOptions {
  std::uint64_t monoid_cap = kDefaultMonoidCap;
  SamplePolicy policy;
  Exec exec = Exec::parallel;
};

// Γ(M) = 𝒫(L_M) together with its suites. `verified` is set when every
// suite passed.
struct TodaHandle {
  OmlPtr oml;
  std::shared_ptr<const InvMonoid> monoid;
  std::shared_ptr<const DynAlgebra> alg;
  TestLattice tests;
  Report monoid_audit;
  Report ida;
  Report module;
  Report toda;
  bool verified = false;

  // Every suite, prefixed by its name, plus the SFDA conjunction.
  Report report() const;
};
using TodaPtr = std::shared_ptr<const TodaHandle>;

// Throws PreconditionError when `m` is not an orthomodular lattice and
// SizeExceeded when the monoid outgrows the cap.
TodaPtr gamma_object(const OmlPtr& m, const GammaOptions& opts = {});
// Same, over an already generated monoid.
TodaPtr gamma_object(std::shared_ptr<const InvMonoid> mono,
                     const GammaOptions& opts = {});

// A map between two algebras given on monoid elements and extended
// setwise: φ(A) = {atoms[a] : a in A}.
struct DynMorphism {
  TodaPtr src;
  TodaPtr dst;
  std::vector<MonoId> atoms;

  DynElem operator()(const DynElem& a) const;
  friend bool operator==(const DynMorphism& a, const DynMorphism& b) {
    return a.src == b.src && a.dst == b.dst && a.atoms == b.atoms;
  }
};

DynMorphism identity_morphism(const TodaPtr& h);
// second ∘ first
DynMorphism compose(const DynMorphism& second, const DynMorphism& first);

// Bijective and preserving ∪, ⊙, *, ~ and the unit on the sample family.
Report verify_morphism(const DynMorphism& phi, const SamplePolicy& policy,
                       Exec exec = Exec::parallel);

// a ↦ k ∘ a ∘ k⁻¹ on monoid elements. Throws std::invalid_argument when the
// endpoints do not match and PreconditionError when k is not an ortholattice
// isomorphism.
DynMorphism gamma_morphism(const OrthoIso& k, const TodaPtr& src,
                           const TodaPtr& dst);

// The test lattice. Throws PreconditionError for unverified handles.
OmlPtr psi_object(const TodaHandle& h);
// φ restricted to tests, as a map between the test lattices.
OrthoIso psi_morphism(const DynMorphism& phi);

// Ψ(Γ(k)) ∘ δ₁ = δ₂ ∘ k, element by element.
Report check_naturality_mu(const OrthoIso& k, const TodaPtr& src,
                           const TodaPtr& dst, Exec exec = Exec::parallel);

// λ(A) = {ν(s) : {s} in S_A}, landing in Γ(~K).
struct LambdaComponent {
  TodaPtr source;
  TodaPtr target;
  NuMap nu;
  DynMorphism lambda;
  Report report;
};
LambdaComponent lambda_component(const TodaPtr& h,
                                 const GammaOptions& opts = {});

// Γ(Ψ(φ)) ∘ λ₁ = λ₂ ∘ φ on the sample family and all two-element sets.
Report check_naturality_lambda(const DynMorphism& phi,
                               const LambdaComponent& at_src,
                               const LambdaComponent& at_dst,
                               const GammaOptions& opts = {});

// Γ(M) suites, μ, λ, the three-way isomorphism, functor laws and both
// naturality squares for the identity and every morphism in `morphisms`
// (each must start at M).
Report round_trip_report(const OmlPtr& m, std::span<const OrthoIso> morphisms,
                         const GammaOptions& opts = {});

}  // namespace omloq
