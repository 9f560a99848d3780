#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "omloq/linmap.hpp"
#include "omloq/oml.hpp"
#include "omloq/report.hpp"

namespace omloq {

using MonoId = std::uint32_t;

// One element of the monoid generated by the Sasaki projections. `word`
// m1..mj stands for π_{m1} ∘ ... ∘ π_{mj} and is a shortest such word.
struct MonoidElem {
  MonoId id = 0;
  Table tbl;
  std::vector<Elem> word;
  MonoId star = 0;
};

class InvMonoid {
 public:
  const OmlPtr& lattice() const { return l_; }
  std::size_t size() const { return elems_.size(); }
  const MonoidElem& elem(MonoId a) const;
  const std::vector<MonoidElem>& elems() const { return elems_; }
  MonoId unit() const { return unit_; }
  // π_m
  MonoId generator(Elem m) const;
  bool is_generator(MonoId a) const;
  std::optional<MonoId> find(const Table& t) const;

  // a ∘ b and a*. Throw std::out_of_range on bad ids.
  MonoId compose(MonoId a, MonoId b) const;
  MonoId star(MonoId a) const;

  LinMap as_linmap(MonoId a) const;
  // "pi[a]pi[b]"; the unit prints as "pi[1]".
  std::string name(MonoId a) const;

 private:
  friend InvMonoid generate_T(const OmlPtr& l, std::uint64_t cap, Exec exec);

  OmlPtr l_;
  std::vector<MonoidElem> elems_;
  std::unordered_map<Table, MonoId, TableHash> index_;
  std::vector<MonoId> gens_;
  std::vector<MonoId> cayley_;  // row-major, empty above kEagerCayley
  MonoId unit_ = 0;
};

inline constexpr std::uint64_t kDefaultMonoidCap = 100'000;
inline constexpr std::size_t kEagerCayley = 2048;

// Breadth-first closure of {π_m} under composition on both sides. Throws
// PreconditionError when `l` fails validate_oml and SizeExceeded (carrying
// the partial size) once more than `cap` elements are found.
InvMonoid generate_T(const OmlPtr& l, std::uint64_t cap = kDefaultMonoidCap,
                     Exec exec = Exec::parallel);

// Generators, unit, closure, involution, witness words, agreement of the
// word-reversal star with orth_adjoint, and minimality.
Report audit_minimality(const InvMonoid& m, Exec exec = Exec::parallel);

// Commutative, idempotent, π_m ∘ π_n = π_{m∧n}, one element per m.
Report audit_boolean(const InvMonoid& m, Exec exec = Exec::parallel);

// "row,col,product" followed by one line per pair of ids.
void write_cayley_csv(std::ostream& os, const InvMonoid& m);

}  // namespace omloq
