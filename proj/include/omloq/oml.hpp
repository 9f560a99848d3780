#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "omloq/parallel.hpp"
#include "omloq/report.hpp"

namespace omloq {

// Element identity is the declaration index; labels are presentation only.
using Elem = std::uint16_t;
using Bits = boost::dynamic_bitset<std::uint64_t>;

inline constexpr std::size_t kDefaultMaxElements = 64;

// A finite bounded lattice with a unary `perp` map. Whether the structure is
// actually an orthomodular lattice is decided by validate_oml(); the factory
// from_order() only guarantees the lattice tables.
//
// Immutable after construction and safe to share between threads.
class Oml {
 public:
  // Builds the reflexive-transitive closure of `generating` and derives the
  // meet/join tables by glb/lub scans. Throws LatticeError when the closure is
  // not antisymmetric or some pair lacks a glb or lub (with a witness).
  static Oml from_order(std::string name, std::vector<std::string> labels,
                        std::span<const std::pair<Elem, Elem>> generating,
                        std::vector<Elem> perp);

  // Raw tables, sizes checked only. Used for negative tests of validate_oml.
  static Oml from_tables(std::string name, std::vector<std::string> labels,
                         std::vector<std::vector<bool>> leq,
                         std::vector<std::vector<Elem>> meet,
                         std::vector<std::vector<Elem>> join,
                         std::vector<Elem> perp, Elem bot, Elem top);

  std::size_t size() const { return labels_.size(); }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Elem e) const { return labels_[e]; }
  std::optional<Elem> find(std::string_view label) const;
  // Like find(), but throws std::out_of_range naming the label.
  Elem at(std::string_view label) const;

  bool leq(Elem a, Elem b) const { return up_[a].test(b); }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }
  Elem perp(Elem a) const { return perp_[a]; }
  Elem bot() const { return bot_; }
  Elem top() const { return top_; }

  // {x : a <= x} and {x : x <= a}.
  const Bits& up(Elem a) const { return up_[a]; }
  const Bits& down(Elem a) const { return down_[a]; }

  Elem join_of(std::span<const Elem> xs) const;
  Elem meet_of(std::span<const Elem> xs) const;

  // Elements j != bot that are not the join of the elements strictly below.
  std::vector<Elem> join_irreducibles() const;
  std::vector<Elem> atoms() const;

  friend bool operator==(const Oml& a, const Oml& b);

 private:
  Oml() = default;
  void derive_down_sets();

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<Bits> up_;
  std::vector<Bits> down_;
  std::vector<Elem> meet_;
  std::vector<Elem> join_;
  std::vector<Elem> perp_;
  Elem bot_ = 0;
  Elem top_ = 0;
};

using OmlPtr = std::shared_ptr<const Oml>;

// ---- parsing -------------------------------------------------------------

struct ParseOptions {
  std::size_t max_elements = kDefaultMaxElements;
};

// Line-oriented text format:
//   name <string>
//   elements <label>+
//   leq <a> <b>        (generating relation; closure is taken)
//   perp <a> <b>       (symmetric)
// '#' starts a comment. Validation is not implied.
Oml parse_lattice(std::string_view text, const ParseOptions& opts = {});

// JSON mirror: {"name", "elements": [...], "leq": [[a,b],...], "perp": {a:b}}.
Oml parse_lattice_json(std::string_view text, const ParseOptions& opts = {});

// Dispatches on the extension (.json -> JSON mirror).
Oml load_lattice(const std::filesystem::path& path,
                 const ParseOptions& opts = {});

// Text-format serialization (covering pairs only); parse_lattice round-trips.
std::string to_lattice_text(const Oml& l);

// ---- validation ----------------------------------------------------------

// Pass/fail per axiom: partial order, lattice, bounds, complement laws,
// antitone, involution, orthomodularity. Failures carry a witness tuple.
Report validate_oml(const Oml& l, Exec exec = Exec::parallel);

// ---- Sasaki maps ---------------------------------------------------------

// m ∧ (m⊥ ∨ n). Throws std::out_of_range on bad indices.
Elem sasaki_projection(const Oml& l, Elem m, Elem n);
// m⊥ ∨ (m ∧ n). Throws std::out_of_range on bad indices.
Elem sasaki_hook(const Oml& l, Elem m, Elem n);

// ---- catalog -------------------------------------------------------------

// boolean (k in [0,10]), mo (k in [1,8]), chain2, o6. Throws
// std::invalid_argument on unknown names or out-of-range parameters.
Oml catalog(std::string_view name, int k = 0);

// ---- ortholattice isomorphisms -------------------------------------------

struct OrthoIso {
  OmlPtr src;
  OmlPtr dst;
  std::vector<Elem> map;

  Elem operator()(Elem m) const { return map[m]; }
};

// Bijectivity, order in both directions, perp-preservation, and the derived
// meet/join preservation. Throws std::invalid_argument on a size mismatch.
Report check_ortho_iso(const OrthoIso& g, Exec exec = Exec::parallel);

OrthoIso identity_iso(const OmlPtr& l);
// Requires a bijective map.
OrthoIso inverse(const OrthoIso& g);
// (second ∘ first); first.dst must be second.src.
OrthoIso compose(const OrthoIso& second, const OrthoIso& first);

// Every ortholattice automorphism, found by backtracking; sorted by table.
std::vector<OrthoIso> find_automorphisms(const OmlPtr& l);

// ---- morphism documents --------------------------------------------------

// Line-oriented:
//   src <lattice file>   (optional, relative to the document)
//   dst <lattice file>   (optional)
//   iso <srcLabel> <dstLabel>
struct MorphismDoc {
  struct Pair {
    std::string from;
    std::string to;
    std::size_t line;
    std::size_t from_column;
    std::size_t to_column;
  };
  std::optional<std::string> src;
  std::optional<std::string> dst;
  std::vector<Pair> pairs;
};

MorphismDoc parse_morphism(std::string_view text);
MorphismDoc load_morphism(const std::filesystem::path& path);
// Labels are looked up on the two lattices. ParseError on unknown labels,
// repeated sources, missing images, or a size mismatch. Whether the result
// is an isomorphism is left to check_ortho_iso.
OrthoIso resolve_morphism(const MorphismDoc& doc, const OmlPtr& src,
                          const OmlPtr& dst);

}  // namespace omloq
