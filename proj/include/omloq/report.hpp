#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace omloq {

enum class Status { pass, fail, inconclusive };

std::string_view to_string(Status s);

// One verified property. `checked` counts the tuples examined; `witness`
// holds the first counterexample (labels) when the property fails.
struct Check {
  std::string name;
  Status status = Status::pass;
  std::uint64_t checked = 0;
  std::vector<std::string> witness;
  std::string note;

  bool ok() const { return status == Status::pass; }
};

class Report {
 public:
  explicit Report(std::string subject = {}) : subject_(std::move(subject)) {}

  Check& add(Check c);
  Check& add(std::string name, bool ok, std::uint64_t checked,
             std::vector<std::string> witness = {}, std::string note = {});
  Check& inconclusive(std::string name, std::string note);

  // Appends every check of `other`, prefixing names with `prefix` + "/".
  void append(const Report& other, std::string_view prefix = {});

  const std::string& subject() const { return subject_; }
  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(std::string_view name) const;

  bool passed() const;
  bool failed() const;
  Status verdict() const;

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;

 private:
  std::string subject_;
  std::vector<Check> checks_;
};

}  // namespace omloq

#include <optional>

#include "omloq/parallel.hpp"

namespace omloq {

// Builds a Check from a first-failure scan over [0, count). `witness(i)` is
// only called for the smallest failing index, so serial and parallel runs
// report the same counterexample.
template <class Pred, class Witness>
Check scan(std::string name, std::uint64_t count, Pred&& ok, Witness&& witness,
           Exec exec) {
  Check c;
  c.name = std::move(name);
  c.checked = count;
  if (std::optional<std::uint64_t> f = first_failure(count, ok, exec)) {
    c.status = Status::fail;
    c.witness = witness(*f);
  }
  return c;
}

}  // namespace omloq
