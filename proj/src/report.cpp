#include "omloq/report.hpp"

#include <sstream>

namespace omloq {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Check& Report::add(Check c) {
  checks_.push_back(std::move(c));
  return checks_.back();
}

Check& Report::add(std::string name, bool ok, std::uint64_t checked,
                   std::vector<std::string> witness, std::string note) {
  Check c;
  c.name = std::move(name);
  c.status = ok ? Status::pass : Status::fail;
  c.checked = checked;
  if (!ok) c.witness = std::move(witness);
  c.note = std::move(note);
  return add(std::move(c));
}

Check& Report::inconclusive(std::string name, std::string note) {
  Check c;
  c.name = std::move(name);
  c.status = Status::inconclusive;
  c.note = std::move(note);
  return add(std::move(c));
}

void Report::append(const Report& other, std::string_view prefix) {
  for (Check c : other.checks_) {
    if (!prefix.empty()) c.name = std::string(prefix) + "/" + c.name;
    checks_.push_back(std::move(c));
  }
}

const Check* Report::find(std::string_view name) const {
  for (const Check& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool Report::passed() const {
  for (const Check& c : checks_) {
    if (c.status != Status::pass) return false;
  }
  return true;
}

bool Report::failed() const {
  for (const Check& c : checks_) {
    if (c.status == Status::fail) return true;
  }
  return false;
}

Status Report::verdict() const {
  if (failed()) return Status::fail;
  return passed() ? Status::pass : Status::inconclusive;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["subject"] = subject_;
  std::string v(to_string(verdict()));
  for (char& ch : v) ch = static_cast<char>(std::toupper(ch));
  j["verdict"] = v;
  auto arr = nlohmann::ordered_json::array();
  for (const Check& c : checks_) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = std::string(to_string(c.status));
    cj["checked"] = c.checked;
    cj["witness"] = c.witness;
    cj["note"] = c.note;
    arr.push_back(std::move(cj));
  }
  j["checks"] = std::move(arr);
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  if (!subject_.empty()) os << subject_ << "\n";
  for (const Check& c : checks_) {
    os << "  [" << to_string(c.status) << "] " << c.name;
    if (c.checked != 0) os << " (" << c.checked << " checked)";
    if (!c.note.empty()) os << " -- " << c.note;
    if (!c.witness.empty()) {
      os << "; witness:";
      for (const std::string& w : c.witness) os << ' ' << w;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace omloq
