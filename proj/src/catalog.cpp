#include <stdexcept>

#include "omloq/oml.hpp"

namespace omloq {

namespace {

Oml boolean(int k) {
  if (k < 0 || k > 10) {
    throw std::invalid_argument("boolean parameter must be in [0, 10]");
  }
  static constexpr char kAtoms[] = "pqrstuvwxy";
  const std::size_t n = std::size_t{1} << k;
  const std::size_t full = n - 1;
  std::vector<std::string> labels(n);
  std::vector<Elem> perp(n);
  std::vector<std::pair<Elem, Elem>> leq;
  for (std::size_t mask = 0; mask < n; ++mask) {
    if (mask == 0) {
      labels[mask] = "0";
    } else if (mask == full) {
      labels[mask] = "1";
    } else {
      for (int b = 0; b < k; ++b) {
        if (mask >> b & 1) labels[mask] += kAtoms[b];
      }
    }
    perp[mask] = static_cast<Elem>(full & ~mask);
    for (int b = 0; b < k; ++b) {
      if (!(mask >> b & 1)) {
        leq.emplace_back(static_cast<Elem>(mask),
                         static_cast<Elem>(mask | (std::size_t{1} << b)));
      }
    }
  }
  return Oml::from_order("boolean(" + std::to_string(k) + ")",
                         std::move(labels), leq, std::move(perp));
}

Oml mo(int k) {
  if (k < 1 || k > 8) {
    throw std::invalid_argument("mo parameter must be in [1, 8]");
  }
  const std::size_t n = 2 * static_cast<std::size_t>(k) + 2;
  const auto top = static_cast<Elem>(n - 1);
  std::vector<std::string> labels{"0"};
  std::vector<Elem> perp(n);
  std::vector<std::pair<Elem, Elem>> leq;
  perp[0] = top;
  perp[top] = 0;
  for (int i = 0; i < k; ++i) {
    const std::string base(1, static_cast<char>('a' + i));
    const auto x = static_cast<Elem>(1 + 2 * i);
    const auto y = static_cast<Elem>(2 + 2 * i);
    labels.push_back(base);
    labels.push_back(base + "'");
    perp[x] = y;
    perp[y] = x;
    for (Elem e : {x, y}) {
      leq.emplace_back(Elem{0}, e);
      leq.emplace_back(e, top);
    }
  }
  labels.push_back("1");
  return Oml::from_order("mo(" + std::to_string(k) + ")", std::move(labels),
                         leq, std::move(perp));
}

}  // namespace

Oml catalog(std::string_view name, int k) {
  if (name == "boolean") return boolean(k);
  if (name == "mo") return mo(k);
  if (name == "chain2") {
    const std::pair<Elem, Elem> leq[] = {{0, 1}};
    return Oml::from_order("chain2", {"0", "1"}, leq, {1, 0});
  }
  if (name == "o6") {
    // 0 < a < b < 1 and 0 < b' < a' < 1
    const std::pair<Elem, Elem> leq[] = {{0, 1}, {1, 2}, {2, 5},
                                         {0, 3}, {3, 4}, {4, 5}};
    return Oml::from_order("o6", {"0", "a", "b", "b'", "a'", "1"}, leq,
                           {5, 4, 3, 2, 1, 0});
  }
  throw std::invalid_argument("unknown catalog lattice '" + std::string(name) +
                              "'");
}

}  // namespace omloq
