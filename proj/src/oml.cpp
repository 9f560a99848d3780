#include "omloq/oml.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "omloq/error.hpp"

namespace omloq {

namespace {

void check_size(std::size_t n) {
  if (n == 0) throw LatticeError("lattice has no elements");
  if (n > 65535) throw LatticeError("lattice has more than 65535 elements");
}

}  // namespace

void Oml::derive_down_sets() {
  const std::size_t n = size();
  down_.assign(n, Bits(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = up_[a].find_first(); b != Bits::npos;
         b = up_[a].find_next(b)) {
      down_[b].set(a);
    }
  }
}

Oml Oml::from_order(std::string name, std::vector<std::string> labels,
                    std::span<const std::pair<Elem, Elem>> generating,
                    std::vector<Elem> perp) {
  const std::size_t n = labels.size();
  check_size(n);
  if (perp.size() != n) {
    throw std::invalid_argument("perp table size differs from element count");
  }
  Oml l;
  l.name_ = std::move(name);
  l.labels_ = std::move(labels);
  l.perp_ = std::move(perp);
  for (Elem p : l.perp_) {
    if (p >= n) throw std::invalid_argument("perp entry out of range");
  }

  l.up_.assign(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) l.up_[i].set(i);
  for (auto [a, b] : generating) {
    if (a >= n || b >= n) throw std::invalid_argument("leq entry out of range");
    l.up_[a].set(b);
  }
  // Warshall over bitset rows
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (l.up_[i].test(k)) l.up_[i] |= l.up_[k];
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = l.up_[a].find_next(a); b != Bits::npos;
         b = l.up_[a].find_next(b)) {
      if (l.up_[b].test(a)) {
        throw LatticeError("order relation is not a partial order: " +
                           l.labels_[a] + " <= " + l.labels_[b] + " and " +
                           l.labels_[b] + " <= " + l.labels_[a]);
      }
    }
  }
  l.derive_down_sets();

  // Linear extension by down-set size. In position coordinates the greatest
  // lower bound candidate is the highest-positioned common lower bound and
  // the least upper bound candidate the lowest-positioned common upper bound.
  std::vector<Elem> order(n);
  std::iota(order.begin(), order.end(), Elem{0});
  std::stable_sort(order.begin(), order.end(), [&](Elem x, Elem y) {
    return l.down_[x].count() < l.down_[y].count();
  });
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;

  std::vector<Bits> down_rev(n, Bits(n));  // bit n-1-pos
  std::vector<Bits> up_pos(n, Bits(n));    // bit pos
  for (std::size_t e = 0; e < n; ++e) {
    for (std::size_t x = l.down_[e].find_first(); x != Bits::npos;
         x = l.down_[e].find_next(x)) {
      down_rev[e].set(n - 1 - pos[x]);
    }
    for (std::size_t x = l.up_[e].find_first(); x != Bits::npos;
         x = l.up_[e].find_next(x)) {
      up_pos[e].set(pos[x]);
    }
  }

  l.meet_.assign(n * n, 0);
  l.join_.assign(n * n, 0);
  Bits common(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      common = down_rev[a] & down_rev[b];
      std::size_t q = common.find_first();
      if (q == Bits::npos) {
        throw LatticeError("not a lattice: " + l.labels_[a] + " and " +
                           l.labels_[b] + " have no lower bound");
      }
      const Elem m = order[n - 1 - q];
      if (!common.is_subset_of(down_rev[m])) {
        const Elem other = order[n - 1 - (common - down_rev[m]).find_first()];
        throw LatticeError("not a lattice: " + l.labels_[a] + " and " +
                           l.labels_[b] + " have two maximal lower bounds " +
                           l.labels_[m] + " and " + l.labels_[other]);
      }
      l.meet_[a * n + b] = l.meet_[b * n + a] = m;

      common = up_pos[a] & up_pos[b];
      q = common.find_first();
      if (q == Bits::npos) {
        throw LatticeError("not a lattice: " + l.labels_[a] + " and " +
                           l.labels_[b] + " have no upper bound");
      }
      const Elem j = order[q];
      if (!common.is_subset_of(up_pos[j])) {
        const Elem other = order[(common - up_pos[j]).find_first()];
        throw LatticeError("not a lattice: " + l.labels_[a] + " and " +
                           l.labels_[b] + " have two minimal upper bounds " +
                           l.labels_[j] + " and " + l.labels_[other]);
      }
      l.join_[a * n + b] = l.join_[b * n + a] = j;
    }
  }
  Elem bot = 0, top = 0;
  for (std::size_t e = 1; e < n; ++e) {
    bot = l.meet_[bot * n + e];
    top = l.join_[top * n + e];
  }
  l.bot_ = bot;
  l.top_ = top;
  return l;
}

Oml Oml::from_tables(std::string name, std::vector<std::string> labels,
                     std::vector<std::vector<bool>> leq,
                     std::vector<std::vector<Elem>> meet,
                     std::vector<std::vector<Elem>> join,
                     std::vector<Elem> perp, Elem bot, Elem top) {
  const std::size_t n = labels.size();
  check_size(n);
  auto bad = [&](const char* what) {
    throw std::invalid_argument(std::string(what) + " table is not sized n");
  };
  if (leq.size() != n || meet.size() != n || join.size() != n) bad("order");
  if (perp.size() != n) bad("perp");
  Oml l;
  l.name_ = std::move(name);
  l.labels_ = std::move(labels);
  l.up_.assign(n, Bits(n));
  l.meet_.assign(n * n, 0);
  l.join_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (leq[a].size() != n) bad("leq");
    if (meet[a].size() != n) bad("meet");
    if (join[a].size() != n) bad("join");
    for (std::size_t b = 0; b < n; ++b) {
      if (leq[a][b]) l.up_[a].set(b);
      if (meet[a][b] >= n || join[a][b] >= n) {
        throw std::invalid_argument("table entry out of range");
      }
      l.meet_[a * n + b] = meet[a][b];
      l.join_[a * n + b] = join[a][b];
    }
  }
  for (Elem p : perp) {
    if (p >= n) throw std::invalid_argument("perp entry out of range");
  }
  if (bot >= n || top >= n) throw std::invalid_argument("bound out of range");
  l.perp_ = std::move(perp);
  l.bot_ = bot;
  l.top_ = top;
  l.derive_down_sets();
  return l;
}

std::optional<Elem> Oml::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<Elem>(i);
  }
  return std::nullopt;
}

Elem Oml::at(std::string_view label) const {
  if (auto e = find(label)) return *e;
  throw std::out_of_range("unknown element '" + std::string(label) + "'");
}

Elem Oml::join_of(std::span<const Elem> xs) const {
  Elem r = bot_;
  for (Elem x : xs) r = join(r, x);
  return r;
}

Elem Oml::meet_of(std::span<const Elem> xs) const {
  Elem r = top_;
  for (Elem x : xs) r = meet(r, x);
  return r;
}

std::vector<Elem> Oml::join_irreducibles() const {
  std::vector<Elem> out;
  for (std::size_t j = 0; j < size(); ++j) {
    if (j == bot_) continue;
    Elem below = bot_;
    for (std::size_t x = down_[j].find_first(); x != Bits::npos;
         x = down_[j].find_next(x)) {
      if (x != j) below = join(below, static_cast<Elem>(x));
    }
    if (below != j) out.push_back(static_cast<Elem>(j));
  }
  return out;
}

std::vector<Elem> Oml::atoms() const {
  std::vector<Elem> out;
  for (std::size_t x = 0; x < size(); ++x) {
    if (x != bot_ && down_[x].count() == 2 && down_[x].test(bot_)) {
      out.push_back(static_cast<Elem>(x));
    }
  }
  return out;
}

bool operator==(const Oml& a, const Oml& b) {
  return a.labels_ == b.labels_ && a.up_ == b.up_ && a.meet_ == b.meet_ &&
         a.join_ == b.join_ && a.perp_ == b.perp_ && a.bot_ == b.bot_ &&
         a.top_ == b.top_;
}

namespace {

void check_index(const Oml& l, Elem e, const char* which) {
  if (e >= l.size()) {
    throw std::out_of_range(std::string(which) + " index " +
                            std::to_string(e) + " out of range");
  }
}

}  // namespace

Elem sasaki_projection(const Oml& l, Elem m, Elem n) {
  check_index(l, m, "m");
  check_index(l, n, "n");
  return l.meet(m, l.join(l.perp(m), n));
}

Elem sasaki_hook(const Oml& l, Elem m, Elem n) {
  check_index(l, m, "m");
  check_index(l, n, "n");
  return l.join(l.perp(m), l.meet(m, n));
}

}  // namespace omloq
