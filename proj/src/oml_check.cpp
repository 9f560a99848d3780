#include <algorithm>
#include <stdexcept>

#include "omloq/oml.hpp"

namespace omloq {

namespace {

std::vector<std::string> labels_of(const Oml& l,
                                   std::initializer_list<std::size_t> xs) {
  std::vector<std::string> out;
  for (std::size_t x : xs) out.push_back(l.label(static_cast<Elem>(x)));
  return out;
}

}  // namespace

Report validate_oml(const Oml& l, Exec exec) {
  Report r("oml " + l.name());
  const std::size_t n = l.size();
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * n;
  auto A = [n](std::uint64_t i) { return static_cast<Elem>(i / n); };
  auto B = [n](std::uint64_t i) { return static_cast<Elem>(i % n); };

  r.add(scan(
      "partial-order/reflexive", n,
      [&](std::uint64_t i) { return l.leq(Elem(i), Elem(i)); },
      [&](std::uint64_t i) { return labels_of(l, {i}); }, exec));
  r.add(scan(
      "partial-order/antisymmetric", pairs,
      [&](std::uint64_t i) {
        return A(i) == B(i) || !(l.leq(A(i), B(i)) && l.leq(B(i), A(i)));
      },
      [&](std::uint64_t i) { return labels_of(l, {A(i), B(i)}); }, exec));
  r.add(scan(
      "partial-order/transitive", pairs,
      [&](std::uint64_t i) {
        return !l.leq(A(i), B(i)) || l.up(B(i)).is_subset_of(l.up(A(i)));
      },
      [&](std::uint64_t i) {
        const Elem c = static_cast<Elem>((l.up(B(i)) - l.up(A(i))).find_first());
        return labels_of(l, {A(i), B(i), c});
      },
      exec));

  // glb: below both, and every common lower bound is below it
  r.add(scan(
      "lattice/meet", pairs,
      [&](std::uint64_t i) {
        const Elem a = A(i), b = B(i), m = l.meet(a, b);
        return l.leq(m, a) && l.leq(m, b) &&
               (l.down(a) & l.down(b)).is_subset_of(l.down(m));
      },
      [&](std::uint64_t i) {
        return labels_of(l, {A(i), B(i), l.meet(A(i), B(i))});
      },
      exec));
  r.add(scan(
      "lattice/join", pairs,
      [&](std::uint64_t i) {
        const Elem a = A(i), b = B(i), j = l.join(a, b);
        return l.leq(a, j) && l.leq(b, j) &&
               (l.up(a) & l.up(b)).is_subset_of(l.up(j));
      },
      [&](std::uint64_t i) {
        return labels_of(l, {A(i), B(i), l.join(A(i), B(i))});
      },
      exec));
  r.add(scan(
      "bounds", n,
      [&](std::uint64_t i) {
        return l.leq(l.bot(), Elem(i)) && l.leq(Elem(i), l.top());
      },
      [&](std::uint64_t i) { return labels_of(l, {i}); }, exec));
  r.add(scan(
      "complement", n,
      [&](std::uint64_t i) {
        const Elem x = Elem(i);
        return l.meet(x, l.perp(x)) == l.bot() &&
               l.join(x, l.perp(x)) == l.top();
      },
      [&](std::uint64_t i) { return labels_of(l, {i, l.perp(Elem(i))}); },
      exec));
  r.add(scan(
      "antitone", pairs,
      [&](std::uint64_t i) {
        return !l.leq(A(i), B(i)) || l.leq(l.perp(B(i)), l.perp(A(i)));
      },
      [&](std::uint64_t i) { return labels_of(l, {A(i), B(i)}); }, exec));
  r.add(scan(
      "involution", n,
      [&](std::uint64_t i) { return l.perp(l.perp(Elem(i))) == Elem(i); },
      [&](std::uint64_t i) { return labels_of(l, {i}); }, exec));
  r.add(scan(
      "orthomodular", pairs,
      [&](std::uint64_t i) {
        const Elem x = A(i), y = B(i);
        return !l.leq(x, y) || l.join(x, l.meet(l.perp(x), y)) == y;
      },
      [&](std::uint64_t i) { return labels_of(l, {A(i), B(i)}); }, exec));
  return r;
}

// ---- isomorphisms ---------------------------------------------------------

Report check_ortho_iso(const OrthoIso& g, Exec exec) {
  const Oml& s = *g.src;
  const Oml& d = *g.dst;
  if (g.map.size() != s.size()) {
    throw std::invalid_argument("iso map has " + std::to_string(g.map.size()) +
                                " entries, source has " +
                                std::to_string(s.size()));
  }
  Report r("iso " + s.name() + " -> " + d.name());
  const std::size_t n = s.size();

  bool in_range = true;
  std::vector<std::string> range_witness;
  for (std::size_t i = 0; i < n && in_range; ++i) {
    if (g.map[i] >= d.size()) {
      in_range = false;
      range_witness = {s.label(static_cast<Elem>(i))};
    }
  }
  if (!in_range) {
    r.add("bijective", false, n, range_witness, "image out of range");
    for (const char* name : {"order-preserving", "order-reflecting",
                             "perp-preserving", "join-preserving",
                             "meet-preserving"}) {
      r.inconclusive(name, "map is not total on the target");
    }
    return r;
  }

  {
    std::vector<std::size_t> seen(d.size(), n);
    std::vector<std::string> wit;
    bool ok = d.size() == n;
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[g.map[i]] != n) {
        ok = false;
        wit = {s.label(static_cast<Elem>(seen[g.map[i]])),
               s.label(static_cast<Elem>(i))};
        break;
      }
      seen[g.map[i]] = i;
    }
    r.add("bijective", ok, n, wit,
          d.size() == n ? "" : "target has a different size");
  }

  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * n;
  auto A = [n](std::uint64_t i) { return static_cast<Elem>(i / n); };
  auto B = [n](std::uint64_t i) { return static_cast<Elem>(i % n); };
  auto pair_witness = [&](std::uint64_t i) {
    return std::vector<std::string>{s.label(A(i)), s.label(B(i))};
  };
  r.add(scan(
      "order-preserving", pairs,
      [&](std::uint64_t i) {
        return !s.leq(A(i), B(i)) || d.leq(g(A(i)), g(B(i)));
      },
      pair_witness, exec));
  r.add(scan(
      "order-reflecting", pairs,
      [&](std::uint64_t i) {
        return !d.leq(g(A(i)), g(B(i))) || s.leq(A(i), B(i));
      },
      pair_witness, exec));
  r.add(scan(
      "perp-preserving", n,
      [&](std::uint64_t i) {
        return g(s.perp(Elem(i))) == d.perp(g(Elem(i)));
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{s.label(Elem(i))};
      },
      exec));
  r.add(scan(
      "join-preserving", pairs,
      [&](std::uint64_t i) {
        return g(s.join(A(i), B(i))) == d.join(g(A(i)), g(B(i)));
      },
      pair_witness, exec));
  r.add(scan(
      "meet-preserving", pairs,
      [&](std::uint64_t i) {
        return g(s.meet(A(i), B(i))) == d.meet(g(A(i)), g(B(i)));
      },
      pair_witness, exec));
  return r;
}

OrthoIso identity_iso(const OmlPtr& l) {
  OrthoIso g{l, l, std::vector<Elem>(l->size())};
  for (std::size_t i = 0; i < l->size(); ++i) g.map[i] = static_cast<Elem>(i);
  return g;
}

OrthoIso inverse(const OrthoIso& g) {
  if (g.map.size() != g.dst->size()) {
    throw std::invalid_argument("inverse of a map between different sizes");
  }
  OrthoIso h{g.dst, g.src, std::vector<Elem>(g.map.size(), 0)};
  std::vector<bool> hit(g.map.size(), false);
  for (std::size_t i = 0; i < g.map.size(); ++i) {
    if (g.map[i] >= hit.size() || hit[g.map[i]]) {
      throw std::invalid_argument("inverse of a non-bijective map");
    }
    hit[g.map[i]] = true;
    h.map[g.map[i]] = static_cast<Elem>(i);
  }
  return h;
}

OrthoIso compose(const OrthoIso& second, const OrthoIso& first) {
  if (first.dst != second.src && !(*first.dst == *second.src)) {
    throw std::invalid_argument("composing isos with mismatched endpoints");
  }
  OrthoIso h{first.src, second.dst, std::vector<Elem>(first.map.size())};
  for (std::size_t i = 0; i < first.map.size(); ++i) {
    h.map[i] = second.map.at(first.map[i]);
  }
  return h;
}

std::vector<OrthoIso> find_automorphisms(const OmlPtr& lp) {
  const Oml& l = *lp;
  const std::size_t n = l.size();
  std::vector<OrthoIso> out;
  std::vector<int> img(n, -1);
  std::vector<bool> used(n, false);

  auto consistent = [&](std::size_t x, std::size_t y) {
    if (l.up(x).count() != l.up(y).count() ||
        l.down(x).count() != l.down(y).count()) {
      return false;
    }
    for (std::size_t z = 0; z < n; ++z) {
      if (img[z] < 0) continue;
      const auto gz = static_cast<Elem>(img[z]);
      if (l.leq(z, x) != l.leq(gz, y) || l.leq(x, z) != l.leq(y, gz)) {
        return false;
      }
      if (l.perp(x) == z && l.perp(y) != gz) return false;
      if (l.perp(z) == x && l.perp(gz) != y) return false;
    }
    if (l.perp(x) == x && l.perp(y) != y) return false;
    return true;
  };

  auto rec = [&](auto&& self, std::size_t x) -> void {
    if (x == n) {
      OrthoIso g{lp, lp, std::vector<Elem>(n)};
      for (std::size_t i = 0; i < n; ++i) g.map[i] = static_cast<Elem>(img[i]);
      out.push_back(std::move(g));
      return;
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || !consistent(x, y)) continue;
      used[y] = true;
      img[x] = static_cast<int>(y);
      self(self, x + 1);
      img[x] = -1;
      used[y] = false;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const OrthoIso& a, const OrthoIso& b) {
    return a.map < b.map;
  });
  return out;
}

}  // namespace omloq
