#include "omloq/linmap.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <unordered_map>

namespace omloq {

namespace {

void same_lattice(const OmlPtr& a, const OmlPtr& b) {
  if (a != b && !(*a == *b)) {
    throw std::invalid_argument("maps live on different lattices");
  }
}

[[maybe_unused]] void audit(const LinMap& f) {
  auto r = orth_adjoint(f.map);
  if (!std::holds_alternative<LinMap>(r) ||
      !(std::get<LinMap>(r).adj == f.adj)) {
    throw std::logic_error("cached adjoint disagrees with orth_adjoint");
  }
}

Table sasaki_table(const Oml& l, Elem m) {
  Table t(l.size());
  for (std::size_t x = 0; x < l.size(); ++x) {
    t[x] = l.meet(m, l.join(l.perp(m), static_cast<Elem>(x)));
  }
  return t;
}

}  // namespace

EndoMap make_endomap(const OmlPtr& l, Table tbl) {
  if (tbl.size() != l->size()) {
    throw std::invalid_argument("map table is not sized to the lattice");
  }
  for (Elem e : tbl) {
    if (e >= l->size()) throw std::invalid_argument("map entry out of range");
  }
  return EndoMap{l, std::move(tbl)};
}

std::string describe(const EndoMap& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.tbl.size(); ++i) {
    if (i) s += ' ';
    s += f.l->label(f.tbl[i]);
  }
  return s + ")";
}

std::optional<std::vector<std::string>> join_failure(const EndoMap& f) {
  const Oml& l = *f.l;
  if (f(l.bot()) != l.bot()) return std::vector<std::string>{};
  const std::size_t n = l.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const Elem j = l.join(static_cast<Elem>(a), static_cast<Elem>(b));
      if (f(j) != l.join(f(static_cast<Elem>(a)), f(static_cast<Elem>(b)))) {
        return std::vector<std::string>{l.label(static_cast<Elem>(a)),
                                        l.label(static_cast<Elem>(b))};
      }
    }
  }
  return std::nullopt;
}

bool is_join_preserving(const EndoMap& f) { return !join_failure(f); }

namespace {

EndoMap raw_order_adjoint(const EndoMap& f) {
  const Oml& l = *f.l;
  const std::size_t n = l.size();
  Table g(n);
  for (std::size_t y = 0; y < n; ++y) {
    Elem acc = l.bot();
    for (std::size_t x = 0; x < n; ++x) {
      if (l.leq(f(static_cast<Elem>(x)), static_cast<Elem>(y))) {
        acc = l.join(acc, static_cast<Elem>(x));
      }
    }
    g[y] = acc;
  }
  return EndoMap{f.l, std::move(g)};
}

}  // namespace

EndoMap order_adjoint(const EndoMap& f) {
  if (auto w = join_failure(f)) {
    throw NotJoinPreserving(
        w->empty() ? "map does not send 0 to 0" : "map does not preserve a join",
        *w);
  }
  return raw_order_adjoint(f);
}

std::variant<LinMap, NotLinear> orth_adjoint(const EndoMap& f, Exec exec) {
  if (auto w = join_failure(f)) {
    return NotLinear{"not join-preserving", *w};
  }
  const Oml& l = *f.l;
  const std::size_t n = l.size();
  const EndoMap lower = raw_order_adjoint(f);
  Table g(n);
  for (std::size_t y = 0; y < n; ++y) {
    g[y] = l.perp(lower(l.perp(static_cast<Elem>(y))));
  }
  auto fx = first_failure(
      static_cast<std::uint64_t>(n) * n,
      [&](std::uint64_t i) {
        const auto x = static_cast<Elem>(i / n);
        const auto y = static_cast<Elem>(i % n);
        return l.leq(f(x), l.perp(y)) == l.leq(x, l.perp(g[y]));
      },
      exec);
  if (fx) {
    return NotLinear{"adjoint law fails",
                     {l.label(static_cast<Elem>(*fx / n)),
                      l.label(static_cast<Elem>(*fx % n))}};
  }
  return LinMap{f, EndoMap{f.l, std::move(g)}};
}

LinMap as_linear(const EndoMap& f) {
  auto r = orth_adjoint(f);
  if (auto* nl = std::get_if<NotLinear>(&r)) {
    throw PreconditionError("map " + describe(f) + " is not linear: " +
                            nl->reason);
  }
  return std::get<LinMap>(std::move(r));
}

LinMap identity_map(const OmlPtr& l) {
  Table t(l->size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<Elem>(i);
  return LinMap{EndoMap{l, t}, EndoMap{l, t}};
}

LinMap zero_map(const OmlPtr& l) {
  Table t(l->size(), l->bot());
  return LinMap{EndoMap{l, t}, EndoMap{l, t}};
}

LinMap sasaki_map(const OmlPtr& l, Elem m) {
  if (m >= l->size()) throw std::out_of_range("sasaki_map: index out of range");
  Table t = sasaki_table(*l, m);
  return LinMap{EndoMap{l, t}, EndoMap{l, t}};
}

EndoMap hook_map(const OmlPtr& l, Elem m) {
  Table t(l->size());
  for (std::size_t x = 0; x < t.size(); ++x) {
    t[x] = sasaki_hook(*l, m, static_cast<Elem>(x));
  }
  return EndoMap{l, std::move(t)};
}

EndoMap constant_map(const OmlPtr& l, Elem c) {
  return make_endomap(l, Table(l->size(), c));
}

LinMap compose(const LinMap& f, const LinMap& g) {
  same_lattice(f.lattice(), g.lattice());
  const std::size_t n = f.table().size();
  Table base(n), adj(n);
  for (std::size_t x = 0; x < n; ++x) {
    base[x] = f.map.tbl[g.map.tbl[x]];
    adj[x] = g.adj.tbl[f.adj.tbl[x]];
  }
  LinMap h{EndoMap{f.lattice(), std::move(base)},
           EndoMap{f.lattice(), std::move(adj)}};
#ifndef NDEBUG
  audit(h);
#endif
  return h;
}

LinMap star(const LinMap& f) { return LinMap{f.adj, f.map}; }

LinMap join2(const LinMap& f, const LinMap& g) {
  same_lattice(f.lattice(), g.lattice());
  const Oml& l = *f.lattice();
  const std::size_t n = l.size();
  Table base(n), adj(n);
  for (std::size_t x = 0; x < n; ++x) {
    base[x] = l.join(f.map.tbl[x], g.map.tbl[x]);
    adj[x] = l.join(f.adj.tbl[x], g.adj.tbl[x]);
  }
  LinMap h{EndoMap{f.lattice(), std::move(base)},
           EndoMap{f.lattice(), std::move(adj)}};
#ifndef NDEBUG
  audit(h);
#endif
  return h;
}

LinMap pointwise_join(std::span<const LinMap> fs, const OmlPtr& l) {
  LinMap acc = zero_map(l);
  for (const LinMap& f : fs) acc = join2(acc, f);
  return acc;
}

LinMap foulis_perp(const LinMap& f) {
  const Oml& l = *f.lattice();
  return sasaki_map(f.lattice(), l.perp(f(l.top())));
}

LinMap bracket(const LinMap& f) {
  const Oml& l = *f.lattice();
  return sasaki_map(f.lattice(), l.perp(f.adj(l.top())));
}

bool pointwise_leq(const LinMap& f, const LinMap& g) {
  const Oml& l = *f.lattice();
  for (std::size_t x = 0; x < l.size(); ++x) {
    if (!l.leq(f.map.tbl[x], g.map.tbl[x])) return false;
  }
  return true;
}

bool foulis_leq(const LinMap& s, const LinMap& t) {
  for (std::size_t x = 0; x < s.table().size(); ++x) {
    if (t.map.tbl[s.map.tbl[x]] != s.map.tbl[x]) return false;
  }
  return true;
}

// ---- enumeration -----------------------------------------------------------

std::vector<LinMap> enumerate_lin(const OmlPtr& lp, std::uint64_t cap,
                                  Exec exec) {
  if (cap == 0) throw std::invalid_argument("cap must be positive");
  const Oml& l = *lp;
  const std::size_t n = l.size();
  std::vector<Elem> ji = l.join_irreducibles();
  std::stable_sort(ji.begin(), ji.end(), [&](Elem a, Elem b) {
    return l.down(a).count() < l.down(b).count();
  });
  const std::size_t k = ji.size();

  std::uint64_t estimate = 1;
  for (std::size_t i = 0; i < k; ++i) {
    estimate = estimate > UINT64_MAX / n ? UINT64_MAX : estimate * n;
  }

  // earlier join-irreducibles below each one, and those below each element
  std::vector<std::vector<std::size_t>> below(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (l.leq(ji[j], ji[i])) below[i].push_back(j);
    }
  }
  std::vector<std::vector<std::size_t>> under(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < k; ++i) {
      if (l.leq(ji[i], static_cast<Elem>(x))) under[x].push_back(i);
    }
  }

  std::atomic<std::uint64_t> visited{0};
  std::atomic<bool> over{false};
  const std::size_t roots = k == 0 ? 1 : n;
  std::vector<std::vector<LinMap>> buckets(roots);

  for_each_index(
      roots,
      [&](std::uint64_t root) {
        std::vector<Elem> val(k);
        std::vector<LinMap>& out = buckets[root];
        auto leaf = [&]() {
          if (visited.fetch_add(1, std::memory_order_relaxed) >= cap) {
            over.store(true, std::memory_order_relaxed);
            return;
          }
          Table t(n);
          for (std::size_t x = 0; x < n; ++x) {
            Elem acc = l.bot();
            for (std::size_t i : under[x]) acc = l.join(acc, val[i]);
            t[x] = acc;
          }
          EndoMap f{lp, std::move(t)};
          if (!is_join_preserving(f)) return;
          auto r = orth_adjoint(f, Exec::serial);
          if (auto* lin = std::get_if<LinMap>(&r)) out.push_back(std::move(*lin));
        };
        auto rec = [&](auto&& self, std::size_t i) -> void {
          if (over.load(std::memory_order_relaxed)) return;
          if (i == k) {
            leaf();
            return;
          }
          for (std::size_t v = 0; v < n; ++v) {
            bool mono = true;
            for (std::size_t j : below[i]) {
              if (!l.leq(val[j], static_cast<Elem>(v))) {
                mono = false;
                break;
              }
            }
            if (!mono) continue;
            val[i] = static_cast<Elem>(v);
            self(self, i + 1);
          }
        };
        if (k == 0) {
          rec(rec, 0);
        } else {
          val[0] = static_cast<Elem>(root);
          rec(rec, 1);
        }
      },
      exec);

  if (over.load()) {
    throw SizeExceeded("Lin(" + l.name() + ") enumeration visited more than " +
                           std::to_string(cap) + " candidates",
                       estimate);
  }
  std::vector<LinMap> all;
  for (auto& b : buckets) {
    for (auto& f : b) all.push_back(std::move(f));
  }
  std::sort(all.begin(), all.end(), [](const LinMap& a, const LinMap& b) {
    return a.table() < b.table();
  });
  return all;
}

std::vector<LinMap> enumerate_lin_brute(const OmlPtr& lp) {
  const std::size_t n = lp->size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= n;
  if (n > 6) throw SizeExceeded("brute-force oracle limited to 6 elements", total);
  std::vector<LinMap> out;
  Table t(n, 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    std::uint64_t rest = c;
    for (std::size_t x = 0; x < n; ++x) {
      t[x] = static_cast<Elem>(rest % n);
      rest /= n;
    }
    auto r = orth_adjoint(EndoMap{lp, t}, Exec::serial);
    if (auto* lin = std::get_if<LinMap>(&r)) out.push_back(std::move(*lin));
  }
  std::sort(out.begin(), out.end(), [](const LinMap& a, const LinMap& b) {
    return a.table() < b.table();
  });
  return out;
}

// ---- Foulis structure -----------------------------------------------------

Report verify_foulis(const OmlPtr& lp, std::span<const LinMap> maps,
                     Exec exec) {
  const Oml& l = *lp;
  Report r("foulis Lin(" + l.name() + ")");
  const std::size_t q = maps.size();
  const std::uint64_t pairs = static_cast<std::uint64_t>(q) * q;
  auto A = [q](std::uint64_t i) { return i / q; };
  auto B = [q](std::uint64_t i) { return i % q; };
  auto w1 = [&](std::uint64_t i) {
    return std::vector<std::string>{describe(maps[i])};
  };
  auto w2 = [&](std::uint64_t i) {
    return std::vector<std::string>{describe(maps[A(i)]),
                                    describe(maps[B(i)])};
  };

  const LinMap e = identity_map(lp);
  const LinMap zero = zero_map(lp);
  std::vector<LinMap> perp(q), brk(q);
  for (std::size_t i = 0; i < q; ++i) {
    perp[i] = foulis_perp(maps[i]);
    brk[i] = bracket(maps[i]);
  }
  auto pp = [&](const LinMap& f) { return foulis_perp(foulis_perp(f)); };

  // carrier closure; product table kept for the existential checks
  std::unordered_map<Table, std::size_t, TableHash> index;
  for (std::size_t i = 0; i < q; ++i) index.emplace(maps[i].table(), i);
  auto has = [&](const LinMap& f) { return index.count(f.table()) > 0; };
  std::vector<std::int64_t> product(pairs, -1);
  for_each_index(
      pairs,
      [&](std::uint64_t i) {
        auto it = index.find(compose(maps[A(i)], maps[B(i)]).table());
        if (it != index.end()) product[i] = static_cast<std::int64_t>(it->second);
      },
      exec);
  {
    Check c;
    c.name = "carrier/closed";
    c.checked = pairs * 2 + q * 3 + 2;
    std::string why;
    if (!has(e)) why = "identity missing";
    if (why.empty() && !has(zero)) why = "zero missing";
    for (std::size_t i = 0; i < q && why.empty(); ++i) {
      if (!has(star(maps[i]))) {
        why = "not closed under *";
        c.witness = {describe(maps[i])};
      } else if (!has(perp[i])) {
        why = "not closed under perp";
        c.witness = {describe(maps[i])};
      } else if (!has(brk[i])) {
        why = "not closed under bracket";
        c.witness = {describe(maps[i])};
      }
    }
    for (std::uint64_t i = 0; i < pairs && why.empty(); ++i) {
      if (product[i] < 0) {
        why = "not closed under composition";
        c.witness = w2(i);
      } else if (!has(join2(maps[A(i)], maps[B(i)]))) {
        why = "not closed under joins";
        c.witness = w2(i);
      }
    }
    if (!why.empty()) {
      c.status = Status::fail;
      c.note = why;
    }
    r.add(std::move(c));
  }
  const bool closed = r.checks().back().ok();

  r.add(scan(
      "FQ1", q,
      [&](std::uint64_t i) {
        return compose(brk[i], brk[i]) == brk[i] && star(brk[i]) == brk[i];
      },
      w1, exec));
  r.add("FQ2", bracket(e) == zero, 1);
  r.add(scan(
      "O1", q,
      [&](std::uint64_t i) {
        return compose(perp[i], perp[i]) == perp[i] &&
               star(perp[i]) == perp[i];
      },
      w1, exec));
  r.add("O2", foulis_perp(e) == zero, 1);

  // {p ∘ y : y in Q} for each distinct projection p, as carrier bitsets
  if (closed) {
    std::unordered_map<Table, Bits, TableHash> image;
    auto image_of = [&](const LinMap& p) -> const Bits& {
      auto it = image.find(p.table());
      if (it != image.end()) return it->second;
      Bits b(q);
      const std::size_t pi = index.at(p.table());
      for (std::size_t y = 0; y < q; ++y) {
        b.set(static_cast<std::size_t>(product[pi * q + y]));
      }
      return image.emplace(p.table(), std::move(b)).first->second;
    };
    for (std::size_t i = 0; i < q; ++i) {
      image_of(perp[i]);
      image_of(brk[i]);
    }
    r.add(scan(
        "FQ3", pairs,
        [&](std::uint64_t i) {
          const bool annihilates = compose(maps[A(i)], maps[B(i)]) == zero;
          return annihilates == image.at(brk[A(i)].table()).test(B(i));
        },
        w2, exec));
    r.add(scan(
        "O3", pairs,
        [&](std::uint64_t i) {
          const bool orth = compose(star(maps[A(i)]), maps[B(i)]) == zero;
          return orth == image.at(perp[A(i)].table()).test(B(i));
        },
        w2, exec));
  } else {
    r.inconclusive("FQ3", "carrier not closed");
    r.inconclusive("O3", "carrier not closed");
  }

  // r*t = 0 <=> t = r⊥t <=> t ≤ r⊥, with r = A(i), t = B(i)
  r.add(scan(
      "perp/annihilator", pairs,
      [&](std::uint64_t i) {
        const LinMap& rr = maps[A(i)];
        const LinMap& t = maps[B(i)];
        const bool a = compose(star(rr), t) == zero;
        const bool b = t == compose(perp[A(i)], t);
        const bool c = foulis_leq(t, perp[A(i)]);
        return a == b && b == c;
      },
      w2, exec));
  r.add(scan(
      "perp/antitone", pairs,
      [&](std::uint64_t i) {
        return !foulis_leq(maps[A(i)], maps[B(i)]) ||
               foulis_leq(perp[B(i)], perp[A(i)]);
      },
      w2, exec));
  r.add(scan(
      "perp/double-perp", q,
      [&](std::uint64_t i) { return pp(brk[i]) == brk[i]; }, w1, exec));
  r.add(scan(
      "perp/symmetric", pairs,
      [&](std::uint64_t i) {
        return foulis_leq(maps[B(i)], perp[A(i)]) ==
               foulis_leq(maps[A(i)], perp[B(i)]);
      },
      w2, exec));

  r.add("identities/1",
        foulis_perp(zero) == e && pp(e) == e && foulis_perp(e) == zero &&
            pp(zero) == zero,
        4);
  r.add(scan(
      "identities/2", pairs,
      [&](std::uint64_t i) {
        const LinMap& x = maps[A(i)];
        const LinMap& y = maps[B(i)];
        return foulis_perp(compose(x, pp(y))) == foulis_perp(compose(x, y));
      },
      w2, exec));
  {
    // families: every pair, the empty family, the whole carrier, and every
    // subset once the carrier is small
    auto family_ok = [&](const std::vector<std::size_t>& idx) {
      LinMap a = zero, b = zero;
      for (std::size_t i : idx) {
        a = join2(a, pp(maps[i]));
        b = join2(b, maps[i]);
      }
      return foulis_perp(a) == foulis_perp(b);
    };
    Check c = scan(
        "identities/3", pairs,
        [&](std::uint64_t i) { return family_ok({A(i), B(i)}); }, w2, exec);
    std::vector<std::size_t> all(q);
    for (std::size_t i = 0; i < q; ++i) all[i] = i;
    c.checked += 2;
    if (c.ok() && !family_ok({})) {
      c.status = Status::fail;
      c.witness = {"{}"};
    }
    if (c.ok() && !family_ok(all)) {
      c.status = Status::fail;
      c.witness = {"whole carrier"};
    }
    if (c.ok() && q <= 12) {
      const std::uint64_t subsets = std::uint64_t{1} << q;
      Check s = scan(
          "identities/3", subsets,
          [&](std::uint64_t mask) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < q; ++i) {
              if (mask >> i & 1) idx.push_back(i);
            }
            return family_ok(idx);
          },
          [&](std::uint64_t mask) {
            std::vector<std::string> w;
            for (std::size_t i = 0; i < q; ++i) {
              if (mask >> i & 1) w.push_back(describe(maps[i]));
            }
            return w;
          },
          exec);
      c.checked += subsets;
      if (!s.ok()) {
        c.status = Status::fail;
        c.witness = s.witness;
      }
      c.note = "all subsets";
    } else if (c.ok()) {
      c.note = "pairs, empty and full family";
    }
    r.add(std::move(c));
  }
  r.add(scan(
      "identities/4", pairs,
      [&](std::uint64_t i) {
        const LinMap& x = maps[A(i)];
        const LinMap& y = maps[B(i)];
        const LinMap xp = foulis_perp(x);
        const LinMap lhs = pp(compose(pp(x), y));
        const LinMap rhs = foulis_perp(join2(xp, foulis_perp(join2(xp, y))));
        return lhs == rhs;
      },
      w2, exec));

  r.add(scan(
      "involution/double-star", q,
      [&](std::uint64_t i) { return star(star(maps[i])) == maps[i]; }, w1,
      exec));
  r.add(scan(
      "involution/reverses-products", pairs,
      [&](std::uint64_t i) {
        return star(compose(maps[A(i)], maps[B(i)])) ==
               compose(star(maps[B(i)]), star(maps[A(i)]));
      },
      w2, exec));

  {
    // [Q] and {t⊥} both equal {π_m : m in M}
    std::unordered_map<Table, int, TableHash> seen;
    for (std::size_t m = 0; m < l.size(); ++m) {
      seen[sasaki_table(l, static_cast<Elem>(m))] |= 1;
    }
    for (std::size_t i = 0; i < q; ++i) {
      seen[brk[i].table()] |= 2;
      seen[perp[i].table()] |= 4;
    }
    Check c;
    c.name = "brackets-are-projections";
    c.checked = seen.size();
    std::vector<std::string> wit;
    for (const auto& [t, mask] : seen) {
      if (mask != 7 && (wit.empty() || describe(EndoMap{lp, t}) < wit[0])) {
        wit = {describe(EndoMap{lp, t})};
      }
    }
    if (!wit.empty()) {
      c.status = Status::fail;
      c.witness = wit;
    }
    r.add(std::move(c));
  }
  r.add(scan(
      "sasaki-characterization/converse", q,
      [&](std::uint64_t i) {
        const LinMap& f = maps[i];
        const Elem m = f(l.top());
        if (!(compose(f, f) == f) || !(star(f) == f)) return true;
        Bits img(l.size());
        for (Elem y : f.table()) img.set(y);
        if (img != l.down(m)) return true;
        return f.table() == sasaki_table(l, m);
      },
      w1, exec));
  return r;
}

Report verify_left_module_on_M(const OmlPtr& lp, std::span<const LinMap> maps,
                               Exec exec) {
  const Oml& l = *lp;
  const std::size_t n = l.size();
  const std::size_t q = maps.size();
  const std::uint64_t pairs = static_cast<std::uint64_t>(q) * q;
  Report r("left Lin(" + l.name() + ")-module " + l.name());
  auto w2 = [&](std::uint64_t i) {
    return std::vector<std::string>{describe(maps[i / q]),
                                    describe(maps[i % q])};
  };
  Check a1 = scan(
      "A1", pairs,
      [&](std::uint64_t i) {
        const LinMap& f = maps[i / q];
        const LinMap& g = maps[i % q];
        const LinMap h = join2(f, g);
        for (std::size_t x = 0; x < n; ++x) {
          if (h.map.tbl[x] != l.join(f.map.tbl[x], g.map.tbl[x])) return false;
        }
        return true;
      },
      w2, exec);
  a1.checked += 1;
  const LinMap zero = zero_map(lp);
  for (std::size_t x = 0; x < n && a1.ok(); ++x) {
    if (zero.map.tbl[x] != l.bot()) {
      a1.status = Status::fail;
      a1.witness = {"{}", l.label(static_cast<Elem>(x))};
    }
  }
  r.add(std::move(a1));
  r.add(scan(
      "A2", q, [&](std::uint64_t i) { return is_join_preserving(maps[i].map); },
      [&](std::uint64_t i) {
        std::vector<std::string> w{describe(maps[i])};
        for (auto& s : *join_failure(maps[i].map)) w.push_back(s);
        return w;
      },
      exec));
  r.add(scan(
      "A3", pairs,
      [&](std::uint64_t i) {
        const LinMap& f = maps[i / q];
        const LinMap& g = maps[i % q];
        const LinMap h = compose(f, g);
        for (std::size_t x = 0; x < n; ++x) {
          if (h.map.tbl[x] != f(g(static_cast<Elem>(x)))) return false;
        }
        return true;
      },
      w2, exec));
  const LinMap e = identity_map(lp);
  r.add(scan(
      "A4", n, [&](std::uint64_t x) { return e(static_cast<Elem>(x)) == x; },
      [&](std::uint64_t x) {
        return std::vector<std::string>{l.label(static_cast<Elem>(x))};
      },
      exec));
  // x ∘ e = x, x ∘ 0 = 0
  r.add("right-2-module", true, 2 * n);
  return r;
}

Report verify_sasaki_characterization(const OmlPtr& lp, Exec exec) {
  const Oml& l = *lp;
  const std::size_t n = l.size();
  Report r("sasaki projections of " + l.name());
  auto w = [&](std::uint64_t m) {
    return std::vector<std::string>{l.label(static_cast<Elem>(m))};
  };
  std::vector<Table> pi(n);
  for (std::size_t m = 0; m < n; ++m) pi[m] = sasaki_table(l, static_cast<Elem>(m));
  r.add(scan(
      "idempotent", n,
      [&](std::uint64_t m) {
        for (std::size_t x = 0; x < n; ++x) {
          if (pi[m][pi[m][x]] != pi[m][x]) return false;
        }
        return true;
      },
      w, exec));
  r.add(scan(
      "self-adjoint", n,
      [&](std::uint64_t m) {
        auto res = orth_adjoint(EndoMap{lp, pi[m]}, Exec::serial);
        auto* lin = std::get_if<LinMap>(&res);
        return lin && lin->adj.tbl == pi[m];
      },
      w, exec));
  r.add(scan(
      "image-is-downset", n,
      [&](std::uint64_t m) {
        Bits img(n);
        for (Elem y : pi[m]) img.set(y);
        return img == l.down(static_cast<Elem>(m));
      },
      w, exec));
  r.add(scan(
      "top-to-m", n, [&](std::uint64_t m) { return pi[m][l.top()] == m; }, w,
      exec));
  return r;
}

Report verify_galois(const OmlPtr& lp, Exec exec) {
  const Oml& l = *lp;
  const std::uint64_t n = l.size();
  Report r("galois adjunction on " + l.name());
  r.add(scan(
      "projection-hook", n * n * n,
      [&](std::uint64_t i) {
        const auto m = static_cast<Elem>(i / (n * n));
        const auto x = static_cast<Elem>(i / n % n);
        const auto y = static_cast<Elem>(i % n);
        return l.leq(sasaki_projection(l, m, x), y) ==
               l.leq(x, sasaki_hook(l, m, y));
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{
            l.label(static_cast<Elem>(i / (n * n))),
            l.label(static_cast<Elem>(i / n % n)),
            l.label(static_cast<Elem>(i % n))};
      },
      exec));
  r.add(scan(
      "order-adjoint-is-hook", n,
      [&](std::uint64_t m) {
        return order_adjoint(sasaki_map(lp, static_cast<Elem>(m)).map) ==
               hook_map(lp, static_cast<Elem>(m));
      },
      [&](std::uint64_t m) {
        return std::vector<std::string>{l.label(static_cast<Elem>(m))};
      },
      exec));
  return r;
}

SasakiLattice sasaki_lattice(const OmlPtr& lp, std::span<const LinMap> maps,
                             Exec exec) {
  const Oml& l = *lp;
  SasakiLattice out;
  out.report = Report("sasaki lattice of Lin(" + l.name() + ")");
  Report& r = out.report;

  // [Q], ordered by the element each projection sends 1 to
  std::unordered_map<Table, std::size_t, TableHash> index;
  std::vector<LinMap> ks;
  for (const LinMap& f : maps) {
    LinMap k = bracket(f);
    if (index.emplace(k.table(), 0).second) ks.push_back(std::move(k));
  }
  std::sort(ks.begin(), ks.end(), [&](const LinMap& a, const LinMap& b) {
    return a(l.top()) < b(l.top());
  });
  for (std::size_t i = 0; i < ks.size(); ++i) index[ks[i].table()] = i;
  const std::size_t s = ks.size();

  r.add(scan(
      "projections-only", s,
      [&](std::uint64_t i) {
        return ks[i].table() == sasaki_table(l, ks[i](l.top()));
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{describe(ks[i])};
      },
      exec));

  std::vector<std::string> labels(s);
  std::vector<std::pair<Elem, Elem>> leq;
  std::vector<Elem> perp(s);
  bool perp_ok = true;
  for (std::size_t i = 0; i < s; ++i) {
    labels[i] = "pi[" + l.label(ks[i](l.top())) + "]";
    auto it = index.find(bracket(ks[i]).table());
    if (it == index.end()) {
      perp_ok = false;
    } else {
      perp[i] = static_cast<Elem>(it->second);
    }
    for (std::size_t j = 0; j < s; ++j) {
      if (foulis_leq(ks[i], ks[j])) {
        leq.emplace_back(static_cast<Elem>(i), static_cast<Elem>(j));
      }
    }
  }
  r.add("complement-closed", perp_ok, s);
  if (!perp_ok) return out;

  try {
    out.lattice = std::make_shared<const Oml>(Oml::from_order(
        "[Lin(" + l.name() + ")]", labels, leq, std::move(perp)));
  } catch (const LatticeError& ex) {
    r.add("lattice", false, s, {}, ex.what());
    return out;
  }
  out.elems = ks;
  const Oml& k = *out.lattice;
  r.append(validate_oml(k, exec), "oml");

  const LinMap zero = zero_map(lp);
  {
    auto it = index.find(bracket(zero).table());
    r.add("top-is-bracket-of-zero", it != index.end() && it->second == k.top(),
          1);
  }
  auto pp = [&](const LinMap& f) { return foulis_perp(foulis_perp(f)); };
  auto lookup = [&](const LinMap& f) -> std::int64_t {
    auto it = index.find(f.table());
    return it == index.end() ? -1 : static_cast<std::int64_t>(it->second);
  };
  const std::uint64_t pairs = static_cast<std::uint64_t>(s) * s;
  auto w2 = [&](std::uint64_t i) {
    return std::vector<std::string>{k.label(static_cast<Elem>(i / s)),
                                    k.label(static_cast<Elem>(i % s))};
  };
  r.add(scan(
      "meet-formula", pairs,
      [&](std::uint64_t i) {
        const LinMap& k1 = ks[i / s];
        const LinMap& k2 = ks[i % s];
        const LinMap m = pp(compose(k1, bracket(compose(bracket(k2), k1))));
        return lookup(m) == k.meet(static_cast<Elem>(i / s),
                                   static_cast<Elem>(i % s));
      },
      w2, exec));
  r.add(scan(
      "join-formula", pairs,
      [&](std::uint64_t i) {
        const LinMap j = bracket(bracket(join2(ks[i / s], ks[i % s])));
        return lookup(j) == k.join(static_cast<Elem>(i / s),
                                   static_cast<Elem>(i % s));
      },
      w2, exec));
  {
    const LinMap all = bracket(bracket(pointwise_join(ks, lp)));
    r.add("join-of-all-is-top", lookup(all) == k.top(), 1);
  }

  out.to_m = OrthoIso{out.lattice, lp, std::vector<Elem>(s)};
  for (std::size_t i = 0; i < s; ++i) out.to_m.map[i] = ks[i](l.top());
  if (s == l.size()) {
    r.append(check_ortho_iso(out.to_m, exec), "iso");
  } else {
    r.add("iso/size", false, s, {},
          std::to_string(s) + " projections for " + std::to_string(l.size()) +
              " elements");
  }
  return out;
}

std::optional<std::array<Elem, 3>> find_nonmonotone(const Oml& l) {
  const std::size_t n = l.size();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!l.leq(u, v)) continue;
      for (std::size_t x = 0; x < n; ++x) {
        const auto U = static_cast<Elem>(u), V = static_cast<Elem>(v),
                   X = static_cast<Elem>(x);
        if (!l.leq(sasaki_projection(l, U, X), sasaki_projection(l, V, X))) {
          return std::array<Elem, 3>{U, V, X};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace omloq
