#include "omloq/testmonoid.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace omloq {

namespace {

Table compose_tables(const Table& f, const Table& g) {
  Table r(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) r[x] = f[g[x]];
  return r;
}

Table word_table(const Oml& l, const std::vector<Elem>& word) {
  Table t(l.size());
  for (std::size_t x = 0; x < l.size(); ++x) {
    auto v = static_cast<Elem>(x);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      v = sasaki_projection(l, *it, v);
    }
    t[x] = v;
  }
  return t;
}

std::string word_name(const Oml& l, const std::vector<Elem>& word) {
  std::string s;
  for (Elem m : word) s += "pi[" + l.label(m) + "]";
  return s;
}

}  // namespace

const MonoidElem& InvMonoid::elem(MonoId a) const {
  if (a >= elems_.size()) throw std::out_of_range("monoid id out of range");
  return elems_[a];
}

MonoId InvMonoid::generator(Elem m) const {
  if (m >= gens_.size()) throw std::out_of_range("lattice element out of range");
  return gens_[m];
}

bool InvMonoid::is_generator(MonoId a) const {
  return std::find(gens_.begin(), gens_.end(), a) != gens_.end();
}

std::optional<MonoId> InvMonoid::find(const Table& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

MonoId InvMonoid::compose(MonoId a, MonoId b) const {
  if (a >= size() || b >= size()) {
    throw std::out_of_range("monoid id out of range");
  }
  if (!cayley_.empty()) return cayley_[std::size_t{a} * size() + b];
  auto r = find(compose_tables(elems_[a].tbl, elems_[b].tbl));
  if (!r) throw std::logic_error("monoid is not closed under composition");
  return *r;
}

MonoId InvMonoid::star(MonoId a) const { return elem(a).star; }

LinMap InvMonoid::as_linmap(MonoId a) const {
  const MonoidElem& e = elem(a);
  return LinMap{EndoMap{l_, e.tbl}, EndoMap{l_, elems_[e.star].tbl}};
}

std::string InvMonoid::name(MonoId a) const {
  return word_name(*l_, elem(a).word);
}

InvMonoid generate_T(const OmlPtr& l, std::uint64_t cap, Exec exec) {
  const Report valid = validate_oml(*l, exec);
  if (!valid.passed()) {
    std::string failed;
    for (const Check& c : valid.checks()) {
      if (!c.ok()) failed += (failed.empty() ? "" : ", ") + c.name;
    }
    throw PreconditionError("'" + l->name() + "' is not an orthomodular "
                            "lattice (failed: " + failed + ")");
  }
  const std::size_t n = l->size();
  InvMonoid mono;
  mono.l_ = l;

  auto add = [&](Table t, std::vector<Elem> word) -> bool {
    if (mono.index_.count(t)) return false;
    if (mono.elems_.size() >= cap) {
      throw SizeExceeded("test monoid of '" + l->name() + "' exceeds cap " +
                             std::to_string(cap),
                         mono.elems_.size());
    }
    const auto id = static_cast<MonoId>(mono.elems_.size());
    mono.index_.emplace(t, id);
    mono.elems_.push_back(MonoidElem{id, std::move(t), std::move(word), 0});
    return true;
  };

  std::vector<Table> gen_tbl(n);
  for (std::size_t m = 0; m < n; ++m) {
    gen_tbl[m] = word_table(*l, {static_cast<Elem>(m)});
    add(gen_tbl[m], {static_cast<Elem>(m)});
    mono.gens_.push_back(*mono.find(gen_tbl[m]));
  }
  mono.unit_ = mono.gens_[l->top()];

  std::size_t begin = 0;
  while (begin < mono.elems_.size()) {
    const std::size_t end = mono.elems_.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t m = 0; m < n; ++m) {
        // copies: add() may reallocate elems_
        const Table cur = mono.elems_[i].tbl;
        const std::vector<Elem> word = mono.elems_[i].word;
        std::vector<Elem> right = word;
        right.push_back(static_cast<Elem>(m));
        add(compose_tables(cur, gen_tbl[m]), std::move(right));
        std::vector<Elem> left{static_cast<Elem>(m)};
        left.insert(left.end(), word.begin(), word.end());
        add(compose_tables(gen_tbl[m], cur), std::move(left));
      }
    }
    begin = end;
  }

  for (MonoidElem& e : mono.elems_) {
    std::vector<Elem> rev(e.word.rbegin(), e.word.rend());
    auto s = mono.find(word_table(*l, rev));
    if (!s) throw std::logic_error("reversed word left the monoid");
    e.star = *s;
  }

  const std::size_t q = mono.elems_.size();
  if (q <= kEagerCayley) {
    mono.cayley_.assign(q * q, 0);
    std::vector<char> missing(q, 0);
    for_each_index(
        q,
        [&](std::uint64_t a) {
          for (std::size_t b = 0; b < q; ++b) {
            auto r = mono.find(
                compose_tables(mono.elems_[a].tbl, mono.elems_[b].tbl));
            if (!r) {
              missing[a] = 1;
              continue;
            }
            mono.cayley_[a * q + b] = *r;
          }
        },
        exec);
    if (std::find(missing.begin(), missing.end(), 1) != missing.end()) {
      throw std::logic_error("monoid is not closed under composition");
    }
  }
  return mono;
}

Report audit_minimality(const InvMonoid& mono, Exec exec) {
  const Oml& l = *mono.lattice();
  const std::size_t n = l.size();
  const std::size_t q = mono.size();
  const auto& es = mono.elems();
  Report r("test monoid of " + l.name());
  auto nm = [&](std::uint64_t a) { return mono.name(static_cast<MonoId>(a)); };

  r.add(scan(
      "generators", n,
      [&](std::uint64_t m) {
        const Table t = word_table(l, {static_cast<Elem>(m)});
        return mono.find(t) == mono.generator(static_cast<Elem>(m));
      },
      [&](std::uint64_t m) {
        return std::vector<std::string>{l.label(static_cast<Elem>(m))};
      },
      exec));

  {
    const Table& u = mono.elem(mono.unit()).tbl;
    bool ok = true;
    for (std::size_t x = 0; x < n; ++x) ok = ok && u[x] == x;
    r.add("unit", ok, 1, ok ? std::vector<std::string>{}
                            : std::vector<std::string>{nm(mono.unit())});
  }

  r.add(scan(
      "closure", q * q,
      [&](std::uint64_t i) {
        const Table t = compose_tables(es[i / q].tbl, es[i % q].tbl);
        auto f = mono.find(t);
        return f && *f == mono.compose(static_cast<MonoId>(i / q),
                                       static_cast<MonoId>(i % q));
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{nm(i / q), nm(i % q)};
      },
      exec));

  r.add(scan(
      "distinct-tables", q,
      [&](std::uint64_t a) { return mono.find(es[a].tbl) == a; },
      [&](std::uint64_t a) { return std::vector<std::string>{nm(a)}; },
      exec));

  r.add(scan(
      "witness-words", q,
      [&](std::uint64_t a) {
        const MonoidElem& e = es[a];
        if (word_table(l, e.word) != e.tbl) return false;
        std::vector<Elem> rev(e.word.rbegin(), e.word.rend());
        return word_table(l, rev) == es[e.star].tbl;
      },
      [&](std::uint64_t a) { return std::vector<std::string>{nm(a)}; },
      exec));

  r.add(scan(
      "star-equals-adjoint", q,
      [&](std::uint64_t a) {
        auto res = orth_adjoint(EndoMap{mono.lattice(), es[a].tbl});
        const auto* f = std::get_if<LinMap>(&res);
        return f && f->adj.tbl == es[es[a].star].tbl;
      },
      [&](std::uint64_t a) { return std::vector<std::string>{nm(a)}; },
      exec));

  r.add(scan(
      "star-involutive", q,
      [&](std::uint64_t a) {
        return mono.star(mono.star(static_cast<MonoId>(a))) == a;
      },
      [&](std::uint64_t a) { return std::vector<std::string>{nm(a)}; },
      exec));

  r.add(scan(
      "star-reverses-products", q * q,
      [&](std::uint64_t i) {
        const auto a = static_cast<MonoId>(i / q);
        const auto b = static_cast<MonoId>(i % q);
        return mono.star(mono.compose(a, b)) ==
               mono.compose(mono.star(b), mono.star(a));
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{nm(i / q), nm(i % q)};
      },
      exec));

  // Least closed set containing the generators: no proper subset obtained by
  // dropping non-generators is closed.
  std::vector<MonoId> extra;
  for (MonoId a = 0; a < q; ++a) {
    if (!mono.is_generator(a)) extra.push_back(a);
  }
  if (extra.size() <= 16) {
    const std::uint64_t subsets = (std::uint64_t{1} << extra.size()) - 1;
    r.add(scan(
        "least/subsets", subsets,
        [&](std::uint64_t s) {
          const std::uint64_t drop_mask = s + 1;
          std::vector<char> dropped(q, 0);
          for (std::size_t k = 0; k < extra.size(); ++k) {
            if (drop_mask >> k & 1) dropped[extra[k]] = 1;
          }
          for (MonoId a = 0; a < q; ++a) {
            if (dropped[a]) continue;
            for (MonoId b = 0; b < q; ++b) {
              if (!dropped[b] && dropped[mono.compose(a, b)]) return true;
            }
          }
          return false;
        },
        [&](std::uint64_t s) {
          std::vector<std::string> w;
          for (std::size_t k = 0; k < extra.size(); ++k) {
            if ((s + 1) >> k & 1) w.push_back(nm(extra[k]));
          }
          return w;
        },
        exec));
  } else {
    // every element is a product of a strictly shorter element and a
    // generator, so it cannot be dropped on its own
    r.add(scan(
        "least/decomposition", q,
        [&](std::uint64_t a) {
          const auto& w = es[a].word;
          if (w.size() == 1) return mono.is_generator(static_cast<MonoId>(a));
          std::vector<Elem> prefix(w.begin(), w.end() - 1);
          auto p = mono.find(word_table(l, prefix));
          return p && es[*p].word.size() < w.size() &&
                 mono.compose(*p, mono.generator(w.back())) == a;
        },
        [&](std::uint64_t a) { return std::vector<std::string>{nm(a)}; },
        exec));
  }
  return r;
}

Report audit_boolean(const InvMonoid& mono, Exec exec) {
  const Oml& l = *mono.lattice();
  const std::size_t n = l.size();
  const std::size_t q = mono.size();
  Report r("boolean test monoid of " + l.name());
  auto nm = [&](std::uint64_t a) { return mono.name(static_cast<MonoId>(a)); };
  r.add(scan(
      "commutative", q * q,
      [&](std::uint64_t i) {
        const auto a = static_cast<MonoId>(i / q);
        const auto b = static_cast<MonoId>(i % q);
        return mono.compose(a, b) == mono.compose(b, a);
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{nm(i / q), nm(i % q)};
      },
      exec));
  r.add(scan(
      "idempotent", q,
      [&](std::uint64_t a) {
        const auto x = static_cast<MonoId>(a);
        return mono.compose(x, x) == x;
      },
      [&](std::uint64_t a) { return std::vector<std::string>{nm(a)}; },
      exec));
  r.add(scan(
      "meet-law", n * n,
      [&](std::uint64_t i) {
        const auto m = static_cast<Elem>(i / n);
        const auto k = static_cast<Elem>(i % n);
        return mono.compose(mono.generator(m), mono.generator(k)) ==
               mono.generator(l.meet(m, k));
      },
      [&](std::uint64_t i) {
        return std::vector<std::string>{l.label(static_cast<Elem>(i / n)),
                                        l.label(static_cast<Elem>(i % n))};
      },
      exec));
  {
    bool ok = q == n;
    std::vector<std::string> w;
    for (MonoId a = 0; a < q && ok; ++a) {
      if (!mono.is_generator(a)) {
        ok = false;
        w.push_back(nm(a));
      }
    }
    r.add("bijection-with-lattice", ok, q, w,
          ok ? "" : std::to_string(q) + " elements for " + std::to_string(n));
  }
  return r;
}

void write_cayley_csv(std::ostream& os, const InvMonoid& m) {
  os << "row,col,product\n";
  for (MonoId a = 0; a < m.size(); ++a) {
    for (MonoId b = 0; b < m.size(); ++b) {
      os << a << ',' << b << ',' << m.compose(a, b) << '\n';
    }
  }
}

}  // namespace omloq
