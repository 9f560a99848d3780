#include "omloq/hilbert3.hpp"

#include <limits>
#include <random>
#include <sstream>

namespace omloq {

namespace {

// Fraction-free reduction to the canonical basis.
std::vector<Vec3> reduce(std::vector<Vec3> rows) {
  std::vector<Vec3> out;
  std::size_t r = 0;
  for (int c = 0; c < 3 && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const BigInt a = rows[r][c], b = rows[i][c];
      for (int k = 0; k < 3; ++k) rows[i][k] = a * rows[i][k] - b * rows[r][k];
    }
    ++r;
  }
  rows.resize(r);
  for (Vec3& row : rows) {
    BigInt g = 0;
    for (const BigInt& x : row) g = gcd(g, abs(x));
    int lead = 0;
    while (row[lead] == 0) ++lead;
    if (row[lead] < 0) g = -g;
    for (BigInt& x : row) x /= g;
  }
  // pivots already increase with the row index
  return rows;
}

bool independent_of(const std::vector<Vec3>& basis, const Vec3& w) {
  std::vector<Vec3> rows = basis;
  rows.push_back(w);
  return reduce(std::move(rows)).size() > basis.size();
}

}  // namespace

Vec3 vec3(long a, long b, long c) { return {BigInt(a), BigInt(b), BigInt(c)}; }

RatSubspace span(std::vector<Vec3> vectors) {
  std::erase_if(vectors, [](const Vec3& v) {
    return v[0] == 0 && v[1] == 0 && v[2] == 0;
  });
  RatSubspace s;
  s.basis_ = reduce(std::move(vectors));
  return s;
}

bool RatSubspace::contains(const Vec3& w) const {
  return !independent_of(basis_, w);
}

bool RatSubspace::subset_of(const RatSubspace& other) const {
  for (const Vec3& b : basis_) {
    if (!other.contains(b)) return false;
  }
  return true;
}

std::string RatSubspace::to_string() const {
  if (basis_.empty()) return "0";
  std::ostringstream os;
  os << "span(";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) os << ", ";
    os << '(' << basis_[i][0] << ',' << basis_[i][1] << ',' << basis_[i][2]
       << ')';
  }
  os << ')';
  return os.str();
}

nlohmann::ordered_json RatSubspace::to_json() const {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const Vec3& b : basis_) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const BigInt& x : b) {
      if (x >= std::numeric_limits<std::int64_t>::min() &&
          x <= std::numeric_limits<std::int64_t>::max()) {
        row.push_back(x.convert_to<std::int64_t>());
      } else {
        row.push_back(x.str());
      }
    }
    rows.push_back(std::move(row));
  }
  return {{"dim", basis_.size()}, {"basis", std::move(rows)}};
}

RatSubspace join(const RatSubspace& a, const RatSubspace& b) {
  std::vector<Vec3> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return span(std::move(rows));
}

RatSubspace orth(const RatSubspace& a) {
  const std::vector<Vec3>& rows = a.basis();
  std::array<int, 3> pivot_row{-1, -1, -1};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    int c = 0;
    while (rows[i][c] == 0) ++c;
    pivot_row[c] = static_cast<int>(i);
  }
  BigInt l = 1;
  for (const Vec3& r : rows) {
    for (const BigInt& x : r) {
      if (x != 0) {
        l = lcm(l, abs(x));
        break;
      }
    }
  }
  // one null vector per free column: x_f = l, x_c = -l * row[f] / row[c]
  std::vector<Vec3> null;
  for (int f = 0; f < 3; ++f) {
    if (pivot_row[f] >= 0) continue;
    Vec3 n = vec3(0, 0, 0);
    n[f] = l;
    for (int c = 0; c < 3; ++c) {
      if (pivot_row[c] < 0) continue;
      const Vec3& r = rows[pivot_row[c]];
      n[c] = -l * r[f] / r[c];
    }
    null.push_back(n);
  }
  return span(std::move(null));
}

RatSubspace meet(const RatSubspace& a, const RatSubspace& b) {
  return orth(join(orth(a), orth(b)));
}

RatSubspace sasaki3(const RatSubspace& u, const RatSubspace& x) {
  return meet(u, join(x, orth(u)));
}

WitnessReport witness_report(const Vec3& xv) {
  WitnessReport w;
  w.u = span({e1()});
  w.v = span({e1(), e2()});
  w.x = span({xv});
  w.default_x = w.x == span({vec3(1, 1, 1)});
  w.orth_u = orth(w.u);
  w.orth_v = orth(w.v);
  w.x_join_orth_u = join(w.x, w.orth_u);
  w.x_join_orth_v = join(w.x, w.orth_v);
  w.pi_u_x = sasaki3(w.u, w.x);
  w.pi_v_x = sasaki3(w.v, w.x);
  const bool below = w.u.subset_of(w.v);
  w.monotone_violation = below && !w.pi_u_x.subset_of(w.pi_v_x);

  Report& r = w.report;
  r = Report("sasaki projections in the subspaces of Q^3, x = " +
             w.x.to_string());
  r.add("u-below-v", below, 1, {w.u.to_string(), w.v.to_string()});
  if (w.default_x) {
    const RatSubspace want_u = span({e1()});
    const RatSubspace want_v = span({vec3(1, 1, 0)});
    r.add("pi_u(x)", w.pi_u_x == want_u, 1,
          w.pi_u_x == want_u ? std::vector<std::string>{}
                             : std::vector{w.pi_u_x.to_string()},
          "expected " + want_u.to_string());
    r.add("pi_v(x)", w.pi_v_x == want_v, 1,
          w.pi_v_x == want_v ? std::vector<std::string>{}
                             : std::vector{w.pi_v_x.to_string()},
          "expected " + want_v.to_string());
  }
  r.add("not-contained", w.monotone_violation, 1,
        w.monotone_violation
            ? std::vector<std::string>{}
            : std::vector{w.pi_u_x.to_string(), w.pi_v_x.to_string()},
        w.monotone_violation ? "" : "monotone at this x");
  return w;
}

nlohmann::ordered_json WitnessReport::to_json() const {
  return {{"u", u.to_json()},
          {"v", v.to_json()},
          {"x", x.to_json()},
          {"pi_u_x", pi_u_x.to_json()},
          {"pi_v_x", pi_v_x.to_json()},
          {"monotone_violation", monotone_violation}};
}

std::vector<RatSubspace> stress_set(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<RatSubspace> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto k = rng() % 4;
    std::vector<Vec3> vs;
    for (std::uint64_t j = 0; j < k; ++j) {
      Vec3 v;
      for (BigInt& x : v) x = static_cast<long>(rng() % 7) - 3;
      vs.push_back(v);
    }
    out.push_back(span(std::move(vs)));
  }
  return out;
}

Report verify_subspace_lattice(const std::vector<RatSubspace>& subs,
                               Exec exec) {
  Report r("subspace lattice of Q^3 on " + std::to_string(subs.size()) +
           " subspaces");
  const std::size_t n = subs.size();
  const RatSubspace zero, one = span({e1(), e2(), e3()});
  auto w1 = [&](std::uint64_t i) {
    return std::vector<std::string>{subs[i].to_string()};
  };
  auto w2 = [&](std::uint64_t i) {
    return std::vector<std::string>{subs[i / n].to_string(),
                                    subs[i % n].to_string()};
  };
  r.add(scan(
      "orth/involution", n,
      [&](std::uint64_t i) { return orth(orth(subs[i])) == subs[i]; }, w1,
      exec));
  r.add(scan(
      "orth/dimension", n,
      [&](std::uint64_t i) {
        return subs[i].dim() + orth(subs[i]).dim() == 3;
      },
      w1, exec));
  r.add(scan(
      "orth/complement", n,
      [&](std::uint64_t i) {
        const RatSubspace o = orth(subs[i]);
        return meet(subs[i], o) == zero && join(subs[i], o) == one;
      },
      w1, exec));
  r.add(scan(
      "orth/antitone", n * n,
      [&](std::uint64_t i) {
        const RatSubspace &a = subs[i / n], &b = subs[i % n];
        return !a.subset_of(b) || orth(b).subset_of(orth(a));
      },
      w2, exec));
  r.add(scan(
      "orthomodular", n * n,
      [&](std::uint64_t i) {
        const RatSubspace &a = subs[i / n], &b = subs[i % n];
        return !a.subset_of(b) || b == join(a, meet(orth(a), b));
      },
      w2, exec));
  return r;
}

}  // namespace omloq
