#include "gconv/fourier_motzkin.hpp"

#include <map>
#include <optional>

namespace gconv {

namespace {

struct Row {
  std::vector<Rational> a;
  Rational b;
  std::vector<Rational> mult;
};

bool zero_lhs(const Row& r) {
  for (const auto& v : r.a)
    if (v != 0) return false;
  return true;
}

// Scales so the first nonzero coefficient has magnitude one and keeps the
// tightest right-hand side per direction.
std::vector<Row> prune(std::vector<Row> rows) {
  std::map<std::vector<Rational>, Row> best;
  std::vector<Row> out;
  for (auto& r : rows) {
    if (zero_lhs(r)) {
      if (r.b < 0) return {r};
      continue;
    }
    Rational lead;
    for (const auto& v : r.a)
      if (v != 0) {
        lead = abs(v);
        break;
      }
    for (auto& v : r.a) v /= lead;
    r.b /= lead;
    for (auto& m : r.mult) m /= lead;
    auto it = best.find(r.a);
    if (it == best.end())
      best.emplace(r.a, r);
    else if (r.b < it->second.b)
      it->second = r;
  }
  for (auto& [k, r] : best) out.push_back(std::move(r));
  return out;
}

Row combine(const Row& pos, const Row& neg, std::size_t var) {
  // pos.a[var] > 0, neg.a[var] < 0
  Rational lp = pos.a[var], ln = -neg.a[var];
  Row r;
  r.a.resize(pos.a.size());
  for (std::size_t i = 0; i < pos.a.size(); ++i) r.a[i] = ln * pos.a[i] + lp * neg.a[i];
  r.a[var] = 0;
  r.b = ln * pos.b + lp * neg.b;
  r.mult.resize(pos.mult.size());
  for (std::size_t i = 0; i < pos.mult.size(); ++i) r.mult[i] = ln * pos.mult[i] + lp * neg.mult[i];
  return r;
}

}  // namespace

FmResult fm_solve(const std::vector<LinearIneq>& input, std::size_t vars) {
  const std::size_t m = input.size();
  std::vector<Row> rows;
  for (std::size_t i = 0; i < m; ++i) {
    Row r{input[i].a, input[i].b, std::vector<Rational>(m)};
    r.a.resize(vars);
    r.mult[i] = 1;
    rows.push_back(std::move(r));
  }
  FmResult out;
  // stages[v] holds the system over variables 0..v-1
  std::vector<std::vector<Row>> stages(vars + 1);
  stages[vars] = prune(rows);
  for (std::size_t v = vars; v-- > 0;) {
    const auto& cur = stages[v + 1];
    std::vector<Row> next, pos, neg;
    for (const auto& r : cur) {
      if (r.a[v] > 0)
        pos.push_back(r);
      else if (r.a[v] < 0)
        neg.push_back(r);
      else
        next.push_back(r);
    }
    for (const auto& p : pos)
      for (const auto& n : neg) next.push_back(combine(p, n, v));
    stages[v] = prune(std::move(next));
  }
  for (const auto& r : stages[0])
    if (r.b < 0) {
      out.feasible = false;
      out.farkas = r.mult;
      out.contradiction_rhs = r.b;
      return out;
    }
  out.feasible = true;
  out.point.assign(vars, Rational(0));
  for (std::size_t v = 0; v < vars; ++v) {
    std::optional<Rational> lo, hi;
    for (const auto& r : stages[v + 1]) {
      if (r.a[v] == 0) continue;
      Rational rest = r.b;
      for (std::size_t j = 0; j < v; ++j) rest -= r.a[j] * out.point[j];
      Rational bound = rest / r.a[v];
      if (r.a[v] > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else {
        if (!lo || bound > *lo) lo = bound;
      }
    }
    if (lo && hi)
      out.point[v] = (*lo + *hi) / 2;
    else if (lo)
      out.point[v] = *lo;
    else if (hi)
      out.point[v] = *hi;
  }
  return out;
}

}  // namespace gconv
