#include "gconv/sets.hpp"

#include <algorithm>
#include <numeric>

#include "gconv/error.hpp"

namespace gconv {

namespace {

constexpr std::size_t kLookupCarrierCap = std::size_t{1} << 16;

bool in_ring(const GroupSpec& g, const Rational& v) {
  return g.family == Family::NAdic ? denominator_is_base_power(v, Integer(g.base)) : is_integer(v);
}

void require_same(const GroupSpec& a, const GroupSpec& b) {
  if (!(a == b)) throw Error(ErrorKind::GroupMismatch, a.describe() + " vs " + b.describe());
}

}  // namespace

GroundSet GroundSet::finite(GroupRef g, std::vector<Element> elements) {
  if (!g) throw Error(ErrorKind::InvalidArgument, "missing group");
  GroundSet s;
  s.kind_ = Kind::Finite;
  s.group_ = g;
  for (auto& x : elements) x = reduce(*g, x.coords);
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  s.elements_ = std::move(elements);
  if (g->is_finite() && !g->is_trivial()) {
    auto order = g->order();
    if (*order <= Integer(static_cast<unsigned long>(kLookupCarrierCap))) {
      auto carrier = std::make_shared<FiniteCarrier>(*g);
      auto lookup = std::make_shared<std::vector<std::int32_t>>(carrier->size(), -1);
      for (std::size_t i = 0; i < s.elements_.size(); ++i)
        (*lookup)[carrier->index(s.elements_[i])] = static_cast<std::int32_t>(i);
      s.carrier_ = std::move(carrier);
      s.lookup_ = std::move(lookup);
    }
  }
  return s;
}

GroundSet GroundSet::box(GroupRef g, std::vector<Rational> lower, std::vector<Rational> upper) {
  if (!g) throw Error(ErrorKind::InvalidArgument, "missing group");
  if (g->is_finite()) throw Error(ErrorKind::Unsupported, "boxes need an ordered torsion-free group");
  if (lower.size() != g->dim() || upper.size() != g->dim())
    throw Error(ErrorKind::InvalidArgument, "box corners must have " + std::to_string(g->dim()) + " coordinates");
  for (auto* corner : {&lower, &upper})
    for (auto& v : *corner) {
      v.canonicalize();
      if (!in_ring(*g, v)) throw Error(ErrorKind::InvalidArgument, "box corner " + to_string(v) + " is not a group value");
    }
  GroundSet s;
  s.kind_ = Kind::Box;
  s.group_ = std::move(g);
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

GroundSet GroundSet::whole(GroupRef g) {
  FiniteCarrier carrier(*g);
  std::vector<Element> all;
  all.reserve(carrier.size());
  for (std::size_t i = 0; i < carrier.size(); ++i) all.push_back(carrier.element(i));
  return finite(std::move(g), std::move(all));
}

bool GroundSet::empty() const {
  if (kind_ == Kind::Finite) return elements_.empty();
  for (std::size_t i = 0; i < lower_.size(); ++i)
    if (lower_[i] > upper_[i]) return true;
  return false;
}

std::optional<std::size_t> GroundSet::index_of(const Element& x) const {
  if (kind_ != Kind::Finite || x.coords.size() != group_->dim()) return std::nullopt;
  if (lookup_) {
    for (std::size_t i = 0; i < x.coords.size(); ++i)
      if (!is_integer(x.coords[i]) || sgn(x.coords[i]) < 0 || x.coords[i] >= group_->moduli[i]) return std::nullopt;
    std::int32_t pos = (*lookup_)[carrier_->index(x)];
    if (pos < 0) return std::nullopt;
    return static_cast<std::size_t>(pos);
  }
  auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
  if (it == elements_.end() || !(*it == x)) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

bool GroundSet::contains(const Element& x) const {
  if (kind_ == Kind::Finite) return index_of(x).has_value();
  if (x.coords.size() != group_->dim()) return false;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    const Rational& v = x.coords[i];
    if (!in_ring(*group_, v) || v < lower_[i] || v > upper_[i]) return false;
  }
  return true;
}

bool GroundSet::subset_of(const GroundSet& other) const {
  if (kind_ == Kind::Finite)
    return std::all_of(elements_.begin(), elements_.end(), [&](const Element& x) { return other.contains(x); });
  if (empty()) return true;
  if (lower_ == upper_) return other.contains(Element{lower_});
  if (other.kind_ != Kind::Box) return false;
  if (other.empty()) return false;
  for (std::size_t i = 0; i < lower_.size(); ++i)
    if (lower_[i] < other.lower_[i] || upper_[i] > other.upper_[i]) return false;
  return true;
}

bool operator==(const GroundSet& a, const GroundSet& b) {
  return a.kind_ == b.kind_ && *a.group_ == *b.group_ && a.elements_ == b.elements_ && a.lower_ == b.lower_ &&
         a.upper_ == b.upper_;
}

std::string to_string(const GroundSet& s) {
  if (s.kind() == GroundSet::Kind::Box)
    return "box[" + to_string(Element{s.lower()}) + ", " + to_string(Element{s.upper()}) + "]";
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + to_string(s.elements()[i]);
  return out + "}";
}

Element sample_point(const GroundSet& s, Rng& rng, unsigned max_exponent) {
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "cannot sample the empty set");
  if (s.is_finite()) return s.elements()[static_cast<std::size_t>(rng.uniform(0L, static_cast<long>(s.size()) - 1))];
  const GroupSpec& g = s.group();
  Element x;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const Rational& lo = s.lower()[i];
    const Rational& hi = s.upper()[i];
    if (lo == hi || rng.coin(0.125)) {
      x.coords.push_back(rng.coin() ? lo : hi);
      continue;
    }
    unsigned e = g.family == Family::NAdic ? static_cast<unsigned>(rng.uniform(0L, static_cast<long>(max_exponent))) : 0;
    while (true) {
      Integer den = g.family == Family::NAdic ? pow(Integer(g.base), e) : Integer(1);
      Integer a = ceil(lo * den), b = floor(hi * den);
      if (a <= b) {
        Rational v(rng.uniform(a, b), den);
        v.canonicalize();
        x.coords.push_back(v);
        break;
      }
      ++e;
    }
  }
  return x;
}

GroundSet sumset(const GroundSet& a, const GroundSet& b) {
  if (!a.is_finite() || !b.is_finite()) throw Error(ErrorKind::Unsupported, "sumsets of explicit finite sets only");
  require_same(a.group(), b.group());
  std::vector<Element> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.elements())
    for (const auto& y : b.elements()) out.push_back(add(a.group(), x, y));
  return GroundSet::finite(a.group_ref(), std::move(out));
}

bool PairMap::closed() const {
  return std::none_of(z.begin(), z.end(), [](std::int32_t v) { return v < 0; });
}

PairMap pair_map(const GroundSet& d, const Endo& t) {
  if (!d.is_finite()) throw Error(ErrorKind::Unsupported, "pair tables need an explicit finite set");
  require_same(d.group(), t.group());
  const GroupSpec& g = d.group();
  const Endo c = complement(t);
  const std::size_t n = d.size();
  PairMap pm;
  pm.n = n;
  pm.z.assign(n * n, -1);
  std::vector<Element> tx(n), cy(n);
  for (std::size_t i = 0; i < n; ++i) {
    tx[i] = t.apply(d.elements()[i]);
    cy[i] = c.apply(d.elements()[i]);
  }
  if (g.is_finite() && !g.is_trivial() && *g.order() <= Integer(static_cast<unsigned long>(kLookupCarrierCap))) {
    const std::size_t r = g.dim();
    std::vector<long> a(n * r), b(n * r), s(r);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < r; ++k) {
        a[i * r + k] = tx[i].coords[k].get_num().get_si();
        b[i * r + k] = cy[i].coords[k].get_num().get_si();
      }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        Element z;
        z.coords.resize(r);
        for (std::size_t k = 0; k < r; ++k) {
          long v = a[x * r + k] + b[y * r + k];
          if (v >= g.moduli[k]) v -= g.moduli[k];
          z.coords[k] = v;
        }
        auto pos = d.index_of(z);
        if (pos) pm.z[x * n + y] = static_cast<std::int32_t>(*pos);
      }
    return pm;
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto pos = d.index_of(add(g, tx[x], cy[y]));
      if (pos) pm.z[x * n + y] = static_cast<std::int32_t>(*pos);
    }
  return pm;
}

Report is_T_convex(const GroundSet& d, const Endo& t, std::size_t probes, std::uint64_t seed) {
  require_same(d.group(), t.group());
  Report r;
  if (d.is_finite()) {
    PairMap pm = pair_map(d, t);
    const std::size_t n = pm.n;
    r.checked = n * n;
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x = 0; x < n; ++x)
        if (pm.at(x, y) < 0) {
          const Element& ex = d.elements()[x];
          const Element& ey = d.elements()[y];
          r.verdict = Verdict::Fail;
          r.add_witness("x", to_string(ex));
          r.add_witness("y", to_string(ey));
          r.add_witness("z", to_string(add(d.group(), t.apply(ex), complement(t).apply(ey))));
          r.detail = "T(x) + (I - T)(y) leaves the set";
          return r;
        }
    return r;
  }
  r.coverage = Coverage::Sampled;
  if (d.empty()) return r;
  Rng rng(seed);
  const Endo c = complement(t);
  for (std::size_t k = 0; k < probes; ++k) {
    Element x = sample_point(d, rng), y = sample_point(d, rng);
    Element z = add(d.group(), t.apply(x), c.apply(y));
    ++r.checked;
    if (!d.contains(z)) {
      r.verdict = Verdict::Fail;
      r.add_witness("x", to_string(x));
      r.add_witness("y", to_string(y));
      r.add_witness("z", to_string(z));
      r.detail = "T(x) + (I - T)(y) leaves the box";
      return r;
    }
  }
  return r;
}

Report is_n_convex(const GroundSet& a, long n, std::size_t cap) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  const GroupSpec& g = a.group();
  Report r;
  if (!a.is_finite()) {
    r.coverage = Coverage::Analytic;
    if (a.empty() || a.lower() == a.upper() || divisible_by(g, n).divisible) return r;
    // n*lo + step lies in the n-fold sumset but is not n times a group element
    for (std::size_t i = 0; i < g.dim(); ++i) {
      const Rational& lo = a.lower()[i];
      const Rational& hi = a.upper()[i];
      if (lo == hi) continue;
      Rational step = 1;
      if (g.family == Family::NAdic)
        while (lo + step > hi) step /= g.base;
      Element w{a.lower()};
      for (auto& v : w.coords) v *= n;
      w.coords[i] += step;
      r.verdict = Verdict::Fail;
      r.add_witness("sum", to_string(w));
      r.detail = "element of the " + std::to_string(n) + "-fold sumset outside " + std::to_string(n) + "*A";
      return r;
    }
    return r;
  }
  std::vector<Element> scaled;
  for (const auto& x : a.elements()) scaled.push_back(scalar_mul(g, n, x));
  GroundSet na = GroundSet::finite(a.group_ref(), std::move(scaled));
  GroundSet sum = a;
  for (long k = 1; k < n; ++k) {
    if (sum.size() * a.size() > cap)
      throw Error(ErrorKind::CapExceeded, "sumset exceeds " + std::to_string(cap) + " elements");
    sum = sumset(sum, a);
  }
  r.checked = sum.size() + na.size();
  for (const auto& s : sum.elements())
    if (!na.contains(s)) {
      r.verdict = Verdict::Fail;
      r.add_witness("sum", to_string(s));
      r.detail = "element of the " + std::to_string(n) + "-fold sumset outside " + std::to_string(n) + "*A";
      return r;
    }
  for (const auto& s : na.elements())
    if (!sum.contains(s)) {
      r.verdict = Verdict::Fail;
      r.add_witness("multiple", to_string(s));
      r.detail = "element of " + std::to_string(n) + "*A outside the sumset";
      return r;
    }
  return r;
}

bool EndoSet::insert(const Endo& t, std::string provenance) {
  if (!group_) group_ = t.group_ref();
  if (!(t.group() == *group_)) throw Error(ErrorKind::GroupMismatch, "endomorphism set mixes groups");
  if (!index_.insert(t).second) return false;
  members_.push_back(t);
  provenance_.push_back(std::move(provenance));
  return true;
}

std::vector<Endo> all_endos(const GroupRef& g, std::size_t cap) {
  if (!g->is_finite()) throw Error(ErrorKind::Unsupported, "endomorphism enumeration needs a finite group");
  const std::size_t r = g->dim();
  std::vector<long> step(r * r), count(r * r);
  std::size_t total = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      long gc = std::gcd(g->moduli[i], g->moduli[j]);
      step[i * r + j] = g->moduli[i] / gc;
      count[i * r + j] = gc;
      if (total > cap / static_cast<std::size_t>(gc))
        throw Error(ErrorKind::CapExceeded, g->describe() + " has more than " + std::to_string(cap) + " endomorphisms");
      total *= static_cast<std::size_t>(gc);
    }
  std::vector<Endo> out;
  out.reserve(total);
  std::vector<long> digit(r * r, 0);
  for (std::size_t k = 0; k < total; ++k) {
    Matrix m(r, r);
    for (std::size_t e = 0; e < r * r; ++e) m(e / r, e % r) = digit[e] * step[e];
    out.push_back(validate_endo(g, std::move(m)));
    for (std::size_t e = r * r; e-- > 0;) {
      if (++digit[e] < count[e]) break;
      digit[e] = 0;
    }
  }
  return out;
}

EndoSet enumerate_TD(const GroundSet& d, std::size_t cap) {
  if (!d.is_finite()) throw Error(ErrorKind::Unsupported, "enumeration needs an explicit finite set");
  EndoSet out(d.group_ref());
  for (const Endo& t : all_endos(d.group_ref(), cap))
    if (pair_map(d, t).closed()) out.insert(t, "enumerated");
  return out;
}

EndoSet closure_generate(const EndoSet& seed, std::size_t budget) {
  if (!seed.group_ref()) throw Error(ErrorKind::InvalidArgument, "seed set has no group");
  EndoSet out(seed.group_ref());
  auto add = [&](const Endo& t, std::string how) {
    if (out.contains(t)) return true;
    if (out.size() >= budget) {
      out.truncated = true;
      return false;
    }
    out.insert(t, std::move(how));
    return true;
  };
  add(zero_endo(seed.group_ref()), "zero");
  add(identity_endo(seed.group_ref()), "identity");
  for (const Endo& t : seed.members()) add(t, "seed");
  auto tag = [](const char* op, std::size_t i, std::size_t j) {
    return std::string(op) + "(#" + std::to_string(i) + ",#" + std::to_string(j) + ")";
  };
  for (std::size_t i = 0; i < out.size() && !out.truncated; ++i) {
    const Endo t = out.members()[i];
    if (!add(complement(t), "complement(#" + std::to_string(i) + ")")) break;
    for (std::size_t j = 0; j <= i && !out.truncated; ++j) {
      const Endo s = out.members()[j];
      const Endo ct = complement(t), cs = complement(s);
      if (!add(compose(t, s), tag("compose", i, j))) break;
      if (!add(compose(s, t), tag("compose", j, i))) break;
      if (!add(compose(t, s) + compose(ct, cs), tag("blend", i, j))) break;
      if (!add(compose(s, t) + compose(cs, ct), tag("blend", j, i))) break;
    }
  }
  return out;
}

Report radstrom_check(const GroundSet& a, const GroundSet& b, const GroundSet& c, long n0) {
  require_same(a.group(), b.group());
  require_same(a.group(), c.group());
  if (!a.is_finite()) throw Error(ErrorKind::InvalidArgument, "A must be an explicit finite set");
  const GroupSpec& g = a.group();
  Report r;
  {
    AuditEntry mu{"mu_d(n0) > 1", AuditStatus::Failed, ""};
    try {
      Rational m = mu_d(g, n0);
      mu.note = "mu_d(" + std::to_string(n0) + ") = " + to_string(m);
      if (m > 1) mu.status = AuditStatus::Verified;
    } catch (const Error& e) {
      mu.note = e.what();
    }
    r.audit.push_back(mu);
  }
  r.audit.push_back({"B closed", AuditStatus::Verified, "finite sets and boxes are closed"});
  r.audit.push_back({"C bounded and nonempty", c.is_finite() && !c.empty() ? AuditStatus::Verified : AuditStatus::Failed,
                     c.is_finite() ? "explicit finite set" : "C must be explicit finite"});
  {
    Report nc = is_n_convex(b, n0);
    r.audit.push_back({"B n0-convex", nc.passed() ? AuditStatus::Verified : AuditStatus::Failed,
                       std::string(to_string(nc.coverage)) + (nc.passed() ? "" : ": " + nc.detail)});
  }
  if (!fully_verified(r.audit)) {
    r.verdict = Verdict::PreconditionFailed;
    r.detail = "hypothesis audit failed; conclusion not asserted";
    return r;
  }
  for (const auto& x : a.elements())
    for (const auto& y : c.elements()) {
      Element s = add(g, x, y);
      bool covered = std::any_of(c.elements().begin(), c.elements().end(),
                                 [&](const Element& w) { return b.contains(sub(g, s, w)); });
      ++r.checked;
      if (!covered) {
        r.verdict = Verdict::PreconditionFailed;
        r.add_witness("a+c", to_string(s));
        r.detail = "A + C is not contained in B + C";
        return r;
      }
    }
  for (const auto& x : a.elements())
    if (!b.contains(x)) {
      r.verdict = Verdict::Fail;
      r.add_witness("a", to_string(x));
      r.detail = "cancellation violated: a lies outside B";
      return r;
    }
  return r;
}

const char* to_string(Internality v) {
  switch (v) {
    case Internality::Internal: return "internal";
    case Internality::NotInternal: return "not-internal";
    case Internality::Inconclusive: return "inconclusive";
  }
  return "?";
}

InternalityResult internal_points(const GroundSet& d, const Endo& t, const Element& p, std::size_t budget) {
  InternalityResult out;
  if (!d.contains(p)) throw Error(ErrorKind::InvalidArgument, to_string(p) + " is not in the set");
  if (!d.is_finite()) return out;
  PairMap pm = pair_map(d, t);
  const std::size_t n = pm.n;
  std::vector<bool> in(n, false);
  in[*d.index_of(p)] = true;
  std::size_t count = 1, insertions = 0;
  while (true) {
    ++out.rounds;
    std::vector<bool> next = in;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        std::int32_t z = pm.at(x, y);
        if (z >= 0 && in[static_cast<std::size_t>(z)]) next[x] = next[y] = true;
      }
    std::size_t c = static_cast<std::size_t>(std::count(next.begin(), next.end(), true));
    insertions += c - count;
    if (insertions > budget) return out;
    if (c == count) break;
    in = std::move(next);
    count = c;
  }
  if (count == n) {
    out.status = Internality::Internal;
    return out;
  }
  out.status = Internality::NotInternal;
  for (std::size_t i = 0; i < n; ++i)
    if (in[i]) out.absorbing.push_back(d.elements()[i]);
  return out;
}

}  // namespace gconv
