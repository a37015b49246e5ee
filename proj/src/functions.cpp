#include "gconv/functions.hpp"

#include <algorithm>
#include <map>

#include "gconv/error.hpp"
#include "gconv/finite_action.hpp"

namespace gconv {

const Rational& ExtValue::value() const {
  if (!finite_) throw Error(ErrorKind::MixedInfinity, "value of -inf requested");
  return value_;
}

ExtValue ExtValue::scaled(const Rational& t) const {
  if (sgn(t) < 0) throw Error(ErrorKind::InvalidArgument, "negative scaling of an extended value");
  if (!finite_) return sgn(t) == 0 ? ExtValue(0) : *this;
  return ExtValue(Rational(t * value_));
}

std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b) {
  if (!a.finite_ || !b.finite_) return a.finite_ <=> b.finite_;
  int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

ExtValue operator+(const ExtValue& a, const ExtValue& b) {
  if (!a.finite_ || !b.finite_) return ExtValue::neg_inf();
  return ExtValue(Rational(a.value_ + b.value_));
}

std::string to_string(const ExtValue& v) { return v.is_neg_inf() ? "-inf" : to_string(v.value()); }

ExtValue parse_ext(const std::string& text) {
  if (text == "-inf" || text == "-Infinity") return ExtValue::neg_inf();
  return ExtValue(parse_rational(text));
}

FnRepr FnRepr::table(GroundSet domain, std::vector<ExtValue> values) {
  if (!domain.is_finite()) throw Error(ErrorKind::InvalidArgument, "tables need an explicit finite domain");
  if (domain.size() != values.size())
    throw Error(ErrorKind::IllFormed, "table has " + std::to_string(values.size()) + " values for " +
                                          std::to_string(domain.size()) + " domain points");
  FnRepr f;
  f.kind_ = Kind::Table;
  f.domain_ = std::move(domain);
  f.values_ = std::move(values);
  return f;
}

FnRepr FnRepr::table(GroupRef g, const std::vector<std::pair<Element, ExtValue>>& entries) {
  std::map<Element, ExtValue> m;
  for (const auto& [x, v] : entries) {
    Element r = reduce(*g, x.coords);
    auto [it, inserted] = m.emplace(r, v);
    if (!inserted && !(it->second == v))
      throw Error(ErrorKind::IllFormed, "conflicting table values at " + to_string(r));
  }
  std::vector<Element> dom;
  std::vector<ExtValue> vals;
  for (const auto& [x, v] : m) {
    dom.push_back(x);
    vals.push_back(v);
  }
  return table(GroundSet::finite(std::move(g), std::move(dom)), std::move(vals));
}

FnRepr FnRepr::quadratic(GroundSet domain, QuadraticForm form) {
  const std::size_t n = domain.group().dim();
  if (form.q.rows() != n || form.q.cols() != n || form.b.size() != n)
    throw Error(ErrorKind::IllFormed, "quadratic form dimensions do not match the group");
  if (!(transpose(form.q) == form.q)) throw Error(ErrorKind::IllFormed, "quadratic form matrix is not symmetric");
  if (domain.group().is_finite()) throw Error(ErrorKind::Unsupported, "quadratic forms need a torsion-free group");
  FnRepr f;
  f.kind_ = Kind::Quadratic;
  f.domain_ = std::move(domain);
  f.form_ = std::move(form);
  return f;
}

ExtValue FnRepr::operator()(const Element& x) const {
  if (kind_ == Kind::Table) {
    auto i = domain_.index_of(x);
    if (!i) throw Error(ErrorKind::InvalidArgument, to_string(x) + " is outside the domain");
    return values_[*i];
  }
  if (!domain_.contains(x)) throw Error(ErrorKind::InvalidArgument, to_string(x) + " is outside the domain");
  std::vector<Rational> qx = form_.q * std::span<const Rational>(x.coords);
  Rational v = form_.c;
  for (std::size_t i = 0; i < x.coords.size(); ++i) v += x.coords[i] * (qx[i] + form_.b[i]);
  return ExtValue(v);
}

FnRepr FnRepr::tabulate() const {
  if (kind_ == Kind::Table) return *this;
  if (!domain_.is_finite()) throw Error(ErrorKind::Unsupported, "cannot tabulate over a box");
  std::vector<ExtValue> v;
  for (const auto& x : domain_.elements()) v.push_back((*this)(x));
  return table(domain_, std::move(v));
}

bool operator==(const FnRepr& a, const FnRepr& b) {
  if (a.kind_ != b.kind_ || !(a.domain_ == b.domain_)) return false;
  if (a.kind_ == FnRepr::Kind::Table) return a.values_ == b.values_;
  return a.form_.q == b.form_.q && a.form_.b == b.form_.b && a.form_.c == b.form_.c;
}

ConvexPair make_pair(Endo t, Rational s) {
  s.canonicalize();
  if (s < 0 || s > 1) throw Error(ErrorKind::InvalidArgument, "pair scalar " + to_string(s) + " is outside [0, 1]");
  return {std::move(t), std::move(s)};
}

std::string to_string(const ConvexPair& p) { return "(" + to_string(p.t) + ", " + to_string(p.s) + ")"; }

std::string to_string(const Interval& i) {
  if (i.empty) return "empty";
  return "[" + to_string(i.lower) + ", " + to_string(i.upper) + "]";
}

const char* to_string(InequalityKind k) {
  switch (k) {
    case InequalityKind::Quasiconvex: return "quasiconvex";
    case InequalityKind::Wright: return "wright";
    case InequalityKind::TtConvex: return "ttconvex";
    case InequalityKind::WrightAffine: return "wright_affine";
    case InequalityKind::TtAffine: return "tt_affine";
  }
  return "?";
}

InequalityKind parse_inequality_kind(const std::string& s) {
  for (auto k : {InequalityKind::Quasiconvex, InequalityKind::Wright, InequalityKind::TtConvex,
                 InequalityKind::WrightAffine, InequalityKind::TtAffine})
    if (s == to_string(k)) return k;
  throw Error(ErrorKind::InvalidArgument, "unknown inequality kind '" + s + "'");
}

namespace {

struct Sides {
  ExtValue lhs, rhs;
  bool ok;
};

// fz2 is f((I - T)(x) + T(y)), used by the Wright kinds only.
Sides judge(InequalityKind kind, const ExtValue& fz, const ExtValue& fz2, const ExtValue& fx, const ExtValue& fy,
            const Rational& t) {
  Sides s;
  switch (kind) {
    case InequalityKind::Quasiconvex:
      s.lhs = fz;
      s.rhs = max(fx, fy);
      break;
    case InequalityKind::Wright:
    case InequalityKind::WrightAffine:
      s.lhs = fz + fz2;
      s.rhs = fx + fy;
      break;
    case InequalityKind::TtConvex:
    case InequalityKind::TtAffine:
      s.lhs = fz;
      s.rhs = fx.scaled(t) + fy.scaled(1 - t);
      break;
  }
  bool equality = kind == InequalityKind::WrightAffine || kind == InequalityKind::TtAffine;
  s.ok = equality ? s.lhs == s.rhs : s.lhs <= s.rhs;
  return s;
}

bool uses_partner(InequalityKind kind) {
  return kind == InequalityKind::Wright || kind == InequalityKind::WrightAffine;
}

void fail(Report& r, const Element& x, const Element& y, const Element& z, const Sides& s) {
  r.verdict = Verdict::Fail;
  r.add_witness("x", to_string(x));
  r.add_witness("y", to_string(y));
  r.add_witness("z", to_string(z));
  r.add_witness("lhs", to_string(s.lhs));
  r.add_witness("rhs", to_string(s.rhs));
}

Report domain_precondition(const GroundSet& d, const Endo& t) {
  Report c = is_T_convex(d, t);
  Report r;
  if (!c.passed()) {
    r.verdict = Verdict::PreconditionFailed;
    r.witness = c.witness;
    r.detail = "domain is not T-convex";
  }
  return r;
}

void require_group(const GroupSpec& a, const GroupSpec& b) {
  if (!(a == b)) throw Error(ErrorKind::GroupMismatch, a.describe() + " vs " + b.describe());
}

}  // namespace

Report check_on_pairs(InequalityKind kind, const std::vector<ExtValue>& values, const PairMap& pm, const Rational& t) {
  Report r;
  const std::size_t n = pm.n;
  r.checked = n * n;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::int32_t z = pm.at(x, y);
      if (z < 0) {
        r.verdict = Verdict::PreconditionFailed;
        r.detail = "domain is not T-convex";
        return r;
      }
      const ExtValue& fz2 = uses_partner(kind) ? values[static_cast<std::size_t>(pm.at(y, x))] : values[0];
      Sides s = judge(kind, values[static_cast<std::size_t>(z)], fz2, values[x], values[y], t);
      if (!s.ok) {
        r.verdict = Verdict::Fail;
        r.add_witness("x", std::to_string(x));
        r.add_witness("y", std::to_string(y));
        r.add_witness("z", std::to_string(z));
        r.add_witness("lhs", to_string(s.lhs));
        r.add_witness("rhs", to_string(s.rhs));
        return r;
      }
    }
  return r;
}

Report check_inequality(InequalityKind kind, const FnRepr& f, const ConvexPair& pair, std::size_t probes,
                        std::uint64_t seed) {
  require_group(f.group(), pair.t.group());
  const GroundSet& d = f.domain();
  if (d.is_finite()) {
    FnRepr tab = f.tabulate();
    Report pre = domain_precondition(d, pair.t);
    if (!pre.passed()) return pre;
    PairMap pm = pair_map(d, pair.t);
    Report r = check_on_pairs(kind, tab.values(), pm, pair.s);
    if (r.verdict == Verdict::Fail) {
      // translate positions into elements
      auto at = [&](const char* key) { return d.elements()[std::stoul(*r.find_witness(key))]; };
      Element x = at("x"), y = at("y"), z = at("z");
      Sides s{parse_ext(*r.find_witness("lhs")), parse_ext(*r.find_witness("rhs")), false};
      Report out;
      out.checked = r.checked;
      fail(out, x, y, z, s);
      out.detail = std::string(to_string(kind)) + " inequality violated";
      return out;
    }
    return r;
  }
  Report r;
  r.coverage = Coverage::Sampled;
  if (d.empty()) return r;
  Rng rng(seed);
  const Endo c = complement(pair.t);
  const GroupSpec& g = d.group();
  for (std::size_t k = 0; k < probes; ++k) {
    Element x = sample_point(d, rng), y = sample_point(d, rng);
    Element z = add(g, pair.t.apply(x), c.apply(y));
    Element z2 = add(g, c.apply(x), pair.t.apply(y));
    if (!d.contains(z) || (uses_partner(kind) && !d.contains(z2))) {
      r.verdict = Verdict::PreconditionFailed;
      r.add_witness("x", to_string(x));
      r.add_witness("y", to_string(y));
      r.add_witness("z", to_string(d.contains(z) ? z2 : z));
      r.detail = "domain is not T-convex";
      return r;
    }
    ++r.checked;
    Sides s = judge(kind, f(z), uses_partner(kind) ? f(z2) : ExtValue(0), f(x), f(y), pair.s);
    if (!s.ok) {
      fail(r, x, y, z, s);
      r.detail = std::string(to_string(kind)) + " inequality violated";
      return r;
    }
  }
  return r;
}

GroundSet level_set(const FnRepr& f, const ExtValue& c) {
  FnRepr tab = f.tabulate();
  std::vector<Element> out;
  for (std::size_t i = 0; i < tab.values().size(); ++i)
    if (tab.values()[i] <= c) out.push_back(tab.domain().elements()[i]);
  return GroundSet::finite(tab.domain().group_ref(), std::move(out));
}

FnRepr neg_char_fn(const GroundSet& s, const GroundSet& ambient) {
  if (!s.is_finite() || !ambient.is_finite()) throw Error(ErrorKind::InvalidArgument, "explicit finite sets required");
  if (!s.subset_of(ambient)) throw Error(ErrorKind::InvalidArgument, "set is not contained in the ambient domain");
  std::vector<ExtValue> v;
  for (const auto& x : ambient.elements()) v.emplace_back(s.contains(x) ? -1L : 0L);
  return FnRepr::table(ambient, std::move(v));
}

namespace {

template <class Combine>
FnRepr convolve(const FnRepr& f0, const FnRepr& g0, Combine combine) {
  FnRepr f = f0.tabulate(), g = g0.tabulate();
  require_group(f.group(), g.group());
  std::map<Element, ExtValue> best;
  const GroupSpec& grp = f.group();
  for (std::size_t i = 0; i < f.values().size(); ++i)
    for (std::size_t j = 0; j < g.values().size(); ++j) {
      Element s = add(grp, f.domain().elements()[i], g.domain().elements()[j]);
      ExtValue v = combine(f.values()[i], g.values()[j]);
      auto [it, inserted] = best.emplace(s, v);
      if (!inserted && v < it->second) it->second = v;
    }
  std::vector<std::pair<Element, ExtValue>> entries(best.begin(), best.end());
  return FnRepr::table(f.domain().group_ref(), entries);
}

}  // namespace

FnRepr diamond_conv(const FnRepr& f, const FnRepr& g) {
  return convolve(f, g, [](const ExtValue& a, const ExtValue& b) { return max(a, b); });
}

FnRepr inf_conv(const FnRepr& f, const FnRepr& g) {
  return convolve(f, g, [](const ExtValue& a, const ExtValue& b) { return a + b; });
}

FnRepr transport(const FnRepr& f0, const Endo& a, Transport direction) {
  FnRepr f = f0.tabulate();
  require_group(f.group(), a.group());
  const GroupSpec& g = f.group();
  std::vector<std::pair<Element, ExtValue>> entries;
  if (direction == Transport::Pushforward) {
    std::map<Element, ExtValue> best;
    for (std::size_t i = 0; i < f.values().size(); ++i) {
      Element y = a.apply(f.domain().elements()[i]);
      auto [it, inserted] = best.emplace(y, f.values()[i]);
      if (!inserted && f.values()[i] < it->second) it->second = f.values()[i];
    }
    entries.assign(best.begin(), best.end());
  } else if (g.is_finite()) {
    FiniteAction action(a);
    for (std::size_t i = 0; i < action.size(); ++i) {
      auto pos = f.domain().index_of(action.carrier().element(action.image(i)));
      if (pos) entries.emplace_back(action.carrier().element(i), f.values()[*pos]);
    }
  } else {
    auto inv = inverse(a.matrix());
    if (!inv) throw Error(ErrorKind::Unsupported, "pullback along a singular map has infinite fibres");
    const Integer base = g.family == Family::NAdic ? Integer(g.base) : Integer(1);
    for (std::size_t i = 0; i < f.values().size(); ++i) {
      std::vector<Rational> x = *inv * std::span<const Rational>(f.domain().elements()[i].coords);
      bool member = std::all_of(x.begin(), x.end(), [&](const Rational& v) {
        return base == 1 ? is_integer(v) : denominator_is_base_power(v, base);
      });
      if (member) entries.emplace_back(reduce(g, x), f.values()[i]);
    }
  }
  if (entries.empty()) throw Error(ErrorKind::InvalidArgument, "transported function has an empty domain");
  return FnRepr::table(f.domain().group_ref(), entries);
}

FnRepr qconv_envelope(const FnRepr& f0, const EndoSet& ts) {
  FnRepr f = f0.tabulate();
  std::vector<PairMap> maps;
  for (const Endo& t : ts.members()) {
    require_group(f.group(), t.group());
    maps.push_back(pair_map(f.domain(), t));
    if (!maps.back().closed()) throw Error(ErrorKind::Precondition, "domain is not convex for " + to_string(t));
  }
  std::vector<ExtValue> g = f.values();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const PairMap& pm : maps)
      for (std::size_t x = 0; x < pm.n; ++x)
        for (std::size_t y = 0; y < pm.n; ++y) {
          auto z = static_cast<std::size_t>(pm.at(x, y));
          const ExtValue& bound = max(g[x], g[y]);
          if (bound < g[z]) {
            g[z] = bound;
            changed = true;
          }
        }
  }
  return FnRepr::table(f.domain(), std::move(g));
}

IntervalResult convexity_interval(const FnRepr& f, const Endo& t, IntervalMode mode, std::size_t probes,
                                  std::uint64_t seed) {
  require_group(f.group(), t.group());
  IntervalResult out;
  const GroundSet& d = f.domain();
  std::vector<std::pair<Element, Element>> pairs;
  if (d.is_finite()) {
    Report pre = domain_precondition(d, t);
    if (!pre.passed())
      throw Error(ErrorKind::Precondition, "domain is not T-convex: x=" + *pre.find_witness("x") +
                                               " y=" + *pre.find_witness("y"));
    for (const auto& x : d.elements())
      for (const auto& y : d.elements()) pairs.emplace_back(x, y);
  } else {
    out.coverage = Coverage::Sampled;
    if (d.empty()) return out;
    Rng rng(seed);
    for (std::size_t k = 0; k < probes; ++k) {
      Element x = sample_point(d, rng);
      pairs.emplace_back(x, sample_point(d, rng));
    }
  }
  FnRepr tab = d.is_finite() ? f.tabulate() : f;
  if (tab.is_table()) {
    std::size_t inf = static_cast<std::size_t>(
        std::count_if(tab.values().begin(), tab.values().end(), [](const ExtValue& v) { return v.is_neg_inf(); }));
    if (inf == tab.values().size()) {
      out.checked = pairs.size();
      return out;
    }
    if (inf > 0) throw Error(ErrorKind::MixedInfinity, "function mixes -inf and finite values");
  }
  const Endo c = complement(t);
  Interval& iv = out.interval;
  for (const auto& [x, y] : pairs) {
    Element z = add(d.group(), t.apply(x), c.apply(y));
    if (!d.contains(z)) throw Error(ErrorKind::Precondition, "sampled pair leaves the domain at " + to_string(z));
    ++out.checked;
    const Rational fx = tab(x).value(), fy = tab(y).value(), fz = tab(z).value();
    const Rational a = fx - fy, b = fz - fy;
    Interval before = iv;
    if (sgn(a) == 0) {
      if (mode == IntervalMode::Convex ? sgn(b) > 0 : sgn(b) != 0) iv = Interval::none();
    } else {
      Rational r = b / a;
      if (mode == IntervalMode::Affine) {
        if (!iv.contains(r)) iv = Interval::none();
        else iv.lower = iv.upper = r;
      } else if (sgn(a) > 0) {
        if (r > iv.lower) iv.lower = r;
      } else {
        if (r < iv.upper) iv.upper = r;
      }
      if (!iv.empty && iv.lower > iv.upper) iv = Interval::none();
    }
    if (!(before == iv)) out.witness = std::make_pair(x, y);
    if (iv.empty) break;
  }
  return out;
}

Report lift_check(const FnRepr& f0, const ConvexPair& pair, LiftMode mode, const Rational& step, int steps) {
  FnRepr f = f0.tabulate();
  require_group(f.group(), pair.t.group());
  for (const auto& v : f.values())
    if (v.is_neg_inf()) throw Error(ErrorKind::InvalidArgument, "lifts need finite values");
  if (sgn(step) <= 0) throw Error(ErrorKind::InvalidArgument, "value grid step must be positive");
  Report pre = domain_precondition(f.domain(), pair.t);
  if (!pre.passed()) return pre;
  PairMap pm = pair_map(f.domain(), pair.t);
  const auto& v = f.values();
  const auto& e = f.domain().elements();
  const int k_max = mode == LiftMode::Epigraph ? steps : 0;
  Report r;
  for (std::size_t x = 0; x < pm.n && r.passed(); ++x)
    for (std::size_t y = 0; y < pm.n && r.passed(); ++y)
      for (int ku = 0; ku <= k_max && r.passed(); ++ku)
        for (int kv = 0; kv <= k_max && r.passed(); ++kv) {
          Rational u = v[x].value() + ku * step, w = v[y].value() + kv * step;
          Rational image = pair.s * u + (1 - pair.s) * w;
          const Rational& fz = v[static_cast<std::size_t>(pm.at(x, y))].value();
          ++r.checked;
          bool inside = mode == LiftMode::Epigraph ? fz <= image : fz == image;
          if (!inside) {
            r.verdict = Verdict::Fail;
            r.add_witness("x", "(" + to_string(e[x]) + ", " + to_string(u) + ")");
            r.add_witness("y", "(" + to_string(e[y]) + ", " + to_string(w) + ")");
            r.add_witness("image", "(" + to_string(e[static_cast<std::size_t>(pm.at(x, y))]) + ", " +
                                       to_string(image) + ")");
            r.detail = mode == LiftMode::Epigraph ? "lifted image leaves the epigraph" : "lifted image leaves the graph";
          }
        }
  Report direct = check_on_pairs(mode == LiftMode::Epigraph ? InequalityKind::TtConvex : InequalityKind::TtAffine, v,
                                 pm, pair.s);
  bool agree = direct.passed() == r.passed();
  r.audit.push_back({"lifted set verdict agrees with the direct inequality check",
                     agree ? AuditStatus::Verified : AuditStatus::Failed, direct.passed() ? "direct: pass" : "direct: fail"});
  return r;
}

FnRepr pointwise(PointwiseOp op, const std::vector<FnRepr>& fns0, const std::optional<Rational>& scalar) {
  if (fns0.empty()) throw Error(ErrorKind::InvalidArgument, "pointwise operation needs at least one function");
  std::vector<FnRepr> fns;
  for (const auto& f : fns0) fns.push_back(f.tabulate());
  for (const auto& f : fns)
    if (!(f.domain() == fns[0].domain())) throw Error(ErrorKind::InvalidArgument, "functions have different domains");
  const std::size_t n = fns[0].values().size();
  std::vector<ExtValue> out = fns[0].values();
  switch (op) {
    case PointwiseOp::Sup:
    case PointwiseOp::Inf:
      for (std::size_t k = 1; k < fns.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
          out[i] = op == PointwiseOp::Sup ? max(out[i], fns[k].values()[i]) : min(out[i], fns[k].values()[i]);
      break;
    case PointwiseOp::Limit:
      if (fns.size() >= 2 && !(fns[fns.size() - 1] == fns[fns.size() - 2]))
        throw Error(ErrorKind::InvalidArgument, "sequence is not eventually constant");
      out = fns.back().values();
      break;
    case PointwiseOp::Add:
      for (std::size_t k = 1; k < fns.size(); ++k)
        for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + fns[k].values()[i];
      if (scalar)
        for (auto& v : out) v = v + ExtValue(*scalar);
      break;
    case PointwiseOp::Scale:
      if (!scalar || sgn(*scalar) < 0) throw Error(ErrorKind::InvalidArgument, "scale needs a nonnegative scalar");
      for (auto& v : out) v = v.scaled(*scalar);
      break;
    case PointwiseOp::Shift:
      if (!scalar) throw Error(ErrorKind::InvalidArgument, "shift needs a scalar");
      for (auto& v : out) v = v + ExtValue(*scalar);
      break;
  }
  return FnRepr::table(fns[0].domain(), std::move(out));
}

Report check_combination(const FnRepr& f, const std::vector<Rational>& weights, const std::vector<Element>& points) {
  if (weights.size() != points.size() || weights.empty())
    throw Error(ErrorKind::InvalidArgument, "weights and points must match");
  Rational total = 0;
  for (const auto& w : weights) {
    if (sgn(w) < 0) throw Error(ErrorKind::InvalidArgument, "negative weight");
    total += w;
  }
  if (total != 1) throw Error(ErrorKind::InvalidArgument, "weights must sum to one");
  const GroupSpec& g = f.group();
  std::vector<Rational> raw(g.dim());
  ExtValue rhs(0);
  for (std::size_t k = 0; k < points.size(); ++k) {
    for (std::size_t i = 0; i < g.dim(); ++i) raw[i] += weights[k] * points[k].coords[i];
    rhs = rhs + f(points[k]).scaled(weights[k]);
  }
  Report r;
  r.checked = 1;
  Element z;
  try {
    z = reduce(g, raw);
  } catch (const Error&) {
    r.verdict = Verdict::PreconditionFailed;
    r.detail = "combination is not a group element";
    return r;
  }
  if (!f.domain().contains(z)) {
    r.verdict = Verdict::PreconditionFailed;
    r.detail = "combination leaves the domain";
    return r;
  }
  ExtValue lhs = f(z);
  if (!(lhs <= rhs)) {
    r.verdict = Verdict::Fail;
    r.add_witness("z", to_string(z));
    r.add_witness("lhs", to_string(lhs));
    r.add_witness("rhs", to_string(rhs));
  }
  return r;
}

}  // namespace gconv
