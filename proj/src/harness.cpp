#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "gconv/error.hpp"
#include "harness_internal.hpp"

namespace gconv {

namespace detail {

Json inequality_instance(InequalityKind kind, const FnRepr& f, const ConvexPair& pair, std::size_t probes,
                         std::uint64_t seed) {
  return {{"check", "inequality"}, {"kind", to_string(kind)}, {"fn", to_json(f)}, {"pair", to_json(pair)},
          {"probes", probes}, {"seed", seed}};
}

void SuiteContext::record(const std::string& law, const Report& r, const std::function<Json()>& instance) {
  ++rep.cases;
  ++rep.checks[law];
  ++rep.verdicts[to_string(r.verdict)];
  if (r.passed()) return;
  Alarm a;
  a.id = rep.suite + "/" + law + "/" + std::to_string(rep.checks[law] - 1);
  a.instance = instance();
  a.report = r;
  rep.alarms.push_back(std::move(a));
}

void SuiteContext::tally(const std::vector<AuditEntry>& audit) {
  for (const auto& e : audit) ++rep.audit[to_string(e.status)];
}

Report case_inequality(InequalityKind kind, const FnRepr& f, const ConvexPair& pair, std::size_t probes,
                       std::uint64_t seed) {
  return check_inequality(kind, f, pair, probes, seed);
}

Report case_level_sets(const FnRepr& f0, const Endo& t) {
  FnRepr f = f0.tabulate();
  Report qc = check_inequality(InequalityKind::Quasiconvex, f, make_pair(t, 0));
  Report r;
  if (qc.verdict == Verdict::PreconditionFailed) {
    r.verdict = Verdict::Inconclusive;
    r.detail = "domain is not T-convex";
    return r;
  }
  std::set<ExtValue> levels(f.values().begin(), f.values().end());
  std::optional<ExtValue> bad;
  for (const auto& c : levels) {
    ++r.checked;
    if (!is_T_convex(level_set(f, c), t).passed()) {
      bad = c;
      break;
    }
  }
  if (qc.passed() != !bad) {
    r.verdict = Verdict::Fail;
    r.add_witness("quasiconvex", qc.passed() ? "yes" : "no");
    r.add_witness("level", bad ? to_string(*bad) : "all convex");
    r.detail = "quasiconvexity disagrees with level-set convexity";
  }
  return r;
}

Report case_char_fn(const GroundSet& s, const GroundSet& d, const Endo& t) {
  Report r;
  r.checked = 1;
  bool convex = is_T_convex(s, t).passed();
  Report qc = check_inequality(InequalityKind::Quasiconvex, neg_char_fn(s, d), make_pair(t, 0));
  if (qc.verdict == Verdict::PreconditionFailed) {
    r.verdict = Verdict::Inconclusive;
    r.detail = "ambient domain is not T-convex";
  } else if (convex != qc.passed()) {
    r.verdict = Verdict::Fail;
    r.add_witness("set convex", convex ? "yes" : "no");
    r.add_witness("characteristic quasiconvex", qc.passed() ? "yes" : "no");
    r.detail = "set convexity disagrees with its negative characteristic function";
  }
  return r;
}

FnRepr brute_envelope(const FnRepr& f0, const EndoSet& ts) {
  FnRepr f = f0.tabulate();
  const GroundSet& d = f.domain();
  const std::size_t n = d.size();
  std::vector<ExtValue> vals(f.values().begin(), f.values().end());
  vals.push_back(ExtValue::neg_inf());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<int> cap(n);
  for (std::size_t i = 0; i < n; ++i)
    cap[i] = int(std::lower_bound(vals.begin(), vals.end(), f.values()[i]) - vals.begin());

  // z[x][y] per map, computed by direct group arithmetic
  std::vector<std::vector<int>> maps;
  for (const Endo& t : ts.members()) {
    const Endo c = complement(t);
    std::vector<int> z(n * n, -1);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        auto pos = d.index_of(add(d.group(), t.apply(d.elements()[x]), c.apply(d.elements()[y])));
        if (!pos) throw Error(ErrorKind::Precondition, "domain is not convex for " + to_string(t));
        z[x * n + y] = int(*pos);
      }
    maps.push_back(std::move(z));
  }
  std::vector<int> g(n, 0), best(n, 0);
  for (;;) {
    bool ok = true;
    for (const auto& z : maps) {
      for (std::size_t x = 0; x < n && ok; ++x)
        for (std::size_t y = 0; y < n && ok; ++y) ok = g[std::size_t(z[x * n + y])] <= std::max(g[x], g[y]);
      if (!ok) break;
    }
    if (ok)
      for (std::size_t i = 0; i < n; ++i) best[i] = std::max(best[i], g[i]);
    std::size_t i = 0;
    while (i < n && g[i] == cap[i]) g[i++] = 0;
    if (i == n) break;
    ++g[i];
  }
  std::vector<ExtValue> out;
  for (int b : best) out.push_back(vals[std::size_t(b)]);
  return FnRepr::table(d, out);
}

Report case_envelope(const FnRepr& f, const EndoSet& ts) {
  Report r;
  r.checked = 1;
  FnRepr env = qconv_envelope(f, ts);
  FnRepr oracle = brute_envelope(f, ts);
  if (!(env == oracle)) {
    r.verdict = Verdict::Fail;
    for (std::size_t i = 0; i < env.values().size(); ++i)
      if (!(env.values()[i] == oracle.values()[i])) {
        r.add_witness("x", to_string(env.domain().elements()[i]));
        r.add_witness("envelope", to_string(env.values()[i]));
        r.add_witness("oracle", to_string(oracle.values()[i]));
        break;
      }
    r.detail = "envelope differs from the largest quasiconvex minorant";
    return r;
  }
  if (!(qconv_envelope(env, ts) == env)) {
    r.verdict = Verdict::Fail;
    r.detail = "envelope is not a fixed point";
  }
  return r;
}

double power_radius(const Matrix& m, int squarings) {
  const std::size_t n = m.rows();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j).get_d();
  auto normalize = [&](std::vector<double>& x) {
    double s = 0;
    for (double v : x) s = std::max(s, std::fabs(v));
    if (s > 0)
      for (double& v : x) v /= s;
    return s;
  };
  double s = normalize(a);
  if (s == 0) return 0;
  double log_scale = std::log(s);  // A^(2^j) = e^log_scale * a
  for (int j = 0; j < squarings; ++j) {
    std::vector<double> b(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) b[i * n + l] += a[i * n + k] * a[k * n + l];
    double nb = normalize(b);
    if (nb == 0) return 0;
    log_scale = 2 * log_scale + std::log(nb);
    a = std::move(b);
  }
  return std::exp(log_scale / std::ldexp(1.0, squarings));
}

Report case_spectral(const Matrix& m) {
  GroupRef g = make_group(GroupSpec::lattice(m.rows()));
  Endo t = validate_endo(g, m);
  Report r;
  r.checked = 1;
  r.coverage = Coverage::Analytic;
  SpectralBound sb = spectral_radius(t, 16);
  const double rho = power_radius(m);
  const bool below = rho < 1 - 1e-6;
  r.add_witness("matrix", to_string(m));
  if (sb.nilpotent.has_value() != below) {
    r.verdict = Verdict::Fail;
    r.add_witness("power radius", std::to_string(rho));
    r.add_witness("nilpotent", sb.nilpotent ? std::to_string(*sb.nilpotent) : "none");
    r.detail = "nilpotency certificate disagrees with the power-iteration radius";
    return r;
  }
  std::optional<NeumannInverse> inv;
  try {
    inv = neumann_inverse(t);
  } catch (const Error& e) {
    if (sb.nilpotent) {
      r.verdict = Verdict::Fail;
      r.detail = std::string("nilpotent but no inverse: ") + e.what();
      return r;
    }
  }
  if (inv) {
    const Endo id = identity_endo(g), c = complement(t);
    if (!(compose(inv->inverse, c) == id) || !(compose(c, inv->inverse) == id)) {
      r.verdict = Verdict::Fail;
      r.add_witness("inverse", to_string(inv->inverse.matrix()));
      r.detail = "inverse does not compose to the identity";
    }
  }
  return r;
}

Report case_coefficients(const std::vector<Rational>& tv, long k) {
  LastResult res = last_coefficients(tv, k);
  Report r = res.coefficients;
  if (!r.passed()) return r;
  const long n = long(tv.size());
  std::vector<Rational> t(std::size_t(n) + 2, Rational(0));
  for (long i = 1; i <= n; ++i) t[std::size_t(i)] = tv[std::size_t(i - 1)];
  const auto& c = res.c;
  auto fail = [&](const std::string& what, long i) {
    r.verdict = Verdict::Fail;
    r.add_witness("i", std::to_string(i));
    r.detail = what;
    return r;
  };
  if (c.size() != std::size_t(n) + 2) return fail("coefficient table has the wrong length", n);
  for (long i = 1; i <= n; ++i) {
    const std::size_t u = std::size_t(i);
    if (sgn(c[u]) <= 0) return fail("coefficient not positive", i);
    Rational rhs = (1 - t[u - 1]) * c[u - 1] + t[u + 1] * c[u + 1];
    if (i != k && c[u] != rhs) return fail("recurrence violated", i);
    if (i == k && c[u] - rhs != 1) return fail("normalization violated", i);
  }
  return r;
}

Report case_twa(const FnRepr& f0, const std::optional<WrightDecomposition>& expected) {
  FnRepr f = f0.tabulate();
  WrightDecomposition w = twa_decompose(f);
  Report r;
  r.checked = f.values().size();
  if (!expected) {
    // non-quadratic input: must be rejected with a residual
    if (w.report.verdict != Verdict::Fail || !w.report.find_witness("residual")) {
      r.verdict = Verdict::Fail;
      r.detail = "non-quadratic input was not rejected with a residual";
    }
    return r;
  }
  if (!w.report.passed()) {
    r = w.report;
    r.detail = "quadratic input rejected: " + r.detail;
    return r;
  }
  if (!(w.b == expected->b) || w.a != expected->a || w.c != expected->c) {
    r.verdict = Verdict::Fail;
    r.add_witness("B", to_string(w.b));
    r.detail = "decomposition differs from the generating coefficients";
    return r;
  }
  for (std::size_t i = 0; i < f.values().size(); ++i)
    if (!(ExtValue(twa_evaluate(w, f.domain().elements()[i])) == f.values()[i])) {
      r.verdict = Verdict::Fail;
      r.add_witness("x", to_string(f.domain().elements()[i]));
      r.detail = "reconstruction differs from the table";
      return r;
    }
  return r;
}

Report case_support(const FnRepr& f0, const std::vector<ConvexPair>& pairs, const Element& p) {
  FnRepr f = f0.tabulate();
  SupportResult s = rode_support(f, pairs, p);
  Report r;
  r.checked = f.values().size();
  if (!s.certificate) {
    r.verdict = Verdict::Fail;
    r.add_witness("p", to_string(p));
    r.add_witness("contradiction", s.contradiction);
    r.detail = "no affine support found";
    return r;
  }
  const auto& cert = *s.certificate;
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    const Element& x = f.domain().elements()[i];
    Rational v = cert.c;
    for (std::size_t j = 0; j < x.coords.size(); ++j) v += cert.a[j] * x.coords[j];
    const bool below = ExtValue(v) <= f.values()[i];
    const bool touch = !(x == p) || ExtValue(v) == f.values()[i];
    if (!below || !touch) {
      r.verdict = Verdict::Fail;
      r.add_witness("x", to_string(x));
      r.add_witness("support", to_string(v));
      r.detail = below ? "support does not touch at p" : "support exceeds f";
      return r;
    }
  }
  return r;
}

Report case_finite_audit(const GroupRef& g, long n0) {
  GroundSet z = GroundSet::finite(g, {zero(*g)});
  Report rc = radstrom_check(z, z, z, n0);
  Report r;
  r.checked = 1;
  const AuditEntry* mu = nullptr;
  for (const auto& e : rc.audit)
    if (e.hypothesis == "mu_d(n0) > 1") mu = &e;
  if (!mu || mu->status != AuditStatus::Failed || rc.verdict != Verdict::PreconditionFailed) {
    r.verdict = Verdict::Fail;
    r.add_witness("group", g->describe());
    r.add_witness("n0", std::to_string(n0));
    r.detail = "finite group passed the mu_d(n0) > 1 audit";
  }
  return r;
}

}  // namespace detail

using namespace detail;

Json to_json(const CampaignReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["cases"] = r.cases;
  j["skipped"] = r.skipped;
  j["verdicts"] = r.verdicts;
  j["audit"] = r.audit;
  j["checks"] = r.checks;
  Json alarms = Json::array();
  for (const auto& a : r.alarms) alarms.push_back({{"id", a.id}, {"case", a.instance}, {"report", to_json(a.report)}});
  j["alarms"] = std::move(alarms);
  if (!r.parts.empty()) {
    Json parts = Json::array();
    for (const auto& p : r.parts) parts.push_back(to_json(p));
    j["parts"] = std::move(parts);
  }
  if (!r.notes.empty()) j["notes"] = r.notes;
  j["elapsed_ms"] = std::llround(r.elapsed_ms);
  return j;
}

namespace {

GroupSpec random_group(Rng& rng, const Caps& caps) {
  const long order = std::max(2L, caps.max_order);
  switch (rng.uniform(0, 2)) {
    case 0: {
      std::vector<long> moduli{rng.uniform(2, order)};
      if (order / moduli[0] >= 2 && rng.coin(0.3)) moduli.push_back(rng.uniform(2, order / moduli[0]));
      return GroupSpec::cyclic(moduli);
    }
    case 1: return GroupSpec::lattice(std::size_t(rng.uniform(1, long(caps.max_rank))));
    default: {
      static const long bases[] = {2, 3, 6};
      return GroupSpec::nadic(bases[rng.uniform(0, 2)], std::size_t(rng.uniform(1, long(caps.max_rank))));
    }
  }
}

Rational small_fraction(Rng& rng, const GroupSpec& g, long bound) {
  Rational v(rng.uniform(-bound, bound));
  if (g.family == Family::NAdic && rng.coin(0.3)) v /= Rational(g.base);
  v.canonicalize();
  return v;
}

Endo random_endo(Rng& rng, const GroupRef& g, const Caps& caps) {
  const std::size_t r = g->dim();
  for (;;) {
    Matrix m(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        m(i, j) = g->is_finite() ? Rational(rng.uniform(0, g->moduli[i] - 1)) : small_fraction(rng, *g, caps.entry_bound);
    try {
      return validate_endo(g, m);
    } catch (const Error&) {
      // rejected by the congruence check; draw again
    }
  }
}

Element random_element(Rng& rng, const GroupSpec& g, long bound) {
  std::vector<Rational> c;
  for (std::size_t i = 0; i < g.dim(); ++i)
    c.push_back(g.is_finite() ? Rational(rng.uniform(0, g.moduli[i] - 1)) : small_fraction(rng, g, bound));
  return reduce(g, c);
}

GroundSet saturate(const GroundSet& s, const Endo& t, std::size_t cap) {
  std::set<Element> cur(s.elements().begin(), s.elements().end());
  const GroupSpec& g = s.group();
  const Endo c = complement(t);
  for (bool grew = true; grew && cur.size() <= cap;) {
    grew = false;
    std::vector<Element> v(cur.begin(), cur.end());
    for (const auto& x : v)
      for (const auto& y : v)
        if (cur.insert(add(g, t.apply(x), c.apply(y))).second) grew = true;
  }
  return GroundSet::finite(s.group_ref(), {cur.begin(), cur.end()});
}

GroundSet random_set(Rng& rng, const GroupRef& g, const Caps& caps, bool closed) {
  if (g->family == Family::NAdic) {
    std::vector<Rational> lo, hi;
    for (std::size_t i = 0; i < g->rank; ++i) {
      Rational a = small_fraction(rng, *g, 3), b = small_fraction(rng, *g, 3);
      lo.push_back(std::min(a, b));
      hi.push_back(std::max(a, b));
    }
    return GroundSet::box(g, lo, hi);
  }
  std::vector<Element> el;
  const long count = rng.uniform(1, 5);
  for (long i = 0; i < count; ++i) el.push_back(random_element(rng, *g, 3));
  GroundSet s = GroundSet::finite(g, el);
  if (closed && g->is_finite()) s = saturate(s, random_endo(rng, g, caps), 64);
  return s;
}

ExtValue random_value(Rng& rng, bool allow_inf) {
  long v = rng.uniform(allow_inf ? -1 : 0, 2);
  return v < 0 ? ExtValue::neg_inf() : ExtValue(v);
}

GroupRef random_finite_group(Rng& rng, const Caps& caps) {
  return make_group(GroupSpec::cyclic({rng.uniform(2, std::max(2L, std::min(caps.max_order, 12L)))}));
}

}  // namespace

InstanceKind parse_instance_kind(const std::string& s) {
  if (s == "group") return InstanceKind::Group;
  if (s == "endo") return InstanceKind::Endo;
  if (s == "set") return InstanceKind::Set;
  if (s == "fn") return InstanceKind::Fn;
  if (s == "pair") return InstanceKind::Pair;
  throw Error(ErrorKind::InvalidArgument, "unknown instance kind '" + s + "'");
}

Json generate_instance(InstanceKind kind, std::uint64_t seed, const Caps& caps, const InstanceOptions& opt) {
  if (caps.max_order < 2 || caps.max_rank < 1 || caps.entry_bound < 1)
    throw Error(ErrorKind::InvalidArgument, "caps must be positive");
  Rng rng(seed);
  switch (kind) {
    case InstanceKind::Group: return to_json(random_group(rng, caps));
    case InstanceKind::Endo: return to_json(random_endo(rng, make_group(random_group(rng, caps)), caps));
    case InstanceKind::Set: {
      GroupRef g = make_group(random_group(rng, caps));
      return to_json(random_set(rng, g, caps, opt.saturate));
    }
    case InstanceKind::Fn: {
      GroupRef g = random_finite_group(rng, caps);
      GroundSet d = random_set(rng, g, caps, true);
      std::vector<ExtValue> v;
      for (std::size_t i = 0; i < d.size(); ++i) v.push_back(random_value(rng, true));
      if (!opt.chain) return to_json(FnRepr::table(d, v));
      // each member raises some entries of the previous one
      Json members = Json::array();
      for (std::size_t m = 0; m < std::max<std::size_t>(1, opt.family); ++m) {
        members.push_back(to_json(FnRepr::table(d, v)));
        for (auto& x : v)
          if (rng.coin()) x = x.is_neg_inf() ? ExtValue(0L) : x + ExtValue(rng.uniform(1, 2));
      }
      return {{"kind", "chain"}, {"members", members}};
    }
    case InstanceKind::Pair: {
      GroupRef g = make_group(random_group(rng, caps));
      const long den = rng.uniform(1, 12);
      return to_json(make_pair(random_endo(rng, g, caps), make_rational(rng.uniform(0, den), den)));
    }
  }
  return nullptr;
}

namespace {

using SuiteFn = void (*)(SuiteContext&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"empty", nullptr},
      {"prop-ls", suite_prop_ls},
      {"envelope", suite_envelope},
      {"closure-p1", suite_closure_p1},
      {"closure-p1f", suite_closure_p1f},
      {"closure-p1w", suite_closure_p1w},
      {"closure-p1c", suite_closure_p1c},
      {"closure-p1a", suite_closure_p1a},
      {"closure-cor1", suite_cor1},
      {"closure-tq", suite_tq},
      {"closure-tw", suite_tw},
      {"closure-tc", suite_tc},
      {"closure-ta", suite_ta},
      {"spectral", suite_spectral},
      {"wright-ratio", suite_wright_ratio},
      {"last-coefficients", suite_last},
      {"kuhn", suite_kuhn},
      {"twa", suite_twa},
      {"rode", suite_rode},
      {"radstrom", suite_radstrom},
      {"canary", suite_canary},
      {"all", nullptr},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, fn] : registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

bool known_suite(const std::string& id) {
  return std::find(suite_ids().begin(), suite_ids().end(), id) != suite_ids().end();
}

CampaignReport run_suite(const SuiteConfig& config) {
  if (!known_suite(config.suite)) throw Error(ErrorKind::InvalidArgument, "unknown suite '" + config.suite + "'");
  const auto start = std::chrono::steady_clock::now();
  CampaignReport rep;
  rep.suite = config.suite;
  rep.seed = config.seed;
  if (config.suite == "all") {
    for (const auto& [id, fn] : registry()) {
      if (!fn || id == "canary") continue;
      SuiteConfig sub = config;
      sub.suite = id;
      CampaignReport part = run_suite(sub);
      rep.cases += part.cases;
      rep.skipped += part.skipped;
      for (const auto& [k, v] : part.verdicts) rep.verdicts[k] += v;
      for (const auto& [k, v] : part.audit) rep.audit[k] += v;
      rep.alarms.insert(rep.alarms.end(), part.alarms.begin(), part.alarms.end());
      rep.parts.push_back(std::move(part));
    }
  } else {
    for (const auto& [id, fn] : registry())
      if (id == config.suite && fn) {
        SuiteContext cx{config, rep, Rng(config.seed)};
        fn(cx);
      }
  }
  if (config.timing)
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace {

std::vector<ConvexPair> pairs_from_json(const Json& j, const GroupRef& g) {
  std::vector<ConvexPair> out;
  for (const auto& p : j) out.push_back(pair_from_json(p, g));
  return out;
}

}  // namespace

Report replay_case(const Json& j) {
  const std::string check = j.at("check").get<std::string>();
  if (check == "inequality") {
    FnRepr f = fn_from_json(j.at("fn"));
    return case_inequality(parse_inequality_kind(j.at("kind").get<std::string>()), f,
                           pair_from_json(j.at("pair"), f.domain().group_ref()), j.value("probes", std::size_t{1000}),
                           j.value("seed", std::uint64_t{0}));
  }
  if (check == "t-convex") {
    GroundSet d = ground_set_from_json(j.at("set"));
    return is_T_convex(d, endo_from_json(j.at("endo"), d.group_ref()), j.value("probes", std::size_t{1000}),
                       j.value("seed", std::uint64_t{0}));
  }
  if (check == "level-sets") {
    FnRepr f = fn_from_json(j.at("fn"));
    return case_level_sets(f, endo_from_json(j.at("endo"), f.domain().group_ref()));
  }
  if (check == "char-fn") {
    GroundSet d = ground_set_from_json(j.at("domain"));
    return case_char_fn(ground_set_from_json(j.at("set"), d.group_ref()), d, endo_from_json(j.at("endo"), d.group_ref()));
  }
  if (check == "envelope") {
    FnRepr f = fn_from_json(j.at("fn"));
    return case_envelope(f, endo_set_from_json(j.at("endos"), f.domain().group_ref()));
  }
  if (check == "spectral") return case_spectral(matrix_from_json(j.at("matrix")));
  if (check == "coefficients") {
    std::vector<Rational> t;
    for (const auto& x : j.at("t")) t.push_back(rational_from_json(x));
    return case_coefficients(t, j.at("k").get<long>());
  }
  if (check == "u-grid") {
    FnRepr f = fn_from_json(j.at("fn"));
    const GroupRef& g = f.domain().group_ref();
    return u_grid_verify(f, endo_from_json(j.at("endo"), g), j.at("n").get<long>(), j.at("k").get<long>(),
                         element_from_json(*g, j.at("x")), element_from_json(*g, j.at("y")));
  }
  if (check == "twa") {
    FnRepr f = fn_from_json(j.at("fn"));
    std::optional<WrightDecomposition> expected;
    if (j.contains("expected")) {
      const Json& e = j.at("expected");
      WrightDecomposition w;
      w.b = matrix_from_json(e.at("B"));
      for (const auto& x : e.at("A")) w.a.push_back(rational_from_json(x));
      w.c = rational_from_json(e.at("c"));
      expected = w;
    }
    return case_twa(f, expected);
  }
  if (check == "support") {
    FnRepr f = fn_from_json(j.at("fn"));
    const GroupRef& g = f.domain().group_ref();
    return case_support(f, pairs_from_json(j.at("pairs"), g), element_from_json(*g, j.at("p")));
  }
  if (check == "radstrom") {
    GroundSet a = ground_set_from_json(j.at("a"));
    return radstrom_check(a, ground_set_from_json(j.at("b"), a.group_ref()), ground_set_from_json(j.at("c"), a.group_ref()),
                          j.at("n0").get<long>());
  }
  if (check == "finite-audit")
    return case_finite_audit(make_group(group_from_json(j.at("group"))), j.at("n0").get<long>());
  if (check == "derived") {
    FnRepr f = fn_from_json(j.at("fn"));
    DerivedPair d = derived_from_json(j.at("derived"), f.domain().group_ref());
    return case_inequality(parse_inequality_kind(j.at("kind").get<std::string>()), f, d.pair,
                           j.value("probes", std::size_t{1000}), j.value("seed", std::uint64_t{0}));
  }
  throw Error(ErrorKind::IllFormed, "unknown case check '" + check + "'");
}

}  // namespace gconv
