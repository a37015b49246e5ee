#include "gconv/serialize.hpp"

#include "gconv/error.hpp"

namespace gconv {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::IllFormed, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  bad("expected a string or integer, got " + j.dump());
}

template <class E, std::size_t N>
E parse_enum(const std::string& s, const E (&all)[N], const char* what) {
  for (E e : all)
    if (s == to_string(e)) return e;
  bad(std::string("unknown ") + what + " '" + s + "'");
}

std::vector<Rational> rational_list(const Json& j) {
  if (!j.is_array()) bad("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

Json rational_list_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_json(q));
  return a;
}

GroupRef group_or(const Json& j, const GroupRef& fallback) {
  if (j.is_object() && j.contains("group")) return make_group(group_from_json(j.at("group")));
  if (!fallback) bad("missing field 'group'");
  return fallback;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  try {
    return parse_rational(text(j));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    bad(std::string("bad rational: ") + e.what());
  }
}

Json to_json(const GroupSpec& g) {
  Json j;
  j["family"] = to_string(g.family);
  if (g.family == Family::Cyclic) {
    j["moduli"] = g.moduli;
  } else {
    if (g.family == Family::NAdic) j["base"] = g.base;
    j["rank"] = g.rank;
  }
  j["metric"] = {{"kind", to_string(g.metric.kind)}, {"weights", rational_list_json(g.metric.weights)}};
  return j;
}

GroupSpec group_from_json(const Json& j) {
  static const Family families[] = {Family::Cyclic, Family::Lattice, Family::NAdic};
  static const NormKind kinds[] = {NormKind::Lee, NormKind::Abs, NormKind::Discrete};
  Family fam = parse_enum(text(field(j, "family")), families, "family");
  NormKind kind = fam == Family::Cyclic ? NormKind::Lee : NormKind::Abs;
  std::vector<Rational> weights;
  if (j.contains("metric")) {
    const Json& m = j.at("metric");
    if (m.contains("kind")) kind = parse_enum(text(m.at("kind")), kinds, "metric kind");
    if (m.contains("weights")) weights = rational_list(m.at("weights"));
  }
  try {
    switch (fam) {
      case Family::Cyclic: return GroupSpec::cyclic(field(j, "moduli").get<std::vector<long>>(), kind, weights);
      case Family::Lattice: return GroupSpec::lattice(field(j, "rank").get<std::size_t>(), kind, weights);
      case Family::NAdic:
        return GroupSpec::nadic(field(j, "base").get<long>(), field(j, "rank").get<std::size_t>(), kind, weights);
    }
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
  bad("unreachable");
}

Json to_json(const Element& x) { return rational_list_json(x.coords); }

Element element_from_json(const GroupSpec& g, const Json& j) {
  std::vector<Rational> c = rational_list(j);
  if (c.size() != g.dim()) bad("element " + j.dump() + " has the wrong dimension for " + g.describe());
  return reduce(g, c);
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  const std::size_t r = j.size(), c = r ? j[0].size() : 0;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) bad("matrix rows differ in length");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = rational_from_json(j[i][k]);
  }
  return m;
}

Json to_json(const Endo& t) { return {{"group", to_json(t.group())}, {"matrix", to_json(t.matrix())}}; }

Endo endo_from_json(const Json& j, const GroupRef& fallback) {
  GroupRef g = group_or(j, fallback);
  return validate_endo(g, matrix_from_json(field(j, "matrix")));
}

Json to_json(const EndoSet& s) {
  Json members = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i)
    members.push_back({{"matrix", to_json(s.members()[i].matrix())}, {"provenance", s.provenance()[i]}});
  Json j;
  if (s.group_ref()) j["group"] = to_json(*s.group_ref());
  j["members"] = std::move(members);
  j["truncated"] = s.truncated;
  return j;
}

EndoSet endo_set_from_json(const Json& j, const GroupRef& fallback) {
  const Json& list = j.is_array() ? j : field(j, "members");
  GroupRef g = j.is_array() ? fallback : group_or(j, fallback);
  if (!g && !list.empty() && list[0].contains("group")) g = make_group(group_from_json(list[0].at("group")));
  if (!g) bad("missing field 'group'");
  EndoSet s(g);
  for (const auto& m : list) {
    Endo t = endo_from_json(m, g);
    if (!(t.group() == *g)) throw Error(ErrorKind::GroupMismatch, "endomorphism set mixes groups");
    s.insert(t, m.contains("provenance") ? m.at("provenance").get<std::string>() : "seed");
  }
  if (j.is_object() && j.contains("truncated")) s.truncated = j.at("truncated").get<bool>();
  return s;
}

Json to_json(const PartialHom& h) {
  Json pairs = Json::array();
  for (std::size_t i = 0; i < h.generators.size(); ++i)
    pairs.push_back({{"generator", to_json(h.generators[i])}, {"image", to_json(h.images[i])}});
  return {{"group", to_json(*h.group)}, {"pairs", pairs}};
}

PartialHom partial_hom_from_json(const Json& j, const GroupRef& fallback) {
  PartialHom h;
  h.group = group_or(j, fallback);
  for (const auto& p : field(j, "pairs")) {
    h.generators.push_back(element_from_json(*h.group, field(p, "generator")));
    h.images.push_back(element_from_json(*h.group, field(p, "image")));
  }
  return h;
}

Json to_json(const GroundSet& s) {
  Json j;
  j["group"] = to_json(s.group());
  if (s.is_finite()) {
    j["kind"] = "finite";
    Json el = Json::array();
    for (const auto& x : s.elements()) el.push_back(to_json(x));
    j["elements"] = std::move(el);
  } else {
    j["kind"] = "box";
    j["lower"] = rational_list_json(s.lower());
    j["upper"] = rational_list_json(s.upper());
  }
  return j;
}

GroundSet ground_set_from_json(const Json& j, const GroupRef& fallback) {
  GroupRef g = group_or(j, fallback);
  const std::string kind = text(field(j, "kind"));
  if (kind == "finite") {
    std::vector<Element> el;
    for (const auto& x : field(j, "elements")) el.push_back(element_from_json(*g, x));
    return GroundSet::finite(g, std::move(el));
  }
  if (kind == "box") return GroundSet::box(g, rational_list(field(j, "lower")), rational_list(field(j, "upper")));
  if (kind == "whole") return GroundSet::whole(g);
  bad("unknown set kind '" + kind + "'");
}

Json to_json(const ExtValue& v) { return to_string(v); }

ExtValue ext_from_json(const Json& j) {
  try {
    return parse_ext(text(j));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    bad(std::string("bad value: ") + e.what());
  }
}

Json to_json(const FnRepr& f) {
  Json j;
  if (f.is_table()) {
    j["kind"] = "table";
    j["domain"] = to_json(f.domain());
    Json v = Json::array();
    for (const auto& x : f.values()) v.push_back(to_json(x));
    j["values"] = std::move(v);
  } else {
    j["kind"] = "quadratic";
    j["domain"] = to_json(f.domain());
    j["Q"] = to_json(f.form().q);
    j["b"] = rational_list_json(f.form().b);
    j["c"] = to_json(f.form().c);
  }
  return j;
}

FnRepr fn_from_json(const Json& j, const GroupRef& fallback) {
  const std::string kind = text(field(j, "kind"));
  GroundSet d = ground_set_from_json(field(j, "domain"), fallback);
  if (kind == "table") {
    const Json& vals = field(j, "values");
    if (!vals.is_array()) bad("values must be an array");
    if (d.kind() == GroundSet::Kind::Finite && j.at("domain").at("kind") == "finite") {
      // values follow the listed order of the domain elements
      const Json& listed = j.at("domain").at("elements");
      if (listed.size() != vals.size()) bad("table has a different number of values and domain points");
      std::vector<std::pair<Element, ExtValue>> entries;
      for (std::size_t i = 0; i < vals.size(); ++i)
        entries.emplace_back(element_from_json(d.group(), listed[i]), ext_from_json(vals[i]));
      return FnRepr::table(d.group_ref(), entries);
    }
    std::vector<ExtValue> v;
    for (const auto& x : vals) v.push_back(ext_from_json(x));
    return FnRepr::table(d, std::move(v));
  }
  if (kind == "quadratic") {
    QuadraticForm q{matrix_from_json(field(j, "Q")), rational_list(field(j, "b")), rational_from_json(field(j, "c"))};
    return FnRepr::quadratic(d, std::move(q));
  }
  bad("unknown function kind '" + kind + "'");
}

Json to_json(const ConvexPair& p) { return {{"endo", to_json(p.t)}, {"t", to_json(p.s)}}; }

ConvexPair pair_from_json(const Json& j, const GroupRef& fallback) {
  return make_pair(endo_from_json(field(j, "endo"), fallback), rational_from_json(field(j, "t")));
}

Json to_json(const AuditEntry& e) {
  return {{"hypothesis", e.hypothesis}, {"status", to_string(e.status)}, {"note", e.note}};
}

AuditEntry audit_from_json(const Json& j) {
  static const AuditStatus all[] = {AuditStatus::Verified, AuditStatus::CertifiedBound, AuditStatus::Assumed,
                                    AuditStatus::Failed};
  return {text(field(j, "hypothesis")), parse_enum(text(field(j, "status")), all, "audit status"),
          j.contains("note") ? text(j.at("note")) : ""};
}

Json to_json(const Report& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["coverage"] = to_string(r.coverage);
  j["checked"] = r.checked;
  Json w = Json::array();
  for (const auto& [k, v] : r.witness) w.push_back(Json::array({k, v}));
  j["witness"] = std::move(w);
  Json a = Json::array();
  for (const auto& e : r.audit) a.push_back(to_json(e));
  j["audit"] = std::move(a);
  j["detail"] = r.detail;
  return j;
}

Report report_from_json(const Json& j) {
  static const Verdict verdicts[] = {Verdict::Pass, Verdict::Fail, Verdict::PreconditionFailed,
                                     Verdict::Inconclusive};
  static const Coverage coverages[] = {Coverage::Exhaustive, Coverage::Sampled, Coverage::Analytic};
  Report r;
  r.verdict = parse_enum(text(field(j, "verdict")), verdicts, "verdict");
  r.coverage = parse_enum(text(field(j, "coverage")), coverages, "coverage");
  r.checked = field(j, "checked").get<std::size_t>();
  for (const auto& w : field(j, "witness")) r.add_witness(w.at(0).get<std::string>(), w.at(1).get<std::string>());
  for (const auto& a : field(j, "audit")) r.audit.push_back(audit_from_json(a));
  r.detail = j.contains("detail") ? j.at("detail").get<std::string>() : "";
  return r;
}

Json to_json(const Interval& i) {
  if (i.empty) return {{"empty", true}};
  return {{"empty", false}, {"lower", to_json(i.lower)}, {"upper", to_json(i.upper)}};
}

Json to_json(const IntervalResult& r) {
  Json j{{"interval", to_json(r.interval)}, {"coverage", to_string(r.coverage)}, {"checked", r.checked}};
  if (r.witness) j["witness"] = {{"x", to_json(r.witness->first)}, {"y", to_json(r.witness->second)}};
  return j;
}

Json to_json(const SpectralBound& b) {
  Json j{{"upper", to_json(b.upper)}, {"m_max", b.m_max}, {"best_power", b.best_power}};
  j["nilpotent"] = b.nilpotent ? Json(*b.nilpotent) : Json(nullptr);
  return j;
}

Json to_json(const NeumannInverse& n) {
  Json j{{"inverse", to_json(n.inverse)}, {"route", to_string(n.route)}, {"certificate", n.certificate}};
  j["nilpotent"] = n.nilpotent ? Json(*n.nilpotent) : Json(nullptr);
  return j;
}

Json to_json(const DerivedPair& d) {
  Json a = Json::array();
  for (const auto& e : d.audit) a.push_back(to_json(e));
  return {{"pair", to_json(d.pair)}, {"rule", d.rule}, {"audit", a}, {"inputs", d.inputs}};
}

DerivedPair derived_from_json(const Json& j, const GroupRef& fallback) {
  DerivedPair d;
  d.pair = pair_from_json(field(j, "pair"), fallback);
  d.rule = text(field(j, "rule"));
  for (const auto& a : field(j, "audit")) d.audit.push_back(audit_from_json(a));
  d.inputs = field(j, "inputs").get<std::vector<std::string>>();
  return d;
}

Json to_json(const WrightDecomposition& w) {
  return {{"B", to_json(w.b)}, {"A", rational_list_json(w.a)}, {"c", to_json(w.c)}, {"report", to_json(w.report)}};
}

Json to_json(const AffineDecomposition& a) {
  return {{"A", rational_list_json(a.a)}, {"c", to_json(a.c)}, {"report", to_json(a.report)}};
}

Json to_json(const LastResult& r) {
  Json j;
  if (r.derived.pair.t.group_ref()) j["derived"] = to_json(r.derived);
  j["s"] = rational_list_json(r.s);
  j["r"] = rational_list_json(r.r);
  j["c"] = rational_list_json(r.c);
  j["coefficients"] = to_json(r.coefficients);
  return j;
}

Json to_json(const SupportCertificate& c) {
  return {{"A", rational_list_json(c.a)}, {"c", to_json(c.c)}, {"p", to_json(c.p)}};
}

Json to_json(const SupportResult& r) {
  Json j;
  j["status"] = r.certificate ? "certificate" : "infeasible";
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  if (!r.contradiction.empty()) j["contradiction"] = r.contradiction;
  j["report"] = to_json(r.report);
  return j;
}

}  // namespace gconv
