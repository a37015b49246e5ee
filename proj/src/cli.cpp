#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gconv/error.hpp"
#include "gconv/harness.hpp"

namespace gconv {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed JSON in ") + (path.empty() ? "stdin" : path) + ": " + e.what());
  }
}

void write_json(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed for " + path);
}

struct Common {
  std::uint64_t seed = 0;
  std::size_t budget = 1000;
  bool exhaustive = false;
  std::string out;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--budget", c.budget, "probe or insertion budget");
  app->add_flag("--exhaustive", c.exhaustive, "require exhaustive coverage");
  app->add_option("-o,--out", c.out, "output file (default stdout)");
}

std::vector<ConvexPair> read_pairs(const Json& j, const GroupRef& g) {
  const Json& list = j.is_array() ? j : j.at("pairs");
  std::vector<ConvexPair> out;
  for (const auto& p : list) out.push_back(pair_from_json(p, g));
  return out;
}

int verdict_code(Verdict v) { return v == Verdict::Pass ? 0 : 1; }

}  // namespace

int cli_dispatch(int argc, char** argv) {
  CLI::App app{"Convexity checks on metric Abelian groups"};
  app.require_subcommand(1);
  Common c;

  std::string kind = "quasiconvex", fn_path, endo_path, pair_path, t_text, set_path, endos_path, pairs_path,
              point_path, rule, mode = "wright", id, case_path;
  long n = 1, k = 1, m_max = 64;
  bool inverse = false, no_timing = false, chain = false;
  Caps caps;

  auto* check = app.add_subcommand("check", "check an inequality for one pair");
  check->add_option("--kind", kind, "quasiconvex | wright | ttconvex | wright_affine | tt_affine");
  check->add_option("--fn", fn_path, "function JSON")->required();
  check->add_option("--endo", endo_path, "endomorphism JSON");
  check->add_option("--t", t_text, "scalar of the pair (default 0)");
  check->add_option("--pair", pair_path, "pair JSON instead of --endo/--t");
  add_common(check, c);

  auto* derive = app.add_subcommand("derive", "derive new pairs");
  derive->add_option("--rule", rule, "compose | wright-ratio | last | kuhn")->required();
  derive->add_option("--pairs", pairs_path, "pairs JSON (compose: outer, first, second)");
  derive->add_option("--pair", pair_path, "pair JSON (kuhn)");
  derive->add_option("--endo", endo_path, "endomorphism JSON (wright-ratio)");
  derive->add_option("--fn", fn_path, "function for the input audit");
  derive->add_option("--kind", kind, "inequality of the input audit");
  derive->add_option("--n", n);
  derive->add_option("--k", k);
  add_common(derive, c);

  auto* envelope = app.add_subcommand("envelope", "largest quasiconvex minorant");
  envelope->add_option("--fn", fn_path)->required();
  envelope->add_option("--endos", endos_path)->required();
  add_common(envelope, c);

  auto* semigroup = app.add_subcommand("semigroup", "endomorphisms keeping a set convex, or a generated closure");
  semigroup->add_option("--set", set_path, "finite set JSON: enumerate all T with the set T-convex");
  semigroup->add_option("--endos", endos_path, "seed endomorphisms: closure under the convexity maps");
  add_common(semigroup, c);

  auto* decompose = app.add_subcommand("decompose", "Wright-affine or affine decomposition");
  decompose->add_option("--fn", fn_path)->required();
  decompose->add_option("--mode", mode, "wright | affine");
  decompose->add_option("--endos", endos_path, "endomorphisms for the bilinear check (wright)");
  decompose->add_option("--pairs", pairs_path, "pairs (affine)");
  add_common(decompose, c);

  auto* support = app.add_subcommand("support", "affine support at a point");
  support->add_option("--fn", fn_path)->required();
  support->add_option("--p", point_path, "point JSON")->required();
  support->add_option("--pairs", pairs_path, "homogeneity pairs");
  add_common(support, c);

  auto* spectral = app.add_subcommand("spectral", "spectral radius bound and Neumann inverse");
  spectral->add_option("--endo", endo_path)->required();
  spectral->add_option("--m-max", m_max);
  spectral->add_flag("--inverse", inverse, "also invert I - T");
  add_common(spectral, c);

  auto* suite = app.add_subcommand("suite", "run a property campaign");
  suite->add_option("--id", id, "suite id")->required();
  suite->add_option("--cases", caps.cases, "target cases per randomized suite");
  suite->add_option("--max-order", caps.max_order, "largest finite group");
  suite->add_flag("--no-timing", no_timing, "report elapsed_ms = 0");
  add_common(suite, c);

  auto* generate = app.add_subcommand("generate", "seeded random instance");
  generate->add_option("--kind", kind, "group | endo | set | fn | pair")->required();
  generate->add_flag("--chain", chain, "fn: emit a pointwise-sorted family");
  add_common(generate, c);

  auto* replay = app.add_subcommand("replay", "re-run the check recorded in an alarm");
  replay->add_option("--case", case_path, "alarm or case JSON")->required();
  add_common(replay, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) {
      FnRepr f = fn_from_json(read_json(fn_path));
      const GroupRef& g = f.domain().group_ref();
      ConvexPair p;
      if (!pair_path.empty())
        p = pair_from_json(read_json(pair_path), g);
      else if (!endo_path.empty())
        p = make_pair(endo_from_json(read_json(endo_path), g), t_text.empty() ? Rational(0) : parse_rational(t_text));
      else
        throw UsageError("check needs --endo or --pair");
      if (c.exhaustive && !f.domain().is_finite()) throw UsageError("--exhaustive needs a finite domain");
      Report r = check_inequality(parse_inequality_kind(kind), f, p, c.budget, c.seed);
      write_json(to_json(r), c.out);
      return verdict_code(r.verdict);
    }
    if (derive->parsed()) {
      std::optional<FnRepr> f;
      if (!fn_path.empty()) f = fn_from_json(read_json(fn_path));
      GroupRef g = f ? f->domain().group_ref() : nullptr;
      Target target;
      if (f) target = Target{&*f, parse_inequality_kind(kind), c.budget, c.seed};
      const GroundSet* dom = f ? &f->domain() : nullptr;
      Json out;
      if (rule == "compose") {
        auto ps = read_pairs(read_json(pairs_path), g);
        if (ps.size() != 3) throw UsageError("compose needs three pairs");
        out = to_json(compose_pair(ps[0], ps[1], ps[2], target));
      } else if (rule == "wright-ratio") {
        out = to_json(wright_ratio_derive(endo_from_json(read_json(endo_path), g), n, k, dom, target));
      } else if (rule == "last") {
        out = to_json(last_derive(read_pairs(read_json(pairs_path), g), k, dom, target));
      } else if (rule == "kuhn") {
        out = Json::array();
        for (const auto& d : kuhn_derive(pair_from_json(read_json(pair_path), g), n, dom, target))
          out.push_back(to_json(d));
      } else {
        throw UsageError("unknown rule '" + rule + "'");
      }
      write_json(out, c.out);
      return 0;
    }
    if (envelope->parsed()) {
      FnRepr f = fn_from_json(read_json(fn_path));
      write_json(to_json(qconv_envelope(f, endo_set_from_json(read_json(endos_path), f.domain().group_ref()))), c.out);
      return 0;
    }
    if (semigroup->parsed()) {
      if (!set_path.empty()) {
        write_json(to_json(enumerate_TD(ground_set_from_json(read_json(set_path)), c.budget * 10)), c.out);
      } else if (!endos_path.empty()) {
        write_json(to_json(closure_generate(endo_set_from_json(read_json(endos_path)), c.budget)), c.out);
      } else {
        throw UsageError("semigroup needs --set or --endos");
      }
      return 0;
    }
    if (decompose->parsed()) {
      FnRepr f = fn_from_json(read_json(fn_path));
      const GroupRef& g = f.domain().group_ref();
      if (mode == "wright") {
        std::vector<Endo> ts;
        if (!endos_path.empty()) ts = endo_set_from_json(read_json(endos_path), g).members();
        WrightDecomposition w = twa_decompose(f, ts, c.budget, c.seed);
        write_json(to_json(w), c.out);
        return verdict_code(w.report.verdict);
      }
      if (mode == "affine") {
        std::vector<ConvexPair> ps;
        if (!pairs_path.empty()) ps = read_pairs(read_json(pairs_path), g);
        AffineDecomposition a = affine_decompose(f, ps, c.budget, c.seed);
        write_json(to_json(a), c.out);
        return verdict_code(a.report.verdict);
      }
      throw UsageError("unknown mode '" + mode + "'");
    }
    if (support->parsed()) {
      FnRepr f = fn_from_json(read_json(fn_path));
      const GroupRef& g = f.domain().group_ref();
      std::vector<ConvexPair> ps;
      if (!pairs_path.empty()) ps = read_pairs(read_json(pairs_path), g);
      SupportResult s = rode_support(f, ps, element_from_json(*g, read_json(point_path)));
      write_json(to_json(s), c.out);
      return s.certificate ? 0 : 1;
    }
    if (spectral->parsed()) {
      Endo t = endo_from_json(read_json(endo_path));
      Json out{{"bound", to_json(spectral_radius(t, m_max))}};
      if (inverse) out["neumann"] = to_json(neumann_inverse(t, m_max));
      write_json(out, c.out);
      return 0;
    }
    if (suite->parsed()) {
      if (!known_suite(id)) throw UsageError("unknown suite '" + id + "'");
      caps.probes = c.budget;
      CampaignReport r = run_suite(SuiteConfig{id, c.seed, caps, !no_timing});
      write_json(to_json(r), c.out);
      return r.ok() ? 0 : 1;
    }
    if (generate->parsed()) {
      InstanceOptions opt;
      opt.chain = chain;
      opt.saturate = true;
      caps.probes = c.budget;
      write_json(generate_instance(parse_instance_kind(kind), c.seed, caps, opt), c.out);
      return 0;
    }
    if (replay->parsed()) {
      Json j = read_json(case_path);
      if (j.contains("case")) j = j.at("case");
      Report r = replay_case(j);
      write_json(to_json(r), c.out);
      return verdict_code(r.verdict);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Io ? 3 : 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace gconv
