#pragma once

#include <functional>
#include <optional>

#include "gconv/harness.hpp"

namespace gconv::detail {

// Single-case checks shared by the suites and by replay_case.
Report case_inequality(InequalityKind kind, const FnRepr& f, const ConvexPair& pair, std::size_t probes,
                       std::uint64_t seed);
Report case_level_sets(const FnRepr& f, const Endo& t);
Report case_char_fn(const GroundSet& s, const GroundSet& d, const Endo& t);
Report case_envelope(const FnRepr& f, const EndoSet& ts);
Report case_spectral(const Matrix& m);
Report case_coefficients(const std::vector<Rational>& t, long k);
Report case_twa(const FnRepr& f, const std::optional<WrightDecomposition>& expected);
Report case_support(const FnRepr& f, const std::vector<ConvexPair>& pairs, const Element& p);
Report case_finite_audit(const GroupRef& g, long n0);

/// Largest quasiconvex minorant by exhaustive search over tables with values in f's value set.
FnRepr brute_envelope(const FnRepr& f, const EndoSet& ts);
/// log-domain repeated squaring estimate of the spectral radius.
double power_radius(const Matrix& m, int squarings = 40);

struct SuiteContext {
  const SuiteConfig& cfg;
  CampaignReport& rep;
  Rng rng;

  std::size_t target() const { return cfg.caps.cases; }
  /// Records one case with verified hypotheses; an alarm when r does not pass.
  void record(const std::string& law, const Report& r, const std::function<Json()>& instance);
  void skip() { ++rep.skipped; }
  void tally(const std::vector<AuditEntry>& audit);
  void note(std::string s) { rep.notes.push_back(std::move(s)); }
};

void suite_prop_ls(SuiteContext& cx);
void suite_envelope(SuiteContext& cx);
void suite_closure_p1(SuiteContext& cx);
void suite_cor1(SuiteContext& cx);
void suite_closure_p1f(SuiteContext& cx);
void suite_closure_p1w(SuiteContext& cx);
void suite_closure_p1c(SuiteContext& cx);
void suite_closure_p1a(SuiteContext& cx);
void suite_tq(SuiteContext& cx);
void suite_tw(SuiteContext& cx);
void suite_tc(SuiteContext& cx);
void suite_ta(SuiteContext& cx);
void suite_spectral(SuiteContext& cx);
void suite_wright_ratio(SuiteContext& cx);
void suite_last(SuiteContext& cx);
void suite_kuhn(SuiteContext& cx);
void suite_twa(SuiteContext& cx);
void suite_rode(SuiteContext& cx);
void suite_radstrom(SuiteContext& cx);
void suite_canary(SuiteContext& cx);

Json inequality_instance(InequalityKind kind, const FnRepr& f, const ConvexPair& pair, std::size_t probes,
                         std::uint64_t seed);

}  // namespace gconv::detail
