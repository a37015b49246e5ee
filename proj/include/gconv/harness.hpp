#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gconv/serialize.hpp"

namespace gconv {

struct Caps {
  long max_order = 30;       // largest finite group
  std::size_t max_rank = 2;  // lattice / N-adic rank
  long entry_bound = 2;      // |matrix entries| for generated endos
  std::size_t probes = 1000; // sampled probes per check
  std::size_t cases = 1000;  // target cases per randomized suite
};

struct SuiteConfig {
  std::string suite;
  std::uint64_t seed = 0;
  Caps caps;
  bool timing = true;  // false writes elapsed_ms = 0 so reports are byte-identical
};

struct Alarm {
  std::string id;
  Json instance;  // replayable by replay_case
  Report report;
};

struct CampaignReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t cases = 0;    // cases whose hypotheses were fully verified
  std::size_t skipped = 0;  // generated instances with unverified hypotheses
  std::map<std::string, std::size_t> verdicts;
  std::map<std::string, std::size_t> audit;  // audit status -> count
  std::map<std::string, std::size_t> checks; // law -> cases
  std::vector<Alarm> alarms;
  std::vector<CampaignReport> parts;  // per-suite reports of "all"
  std::vector<std::string> notes;
  double elapsed_ms = 0;

  bool ok() const { return alarms.empty(); }
};

Json to_json(const CampaignReport& r);

enum class InstanceKind { Group, Endo, Set, Fn, Pair };
InstanceKind parse_instance_kind(const std::string& s);

struct InstanceOptions {
  bool chain = false;      // fn: emit a pointwise-sorted family
  bool saturate = false;   // set: close under a random endomorphism
  std::size_t family = 3;  // fn with chain
};

Json generate_instance(InstanceKind kind, std::uint64_t seed, const Caps& caps = {}, const InstanceOptions& opt = {});

const std::vector<std::string>& suite_ids();
bool known_suite(const std::string& id);

/// Throws InvalidArgument for an unknown suite id.
CampaignReport run_suite(const SuiteConfig& config);

/// Re-runs the single check recorded in an alarm instance.
Report replay_case(const Json& instance);

/// Exit codes: 0 pass, 1 property violation, 2 usage, 3 I/O.
int cli_dispatch(int argc, char** argv);

}  // namespace gconv
