#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace gconv {

enum class Verdict { Pass, Fail, PreconditionFailed, Inconclusive };
enum class Coverage { Exhaustive, Sampled, Analytic };
enum class AuditStatus { Verified, CertifiedBound, Assumed, Failed };

const char* to_string(Verdict v);
const char* to_string(Coverage c);
const char* to_string(AuditStatus s);

struct AuditEntry {
  std::string hypothesis;
  AuditStatus status = AuditStatus::Assumed;
  std::string note;
};

/// Outcome of a check: verdict, how much was examined, and a violation witness.
struct Report {
  Verdict verdict = Verdict::Pass;
  Coverage coverage = Coverage::Exhaustive;
  std::size_t checked = 0;
  std::vector<std::pair<std::string, std::string>> witness;
  std::vector<AuditEntry> audit;
  std::string detail;

  bool passed() const { return verdict == Verdict::Pass; }
  void add_witness(std::string key, std::string value) { witness.emplace_back(std::move(key), std::move(value)); }
  const std::string* find_witness(const std::string& key) const;
};

/// True when no audit entry is assumed or failed.
bool fully_verified(const std::vector<AuditEntry>& audit);

}  // namespace gconv
