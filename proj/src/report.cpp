#include "gconv/report.hpp"

#include <algorithm>

namespace gconv {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::PreconditionFailed: return "precondition-failed";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Coverage c) {
  switch (c) {
    case Coverage::Exhaustive: return "exhaustive";
    case Coverage::Sampled: return "sampled";
    case Coverage::Analytic: return "analytic";
  }
  return "?";
}

const char* to_string(AuditStatus s) {
  switch (s) {
    case AuditStatus::Verified: return "verified";
    case AuditStatus::CertifiedBound: return "certified-bound";
    case AuditStatus::Assumed: return "assumed";
    case AuditStatus::Failed: return "failed";
  }
  return "?";
}

const std::string* Report::find_witness(const std::string& key) const {
  for (const auto& [k, v] : witness)
    if (k == key) return &v;
  return nullptr;
}

bool fully_verified(const std::vector<AuditEntry>& audit) {
  return std::all_of(audit.begin(), audit.end(), [](const AuditEntry& e) {
    return e.status == AuditStatus::Verified || e.status == AuditStatus::CertifiedBound;
  });
}

}  // namespace gconv
