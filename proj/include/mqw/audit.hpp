// Reproducible audits that bind the modules into per-lemma reports.
#pragma once

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mqw {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameter name -> decimal / list / range text, e.g. {"primes": "2,3", "t": "4"}.
using AuditParams = std::map<std::string, std::string>;

struct CaseRecord {
    std::string name;
    bool passed = false;
    std::string summary;  // one line for the table
    nlohmann::json detail;
};

struct AuditReport {
    std::string lemma_id;
    AuditParams parameters;  // after defaults are filled in
    std::vector<CaseRecord> outcomes;
    std::size_t passed = 0, failed = 0;
    nlohmann::json results;  // lemma-level values
    std::vector<std::string> notes;
    double runtime_ms = 0;

    bool all_passed() const { return failed == 0; }
    /// "pass", "pass-with-note" or "fail".
    std::string status() const;
};

std::vector<std::string> audit_lemmas();
/// Accepted parameter names with their defaults ("" = derived from the others).
AuditParams audit_defaults(const std::string& lemma_id);

/// Throws UsageError for an unknown lemma, unknown parameter or malformed value.
AuditReport run_audit(const std::string& lemma_id, const AuditParams& params = {});

/// Deterministic for fixed parameters; runtime is left out unless asked for.
nlohmann::json report_to_json(const AuditReport& r, bool include_runtime = false);
std::string report_table(const AuditReport& r);

/// "a..b" or "a,b,c" as integers.
std::vector<long> parse_int_list(const std::string& text, const std::string& what);

}  // namespace mqw
