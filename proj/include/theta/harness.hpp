#pragma once

#include <string>
#include <vector>

#include "theta/cocycle.hpp"
#include "theta/theta_coeff.hpp"

namespace theta {

struct RunConfig {
    Ring ring = Ring::Eisenstein;
    unsigned n = 3;
    Integer cong_mod = 1; // admissibility filter: q % cong_mod == cong_rem
    Integer cong_rem = 0;
    Integer norm_max = 500;
    unsigned max_support = 3;
    uint64_t seed = 42;
    uint64_t trials = 10000;
    unsigned workers = 1;
    double tolerance = 1e-9;
    std::string format = "json"; // json | csv | text
    std::string cache_dir;       // empty: no disk cache

    bool operator==(const RunConfig&) const = default;
};

/// Parse "r mod m" / "r%m" / "none" into the congruence filter fields.
void set_congruence(RunConfig& cfg, const std::string& text);

struct ReportRow {
    std::string m;
    std::string symbolic;
    double re = 0;
    double im = 0;

    bool operator==(const ReportRow&) const = default;
};

struct ReportCheck {
    std::string name;
    bool pass = false;
    double max_err = 0;
    std::string witness; // minimal reproducer for a failure, empty when passing

    bool operator==(const ReportCheck&) const = default;
};

struct VerificationReport {
    std::string case_name;
    RunConfig config;
    std::vector<ReportRow> rows;
    std::vector<ReportCheck> checks;
    double wall_seconds = 0; // informational; excluded from serialized bytes

    bool all_pass() const;
};

enum class CaseTag { Cfh, Patterson, Gauss9, Cocycle, Reciprocity, GaussMagnitude, JacobiCube };

const char* case_name(CaseTag c);
CaseTag parse_case(const std::string& name);

/// Primary primes of the configured ring with q <= norm cap, q == 1 mod n,
/// satisfying the congruence filter; one prime per rational prime, sorted by
/// norm. Cap must not exceed 10^6.
std::vector<PrimaryPrime> admissible_primes(const RunConfig& cfg);

VerificationReport run_case(CaseTag tag, const RunConfig& cfg);

/// Serialize to the requested format ("json", "csv", "text"); byte-stable for
/// equal config. JSON schema is versioned as "theta-descent/1".
std::string emit_report(const VerificationReport& rep, const std::string& format);

/// Inverse of emit_report for the JSON format (wall time is not serialized).
VerificationReport parse_report_json(const std::string& text);

/// 0 all checks pass, 1 some check failed.
int report_exit_code(const VerificationReport& rep);

} // namespace theta
