/// @file audit_report.hpp
/// @brief Record of one audited inequality: both sides, their terms, the
/// realised ratio and the verdict.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace axicyl {

/// pass/fail only for inequalities whose constants are fully explicit.
enum class Verdict { pass, fail, ratio_recorded, inapplicable };

const char* to_string(Verdict v);
Verdict parse_verdict(const std::string& name);

struct AuditTerm {
    std::string name;
    double value = 0.0;
};

struct AuditReport {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    std::optional<double> explicit_constant;
    Verdict verdict = Verdict::ratio_recorded;
    std::vector<AuditTerm> lhs_terms;
    std::vector<AuditTerm> rhs_terms;
    std::map<std::string, std::string> metadata;

    /// Sums the itemised terms into lhs and rhs and sets the ratio.
    void total();
    double term(const std::string& name) const;
};

/// lhs / rhs with 0/0 = 0 and x/0 = inf for x > 0.
double safe_ratio(double lhs, double rhs);

/// Relative slack allowed on explicit-constant inequalities.
inline constexpr double explicit_tolerance = 0.02;

/// Builds a report for an inequality with explicit constants.
AuditReport explicit_audit(std::string id, double lhs, double rhs, double tolerance = explicit_tolerance);
/// Builds a report for an inequality with an unspecified constant.
AuditReport recorded_audit(std::string id, double lhs, double rhs);

}  // namespace axicyl
