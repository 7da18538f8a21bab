#include "axicyl/audit_report.hpp"

#include <cmath>
#include <limits>

#include "axicyl/error.hpp"

namespace axicyl {

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::ratio_recorded: return "ratio-recorded";
    case Verdict::inapplicable: return "inapplicable";
    }
    return "ratio-recorded";
}

Verdict parse_verdict(const std::string& name) {
    for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::ratio_recorded, Verdict::inapplicable}) {
        if (name == to_string(v)) return v;
    }
    throw Error(ErrorKind::io_error, "unknown verdict '" + name + "'");
}

double safe_ratio(double lhs, double rhs) {
    if (rhs > 0.0) return lhs / rhs;
    return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

void AuditReport::total() {
    lhs = 0.0;
    for (const auto& t : lhs_terms) lhs += t.value;
    rhs = 0.0;
    for (const auto& t : rhs_terms) rhs += t.value;
    ratio = safe_ratio(lhs, rhs);
}

double AuditReport::term(const std::string& name) const {
    for (const auto* list : {&lhs_terms, &rhs_terms}) {
        for (const auto& t : *list) {
            if (t.name == name) return t.value;
        }
    }
    throw Error(ErrorKind::invalid_argument, "report " + id + " has no term " + name);
}

AuditReport explicit_audit(std::string id, double lhs, double rhs, double tolerance) {
    AuditReport r;
    r.id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = safe_ratio(lhs, rhs);
    r.explicit_constant = 1.0;
    const bool ok = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs * (1.0 + tolerance) + 1e-300;
    r.verdict = ok ? Verdict::pass : Verdict::fail;
    return r;
}

AuditReport recorded_audit(std::string id, double lhs, double rhs) {
    AuditReport r;
    r.id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = safe_ratio(lhs, rhs);
    r.verdict = Verdict::ratio_recorded;
    return r;
}

}  // namespace axicyl
