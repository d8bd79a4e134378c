#pragma once

#include <optional>
#include <string>

#include "holo/rational.hpp"
#include "holo/series.hpp"

namespace holo {

enum class Status { Pass, Fail, Skipped, Diagnostic };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Skipped: return "SKIPPED";
        case Status::Diagnostic: return "DIAGNOSTIC";
    }
    return "?";
}

// outcome of one check; FAIL carries the first nonzero exponent and its coefficient
struct VerifyReport {
    std::string id;
    std::string kind;
    Status status = Status::Pass;
    long order = 0;  // 0 for exact checks
    std::optional<Rational> first_nonzero_exponent;
    std::optional<Rational> witness;
    std::string detail;
    std::string anchor;
};

// zero test of a residual: known coefficients all vanish
inline VerifyReport zero_report(std::string id, const PowerSeries& residual) {
    VerifyReport r;
    r.id = std::move(id);
    r.order = residual.exact() ? 0 : detail::floor_div(residual.order(), residual.scale());
    if (residual.is_zero()) {
        r.status = Status::Pass;
        r.detail = residual.exact() ? "identically zero" : "zero through " + residual.var() + "^" + residual.order_exponent().get_str();
    } else {
        r.status = Status::Fail;
        r.first_nonzero_exponent = rat(residual.valuation(), residual.scale());
        r.witness = residual.leading();
        r.detail = "residual " + residual.to_string(3);
    }
    return r;
}

inline VerifyReport zero_report(std::string id, const LogSeries& residual) {
    for (long j = residual.degree(); j >= 0; --j) {
        const auto& p = residual.part(j);
        if (!p.is_zero()) {
            VerifyReport r = zero_report(id, p);
            r.detail = "log^" + std::to_string(j) + " part: " + r.detail;
            return r;
        }
    }
    VerifyReport r = zero_report(std::move(id), residual.part(0));
    Rational o = residual.order_exponent();
    r.order = o >= kExact ? 0 : Integer(o.get_num() / o.get_den()).get_si();
    return r;
}

// combine: all must pass; the first failure is reported
inline VerifyReport all_of(std::string id, const std::vector<VerifyReport>& parts) {
    VerifyReport r;
    r.id = std::move(id);
    r.status = Status::Pass;
    std::string d;
    for (const auto& p : parts) {
        r.order = std::max(r.order, p.order);
        if (p.status == Status::Fail && r.status != Status::Fail) {
            r.status = Status::Fail;
            r.first_nonzero_exponent = p.first_nonzero_exponent;
            r.witness = p.witness;
            r.detail = p.id + ": " + p.detail;
        }
        if (!d.empty()) d += "; ";
        d += p.id + " " + status_name(p.status);
    }
    if (r.status == Status::Pass) r.detail = d;
    return r;
}

}  // namespace holo
