#pragma once

#include <string>
#include <utility>

namespace coincide {

/// Outcome of a hypothesis or structural check.
///
/// A failed check is a result, not an error: `reason` names the violated
/// property, `witness` renders the first (or worst) counterexample, and
/// `violation` carries the magnitude for worst-violation style checks.
struct CheckResult {
    bool passed = true;
    std::string reason;
    std::string witness;
    double violation = 0.0;

    static CheckResult pass() { return {}; }

    static CheckResult fail(std::string reason, std::string witness = "",
                            double violation = 0.0) {
        CheckResult r;
        r.passed = false;
        r.reason = std::move(reason);
        r.witness = std::move(witness);
        r.violation = violation;
        return r;
    }

    explicit operator bool() const { return passed; }
};

}  // namespace coincide
