#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace algkit {

// Shared result type for all axiom/property checks. `ok` means no violation
// was found within the stated bounds; `counts` records how much of the search
// space was actually covered so truncated checks are visible in reports.
struct CheckReport {
    bool ok = true;
    std::vector<std::string> violations;
    std::map<std::string, long long> counts;

    void fail(const std::string& msg) {
        ok = false;
        violations.push_back(msg);
    }

    void merge(const CheckReport& other, const std::string& prefix = "") {
        if (!other.ok) ok = false;
        for (const auto& v : other.violations) violations.push_back(prefix.empty() ? v : prefix + ": " + v);
        for (const auto& [k, n] : other.counts) counts[prefix.empty() ? k : prefix + "." + k] += n;
    }

    std::string summary() const {
        std::ostringstream os;
        os << (ok ? "ok" : "violation");
        for (const auto& [k, n] : counts) os << " " << k << "=" << n;
        for (const auto& v : violations) os << "\n  " << v;
        return os.str();
    }
};

}  // namespace algkit
