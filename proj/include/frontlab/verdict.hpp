#pragma once

#include <map>
#include <string>
#include <vector>

namespace frontlab {

struct Witness {
    double coordinate = 0.0;
    double value = 0.0;
    std::string label;
};

/// Pass/fail with a signed margin (positive means room to spare).
struct VerdictReport {
    std::string name;
    bool pass = false;
    double margin = 0.0;
    std::vector<Witness> witnesses;
    std::map<std::string, double> values;
    std::string detail;

    /// Builds a report; a failing report always carries at least one witness.
    static VerdictReport make(std::string name, bool pass, double margin,
                              std::vector<Witness> witnesses = {}, std::string detail = {});
};

/// Logical AND of several reports; witnesses of failing parts are kept.
VerdictReport combine(std::string name, const std::vector<VerdictReport>& parts);

} // namespace frontlab
