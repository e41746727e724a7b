#include "frontlab/verdict.hpp"

#include <algorithm>
#include <limits>

namespace frontlab {

VerdictReport VerdictReport::make(std::string name, bool pass, double margin,
                                  std::vector<Witness> witnesses, std::string detail) {
    VerdictReport r;
    r.name = std::move(name);
    r.pass = pass;
    r.margin = margin;
    r.witnesses = std::move(witnesses);
    r.detail = std::move(detail);
    if (!r.pass && r.witnesses.empty())
        r.witnesses.push_back({std::numeric_limits<double>::quiet_NaN(), margin, "margin"});
    return r;
}

VerdictReport combine(std::string name, const std::vector<VerdictReport>& parts) {
    bool pass = true;
    double margin = std::numeric_limits<double>::infinity();
    std::vector<Witness> w;
    std::string detail;
    for (const auto& p : parts) {
        pass = pass && p.pass;
        margin = std::min(margin, p.margin);
        if (!p.pass) {
            for (auto x : p.witnesses) {
                x.label = p.name + (x.label.empty() ? "" : ": " + x.label);
                w.push_back(std::move(x));
            }
            detail += (detail.empty() ? "" : "; ") + p.name + " failed";
        }
    }
    if (parts.empty()) margin = 0.0;
    return VerdictReport::make(std::move(name), pass, margin, std::move(w), std::move(detail));
}

} // namespace frontlab
