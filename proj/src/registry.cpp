#include "frontlab/counterexamples.hpp"
#include "frontlab/reaction.hpp"

#include <functional>
#include <set>
#include <stdexcept>

namespace frontlab {

namespace {

using Params = std::map<std::string, double>;

struct Entry {
    std::set<std::string> keys;
    std::function<ReactionSpec(const Params&)> build;
};

double get(const Params& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

const std::map<std::string, Entry>& registry() {
    static const std::map<std::string, Entry> table = {
        {"cubic_bistable", {{"a"}, [](const Params& p) { return make_cubic_bistable(get(p, "a", 0.25)); }}},
        {"g0", {{}, [](const Params&) { return make_g0(); }}},
        {"g1", {{"K"}, [](const Params& p) { return make_g1(get(p, "K", 0.0)); }}},
        {"ignition",
         {{"theta", "exponent", "amplitude"},
          [](const Params& p) {
              IgnitionShape s;
              s.exponent = get(p, "exponent", 1.0);
              s.amplitude = get(p, "amplitude", 1.0);
              return make_ignition(get(p, "theta", 0.3), s);
          }}},
        {"two_threshold_bistable",
         {{"a_lo", "a_hi", "wavelength"},
          [](const Params& p) {
              return make_two_threshold_bistable(get(p, "a_lo", 0.235), get(p, "a_hi", 0.25),
                                                 get(p, "wavelength", 10.0));
          }}},
        {"periodic_ignition",
         {{"theta", "period", "amp_lo", "amp_hi"},
          [](const Params& p) {
              return make_periodic_ignition(get(p, "theta", 0.3), get(p, "period", 2.0), get(p, "amp_lo", 1.0),
                                            get(p, "amp_hi", 2.0));
          }}},
        {"random_ergodic",
         {{"cell_period", "seed", "factor_min", "factor_max", "theta", "time_axis"},
          [](const Params& p) {
              if (!p.count("seed")) throw std::invalid_argument("random_ergodic: seed is mandatory");
              ErgodicLaw law;
              law.factor_min = get(p, "factor_min", 1.0);
              law.factor_max = get(p, "factor_max", 2.0);
              law.theta_tilde = get(p, "theta", 0.3);
              law.axis = get(p, "time_axis", 0.0) != 0.0 ? ErgodicAxis::time : ErgodicAxis::space;
              const double seed = get(p, "seed", 0.0);
              if (seed < 0.0) throw std::invalid_argument("random_ergodic: seed must be nonnegative");
              return make_random_ergodic(get(p, "cell_period", 1.0), static_cast<unsigned long long>(seed), law);
          }}},
        {"ignition_gap_violator",
         {{"theta0", "bump_slope"},
          [](const Params& p) { return make_ignition_gap_violator(get(p, "theta0", 0.3), get(p, "bump_slope", 1.0)); }}},
        {"wave_blocking_core", {{}, [](const Params&) { return make_wave_blocking_core().g; }}},
        {"spatial_counterexample",
         {{"a", "delta", "K"},
          [](const Params& p) {
              const ReactionSpec base = make_cubic_bistable(get(p, "a", 0.25));
              return make_spatial_counterexample(base.envelope(), get(p, "delta", 0.0), get(p, "K", 16.0));
          }}},
        {"temporal_counterexample",
         {{"delta", "K", "w_blend"},
          [](const Params& p) {
              TemporalOptions o;
              o.w_blend = get(p, "w_blend", 1e-3);
              return make_temporal_counterexample(get(p, "delta", 1.0 / 8192.0), get(p, "K", 2048.0), o);
          }}},
    };
    return table;
}

} // namespace

ReactionSpec make_reaction(const std::string& name, const std::map<std::string, double>& params) {
    const auto& table = registry();
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown reaction constructor: " + name);
    for (const auto& [key, value] : params) {
        (void)value;
        if (!it->second.keys.count(key))
            throw std::invalid_argument("reaction " + name + ": unknown parameter '" + key + "'");
    }
    return it->second.build(params);
}

std::vector<std::string> reaction_names() {
    std::vector<std::string> out;
    for (const auto& [name, entry] : registry()) out.push_back(name);
    return out;
}

} // namespace frontlab
