#pragma once

#include "frontlab/numerics.hpp"
#include "frontlab/verdict.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace frontlab {

enum class ReactionKind { homogeneous, space_dependent, time_dependent };
enum class Taxonomy { bi, bistable, pure_bistable, ignition, pure_ignition, mixed_bim };

const char* to_string(ReactionKind kind);
const char* to_string(Taxonomy tax);

/// Lower and upper homogeneous bounds f0 <= f <= f1.
struct EnvelopePair {
    Fn1 f0;
    Fn1 f1;
    double theta0 = 0.0;
    double theta1 = 0.0;
};

using Params = std::vector<std::pair<std::string, double>>;

/// Immutable reaction term f(coord, u), coord being x or t depending on kind.
class ReactionSpec {
public:
    using Evaluator = std::function<double(double, double)>;
    using LocalLipschitz = std::function<double(double, double)>;

    struct Fields {
        std::string name;
        ReactionKind kind = ReactionKind::homogeneous;
        std::optional<double> period;
        Evaluator evaluator;
        double lipschitz_K = 1.0;
        double theta = 0.0;
        double theta1 = 0.0;
        double theta0 = 0.0;
        EnvelopePair envelope;
        Taxonomy taxonomy = Taxonomy::bi;
        Params params;
        LocalLipschitz local_lipschitz;  // optional bound over a coordinate interval
    };

    explicit ReactionSpec(Fields fields);

    /// f(coord, u); zero outside u in (0, 1).
    double operator()(double coord, double u) const {
        if (!(u > 0.0) || !(u < 1.0)) return 0.0;
        return f_->evaluator(coord, u);
    }
    /// Evaluator without the zero extension outside (0, 1).
    double raw(double coord, double u) const { return f_->evaluator(coord, u); }
    /// Homogeneous slice at a fixed coordinate.
    Fn1 slice(double coord) const;

    const std::string& name() const { return f_->name; }
    ReactionKind kind() const { return f_->kind; }
    const std::optional<double>& period() const { return f_->period; }
    double lipschitz_K() const { return f_->lipschitz_K; }
    double theta() const { return f_->theta; }
    double theta1() const { return f_->theta1; }
    double theta0() const { return f_->theta0; }
    const EnvelopePair& envelope() const { return f_->envelope; }
    Taxonomy taxonomy() const { return f_->taxonomy; }
    const Params& params() const { return f_->params; }
    std::optional<double> param(const std::string& key) const;

    /// Lipschitz bound valid for coordinates in [lo, hi].
    double lipschitz_on(double lo, double hi) const;

private:
    std::shared_ptr<const Fields> f_;
};

struct SamplingOptions {
    int u_points = 2048;
    int coord_points = 2048;
    double tol_exact = 1e-9;
    double tol_ineq = 1e-6;
    double coord_window = 50.0;  // half-width used when the coordinate is not periodic
};

/// Uniform u-grid on [0,1] plus geometric refinements towards 0 and 1.
std::vector<double> sample_u_grid(const SamplingOptions& opts);
/// Coordinates covering one period, or [-window, window]; {0} for homogeneous.
std::vector<double> sample_coords(const ReactionSpec& spec, const SamplingOptions& opts);

/// Sampled check of the standing hypothesis: roots, envelope containment,
/// monotonicity near the roots, Lipschitz bound, envelope sign pattern and mass.
VerdictReport validate(const ReactionSpec& spec, const SamplingOptions& opts = {});
VerdictReport validate_envelope(const EnvelopePair& env, const SamplingOptions& opts = {});

struct Classification {
    Taxonomy taxonomy = Taxonomy::bi;
    bool inconclusive = false;
    double gamma_margin = 0.0;                         // fitted minorant at the resolution floor
    std::vector<std::pair<double, double>> gamma;      // (s, gamma(s)) samples
    double theta_tilde_min = 0.0, theta_tilde_max = 0.0;
    std::string detail;
};

Classification classify(const ReactionSpec& spec, const SamplingOptions& opts = {});

// -------------------------------------------------------------- constructors

/// u(1-u)(u-a).
ReactionSpec make_cubic_bistable(double a);

Fn1 g0_profile();
Fn1 g1_profile(double K);
ReactionSpec make_g0();
ReactionSpec make_g1(double K);

struct IgnitionShape {
    double exponent = 1.0;   // q in A (u - theta)^q (1 - u)
    double amplitude = 1.0;  // A
};
Fn1 ignition_profile(double theta_tilde, const IgnitionShape& shape);
ReactionSpec make_ignition(double theta_tilde, const IgnitionShape& shape = {});

/// u(1-u)(u-a(x)) with a(x) = mid + half cos(2 pi x / wavelength) in [a_lo, a_hi].
ReactionSpec make_two_threshold_bistable(double a_lo, double a_hi, double wavelength);

/// A(x) g(u) with A(x) = mid + half cos(2 pi x / period) in [amp_lo, amp_hi].
ReactionSpec make_periodic_ignition(double theta_tilde, double period, double amp_lo,
                                    double amp_hi);

enum class ErgodicAxis { space, time };

struct ErgodicLaw {
    double factor_min = 1.0;
    double factor_max = 2.0;
    double theta_tilde = 0.3;
    ErgodicAxis axis = ErgodicAxis::space;
};

/// Per-cell i.i.d. factor times a pure ignition profile, linearly interpolated
/// between cell centres. Deterministic in (seed, cell index).
ReactionSpec make_random_ergodic(double cell_period, unsigned long long seed,
                                 const ErgodicLaw& law = {});
double ergodic_cell_factor(unsigned long long seed, long long cell, const ErgodicLaw& law);

/// Ignition reaction whose positive part has a gap: a bump on (0.1, 0.2),
/// zero on [0.2, theta0], and the ignition hump above theta0.
ReactionSpec make_ignition_gap_violator(double theta0 = 0.3, double bump_slope = 1.0);

struct WaveBlockingCore {
    Fn1 v;
    Fn1 v_second;
    ReactionSpec g;
};
WaveBlockingCore make_wave_blocking_core();

/// Homogeneous spec from a profile with a single sign change at theta0.
ReactionSpec make_homogeneous(const std::string& name, const Fn1& f, double theta0, Taxonomy taxonomy);

/// Constructor lookup by name for config files and the CLI.
ReactionSpec make_reaction(const std::string& name, const std::map<std::string, double>& params);
std::vector<std::string> reaction_names();

// helpers shared by constructors
double lipschitz_estimate(const Fn1& f, int points = 20001);
double monotone_theta(const Fn1& f, int points = 20001);

} // namespace frontlab
