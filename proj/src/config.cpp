#include "frontlab/config.hpp"

#include <boost/property_tree/ini_parser.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <sstream>

namespace frontlab {

namespace pt = boost::property_tree;

SchemaError::SchemaError(std::string field, int line, const std::string& what)
    : std::runtime_error(what), field_(std::move(field)), line_(line) {}

const std::vector<ConfigDefault>& config_defaults() {
    static const std::vector<ConfigDefault> table = {
        {"scenario", "name", "", "artifact directory name; defaults to the file stem"},
        {"scenario", "kind", "", "front_speed | pde_speed | front_convergence | spark_decomposition | "
                                 "spatial_terrace | temporal_terrace | ignition_check | pulsating | ergodic | "
                                 "properties | stationary_residual | classification"},
        {"scenario", "description", "", "free text"},

        {"grid", "dx", "0.05", "node spacing"},
        {"grid", "dt", "", "time step; empty selects min(dx^2/2, 1/(2K))"},
        {"grid", "x_min", "-50", "left end of the initial window"},
        {"grid", "x_max", "50", "right end of the initial window"},
        {"grid", "policy", "fixed", "fixed | follow | grow"},
        {"grid", "margin_nodes", "40", "settled nodes required at each Dirichlet end"},
        {"grid", "chunk", "10", "length moved or added per window adjustment"},
        {"grid", "max_width", "20000", "window length cap for the grow policy"},

        {"initial", "kind", "front_like", "front_like | spark_like | hump_v"},
        {"initial", "a", "0", "plateau edge or centre"},
        {"initial", "Y", "0", "offset of the exponential tail"},
        {"initial", "mu", "1", "tail decay rate"},
        {"initial", "beta", "1", "plateau height"},
        {"initial", "L", "0", "spark half-width"},
        {"initial", "shift", "0", "hump support ends at -shift"},
        {"initial", "epsilon0", "0", "hump plateau is 1 - epsilon0; 0 selects from the lower envelope"},

        {"initial_alt", "kind", "front_like", "second data set for comparisons"},
        {"initial_alt", "a", "0", ""},
        {"initial_alt", "Y", "0", ""},
        {"initial_alt", "mu", "1", ""},
        {"initial_alt", "beta", "1", ""},
        {"initial_alt", "L", "0", ""},
        {"initial_alt", "shift", "0", ""},
        {"initial_alt", "epsilon0", "0", ""},

        {"run", "t_final", "10", "end time"},
        {"run", "snapshot_stride", "1", "periodic snapshot spacing"},
        {"run", "snapshot_from", "0", "first periodic snapshot time"},
        {"run", "fit_from", "0", "start of the fitting interval; 0 selects t_final/2"},
        {"run", "fine_dx", "0.025", "second resolution for pde_speed; 0 skips it"},
        {"run", "shift_window", "40", "time-shift search half-width"},
        {"run", "compare_stride", "0.1", "reference snapshot spacing for time shifts"},
        {"run", "curve_points", "10", "points on the shift-convergence curve"},
        {"run", "period", "0", "spatial period for the pulsating identity; 0 reads it from the reaction"},
        {"run", "seeds", "", "seed list for ergodic runs (mandatory there)"},
        {"run", "n_max", "20", "number of cells for ergodic passage times"},
        {"run", "t_max", "2000", "non-propagation horizon for ergodic runs"},
        {"run", "delta", "0", "counterexample time scale; 0 selects the default"},
        {"run", "K0", "1", "first K of the doubling search"},
        {"run", "blocks", "50", "period-4 blocks in the temporal terrace"},
        {"run", "pairs", "100", "ordered pairs in the comparison suite"},
        {"run", "pair_steps", "2000", "steps per ordered pair"},
        {"run", "bound_steps", "1000000", "steps in the bound-preservation run"},
        {"run", "write_snapshots", "true", "emit snapshots.csv"},

        {"acceptance", "speed_tol", "1e-6", "absolute speed error against the closed form"},
        {"acceptance", "rel_tol", "0.02", "relative PDE speed error at dx"},
        {"acceptance", "fine_rel_tol", "0.005", "relative PDE speed error at fine_dx"},
        {"acceptance", "sup_tol", "0.01", "sup-norm tolerance for shift comparisons"},
        {"acceptance", "slope_factor", "0.5", "fraction of the minorant rate the fitted slope must reach"},
        {"acceptance", "control_factor", "0.01", "control slope must stay below this times c0"},
        {"acceptance", "spread_tol", "0.05", "relative spread of ergodic speeds"},
        {"acceptance", "compare_tol", "1e-12", "comparison principle tolerance"},
        {"acceptance", "monotone_tol", "1e-8", "allowed negative discrete u_t for hump data"},
        {"acceptance", "residual_tol", "1e-10", "stationary residual tolerance"},
        {"acceptance", "yx_tol", "1", "late growth allowed in sup |Y - X|"},
        {"acceptance", "expect", "pass", "pass | fail: expected outcome of the main check"},
        {"acceptance", "expect_taxonomy", "", "taxonomy expected by classification runs"},
        {"acceptance", "max_seconds", "0", "wall-clock limit; 0 disables"},
    };
    return table;
}

namespace {

const ConfigDefault* find_default(const std::string& section, const std::string& key) {
    for (const auto& d : config_defaults())
        if (section == d.section && key == d.key) return &d;
    return nullptr;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::map<std::string, int> scan_lines(const std::string& text) {
    std::map<std::string, int> out;
    std::istringstream in(text);
    std::string line, section;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        const std::string t = trim(line);
        if (t.empty() || t[0] == ';' || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            out.emplace(section, n);
            continue;
        }
        const auto eq = t.find('=');
        if (eq != std::string::npos) out.emplace(section + "." + trim(t.substr(0, eq)), n);
    }
    return out;
}

const std::vector<std::string> kRequired = {"scenario", "reaction", "grid"};

} // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
    Config c;
    c.origin_ = origin;
    std::istringstream in(text);
    try {
        pt::ini_parser::read_ini(in, c.tree_);
    } catch (const pt::ini_parser_error& e) {
        throw SchemaError("", static_cast<int>(e.line()), origin + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    c.lines_ = scan_lines(text);
    return c;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    Config c = parse(ss.str(), path.string());
    if (c.has_section("scenario") && !c.has("scenario", "name")) c.set("scenario", "name", path.stem().string());
    return c;
}

void Config::set(const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw SchemaError(assignment, 0, "override must look like section.key=value: " + assignment);
    set(trim(assignment.substr(0, dot)), trim(assignment.substr(dot + 1, eq - dot - 1)),
        trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    auto sec = tree_.get_child_optional(pt::ptree::path_type(section, '\0'));
    if (!sec) sec = tree_.add_child(pt::ptree::path_type(section, '\0'), pt::ptree{});
    sec->put(pt::ptree::path_type(key, '\0'), value);
}

bool Config::has_section(const std::string& section) const {
    return static_cast<bool>(tree_.get_child_optional(pt::ptree::path_type(section, '\0')));
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto sec = tree_.get_child_optional(pt::ptree::path_type(section, '\0'));
    return sec && sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
}

int Config::line_of(const std::string& section, const std::string& key) const {
    auto it = lines_.find(key.empty() ? section : section + "." + key);
    return it == lines_.end() ? 0 : it->second;
}

std::string Config::field(const std::string& section, const std::string& key) const {
    const int line = line_of(section, key);
    std::string where = origin_;
    if (line > 0) where += ":" + std::to_string(line);
    return where + ": [" + section + "] " + key;
}

std::string Config::str(const std::string& section, const std::string& key) const {
    if (has(section, key)) {
        const auto sec = tree_.get_child(pt::ptree::path_type(section, '\0'));
        return trim(sec.get<std::string>(pt::ptree::path_type(key, '\0')));
    }
    if (const auto* d = find_default(section, key)) return d->value;
    throw SchemaError(section + "." + key, 0, origin_ + ": [" + section + "] " + key + " is required");
}

double Config::num(const std::string& section, const std::string& key) const {
    const std::string v = str(section, key);
    if (v.empty()) throw SchemaError(section + "." + key, line_of(section, key), field(section, key) + " is required");
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw SchemaError(section + "." + key, line_of(section, key),
                          field(section, key) + ": expected a number, got '" + v + "'");
    return x;
}

long long Config::integer(const std::string& section, const std::string& key) const {
    const double x = num(section, key);
    if (x != std::floor(x))
        throw SchemaError(section + "." + key, line_of(section, key), field(section, key) + ": expected an integer");
    return static_cast<long long>(x);
}

bool Config::flag(const std::string& section, const std::string& key) const {
    std::string v = str(section, key);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw SchemaError(section + "." + key, line_of(section, key), field(section, key) + ": expected true or false");
}

std::vector<double> Config::list(const std::string& section, const std::string& key) const {
    std::string v = str(section, key);
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream in(v);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        char* end = nullptr;
        const double x = std::strtod(tok.c_str(), &end);
        if (*end != '\0')
            throw SchemaError(section + "." + key, line_of(section, key),
                              field(section, key) + ": bad list entry '" + tok + "'");
        out.push_back(x);
    }
    return out;
}

std::optional<double> Config::maybe_num(const std::string& section, const std::string& key) const {
    if (str(section, key).empty()) return std::nullopt;
    return num(section, key);
}

std::string Config::reaction_name() const {
    const std::string n = has("reaction", "name") ? str("reaction", "name") : std::string{};
    if (n.empty()) throw SchemaError("reaction.name", line_of("reaction", ""), origin_ + ": [reaction] name is required");
    return n;
}

std::map<std::string, double> Config::reaction_params() const {
    std::map<std::string, double> out;
    const auto sec = tree_.get_child_optional(pt::ptree::path_type("reaction", '\0'));
    if (!sec) return out;
    for (const auto& [k, v] : *sec) {
        if (k == "name") continue;
        out[k] = num("reaction", k);
    }
    return out;
}

void Config::validate() const {
    for (const auto& s : kRequired)
        if (!has_section(s)) throw SchemaError(s, 0, origin_ + ": missing section [" + s + "]");
    for (const auto& [sname, sec] : tree_) {
        if (sname == "reaction") continue;
        if (!sec.data().empty() && sec.empty())
            throw SchemaError(sname, line_of(sname, ""), origin_ + ": key '" + sname + "' outside any section");
        bool known_section = false;
        for (const auto& d : config_defaults()) known_section = known_section || sname == d.section;
        if (!known_section)
            throw SchemaError(sname, line_of(sname, ""), origin_ + ": unknown section [" + sname + "]");
        for (const auto& kv : sec)
            if (!find_default(sname, kv.first))
                throw SchemaError(sname + "." + kv.first, line_of(sname, kv.first),
                                  field(sname, kv.first) + ": unknown key");
    }
    if (str("scenario", "kind").empty())
        throw SchemaError("scenario.kind", line_of("scenario", ""), origin_ + ": [scenario] kind is required");
    reaction_name();
    reaction_params();
    const std::string policy = str("grid", "policy");
    if (policy != "fixed" && policy != "follow" && policy != "grow")
        throw SchemaError("grid.policy", line_of("grid", "policy"), field("grid", "policy") + ": unknown policy");
    if (num("grid", "dx") <= 0.0)
        throw SchemaError("grid.dx", line_of("grid", "dx"), field("grid", "dx") + ": must be positive");
    if (num("grid", "x_max") <= num("grid", "x_min"))
        throw SchemaError("grid.x_max", line_of("grid", "x_max"), field("grid", "x_max") + ": must exceed x_min");
}

std::string Config::text() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [sname, sec] : tree_) {
        if (!first) out << "\n";
        first = false;
        out << "[" << sname << "]\n";
        std::vector<std::pair<std::string, std::string>> kv;
        for (const auto& [k, v] : sec) kv.emplace_back(k, v.data());
        std::sort(kv.begin(), kv.end());
        for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
    }
    return out.str();
}

} // namespace frontlab
