#pragma once

#include <boost/property_tree/ptree.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frontlab {

/// Config problem tied to a field; line is 0 when unknown.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string field, int line, const std::string& what);
    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    std::string field_;
    int line_;
};

struct ConfigDefault {
    const char* section;
    const char* key;
    const char* value;  // empty: no default
    const char* doc;
};

/// Every recognised key outside [reaction] with its default.
const std::vector<ConfigDefault>& config_defaults();

/// INI scenario description: [scenario], [reaction], [grid], [initial],
/// [initial_alt], [run], [acceptance].
class Config {
public:
    static Config parse(const std::string& text, const std::string& origin = "<string>");
    static Config load(const std::filesystem::path& path);

    /// "section.key=value"; creates the key if absent.
    void set(const std::string& assignment);
    void set(const std::string& section, const std::string& key, const std::string& value);

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;

    std::string str(const std::string& section, const std::string& key) const;
    double num(const std::string& section, const std::string& key) const;
    long long integer(const std::string& section, const std::string& key) const;
    bool flag(const std::string& section, const std::string& key) const;
    std::vector<double> list(const std::string& section, const std::string& key) const;
    std::optional<double> maybe_num(const std::string& section, const std::string& key) const;

    /// Reaction constructor name and its numeric parameters.
    std::string reaction_name() const;
    std::map<std::string, double> reaction_params() const;

    /// Required sections and known keys; throws SchemaError.
    void validate() const;

    /// Canonical INI text (sections in file order, keys sorted).
    std::string text() const;
    const std::string& origin() const { return origin_; }

private:
    int line_of(const std::string& section, const std::string& key) const;
    std::string field(const std::string& section, const std::string& key) const;

    boost::property_tree::ptree tree_;
    std::map<std::string, int> lines_;
    std::string origin_;
};

} // namespace frontlab
