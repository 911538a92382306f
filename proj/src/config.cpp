// config.cpp — config parsing and preset catalog
#include "nesskit/config.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <stdexcept>

namespace nesskit {

namespace {

std::string trim(const std::string& s) {
    const size_t first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return "";
    const size_t last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
        throw std::invalid_argument(
            fmt::format("key '{}': cannot parse number from '{}'", key, t));
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        const size_t stop = text.find(sep, start);
        parts.push_back(text.substr(start, stop == std::string::npos ? stop : stop - start));
        if (stop == std::string::npos)
            break;
        start = stop + 1;
    }
    return parts;
}

// Scalar, comma list, or inclusive start:step:stop range.
std::vector<double> parse_values(const std::string& key, const std::string& text) {
    if (text.find(':') != std::string::npos) {
        const std::vector<std::string> parts = split(text, ':');
        if (parts.size() != 3)
            throw std::invalid_argument(fmt::format(
                "key '{}': a range must be start:step:stop, got '{}'", key, text));
        const double start = parse_number(parts[0], key);
        const double step = parse_number(parts[1], key);
        const double stop = parse_number(parts[2], key);
        if (step == 0.0 || (stop - start) / step < 0.0)
            throw std::invalid_argument(fmt::format(
                "key '{}': range '{}' never reaches its endpoint", key, text));
        const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        std::vector<double> values(static_cast<size_t>(count));
        for (long i = 0; i < count; ++i)
            values[static_cast<size_t>(i)] = start + static_cast<double>(i) * step;
        return values;
    }
    std::vector<double> values;
    for (const std::string& part : split(text, ','))
        values.push_back(parse_number(part, key));
    return values;
}

int parse_int(const std::string& key, const std::string& text) {
    const double v = parse_number(text, key);
    if (v != std::floor(v))
        throw std::invalid_argument(
            fmt::format("key '{}': expected an integer, got '{}'", key, trim(text)));
    return static_cast<int>(v);
}

bool is_sweepable(const std::string& key) {
    return key == "L" || key == "Gamma" || key == "N1" || key == "NL" ||
           key == "lambda" || key == "gamma" || key == "b" || key == "k";
}

void apply_fixed(const std::string& key, double v, SweepSpec& spec) {
    ChainParams& p = spec.base;
    if (key == "L")
        p.L = static_cast<int>(v);
    else if (key == "Gamma")
        p.Gamma = v;
    else if (key == "N1")
        p.left.nbar = v;
    else if (key == "NL")
        p.right.nbar = v;
    else if (key == "lambda")
        p.lambda = v;
    else if (key == "gamma")
        p.gamma = v;
    else if (key == "b")
        spec.b = static_cast<int>(v);
    else if (key == "k")
        spec.k = static_cast<int>(v);
}

} // namespace

ConfigFile parse_config_text(const std::string& text) {
    ConfigFile config;
    size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string::npos)
            eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty()) {
            if (pos > text.size())
                break;
            continue;
        }

        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(
                fmt::format("config line {}: expected 'key = value'", line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument(
                fmt::format("config line {}: empty key or value", line_no));
        for (const auto& [seen, _] : config.entries)
            if (seen == key)
                throw std::invalid_argument(
                    fmt::format("config line {}: duplicate key '{}'", line_no, key));
        config.entries.emplace_back(key, value);
        if (pos > text.size())
            break;
    }
    return config;
}

ConfigFile load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        const std::error_code ec(errno, std::generic_category());
        throw std::runtime_error(
            fmt::format("cannot open '{}' for reading: {}", path.string(), ec.message()));
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config_text(text);
}

SweepSpec sweep_spec_from_config(const ConfigFile& config) {
    SweepSpec spec;
    bool have_measures = false;

    for (const auto& [key, value] : config.entries) {
        if (is_sweepable(key)) {
            const std::vector<double> values = parse_values(key, value);
            const bool integral = key == "L" || key == "b" || key == "k";
            if (integral)
                for (double v : values)
                    if (v != std::floor(v))
                        throw std::invalid_argument(fmt::format(
                            "key '{}': needs integer values, got {:.17g}", key, v));
            if (values.size() == 1)
                apply_fixed(key, values[0], spec);
            else
                spec.axes.push_back(Axis{key, values});
        } else if (key == "omega") {
            spec.base.omega = parse_number(value, key);
        } else if (key == "r1") {
            spec.base.left.r = parse_number(value, key);
        } else if (key == "theta1") {
            spec.base.left.theta = parse_number(value, key);
        } else if (key == "rL") {
            spec.base.right.r = parse_number(value, key);
        } else if (key == "thetaL") {
            spec.base.right.theta = parse_number(value, key);
        } else if (key == "measures") {
            for (const std::string& part : split(value, ','))
                spec.measures.push_back(measure_from_string(trim(part)));
            have_measures = true;
        } else if (key == "partition") {
            spec.partition = partition_rule_from_string(trim(value));
        } else if (key == "blocks") {
            spec.blocks.clear();
            for (const std::string& part : split(value, ','))
                spec.blocks.push_back(parse_int(key, part));
        } else if (key == "workers") {
            const int w = parse_int(key, value);
            if (w < 1)
                throw std::invalid_argument("key 'workers': must be at least 1");
            spec.workers = w;
        } else {
            throw std::invalid_argument(fmt::format("unknown config key '{}'", key));
        }
    }

    if (!have_measures)
        throw std::invalid_argument("config does not set 'measures'");
    return spec;
}

const std::vector<PresetInfo>& presets() {
    static const std::vector<PresetInfo> list = {
        {"fig3a",
         "Occupation profiles without bulk relaxation at three hopping strengths",
         "L = 10\nGamma = 0\nN1 = 2\nNL = 1\nlambda = 0.5,1,2\nmeasures = profile,current\n"},
        {"fig3b",
         "Occupation profiles as bulk relaxation tilts the chain toward a linear ramp",
         "L = 10\nGamma = 0.1,0.5,1,2\nN1 = 2\nNL = 1\nmeasures = profile,current\n"},
        {"fig5a",
         "Half-chain mutual information vs chain length in both transport regimes",
         "L = 16:8:128\nGamma = 0,0.1,1\nN1 = 2\nNL = 1\nmeasures = mi\n"},
        {"fig5b",
         "Total correlations vs chain length in both transport regimes",
         "L = 16:8:128\nGamma = 0,0.1,1\nN1 = 2\nNL = 1\nmeasures = tc\n"},
        {"fig6a",
         "CMI across wide middle blocks at several boundary biases",
         "L = 40\nGamma = 0,0.1\nN1 = 5,10,15\nNL = 1\nb = 2,4,6\nmeasures = cmi\n"},
        {"fig6b",
         "CMI across a single middle site vs chain length",
         "L = 17:8:121\nGamma = 0,0.1\nN1 = 2\nNL = 1\nb = 1\nmeasures = cmi\n"},
        {"fig6c",
         "CMI vs chain length for three middle-block widths (odd L - b required)",
         "L = 20:5:100\nGamma = 0.1\nN1 = 15\nNL = 1\nb = 1,2,3\nmeasures = cmi\n"},
        {"fig6d",
         "CMI against Gamma L for collapse fitting",
         "L = 20:5:100\nGamma = 0.05,0.1,0.2\nN1 = 2\nNL = 1\nb = 1,2\nmeasures = cmi\n"},
        {"kato",
         "Interior-site conditional-correlation bound in both regimes",
         "L = 16,32,64\nGamma = 0,0.1\nN1 = 2\nNL = 1\nmeasures = kato\n"},
    };
    return list;
}

SweepSpec preset_sweep(const std::string& name) {
    for (const PresetInfo& info : presets())
        if (info.name == name)
            return sweep_spec_from_config(parse_config_text(info.config_text));
    throw std::invalid_argument(fmt::format("unknown preset '{}'", name));
}

} // namespace nesskit
