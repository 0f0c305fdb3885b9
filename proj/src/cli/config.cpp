#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "photon_shaper/cavity_filter.hpp"
#include "photon_shaper/cli.hpp"
#include "photon_shaper/errors.hpp"
#include "photon_shaper/fm_modulation.hpp"
#include "photon_shaper/specgrid.hpp"

namespace photon_shaper::cli
{
using nlohmann::json;

namespace
{
void require_object(const json &node, const std::string &where)
{
    if (!node.is_object())
        throw ValidationError(where + " must be an object");
}

void reject_unknown(const json &node, const std::string &where, std::initializer_list<const char *> allowed)
{
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto &[key, value] : node.items())
        if (!keys.contains(key))
            throw ValidationError("unknown key \"" + where + "." + key + "\"");
}

double get_number(const json &node, const std::string &where, const char *key)
{
    const auto it = node.find(key);
    if (it == node.end())
        throw ValidationError("missing \"" + where + "." + key + "\"");
    if (!it->is_number())
        throw ValidationError("\"" + where + "." + key + "\" must be a number");
    const double v = it->get<double>();
    if (!std::isfinite(v))
        throw ValidationError("\"" + where + "." + key + "\" must be finite");
    return v;
}

double get_number_or(const json &node, const std::string &where, const char *key, double fallback)
{
    return node.contains(key) ? get_number(node, where, key) : fallback;
}

std::size_t get_count(const json &node, const std::string &where, const char *key)
{
    const auto it = node.find(key);
    if (it == node.end())
        throw ValidationError("missing \"" + where + "." + key + "\"");
    if (!it->is_number_integer() || it->get<long long>() < 0)
        throw ValidationError("\"" + where + "." + key + "\" must be a non-negative integer");
    return it->get<std::size_t>();
}

std::string get_string(const json &node, const std::string &where, const char *key)
{
    const auto it = node.find(key);
    if (it == node.end())
        throw ValidationError("missing \"" + where + "." + key + "\"");
    if (!it->is_string())
        throw ValidationError("\"" + where + "." + key + "\" must be a string");
    return it->get<std::string>();
}

std::string get_string_or(const json &node, const std::string &where, const char *key, std::string fallback)
{
    return node.contains(key) ? get_string(node, where, key) : fallback;
}

std::filesystem::path resolve(const std::filesystem::path &base, const std::string &p)
{
    const std::filesystem::path path(p);
    return path.is_relative() && !base.empty() ? base / path : path;
}

GridConfig parse_grid(const json &node)
{
    require_object(node, "grid");
    reject_unknown(node, "grid", {"n", "delta_omega", "carrier"});
    GridConfig g;
    g.n = get_count(node, "grid", "n");
    g.delta_omega = get_number(node, "grid", "delta_omega");
    if (node.contains("carrier"))
        g.carrier = get_number(node, "grid", "carrier");
    SampledGrid(g.n, g.delta_omega, g.carrier);
    return g;
}

PulseConfig parse_pulse(const json &node, const std::filesystem::path &base)
{
    require_object(node, "pulse");
    reject_unknown(node, "pulse", {"shape", "sigma", "center", "t0", "file"});
    PulseConfig p;
    p.shape = get_string_or(node, "pulse", "shape", "gaussian");
    if (p.shape == "gaussian")
    {
        p.sigma = get_number(node, "pulse", "sigma");
        if (p.sigma <= 0.0)
            throw ValidationError("pulse.sigma must be positive");
        p.center = get_number_or(node, "pulse", "center", 0.0);
        p.t0 = get_number_or(node, "pulse", "t0", 0.0);
        if (node.contains("file"))
            throw ValidationError("pulse.file only applies to shape \"custom-file\"");
    }
    else if (p.shape == "custom-file")
    {
        p.file = resolve(base, get_string(node, "pulse", "file"));
        for (const char *key : {"sigma", "center", "t0"})
            if (node.contains(key))
                throw ValidationError(std::string("pulse.") + key + " does not apply to shape \"custom-file\"");
    }
    else
        throw ValidationError("pulse.shape must be \"gaussian\" or \"custom-file\"");
    return p;
}

CavityConfig parse_cavity(const json &node)
{
    require_object(node, "cavity");
    reject_unknown(node, "cavity", {"gamma", "delta"});
    CavityConfig c;
    c.gamma = get_number(node, "cavity", "gamma");
    c.delta = get_number_or(node, "cavity", "delta", 0.0);
    CavityParams(c.gamma, c.delta);
    return c;
}

ModulationConfig parse_modulation(const json &node)
{
    require_object(node, "modulation");
    reject_unknown(node, "modulation", {"epsilon", "big_omega", "oracle"});
    ModulationConfig m;
    m.epsilon = get_number(node, "modulation", "epsilon");
    m.big_omega = get_number(node, "modulation", "big_omega");
    ModulationParams(m.epsilon, m.big_omega);
    if (node.contains("oracle"))
    {
        const json &o = node.at("oracle");
        require_object(o, "modulation.oracle");
        reject_unknown(o, "modulation.oracle", {"dt", "window"});
        if (o.contains("dt") && !o.at("dt").is_null())
        {
            m.oracle.dt = get_number(o, "modulation.oracle", "dt");
            if (*m.oracle.dt <= 0.0)
                throw ValidationError("modulation.oracle.dt must be positive");
        }
        if (o.contains("window") && !o.at("window").is_null())
        {
            const json &w = o.at("window");
            if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
                throw ValidationError("modulation.oracle.window must be [t_start, t_end]");
            m.oracle.window = std::make_pair(w[0].get<double>(), w[1].get<double>());
            if (!(m.oracle.window->first < m.oracle.window->second))
                throw ValidationError("modulation.oracle.window needs t_start < t_end");
        }
    }
    return m;
}

CodebookConfig parse_codebook(const json &node, const std::filesystem::path &base)
{
    require_object(node, "codebook");
    reject_unknown(node, "codebook", {"kind", "K", "bin_width", "file", "symbols", "threshold", "input", "channel"});
    CodebookConfig c;
    c.kind = get_string_or(node, "codebook", "kind", "timebin");
    if (c.kind == "timebin")
    {
        c.count = get_count(node, "codebook", "K");
        if (c.count == 0)
            throw ValidationError("codebook.K must be at least 1");
        c.bin_width = get_number(node, "codebook", "bin_width");
        if (c.bin_width <= 0.0)
            throw ValidationError("codebook.bin_width must be positive");
    }
    else if (c.kind == "file")
    {
        c.file = resolve(base, get_string(node, "codebook", "file"));
    }
    else
        throw ValidationError("codebook.kind must be \"timebin\" or \"file\"");

    c.symbols = get_string_or(node, "codebook", "symbols", "");
    for (char ch : c.symbols)
        if (ch != '0' && ch != '1')
            throw ValidationError("codebook.symbols may only contain 0 and 1");
    c.threshold = get_number_or(node, "codebook", "threshold", 0.5);
    if (!(c.threshold > 0.0 && c.threshold < 1.0))
        throw ValidationError("codebook.threshold must lie in (0, 1)");
    if (node.contains("input"))
        c.input = resolve(base, get_string(node, "codebook", "input"));
    if (node.contains("channel"))
    {
        if (!node.at("channel").is_boolean())
            throw ValidationError("codebook.channel must be true or false");
        c.channel = node.at("channel").get<bool>();
    }
    return c;
}

OutputConfig parse_output(const json &node, const std::filesystem::path &base)
{
    require_object(node, "output");
    reject_unknown(node, "output", {"path", "format"});
    OutputConfig o;
    if (node.contains("path"))
        o.path = resolve(base, get_string(node, "output", "path"));
    o.format = get_string_or(node, "output", "format", "csv");
    if (o.format != "csv" && o.format != "json")
        throw ValidationError("output.format must be \"csv\" or \"json\"");
    return o;
}

CheckConfig parse_checks(const json &node)
{
    require_object(node, "checks");
    reject_unknown(node, "checks", {"norm_tolerance", "oracle_tolerance"});
    CheckConfig c;
    c.norm_tolerance = get_number_or(node, "checks", "norm_tolerance", c.norm_tolerance);
    c.oracle_tolerance = get_number_or(node, "checks", "oracle_tolerance", c.oracle_tolerance);
    if (c.norm_tolerance < 0.0 || c.oracle_tolerance < 0.0)
        throw ValidationError("checks tolerances must be non-negative");
    return c;
}

} // namespace

RunConfig parse_config(const json &doc, const std::filesystem::path &base_dir)
{
    require_object(doc, "config");
    reject_unknown(doc, "config", {"grid", "pulse", "cavity", "modulation", "codebook", "output", "checks"});
    if (!doc.contains("grid"))
        throw ValidationError("config needs a \"grid\" section");

    RunConfig cfg;
    cfg.grid = parse_grid(doc.at("grid"));
    if (doc.contains("pulse"))
        cfg.pulse = parse_pulse(doc.at("pulse"), base_dir);
    if (doc.contains("cavity"))
        cfg.cavity = parse_cavity(doc.at("cavity"));
    if (doc.contains("modulation"))
        cfg.modulation = parse_modulation(doc.at("modulation"));
    if (doc.contains("codebook"))
        cfg.codebook = parse_codebook(doc.at("codebook"), base_dir);
    if (doc.contains("output"))
        cfg.output = parse_output(doc.at("output"), base_dir);
    if (doc.contains("checks"))
        cfg.checks = parse_checks(doc.at("checks"));
    return cfg;
}

json load_config_document(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open config " + path.string());
    try
    {
        return json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw ValidationError("config " + path.string() + " is not valid JSON: " + e.what());
    }
}

void apply_override(json &doc, const std::string &dotted_path, const std::string &value)
{
    if (dotted_path.empty())
        throw ValidationError("empty override path");
    json *node = &doc;
    std::size_t start = 0;
    while (true)
    {
        const auto dot = dotted_path.find('.', start);
        const std::string key = dotted_path.substr(start, dot - start);
        if (key.empty())
            throw ValidationError("malformed override path \"" + dotted_path + "\"");
        if (node->is_null())
            *node = json::object();
        if (!node->is_object())
            throw ValidationError("override path \"" + dotted_path + "\" crosses a non-object");
        node = &(*node)[key];
        if (dot == std::string::npos)
            break;
        start = dot + 1;
    }

    if (node->is_string())
    {
        *node = value;
        return;
    }
    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded())
        *node = value;
    else
        *node = std::move(parsed);
}

SweepSpec parse_sweep(const std::string &spec)
{
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ValidationError("sweep must look like path=start:stop:count");
    SweepSpec out;
    out.path = spec.substr(0, eq);

    std::vector<std::string> parts;
    std::stringstream ss(spec.substr(eq + 1));
    std::string part;
    while (std::getline(ss, part, ':'))
        parts.push_back(part);
    if (parts.size() != 3)
        throw ValidationError("sweep range must be start:stop:count");

    double a = 0.0;
    double b = 0.0;
    long long n = 0;
    try
    {
        std::size_t used = 0;
        a = std::stod(parts[0], &used);
        if (used != parts[0].size())
            throw std::invalid_argument("a");
        b = std::stod(parts[1], &used);
        if (used != parts[1].size())
            throw std::invalid_argument("b");
        n = std::stoll(parts[2], &used);
        if (used != parts[2].size())
            throw std::invalid_argument("n");
    }
    catch (const std::exception &)
    {
        throw ValidationError("sweep range \"" + spec.substr(eq + 1) + "\" is not start:stop:count");
    }
    if (n < 1)
        throw ValidationError("sweep count must be at least 1");
    for (long long i = 0; i < n; ++i)
        out.values.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

} // namespace photon_shaper::cli
