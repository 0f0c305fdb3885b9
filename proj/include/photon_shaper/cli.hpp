#ifndef PHOTON_SHAPER_CLI_HPP
#define PHOTON_SHAPER_CLI_HPP

// Batch front end: `photon-shaper {pulse|cavity|fm|code} --config FILE ...`.
//
// Exit codes: 0 success, 2 invalid configuration or input, 3 numerical failure
// (conservation or convergence check breached).

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace photon_shaper::cli
{
enum ExitCode : int
{
    kSuccess = 0,
    kInternalError = 1,
    kInvalidConfig = 2,
    kNumericalFailure = 3,
};

struct GridConfig
{
    std::size_t n = 0;
    double delta_omega = 0.0;
    std::optional<double> carrier;
};

struct PulseConfig
{
    std::string shape = "gaussian"; // gaussian | custom-file
    double sigma = 1.0;
    double center = 0.0; // spectral center (rad/s, rotating frame)
    double t0 = 0.0;     // temporal center
    std::filesystem::path file;
};

struct CavityConfig
{
    double gamma = 1.0;
    double delta = 0.0;
};

struct OracleSettings
{
    std::optional<double> dt;
    std::optional<std::pair<double, double>> window;
};

struct ModulationConfig
{
    double epsilon = 0.0;
    double big_omega = 1.0;
    OracleSettings oracle;
};

struct CodebookConfig
{
    std::string kind = "timebin"; // timebin | file
    std::size_t count = 0;
    double bin_width = 0.0;
    std::filesystem::path file;
    std::string symbols;
    double threshold = 0.5;
    std::filesystem::path input; // state to decode
    bool channel = false;        // pass encoded states through the cavity
};

struct OutputConfig
{
    std::filesystem::path path = "out";
    std::string format = "csv"; // csv | json
};

struct CheckConfig
{
    double norm_tolerance = 1e-6;   // cavity output norm drift
    double oracle_tolerance = 1e-4; // oracle conservation residual
};

struct RunConfig
{
    GridConfig grid;
    std::optional<PulseConfig> pulse;
    std::optional<CavityConfig> cavity;
    std::optional<ModulationConfig> modulation;
    std::optional<CodebookConfig> codebook;
    OutputConfig output;
    CheckConfig checks;
};

// Validates the document: unknown keys, wrong types and module-level
// invariants all raise ValidationError. Relative file paths are resolved
// against base_dir.
RunConfig parse_config(const nlohmann::json &doc, const std::filesystem::path &base_dir = {});

nlohmann::json load_config_document(const std::filesystem::path &path);

// Sets "a.b.c" to value. The value is parsed as JSON unless the existing
// entry is a string or the text is not valid JSON.
void apply_override(nlohmann::json &doc, const std::string &dotted_path, const std::string &value);

struct SweepSpec
{
    std::string path;
    std::vector<double> values;
};

// "path=a:b:n" -> n values evenly spaced from a to b inclusive.
SweepSpec parse_sweep(const std::string &spec);

// A named block of columns, written as <name>.csv or as a JSON member.
struct Table
{
    using Cell = std::variant<double, long long, std::string>;

    std::string name;
    std::vector<std::string> headers;
    std::vector<std::vector<Cell>> rows;
};

struct CommandOutput
{
    std::vector<Table> tables;
    std::vector<std::pair<std::string, std::string>> raw_files; // name, content
    std::vector<std::string> messages;                          // stdout lines
};

CommandOutput cmd_pulse(const RunConfig &cfg);
CommandOutput cmd_cavity(const RunConfig &cfg);
CommandOutput cmd_fm(const RunConfig &cfg, const std::string &method);
CommandOutput cmd_code(const RunConfig &cfg, const std::string &action);

// Writes tables as CSV files or as one <command>.json, plus raw files.
void write_output(const CommandOutput &output, const std::filesystem::path &dir, const std::string &format,
                  const std::string &command);

struct Invocation
{
    std::string command;
    std::filesystem::path config;
    std::optional<std::filesystem::path> out;
    std::string method = "oracle";
    std::string action = "roundtrip";
    std::vector<std::string> overrides;
    std::optional<std::string> sweep;
};

// Runs one invocation (including sweeps) and returns the process exit code.
int execute(const Invocation &inv, std::ostream &out, std::ostream &err);

// Full command-line entry point.
int run(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace photon_shaper::cli

#endif // PHOTON_SHAPER_CLI_HPP
