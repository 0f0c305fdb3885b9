#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "photon_shaper/cli.hpp"
#include "photon_shaper/errors.hpp"
#include "photon_shaper/state_io.hpp"

namespace photon_shaper::cli
{
using nlohmann::json;
using nlohmann::ordered_json;

namespace
{
std::string cell_text(const Table::Cell &cell)
{
    if (const auto *d = std::get_if<double>(&cell))
        return format_number(*d);
    if (const auto *i = std::get_if<long long>(&cell))
        return std::to_string(*i);
    return std::get<std::string>(cell);
}

ordered_json cell_json(const Table::Cell &cell)
{
    if (const auto *d = std::get_if<double>(&cell))
        return *d;
    if (const auto *i = std::get_if<long long>(&cell))
        return *i;
    const auto &s = std::get<std::string>(cell);
    return s.empty() ? ordered_json(nullptr) : ordered_json(s);
}

void write_file(const std::filesystem::path &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write " + path.string());
    out << content;
}

} // namespace

void write_output(const CommandOutput &output, const std::filesystem::path &dir, const std::string &format,
                  const std::string &command)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw ValidationError("cannot create output directory " + dir.string() + ": " + ec.message());

    if (format == "json")
    {
        ordered_json doc = ordered_json::object();
        for (const auto &table : output.tables)
        {
            ordered_json cols = ordered_json::object();
            for (std::size_t c = 0; c < table.headers.size(); ++c)
            {
                ordered_json column = ordered_json::array();
                for (const auto &row : table.rows)
                    column.push_back(cell_json(row[c]));
                cols[table.headers[c]] = std::move(column);
            }
            doc[table.name] = std::move(cols);
        }
        write_file(dir / (command + ".json"), doc.dump(1) + "\n");
    }
    else
    {
        for (const auto &table : output.tables)
        {
            std::string text;
            for (std::size_t c = 0; c < table.headers.size(); ++c)
                text += (c ? "," : "") + table.headers[c];
            text += '\n';
            for (const auto &row : table.rows)
            {
                for (std::size_t c = 0; c < row.size(); ++c)
                {
                    if (c)
                        text += ',';
                    text += cell_text(row[c]);
                }
                text += '\n';
            }
            write_file(dir / (table.name + ".csv"), text);
        }
    }
    for (const auto &[name, content] : output.raw_files)
        write_file(dir / name, content);
}

namespace
{
CommandOutput dispatch(const Invocation &inv, const RunConfig &cfg)
{
    if (inv.command == "pulse")
        return cmd_pulse(cfg);
    if (inv.command == "cavity")
        return cmd_cavity(cfg);
    if (inv.command == "fm")
        return cmd_fm(cfg, inv.method);
    if (inv.command == "code")
        return cmd_code(cfg, inv.action);
    throw ValidationError("unknown command \"" + inv.command + "\"");
}

struct JobResult
{
    int code = kSuccess;
    std::string out;
    std::string err;
};

JobResult run_job(const Invocation &inv, const json &doc, const std::filesystem::path &base_dir,
                  const std::optional<std::filesystem::path> &out_dir)
{
    JobResult r;
    try
    {
        const RunConfig cfg = parse_config(doc, base_dir);
        const auto output = dispatch(inv, cfg);
        const auto dir = out_dir ? *out_dir : cfg.output.path;
        write_output(output, dir, cfg.output.format, inv.command);
        for (const auto &m : output.messages)
            (m.rfind("warning:", 0) == 0 ? r.err : r.out) += m + "\n";
    }
    catch (const NumericalError &e)
    {
        r.code = kNumericalFailure;
        r.err += std::string("numerical failure: ") + e.what() + "\n";
    }
    catch (const ValidationError &e)
    {
        r.code = kInvalidConfig;
        r.err += std::string("invalid configuration: ") + e.what() + "\n";
    }
    catch (const json::exception &e)
    {
        r.code = kInvalidConfig;
        r.err += std::string("invalid configuration: ") + e.what() + "\n";
    }
    catch (const std::exception &e)
    {
        r.code = kInternalError;
        r.err += std::string("error: ") + e.what() + "\n";
    }
    return r;
}

std::size_t sweep_threads(std::size_t jobs)
{
    std::size_t limit = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("PHOTON_SHAPER_THREADS"))
    {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1)
            limit = static_cast<std::size_t>(v);
    }
    return std::min(limit, jobs);
}

std::string sweep_dir_name(std::size_t index)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "sweep_%03zu", index);
    return buf;
}

} // namespace

int execute(const Invocation &inv, std::ostream &out, std::ostream &err)
{
    json doc;
    std::optional<SweepSpec> sweep;
    try
    {
        doc = load_config_document(inv.config);
        for (const auto &o : inv.overrides)
        {
            const auto eq = o.find('=');
            if (eq == std::string::npos)
                throw ValidationError("override \"" + o + "\" must look like path=value");
            apply_override(doc, o.substr(0, eq), o.substr(eq + 1));
        }
        if (inv.sweep)
            sweep = parse_sweep(*inv.sweep);
    }
    catch (const ValidationError &e)
    {
        err << "invalid configuration: " << e.what() << "\n";
        return kInvalidConfig;
    }
    const auto base_dir = inv.config.parent_path();

    if (!sweep)
    {
        const auto r = run_job(inv, doc, base_dir, inv.out);
        out << r.out;
        err << r.err;
        return r.code;
    }

    // Sweep jobs write into <out>/sweep_NNN; the base output path comes from --out or the config.
    std::filesystem::path root;
    try
    {
        root = inv.out ? *inv.out : parse_config(doc, base_dir).output.path;
    }
    catch (const ValidationError &e)
    {
        err << "invalid configuration: " << e.what() << "\n";
        return kInvalidConfig;
    }

    const std::size_t jobs = sweep->values.size();
    std::vector<JobResult> results(jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs; i = next++)
        {
            json job_doc = doc;
            try
            {
                apply_override(job_doc, sweep->path, format_number(sweep->values[i]));
            }
            catch (const ValidationError &e)
            {
                results[i] = JobResult{kInvalidConfig, "", std::string("invalid configuration: ") + e.what() + "\n"};
                continue;
            }
            results[i] = run_job(inv, job_doc, base_dir, root / sweep_dir_name(i));
        }
    };
    std::vector<std::thread> pool;
    const std::size_t threads = sweep_threads(jobs);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();

    int code = kSuccess;
    std::string index = "index,value,exit_code\n";
    for (std::size_t i = 0; i < jobs; ++i)
    {
        out << "[" << sweep_dir_name(i) << " " << sweep->path << "=" << format_number(sweep->values[i]) << "]\n"
            << results[i].out;
        err << results[i].err;
        code = std::max(code, results[i].code);
        index += std::to_string(i) + "," + format_number(sweep->values[i]) + "," + std::to_string(results[i].code) + "\n";
    }
    try
    {
        std::filesystem::create_directories(root);
        write_file(root / "sweep.csv", index);
    }
    catch (const std::exception &e)
    {
        err << "invalid configuration: " << e.what() << "\n";
        return kInvalidConfig;
    }
    return code;
}

int run(int argc, char **argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Single-photon pulse shaping simulations", "photon-shaper"};
    Invocation inv;
    std::string config;
    std::string out_dir;

    app.add_option("command", inv.command, "pulse | cavity | fm | code")
        ->required()
        ->check(CLI::IsMember({"pulse", "cavity", "fm", "code"}));
    app.add_option("--config", config, "JSON run configuration")->required();
    app.add_option("--out", out_dir, "output directory (overrides output.path)");
    app.add_option("--method", inv.method, "fm method: paper | two_sideband | oracle")
        ->check(CLI::IsMember({"paper", "two_sideband", "oracle"}));
    app.add_option("--action", inv.action, "code action: encode | decode | roundtrip | crosstalk")
        ->check(CLI::IsMember({"encode", "decode", "roundtrip", "crosstalk"}));
    app.add_option("--set", inv.overrides, "override a config entry, e.g. --set cavity.gamma=2");
    auto *sweep = app.add_option("--sweep", "run jobs over path=start:stop:count concurrently");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInvalidConfig;
    }

    inv.config = config;
    if (!out_dir.empty())
        inv.out = std::filesystem::path(out_dir);
    if (sweep->count() > 0)
        inv.sweep = sweep->as<std::string>();
    return execute(inv, out, err);
}

} // namespace photon_shaper::cli
