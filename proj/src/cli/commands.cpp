#include <cmath>
#include <sstream>

#include "photon_shaper/cavity_filter.hpp"
#include "photon_shaper/cli.hpp"
#include "photon_shaper/fm_modulation.hpp"
#include "photon_shaper/photon_states.hpp"
#include "photon_shaper/pulse_codes.hpp"
#include "photon_shaper/specgrid.hpp"
#include "photon_shaper/state_io.hpp"

namespace photon_shaper::cli
{
namespace
{
SampledGrid make_grid(const RunConfig &cfg)
{
    return SampledGrid(cfg.grid.n, cfg.grid.delta_omega, cfg.grid.carrier);
}

template <class T>
const T &require_section(const std::optional<T> &section, const char *name, const char *command)
{
    if (!section)
        throw ValidationError(std::string("command \"") + command + "\" needs a \"" + name + "\" section");
    return *section;
}

SinglePhotonState make_pulse(const RunConfig &cfg, const SampledGrid &grid, const char *command,
                             CommandOutput &out)
{
    const auto &pulse = require_section(cfg.pulse, "pulse", command);
    SpectralAmplitude nu = pulse.shape == "gaussian" ? gaussian_amplitude(grid, pulse.sigma, pulse.center, pulse.t0)
                                                     : load_state(pulse.file);
    require_same_grid(grid, nu.grid(), "pulse file vs config grid");
    auto state = SinglePhotonState::from_unnormalized(nu);

    const auto res = check_resolution(state.amplitude());
    if (!res.resolved)
        out.messages.push_back("warning: pulse not resolved on grid (spectral rms " + format_number(res.spectral_rms) +
                               ", temporal rms " + format_number(res.temporal_rms) + ")");
    return state;
}

CavityParams make_cavity(const RunConfig &cfg, const char *command)
{
    const auto &c = require_section(cfg.cavity, "cavity", command);
    return CavityParams(c.gamma, c.delta);
}

Table time_table(const std::string &name, const TimeAmplitude &nu_t)
{
    Table t{name, {"t", "re_nu", "im_nu", "n"}, {}};
    t.rows.reserve(nu_t.size());
    for (std::size_t j = 0; j < nu_t.size(); ++j)
        t.rows.push_back({nu_t.coordinate(j), nu_t[j].real(), nu_t[j].imag(), std::norm(nu_t[j])});
    return t;
}

} // namespace

CommandOutput cmd_pulse(const RunConfig &cfg)
{
    CommandOutput out;
    const SampledGrid grid = make_grid(cfg);
    const auto state = make_pulse(cfg, grid, "pulse", out);

    out.tables.push_back(time_table("pulse_time", to_time(state.amplitude())));
    const auto spectrum = intensity_spectrum(state);
    Table spec{"pulse_spectrum", {"omega", "intensity"}, {}};
    for (std::size_t j = 0; j < spectrum.size(); ++j)
        spec.rows.push_back({spectrum.coordinate(j), spectrum[j]});
    out.tables.push_back(std::move(spec));

    const auto stats = pulse_stats(count_rate(state));
    out.messages.push_back("pulse: mean_time " + format_number(stats.mean_time) + ", rms_width " +
                           format_number(stats.rms_width));
    return out;
}

CommandOutput cmd_cavity(const RunConfig &cfg)
{
    CommandOutput out;
    const SampledGrid grid = make_grid(cfg);
    const auto input = make_pulse(cfg, grid, "cavity", out);
    const CavityParams cavity = make_cavity(cfg, "cavity");

    const SpectralAmplitude filtered = apply(cavity, input.amplitude());
    const double drift = std::abs(norm_squared(filtered) - 1.0);
    if (!(drift <= cfg.checks.norm_tolerance))
        throw NumericalError("cavity output norm drift " + format_number(drift) + " exceeds " +
                             format_number(cfg.checks.norm_tolerance));
    const SinglePhotonState output(filtered);

    const auto n_in = count_rate(input);
    const auto n_out = count_rate(output);
    Table time{"cavity_time", {"t", "n_in", "n_out"}, {}};
    for (std::size_t j = 0; j < grid.n_points(); ++j)
        time.rows.push_back({grid.time(j), n_in[j], n_out[j]});

    const auto i_in = intensity_spectrum(input);
    const auto i_out = intensity_spectrum(output);
    Table spectrum{"cavity_spectrum", {"omega", "intensity_in", "intensity_out"}, {}};
    for (std::size_t j = 0; j < grid.n_points(); ++j)
        spectrum.rows.push_back({grid.omega(j), i_in[j], i_out[j]});

    const auto s_in = pulse_stats(n_in);
    const auto s_out = pulse_stats(n_out);
    const double delay = s_out.mean_time - s_in.mean_time;
    const double broadening = s_out.rms_width - s_in.rms_width;
    Table stats{"cavity_stats",
                {"mean_time_in", "rms_width_in", "mean_time_out", "rms_width_out", "delay", "broadening", "norm_drift"},
                {{s_in.mean_time, s_in.rms_width, s_out.mean_time, s_out.rms_width, delay, broadening, drift}}};

    out.tables.push_back(std::move(time));
    out.tables.push_back(std::move(spectrum));
    out.tables.push_back(std::move(stats));
    out.messages.push_back("cavity: delay " + format_number(delay) + ", broadening " + format_number(broadening));
    return out;
}

CommandOutput cmd_fm(const RunConfig &cfg, const std::string &method)
{
    CommandOutput out;
    const SampledGrid grid = make_grid(cfg);
    const auto input = make_pulse(cfg, grid, "fm", out);
    const CavityParams cavity = make_cavity(cfg, "fm");
    const auto &mc = require_section(cfg.modulation, "modulation", "fm");
    const ModulationParams mod(mc.epsilon, mc.big_omega);

    std::optional<OracleResult> oracle;
    std::optional<IntensitySpectrum> spectrum;
    if (method == "paper")
        spectrum = perturbative_spectrum_paper(cavity, mod, input.amplitude());
    else if (method == "two_sideband")
        spectrum = perturbative_spectrum_two_sideband(cavity, mod, input.amplitude());
    else if (method == "oracle")
    {
        OracleConfig oc = OracleConfig::automatic(grid, cavity, mod);
        if (mc.oracle.dt)
            oc.dt = *mc.oracle.dt;
        if (mc.oracle.window)
        {
            oc.t_start = mc.oracle.window->first;
            oc.t_end = mc.oracle.window->second;
        }
        oracle = oracle_simulate(cavity, mod, input.amplitude(), oc);
        if (!(oracle->conservation_residual <= cfg.checks.oracle_tolerance))
            throw NumericalError("oracle conservation residual " + format_number(oracle->conservation_residual) +
                                 " exceeds " + format_number(cfg.checks.oracle_tolerance));
        spectrum = power(oracle->nu_out);
    }
    else
        throw ValidationError("unknown fm method \"" + method + "\" (paper, two_sideband, oracle)");

    const auto input_spectrum = intensity_spectrum(input);
    Table spec{"fm_spectrum", {"omega", "input_intensity", "intensity"}, {}};
    for (std::size_t j = 0; j < grid.n_points(); ++j)
        spec.rows.push_back({grid.omega(j), input_spectrum[j], (*spectrum)[j]});

    const auto report = sideband_report(*spectrum, mod);
    // A single photon has no coherent part: <psi|a_o(omega)|psi> = 0 for every method.
    const double mean_field_peak = 0.0;
    Table summary{"fm_summary",
                  {"method", "carrier_mass", "upper_mass", "lower_mass", "total_mass", "mean_field",
                   "conservation_residual", "residual_intracavity", "steps"},
                  {}};
    if (oracle)
        summary.rows.push_back({method, report.carrier_mass, report.upper_mass, report.lower_mass, report.total_mass,
                                mean_field_peak, oracle->conservation_residual, oracle->residual_intracavity,
                                static_cast<long long>(oracle->steps)});
    else
        summary.rows.push_back({method, report.carrier_mass, report.upper_mass, report.lower_mass, report.total_mass,
                                mean_field_peak, std::string(), std::string(), 0LL});

    out.tables.push_back(std::move(spec));
    out.tables.push_back(std::move(summary));
    std::string line = "fm[" + method + "]: carrier " + format_number(report.carrier_mass) + ", upper " +
                       format_number(report.upper_mass) + ", lower " + format_number(report.lower_mass);
    if (oracle)
        line += ", residual " + format_number(oracle->conservation_residual);
    out.messages.push_back(line);
    return out;
}

namespace
{
CodeBook make_codebook(const CodebookConfig &c, const SampledGrid &grid)
{
    if (c.kind == "timebin")
        return make_timebin_codebook(grid, c.count, c.bin_width);
    CodeBook book = load_codebook(c.file);
    require_same_grid(grid, book.grid(), "codebook file vs config grid");
    return book;
}

SymbolVector configured_symbols(const CodebookConfig &c, const CodeBook &book)
{
    if (c.symbols.empty())
        throw ValidationError("codebook.symbols is required for this action");
    auto s = SymbolVector::from_string(c.symbols);
    if (s.size() != book.size())
        throw ValidationError("codebook.symbols has " + std::to_string(s.size()) + " bits, codebook has K = " +
                              std::to_string(book.size()));
    return s;
}

} // namespace

CommandOutput cmd_code(const RunConfig &cfg, const std::string &action)
{
    CommandOutput out;
    const SampledGrid grid = make_grid(cfg);
    const auto &cc = require_section(cfg.codebook, "codebook", "code");
    const CodeBook book = make_codebook(cc, grid);

    std::optional<CavityParams> channel;
    if (cc.channel || action == "crosstalk")
        channel = make_cavity(cfg, "code");

    auto transmit = [&](const SymbolVector &s) {
        const SinglePhotonState encoded = encode(book, s);
        return channel && cc.channel ? apply(*channel, encoded.amplitude()) : encoded.amplitude();
    };

    if (action == "encode")
    {
        const auto s = configured_symbols(cc, book);
        const SpectralAmplitude nu = transmit(s);
        out.tables.push_back(time_table("code_time", to_time(nu)));
        std::ostringstream state;
        write_state(state, nu);
        out.raw_files.emplace_back("code_state.txt", state.str());
        std::ostringstream cb;
        write_codebook(cb, book);
        out.raw_files.emplace_back("codebook.txt", cb.str());
        out.messages.push_back("encoded " + s.to_string());
    }
    else if (action == "decode")
    {
        const SpectralAmplitude nu = cc.input.empty() ? transmit(configured_symbols(cc, book)) : load_state(cc.input);
        const auto d = decode(book, nu, cc.threshold);
        Table t{"code_decode", {"k", "re_overlap", "im_overlap", "probability", "bit"}, {}};
        for (std::size_t k = 0; k < book.size(); ++k)
            t.rows.push_back({static_cast<long long>(k), d.overlaps[k].real(), d.overlaps[k].imag(),
                              std::norm(d.overlaps[k]), static_cast<long long>(d.bits.bit(k))});
        out.tables.push_back(std::move(t));
        out.messages.push_back("decoded bits " + d.bits.to_string());
    }
    else if (action == "roundtrip")
    {
        if (book.size() > 16)
            throw ValidationError("roundtrip enumerates 2^K - 1 symbol vectors; K must be <= 16");
        const unsigned long total = (1UL << book.size()) - 1;
        Table t{"code_roundtrip", {"symbols", "decoded", "result"}, {}};
        unsigned long passed = 0;
        for (unsigned long v = 1; v <= total; ++v)
        {
            const auto s = SymbolVector::from_index(v, book.size());
            const auto d = decode(book, transmit(s), cc.threshold);
            const bool ok = d.bits == s;
            passed += ok ? 1 : 0;
            t.rows.push_back({s.to_string(), d.bits.to_string(), std::string(ok ? "pass" : "fail")});
        }
        out.tables.push_back(std::move(t));
        out.messages.push_back("roundtrip: " + std::to_string(passed) + "/" + std::to_string(total) + " pass");
    }
    else if (action == "crosstalk")
    {
        const auto r = crosstalk_matrix(book, *channel);
        Table m{"code_crosstalk", {"k", "l", "re", "im"}, {}};
        for (Eigen::Index k = 0; k < r.matrix.rows(); ++k)
            for (Eigen::Index l = 0; l < r.matrix.cols(); ++l)
                m.rows.push_back({static_cast<long long>(k), static_cast<long long>(l), r.matrix(k, l).real(),
                                  r.matrix(k, l).imag()});
        Table c{"code_crosstalk_columns", {"l", "column_norm", "channel_norm", "leakage"}, {}};
        for (std::size_t l = 0; l < r.column_norms.size(); ++l)
            c.rows.push_back({static_cast<long long>(l), r.column_norms[l], r.channel_norms[l], r.leakage[l]});
        out.tables.push_back(std::move(m));
        out.tables.push_back(std::move(c));
        out.messages.push_back("crosstalk: " + std::to_string(book.size()) + "x" + std::to_string(book.size()) +
                               " matrix written");
    }
    else
        throw ValidationError("unknown code action \"" + action + "\" (encode, decode, roundtrip, crosstalk)");
    return out;
}

} // namespace photon_shaper::cli
