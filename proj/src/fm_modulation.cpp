#include "photon_shaper/fm_modulation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "photon_shaper/rk4.hpp"

namespace photon_shaper
{
ModulationParams::ModulationParams(double epsilon, double big_omega) : epsilon_(epsilon), big_omega_(big_omega)
{
    if (!std::isfinite(epsilon_) || epsilon_ < 0.0)
        throw ValidationError("modulation depth epsilon must be finite and >= 0");
    if (!std::isfinite(big_omega_) || big_omega_ <= 0.0)
        throw ValidationError("modulation frequency Omega must be finite and > 0");
}

namespace
{
std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

// Number of grid bins in Omega; throws unless Omega sits on the grid.
std::ptrdiff_t sideband_shift(const SampledGrid &grid, const ModulationParams &m)
{
    const double bins = m.big_omega() / grid.delta_omega();
    const double rounded = std::round(bins);
    if (std::abs(bins - rounded) > 1e-6 * std::max(1.0, rounded))
        throw ValidationError("Omega = " + fmt(m.big_omega()) + " is not a multiple of delta_omega = " +
                              fmt(grid.delta_omega()));
    return static_cast<std::ptrdiff_t>(rounded);
}

void check_perturbative_preconditions(const CavityParams &p, const ModulationParams &m, const SpectralAmplitude &nu)
{
    if (p.delta() != 0.0)
        throw ValidationError("perturbative FM spectra assume the carrier at cavity resonance (delta = 0)");
    const double width = moments(power(nu)).rms_width;
    if (width > m.big_omega() / 4.0)
        throw ValidationError("pulse spectral RMS width " + fmt(width) + " is not small against Omega = " +
                              fmt(m.big_omega()));
}

double shifted_power(const SpectralAmplitude &nu, std::size_t j, std::ptrdiff_t shift)
{
    const auto src = static_cast<std::ptrdiff_t>(j) - shift;
    if (src < 0 || src >= static_cast<std::ptrdiff_t>(nu.size()))
        return 0.0;
    return std::norm(nu[static_cast<std::size_t>(src)]);
}

// |chi(omega)|^2 = 1 / (gamma^2/4 + omega^2)
double susceptibility_sq(double gamma, double omega)
{
    return 1.0 / (gamma * gamma / 4.0 + omega * omega);
}

} // namespace

IntensitySpectrum perturbative_spectrum_paper(const CavityParams &p, const ModulationParams &m,
                                              const SpectralAmplitude &nu)
{
    check_perturbative_preconditions(p, m, nu);
    const auto shift = sideband_shift(nu.grid(), m);
    const double g = p.gamma();
    std::vector<double> out(nu.size());
    for (std::size_t j = 0; j < out.size(); ++j)
    {
        const double w = nu.coordinate(j);
        const double weight = m.epsilon() * g * susceptibility_sq(g, w);
        out[j] = weight * weight * shifted_power(nu, j, shift) + std::norm(nu[j]);
    }
    return IntensitySpectrum(nu.grid(), std::move(out));
}

IntensitySpectrum perturbative_spectrum_two_sideband(const CavityParams &p, const ModulationParams &m,
                                                     const SpectralAmplitude &nu)
{
    check_perturbative_preconditions(p, m, nu);
    const auto shift = sideband_shift(nu.grid(), m);
    const double g = p.gamma();
    const double half_eps = m.epsilon() / 2.0;
    const double big_omega = static_cast<double>(shift) * nu.grid().delta_omega();
    std::vector<double> out(nu.size());
    for (std::size_t j = 0; j < out.size(); ++j)
    {
        const double w = nu.coordinate(j);
        const double outer = g * g * half_eps * half_eps * susceptibility_sq(g, w);
        const double upper = susceptibility_sq(g, w - big_omega) * shifted_power(nu, j, shift);
        const double lower = susceptibility_sq(g, w + big_omega) * shifted_power(nu, j, -shift);
        out[j] = outer * (upper + lower) + std::norm(nu[j]);
    }
    return IntensitySpectrum(nu.grid(), std::move(out));
}

double OracleConfig::max_step(const SampledGrid &grid, const CavityParams &p, const ModulationParams &m)
{
    return std::min({0.01 * kTwoPi / m.big_omega(), 0.01 * 2.0 / p.gamma(), 0.1 * grid.delta_t()});
}

OracleConfig OracleConfig::automatic(const SampledGrid &grid, const CavityParams &p, const ModulationParams &m)
{
    const double limit = max_step(grid, p, m);
    const double substeps = std::ceil(grid.delta_t() / limit * (1.0 - 1e-12));
    OracleConfig cfg;
    cfg.dt = grid.delta_t() / substeps;
    cfg.t_start = grid.time(0);
    cfg.t_end = grid.time(grid.n_points() - 1);
    return cfg;
}

namespace
{
struct Window
{
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t substeps = 0;
};

Window resolve_window(const OracleConfig &cfg, const SampledGrid &grid)
{
    const double dt_grid = grid.delta_t();
    const double ratio = dt_grid / cfg.dt;
    const double substeps = std::round(ratio);
    if (substeps < 1.0 || std::abs(ratio - substeps) > 1e-9 * substeps)
        throw ValidationError("oracle step " + fmt(cfg.dt) + " must divide the grid time step " + fmt(dt_grid));

    const double tol = 1e-9 * dt_grid;
    if (!(cfg.t_start < cfg.t_end))
        throw ValidationError("oracle window must have t_start < t_end");
    if (cfg.t_start < grid.time(0) - tol || cfg.t_end > grid.time(grid.n_points() - 1) + tol)
        throw ValidationError("oracle window [" + fmt(cfg.t_start) + ", " + fmt(cfg.t_end) +
                              "] exceeds the grid time span");

    Window w;
    w.first = grid.nearest_time_index(cfg.t_start);
    if (grid.time(w.first) < cfg.t_start - tol)
        ++w.first;
    w.last = grid.nearest_time_index(cfg.t_end);
    if (grid.time(w.last) > cfg.t_end + tol)
        --w.last;
    if (w.last <= w.first)
        throw ValidationError("oracle window contains fewer than two grid samples");
    w.substeps = static_cast<std::size_t>(substeps);
    return w;
}

// Smallest [t_lo, t_hi] outside of which the input carries at most
// kSupportTail of its probability on each side.
std::pair<double, double> pulse_support(const TimeAmplitude &nu_t)
{
    const auto n = power(nu_t);
    double total = 0.0;
    for (double v : n.values())
        total += v;
    const double tail = OracleConfig::kSupportTail * total;

    std::size_t lo = 0;
    double acc = 0.0;
    for (; lo < n.size(); ++lo)
    {
        acc += n[lo];
        if (acc > tail)
            break;
    }
    std::size_t hi = n.size() - 1;
    acc = 0.0;
    for (; hi > 0; --hi)
    {
        acc += n[hi];
        if (acc > tail)
            break;
    }
    return {nu_t.coordinate(lo), nu_t.coordinate(hi)};
}

} // namespace

void OracleConfig::validate(const CavityParams &p, const ModulationParams &m, const SpectralAmplitude &nu) const
{
    if (!std::isfinite(dt) || dt <= 0.0)
        throw ValidationError("oracle step dt must be positive");
    const double limit = max_step(nu.grid(), p, m);
    if (dt > limit * (1.0 + 1e-12))
        throw ValidationError("oracle step " + fmt(dt) + " exceeds the step rule limit " + fmt(limit));
    resolve_window(*this, nu.grid());

    const auto [lo, hi] = pulse_support(to_time(nu));
    if (t_start > lo)
        throw ValidationError("oracle window starts at " + fmt(t_start) + " after the input pulse begins (" +
                              fmt(lo) + ")");
    const double needed = hi + kRingDownTimes / p.gamma();
    if (t_end < needed)
        throw ValidationError("oracle window ends at " + fmt(t_end) + ", ring-down needs t_end >= " + fmt(needed));
}

OracleResult oracle_simulate(const CavityParams &p, const ModulationParams &m, const SpectralAmplitude &nu,
                             const OracleConfig &cfg)
{
    cfg.validate(p, m, nu);
    const SampledGrid &grid = nu.grid();
    const Window window = resolve_window(cfg, grid);

    // Drive sampled on a grid of half steps, so every RK4 stage lands on a sample.
    const std::size_t refine = 2 * window.substeps;
    const std::vector<Complex> drive = refined_time_samples(nu, refine);
    const TimeAmplitude nu_t = to_time(nu);

    const double h = cfg.dt;
    const double origin = grid.time(0);
    const double half_step = grid.delta_t() / static_cast<double>(refine);
    const double sqrt_gamma = std::sqrt(p.gamma());
    const Complex decay(p.gamma() / 2.0, p.delta());
    const double eps = m.epsilon();
    const double big_omega = m.big_omega();

    auto system = [&](double t, const Complex &alpha) {
        const auto idx = static_cast<std::size_t>(std::llround((t - origin) / half_step));
        const Complex rate = decay + Complex(0.0, eps * std::cos(big_omega * t));
        return -rate * alpha + sqrt_gamma * drive[idx];
    };

    std::vector<Complex> out(grid.n_points());
    for (std::size_t j = 0; j < window.first; ++j)
        out[j] = -nu_t[j];

    Complex alpha = 0.0;
    std::size_t steps = 0;
    for (std::size_t j = window.first; j <= window.last; ++j)
    {
        out[j] = sqrt_gamma * alpha - nu_t[j];
        if (j == window.last)
            break;
        const std::size_t base = j * refine;
        for (std::size_t s = 0; s < window.substeps; ++s)
        {
            // Times are rebuilt from indices so the drive lookup never accumulates round-off.
            const double t = origin + static_cast<double>(base + 2 * s) * half_step;
            alpha = rk4_step(system, alpha, t, h);
            ++steps;
        }
    }
    for (std::size_t j = window.last + 1; j < grid.n_points(); ++j)
        out[j] = -nu_t[j];

    OracleResult result{to_freq(TimeAmplitude(grid, std::move(out)))};
    result.input_norm_squared = norm_squared(nu);
    result.output_norm_squared = norm_squared(result.nu_out);
    result.residual_intracavity = std::norm(alpha);
    result.conservation_residual = std::abs(result.output_norm_squared - result.input_norm_squared);
    result.steps = steps;
    if (!(result.conservation_residual <= kOracleDriftLimit))
        throw NumericalError("oracle photon-number drift " + fmt(result.conservation_residual) +
                             " exceeds " + fmt(kOracleDriftLimit));
    return result;
}

SidebandReport sideband_report(const IntensitySpectrum &spectrum, const ModulationParams &m)
{
    return sideband_report(spectrum, m, m.big_omega() / 2.0);
}

SidebandReport sideband_report(const IntensitySpectrum &spectrum, const ModulationParams &m, double half_width)
{
    const double big_omega = m.big_omega();
    if (!(half_width > 0.0) || half_width > big_omega / 2.0 * (1.0 + 1e-12))
        throw ValidationError("sideband windows of half-width " + fmt(half_width) + " overlap for Omega = " +
                              fmt(big_omega));

    // Half-open windows [c - h, c + h); the small shift keeps on-grid edges deterministic.
    const double edge_tol = 1e-9 * spectrum.grid().delta_omega();
    auto inside = [&](double w, double center) {
        return w >= center - half_width - edge_tol && w < center + half_width - edge_tol;
    };

    SidebandReport r;
    double carrier_first = 0.0;
    double carrier_second = 0.0;
    for (std::size_t j = 0; j < spectrum.size(); ++j)
    {
        const double w = spectrum.coordinate(j);
        const double v = spectrum[j];
        r.total_mass += v;
        if (inside(w, 0.0))
        {
            r.carrier_mass += v;
            carrier_first += v * w;
            carrier_second += v * w * w;
        }
        else if (inside(w, big_omega))
            r.upper_mass += v;
        else if (inside(w, -big_omega))
            r.lower_mass += v;
    }
    if (r.carrier_mass > 0.0)
    {
        const double mean = carrier_first / r.carrier_mass;
        const double rms = std::sqrt(std::max(0.0, carrier_second / r.carrier_mass - mean * mean));
        if (big_omega < 4.0 * rms)
            throw ValidationError("carrier RMS width " + fmt(rms) + " too large for sidebands at Omega = " +
                                  fmt(big_omega));
    }
    const double dw = spectrum.spacing();
    r.carrier_mass *= dw;
    r.upper_mass *= dw;
    r.lower_mass *= dw;
    r.total_mass *= dw;
    return r;
}

} // namespace photon_shaper
