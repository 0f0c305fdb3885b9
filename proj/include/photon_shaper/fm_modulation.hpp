#ifndef PHOTON_SHAPER_FM_MODULATION_HPP
#define PHOTON_SHAPER_FM_MODULATION_HPP

// Frequency modulation of the cavity resonance, f(t) = epsilon cos(Omega t),
// acting on a single photon reflected from the cavity.
//
// Three routes to the output spectrum are provided:
//   - the first-order formula as commonly printed (single sideband at +Omega,
//     weight epsilon^2 gamma^2 / (gamma^2/4 + omega^2)^2);
//   - the full first-order result, which splits cos into two exponentials of
//     weight epsilon/2 and keeps both susceptibilities;
//   - direct time-domain integration of the single-excitation amplitude
//         d alpha/dt = -(i f(t) + i delta + gamma/2) alpha + sqrt(gamma) nu_in(t)
//         nu_out(t)  = sqrt(gamma) alpha(t) - nu_in(t)
//     which is exact up to integrator error and serves as the reference.

#include <cstddef>

#include "photon_shaper/cavity_filter.hpp"
#include "photon_shaper/specgrid.hpp"

namespace photon_shaper
{
class ModulationParams
{
public:
    // epsilon >= 0 (modulation depth), big_omega > 0 (modulation frequency).
    ModulationParams(double epsilon, double big_omega);

    double epsilon() const { return epsilon_; }
    double big_omega() const { return big_omega_; }

    // epsilon <= gamma / 10.
    bool perturbative(const CavityParams &p) const { return epsilon_ <= p.gamma() / 10.0; }

private:
    double epsilon_;
    double big_omega_;
};

// I_o(omega) = (eps gamma / (gamma^2/4 + omega^2))^2 |nu(omega - Omega)|^2 + |nu(omega)|^2.
//
// Requires delta == 0, Omega an integer multiple of the grid spacing and a
// spectral RMS width of nu no larger than Omega/4; throws ValidationError otherwise.
IntensitySpectrum perturbative_spectrum_paper(const CavityParams &p, const ModulationParams &m,
                                              const SpectralAmplitude &nu);

// I_o(omega) = gamma^2 (eps/2)^2 |chi(omega)|^2 sum_{s=+-1} |chi(omega - s Omega)|^2 |nu(omega - s Omega)|^2
//              + |nu(omega)|^2,                         chi(omega) = 1 / (gamma/2 - i omega).
// Same preconditions as the printed variant. Reduces to
// (eps gamma/2)^2 / (gamma^2/4 + omega^2)^2 per sideband when Omega << gamma.
IntensitySpectrum perturbative_spectrum_two_sideband(const CavityParams &p, const ModulationParams &m,
                                                     const SpectralAmplitude &nu);

// Integration settings for the time-domain reference.
struct OracleConfig
{
    double dt = 0.0;      // RK4 step; grid delta_t must be an integer multiple of it
    double t_start = 0.0; // cavity empty at t_start
    double t_end = 0.0;

    static constexpr double kRingDownTimes = 20.0; // t_end >= pulse end + 20/gamma
    static constexpr double kSupportTail = 1e-12;  // input mass allowed outside the pulse support

    // Largest admissible step: min(0.01 * 2 pi/Omega, 0.01 * 2/gamma, 0.1 * delta_t).
    static double max_step(const SampledGrid &grid, const CavityParams &p, const ModulationParams &m);

    // Largest admissible step that divides delta_t, over the whole grid time span.
    static OracleConfig automatic(const SampledGrid &grid, const CavityParams &p, const ModulationParams &m);

    // Throws ValidationError when the step rule, window placement or
    // ring-down rule is violated for this input.
    void validate(const CavityParams &p, const ModulationParams &m, const SpectralAmplitude &nu) const;
};

struct OracleResult
{
    SpectralAmplitude nu_out;
    double input_norm_squared = 0.0;
    double output_norm_squared = 0.0;
    double residual_intracavity = 0.0;  // |alpha(t_end)|^2, photon probability left in the cavity
    double conservation_residual = 0.0; // | ||nu_out||^2 - ||nu||^2 |
    std::size_t steps = 0;
};

// Drift of the output norm beyond this is reported as NumericalError.
inline constexpr double kOracleDriftLimit = 1e-4;

OracleResult oracle_simulate(const CavityParams &p, const ModulationParams &m, const SpectralAmplitude &nu,
                             const OracleConfig &cfg);

struct SidebandReport
{
    double carrier_mass = 0.0; // omega in [-h, h)
    double upper_mass = 0.0;   // omega in [Omega - h, Omega + h)
    double lower_mass = 0.0;   // omega in [-Omega - h, -Omega + h)
    double total_mass = 0.0;
};

// Integrates the spectrum over windows of half-width h (default Omega/2).
// Throws ValidationError when h > Omega/2 (overlapping windows) or when the
// carrier's RMS width exceeds Omega/4.
SidebandReport sideband_report(const IntensitySpectrum &spectrum, const ModulationParams &m);
SidebandReport sideband_report(const IntensitySpectrum &spectrum, const ModulationParams &m, double half_width);

} // namespace photon_shaper

#endif // PHOTON_SHAPER_FM_MODULATION_HPP
