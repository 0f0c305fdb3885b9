#ifndef PHOTON_SHAPER_CAVITY_FILTER_HPP
#define PHOTON_SHAPER_CAVITY_FILTER_HPP

#include "photon_shaper/photon_states.hpp"
#include "photon_shaper/specgrid.hpp"

namespace photon_shaper
{
// Empty one-sided cavity seen in reflection.
class CavityParams
{
public:
    // gamma: energy decay rate (> 0). delta: cavity minus input carrier frequency.
    explicit CavityParams(double gamma, double delta = 0.0);

    double gamma() const { return gamma_; }
    double delta() const { return delta_; }

private:
    double gamma_;
    double delta_;
};

// H(omega) = (gamma/2 + i(omega - delta)) / (gamma/2 - i(omega - delta)); |H| = 1.
Complex transfer_function(const CavityParams &p, double omega);

// nu_out(omega) = H(omega) nu(omega) bin-wise.
SpectralAmplitude apply(const CavityParams &p, const SpectralAmplitude &nu);
SinglePhotonState apply(const CavityParams &p, const SinglePhotonState &state);

// d arg H / d omega = (4/gamma) / (1 + 4 (omega - delta)^2 / gamma^2).
double group_delay(const CavityParams &p, double omega);

struct PulseStats
{
    double mean_time = 0.0;
    double rms_width = 0.0;
};

// First moment and RMS width of n(t) dt. Throws ValidationError for zero mass.
PulseStats pulse_stats(const CountRate &n);

} // namespace photon_shaper

#endif // PHOTON_SHAPER_CAVITY_FILTER_HPP
