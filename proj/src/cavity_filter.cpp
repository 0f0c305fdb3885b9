#include "photon_shaper/cavity_filter.hpp"

#include <cmath>

namespace photon_shaper
{
CavityParams::CavityParams(double gamma, double delta) : gamma_(gamma), delta_(delta)
{
    if (!std::isfinite(gamma_) || gamma_ <= 0.0)
        throw ValidationError("cavity decay rate gamma must be finite and positive");
    if (!std::isfinite(delta_))
        throw ValidationError("cavity detuning delta must be finite");
}

Complex transfer_function(const CavityParams &p, double omega)
{
    const Complex z(p.gamma() / 2.0, omega - p.delta());
    return z / std::conj(z);
}

SpectralAmplitude apply(const CavityParams &p, const SpectralAmplitude &nu)
{
    std::vector<Complex> out(nu.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = transfer_function(p, nu.coordinate(j)) * nu[j];
    return SpectralAmplitude(nu.grid(), std::move(out));
}

SinglePhotonState apply(const CavityParams &p, const SinglePhotonState &state)
{
    return SinglePhotonState(apply(p, state.amplitude()));
}

double group_delay(const CavityParams &p, double omega)
{
    const double x = 2.0 * (omega - p.delta()) / p.gamma();
    return (4.0 / p.gamma()) / (1.0 + x * x);
}

PulseStats pulse_stats(const CountRate &n)
{
    if (!(n.integral() > 0.0))
        throw ValidationError("pulse_stats: count rate has zero total mass");
    const auto m = moments(n);
    return PulseStats{m.mean, m.rms_width};
}

} // namespace photon_shaper
