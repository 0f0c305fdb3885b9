#include "photon_shaper/photon_states.hpp"

#include <cmath>
#include <sstream>

namespace photon_shaper
{
SinglePhotonState::SinglePhotonState(SpectralAmplitude nu) : nu_(std::move(nu))
{
    const double n2 = norm_squared(nu_);
    if (!(std::abs(n2 - 1.0) <= kNormTolerance))
    {
        std::ostringstream os;
        os.precision(17);
        os << "single-photon amplitude must be normalized, <nu,nu> = " << n2;
        throw ValidationError(os.str());
    }
}

SinglePhotonState SinglePhotonState::from_unnormalized(const SpectralAmplitude &nu)
{
    return SinglePhotonState(normalize(nu));
}

TimeAmplitude mean_field(const SinglePhotonState &state)
{
    return TimeAmplitude::zeros(state.grid());
}

TimeAmplitude mean_field(const CoherentState &state)
{
    return to_time(state.displacement());
}

CountRate count_rate(const SinglePhotonState &state)
{
    return power(to_time(state.amplitude()));
}

CountRate count_rate(const CoherentState &state)
{
    return power(to_time(state.displacement()));
}

IntensitySpectrum intensity_spectrum(const SinglePhotonState &state)
{
    return power(state.amplitude());
}

IntensitySpectrum intensity_spectrum(const CoherentState &state)
{
    return power(state.displacement());
}

} // namespace photon_shaper
