#ifndef PHOTON_SHAPER_PHOTON_STATES_HPP
#define PHOTON_SHAPER_PHOTON_STATES_HPP

#include "photon_shaper/specgrid.hpp"

namespace photon_shaper
{
// One excitation spread over many frequency modes, |1> = \int d omega nu(omega) a^dagger(omega) |0>.
// The amplitude is normalized; the state carries no coherent displacement, so
// its mean field vanishes identically.
class SinglePhotonState
{
public:
    static constexpr double kNormTolerance = 1e-9;

    // Throws ValidationError if <nu, nu> differs from 1 by more than kNormTolerance.
    explicit SinglePhotonState(SpectralAmplitude nu);

    // Normalizes first. Throws ValidationError for the zero amplitude.
    static SinglePhotonState from_unnormalized(const SpectralAmplitude &nu);

    const SpectralAmplitude &amplitude() const { return nu_; }
    const SampledGrid &grid() const { return nu_.grid(); }

private:
    SpectralAmplitude nu_;
};

// Multimode coherent state D|0> with displacement alpha(omega). Not normalized:
// the mean photon number is <alpha, alpha>.
class CoherentState
{
public:
    explicit CoherentState(SpectralAmplitude alpha) : alpha_(std::move(alpha)) {}

    static CoherentState vacuum(const SampledGrid &grid) { return CoherentState(SpectralAmplitude::zeros(grid)); }

    const SpectralAmplitude &displacement() const { return alpha_; }
    const SampledGrid &grid() const { return alpha_.grid(); }
    double mean_photon_number() const { return norm_squared(alpha_); }

private:
    SpectralAmplitude alpha_;
};

// <a(t)>: alpha(t) for a coherent state, identically zero for a single photon.
TimeAmplitude mean_field(const SinglePhotonState &state);
TimeAmplitude mean_field(const CoherentState &state);

// Photodetection probability per unit time, n(t) = |nu(t)|^2 or |alpha(t)|^2.
CountRate count_rate(const SinglePhotonState &state);
CountRate count_rate(const CoherentState &state);

// I(omega) = <a^dagger(omega) a(omega)>.
IntensitySpectrum intensity_spectrum(const SinglePhotonState &state);
IntensitySpectrum intensity_spectrum(const CoherentState &state);

} // namespace photon_shaper

#endif // PHOTON_SHAPER_PHOTON_STATES_HPP
