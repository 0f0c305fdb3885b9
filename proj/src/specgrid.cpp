#include "photon_shaper/specgrid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"

namespace photon_shaper
{
SampledGrid::SampledGrid(std::size_t n_points, double delta_omega, std::optional<double> carrier)
    : n_points_(n_points), delta_omega_(delta_omega), delta_t_(0.0), carrier_(carrier)
{
    if (n_points_ < 8)
        throw ValidationError("grid needs at least 8 points, got " + std::to_string(n_points_));
    if (n_points_ % 2 != 0)
        throw ValidationError("grid size must be even, got " + std::to_string(n_points_));
    if (!std::isfinite(delta_omega_) || delta_omega_ <= 0.0)
        throw ValidationError("grid delta_omega must be finite and positive");
    delta_t_ = kTwoPi / (static_cast<double>(n_points_) * delta_omega_);
}

double SampledGrid::omega(std::size_t j) const
{
    return (static_cast<double>(j) - static_cast<double>(n_points_ / 2)) * delta_omega_;
}

double SampledGrid::time(std::size_t j) const
{
    return (static_cast<double>(j) - static_cast<double>(n_points_ / 2)) * delta_t_;
}

std::vector<double> SampledGrid::omegas() const
{
    std::vector<double> out(n_points_);
    for (std::size_t j = 0; j < n_points_; ++j)
        out[j] = omega(j);
    return out;
}

std::vector<double> SampledGrid::times() const
{
    std::vector<double> out(n_points_);
    for (std::size_t j = 0; j < n_points_; ++j)
        out[j] = time(j);
    return out;
}

namespace
{
std::size_t nearest_index(double x, double spacing, std::size_t n)
{
    const double pos = std::round(x / spacing) + static_cast<double>(n / 2);
    return static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(n - 1)));
}
} // namespace

std::size_t SampledGrid::nearest_omega_index(double omega) const
{
    return nearest_index(omega, delta_omega_, n_points_);
}

std::size_t SampledGrid::nearest_time_index(double t) const
{
    return nearest_index(t, delta_t_, n_points_);
}

std::string SampledGrid::describe() const
{
    std::ostringstream os;
    os.precision(17);
    os << "grid(n=" << n_points_ << ", delta_omega=" << delta_omega_ << ")";
    return os.str();
}

void require_same_grid(const SampledGrid &a, const SampledGrid &b, const char *context)
{
    if (!(a == b))
        throw GridMismatch(std::string(context) + ": " + a.describe() + " vs " + b.describe());
}

TimeAmplitude to_time(const SpectralAmplitude &nu)
{
    auto out = detail::centered_dft(nu.values(), detail::Sign::Negative);
    const double scale = nu.grid().delta_omega() / std::sqrt(kTwoPi);
    for (auto &v : out)
        v *= scale;
    return TimeAmplitude(nu.grid(), std::move(out));
}

SpectralAmplitude to_freq(const TimeAmplitude &nu_t)
{
    auto out = detail::centered_dft(nu_t.values(), detail::Sign::Positive);
    const double scale = nu_t.grid().delta_t() / std::sqrt(kTwoPi);
    for (auto &v : out)
        v *= scale;
    return SpectralAmplitude(nu_t.grid(), std::move(out));
}

SpectralAmplitude normalize(const SpectralAmplitude &nu)
{
    const double n = norm(nu);
    if (!(n > 0.0) || !std::isfinite(n))
        throw ValidationError("cannot normalize a zero (or non-finite) amplitude");
    return nu.scaled(1.0 / n);
}

IntensitySpectrum power(const SpectralAmplitude &nu)
{
    std::vector<double> out(nu.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = std::norm(nu[j]);
    return IntensitySpectrum(nu.grid(), std::move(out));
}

CountRate power(const TimeAmplitude &nu_t)
{
    std::vector<double> out(nu_t.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = std::norm(nu_t[j]);
    return CountRate(nu_t.grid(), std::move(out));
}

template <class Domain>
Moments moments(const Density<Domain> &d)
{
    double mass = 0.0;
    double first = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j)
    {
        mass += d[j];
        first += d[j] * d.coordinate(j);
    }
    if (!(mass > 0.0))
        throw ValidationError("moments of a distribution with zero mass");
    const double mean = first / mass;
    double second = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j)
    {
        const double x = d.coordinate(j) - mean;
        second += d[j] * x * x;
    }
    return Moments{mean, std::sqrt(second / mass)};
}

template Moments moments<FrequencyDomain>(const Density<FrequencyDomain> &);
template Moments moments<TimeDomain>(const Density<TimeDomain> &);

Resolution check_resolution(const SpectralAmplitude &nu)
{
    Resolution r;
    r.spectral_rms = moments(power(nu)).rms_width;
    r.temporal_rms = moments(power(to_time(nu))).rms_width;
    r.resolved = r.spectral_rms < nu.grid().omega_span() / 8.0 && r.temporal_rms < nu.grid().time_span() / 8.0;
    return r;
}

SpectralAmplitude gaussian_amplitude(const SampledGrid &grid, double sigma, double center, double t0)
{
    if (!std::isfinite(sigma) || sigma <= 0.0)
        throw ValidationError("gaussian width sigma must be positive");
    if (!std::isfinite(center) || !std::isfinite(t0))
        throw ValidationError("gaussian center and t0 must be finite");
    const double amp = std::pow(kPi * sigma * sigma, -0.25);
    std::vector<Complex> values(grid.n_points());
    for (std::size_t j = 0; j < values.size(); ++j)
    {
        const double w = grid.omega(j);
        const double x = (w - center) / sigma;
        values[j] = amp * std::exp(-0.5 * x * x) * std::polar(1.0, w * t0);
    }
    return SpectralAmplitude(grid, std::move(values));
}

std::vector<Complex> refined_time_samples(const SpectralAmplitude &nu, std::size_t factor)
{
    if (factor == 0)
        throw ValidationError("refinement factor must be positive");
    const std::size_t n = nu.size();
    const std::size_t m = n * factor;
    // The refined grid keeps delta_omega and extends the (zero) spectrum symmetrically.
    std::vector<Complex> padded(m);
    const std::size_t offset = (m - n) / 2;
    std::copy(nu.values().begin(), nu.values().end(), padded.begin() + static_cast<std::ptrdiff_t>(offset));
    auto out = detail::centered_dft(padded, detail::Sign::Negative);
    const double scale = nu.grid().delta_omega() / std::sqrt(kTwoPi);
    for (auto &v : out)
        v *= scale;
    return out;
}

} // namespace photon_shaper
