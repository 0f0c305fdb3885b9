#ifndef PHOTON_SHAPER_SPECGRID_HPP
#define PHOTON_SHAPER_SPECGRID_HPP

// Sampled frequency/time grids and the amplitudes that live on them.
//
// Frequencies are measured in the rotating frame of the optical carrier, so
// omega = 0 is the carrier. The transform pair used everywhere is
//
//     nu(t)     = (2 pi)^(-1/2) \int d omega  nu(omega) e^(-i omega t)
//     nu(omega) = (2 pi)^(-1/2) \int dt       nu(t)     e^(+i omega t)
//
// discretized as Riemann sums on centered grids with
// delta_omega * delta_t * n = 2 pi, which makes the discrete Parseval relation
// sum |nu(omega_j)|^2 d_omega = sum |nu(t_j)|^2 d_t exact up to round-off.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "photon_shaper/errors.hpp"

namespace photon_shaper
{
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Paired frequency/time grids. Immutable after construction.
class SampledGrid
{
public:
    // Throws ValidationError unless n_points is even and >= 8 and
    // delta_omega is finite and positive. The carrier is metadata only.
    SampledGrid(std::size_t n_points, double delta_omega, std::optional<double> carrier = std::nullopt);

    std::size_t n_points() const { return n_points_; }
    double delta_omega() const { return delta_omega_; }
    double delta_t() const { return delta_t_; }
    std::optional<double> carrier() const { return carrier_; }

    // Sample j sits at (j - n/2) * spacing.
    double omega(std::size_t j) const;
    double time(std::size_t j) const;
    std::vector<double> omegas() const;
    std::vector<double> times() const;

    double omega_span() const { return static_cast<double>(n_points_) * delta_omega_; }
    double time_span() const { return static_cast<double>(n_points_) * delta_t_; }

    // Index of the sample nearest to the given frequency/time, clamped to the grid.
    std::size_t nearest_omega_index(double omega) const;
    std::size_t nearest_time_index(double t) const;

    // Grids are equal when n and delta_omega match exactly; the carrier label is ignored.
    bool operator==(const SampledGrid &other) const
    {
        return n_points_ == other.n_points_ && delta_omega_ == other.delta_omega_;
    }

    std::string describe() const;

private:
    std::size_t n_points_;
    double delta_omega_;
    double delta_t_;
    std::optional<double> carrier_;
};

void require_same_grid(const SampledGrid &a, const SampledGrid &b, const char *context);

struct FrequencyDomain
{
};
struct TimeDomain
{
};

// Complex samples on one side of a grid. Values are held by value and never
// mutated after construction; derived amplitudes are new objects.
template <class Domain>
class Amplitude
{
public:
    Amplitude(SampledGrid grid, std::vector<Complex> values) : grid_(std::move(grid)), values_(std::move(values))
    {
        if (values_.size() != grid_.n_points())
            throw ValidationError("amplitude has " + std::to_string(values_.size()) + " samples, grid has " +
                                  std::to_string(grid_.n_points()));
    }

    static Amplitude zeros(const SampledGrid &grid) { return Amplitude(grid, std::vector<Complex>(grid.n_points())); }

    const SampledGrid &grid() const { return grid_; }
    std::span<const Complex> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    Complex operator[](std::size_t j) const { return values_[j]; }

    // Spacing of the samples in this domain.
    double spacing() const
    {
        if constexpr (std::is_same_v<Domain, FrequencyDomain>)
            return grid_.delta_omega();
        else
            return grid_.delta_t();
    }

    // Abscissa of sample j (omega or t).
    double coordinate(std::size_t j) const
    {
        if constexpr (std::is_same_v<Domain, FrequencyDomain>)
            return grid_.omega(j);
        else
            return grid_.time(j);
    }

    Amplitude scaled(Complex factor) const
    {
        std::vector<Complex> out(values_);
        for (auto &v : out)
            v *= factor;
        return Amplitude(grid_, std::move(out));
    }

    friend Amplitude operator+(const Amplitude &a, const Amplitude &b)
    {
        require_same_grid(a.grid_, b.grid_, "amplitude addition");
        std::vector<Complex> out(a.values_);
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] += b.values_[j];
        return Amplitude(a.grid_, std::move(out));
    }

    friend Amplitude operator-(const Amplitude &a, const Amplitude &b) { return a + b.scaled(-1.0); }

private:
    SampledGrid grid_;
    std::vector<Complex> values_;
};

using SpectralAmplitude = Amplitude<FrequencyDomain>;
using TimeAmplitude = Amplitude<TimeDomain>;

// Nonnegative real samples (count rate n(t), intensity spectrum I(omega)).
template <class Domain>
class Density
{
public:
    Density(SampledGrid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values))
    {
        if (values_.size() != grid_.n_points())
            throw ValidationError("density length does not match grid");
    }

    const SampledGrid &grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t j) const { return values_[j]; }

    double spacing() const
    {
        if constexpr (std::is_same_v<Domain, FrequencyDomain>)
            return grid_.delta_omega();
        else
            return grid_.delta_t();
    }

    double coordinate(std::size_t j) const
    {
        if constexpr (std::is_same_v<Domain, FrequencyDomain>)
            return grid_.omega(j);
        else
            return grid_.time(j);
    }

    // Riemann sum, sum v_j * spacing.
    double integral() const
    {
        double sum = 0.0;
        for (double v : values_)
            sum += v;
        return sum * spacing();
    }

private:
    SampledGrid grid_;
    std::vector<double> values_;
};

using CountRate = Density<TimeDomain>;
using IntensitySpectrum = Density<FrequencyDomain>;

TimeAmplitude to_time(const SpectralAmplitude &nu);
SpectralAmplitude to_freq(const TimeAmplitude &nu_t);

// <a, b> = sum conj(a_j) b_j * spacing. Throws GridMismatch for different grids.
template <class Domain>
Complex inner_product(const Amplitude<Domain> &a, const Amplitude<Domain> &b)
{
    require_same_grid(a.grid(), b.grid(), "inner_product");
    Complex sum = 0.0;
    const auto av = a.values();
    const auto bv = b.values();
    for (std::size_t j = 0; j < av.size(); ++j)
        sum += std::conj(av[j]) * bv[j];
    return sum * a.spacing();
}

template <class Domain>
double norm_squared(const Amplitude<Domain> &a)
{
    double sum = 0.0;
    for (const auto &v : a.values())
        sum += std::norm(v);
    return sum * a.spacing();
}

template <class Domain>
double norm(const Amplitude<Domain> &a)
{
    return std::sqrt(norm_squared(a));
}

// ||a - b|| / ||b||; returns ||a|| when b is zero.
template <class Domain>
double relative_l2_distance(const Amplitude<Domain> &a, const Amplitude<Domain> &b)
{
    const double ref = norm(b);
    const double diff = norm(a - b);
    return ref > 0.0 ? diff / ref : diff;
}

// Rescales to unit norm. Throws ValidationError for the zero amplitude.
SpectralAmplitude normalize(const SpectralAmplitude &nu);

// |nu|^2 sample-wise.
IntensitySpectrum power(const SpectralAmplitude &nu);
CountRate power(const TimeAmplitude &nu_t);

// Intensity-weighted mean and RMS width of |values|^2 over its coordinate.
struct Moments
{
    double mean = 0.0;
    double rms_width = 0.0;
};

template <class Domain>
Moments moments(const Density<Domain> &d);

// A pulse is resolved when both its spectral and temporal RMS widths are below
// one eighth of the respective grid spans.
struct Resolution
{
    double spectral_rms = 0.0;
    double temporal_rms = 0.0;
    bool resolved = false;
};
Resolution check_resolution(const SpectralAmplitude &nu);

// Normalized Gaussian (pi sigma^2)^(-1/4) exp(-(omega - center)^2 / (2 sigma^2)),
// multiplied by exp(+i omega t0) so that the time-domain pulse is centered on t0.
SpectralAmplitude gaussian_amplitude(const SampledGrid &grid, double sigma, double center = 0.0, double t0 = 0.0);

// Evaluates the band-limited interpolant of nu(t) on a grid refined by an even
// factor: sample p sits at time(0) + p * delta_t / factor.
std::vector<Complex> refined_time_samples(const SpectralAmplitude &nu, std::size_t factor);

} // namespace photon_shaper

#endif // PHOTON_SHAPER_SPECGRID_HPP
