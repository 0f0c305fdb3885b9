#ifndef PHOTON_SHAPER_SRC_FFT_HPP
#define PHOTON_SHAPER_SRC_FFT_HPP

#include <complex>
#include <span>
#include <vector>

namespace photon_shaper::detail
{
enum class Sign
{
    Negative, // e^{-i ...}
    Positive, // e^{+i ...}
};

// Centered DFT of even length M:
//   out_j = sum_k in_k exp(sign * i 2 pi (k - M/2)(j - M/2) / M)
// Unscaled. Plans are cached per (length, sign) and shared across threads.
std::vector<std::complex<double>> centered_dft(std::span<const std::complex<double>> in, Sign sign);

} // namespace photon_shaper::detail

#endif
