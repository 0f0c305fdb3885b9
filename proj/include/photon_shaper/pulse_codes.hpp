#ifndef PHOTON_SHAPER_PULSE_CODES_HPP
#define PHOTON_SHAPER_PULSE_CODES_HPP

// Pulse-code modulation of single photons: a symbol vector s selects the
// superposition nu = sum_k s_k beta_k of orthonormal code signals beta_k, so
// the code states b_k^dagger |0> are orthogonal in Hilbert space and a matched
// filter <beta_k, nu> recovers the symbols.

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

#include "photon_shaper/cavity_filter.hpp"
#include "photon_shaper/photon_states.hpp"
#include "photon_shaper/specgrid.hpp"

namespace photon_shaper
{
inline constexpr double kGramTolerance = 1e-10;

// Ordered set of orthonormal code signals on a common grid. Symbol k is signal k.
class CodeBook
{
public:
    // Throws ValidationError if the set is empty, grids differ, or the Gram
    // matrix deviates from the identity by more than kGramTolerance.
    explicit CodeBook(std::vector<SpectralAmplitude> signals);

    std::size_t size() const { return signals_.size(); }
    const SampledGrid &grid() const { return signals_.front().grid(); }
    const SpectralAmplitude &signal(std::size_t k) const { return signals_.at(k); }
    const std::vector<SpectralAmplitude> &signals() const { return signals_; }

    // G_kl = <beta_k, beta_l>.
    Eigen::MatrixXcd gram() const;

private:
    std::vector<SpectralAmplitude> signals_;
};

// Binary code symbols with amplitudes s_k = bit_k / sqrt(number of set bits).
class SymbolVector
{
public:
    explicit SymbolVector(std::vector<bool> bits);

    // "0110": character k is bit k. Throws ValidationError on other characters.
    static SymbolVector from_string(const std::string &bits);

    // Bits of the integer value, bit k = (value >> k) & 1.
    static SymbolVector from_index(unsigned long value, std::size_t length);

    std::size_t size() const { return bits_.size(); }
    bool bit(std::size_t k) const { return bits_.at(k); }
    const std::vector<bool> &bits() const { return bits_; }
    std::size_t set_count() const;
    std::vector<double> amplitudes() const;
    std::string to_string() const;

    bool operator==(const SymbolVector &other) const { return bits_ == other.bits_; }

private:
    std::vector<bool> bits_;
};

// K disjoint rectangular time bins of (grid-snapped) width bin_width, centered
// in the time span, each normalized to unit norm. Throws ValidationError when
// the bins do not fit.
CodeBook make_timebin_codebook(const SampledGrid &grid, std::size_t count, double bin_width);

// Width actually used for each time bin, bin_width rounded to whole samples.
double snapped_bin_width(const SampledGrid &grid, double bin_width);

// Gram-Schmidt with one reorthogonalization pass. Each output signal is
// rotated so its first significant sample is real and positive. Throws
// ValidationError when the smallest Gram eigenvalue is below 1e-8.
CodeBook orthonormalize(const std::vector<SpectralAmplitude> &raw);

// nu = sum_k s_k beta_k. Throws ValidationError for an all-zero or
// wrong-length symbol vector.
SinglePhotonState encode(const CodeBook &book, const SymbolVector &symbols);

struct DecodeResult
{
    std::vector<Complex> overlaps; // c_k = <beta_k, nu>
    SymbolVector bits;             // |c_k|^2 >= threshold * max_l |c_l|^2
};

// Matched-filter decoding. threshold must lie in (0, 1).
DecodeResult decode(const CodeBook &book, const SpectralAmplitude &nu, double threshold = 0.5);

// The same overlaps evaluated as time-domain integrals sum conj(beta_k(t)) nu(t) dt.
std::vector<Complex> time_domain_overlaps(const CodeBook &book, const SpectralAmplitude &nu);

struct CrosstalkReport
{
    Eigen::MatrixXcd matrix;          // M_kl = <beta_k, H beta_l>
    std::vector<double> column_norms; // sqrt(sum_k |M_kl|^2)
    std::vector<double> channel_norms; // ||H beta_l||, 1 for an all-pass channel
    std::vector<double> leakage;      // 1 - column_norm^2, probability leaving the code span
};

CrosstalkReport crosstalk_matrix(const CodeBook &book, const CavityParams &p);

} // namespace photon_shaper

#endif // PHOTON_SHAPER_PULSE_CODES_HPP
