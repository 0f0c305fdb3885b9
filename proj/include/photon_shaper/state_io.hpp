#ifndef PHOTON_SHAPER_STATE_IO_HPP
#define PHOTON_SHAPER_STATE_IO_HPP

// Text formats for amplitudes and codebooks.
//
// State file:
//     <n>,<delta_omega>
//     0,<re>,<im>
//     1,<re>,<im>
//     ...                      (n rows, index = frequency sample index)
//
// Codebook file: a line holding K, followed by K state documents.
//
// Numbers are written with 17 significant digits so a write/read cycle is exact.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "photon_shaper/pulse_codes.hpp"
#include "photon_shaper/specgrid.hpp"

namespace photon_shaper
{
// Shortest decimal form that round-trips a double ("%.17g").
std::string format_number(double x);

void write_state(std::ostream &os, const SpectralAmplitude &nu);
SpectralAmplitude read_state(std::istream &is);

void write_codebook(std::ostream &os, const CodeBook &book);
CodeBook read_codebook(std::istream &is);

// File wrappers; throw ValidationError when the file cannot be opened or parsed.
void save_state(const std::filesystem::path &path, const SpectralAmplitude &nu);
SpectralAmplitude load_state(const std::filesystem::path &path);
void save_codebook(const std::filesystem::path &path, const CodeBook &book);
CodeBook load_codebook(const std::filesystem::path &path);

} // namespace photon_shaper

#endif // PHOTON_SHAPER_STATE_IO_HPP
