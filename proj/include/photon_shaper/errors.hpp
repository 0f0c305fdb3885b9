#ifndef PHOTON_SHAPER_ERRORS_HPP
#define PHOTON_SHAPER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace photon_shaper
{
// Invalid parameters, malformed inputs, or preconditions that do not hold.
class ValidationError : public std::invalid_argument
{
public:
    explicit ValidationError(const std::string &what) : std::invalid_argument(what) {}
};

// Two amplitudes defined on different grids were combined.
class GridMismatch : public ValidationError
{
public:
    explicit GridMismatch(const std::string &what) : ValidationError(what) {}
};

// A conservation or convergence check failed during a computation.
class NumericalError : public std::runtime_error
{
public:
    explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace photon_shaper

#endif // PHOTON_SHAPER_ERRORS_HPP
