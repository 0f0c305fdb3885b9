#ifndef PHOTON_SHAPER_RK4_HPP
#define PHOTON_SHAPER_RK4_HPP

namespace photon_shaper
{
// Classical fixed-step 4th-order Runge-Kutta step for dy/dt = system(t, y).
// State must support addition and scaling by double.
template <class State, class System>
State rk4_step(System &&system, const State &y, double t, double h)
{
    const double h2 = h / 2.0;
    const State k1 = system(t, y);
    const State k2 = system(t + h2, y + h2 * k1);
    const State k3 = system(t + h2, y + h2 * k2);
    const State k4 = system(t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace photon_shaper

#endif // PHOTON_SHAPER_RK4_HPP
