#ifndef SCAT1D_KINEMATICS_HPP
#define SCAT1D_KINEMATICS_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

namespace scat1d {

using cplx = std::complex<double>;

/// Mass, energy and asymptotic momentum of the scattering state, hbar = 1.
/// p = sqrt(2 m E) is kept consistent with (m, E) at construction.
struct Kinematics {
    double mass;
    double energy;
    double p;

    Kinematics(double m, double E) : mass(m), energy(E), p(std::sqrt(2.0 * m * E)) {
        if (!(m > 0.0))
            throw std::invalid_argument("Kinematics: mass must be positive");
        if (!(E > 0.0))
            throw std::invalid_argument("Kinematics: energy must be positive");
    }

    static Kinematics from_momentum(double m, double momentum) {
        if (!(momentum > 0.0))
            throw std::invalid_argument("Kinematics: momentum must be positive");
        return Kinematics(m, momentum * momentum / (2.0 * m));
    }
};

} // namespace scat1d

#endif
