#ifndef SCAT1D_PROPAGATOR_HPP
#define SCAT1D_PROPAGATOR_HPP

#include <span>
#include <vector>

#include "scat1d/kinematics.hpp"

namespace scat1d {

/// Free time-domain kernel sqrt(m/(2 pi i t)) * exp(i m x^2 / (2 t)),
/// principal branch of the square root. Throws std::domain_error at t = 0;
/// the zero-time limit is the identity and must be taken by the caller.
cplx green_time(double x, double t, double mass);

/// Outgoing-wave energy-domain kernel (m / (i p)) * exp(i p |x|).
cplx green_energy(double x, const Kinematics& kin);

/// Normalized Gaussian wave packet
///   psi(x) = (pi sigma^2)^{-1/4} exp(-(x-center)^2/(2 sigma^2) + i carrier (x-center)).
struct GaussianPacket {
    double center = 0.0;
    double sigma = 1.0;
    double carrier = 0.0;
    cplx norm; // (pi sigma^2)^{-1/4}

    GaussianPacket(double center_, double sigma_, double carrier_);

    cplx value(double x) const;

    /// Probability width after free evolution for time t: sigma(t)^2 = |w|^2/sigma^2
    /// with complex width w(t) = sigma^2 + i t / m.
    double evolved_sigma(double mass, double t) const;
};

/// Closed-form free evolution of a Gaussian packet; complex width sigma^2 + i t/m.
cplx gaussian_evolved(const GaussianPacket& packet, double mass, double t, double x);

struct QuadratureSpec {
    double window_sigmas = 10.0;   // half-window in units of the evolved width
    double points_per_osc = 16.0;  // sampling of the kernel's local phase
    std::size_t output_points = 257;
    std::size_t max_points = 1u << 21;
};

struct PropagationResult {
    std::vector<double> grid;
    std::vector<cplx> values;
    // quadrature diagnostics
    double window_sigmas = 0.0;
    double points_per_osc = 0.0;   // worst-case sampling actually achieved
    double truncation_bound = 0.0; // estimated window-truncation error
};

/// Trapezoidal convolution of sampled data with the free kernel over elapsed
/// time dt. grid_in must be uniform. dt = 0 returns the input resampled.
std::vector<cplx> propagate_samples(std::span<const double> grid_in,
                                    std::span<const cplx> values_in, double mass,
                                    double dt, std::span<const double> grid_out);

/// Quadrature free propagation of a Gaussian packet from t_from to t_to.
/// The window is sized from the evolved width; spec.window_sigmas < 8 is
/// rejected with an accuracy_error carrying the estimated truncation bound.
PropagationResult reproduce(const GaussianPacket& packet, double mass, double t_from,
                            double t_to, const QuadratureSpec& spec = {});

} // namespace scat1d

#endif
