#include "scat1d/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scat1d/errors.hpp"

namespace scat1d {

namespace {
constexpr double pi = std::numbers::pi;
constexpr cplx iu{0.0, 1.0};
} // namespace

cplx green_time(double x, double t, double mass) {
    if (t == 0.0)
        throw std::domain_error("green_time: t = 0; use the reproducing-identity limit");
    // principal branch: sqrt(m/(2 pi i t)) = sqrt(m/(2 pi |t|)) e^{-/+ i pi/4}
    const double amp = std::sqrt(mass / (2.0 * pi * std::abs(t)));
    const cplx branch = (t > 0.0) ? std::polar(1.0, -pi / 4.0) : std::polar(1.0, pi / 4.0);
    return amp * branch * std::exp(iu * (mass * x * x / (2.0 * t)));
}

cplx green_energy(double x, const Kinematics& kin) {
    return (kin.mass / (iu * kin.p)) * std::exp(iu * kin.p * std::abs(x));
}

GaussianPacket::GaussianPacket(double center_, double sigma_, double carrier_)
    : center(center_), sigma(sigma_), carrier(carrier_) {
    if (!(sigma_ > 0.0))
        throw std::invalid_argument("GaussianPacket: sigma must be positive");
    norm = std::pow(pi * sigma * sigma, -0.25);
}

cplx GaussianPacket::value(double x) const {
    const double u = x - center;
    return norm * std::exp(cplx(-u * u / (2.0 * sigma * sigma), carrier * u));
}

double GaussianPacket::evolved_sigma(double mass, double t) const {
    const cplx w = sigma * sigma + iu * t / mass;
    return std::abs(w) / sigma;
}

cplx gaussian_evolved(const GaussianPacket& packet, double mass, double t, double x) {
    if (t == 0.0)
        return packet.value(x);
    const double s2 = packet.sigma * packet.sigma;
    const cplx w = s2 + iu * t / mass;
    const double X = x - packet.center;
    const double k = packet.carrier;
    const cplx expo = -X * X / (2.0 * w) + iu * k * s2 * X / w - iu * k * k * t * s2 / (2.0 * mass * w);
    return packet.norm * std::sqrt(s2 / w) * std::exp(expo);
}

std::vector<cplx> propagate_samples(std::span<const double> grid_in,
                                    std::span<const cplx> values_in, double mass,
                                    double dt, std::span<const double> grid_out) {
    if (grid_in.size() != values_in.size() || grid_in.size() < 2)
        throw std::invalid_argument("propagate_samples: bad input grid");
    std::vector<cplx> out(grid_out.size());
    if (dt == 0.0) {
        // identity limit: resample by linear interpolation on the input grid
        const double x0 = grid_in.front();
        const double hx = grid_in[1] - grid_in[0];
        for (std::size_t i = 0; i < grid_out.size(); ++i) {
            const double s = (grid_out[i] - x0) / hx;
            const auto j = static_cast<std::ptrdiff_t>(std::floor(s));
            if (j < 0 || j + 1 >= static_cast<std::ptrdiff_t>(grid_in.size())) {
                out[i] = 0.0;
                continue;
            }
            const double f = s - static_cast<double>(j);
            out[i] = (1.0 - f) * values_in[static_cast<std::size_t>(j)] +
                     f * values_in[static_cast<std::size_t>(j) + 1];
        }
        return out;
    }
    const double h = grid_in[1] - grid_in[0];
    for (std::size_t i = 0; i < grid_out.size(); ++i) {
        cplx acc = 0.5 * (green_time(grid_out[i] - grid_in.front(), dt, mass) * values_in.front() +
                          green_time(grid_out[i] - grid_in.back(), dt, mass) * values_in.back());
        for (std::size_t j = 1; j + 1 < grid_in.size(); ++j)
            acc += green_time(grid_out[i] - grid_in[j], dt, mass) * values_in[j];
        out[i] = acc * h;
    }
    return out;
}

PropagationResult reproduce(const GaussianPacket& packet, double mass, double t_from,
                            double t_to, const QuadratureSpec& spec) {
    if (!(t_to >= t_from))
        throw std::invalid_argument("reproduce: t_to must not precede t_from");
    const double dt = t_to - t_from;
    const double sig_out = packet.evolved_sigma(mass, dt);

    if (spec.window_sigmas < 8.0) {
        const double bound = std::exp(-0.5 * spec.window_sigmas * spec.window_sigmas);
        throw accuracy_error("reproduce: window narrower than 8 evolved widths", bound);
    }

    const double drift = packet.carrier / mass * dt;
    const double out_center = packet.center + drift;
    const double out_half = spec.window_sigmas * sig_out;
    const double in_half = spec.window_sigmas * std::max(packet.sigma, sig_out) + std::abs(drift);

    PropagationResult res;
    res.grid.resize(spec.output_points);
    const std::size_t n_out = spec.output_points;
    for (std::size_t i = 0; i < n_out; ++i)
        res.grid[i] = out_center - out_half +
                      2.0 * out_half * static_cast<double>(i) / static_cast<double>(n_out - 1);

    if (dt == 0.0) {
        res.values.resize(n_out);
        for (std::size_t i = 0; i < n_out; ++i)
            res.values[i] = packet.value(res.grid[i]);
        res.window_sigmas = spec.window_sigmas;
        res.points_per_osc = spec.points_per_osc;
        res.truncation_bound = std::exp(-0.5 * spec.window_sigmas * spec.window_sigmas);
        return res;
    }

    // The kernel phase m(x-y)^2/(2 dt) oscillates fastest at the largest
    // separation reached by the quadrature; sample that frequency.
    const double max_sep = out_half + in_half + std::abs(drift);
    const double kernel_freq = mass * max_sep / std::abs(dt); // d(phase)/dy, radians
    const double packet_freq = std::abs(packet.carrier) + 3.0 / packet.sigma;
    const double osc = std::max(kernel_freq, packet_freq) / (2.0 * pi); // cycles per unit y
    double hy = 1.0 / std::max(osc * spec.points_per_osc, 4.0 / packet.sigma);
    auto n_in = static_cast<std::size_t>(std::ceil(2.0 * in_half / hy)) + 1;
    if (n_in > spec.max_points)
        throw accuracy_error("reproduce: grid would exceed max_points", 1.0 / static_cast<double>(spec.max_points));
    if (n_in < 32) n_in = 32;

    std::vector<double> gy(n_in);
    std::vector<cplx> fy(n_in);
    const double y0 = packet.center - in_half;
    const double hy_actual = 2.0 * in_half / static_cast<double>(n_in - 1);
    for (std::size_t j = 0; j < n_in; ++j) {
        gy[j] = y0 + hy_actual * static_cast<double>(j);
        fy[j] = packet.value(gy[j]);
    }

    res.values = propagate_samples(gy, fy, mass, dt, res.grid);
    res.window_sigmas = spec.window_sigmas;
    res.points_per_osc = 1.0 / (hy_actual * std::max(osc, 1e-300));
    res.truncation_bound = std::exp(-0.5 * spec.window_sigmas * spec.window_sigmas);
    return res;
}

} // namespace scat1d
