#ifndef SCAT1D_BORN_HPP
#define SCAT1D_BORN_HPP

#include <optional>
#include <vector>

#include "scat1d/kinematics.hpp"
#include "scat1d/potential.hpp"

namespace scat1d {

/// Dimensionless kernel whose powers generate the multiple-scattering series,
/// together with the phase factor carried by the momentum-reversing channel.
///
/// Delta at a:  lambda = m*alpha/p (real),   reflection_factor = e^{-2ipa}.
/// Barrier:     lambda = V0 (e^{2iqa} - 1) / (4 sqrt(E(E-V0))) with inside
///              momentum q = sqrt(2m(E-V0)) (positive imaginary branch below
///              the barrier top), reflection_factor = sinc(pa) e^{-ipa}.
struct SeriesKernel {
    cplx lambda;
    bool convergent = false; // |lambda| < 1
    cplx reflection_factor = 1.0;
    double p = 0.0;
    double mass = 0.0;
};

/// Contribution of the n-vertex diagram to each channel.
struct OrderTerm {
    int order = 0;
    cplx t; // momentum-conserving channel
    cplx r; // momentum-reversing channel
};

struct ScatteringAmplitudes {
    cplx t;
    cplx r;
    double T = 0.0; // |t|^2
    double R = 0.0; // |r|^2

    static ScatteringAmplitudes from(cplx t, cplx r) {
        return {t, r, std::norm(t), std::norm(r)};
    }
};

enum class AccelMethod { shanks, pade };

struct AcceleratedResult {
    AccelMethod method;
    ScatteringAmplitudes value;
};

struct SeriesReport {
    SeriesKernel kernel;
    std::vector<OrderTerm> terms;                  // orders 0..N
    std::vector<ScatteringAmplitudes> partial_sums; // running sums of terms
    ScatteringAmplitudes closed_form;
    std::optional<AcceleratedResult> accelerated;
    bool divergent = false; // |lambda| >= 1
};

SeriesKernel delta_kernel(const Kinematics& kin, const DeltaPotential& pot);

SeriesKernel barrier_kernel(const Kinematics& kin, const SquareBarrier& pot);

/// t_n = (-i lambda)^n (t_0 = 1); r_n = (-i lambda)^n * reflection_factor
/// (r_0 = 0). Powers by repeated multiplication.
OrderTerm order_term(const SeriesKernel& kernel, int n);

/// Terms and running partial sums through order max_order, with the closed
/// form attached and the divergence flag set from |lambda|.
SeriesReport partial_sum(const SeriesKernel& kernel, int max_order);

/// Geometric closed form t = 1/(1 + i lambda),
/// r = (-i lambda/(1 + i lambda)) * reflection_factor.
/// Throws pole_error when |1 + i lambda| <= 1e-12.
ScatteringAmplitudes resum_closed(const SeriesKernel& kernel);

/// One Shanks step (S0 S2 - S1^2)/(S0 + S2 - 2 S1) evaluated with compensated
/// (double-double) products so divergent geometric sequences are summed to
/// full double accuracy. Throws acceleration_degenerate_error when the
/// denominator magnitude is below 1e-14.
cplx shanks_step(cplx s0, cplx s1, cplx s2);

/// Accelerated estimate of the series limit from a report with at least three
/// partial sums. shanks applies the first Shanks iteration (exact for a
/// geometric series); pade builds Wynn's epsilon table (even columns are the
/// diagonal Pade approximants) and returns its deepest even entry.
ScatteringAmplitudes accelerate(const SeriesReport& report, AccelMethod method);

/// Exact resummation of all diagrams with vertices on the comb sites: solves
/// the N x N system (I - K) c = b, K_jk = -i (m alpha_k / p) e^{i p |a_j - a_k|},
/// then forms t and r from the site amplitudes. Throws singular_system_error
/// when |det(I-K)| falls below 1e-12 relative to the Hadamard bound.
ScatteringAmplitudes comb_solve(const Kinematics& kin, const DeltaComb& pot);

enum class Channel { transmit, reflect };

/// First-order amplitude for the wall: -i V0 (m/p) * (e^{i dp a} - 1)/(i dp)
/// with dp = 0 (transmit, integral = a) or dp = -2p (reflect).
cplx barrier_first_order(const Kinematics& kin, const SquareBarrier& pot, Channel channel);

} // namespace scat1d

#endif
