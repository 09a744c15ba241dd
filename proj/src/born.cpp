#include "scat1d/born.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "scat1d/errors.hpp"

namespace scat1d {

namespace {

constexpr cplx iu{0.0, 1.0};

// sin(x)/x with the short series below 1e-4 so the q -> 0 threshold is smooth.
double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// sin(q L)/q as a function of q^2 (real for both oscillatory and evanescent
// branches); series for small |q L| avoids the 0/0 at the threshold.
double sin_over_q(double q2, double L) {
    const double w = q2 * L * L; // (qL)^2, sign carries the branch
    if (std::abs(w) < 1e-8)
        return L * (1.0 - w / 6.0 + w * w / 120.0);
    if (q2 > 0.0) {
        const double q = std::sqrt(q2);
        return std::sin(q * L) / q;
    }
    const double kappa = std::sqrt(-q2);
    return std::sinh(kappa * L) / kappa;
}

// ---- compensated (double-double) arithmetic for the Shanks kernel ----

struct dd {
    double hi = 0.0;
    double lo = 0.0;
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd x, dd y) {
    dd s = two_sum(x.hi, y.hi);
    const double lo = x.lo + y.lo + s.lo;
    dd t = two_sum(s.hi, lo);
    return {t.hi, t.lo};
}

inline dd dd_neg(dd x) { return {-x.hi, -x.lo}; }

inline double dd_val(dd x) { return x.hi + x.lo; }

} // namespace

SeriesKernel delta_kernel(const Kinematics& kin, const DeltaPotential& pot) {
    SeriesKernel k;
    k.lambda = kin.mass * pot.strength / kin.p;
    k.convergent = std::abs(k.lambda) < 1.0;
    k.reflection_factor = std::exp(-2.0 * iu * kin.p * pot.position);
    k.p = kin.p;
    k.mass = kin.mass;
    return k;
}

SeriesKernel barrier_kernel(const Kinematics& kin, const SquareBarrier& pot) {
    pot.validate();
    const double m = kin.mass;
    const double k = kin.p;
    const double a = pot.width;
    const double V0 = pot.height;
    const double q2 = 2.0 * m * (kin.energy - V0);
    // V0 (e^{2iqa} - 1) / (4 sqrt(E(E-V0))) rewritten as
    // (i m V0 / k) e^{iqa} sin(qa)/q: analytic in q^2, so the evanescent
    // branch q = +i|q| and the q -> 0 threshold come out of one expression.
    const cplx q = q2 >= 0.0 ? cplx(std::sqrt(q2), 0.0) : cplx(0.0, std::sqrt(-q2));
    const cplx phase = std::exp(iu * q * a);

    SeriesKernel kern;
    kern.lambda = iu * (m * V0 / k) * phase * sin_over_q(q2, a);
    kern.convergent = std::abs(kern.lambda) < 1.0;
    kern.reflection_factor = sinc(k * a) * std::exp(-iu * k * a);
    kern.p = k;
    kern.mass = m;
    return kern;
}

OrderTerm order_term(const SeriesKernel& kernel, int n) {
    if (n < 0)
        throw std::invalid_argument("order_term: order must be non-negative");
    if (n == 0)
        return {0, cplx(1.0), cplx(0.0)};
    const cplx z = -iu * kernel.lambda;
    cplx t = 1.0;
    for (int i = 0; i < n; ++i) // repeated multiplication, never pow/log
        t *= z;
    return {n, t, t * kernel.reflection_factor};
}

SeriesReport partial_sum(const SeriesKernel& kernel, int max_order) {
    if (max_order < 0)
        throw std::invalid_argument("partial_sum: max_order must be non-negative");
    SeriesReport rep;
    rep.kernel = kernel;
    rep.divergent = !(std::abs(kernel.lambda) < 1.0);
    rep.terms.reserve(static_cast<std::size_t>(max_order) + 1);
    rep.partial_sums.reserve(static_cast<std::size_t>(max_order) + 1);

    const cplx z = -iu * kernel.lambda;
    cplx power = 1.0;
    cplx sum_t = 0.0;
    cplx sum_r = 0.0;
    for (int n = 0; n <= max_order; ++n) {
        cplx tn, rn;
        if (n == 0) {
            tn = 1.0;
            rn = 0.0;
        } else {
            power *= z;
            tn = power;
            rn = power * kernel.reflection_factor;
        }
        rep.terms.push_back({n, tn, rn});
        sum_t += tn;
        sum_r += rn;
        rep.partial_sums.push_back(ScatteringAmplitudes::from(sum_t, sum_r));
    }

    try {
        rep.closed_form = resum_closed(kernel);
    } catch (const pole_error&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        rep.closed_form = {cplx(nan, nan), cplx(nan, nan), nan, nan};
    }
    return rep;
}

ScatteringAmplitudes resum_closed(const SeriesKernel& kernel) {
    const cplx denom = 1.0 + iu * kernel.lambda;
    if (std::abs(denom) <= 1e-12)
        throw pole_error("resum_closed: 1 + i*lambda = 0 (bound-state condition)");
    const cplx t = 1.0 / denom;
    const cplx r = (-iu * kernel.lambda / denom) * kernel.reflection_factor;
    return ScatteringAmplitudes::from(t, r);
}

cplx shanks_step(cplx s0, cplx s1, cplx s2) {
    // numerator s2*s0 - s1^2 and denominator s0 + s2 - 2 s1, both evaluated in
    // double-double: the cancellation here is what limits plain-double Shanks
    // on steeply divergent sequences.
    dd num_re = dd_add(two_prod(s2.real(), s0.real()), dd_neg(two_prod(s2.imag(), s0.imag())));
    num_re = dd_add(num_re, dd_neg(two_prod(s1.real(), s1.real())));
    num_re = dd_add(num_re, two_prod(s1.imag(), s1.imag()));

    dd num_im = dd_add(two_prod(s2.real(), s0.imag()), two_prod(s2.imag(), s0.real()));
    dd cross = two_prod(s1.real(), s1.imag());
    num_im = dd_add(num_im, {-2.0 * cross.hi, -2.0 * cross.lo});

    dd den_re = dd_add(two_sum(s0.real(), s2.real()), {-2.0 * s1.real(), 0.0});
    dd den_im = dd_add(two_sum(s0.imag(), s2.imag()), {-2.0 * s1.imag(), 0.0});

    const cplx den(dd_val(den_re), dd_val(den_im));
    if (std::abs(den) < 1e-14)
        throw acceleration_degenerate_error("shanks_step: denominator below 1e-14 (already converged)");
    return cplx(dd_val(num_re), dd_val(num_im)) / den;
}

namespace {

// Wynn's epsilon table over a partial-sum sequence; even columns are the
// diagonal Pade approximants of the underlying series.
cplx wynn_epsilon(const std::vector<cplx>& seq) {
    std::vector<cplx> diag;
    diag.reserve(seq.size());
    cplx best = seq.back();
    for (std::size_t n = 0; n < seq.size(); ++n) {
        diag.push_back(seq[n]);
        cplx aux2 = 0.0;
        for (std::size_t j = diag.size() - 1; j > 0; --j) {
            const cplx aux1 = aux2;
            aux2 = diag[j - 1];
            const cplx diff = diag[j] - aux2;
            if (std::abs(diff) <= std::numeric_limits<double>::min())
                diag[j - 1] = aux1 + 1.0 / std::numeric_limits<double>::max();
            else
                diag[j - 1] = aux1 + 1.0 / diff;
        }
        best = (diag.size() % 2 == 1) ? diag[0] : diag[1];
    }
    return best;
}

} // namespace

ScatteringAmplitudes accelerate(const SeriesReport& report, AccelMethod method) {
    const auto& ps = report.partial_sums;
    if (ps.size() < 3)
        throw std::invalid_argument("accelerate: need at least 3 partial sums");

    if (method == AccelMethod::shanks) {
        const cplx t = shanks_step(ps[0].t, ps[1].t, ps[2].t);
        cplx r;
        try {
            r = shanks_step(ps[0].r, ps[1].r, ps[2].r);
        } catch (const acceleration_degenerate_error&) {
            r = ps.back().r; // reflection channel already converged (e.g. r == 0)
        }
        return ScatteringAmplitudes::from(t, r);
    }

    std::vector<cplx> st(ps.size()), sr(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        st[i] = ps[i].t;
        sr[i] = ps[i].r;
    }
    return ScatteringAmplitudes::from(wynn_epsilon(st), wynn_epsilon(sr));
}

namespace {

// Dense complex solve by Gaussian elimination with partial pivoting. Returns
// the determinant; `a` is n x n row-major and is destroyed.
cplx solve_dense(std::vector<cplx>& a, std::vector<cplx>& b, std::size_t n) {
    cplx det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double mag = std::abs(a[row * n + col]);
            if (mag > best) {
                best = mag;
                piv = row;
            }
        }
        if (piv != col) {
            for (std::size_t k = col; k < n; ++k)
                std::swap(a[piv * n + k], a[col * n + k]);
            std::swap(b[piv], b[col]);
            det = -det;
        }
        const cplx d = a[col * n + col];
        det *= d;
        if (d == cplx(0.0))
            return 0.0;
        for (std::size_t row = col + 1; row < n; ++row) {
            const cplx f = a[row * n + col] / d;
            if (f == cplx(0.0))
                continue;
            a[row * n + col] = 0.0;
            for (std::size_t k = col + 1; k < n; ++k)
                a[row * n + k] -= f * a[col * n + k];
            b[row] -= f * b[col];
        }
    }
    for (std::size_t row = n; row-- > 0;) {
        cplx acc = b[row];
        for (std::size_t k = row + 1; k < n; ++k)
            acc -= a[row * n + k] * b[k];
        b[row] = acc / a[row * n + row];
    }
    return det;
}

} // namespace

ScatteringAmplitudes comb_solve(const Kinematics& kin, const DeltaComb& pot) {
    pot.validate();
    const double m = kin.mass;
    const double p = kin.p;
    const auto& sites = pot.sites;
    const std::size_t n = sites.size();

    std::vector<cplx> a(n * n);
    std::vector<cplx> c(n);
    for (std::size_t j = 0; j < n; ++j) {
        c[j] = std::exp(-iu * p * sites[j].position);
        for (std::size_t k = 0; k < n; ++k) {
            const cplx kjk = -iu * (m * sites[k].strength / p) *
                             std::exp(iu * p * std::abs(sites[j].position - sites[k].position));
            a[j * n + k] = (j == k ? cplx(1.0) : cplx(0.0)) - kjk;
        }
    }

    double hadamard = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double row2 = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            row2 += std::norm(a[j * n + k]);
        hadamard *= std::sqrt(row2);
    }

    const cplx det = solve_dense(a, c, n);
    if (std::abs(det) < 1e-12 * hadamard)
        throw singular_system_error("comb_solve: det(I - K) below 1e-12 relative (resonance pole)");

    cplx t_moment = 0.0;
    cplx r_moment = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        t_moment += sites[j].strength * std::exp(iu * p * sites[j].position) * c[j];
        r_moment += sites[j].strength * std::exp(-iu * p * sites[j].position) * c[j];
    }
    const cplx t = 1.0 - iu * (m / p) * t_moment;
    const cplx r = -iu * (m / p) * r_moment;
    return ScatteringAmplitudes::from(t, r);
}

cplx barrier_first_order(const Kinematics& kin, const SquareBarrier& pot, Channel channel) {
    pot.validate();
    const double m = kin.mass;
    const double p = kin.p;
    const double a = pot.width;
    // closed form of int_0^a e^{i dp z} dz, dp = 0 or -2p; the dp = 0 limit
    // is the interval length
    cplx integral;
    if (channel == Channel::transmit)
        integral = a;
    else
        integral = a * sinc(p * a) * std::exp(-iu * p * a);
    return -iu * pot.height * (m / p) * integral;
}

} // namespace scat1d
