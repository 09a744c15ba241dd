#include "scat1d/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "scat1d/errors.hpp"
#include "scat1d/oracle.hpp"

namespace scat1d {

namespace {

const double qnan = std::numeric_limits<double>::quiet_NaN();

void append_double(std::string& s, double v) {
    if (v == 0.0)
        v = 0.0; // normalize -0
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
    s.append(buf, res.ptr);
}

void append_row_start(std::string& s, double E, double p) {
    append_double(s, E);
    s.push_back(',');
    append_double(s, p);
}

void append_amp(std::string& s, const ScatteringAmplitudes& amp) {
    for (const double v : {amp.t.real(), amp.t.imag(), amp.r.real(), amp.r.imag(), amp.T, amp.R}) {
        s.push_back(',');
        append_double(s, v);
    }
}

ScatteringAmplitudes nan_amplitudes() {
    return {cplx(qnan, qnan), cplx(qnan, qnan), qnan, qnan};
}

// convention.paper_sign flips the coupling sign inside the series kernels
double coupling_sign(const RunConfig& cfg) { return cfg.convention.paper_sign ? -1.0 : 1.0; }

DeltaComb signed_comb(const DeltaComb& c, double sign) {
    DeltaComb out = c;
    for (auto& s : out.sites)
        s.strength *= sign;
    return out;
}

SeriesKernel kernel_for(const RunConfig& cfg, const Kinematics& kin) {
    const double sign = coupling_sign(cfg);
    SeriesKernel kern;
    if (const auto* d = std::get_if<DeltaPotential>(&cfg.potential))
        kern = delta_kernel(kin, *d);
    else if (const auto* b = std::get_if<SquareBarrier>(&cfg.potential))
        kern = barrier_kernel(kin, *b);
    else
        throw validation_error("potential.kind", "per-order series requires a delta or barrier potential");
    kern.lambda *= sign;
    kern.convergent = std::abs(kern.lambda) < 1.0;
    return kern;
}

double ode_step_for(const RunConfig& cfg, const Kinematics& kin) {
    double qmax = kin.p;
    if (const auto* b = std::get_if<SquareBarrier>(&cfg.potential))
        qmax = std::max(qmax, std::sqrt(2.0 * kin.mass * std::abs(kin.energy - b->height)));
    return std::min(0.04 / qmax, 0.02);
}

} // namespace

std::string format_double(double v) {
    std::string s;
    append_double(s, v);
    return s;
}

RunOutcome cmd_amplitudes(const RunConfig& cfg) {
    RunOutcome out;
    out.csv = "E,p,re_t,im_t,re_r,im_r,T,R,unitarity_residual,method,order\n";
    bool partial_failure = false;
    const double sign = coupling_sign(cfg);

    for (const double E : energy_grid(cfg)) {
        const Kinematics kin(cfg.mass, E);
        ScatteringAmplitudes amp;
        const char* method = "closed";
        try {
            if (const auto* c = std::get_if<DeltaComb>(&cfg.potential)) {
                amp = comb_solve(kin, signed_comb(*c, sign));
                method = "comb";
            } else {
                amp = resum_closed(kernel_for(cfg, kin));
            }
        } catch (const pole_error&) {
            amp = nan_amplitudes();
            method = "pole";
            partial_failure = true;
        } catch (const singular_system_error&) {
            amp = nan_amplitudes();
            method = "pole";
            partial_failure = true;
        }
        append_row_start(out.csv, E, kin.p);
        append_amp(out.csv, amp);
        out.csv.push_back(',');
        append_double(out.csv, std::abs(amp.T + amp.R - 1.0));
        out.csv += ",";
        out.csv += method;
        out.csv += ",-1\n";
    }
    out.exit_code = partial_failure ? exit_partial_failure : exit_ok;
    return out;
}

RunOutcome cmd_series(const RunConfig& cfg) {
    RunOutcome out;
    out.csv = "order,re_t_n,im_t_n,re_r_n,im_r_n,partial_T,partial_R,abs_err_t,method\n";

    const double E = energy_grid(cfg).front();
    const Kinematics kin(cfg.mass, E);
    const SeriesKernel kern = kernel_for(cfg, kin);
    SeriesReport rep = partial_sum(kern, cfg.series.max_order);
    const bool closed_ok = std::isfinite(rep.closed_form.T);

    for (std::size_t n = 0; n < rep.terms.size(); ++n) {
        const OrderTerm& term = rep.terms[n];
        const ScatteringAmplitudes& ps = rep.partial_sums[n];
        out.csv += std::to_string(term.order);
        for (const double v : {term.t.real(), term.t.imag(), term.r.real(), term.r.imag(), ps.T, ps.R}) {
            out.csv.push_back(',');
            append_double(out.csv, v);
        }
        out.csv.push_back(',');
        append_double(out.csv, closed_ok ? std::abs(ps.t - rep.closed_form.t) : qnan);
        out.csv += ",term\n";
    }

    int code = exit_ok;
    if (cfg.series.acceleration != Acceleration::none) {
        const AccelMethod method = cfg.series.acceleration == Acceleration::shanks
                                       ? AccelMethod::shanks
                                       : AccelMethod::pade;
        try {
            const ScatteringAmplitudes acc = accelerate(rep, method);
            rep.accelerated = {method, acc};
            out.csv += "-1";
            for (const double v : {acc.t.real(), acc.t.imag(), acc.r.real(), acc.r.imag(), acc.T, acc.R}) {
                out.csv.push_back(',');
                append_double(out.csv, v);
            }
            out.csv.push_back(',');
            append_double(out.csv, closed_ok ? std::abs(acc.t - rep.closed_form.t) : qnan);
            out.csv += cfg.series.acceleration == Acceleration::shanks ? ",shanks\n" : ",pade\n";
        } catch (const acceleration_degenerate_error&) {
            out.csv += "# acceleration degenerate: series already converged\n";
            code = exit_partial_failure;
        } catch (const std::invalid_argument&) {
            out.csv += "# acceleration needs at least 3 partial sums\n";
            code = exit_partial_failure;
        }
    } else if (rep.divergent) {
        out.csv += "# series divergent; no acceleration requested\n";
        code = exit_divergent;
    }
    if (!closed_ok) {
        out.csv += "# closed form undefined: resummation pole 1 + i*lambda = 0\n";
        code = exit_partial_failure;
    }
    out.exit_code = code;
    return out;
}

namespace {

// The wall's geometric form resummed from its own first-order channel
// amplitudes; first-order exact, so its deviation from the exact amplitude
// measures the neglected higher-order structure.
ScatteringAmplitudes barrier_series_form(const Kinematics& kin, const SquareBarrier& b, double sign) {
    const cplx f_t = sign * barrier_first_order(kin, b, Channel::transmit);
    const cplx f_r = sign * barrier_first_order(kin, b, Channel::reflect);
    const cplx t = 1.0 / (1.0 - f_t);
    return ScatteringAmplitudes::from(t, f_r * t);
}

} // namespace

RunOutcome cmd_compare(const RunConfig& cfg) {
    RunOutcome out;
    out.csv = "E,p,re_t_series,im_t_series,re_r_series,im_r_series,T_series,R_series,"
              "re_t_tm,im_t_tm,re_t_ode,im_t_ode,dev_t_tm,dev_T_tm,dev_t_ode,dev_T_ode,flag\n";
    bool partial_failure = false;
    const double sign = coupling_sign(cfg);
    double max_dev_t_tm = 0.0, max_dev_T_tm = 0.0, max_dev_t_ode = 0.0, max_dev_T_ode = 0.0;

    for (const double E : energy_grid(cfg)) {
        const Kinematics kin(cfg.mass, E);
        ScatteringAmplitudes series = nan_amplitudes();
        const char* flag = "ok";
        try {
            if (const auto* c = std::get_if<DeltaComb>(&cfg.potential))
                series = comb_solve(kin, signed_comb(*c, sign));
            else if (const auto* b = std::get_if<SquareBarrier>(&cfg.potential))
                series = barrier_series_form(kin, *b, sign);
            else
                series = resum_closed(kernel_for(cfg, kin));
        } catch (const pole_error&) {
            flag = "pole";
            partial_failure = true;
        } catch (const singular_system_error&) {
            flag = "pole";
            partial_failure = true;
        }

        cplx t_tm(qnan, qnan), t_ode(qnan, qnan);
        double T_tm = qnan, T_ode = qnan;
        try {
            const OracleResult tm = tm_solve(kin, cfg.potential);
            t_tm = tm.t;
            T_tm = tm.T;
            const OracleResult ode = ode_solve(kin, cfg.potential, ode_step_for(cfg, kin));
            t_ode = ode.t;
            T_ode = ode.T;
        } catch (const std::exception&) {
            flag = "oracle_fail";
            partial_failure = true;
        }

        const double dev_t_tm = std::abs(series.t - t_tm);
        const double dev_T_tm = std::abs(series.T - T_tm);
        const double dev_t_ode = std::abs(series.t - t_ode);
        const double dev_T_ode = std::abs(series.T - T_ode);
        if (std::isfinite(dev_t_tm)) {
            max_dev_t_tm = std::max(max_dev_t_tm, dev_t_tm);
            max_dev_T_tm = std::max(max_dev_T_tm, dev_T_tm);
        }
        if (std::isfinite(dev_t_ode)) {
            max_dev_t_ode = std::max(max_dev_t_ode, dev_t_ode);
            max_dev_T_ode = std::max(max_dev_T_ode, dev_T_ode);
        }

        append_row_start(out.csv, E, kin.p);
        append_amp(out.csv, series);
        for (const double v : {t_tm.real(), t_tm.imag(), t_ode.real(), t_ode.imag(),
                               dev_t_tm, dev_T_tm, dev_t_ode, dev_T_ode}) {
            out.csv.push_back(',');
            append_double(out.csv, v);
        }
        out.csv += ",";
        out.csv += flag;
        out.csv.push_back('\n');
    }

    out.csv += "# max_dev_t_tm = " + format_double(max_dev_t_tm) + "\n";
    out.csv += "# max_dev_T_tm = " + format_double(max_dev_T_tm) + "\n";
    out.csv += "# max_dev_t_ode = " + format_double(max_dev_t_ode) + "\n";
    out.csv += "# max_dev_T_ode = " + format_double(max_dev_T_ode) + "\n";
    out.exit_code = partial_failure ? exit_partial_failure : exit_ok;
    return out;
}

} // namespace scat1d
