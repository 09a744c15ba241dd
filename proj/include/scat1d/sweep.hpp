#ifndef SCAT1D_SWEEP_HPP
#define SCAT1D_SWEEP_HPP

#include <string>

#include "scat1d/config.hpp"

namespace scat1d {

// Exit statuses shared by all subcommands.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 1;
inline constexpr int exit_partial_failure = 2;
inline constexpr int exit_divergent = 3;

/// Fully rendered output of one subcommand run. csv is byte-deterministic for
/// identical configs: fixed headers, 17-significant-digit scientific floats
/// via std::to_chars, rows in grid order.
struct RunOutcome {
    int exit_code = exit_ok;
    std::string csv;
};

/// One closed-form (or comb-resummed) amplitude row per grid energy.
/// Header: E,p,re_t,im_t,re_r,im_r,T,R,unitarity_residual,method,order
RunOutcome cmd_amplitudes(const RunConfig& cfg);

/// Per-order table at grid.e_min: term, partial sums, error against the
/// closed form, plus one accelerated row when requested. Divergent series
/// without acceleration still emits the table and returns exit_divergent.
RunOutcome cmd_series(const RunConfig& cfg);

/// Series-form amplitudes against the transfer-matrix and ODE oracles with
/// per-row deviations and trailing `#` summary lines of the maxima.
RunOutcome cmd_compare(const RunConfig& cfg);

/// Locale-independent float formatting used in all CSV output.
std::string format_double(double v);

} // namespace scat1d

#endif
