#ifndef SCAT1D_ERRORS_HPP
#define SCAT1D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scat1d {

/// Requested accuracy cannot be met; carries the estimated bound on the error.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double estimated_bound)
        : std::runtime_error(what), bound(estimated_bound) {}
    double bound;
};

/// Resummation pole 1 + i*Lambda = 0 (bound-state condition).
class pole_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Multiple-scattering linear system is singular (resonance pole).
class singular_system_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shanks denominator below threshold; the sequence has already converged.
class acceleration_degenerate_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Transfer matrices with mismatched asymptotic momenta cannot be composed.
class composition_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Transmission pole |M22| below threshold.
class transmission_pole_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed config text; carries the 1-based line number.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, int line_number)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
          line(line_number) {}
    int line;
};

/// A config value violates an invariant; carries the offending field name.
class validation_error : public std::runtime_error {
public:
    validation_error(const std::string& field_name, const std::string& what)
        : std::runtime_error(field_name + ": " + what), field(field_name) {}
    std::string field;
};

} // namespace scat1d

#endif
