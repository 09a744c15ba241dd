#ifndef SCAT1D_ORACLE_HPP
#define SCAT1D_ORACLE_HPP

#include <span>
#include <string>
#include <vector>

#include "scat1d/kinematics.hpp"
#include "scat1d/potential.hpp"

namespace scat1d {

/// 2x2 complex matrix relating (right-mover, left-mover) plane-wave
/// coefficients across a region. Coefficients are referenced at the local
/// interface position, so junction matrices are position independent and a
/// uniform segment is a pure phase pair at V = 0.
struct TransferMatrix {
    cplx m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};
    double p_left = 0.0;
    double p_right = 0.0;

    cplx det() const { return m11 * m22 - m12 * m21; }
};

TransferMatrix tm_identity(double p);

/// Junction conditions of a delta of the given strength: psi continuous,
/// psi' jumps by 2 m alpha psi. M = [[1-iL, -iL], [iL, 1+iL]], L = m alpha / p.
TransferMatrix tm_delta_junction(const Kinematics& kin, double strength);

/// Exact propagation across a region of constant potential V of the given
/// length, expressed in the outside plane-wave basis. Entries depend on
/// q^2 = 2m(E-V) only, so E < V (tunneling) and the q -> 0 threshold need no
/// branch handling beyond a short series for sin(qL)/q.
TransferMatrix tm_uniform_segment(const Kinematics& kin, double height, double length);

/// Ordered product of a spatially left-to-right chain (first element applied
/// first). Throws composition_error if adjacent asymptotic momenta differ.
TransferMatrix tm_compose(std::span<const TransferMatrix> ms);

enum class OracleMethod { transfer_matrix, ode_integration };

struct OracleResult {
    cplx t;
    cplx r;
    double T = 0.0;
    double R = 0.0;
    OracleMethod method = OracleMethod::transfer_matrix;
    double est_error = 0.0;
};

/// Amplitudes in the position-referenced basis: t = 1/M22, r = M12/M22.
/// Throws transmission_pole_error when |M22| < 1e-14.
OracleResult tm_amplitudes(const TransferMatrix& m);

/// Builds the full junction/segment chain for a potential and returns globally
/// referenced amplitudes (same phase convention as the born module).
OracleResult tm_solve(const Kinematics& kin, const PotentialSpec& pot);

/// Integrates -psi''/(2m) + V psi = E psi across the support with classical
/// RK4 (fourth order); deltas enter as exact derivative jump conditions. The
/// result carries a Richardson error estimate from one step halving. Requires
/// p*h < 0.1 and |q|*h < 0.1 everywhere, else throws accuracy_error.
OracleResult ode_solve(const Kinematics& kin, const PotentialSpec& pot, double h);

} // namespace scat1d

#endif
