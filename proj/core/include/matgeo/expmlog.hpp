#pragma once

// Matrix exponential by scaling-and-squaring of the truncated Taylor series,
// its algebraic identities (inverse, adjoint, commuting product rule,
// det o exp = exp o tr, the defining ODE), and matrix logarithms: the unique
// self-adjoint log of a positive-definite matrix, the anti-self-adjoint log
// of a unitary, the real antisymmetric log of a rotation, and the existence
// decision for real logs of real matrices.

#include <optional>
#include <vector>

#include "matgeo/linalg.hpp"
#include "matgeo/spectral.hpp"

namespace matgeo {

struct ExpResult {
    Matrix value;
    int scaling_squarings;  // >= 0, halvings applied before the series
    int taylor_terms;       // >= 1, series terms summed (identity included)
};

// Scale by 2^-s with s = max(0, ceil(log2 ||A||_op)), sum the Taylor series
// until the a-priori next-term bound ||A/2^s||^k / k! drops to 1e-18, then
// square s times.  Total on square matrices.
ExpResult expm(const Matrix& a);

struct ExpIdentityReport {
    double inverse_residual;  // || exp(A) exp(-A) - I ||_HS
    double adjoint_residual;  // || exp(A)* - exp(A*) ||_HS
    double product_residual;  // || exp(A+B) - exp(A) exp(B) ||_HS
    bool commuting;           // || AB - BA ||_HS <= 1e-12
    bool ok;                  // every identity that applies holds to 1e-9 rel.
};

// Residuals of the exponential identities; the product rule only counts
// toward `ok` when the inputs commute.
ExpIdentityReport expm_identities_check(const Matrix& a, const Matrix& b);

struct DetExpIdentity {
    Cplx det_of_exp;    // det(expm(A)), by LU
    Cplx exp_of_trace;  // scalar exp of trace(A)
};

// Two independent evaluations of the same number.
DetExpIdentity det_exp_identity(const Matrix& a);

// Integrates E' = A E, E(0) = I by one classical RK4 step per grid interval
// (grid strictly ascending, starting at or after 0) and returns the largest
// deviation ||E_rk4(t) - expm(tA)||_HS over the grid.
double exp_ode_residual(const Matrix& a, const std::vector<double>& t_grid);

// Self-adjoint log of a self-adjoint positive-definite matrix (smallest
// eigenvalue must exceed 1e-12 * largest magnitude eigenvalue), via eigh.
Matrix logm_spd(const Matrix& p);

// Unique self-adjoint positive-definite square root, same domain as logm_spd.
Matrix sqrtm_spd(const Matrix& p);

// Anti-self-adjoint log of a unitary: principal arguments in (-pi, pi] on the
// eig_normal eigenbasis.  Requires a Complex-tagged U with U*U = I to 1e-9
// relative to the identity.
Matrix logm_unitary(const Matrix& u);

// Real antisymmetric log of a special orthogonal matrix.  Rotation angles are
// read off the complex spectrum; eigenvalues within 1e-7 of -1 are treated as
// angle pi and paired on a real kernel basis (det = 1 makes their count
// even).  A reflection (det = -1) throws precondition_error
// ("NoRealAntisymmetricLog"): only the rotation group is in the image of the
// antisymmetric exponential.
Matrix logm_special_orthogonal(const Matrix& r);

enum class LogObstruction { None, NegativeRealEigenvalue, Singular };

struct LogReport {
    std::optional<Matrix> value;  // a real log, present when exists_real
    bool exists_real;
    LogObstruction obstruction;  // exists_real == false implies != None
};

// Decides whether a real square matrix is exp(A) for some real A, on the
// class of matrices diagonalizable over C: singular inputs and negative real
// eigenvalues of odd multiplicity are obstructions; otherwise a log is built
// from the complex diagonalization with conjugate-paired columns (negative
// eigenvalue pairs get principal values ln r +- i pi).  Inputs detected as
// non-diagonalizable throw unsupported_error.
LogReport real_log_exists(const Matrix& b);

}  // namespace matgeo
