#pragma once

// Full-rank lattices basis(Z^n) in R^n: covolume, reduction onto the
// half-open fundamental parallelepiped (the torus R^n / L), exact integer
// unimodularity tests, lattice equality up to integer change of basis, and
// the annulus representative of a contraction orbit.  Complex lattices enter
// through realify(): C^n is handled as R^(2n), never natively.

#include "matgeo/linalg.hpp"

namespace matgeo {

// Lattice basis(Z^n): square, real-field, invertible basis.  The covolume
// |det basis| is computed once at construction.
class Lattice {
public:
    explicit Lattice(Matrix basis);

    const Matrix& basis() const { return basis_; }
    double covolume() const { return covolume_; }
    int dim() const { return basis_.rows(); }

private:
    Matrix basis_;
    double covolume_;
};

// Point of the torus R^n / L.  The stored fractional coordinates (the
// coordinates of basis^-1 rep) lie in [0, 1) exactly; rep = basis *
// fractional is cached.  Only the coset is canonical -- the representative
// depends on the chosen basis.
class TorusPoint {
public:
    TorusPoint(Lattice lattice, Vector fractional);

    const Lattice& lattice() const { return lattice_; }
    const Vector& fractional() const { return fractional_; }
    const Vector& rep() const { return rep_; }

private:
    // reduce_mod hands an already-reduced input through unchanged instead of
    // recomputing basis * fractional, which keeps reduction idempotent
    // bitwise; rep then agrees with basis * fractional to solve roundoff.
    TorusPoint(Lattice lattice, Vector fractional, Vector rep);
    friend TorusPoint reduce_mod(const Lattice& l, const Vector& x);

    Lattice lattice_;
    Vector fractional_;
    Vector rep_;
};

// |det basis|; covolume(T basis) = |det T| * covolume(basis).
double covolume(const Lattice& l);

// x mod L: the representative basis * frac(basis^-1 x) in the half-open
// fundamental parallelepiped.  A fractional part within 1e-12 (relative to
// the coordinate) of wrapping to 1 snaps to 0, so lattice points reduce to
// the zero vector exactly; inputs already reduced are returned unchanged.
TorusPoint reduce_mod(const Lattice& l, const Vector& x);

// True iff every entry of T is within 1e-9 of an integer and the rounded
// integer matrix has determinant exactly +1 (computed in integer arithmetic:
// permutation expansion for n <= 5, fraction-free elimination above).  Such
// matrices have integer inverses.
bool is_unimodular_integer(const Matrix& t);

// True iff basis2^-1 basis1 is an integer matrix with determinant +-1, i.e.
// the two bases generate the same lattice (orientation-free equality).
bool lattices_equal(const Lattice& l1, const Lattice& l2);

struct OrbitRepresentative {
    Vector rep;  // |rep| >= 1 > |A rep|
    int power;   // rep = A^power applied to the input
};

// The unique element w = A^j(v) of the orbit {A^k(v) : k in Z} with
// |w| >= 1 > |A(w)|.  Requires op_norm(A) < 1 strictly (orbit norms are then
// strictly monotone, so the annulus is crossed exactly once), A invertible,
// and v != 0.
OrbitRepresentative hopf_representative(const Matrix& a, const Vector& v);

// True iff every eigenvalue of A has modulus strictly below 1, so A^k(x)
// tends to zero for every x.  Decided from the computed eigenvalue moduli;
// weaker than the op_norm(A) < 1 hypothesis of hopf_representative.
bool spectral_radius_below_one(const Matrix& a);

}  // namespace matgeo
