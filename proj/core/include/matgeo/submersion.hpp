#pragma once

// Built-in submersions (sphere onto projective space over R and C, GL onto
// SPD by T -> T^T T, product projection onto a line), the orthogonal
// connection for the ambient Euclidean metric, horizontal path lifting by
// RK4, fiber transport around loops, and finite-difference connection
// curvature.  Points of the source manifold live in R^ambient_dim; values of
// the target live in a Euclidean embedding (projector matrices for the
// projective targets, symmetric matrices for SPD), flattened row-major with
// complex entries interleaved as (re, im).

#include <functional>
#include <vector>

#include "matgeo/linalg.hpp"

namespace matgeo {

enum class SubmersionKind { SphereToRP, SphereToCP, GlToSpd, ProductToLine };

// One of the built-in submersions f: M -> N.  Construction samples 20
// deterministic points of M and requires rank df_p = target_dim at each.
class SubmersionInstance {
public:
    // n is the projective dimension for the sphere kinds (n >= 1), the matrix
    // size for GlToSpd (n >= 2), or the source dimension for ProductToLine
    // (n >= 2).
    SubmersionInstance(SubmersionKind kind, int n);

    SubmersionKind kind() const { return kind_; }
    int parameter() const { return n_; }
    int ambient_dim() const { return ambient_; }
    int manifold_dim() const { return manifold_; }
    int target_dim() const { return target_; }
    int embedding_dim() const { return embedding_; }

    // f extended to a neighborhood of M (scale-invariant for the sphere
    // kinds), valued in the target embedding.
    Vector value(const Vector& p) const;

    // Retraction onto M: renormalization for the sphere kinds, the identity
    // for the open kinds.
    Vector reproject(const Vector& x) const;

    // Distance-to-manifold estimate; membership means residual <= 1e-9.
    double membership_residual(const Vector& p) const;

    // Orthonormal basis of T_pM in ambient coordinates.
    std::vector<Vector> tangent_basis(const Vector& p) const;

    // Central finite-difference differential df_p(tangent), step 1e-6.
    Vector differential(const Vector& p, const Vector& tangent) const;

private:
    SubmersionKind kind_;
    int n_;
    int ambient_;
    int manifold_;
    int target_;
    int embedding_;
};

enum class ConnectionMetric { AmbientEuclidean };

// Orthogonal connection H_p = orthogonal complement of V_p inside T_pM.
// Construction samples 10 points and requires the vertical and horizontal
// projectors to sum to the identity on T_pM to 1e-9.
class ConnectionState {
public:
    explicit ConnectionState(SubmersionInstance submersion,
                             ConnectionMetric metric = ConnectionMetric::AmbientEuclidean);

    const SubmersionInstance& submersion() const { return submersion_; }
    ConnectionMetric metric() const { return metric_; }

private:
    SubmersionInstance submersion_;
    ConnectionMetric metric_;
};

// Orthonormal basis of ker df_p (possibly empty), in ambient coordinates.
std::vector<Vector> vertical_space(const SubmersionInstance& s, const Vector& p);

// Orthonormal basis of H_p, in ambient coordinates.
std::vector<Vector> horizontal_space(const ConnectionState& c, const Vector& p);

// The unique h in H_p with df_p(h) = u, by a normal-equations solve.  Errors
// when u is not tangent to the target at f(p): least-squares residual above
// tangency_tol * max(1, |u|).
Vector lift_tangent(const ConnectionState& c, const Vector& p, const Vector& u,
                    double tangency_tol = 1e-6);

// Base path t -> alpha(t) in the target embedding, defined on [start, end].
struct BasePath {
    std::function<Vector(double)> value;
    double start = 0.0;
    double end = 1.0;
};

// Samples of a horizontal lift: f(points[i]) = alpha(times[i]) to 1e-7 and
// velocities[i] lies in the horizontal space at points[i].
struct LiftedPath {
    std::vector<double> times;
    std::vector<Vector> points;
    std::vector<Vector> velocities;
};

// RK4 integration of beta' = (df restricted to H)^{-1}(alpha'), with
// reprojection onto M after every step (drift budget 1e-9 per step).
// Requires f(p0) = alpha(start) to 1e-9 and step (end-start)/steps <= 1e-2.
// GlToSpd lifts error out of the condition <= 1e6 trust region.
LiftedPath horizontal_lift(const ConnectionState& c, const BasePath& alpha, const Vector& p0,
                           int steps);

// Transports each fiber sample over alpha(start) around a closed loop and
// returns the endpoints in input order.  The induced fiber map must keep the
// minimum pairwise distance within 10%.
std::vector<Vector> fiber_transport(const ConnectionState& c, const BasePath& loop,
                                    const std::vector<Vector>& samples, int steps);

// Vertical component at p of the bracket of the horizontal extensions of the
// constant target fields u1, u2, by central differences of the given step.
// Antisymmetric in (u1, u2), bilinear under scaling, and zero when the
// horizontal distribution is integrable.
Vector curvature_numeric(const ConnectionState& c, const Vector& p, const Vector& u1,
                         const Vector& u2, double step = 1e-4);

}  // namespace matgeo
