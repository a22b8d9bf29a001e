#include "matgeo/submersion.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "matgeo/error.hpp"
#include "matgeo/spectral.hpp"

namespace matgeo {

namespace {

constexpr double kDiffStep = 1e-6;      // central-difference step for df
constexpr double kRankTol = 1e-6;       // singular values below this are kernel
constexpr double kMembershipTol = 1e-9;
constexpr double kDriftBudget = 1e-9;   // reprojection distance per RK4 step
constexpr double kTrackTol = 1e-7;      // |f(beta) - alpha| along a lift
constexpr double kTrustCondition = 1e6; // GlToSpd invertibility trust region

void require(bool ok, const char* what) {
    if (!ok) throw precondition_error(what);
}

double real_dot(const Vector& a, const Vector& b) { return inner_product(a, b).real(); }

Matrix to_square(const Vector& x, int n) {
    Matrix m(n, n, Field::Real);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = x[i * n + j].real();
    }
    return m;
}

Vector flatten_real(const Matrix& m) {
    Vector out = Vector::zero(Field::Real, m.rows() * m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j).real();
    }
    return out;
}

std::uint64_t sample_seed(SubmersionKind kind, int n) {
    return 0x53554253u ^ (static_cast<std::uint64_t>(kind) << 8) ^ static_cast<std::uint64_t>(n);
}

double symmetric_unit(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

// Deterministic on-manifold point: a normalized direction for the sphere
// kinds, a bounded perturbation of the identity (singular values >= 1/2) for
// GlToSpd, and a box sample for the product.
Vector sample_point(const SubmersionInstance& s, std::mt19937_64& rng) {
    const int m = s.ambient_dim();
    Vector x = Vector::zero(Field::Real, m);
    switch (s.kind()) {
        case SubmersionKind::SphereToRP:
        case SubmersionKind::SphereToCP: {
            double r = 0.0;
            do {
                for (int i = 0; i < m; ++i) x[i] = symmetric_unit(rng);
                r = norm(x);
            } while (r < 1e-3);
            return (1.0 / r) * x;
        }
        case SubmersionKind::GlToSpd: {
            const int n = s.parameter();
            for (int i = 0; i < m; ++i) x[i] = (0.5 / n) * symmetric_unit(rng);
            for (int i = 0; i < n; ++i) x[i * n + i] += 1.0;
            return x;
        }
        case SubmersionKind::ProductToLine: {
            for (int i = 0; i < m; ++i) x[i] = symmetric_unit(rng);
            return x;
        }
    }
    throw precondition_error("unknown submersion kind");
}

Matrix differential_matrix(const SubmersionInstance& s, const Vector& p,
                           const std::vector<Vector>& tangent) {
    std::vector<Vector> columns;
    columns.reserve(tangent.size());
    for (const Vector& t : tangent) columns.push_back(s.differential(p, t));
    return Matrix::from_columns(columns);
}

// Combines frame coefficients back into an ambient vector.
Vector from_frame(const std::vector<Vector>& frame, const Vector& coefficients, int ambient) {
    Vector out = Vector::zero(Field::Real, ambient);
    for (size_t j = 0; j < frame.size(); ++j) out = out + coefficients[static_cast<int>(j)].real() * frame[j];
    return out;
}

// Least-squares horizontal preimage of u under df_p; fills the residual of
// the normal-equations fit when requested.  No tangency check here: callers
// near (but not at) an anchor point see residuals of order |u| * distance.
Vector lift_least_squares(const ConnectionState& c, const Vector& p, const Vector& u,
                          double* residual) {
    const SubmersionInstance& s = c.submersion();
    const std::vector<Vector> horizontal = horizontal_space(c, p);
    std::vector<Vector> columns;
    columns.reserve(horizontal.size());
    for (const Vector& h : horizontal) columns.push_back(s.differential(p, h));
    const Matrix g = Matrix::from_columns(columns);
    const Vector coefficients = solve(adjoint(g) * g, apply(adjoint(g), u));
    if (residual != nullptr) *residual = norm(apply(g, coefficients) - u);
    return from_frame(horizontal, coefficients, s.ambient_dim());
}

void check_trust_region(const SubmersionInstance& s, const Vector& p) {
    if (s.kind() != SubmersionKind::GlToSpd) return;
    if (condition_estimate(to_square(p, s.parameter())) > kTrustCondition) {
        throw convergence_error("lift left the invertibility trust region");
    }
}

void check_embedding_vector(const SubmersionInstance& s, const Vector& u, const char* what) {
    require(u.field() == Field::Real && u.dim() == s.embedding_dim(), what);
}

}  // namespace

SubmersionInstance::SubmersionInstance(SubmersionKind kind, int n) : kind_(kind), n_(n) {
    switch (kind) {
        case SubmersionKind::SphereToRP:
            require(n >= 1, "SphereToRP needs projective dimension >= 1");
            ambient_ = n + 1;
            manifold_ = n;
            target_ = n;
            embedding_ = (n + 1) * (n + 1);
            break;
        case SubmersionKind::SphereToCP:
            require(n >= 1, "SphereToCP needs projective dimension >= 1");
            ambient_ = 2 * n + 2;
            manifold_ = 2 * n + 1;
            target_ = 2 * n;
            embedding_ = 2 * (n + 1) * (n + 1);
            break;
        case SubmersionKind::GlToSpd:
            require(n >= 2, "GlToSpd needs matrix size >= 2");
            ambient_ = n * n;
            manifold_ = n * n;
            target_ = n * (n + 1) / 2;
            embedding_ = n * n;
            break;
        case SubmersionKind::ProductToLine:
            require(n >= 2, "ProductToLine needs source dimension >= 2");
            ambient_ = n;
            manifold_ = n;
            target_ = 1;
            embedding_ = 1;
            break;
        default:
            throw precondition_error("unknown submersion kind");
    }
    require(target_ < ambient_, "target dimension must be below the ambient dimension");
    std::mt19937_64 rng(sample_seed(kind, n));
    for (int trial = 0; trial < 20; ++trial) {
        const Vector p = sample_point(*this, rng);
        const std::vector<Vector> tangent = tangent_basis(p);
        const std::vector<Vector> kernel = null_space(differential_matrix(*this, p, tangent), kRankTol);
        require(static_cast<int>(kernel.size()) == manifold_ - target_,
                "differential is not surjective at a sampled point");
    }
}

Vector SubmersionInstance::value(const Vector& p) const {
    require(p.field() == Field::Real && p.dim() == ambient_, "point has the wrong shape");
    switch (kind_) {
        case SubmersionKind::SphereToRP: {
            const double r = norm(p);
            require(r > 0.0, "the zero vector has no projective image");
            Vector out = Vector::zero(Field::Real, embedding_);
            for (int i = 0; i <= n_; ++i) {
                const double ui = p[i].real() / r;
                for (int j = 0; j <= n_; ++j) out[i * (n_ + 1) + j] = ui * (p[j].real() / r);
            }
            return out;
        }
        case SubmersionKind::SphereToCP: {
            const double r = norm(p);
            require(r > 0.0, "the zero vector has no projective image");
            std::vector<Cplx> z(static_cast<size_t>(n_) + 1);
            for (int k = 0; k <= n_; ++k) {
                z[static_cast<size_t>(k)] = Cplx(p[2 * k].real() / r, p[2 * k + 1].real() / r);
            }
            Vector out = Vector::zero(Field::Real, embedding_);
            for (int i = 0; i <= n_; ++i) {
                for (int j = 0; j <= n_; ++j) {
                    const Cplx e = z[static_cast<size_t>(i)] * std::conj(z[static_cast<size_t>(j)]);
                    out[2 * (i * (n_ + 1) + j)] = e.real();
                    out[2 * (i * (n_ + 1) + j) + 1] = e.imag();
                }
            }
            return out;
        }
        case SubmersionKind::GlToSpd: {
            const Matrix t = to_square(p, n_);
            return flatten_real(adjoint(t) * t);
        }
        case SubmersionKind::ProductToLine:
            return Vector::real({p[0].real()});
    }
    throw precondition_error("unknown submersion kind");
}

Vector SubmersionInstance::reproject(const Vector& x) const {
    require(x.field() == Field::Real && x.dim() == ambient_, "point has the wrong shape");
    if (kind_ == SubmersionKind::SphereToRP || kind_ == SubmersionKind::SphereToCP) {
        const double r = norm(x);
        require(r > 0.0, "cannot reproject the zero vector onto the sphere");
        return (1.0 / r) * x;
    }
    return x;
}

double SubmersionInstance::membership_residual(const Vector& p) const {
    require(p.field() == Field::Real && p.dim() == ambient_, "point has the wrong shape");
    switch (kind_) {
        case SubmersionKind::SphereToRP:
        case SubmersionKind::SphereToCP:
            return std::abs(norm(p) - 1.0);
        case SubmersionKind::GlToSpd:
            return lu_factor(to_square(p, n_)).singular ? 1.0 : 0.0;
        case SubmersionKind::ProductToLine:
            return 0.0;
    }
    throw precondition_error("unknown submersion kind");
}

std::vector<Vector> SubmersionInstance::tangent_basis(const Vector& p) const {
    require(p.field() == Field::Real && p.dim() == ambient_, "point has the wrong shape");
    if (kind_ == SubmersionKind::GlToSpd || kind_ == SubmersionKind::ProductToLine) {
        std::vector<Vector> basis;
        basis.reserve(static_cast<size_t>(ambient_));
        for (int j = 0; j < ambient_; ++j) basis.push_back(Vector::basis(Field::Real, ambient_, j));
        return basis;
    }
    // Sphere kinds: complete the unit normal to a frame; a second pass
    // restores orthogonality lost on nearly dependent candidates.
    std::vector<Vector> candidates{reproject(p)};
    for (int j = 0; j < ambient_; ++j) candidates.push_back(Vector::basis(Field::Real, ambient_, j));
    std::vector<Vector> frame = gram_schmidt(gram_schmidt(candidates));
    require(static_cast<int>(frame.size()) == ambient_, "tangent frame is incomplete");
    frame.erase(frame.begin());
    return frame;
}

Vector SubmersionInstance::differential(const Vector& p, const Vector& tangent) const {
    require(tangent.field() == Field::Real && tangent.dim() == ambient_,
            "tangent vector has the wrong shape");
    const Vector plus = value(p + kDiffStep * tangent);
    const Vector minus = value(p - kDiffStep * tangent);
    return (0.5 / kDiffStep) * (plus - minus);
}

ConnectionState::ConnectionState(SubmersionInstance submersion, ConnectionMetric metric)
    : submersion_(std::move(submersion)), metric_(metric) {
    std::mt19937_64 rng(sample_seed(submersion_.kind(), submersion_.parameter()) ^ 0xC0FFEE);
    for (int trial = 0; trial < 10; ++trial) {
        const Vector p = sample_point(submersion_, rng);
        const std::vector<Vector> vertical = vertical_space(submersion_, p);
        const std::vector<Vector> horizontal = horizontal_space(*this, p);
        for (const Vector& t : submersion_.tangent_basis(p)) {
            Vector recomposed = Vector::zero(Field::Real, submersion_.ambient_dim());
            for (const Vector& v : vertical) recomposed = recomposed + real_dot(t, v) * v;
            for (const Vector& h : horizontal) recomposed = recomposed + real_dot(t, h) * h;
            require(norm(recomposed - t) <= 1e-9,
                    "vertical and horizontal projectors do not sum to the identity");
        }
    }
}

std::vector<Vector> vertical_space(const SubmersionInstance& s, const Vector& p) {
    require(s.membership_residual(p) <= kMembershipTol, "point is off the manifold");
    const Vector q = s.reproject(p);
    const std::vector<Vector> tangent = s.tangent_basis(q);
    const std::vector<Vector> kernel = null_space(differential_matrix(s, q, tangent), kRankTol);
    require(static_cast<int>(kernel.size()) == s.manifold_dim() - s.target_dim(),
            "differential rank collapsed at the query point");
    std::vector<Vector> basis;
    basis.reserve(kernel.size());
    for (const Vector& c : kernel) basis.push_back(from_frame(tangent, c, s.ambient_dim()));
    return basis;
}

std::vector<Vector> horizontal_space(const ConnectionState& c, const Vector& p) {
    const SubmersionInstance& s = c.submersion();
    const std::vector<Vector> vertical = vertical_space(s, p);
    const Vector q = s.reproject(p);
    const std::vector<Vector> tangent = s.tangent_basis(q);
    if (vertical.empty()) return tangent;
    // H = kernel of the vertical coefficient rows in the tangent frame.
    Matrix rows(static_cast<int>(vertical.size()), static_cast<int>(tangent.size()), Field::Real);
    for (size_t i = 0; i < vertical.size(); ++i) {
        for (size_t j = 0; j < tangent.size(); ++j) {
            rows(static_cast<int>(i), static_cast<int>(j)) = real_dot(vertical[i], tangent[j]);
        }
    }
    const std::vector<Vector> kernel = null_space(rows, kRankTol);
    require(kernel.size() == tangent.size() - vertical.size(),
            "horizontal complement has the wrong dimension");
    std::vector<Vector> basis;
    basis.reserve(kernel.size());
    for (const Vector& k : kernel) basis.push_back(from_frame(tangent, k, s.ambient_dim()));
    return basis;
}

Vector lift_tangent(const ConnectionState& c, const Vector& p, const Vector& u,
                    double tangency_tol) {
    const SubmersionInstance& s = c.submersion();
    require(s.membership_residual(p) <= kMembershipTol, "point is off the manifold");
    check_embedding_vector(s, u, "target direction has the wrong shape");
    double residual = 0.0;
    const Vector lifted = lift_least_squares(c, s.reproject(p), u, &residual);
    require(residual <= tangency_tol * std::max(1.0, norm(u)),
            "direction is not tangent to the target");
    return lifted;
}

LiftedPath horizontal_lift(const ConnectionState& c, const BasePath& alpha, const Vector& p0,
                           int steps) {
    const SubmersionInstance& s = c.submersion();
    require(static_cast<bool>(alpha.value), "base path has no callable");
    require(alpha.end > alpha.start, "base path interval is empty");
    require(steps >= 1, "step count must be positive");
    const double h = (alpha.end - alpha.start) / steps;
    require(h <= 1e-2 * (1.0 + 1e-9), "integration step exceeds 1e-2");
    require(s.membership_residual(p0) <= kMembershipTol, "starting point is off the manifold");
    const Vector start_value = alpha.value(alpha.start);
    check_embedding_vector(s, start_value, "base path values have the wrong shape");
    require(norm(s.value(p0) - start_value) <= 1e-9,
            "starting point is not on the fiber over the path start");

    // alpha'(t): central stencil inside, one-sided second order at the ends.
    const double fd = kDiffStep;
    auto alpha_dot = [&](double t) -> Vector {
        if (t - fd >= alpha.start && t + fd <= alpha.end) {
            return (0.5 / fd) * (alpha.value(t + fd) - alpha.value(t - fd));
        }
        if (t + 2.0 * fd <= alpha.end) {
            return (0.5 / fd) *
                   (4.0 * alpha.value(t + fd) - 3.0 * alpha.value(t) - alpha.value(t + 2.0 * fd));
        }
        return (0.5 / fd) *
               (3.0 * alpha.value(t) - 4.0 * alpha.value(t - fd) + alpha.value(t - 2.0 * fd));
    };
    auto field = [&](double t, const Vector& x) -> Vector {
        const Vector q = s.reproject(x);
        check_trust_region(s, q);
        return lift_least_squares(c, q, alpha_dot(t), nullptr);
    };

    LiftedPath out;
    out.times.reserve(static_cast<size_t>(steps) + 1);
    out.points.reserve(static_cast<size_t>(steps) + 1);
    out.velocities.reserve(static_cast<size_t>(steps) + 1);
    Vector x = s.reproject(p0);
    for (int i = 0; i < steps; ++i) {
        const double t = alpha.start + i * h;
        const Vector k1 = field(t, x);
        out.times.push_back(t);
        out.points.push_back(x);
        out.velocities.push_back(k1);
        const Vector k2 = field(t + 0.5 * h, x + (0.5 * h) * k1);
        const Vector k3 = field(t + 0.5 * h, x + (0.5 * h) * k2);
        const Vector k4 = field(t + h, x + h * k3);
        const Vector next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const Vector projected = s.reproject(next);
        if (norm(next - projected) > kDriftBudget) {
            throw convergence_error("step drift exceeded the reprojection budget");
        }
        x = projected;
    }
    out.times.push_back(alpha.end);
    out.points.push_back(x);
    out.velocities.push_back(field(alpha.end, x));

    for (size_t i = 0; i < out.points.size(); ++i) {
        if (norm(s.value(out.points[i]) - alpha.value(out.times[i])) > kTrackTol) {
            throw convergence_error("lift drifted off the base path");
        }
    }
    return out;
}

std::vector<Vector> fiber_transport(const ConnectionState& c, const BasePath& loop,
                                    const std::vector<Vector>& samples, int steps) {
    require(static_cast<bool>(loop.value), "base path has no callable");
    require(!samples.empty(), "no fiber samples to transport");
    require(norm(loop.value(loop.end) - loop.value(loop.start)) <= 1e-9,
            "path is not a closed loop");
    std::vector<Vector> transported;
    transported.reserve(samples.size());
    for (const Vector& s0 : samples) {
        transported.push_back(horizontal_lift(c, loop, s0, steps).points.back());
    }
    if (samples.size() >= 2) {
        auto min_pairwise = [](const std::vector<Vector>& pts) {
            double best = -1.0;
            for (size_t i = 0; i < pts.size(); ++i) {
                for (size_t j = i + 1; j < pts.size(); ++j) {
                    const double d = norm(pts[i] - pts[j]);
                    if (best < 0.0 || d < best) best = d;
                }
            }
            return best;
        };
        const double before = min_pairwise(samples);
        const double after = min_pairwise(transported);
        if (std::abs(after - before) > 0.1 * before) {
            throw convergence_error("fiber transport lost injectivity");
        }
    }
    return transported;
}

Vector curvature_numeric(const ConnectionState& c, const Vector& p, const Vector& u1,
                         const Vector& u2, double step) {
    const SubmersionInstance& s = c.submersion();
    require(step > 0.0, "step must be positive");
    require(s.membership_residual(p) <= kMembershipTol, "point is off the manifold");
    check_embedding_vector(s, u1, "target direction has the wrong shape");
    check_embedding_vector(s, u2, "target direction has the wrong shape");
    const Vector q = s.reproject(p);
    double r1 = 0.0;
    double r2 = 0.0;
    const Vector x1 = lift_least_squares(c, q, u1, &r1);
    const Vector x2 = lift_least_squares(c, q, u2, &r2);
    require(r1 <= 1e-6 * std::max(1.0, norm(u1)), "u1 is not tangent to the target");
    require(r2 <= 1e-6 * std::max(1.0, norm(u2)), "u2 is not tangent to the target");
    const std::vector<Vector> vertical = vertical_space(s, q);
    if (vertical.empty()) return Vector::zero(Field::Real, s.ambient_dim());

    // D_along X(., u): central difference of the horizontal extension field.
    auto derivative = [&](const Vector& along, const Vector& u) -> Vector {
        const Vector plus = lift_least_squares(c, s.reproject(q + step * along), u, nullptr);
        const Vector minus = lift_least_squares(c, s.reproject(q - step * along), u, nullptr);
        return (0.5 / step) * (plus - minus);
    };
    const Vector bracket = derivative(x1, u2) - derivative(x2, u1);
    Vector out = Vector::zero(Field::Real, s.ambient_dim());
    for (const Vector& v : vertical) out = out + real_dot(bracket, v) * v;
    return out;
}

}  // namespace matgeo
