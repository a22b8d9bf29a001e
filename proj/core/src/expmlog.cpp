#include "matgeo/expmlog.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace matgeo {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw precondition_error(what);
}

// Upper bound for the operator norm that never fails: exact power iteration
// when it converges, the HS norm (>= op norm) otherwise.
double op_norm_bound(const Matrix& a) {
    try {
        return op_norm(a);
    } catch (const convergence_error&) {
        return hs_norm(a);
    }
}

Vector conjugate(const Vector& v) {
    std::vector<Cplx> entries(v.entries());
    for (Cplx& e : entries) e = std::conj(e);
    return Vector(Field::Complex, std::move(entries));
}

}  // namespace

ExpResult expm(const Matrix& a) {
    require(a.square(), "non-square");
    const double nrm = op_norm_bound(a);

    int s = 0;
    if (nrm > 1.0) s = static_cast<int>(std::ceil(std::log2(nrm)));
    const double scale = std::ldexp(1.0, -s);
    const Matrix x = scale * a;
    const double xnrm = nrm * scale;  // certified <= 1

    Matrix sum = Matrix::identity(a.rows(), a.field());
    Matrix term = sum;
    int terms = 1;
    double bound = 1.0;
    for (int k = 1; k <= 64; ++k) {
        bound *= xnrm / static_cast<double>(k);
        if (bound <= 1e-18) break;
        term = (1.0 / static_cast<double>(k)) * (term * x);
        sum = sum + term;
        ++terms;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return ExpResult{std::move(sum), s, terms};
}

ExpIdentityReport expm_identities_check(const Matrix& a, const Matrix& b) {
    require(a.square() && b.square(), "non-square");
    require(a.rows() == b.rows() && a.field() == b.field(), "shape or field mismatch");
    const int n = a.rows();
    const Matrix id = Matrix::identity(n, a.field());

    const Matrix ea = expm(a).value;
    const Matrix ena = expm(-1.0 * a).value;
    const Matrix eastar = expm(adjoint(a)).value;
    const Matrix eab = expm(a + b).value;
    const Matrix eb = expm(b).value;

    ExpIdentityReport r{};
    r.inverse_residual = hs_norm(ea * ena - id);
    r.adjoint_residual = hs_norm(adjoint(ea) - eastar);
    r.product_residual = hs_norm(eab - ea * eb);
    r.commuting = hs_norm(a * b - b * a) <= 1e-12;
    r.ok = r.inverse_residual <= 1e-9 * std::max(1.0, hs_norm(ea) * hs_norm(ena)) &&
           r.adjoint_residual <= 1e-9 * std::max(1.0, hs_norm(ea)) &&
           (!r.commuting || r.product_residual <= 1e-9 * std::max(1.0, hs_norm(eab)));
    return r;
}

DetExpIdentity det_exp_identity(const Matrix& a) {
    require(a.square(), "non-square");
    return DetExpIdentity{det(expm(a).value), std::exp(trace(a))};
}

double exp_ode_residual(const Matrix& a, const std::vector<double>& t_grid) {
    require(a.square(), "non-square");
    require(!t_grid.empty(), "empty t_grid");
    require(t_grid.front() >= 0.0, "t_grid starts before 0");
    for (size_t i = 0; i + 1 < t_grid.size(); ++i) {
        require(t_grid[i] < t_grid[i + 1], "t_grid not ascending");
    }

    Matrix e = Matrix::identity(a.rows(), a.field());
    double t_prev = 0.0;
    double residual = 0.0;
    for (const double t : t_grid) {
        const double h = t - t_prev;
        if (h > 0.0) {
            const Matrix k1 = a * e;
            const Matrix k2 = a * (e + (0.5 * h) * k1);
            const Matrix k3 = a * (e + (0.5 * h) * k2);
            const Matrix k4 = a * (e + h * k3);
            e = e + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        residual = std::max(residual, hs_norm(e - expm(t * a).value));
        t_prev = t;
    }
    return residual;
}

Matrix logm_spd(const Matrix& p) {
    const EigenDecomposition d = eigh(p);  // validates shape and self-adjointness
    const double lambda_min = d.values.front().real();
    const double op = std::max(std::abs(lambda_min), std::abs(d.values.back().real()));
    if (!(lambda_min > 1e-12 * op)) throw precondition_error("not positive definite");

    std::vector<Cplx> logs(d.values.size());
    for (size_t k = 0; k < logs.size(); ++k) logs[k] = Cplx(std::log(d.values[k].real()), 0.0);
    Matrix a = d.basis * Matrix::diagonal(p.field(), logs) * adjoint(d.basis);
    return 0.5 * (a + adjoint(a));
}

Matrix sqrtm_spd(const Matrix& p) {
    const EigenDecomposition d = eigh(p);
    const double lambda_min = d.values.front().real();
    const double op = std::max(std::abs(lambda_min), std::abs(d.values.back().real()));
    if (!(lambda_min > 1e-12 * op)) throw precondition_error("not positive definite");

    std::vector<Cplx> roots(d.values.size());
    for (size_t k = 0; k < roots.size(); ++k) roots[k] = Cplx(std::sqrt(d.values[k].real()), 0.0);
    Matrix a = d.basis * Matrix::diagonal(p.field(), roots) * adjoint(d.basis);
    return 0.5 * (a + adjoint(a));
}

Matrix logm_unitary(const Matrix& u) {
    require(u.field() == Field::Complex, "complex field required");
    require(u.square(), "non-square");
    const int n = u.rows();
    const Matrix id = Matrix::identity(n, Field::Complex);
    require(hs_norm(adjoint(u) * u - id) <= 1e-9 * std::sqrt(static_cast<double>(n)),
            "not unitary");

    const EigenDecomposition d = eig_normal(u);
    std::vector<Cplx> logs(d.values.size());
    for (size_t k = 0; k < logs.size(); ++k) logs[k] = Cplx(0.0, std::arg(d.values[k]));
    Matrix a = d.basis * Matrix::diagonal(Field::Complex, logs) * adjoint(d.basis);
    return 0.5 * (a - adjoint(a));
}

Matrix logm_special_orthogonal(const Matrix& r) {
    require(r.field() == Field::Real, "real field required");
    require(r.square(), "non-square");
    const int n = r.rows();
    require(hs_norm(adjoint(r) * r - Matrix::identity(n)) <=
                1e-9 * std::sqrt(static_cast<double>(n)),
            "not orthogonal");
    if (std::abs(det(r) - Cplx(1.0, 0.0)) > 1e-9) {
        throw precondition_error("NoRealAntisymmetricLog");
    }

    Matrix a(n, n, Field::Real);
    const double pi_band = 1e-7;  // |lambda + 1| below this counts as angle pi

    // rotation planes with angle in (0, pi): each +angle eigenvector v of the
    // complexification contributes the real antisymmetric block
    // -2 theta Im(v v*); the -angle partner is its transpose half.
    const EigenDecomposition d = eig_normal(complexify(r));
    int pi_count = 0;
    for (int j = 0; j < n; ++j) {
        const Cplx lambda = d.values[static_cast<size_t>(j)];
        if (std::abs(lambda + 1.0) <= pi_band) {
            ++pi_count;
            continue;
        }
        const double theta = std::arg(lambda);
        if (theta <= 1e-9) continue;  // identity cluster or the -angle partner
        const Vector v = d.basis.column(j);
        for (int p = 0; p < n; ++p) {
            for (int q = 0; q < n; ++q) {
                a(p, q) -= 2.0 * theta * std::imag(v[p] * std::conj(v[q]));
            }
        }
    }

    // angle-pi planes: det = 1 forces an even count; pair a real orthonormal
    // kernel basis of R + I in order, each pair rotating by pi
    if (pi_count > 0) {
        if (pi_count % 2 != 0) {
            throw convergence_error("eigenvalue pairing at angle pi is ambiguous");
        }
        const Matrix shifted = r + Matrix::identity(n);
        const EigenDecomposition g = eigh(adjoint(shifted) * shifted);
        for (int k = 0; k + 1 < pi_count; k += 2) {
            const Vector u = g.basis.column(k);
            const Vector w = g.basis.column(k + 1);
            const double pi = std::acos(-1.0);
            for (int p = 0; p < n; ++p) {
                for (int q = 0; q < n; ++q) {
                    a(p, q) += pi * (w[p].real() * u[q].real() - u[p].real() * w[q].real());
                }
            }
        }
    }

    return 0.5 * (a - adjoint(a));
}

namespace {

struct LowestColumns {
    Matrix basis;      // orthonormal columns for the smallest singular values
    double sigma_m;    // largest kept singular value
    double sigma_max;  // largest singular value of the input
};

LowestColumns lowest_singular_columns(const Matrix& shifted, int m) {
    const int n = shifted.rows();
    const EigenDecomposition d = eigh(adjoint(shifted) * shifted);
    Matrix basis(n, m, shifted.field());
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m; ++k) basis(i, k) = d.basis(i, k);
    }
    const double sm = std::sqrt(std::max(0.0, d.values[static_cast<size_t>(m - 1)].real()));
    const double smax = std::sqrt(std::max(0.0, d.values.back().real()));
    return LowestColumns{std::move(basis), sm, smax};
}

struct RootCluster {
    Cplx center;
    int size;
};

// Transitive clustering of eigenvalue estimates: Durand-Kerner splits a
// multiple root into a tight constellation, which must be read as one value.
std::vector<RootCluster> cluster_roots(const std::vector<Cplx>& roots, double tol) {
    std::vector<char> used(roots.size(), 0);
    std::vector<RootCluster> out;
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::vector<size_t> members{i};
        used[i] = 1;
        for (size_t scan = 0; scan < members.size(); ++scan) {
            for (size_t j = 0; j < roots.size(); ++j) {
                if (used[j]) continue;
                if (std::abs(roots[j] - roots[members[scan]]) <= tol) {
                    members.push_back(j);
                    used[j] = 1;
                }
            }
        }
        Cplx mean(0.0, 0.0);
        for (const size_t j : members) mean += roots[j];
        mean /= static_cast<double>(members.size());
        out.push_back(RootCluster{mean, static_cast<int>(members.size())});
    }
    return out;
}

// Orthonormal eigenspace basis for an eigenvalue cluster, with one Ritz
// refinement of the center; throws unsupported_error when the space is
// thinner than the cluster (geometric < algebraic multiplicity).
Matrix cluster_eigenspace(const Matrix& bf, Cplx& center, int m) {
    const int n = bf.rows();
    const Matrix id = Matrix::identity(n, bf.field());
    const Cplx shift = bf.field() == Field::Real ? Cplx(center.real(), 0.0) : center;
    Matrix shifted = bf.field() == Field::Real ? bf + (-shift.real()) * id : bf + (-shift) * id;

    LowestColumns low = lowest_singular_columns(shifted, m);
    const Cplx ritz = trace(adjoint(low.basis) * (bf * low.basis)) / static_cast<double>(m);
    center = bf.field() == Field::Real ? Cplx(ritz.real(), 0.0) : ritz;

    shifted = bf.field() == Field::Real ? bf + (-center.real()) * id : bf + (-center) * id;
    low = lowest_singular_columns(shifted, m);
    if (low.sigma_m > 1e-6 * std::max(1.0, low.sigma_max)) {
        throw unsupported_error("input is not diagonalizable to working precision");
    }
    return std::move(low.basis);
}

}  // namespace

LogReport real_log_exists(const Matrix& b) {
    require(b.field() == Field::Real, "real field required");
    require(b.square(), "non-square");
    const int n = b.rows();

    const std::vector<Cplx> roots = eigenvalues_general(b);
    double scale = 1.0;
    double min_abs = std::abs(roots.front());
    for (const Cplx& r : roots) {
        scale = std::max(scale, std::abs(r));
        min_abs = std::min(min_abs, std::abs(r));
    }
    if (lu_factor(b).singular || min_abs <= 1e-10 * scale) {
        return LogReport{std::nullopt, false, LogObstruction::Singular};
    }

    const double cluster_tol = 1e-5 * scale;
    const double im_tol = 1e-8 * scale;
    std::vector<RootCluster> clusters = cluster_roots(roots, cluster_tol);

    for (const RootCluster& c : clusters) {
        if (std::abs(c.center.imag()) <= im_tol && c.center.real() < 0.0 && c.size % 2 != 0) {
            return LogReport{std::nullopt, false, LogObstruction::NegativeRealEigenvalue};
        }
    }

    const Matrix bc = complexify(b);
    std::vector<Vector> columns;
    std::vector<Cplx> log_values;
    std::vector<char> done(clusters.size(), 0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double pi = std::acos(-1.0);

    for (size_t ci = 0; ci < clusters.size(); ++ci) {
        if (done[ci]) continue;
        RootCluster c = clusters[ci];

        if (std::abs(c.center.imag()) <= im_tol) {
            Cplx center(c.center.real(), 0.0);
            const Matrix v = cluster_eigenspace(b, center, c.size);
            const double lambda = center.real();
            if (lambda > 0.0) {
                for (int k = 0; k < c.size; ++k) {
                    columns.push_back(complexify(v.column(k)));
                    log_values.push_back(Cplx(std::log(lambda), 0.0));
                }
            } else {
                // even multiplicity: pair the real eigenspace basis, each pair
                // carrying the conjugate principal values ln r -+ i pi
                const double log_r = std::log(-lambda);
                for (int k = 0; k + 1 < c.size; k += 2) {
                    std::vector<Cplx> zp(static_cast<size_t>(n)), zm(static_cast<size_t>(n));
                    for (int i = 0; i < n; ++i) {
                        const double ui = v(i, k).real();
                        const double wi = v(i, k + 1).real();
                        zp[static_cast<size_t>(i)] = Cplx(ui, wi) * inv_sqrt2;
                        zm[static_cast<size_t>(i)] = Cplx(ui, -wi) * inv_sqrt2;
                    }
                    columns.push_back(Vector::complex(std::move(zp)));
                    log_values.push_back(Cplx(log_r, -pi));
                    columns.push_back(Vector::complex(std::move(zm)));
                    log_values.push_back(Cplx(log_r, pi));
                }
            }
            done[ci] = 1;
            continue;
        }

        if (c.center.imag() < 0.0) continue;  // emitted with its conjugate partner

        size_t partner = clusters.size();
        for (size_t cj = 0; cj < clusters.size(); ++cj) {
            if (done[cj] || cj == ci) continue;
            if (std::abs(clusters[cj].center - std::conj(c.center)) <= 10.0 * cluster_tol &&
                clusters[cj].size == c.size) {
                partner = cj;
                break;
            }
        }
        if (partner == clusters.size()) {
            throw convergence_error("conjugate eigenvalue pairing failed");
        }

        Cplx center = c.center;
        const Matrix v = cluster_eigenspace(bc, center, c.size);
        const Cplx log_value = std::log(center);
        for (int k = 0; k < c.size; ++k) {
            const Vector col = v.column(k);
            columns.push_back(col);
            log_values.push_back(log_value);
            columns.push_back(conjugate(col));
            log_values.push_back(std::conj(log_value));
        }
        done[ci] = 1;
        done[partner] = 1;
    }

    if (static_cast<int>(columns.size()) != n) {
        throw convergence_error("eigenvalue clustering does not span");
    }

    const Matrix s = Matrix::from_columns(columns);
    Matrix ac(n, n, Field::Complex);
    try {
        ac = (s * Matrix::diagonal(Field::Complex, log_values)) * inverse(s);
    } catch (const precondition_error&) {
        throw unsupported_error("input is not diagonalizable to working precision");
    }

    double im_mass = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) im_mass += ac(i, j).imag() * ac(i, j).imag();
    }
    if (std::sqrt(im_mass) > 1e-6 * std::max(1.0, hs_norm(ac))) {
        throw convergence_error("real log reconstruction lost conjugate symmetry");
    }

    Matrix a(n, n, Field::Real);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = Cplx(ac(i, j).real(), 0.0);
    }
    return LogReport{std::move(a), true, LogObstruction::None};
}

}  // namespace matgeo
