#include "matgeo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace matgeo {

namespace {

double off_diagonal_mass(const Matrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Sorts eigenvalues (and basis columns) by a strict-weak comparison on values.
template <typename Less>
EigenDecomposition sorted(EigenDecomposition d, Less less) {
    const int n = static_cast<int>(d.values.size());
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return less(d.values[static_cast<size_t>(i)], d.values[static_cast<size_t>(j)]);
    });
    EigenDecomposition out{std::vector<Cplx>(static_cast<size_t>(n)),
                           Matrix(d.basis.rows(), n, d.basis.field())};
    for (int k = 0; k < n; ++k) {
        const int src = order[static_cast<size_t>(k)];
        out.values[static_cast<size_t>(k)] = d.values[static_cast<size_t>(src)];
        for (int i = 0; i < d.basis.rows(); ++i) out.basis(i, k) = d.basis(i, src);
    }
    return out;
}

}  // namespace

EigenDecomposition eigh(const Matrix& input) {
    if (!input.square()) throw precondition_error("non-square");
    const double scale = hs_norm(input);
    if (hs_norm(input - adjoint(input)) > 1e-10 * scale) {
        throw precondition_error("not self-adjoint");
    }

    const int n = input.rows();
    Matrix a = 0.5 * (input + adjoint(input));  // exact symmetrization of the tail
    Matrix v = Matrix::identity(n, input.field());
    const double stop = 1e-12 * scale;

    int sweep = 0;
    while (off_diagonal_mass(a) > stop) {
        if (++sweep > 100) throw convergence_error("Jacobi sweeps exceeded 100");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Cplx apq = a(p, q);
                if (apq == Cplx(0.0, 0.0)) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double beta = std::abs(apq);
                const Cplx phase = apq / beta;  // a(p,q) = beta * phase

                // real rotation annihilating the modulus part
                const double tau = (aqq - app) / (2.0 * beta);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // unitary pivot block [[c, s], [-conj(phase) s, conj(phase) c]]
                const Cplx u11(c, 0.0);
                const Cplx u12(s, 0.0);
                const Cplx u21 = -std::conj(phase) * s;
                const Cplx u22 = std::conj(phase) * c;

                for (int i = 0; i < n; ++i) {  // A <- A U, column update
                    const Cplx aip = a(i, p);
                    const Cplx aiq = a(i, q);
                    a(i, p) = aip * u11 + aiq * u21;
                    a(i, q) = aip * u12 + aiq * u22;
                }
                for (int j = 0; j < n; ++j) {  // A <- U* A, row update
                    const Cplx apj = a(p, j);
                    const Cplx aqj = a(q, j);
                    a(p, j) = std::conj(u11) * apj + std::conj(u21) * aqj;
                    a(q, j) = std::conj(u12) * apj + std::conj(u22) * aqj;
                }
                for (int i = 0; i < n; ++i) {  // V <- V U
                    const Cplx vip = v(i, p);
                    const Cplx viq = v(i, q);
                    v(i, p) = vip * u11 + viq * u21;
                    v(i, q) = vip * u12 + viq * u22;
                }
            }
        }
    }

    EigenDecomposition d{std::vector<Cplx>(static_cast<size_t>(n)), std::move(v)};
    for (int i = 0; i < n; ++i) d.values[static_cast<size_t>(i)] = Cplx(a(i, i).real(), 0.0);
    return sorted(std::move(d), [](const Cplx& x, const Cplx& y) { return x.real() < y.real(); });
}

EigenDecomposition eig_normal(const Matrix& t) {
    if (!t.square()) throw precondition_error("non-square");
    if (t.field() != Field::Complex) throw precondition_error("eig_normal expects a Complex-tagged matrix");
    const Matrix ts = adjoint(t);
    const double hs2 = hs_norm(t) * hs_norm(t);
    if (hs_norm(t * ts - ts * t) > 1e-10 * std::max(hs2, 1e-300)) {
        throw precondition_error("not normal");
    }

    const int n = t.rows();
    const Matrix t1 = 0.5 * (t + ts);
    const Matrix t2 = Cplx(0.0, -0.5) * (t - ts);

    EigenDecomposition d1 = eigh(t1);  // ascending real eigenvalues
    // self-adjoint operator norm = spectral radius, already available exactly
    const double t1_norm = std::max(std::abs(d1.values.front().real()), std::abs(d1.values.back().real()));
    const double cluster_tol = 1e-8 * t1_norm;

    EigenDecomposition out{std::vector<Cplx>(static_cast<size_t>(n)), Matrix(n, n, Field::Complex)};
    int lo = 0;
    while (lo < n) {
        int hi = lo;
        while (hi + 1 < n &&
               d1.values[static_cast<size_t>(hi + 1)].real() - d1.values[static_cast<size_t>(hi)].real() <=
                   cluster_tol) {
            ++hi;
        }
        const int m = hi - lo + 1;

        // restrict the anti-self-adjoint part to the cluster's eigenspace
        Matrix w(n, m, Field::Complex);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < m; ++k) w(i, k) = d1.basis(i, lo + k);
        Matrix s = adjoint(w) * t2 * w;
        s = 0.5 * (s + adjoint(s));
        const EigenDecomposition sub = eigh(s);
        const Matrix refined = w * sub.basis;

        for (int k = 0; k < m; ++k) {
            out.values[static_cast<size_t>(lo + k)] =
                Cplx(d1.values[static_cast<size_t>(lo + k)].real(), sub.values[static_cast<size_t>(k)].real());
            for (int i = 0; i < n; ++i) out.basis(i, lo + k) = refined(i, k);
        }
        lo = hi + 1;
    }

    return sorted(std::move(out), [](const Cplx& x, const Cplx& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
}

Polynomial char_poly(const Matrix& a) {
    if (!a.square()) throw precondition_error("non-square");
    const int n = a.rows();
    std::vector<Cplx> c(static_cast<size_t>(n + 1), Cplx(0.0, 0.0));
    c[static_cast<size_t>(n)] = 1.0;

    Matrix m = a;
    c[static_cast<size_t>(n - 1)] = -trace(m);
    for (int k = 2; k <= n; ++k) {
        Matrix shifted = m;
        const Cplx ck = c[static_cast<size_t>(n - k + 1)];
        for (int i = 0; i < n; ++i) shifted(i, i) += ck;
        m = a * shifted;
        c[static_cast<size_t>(n - k)] = -trace(m) / static_cast<double>(k);
    }
    return Polynomial{std::move(c)};
}

Matrix poly_eval(const Polynomial& p, const Matrix& a) {
    if (!a.square()) throw precondition_error("non-square");
    if (p.coefficients.empty()) throw precondition_error("empty polynomial");
    if (a.field() == Field::Real) {
        for (const Cplx& c : p.coefficients) {
            if (c.imag() != 0.0) {
                throw precondition_error("complex coefficients on a Real-tagged matrix; complexify first");
            }
        }
    }
    const int n = a.rows();
    Matrix r(n, n, a.field());
    const Cplx lead = p.coefficients.back();
    for (int i = 0; i < n; ++i) r(i, i) = lead;
    for (int k = p.degree() - 1; k >= 0; --k) {
        r = r * a;
        const Cplx ck = p.coefficients[static_cast<size_t>(k)];
        for (int i = 0; i < n; ++i) r(i, i) += ck;
    }
    return r;
}

Cplx poly_eval(const Polynomial& p, const Cplx& z) {
    if (p.coefficients.empty()) throw precondition_error("empty polynomial");
    Cplx r = p.coefficients.back();
    for (int k = p.degree() - 1; k >= 0; --k) r = r * z + p.coefficients[static_cast<size_t>(k)];
    return r;
}

double cayley_hamilton_residual(const Matrix& a) {
    const Polynomial q = char_poly(a);
    const double denom = std::max(1.0, std::pow(op_norm(a), a.rows()));
    return hs_norm(poly_eval(q, a)) / denom;
}

namespace {

// Remainder of p modulo the monic polynomial q.
std::vector<Cplx> poly_mod(std::vector<Cplx> p, const std::vector<Cplx>& q) {
    const int dq = static_cast<int>(q.size()) - 1;
    while (static_cast<int>(p.size()) - 1 >= dq) {
        const Cplx lead = p.back();
        const int shift = static_cast<int>(p.size()) - 1 - dq;
        if (lead != Cplx(0.0, 0.0)) {
            for (int i = 0; i <= dq; ++i) p[static_cast<size_t>(shift + i)] -= lead * q[static_cast<size_t>(i)];
        }
        p.pop_back();
        while (p.size() > 1 && p.back() == Cplx(0.0, 0.0) &&
               static_cast<int>(p.size()) - 1 >= dq) {
            p.pop_back();
        }
    }
    return p;
}

std::vector<Cplx> poly_mul(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
    std::vector<Cplx> out(a.size() + b.size() - 1, Cplx(0.0, 0.0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

Polynomial power_reduce(const Matrix& a, long long m) {
    if (m < 0) throw precondition_error("exponent must be nonnegative");
    const Polynomial q = char_poly(a);
    const int n = a.rows();
    if (m < n) {
        std::vector<Cplx> mono(static_cast<size_t>(m + 1), Cplx(0.0, 0.0));
        mono.back() = 1.0;
        return Polynomial{std::move(mono)};
    }
    std::vector<Cplx> result{Cplx(1.0, 0.0)};
    std::vector<Cplx> base = poly_mod({Cplx(0.0, 0.0), Cplx(1.0, 0.0)}, q.coefficients);
    unsigned long long e = static_cast<unsigned long long>(m);
    while (e != 0) {
        if (e & 1ull) result = poly_mod(poly_mul(result, base), q.coefficients);
        e >>= 1;
        if (e != 0) base = poly_mod(poly_mul(base, base), q.coefficients);
    }
    return Polynomial{std::move(result)};
}

std::vector<Cplx> eigenvalues_general(const Matrix& a) {
    const Polynomial q = char_poly(a);
    const int n = a.rows();
    if (n == 1) return {a(0, 0)};

    // Cauchy bound on root moduli for a monic polynomial
    double radius = 0.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(q.coefficients[static_cast<size_t>(k)]));
    radius += 1.0;

    std::vector<Cplx> z(static_cast<size_t>(n));
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int k = 0; k < n; ++k) {
        const double angle = two_pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[static_cast<size_t>(k)] = radius * Cplx(std::cos(angle), std::sin(angle));
    }

    for (int round = 0; round < 500; ++round) {
        double shift = 0.0;
        for (int i = 0; i < n; ++i) {
            Cplx denom(1.0, 0.0);
            for (int j = 0; j < n; ++j) {
                if (j != i) denom *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
            }
            if (denom == Cplx(0.0, 0.0)) {
                z[static_cast<size_t>(i)] += Cplx(1e-8 * radius, 1e-8 * radius);
                shift = radius;
                continue;
            }
            const Cplx delta = poly_eval(q, z[static_cast<size_t>(i)]) / denom;
            z[static_cast<size_t>(i)] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift <= 1e-13 * std::max(1.0, radius)) break;
    }

    std::sort(z.begin(), z.end(), [](const Cplx& x, const Cplx& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return z;
}

std::vector<Vector> null_space(const Matrix& m, double tol) {
    const EigenDecomposition d = eigh(adjoint(m) * m);
    const int n = m.cols();
    double sigma_max = 0.0;
    for (const Cplx& v : d.values) sigma_max = std::max(sigma_max, std::sqrt(std::max(v.real(), 0.0)));
    const double threshold = tol * sigma_max;
    std::vector<Vector> basis;
    for (int k = 0; k < n; ++k) {
        const double sigma = std::sqrt(std::max(d.values[static_cast<size_t>(k)].real(), 0.0));
        if (sigma <= threshold) basis.push_back(d.basis.column(k));
    }
    return basis;
}

}  // namespace matgeo
