#include <cmath>
#include <vector>

#include "doctest.h"
#include "matgeo/linalg.hpp"
#include "oracles.hpp"
#include "random_gen.hpp"

using namespace matgeo;

namespace {
const Cplx I_UNIT(0.0, 1.0);
}

//==============================================================================
// oracle self-checks
//==============================================================================

TEST_CASE("permutation sign by cycle decomposition") {
    CHECK(oracles::permutation_sign({0, 1, 2}) == 1);
    CHECK(oracles::permutation_sign({1, 0, 2}) == -1);   // one transposition
    CHECK(oracles::permutation_sign({1, 2, 0}) == 1);    // 3-cycle, even
    CHECK(oracles::permutation_sign({3, 2, 1, 0}) == 1); // two transpositions
}

TEST_CASE("determinant oracle matches hand expansions") {
    const Matrix a = Matrix::real({{1.0, 2.0}, {3.0, 4.0}});
    CHECK(oracles::det_permutation_sum(a).real() == doctest::Approx(-2.0).epsilon(1e-14));

    const Matrix b = Matrix::real({{2.0, 0.0, 1.0}, {1.0, 1.0, 0.0}, {0.0, 3.0, 1.0}});
    // cofactor expansion by hand: 2*(1*1-0*3) - 0 + 1*(1*3-1*0) = 5
    CHECK(oracles::det_permutation_sum(b).real() == doctest::Approx(5.0).epsilon(1e-14));
}

//==============================================================================
// inner products and vector norms
//==============================================================================

TEST_CASE("inner product on standard examples") {
    const Vector e1 = Vector::real({1.0, 0.0});
    const Vector e2 = Vector::real({0.0, 1.0});
    CHECK(inner_product(e1, e2) == Cplx(0.0, 0.0));

    const Vector v = Vector::real({3.0, 4.0});
    CHECK(inner_product(v, v) == Cplx(25.0, 0.0));
    CHECK(norm(v) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("complex inner product conjugates the second slot") {
    const Vector zi = Vector::complex({I_UNIT});
    const Vector one = Vector::complex({Cplx(1.0, 0.0)});
    CHECK(inner_product(zi, one) == I_UNIT);
    CHECK(inner_product(one, zi) == -I_UNIT);

    testgen::Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const Vector z = testgen::complex_vector(rng, 4);
        const Vector w = testgen::complex_vector(rng, 4);
        const Cplx lhs = inner_product(w, z);
        const Cplx rhs = std::conj(inner_product(z, w));
        CHECK(std::abs(lhs - rhs) <= 1e-14 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("inner product rejects mismatched inputs") {
    CHECK_THROWS_AS(inner_product(Vector::real({1.0}), Vector::real({1.0, 2.0})), precondition_error);
    CHECK_THROWS_AS(inner_product(Vector::real({1.0}), Vector::complex({Cplx(1.0, 0.0)})), precondition_error);
}

TEST_CASE("triangle inequality and Pythagorean identity") {
    testgen::Rng rng(102);
    for (int trial = 0; trial < 50; ++trial) {
        const Field f = trial % 2 == 0 ? Field::Real : Field::Complex;
        const Vector v = testgen::vector(rng, f, 5);
        const Vector w = testgen::vector(rng, f, 5);
        CHECK(norm(v + w) <= norm(v) + norm(w) + 1e-12);
    }
    // orthogonal pair: lengths add in squares
    for (int trial = 0; trial < 50; ++trial) {
        const Vector v = testgen::real_vector(rng, 4);
        Vector w = testgen::real_vector(rng, 4);
        const std::vector<Vector> q = gram_schmidt({v, w});
        if (q.size() < 2) continue;
        const Vector a = 2.5 * q[0];
        const Vector b = -1.25 * q[1];
        const double lhs = norm(a + b) * norm(a + b);
        const double rhs = norm(a) * norm(a) + norm(b) * norm(b);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

//==============================================================================
// adjoint and trace
//==============================================================================

TEST_CASE("adjoint on fixed matrices") {
    const Matrix id = Matrix::identity(3);
    CHECK(hs_norm(adjoint(id) - id) == 0.0);

    const Matrix n = Matrix::real({{0.0, 1.0}, {0.0, 0.0}});
    const Matrix nt = Matrix::real({{0.0, 0.0}, {1.0, 0.0}});
    CHECK(hs_norm(adjoint(n) - nt) == 0.0);

    const Matrix zi = Matrix::complex({{I_UNIT}});
    CHECK(adjoint(zi)(0, 0) == -I_UNIT);
}

TEST_CASE("adjoint is characterized by the inner product identity") {
    testgen::Rng rng(103);
    for (int trial = 0; trial < 40; ++trial) {
        const Field f = trial % 2 == 0 ? Field::Real : Field::Complex;
        const int n = 2 + trial % 4;
        const Matrix t = testgen::matrix(rng, f, n);
        const Matrix ts = adjoint(t);
        for (int probe = 0; probe < 5; ++probe) {
            const Vector v = testgen::vector(rng, f, n);
            const Vector w = testgen::vector(rng, f, n);
            const Cplx lhs = inner_product(apply(ts, v), w);
            const Cplx rhs = inner_product(v, apply(t, w));
            CHECK(std::abs(lhs - rhs) <= 1e-12 * hs_norm(t) * norm(v) * norm(w));
        }
    }
}

TEST_CASE("trace basics and commutativity inside the trace") {
    CHECK(trace(Matrix::identity(7)).real() == 7.0);
    CHECK(trace(Matrix::diagonal(Field::Real, {1.0, 2.0, 3.0})).real() == 6.0);

    const Matrix a = Matrix::real({{1.0, 2.0}, {3.0, 4.0}});
    const Matrix b = Matrix::real({{0.0, 1.0}, {1.0, 0.0}});
    CHECK(trace(a * b).real() == 5.0);  // frozen from the 2x2 multiplication done by hand
    CHECK(trace(b * a).real() == 5.0);

    CHECK_THROWS_AS(trace(Matrix(2, 3, Field::Real)), precondition_error);
}

TEST_CASE("trace is linear, exactly, on small integer matrices") {
    testgen::Rng rng(104);
    for (int trial = 0; trial < 25; ++trial) {
        const Matrix t1 = testgen::integer_matrix(rng, 4);
        const Matrix t2 = testgen::integer_matrix(rng, 4);
        const Cplx lhs = trace(3.0 * t1 + (-2.0) * t2);
        const Cplx rhs = 3.0 * trace(t1) - 2.0 * trace(t2);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("matrix Cauchy-Schwarz bound") {
    testgen::Rng rng(105);
    for (int trial = 0; trial < 40; ++trial) {
        const Field f = trial % 2 == 0 ? Field::Real : Field::Complex;
        const Matrix t1 = testgen::matrix(rng, f, 4);
        const Matrix t2 = testgen::matrix(rng, f, 4);
        CHECK(std::abs(trace(adjoint(t2) * t1)) <= hs_norm(t1) * hs_norm(t2) + 1e-12);
    }
}

//==============================================================================
// determinants
//==============================================================================

TEST_CASE("determinant on fixed matrices") {
    CHECK(det(Matrix::identity(4)) == Cplx(1.0, 0.0));
    CHECK(det(Matrix::real({{0.0, 1.0}, {1.0, 0.0}})).real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK_THROWS_AS(det(Matrix(2, 3, Field::Real)), precondition_error);
}

TEST_CASE("LU determinant agrees with the permutation-sum oracle") {
    testgen::Rng rng(106);
    for (int trial = 0; trial < 60; ++trial) {
        const Field f = trial % 2 == 0 ? Field::Real : Field::Complex;
        const int n = 2 + trial % 4;  // up to 5
        const Matrix a = testgen::matrix(rng, f, n);
        const Cplx lhs = det(a);
        const Cplx rhs = oracles::det_permutation_sum(a);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("determinant is multiplicative") {
    testgen::Rng rng(107);
    for (int trial = 0; trial < 30; ++trial) {
        const Matrix a = testgen::real_matrix(rng, 3, 3);
        const Matrix b = testgen::real_matrix(rng, 3, 3);
        const Cplx lhs = det(a * b);
        const Cplx rhs = det(a) * det(b);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("determinant of the adjoint") {
    testgen::Rng rng(108);
    const Matrix a = testgen::real_matrix(rng, 4, 4);
    CHECK(std::abs(det(adjoint(a)) - det(a)) <= 1e-12);
    const Matrix z = testgen::complex_matrix(rng, 4, 4);
    CHECK(std::abs(det(adjoint(z)) - std::conj(det(z))) <= 1e-12);
}

TEST_CASE("determinant is bounded by the operator norm power") {
    testgen::Rng rng(109);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 4;
        const Matrix a = testgen::real_matrix(rng, n, n);
        CHECK(std::abs(det(a)) <= std::pow(op_norm(a), n) * (1.0 + 1e-9));
    }
}

//==============================================================================
// norms
//==============================================================================

TEST_CASE("Hilbert-Schmidt norm basics") {
    CHECK(hs_norm(Matrix::identity(9)) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(hs_norm(Matrix::real({{3.0, 4.0}})) == doctest::Approx(5.0).epsilon(1e-15));

    testgen::Rng rng(110);
    for (int trial = 0; trial < 20; ++trial) {
        const Field f = trial % 2 == 0 ? Field::Real : Field::Complex;
        const Matrix t = testgen::matrix(rng, f, 4);
        CHECK(hs_norm(t) == doctest::Approx(std::sqrt(trace(adjoint(t) * t).real())).epsilon(1e-12));
        CHECK(hs_norm(adjoint(t)) == doctest::Approx(hs_norm(t)).epsilon(1e-14));
    }
}

TEST_CASE("Hilbert-Schmidt norm is orthonormal-basis invariant") {
    testgen::Rng rng(111);
    for (int trial = 0; trial < 10; ++trial) {
        const Field f = trial % 2 == 0 ? Field::Real : Field::Complex;
        const Matrix t = testgen::matrix(rng, f, 4);
        const Matrix q = testgen::orthonormal(rng, f, 4);
        double sum = 0.0;
        for (int j = 0; j < 4; ++j) {
            const double image_norm = norm(apply(t, q.column(j)));
            sum += image_norm * image_norm;
        }
        const double hs2 = hs_norm(t) * hs_norm(t);
        CHECK(sum == doctest::Approx(hs2).epsilon(1e-10));
    }
}

TEST_CASE("operator norm on fixed matrices") {
    CHECK(op_norm(Matrix::diagonal(Field::Real, {1.0, 3.0, 2.0})) == doctest::Approx(3.0).epsilon(1e-10));

    const double c = std::cos(0.7), s = std::sin(0.7);
    const Matrix rot = Matrix::real({{c, -s}, {s, c}});
    CHECK(op_norm(rot) == doctest::Approx(1.0).epsilon(1e-10));

    CHECK(op_norm(Matrix(3, 3, Field::Real)) == 0.0);
}

TEST_CASE("operator and Hilbert-Schmidt norms are comparable") {
    testgen::Rng rng(112);
    for (int trial = 0; trial < 25; ++trial) {
        const Matrix t = testgen::real_matrix(rng, 4, 4);
        const double op = op_norm(t);
        const double hs = hs_norm(t);
        CHECK(op <= hs * (1.0 + 1e-10));
        CHECK(hs <= 2.0 * op * (1.0 + 1e-10));  // sqrt(n) = 2 for n = 4
    }
}

//==============================================================================
// orthogonalization
//==============================================================================

TEST_CASE("gram_schmidt on fixed inputs") {
    const std::vector<Vector> std_basis{Vector::real({1.0, 0.0}), Vector::real({0.0, 1.0})};
    const std::vector<Vector> q1 = gram_schmidt(std_basis);
    REQUIRE(q1.size() == 2);
    CHECK(norm(q1[0] - std_basis[0]) == 0.0);
    CHECK(norm(q1[1] - std_basis[1]) == 0.0);

    // hand orthonormalization of {(1,1),(1,0)}:
    //   u1 = (1,1)/sqrt(2); r2 = (1,0) - (1/2)(1,1) = (1/2,-1/2); u2 = (1,-1)/sqrt(2)
    const std::vector<Vector> q2 = gram_schmidt({Vector::real({1.0, 1.0}), Vector::real({1.0, 0.0})});
    REQUIRE(q2.size() == 2);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(norm(q2[0] - Vector::real({r, r})) <= 1e-15);
    CHECK(norm(q2[1] - Vector::real({r, -r})) <= 1e-15);
}

TEST_CASE("gram_schmidt drops dependent and zero input") {
    const Vector v = Vector::real({3.0, 4.0});
    const std::vector<Vector> q = gram_schmidt({v, 2.0 * v});
    REQUIRE(q.size() == 1);
    CHECK(norm(q[0] - Vector::real({0.6, 0.8})) <= 1e-15);

    CHECK(gram_schmidt({Vector::zero(Field::Real, 3)}).empty());
}

TEST_CASE("gram_schmidt output is orthonormal and spans the input") {
    testgen::Rng rng(113);
    for (int trial = 0; trial < 20; ++trial) {
        const Field f = trial % 2 == 0 ? Field::Real : Field::Complex;
        std::vector<Vector> vs;
        for (int k = 0; k < 4; ++k) vs.push_back(testgen::vector(rng, f, 5));
        const std::vector<Vector> q = gram_schmidt(vs);
        for (size_t i = 0; i < q.size(); ++i) {
            for (size_t j = 0; j < q.size(); ++j) {
                const double target = i == j ? 1.0 : 0.0;
                CHECK(std::abs(inner_product(q[i], q[j]) - Cplx(target, 0.0)) <= 1e-12);
            }
        }
        // every input is reproduced by its projection onto the output span
        for (const Vector& v : vs) {
            const Vector p = orthogonal_projection(q, v);
            CHECK(norm(v - p) <= 1e-9 * std::max(1.0, norm(v)));
        }
    }
}

TEST_CASE("orthogonal projection on fixed inputs") {
    const std::vector<Vector> span{Vector::real({1.0, 0.0})};
    const Vector u = Vector::real({1.0, 1.0});
    CHECK(norm(orthogonal_projection(span, u) - Vector::real({1.0, 0.0})) <= 1e-15);

    const std::vector<Vector> full{Vector::real({1.0, 0.0}), Vector::real({0.0, 1.0})};
    CHECK(norm(orthogonal_projection(full, u) - u) <= 1e-15);

    const std::vector<Vector> skew{Vector::real({1.0, 1.0})};  // not unit
    CHECK_THROWS_AS(orthogonal_projection(skew, u), precondition_error);
}

TEST_CASE("orthogonal projection is idempotent and splits norms") {
    testgen::Rng rng(114);
    for (int trial = 0; trial < 20; ++trial) {
        const Field f = trial % 2 == 0 ? Field::Real : Field::Complex;
        std::vector<Vector> vs;
        for (int k = 0; k < 3; ++k) vs.push_back(testgen::vector(rng, f, 6));
        const std::vector<Vector> basis = gram_schmidt(vs);
        const Vector u = testgen::vector(rng, f, 6);
        const Vector p = orthogonal_projection(basis, u);
        CHECK(norm(orthogonal_projection(basis, p) - p) <= 1e-10 * std::max(1.0, norm(u)));
        for (const Vector& b : basis) {
            CHECK(std::abs(inner_product(u - p, b)) <= 1e-10 * std::max(1.0, norm(u)));
        }
        const double total = norm(u) * norm(u);
        const double split = norm(p) * norm(p) + norm(u - p) * norm(u - p);
        CHECK(total == doctest::Approx(split).epsilon(1e-10));
    }
}

//==============================================================================
// solving, inversion, powers
//==============================================================================

TEST_CASE("solve and inverse") {
    testgen::Rng rng(115);
    for (int trial = 0; trial < 20; ++trial) {
        const Field f = trial % 2 == 0 ? Field::Real : Field::Complex;
        const Matrix a = testgen::invertible(rng, f, 4);
        const Vector b = testgen::vector(rng, f, 4);
        const Vector x = solve(a, b);
        CHECK(norm(apply(a, x) - b) <= 1e-9 * std::max(1.0, norm(b)));
        const Matrix ainv = inverse(a);
        CHECK(hs_norm(a * ainv - Matrix::identity(4, f)) <= 1e-9);
    }
    const Matrix singular = Matrix::real({{1.0, 2.0}, {2.0, 4.0}});
    CHECK_THROWS_AS(inverse(singular), precondition_error);
    CHECK(condition_estimate(singular) == std::numeric_limits<double>::infinity());
}

TEST_CASE("matrix powers, including negative exponents") {
    testgen::Rng rng(116);
    const Matrix a = testgen::invertible(rng, Field::Real, 3);
    CHECK(hs_norm(matrix_power(a, 0) - Matrix::identity(3)) == 0.0);
    CHECK(hs_norm(matrix_power(a, 3) - a * a * a) <= 1e-12 * hs_norm(a * a * a));
    CHECK(hs_norm(matrix_power(a, -2) * matrix_power(a, 2) - Matrix::identity(3)) <= 1e-8);
}

//==============================================================================
// field conversions
//==============================================================================

TEST_CASE("complexification preserves both norms") {
    testgen::Rng rng(117);
    for (int trial = 0; trial < 15; ++trial) {
        const Matrix a = testgen::real_matrix(rng, 4, 4);
        const Matrix ac = complexify(a);
        CHECK(ac.field() == Field::Complex);
        CHECK(hs_norm(ac) == doctest::Approx(hs_norm(a)).epsilon(1e-10));
        CHECK(op_norm(ac) == doctest::Approx(op_norm(a)).epsilon(1e-10));
    }
}

TEST_CASE("realification squares the determinant modulus") {
    testgen::Rng rng(118);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + trial % 3;
        const Matrix z = testgen::complex_matrix(rng, n, n);
        const Matrix zr = realify(z);
        CHECK(zr.field() == Field::Real);
        CHECK(zr.rows() == 2 * n);
        const double lhs = det(zr).real();
        const double rhs = std::norm(det(z));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("realification intertwines matrix application") {
    testgen::Rng rng(119);
    const Matrix z = testgen::complex_matrix(rng, 3, 3);
    const Vector v = testgen::complex_vector(rng, 3);
    const Vector lhs = apply(realify(z), realify(v));
    const Vector rhs = realify(apply(z, v));
    CHECK(norm(lhs - rhs) <= 1e-12);
    CHECK(norm(unrealify(realify(v)) - v) == 0.0);
}

TEST_CASE("Real-tagged values reject nonzero imaginary parts") {
    CHECK_THROWS_AS(Vector(Field::Real, {Cplx(1.0, 0.5)}), precondition_error);
}
