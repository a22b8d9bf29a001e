#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "matgeo/expmlog.hpp"
#include "matgeo/lattice.hpp"
#include "matgeo/linalg.hpp"
#include "matgeo/manifolds.hpp"
#include "matgeo/metricspace.hpp"
#include "matgeo/spectral.hpp"
#include "matgeo/submersion.hpp"

namespace {

matgeo::Matrix random_matrix(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    matgeo::Matrix a(n, n, matgeo::Field::Real);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = u(rng);
    return a;
}

matgeo::Matrix random_spd(int n, unsigned seed) {
    const matgeo::Matrix t = random_matrix(n, seed);
    matgeo::Matrix p = matgeo::adjoint(t) * t;
    for (int i = 0; i < n; ++i) p(i, i) += 0.1;
    return p;
}

std::vector<matgeo::Vector> random_points(int count, int dim, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<matgeo::Vector> points;
    for (int i = 0; i < count; ++i) {
        matgeo::Vector v = matgeo::Vector::zero(matgeo::Field::Real, dim);
        for (int j = 0; j < dim; ++j) v[j] = u(rng);
        points.push_back(v);
    }
    return points;
}

void BM_Det(benchmark::State& state) {
    const matgeo::Matrix a = random_matrix(static_cast<int>(state.range(0)), 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matgeo::det(a));
    }
}
BENCHMARK(BM_Det)->Range(4, 64);

void BM_OpNorm(benchmark::State& state) {
    const matgeo::Matrix a = random_matrix(static_cast<int>(state.range(0)), 43);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matgeo::op_norm(a));
    }
}
BENCHMARK(BM_OpNorm)->Range(4, 32);

void BM_Expm(benchmark::State& state) {
    const matgeo::Matrix a = random_matrix(static_cast<int>(state.range(0)), 44);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matgeo::expm(a));
    }
}
BENCHMARK(BM_Expm)->Range(4, 32);

void BM_Eigh(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const matgeo::Matrix a = 0.5 * (random_matrix(n, 45) + matgeo::adjoint(random_matrix(n, 45)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(matgeo::eigh(a));
    }
}
BENCHMARK(BM_Eigh)->Range(4, 64);

void BM_LogmSpd(benchmark::State& state) {
    const matgeo::Matrix p = random_spd(static_cast<int>(state.range(0)), 46);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matgeo::logm_spd(p));
    }
}
BENCHMARK(BM_LogmSpd)->Range(4, 32);

void BM_CharPoly(benchmark::State& state) {
    const matgeo::Matrix a = random_matrix(static_cast<int>(state.range(0)), 47);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matgeo::char_poly(a));
    }
}
BENCHMARK(BM_CharPoly)->Range(4, 32);

void BM_Polar(benchmark::State& state) {
    const matgeo::Matrix t = random_matrix(static_cast<int>(state.range(0)), 48);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matgeo::polar_decompose(t));
    }
}
BENCHMARK(BM_Polar)->Range(4, 32);

void BM_Hausdorff(benchmark::State& state) {
    const int count = static_cast<int>(state.range(0));
    const matgeo::FinitePointSet a(random_points(count, 3, 49), 2.0);
    const matgeo::FinitePointSet b(random_points(count, 3, 50), 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matgeo::hausdorff(a, b));
    }
}
BENCHMARK(BM_Hausdorff)->Range(8, 256);

void BM_ReduceMod(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const matgeo::Lattice l(random_matrix(n, 51) + 3.0 * matgeo::Matrix::identity(n));
    const matgeo::Vector x = random_points(1, n, 52)[0];
    for (auto _ : state) {
        benchmark::DoNotOptimize(matgeo::reduce_mod(l, 10.0 * x));
    }
}
BENCHMARK(BM_ReduceMod)->Range(4, 32);

void BM_HorizontalLift(benchmark::State& state) {
    const matgeo::ConnectionState conn(
        matgeo::SubmersionInstance(matgeo::SubmersionKind::SphereToCP, 1));
    const matgeo::SubmersionInstance& s = conn.submersion();
    const matgeo::BasePath arc{
        [&s](double t) {
            return s.value(matgeo::Vector::real(
                {std::cos(1.3 * t), 0.0, std::sin(1.3 * t) * std::cos(0.4),
                 std::sin(1.3 * t) * std::sin(0.4)}));
        },
        0.0, 1.0};
    const matgeo::Vector p0 = matgeo::Vector::real({1.0, 0.0, 0.0, 0.0});
    const int steps = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(matgeo::horizontal_lift(conn, arc, p0, steps));
    }
}
BENCHMARK(BM_HorizontalLift)->Range(128, 512);

}  // namespace

BENCHMARK_MAIN();
