#include "matgeo/metricspace.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace matgeo {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw precondition_error(what);
}

// Refinement past this many samples means the partition sums never settled.
constexpr int kMaxRefinedSamples = (1 << 20) + 1;

void check_shapes(const Vector& x, const Vector& y, const char* what) {
    require(x.dim() == y.dim() && x.field() == y.field(), what);
}

double partition_sum(const std::vector<Vector>& points, double p) {
    double sum = 0.0;
    for (size_t i = 1; i < points.size(); ++i) sum += dp_metric(points[i - 1], points[i], p);
    return sum;
}

}  // namespace

double p_norm(const Vector& x, double p) {
    require(p > 0.0, "p must be positive");
    double biggest = 0.0;
    for (int i = 0; i < x.dim(); ++i) biggest = std::max(biggest, std::abs(x[i]));
    if (biggest == 0.0 || std::isinf(p)) return biggest;
    // Scaling by the largest modulus keeps the powers in range and costs no
    // accuracy: the result is exactly homogeneous in that factor.
    double sum = 0.0;
    for (int i = 0; i < x.dim(); ++i) sum += std::pow(std::abs(x[i]) / biggest, p);
    return biggest * std::pow(sum, 1.0 / p);
}

double dp_metric(const Vector& x, const Vector& y, double p) {
    require(p > 0.0, "p must be positive");
    check_shapes(x, y, "points have different shapes");
    const Vector d = x - y;
    if (p >= 1.0) return p_norm(d, p);
    // For 0 < p < 1 the unpowered |.|_p fails the triangle inequality, but
    // the sum of p-th powers satisfies it term by term.
    double sum = 0.0;
    for (int i = 0; i < d.dim(); ++i) sum += std::pow(std::abs(d[i]), p);
    return sum;
}

FinitePointSet::FinitePointSet(std::vector<Vector> points, double p)
    : points_(std::move(points)), p_(p) {
    require(!points_.empty(), "point set is empty");
    require(p_ > 0.0, "p must be positive");
    for (const Vector& x : points_)
        check_shapes(x, points_[0], "points have different shapes");
}

double dist_point_set(const Vector& x, const FinitePointSet& a) {
    check_shapes(x, a.points()[0], "point and set have different shapes");
    double best = dp_metric(x, a.points()[0], a.p());
    for (int i = 1; i < a.size(); ++i)
        best = std::min(best, dp_metric(x, a.points()[static_cast<size_t>(i)], a.p()));
    return best;
}

double hausdorff(const FinitePointSet& a, const FinitePointSet& b) {
    require(a.p() == b.p(), "metric tags differ");
    check_shapes(a.points()[0], b.points()[0], "sets have different shapes");
    double sup = 0.0;
    for (const Vector& x : a.points()) sup = std::max(sup, dist_point_set(x, b));
    for (const Vector& y : b.points()) sup = std::max(sup, dist_point_set(y, a));
    return sup;
}

double diameter(const FinitePointSet& a) {
    double sup = 0.0;
    for (int i = 0; i < a.size(); ++i)
        for (int j = i + 1; j < a.size(); ++j)
            sup = std::max(sup, dp_metric(a.points()[static_cast<size_t>(i)],
                                          a.points()[static_cast<size_t>(j)], a.p()));
    return sup;
}

SampledPath::SampledPath(std::vector<double> times, std::vector<Vector> points, double p)
    : times_(std::move(times)), points_(std::move(points)), p_(p) {
    require(!points_.empty(), "path has no samples");
    require(times_.size() == points_.size(), "times and points have different lengths");
    require(p_ > 0.0, "p must be positive");
    for (size_t i = 1; i < times_.size(); ++i)
        require(times_[i - 1] < times_[i], "times are not strictly increasing");
    for (const Vector& x : points_)
        check_shapes(x, points_[0], "points have different shapes");
}

double path_length(const SampledPath& path) {
    require(path.size() >= 2, "need at least two samples");
    return partition_sum(path.points(), path.p());
}

RefinedLength path_length(const SampledPath& path,
                          const std::function<Vector(double)>& sample, double tol) {
    require(static_cast<bool>(sample), "no sampler provided");
    require(tol > 0.0, "tolerance must be positive");
    require(path.size() >= 2, "need at least two samples");
    std::vector<double> times = path.times();
    std::vector<Vector> points = path.points();
    double previous = partition_sum(points, path.p());
    int depth = 0;
    while (true) {
        if (2 * times.size() - 1 > static_cast<size_t>(kMaxRefinedSamples))
            throw convergence_error("partition sums did not settle within the sample budget");
        std::vector<double> finer_times;
        std::vector<Vector> finer_points;
        finer_times.reserve(2 * times.size() - 1);
        finer_points.reserve(2 * times.size() - 1);
        for (size_t i = 0; i + 1 < times.size(); ++i) {
            const double mid = 0.5 * (times[i] + times[i + 1]);
            finer_times.push_back(times[i]);
            finer_points.push_back(points[i]);
            finer_times.push_back(mid);
            finer_points.push_back(sample(mid));
            check_shapes(finer_points.back(), points[0], "sampler output has the wrong shape");
        }
        finer_times.push_back(times.back());
        finer_points.push_back(points.back());
        times = std::move(finer_times);
        points = std::move(finer_points);
        ++depth;
        const double refined = partition_sum(points, path.p());
        if (std::abs(refined - previous) <= tol) return {refined, depth};
        previous = refined;
    }
}

double lipschitz_estimate(const std::vector<std::pair<Vector, Vector>>& samples,
                          double dom_p, double ran_p) {
    require(samples.size() >= 2, "need at least two samples");
    double sup = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        for (size_t j = i + 1; j < samples.size(); ++j) {
            const double apart = dp_metric(samples[i].first, samples[j].first, dom_p);
            require(apart > 0.0, "domain points are not distinct");
            sup = std::max(sup, dp_metric(samples[i].second, samples[j].second, ran_p) / apart);
        }
    }
    return sup;
}

double sup_metric(const std::vector<Vector>& first_values,
                  const std::vector<Vector>& second_values, double p) {
    require(!first_values.empty(), "no sample values");
    require(first_values.size() == second_values.size(), "sample lists have different lengths");
    double sup = 0.0;
    for (size_t i = 0; i < first_values.size(); ++i)
        sup = std::max(sup, dp_metric(first_values[i], second_values[i], p));
    return sup;
}

}  // namespace matgeo
