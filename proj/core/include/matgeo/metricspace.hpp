#pragma once

// Finite metric geometry over R^n and C^n: the d_p family of metrics, point
// sets with Hausdorff distance, sampled paths with partition-sum length, and
// finite-sample Lipschitz estimation.  Every supremum or infimum here ranges
// over a finite set, so it is attained and returned exactly as a max or min.

#include <functional>
#include <utility>
#include <vector>

#include "matgeo/linalg.hpp"

namespace matgeo {

// (sum_j |x_j|^p)^(1/p); the max of the |x_j| when p is infinity.
// Requires p > 0.  Not a norm for p < 1 (the triangle inequality fails).
double p_norm(const Vector& x, double p);

// Distance d_p(x, y): |x - y|_p for p >= 1, and |x - y|_p^p for 0 < p < 1.
// The power-p variant restores the triangle inequality, so d_p is a metric
// for every p > 0.  Requires matching shapes and p > 0.
double dp_metric(const Vector& x, const Vector& y, double p);

// Nonempty finite subset of R^n or C^n tagged with the d_p metric it carries.
// All points share one dimension and one field; p is fixed at construction.
class FinitePointSet {
  public:
    FinitePointSet(std::vector<Vector> points, double p);

    const std::vector<Vector>& points() const { return points_; }
    double p() const { return p_; }
    int size() const { return static_cast<int>(points_.size()); }
    int dim() const { return points_[0].dim(); }
    Field field() const { return points_[0].field(); }

  private:
    std::vector<Vector> points_;
    double p_;
};

// min over a of d_p(x, a).  1-Lipschitz in x; zero exactly on members.
double dist_point_set(const Vector& x, const FinitePointSet& a);

// Hausdorff distance: the larger of the two directed max-min distances.
// Requires the sets to share dimension, field, and metric tag.  Zero if and
// only if the two sets are equal as sets.
double hausdorff(const FinitePointSet& a, const FinitePointSet& b);

// Largest pairwise distance; zero exactly when every point coincides.
double diameter(const FinitePointSet& a);

// Path sampled at strictly increasing times, tagged with the d_p metric on
// the target.  Sample counts of one are allowed; length needs at least two.
class SampledPath {
  public:
    SampledPath(std::vector<double> times, std::vector<Vector> points, double p);

    const std::vector<double>& times() const { return times_; }
    const std::vector<Vector>& points() const { return points_; }
    double p() const { return p_; }
    int size() const { return static_cast<int>(points_.size()); }
    int dim() const { return points_[0].dim(); }
    Field field() const { return points_[0].field(); }

  private:
    std::vector<double> times_;
    std::vector<Vector> points_;
    double p_;
};

// Partition sum  sum_j d_p(x(t_j), x(t_{j-1})).  A certified lower bound for
// the true path length; refining the partition can only increase it.
double path_length(const SampledPath& path);

struct RefinedLength {
    double length;  // partition sum at the final refinement level
    int depth;      // dyadic halvings applied to the initial partition
};

// Dyadic refinement: repeatedly insert midpoint samples (obtained from the
// sampler) and recompute the partition sum, stopping once two successive
// sums differ by at most tol.  The result is still a lower bound for the
// true length.  Requires a callable sampler and tol > 0; throws
// convergence_error if the sample budget runs out before the sums settle.
RefinedLength path_length(const SampledPath& path,
                          const std::function<Vector(double)>& sample,
                          double tol = 1e-8);

// max over sample pairs of d_ran(f(x_i), f(x_j)) / d_dom(x_i, x_j): a lower
// bound for the Lipschitz constant of f.  Requires at least two samples and
// pairwise distinct domain points.
double lipschitz_estimate(const std::vector<std::pair<Vector, Vector>>& samples,
                          double dom_p, double ran_p);

// Finite-sample stand-in for the supremum metric on bounded maps: the max of
// d_p(f(x_i), g(x_i)) over paired samples taken at common domain points.
double sup_metric(const std::vector<Vector>& first_values,
                  const std::vector<Vector>& second_values, double p);

}  // namespace matgeo
