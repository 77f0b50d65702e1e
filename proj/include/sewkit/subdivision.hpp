#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sewkit {

/// Ordered points s = t_0, t_1, ..., t_k = t of the interval between s and t,
/// increasing when s < t and decreasing when s > t. When s == t the point
/// list is the single value s.
class Subdivision {
 public:
  /// Validates monotonicity; throws SubdivisionError otherwise.
  explicit Subdivision(std::vector<double> points);

  static Subdivision trivial(double s, double t);
  static Subdivision regular(double s, double t, std::size_t intervals);

  double start() const { return points_.front(); }
  double end() const { return points_.back(); }
  const std::vector<double>& points() const { return points_; }

  /// Number of blocks [t_{j-1}, t_j]; zero for the degenerate s == t case.
  std::size_t intervals() const { return points_.size() - 1; }
  bool is_trivial() const { return points_.size() <= 2; }

  /// Every point of `coarse` is a point of this subdivision.
  bool refines(const Subdivision& coarse) const;

  friend bool operator==(const Subdivision&, const Subdivision&) = default;

 private:
  std::vector<double> points_;
};

double mesh(const Subdivision& I);

/// Inserts the midpoint (a+b)/2 of every block.
Subdivision dyadic_refine(const Subdivision& I);

/// Sorted union of two subdivisions with the same endpoints.
Subdivision joint(const Subdivision& I, const Subdivision& J);

struct Coarsening {
  Subdivision result;
  std::size_t removed_index;  // index of the removed point in the input
  double removed_pair_sum;    // |I_j| + |I_{j+1}| of the merged blocks
};

/// Removes the interior point whose two adjacent blocks have the smallest
/// total length, ties going to the smallest index.
Coarsening coarsen_minimal_pair(const Subdivision& I);

/// Same points traversed from t back to s.
Subdivision reverse(const Subdivision& I);

/// I on [s, u] followed by J on [u, t].
Subdivision concatenate(const Subdivision& I, const Subdivision& J);

}  // namespace sewkit
