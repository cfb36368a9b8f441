// localization.hpp -- least-squares multilateration from squared-range
// measurements against a fixed set of reference anchors.
#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "uwauth/channel.hpp"
#include "uwauth/geometry.hpp"

namespace uwauth {

// Precomputes the linear least-squares machinery for a planar anchor set.
//
// With anchors (x_i, y_i), the design matrix has rows (-2 x_i, -2 y_i, 1) and
// the unknown is (x, y, ||p||^2).  The right-hand side entries are
// b_i = dhat_i^2 - x_i^2 - y_i^2.  The position estimate discards the third
// (norm) component, i.e. uses only the first two rows of the pseudoinverse.
class LocalizationSystem {
 public:
  // Requires at least three pairwise-distinct, non-collinear anchors; the
  // normal matrix must be well conditioned (cond <= 1e12).  Throws
  // std::invalid_argument otherwise.
  explicit LocalizationSystem(std::vector<Vec2> anchors);

  int size() const { return static_cast<int>(anchors_.size()); }
  const std::vector<Vec2>& anchors() const { return anchors_; }

  // L x 3 design matrix.
  const Eigen::MatrixXd& design_matrix() const { return design_; }
  // 3 x L pseudoinverse of the design matrix.
  const Eigen::MatrixXd& solver() const { return solver_; }
  // 2 x L position block (first two rows of solver()).
  const Eigen::MatrixXd& position_solver() const { return position_solver_; }
  // L x 2 Moore-Penrose pseudoinverse of position_solver(); lifts a position
  // residual back into measurement space for the authentication statistic.
  // position_solver() * statistic_lift() is the 2x2 identity.
  const Eigen::MatrixXd& statistic_lift() const { return lift_; }

  // Euclidean distances from p to every anchor.  Throws std::domain_error if
  // p coincides with an anchor (zero range carries no timing information and
  // the channel model diverges there).
  std::vector<double> true_distances(Vec2 p) const;

  // Right-hand side vector for a set of measured distances (size L).
  Eigen::VectorXd build_b(const std::vector<double>& measured) const;

  // Position estimate from measured distances.
  Vec2 solve(const std::vector<double>& measured) const;

 private:
  std::vector<Vec2> anchors_;
  Eigen::MatrixXd design_;
  Eigen::MatrixXd solver_;
  Eigen::MatrixXd position_solver_;
  Eigen::MatrixXd lift_;
};

// One ranging round: true distances, per-link noise level, and noisy
// measurements drawn from a generator seeded with `seed`.
struct RangingSample {
  std::vector<double> measured;
  std::vector<double> truth;
  std::vector<double> sigma;
};

// Measures all anchor-to-transmitter distances through the acoustic channel.
// Draws one Gaussian per link; with params.sigma_scale == 0 the measurement
// equals the true distance.  In extreme noise a measured value may come out
// negative; downstream processing only uses its square.
RangingSample sample_ranging(const LocalizationSystem& system,
                             const ChannelParams& params, Vec2 transmitter,
                             std::uint64_t seed);

}  // namespace uwauth
