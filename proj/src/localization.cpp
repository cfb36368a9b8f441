// localization.cpp -- least-squares multilateration implementation.
#include "uwauth/localization.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

#include "uwauth/rng.hpp"

namespace uwauth {

LocalizationSystem::LocalizationSystem(std::vector<Vec2> anchors)
    : anchors_(std::move(anchors)) {
  const int L = static_cast<int>(anchors_.size());
  if (L < 3)
    throw std::invalid_argument("LocalizationSystem: need at least 3 anchors");
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j)
      if (anchors_[i] == anchors_[j]) {
        std::ostringstream os;
        os << "LocalizationSystem: anchors " << i << " and " << j
           << " coincide";
        throw std::invalid_argument(os.str());
      }

  design_.resize(L, 3);
  for (int i = 0; i < L; ++i) {
    design_(i, 0) = -2.0 * anchors_[i].x;
    design_(i, 1) = -2.0 * anchors_[i].y;
    design_(i, 2) = 1.0;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design_);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(2);
  const double cond_normal =
      (smin > 0.0) ? (smax / smin) * (smax / smin)
                   : std::numeric_limits<double>::infinity();
  if (!(cond_normal <= 1e12)) {
    std::ostringstream os;
    os << "LocalizationSystem: degenerate anchor geometry (normal-matrix "
          "condition number "
       << cond_normal << " exceeds 1e12; anchors must not be collinear)";
    throw std::invalid_argument(os.str());
  }

  solver_ = design_.completeOrthogonalDecomposition().pseudoInverse();
  position_solver_ = solver_.topRows(2);

  // Moore-Penrose pseudoinverse of the full-row-rank 2 x L block:
  // pinv(B) = B^T (B B^T)^{-1}.
  const Eigen::Matrix2d gram =
      position_solver_ * position_solver_.transpose();
  lift_ = position_solver_.transpose() * gram.inverse();
}

std::vector<double> LocalizationSystem::true_distances(Vec2 p) const {
  std::vector<double> d(anchors_.size());
  for (std::size_t i = 0; i < anchors_.size(); ++i) {
    d[i] = distance(p, anchors_[i]);
    if (d[i] == 0.0) {
      std::ostringstream os;
      os << "true_distances: transmitter coincides with anchor " << i;
      throw std::domain_error(os.str());
    }
  }
  return d;
}

Eigen::VectorXd LocalizationSystem::build_b(
    const std::vector<double>& measured) const {
  if (static_cast<int>(measured.size()) != size())
    throw std::invalid_argument("build_b: measurement count != anchor count");
  Eigen::VectorXd b(size());
  for (int i = 0; i < size(); ++i)
    b(i) = measured[i] * measured[i] - anchors_[i].x * anchors_[i].x -
           anchors_[i].y * anchors_[i].y;
  return b;
}

Vec2 LocalizationSystem::solve(const std::vector<double>& measured) const {
  const Eigen::Vector2d xy = position_solver_ * build_b(measured);
  return {xy(0), xy(1)};
}

RangingSample sample_ranging(const LocalizationSystem& system,
                             const ChannelParams& params, Vec2 transmitter,
                             std::uint64_t seed) {
  RangingSample s;
  s.truth = system.true_distances(transmitter);
  s.sigma.resize(s.truth.size());
  s.measured.resize(s.truth.size());
  NormalSampler normal(seed);
  for (std::size_t i = 0; i < s.truth.size(); ++i) {
    s.sigma[i] = ranging_sigma(params, s.truth[i]);
    s.measured[i] = s.truth[i] + s.sigma[i] * normal.next();
  }
  return s;
}

}  // namespace uwauth
