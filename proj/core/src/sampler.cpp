#include <Eigen/Cholesky>

#include <cmath>
#include <random>

#include "tribo/error.hpp"
#include "tribo/rul.hpp"

namespace tribo {

PosteriorSampleSet adaptiveMetropolis(const LogDensity& target, const Eigen::Vector2d& init,
                                      int nOfSimulations, std::uint64_t seed,
                                      const AdaptiveMetropolisOptions& options) {
  if (nOfSimulations < 2) {
    throw Error(ErrorKind::Configuration, "nOfSimulations must be >= 2");
  }
  double current = target(init);
  if (!std::isfinite(current)) {
    throw Error(ErrorKind::Sampling, "target density is not finite at the initial point");
  }

  Eigen::Vector2d initialStd;
  if (options.initialStd) {
    initialStd = *options.initialStd;
  } else {
    for (int i = 0; i < 2; ++i) initialStd[i] = init[i] != 0.0 ? 0.1 * std::abs(init[i]) : 0.1;
  }
  Eigen::Matrix2d proposalChol = initialStd.asDiagonal();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  // Running mean and scatter of every state visited so far.
  Eigen::Vector2d mean = init;
  Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
  long long visited = 1;

  PosteriorSampleSet out;
  out.nOfSimulations = nOfSimulations;
  out.burnInCount = nOfSimulations / 2;
  out.samples.reserve(static_cast<std::size_t>(nOfSimulations - out.burnInCount));

  Eigen::Vector2d x = init;
  long long accepted = 0;
  for (int iter = 0; iter < nOfSimulations; ++iter) {
    if (iter >= options.adaptationStart) {
      const Eigen::Matrix2d cov = scatter / static_cast<double>(visited - 1);
      const Eigen::Matrix2d proposalCov =
          options.scale * cov + options.scale * options.epsilon * Eigen::Matrix2d::Identity();
      Eigen::LLT<Eigen::Matrix2d> llt(proposalCov);
      if (llt.info() == Eigen::Success) proposalChol = llt.matrixL();
    }

    const Eigen::Vector2d z(normal(rng), normal(rng));
    const Eigen::Vector2d candidate = x + proposalChol * z;
    const double proposed = target(candidate);
    const double u = uniform(rng);
    if (std::isfinite(proposed) && std::log(u) < proposed - current) {
      x = candidate;
      current = proposed;
      ++accepted;
    }

    ++visited;
    const Eigen::Vector2d delta = x - mean;
    mean += delta / static_cast<double>(visited);
    scatter += delta * (x - mean).transpose();

    if (iter >= out.burnInCount) out.samples.push_back(x);
  }
  out.acceptanceRate = static_cast<double>(accepted) / nOfSimulations;
  return out;
}

}  // namespace tribo
