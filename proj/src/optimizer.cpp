#include "radcov/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace radcov {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

struct GeneLayout {
  std::vector<GeneBounds> bounds;  // per active gene, camera-major order
};

GeneLayout layout_of(const DofSpec& spec) {
  GeneLayout layout;
  for (const auto& camera : spec.cameras) {
    for (const DofEntry& dof : camera) {
      if (dof.active) layout.bounds.push_back(dof.bounds);
    }
  }
  return layout;
}

}  // namespace

int DofSpec::gene_count() const {
  int count = 0;
  for (const auto& camera : cameras) {
    for (const DofEntry& dof : camera) {
      if (dof.active) ++count;
    }
  }
  return count;
}

void validate_dof_spec(const DofSpec& spec) {
  if (spec.cameras.empty()) {
    throw std::invalid_argument("dof spec: no cameras");
  }
  for (std::size_t c = 0; c < spec.cameras.size(); ++c) {
    for (int d = 0; d < 6; ++d) {
      const DofEntry& dof = spec.cameras[c][d];
      const std::string where =
          "dof spec: camera " + std::to_string(c) + " dof " + std::to_string(d);
      if (dof.active) {
        if (!(std::isfinite(dof.bounds.lo) && std::isfinite(dof.bounds.hi))) {
          throw std::invalid_argument(where + ": non-finite bounds");
        }
        if (dof.bounds.lo > dof.bounds.hi) {
          throw std::invalid_argument(where + ": inverted bounds");
        }
        if ((d == 4 || d == 5) &&
            (dof.bounds.lo < -kHalfPi || dof.bounds.hi > kHalfPi)) {
          throw std::invalid_argument(where + ": angle bounds out of range");
        }
      } else {
        if (!std::isfinite(dof.fixed_value)) {
          throw std::invalid_argument(where + ": non-finite fixed value");
        }
        if ((d == 4 || d == 5) &&
            (dof.fixed_value < -kHalfPi || dof.fixed_value > kHalfPi)) {
          throw std::invalid_argument(where + ": fixed angle out of range");
        }
      }
    }
  }
  if (spec.gene_count() == 0) {
    throw std::invalid_argument("dof spec: nothing to optimize");
  }
}

Chromosome random_chromosome(const DofSpec& spec, Rng& rng) {
  Chromosome ch;
  ch.genes.reserve(spec.gene_count());
  for (const auto& camera : spec.cameras) {
    for (const DofEntry& dof : camera) {
      if (dof.active) ch.genes.push_back(rng.uniform(dof.bounds.lo, dof.bounds.hi));
    }
  }
  return ch;
}

std::vector<Pose6> decode_poses(const DofSpec& spec, const Chromosome& ch) {
  std::vector<Pose6> poses;
  poses.reserve(spec.cameras.size());
  std::size_t g = 0;
  for (const auto& camera : spec.cameras) {
    double v[6];
    for (int d = 0; d < 6; ++d) {
      v[d] = camera[d].active ? ch.genes.at(g++) : camera[d].fixed_value;
    }
    poses.push_back(make_pose(Vec3(v[0], v[1], v[2]), v[3], v[4], v[5]));
  }
  return poses;
}

Chromosome encode_poses(const DofSpec& spec, const std::vector<Pose6>& poses) {
  if (poses.size() != spec.cameras.size()) {
    throw std::invalid_argument("encode_poses: pose count mismatch");
  }
  Chromosome ch;
  ch.genes.reserve(spec.gene_count());
  for (std::size_t c = 0; c < spec.cameras.size(); ++c) {
    const Pose6& pose = poses[c];
    const double v[6] = {pose.position.x(), pose.position.y(),
                         pose.position.z(), pose.alpha,
                         pose.beta,          pose.gamma};
    for (int d = 0; d < 6; ++d) {
      if (spec.cameras[c][d].active) ch.genes.push_back(v[d]);
    }
  }
  return ch;
}

bool check_placement(const Vec3& position, const Scene& scene) {
  for (const ForbiddenRegion& region : scene.forbidden_regions) {
    if (region_contains(region, position)) return false;
  }
  for (const auto& obstacle : scene.obstacles) {
    if (inside_obstacle(obstacle, position, scene)) return false;
  }
  return true;
}

double fitness(const Chromosome& ch, const DofSpec& spec,
               const EvalConfig& eval, const Scene& scene) {
  std::vector<Pose6> poses;
  try {
    poses = decode_poses(spec, ch);
  } catch (const std::invalid_argument&) {
    return 0.0;
  }
  for (const Pose6& pose : poses) {
    if (!check_placement(pose.position, scene)) return 0.0;
  }
  std::vector<Camera> cameras;
  cameras.reserve(poses.size());
  for (std::size_t i = 0; i < poses.size(); ++i) {
    cameras.push_back(make_camera(eval.intrinsics, poses[i], eval.confusion_px,
                                  static_cast<int>(i) + 1));
  }
  try {
    return objective(score_pieces(cameras, scene, eval.thold, eval.method));
  } catch (const std::invalid_argument&) {
    // A camera landed exactly on a piece center.
    return 0.0;
  }
}

void validate_iga_params(const IgaParams& params, int gene_count) {
  if (params.population_size < 1) {
    throw std::invalid_argument("iga: population_size must be at least 1");
  }
  if (params.iterations < 0) {
    throw std::invalid_argument("iga: iterations must be non-negative");
  }
  if (params.mutation_probability < 0.0 || params.mutation_probability > 1.0) {
    throw std::invalid_argument("iga: mutation_probability outside [0, 1]");
  }
  if (params.recombination_min < 1 ||
      params.recombination_min > params.recombination_max) {
    throw std::invalid_argument("iga: bad recombination fragment range");
  }
  if (params.recombination_max > gene_count) {
    throw std::invalid_argument(
        "iga: recombination fragment exceeds the chromosome");
  }
}

void validate_sga_params(const SgaParams& params, int gene_count) {
  if (params.population_size < 2) {
    throw std::invalid_argument("sga: population_size must be at least 2");
  }
  if (params.iterations < 0) {
    throw std::invalid_argument("sga: iterations must be non-negative");
  }
  if (params.mutation_probability < 0.0 || params.mutation_probability > 1.0) {
    throw std::invalid_argument("sga: mutation_probability outside [0, 1]");
  }
  if (gene_count < 2) {
    throw std::invalid_argument("sga: crossover needs at least two genes");
  }
}

OptimizeResult iga_optimize_with(const DofSpec& spec, const IgaParams& params,
                                 Rng& rng, const FitnessFn& fit,
                                 double total_area) {
  validate_dof_spec(spec);
  const int gene_count = spec.gene_count();
  validate_iga_params(params, gene_count);
  const GeneLayout layout = layout_of(spec);
  const int m = params.population_size;

  std::vector<Chromosome> pop;
  pop.reserve(m);
  for (int i = 0; i < m; ++i) pop.push_back(random_chromosome(spec, rng));
  std::vector<double> score(m);
  for (int i = 0; i < m; ++i) score[i] = fit(pop[i]);

  Chromosome best = pop[0];
  double best_score = score[0];
  for (int i = 1; i < m; ++i) {
    if (score[i] > best_score) {
      best = pop[i];
      best_score = score[i];
    }
  }

  const auto ratio = [total_area](double value) {
    return total_area > 0.0 ? value / total_area : 0.0;
  };

  OptimizeResult result;
  result.trace.push_back({0, best_score, ratio(best_score)});

  for (int t = 1; t <= params.iterations; ++t) {
    for (int i = 0; i < m; ++i) {
      const int fragment =
          params.recombination_min +
          rng.uniform_int(params.recombination_max - params.recombination_min +
                          1);
      const int start = rng.uniform_int(gene_count - fragment + 1);
      const Chromosome& donor = score[i] > best_score ? pop[i] : best;
      Chromosome child = pop[i];
      for (int g = start; g < start + fragment; ++g) {
        child.genes[g] = donor.genes[g];
      }
      for (int g = 0; g < gene_count; ++g) {
        if (g >= start && g < start + fragment) continue;
        if (rng.uniform01() < params.mutation_probability) {
          child.genes[g] =
              rng.uniform(layout.bounds[g].lo, layout.bounds[g].hi);
        }
      }
      pop[i] = std::move(child);
    }
    for (int i = 0; i < m; ++i) score[i] = fit(pop[i]);
    for (int i = 0; i < m; ++i) {
      if (score[i] > best_score) {
        best = pop[i];
        best_score = score[i];
      }
    }
    if (params.keep_best_in_population) {
      const int worst = static_cast<int>(
          std::min_element(score.begin(), score.end()) - score.begin());
      pop[worst] = best;
      score[worst] = best_score;
    }
    result.trace.push_back({t, best_score, ratio(best_score)});
  }

  result.poses = decode_poses(spec, best);
  result.fitness = best_score;
  result.recognized_ratio = ratio(best_score);
  result.final_population = std::move(pop);
  return result;
}

OptimizeResult iga_optimize(const DofSpec& spec, const IgaParams& params,
                            const EvalConfig& eval, const Scene& scene) {
  Rng rng(params.seed);
  const FitnessFn fit = [&](const Chromosome& ch) {
    return fitness(ch, spec, eval, scene);
  };
  return iga_optimize_with(spec, params, rng, fit, scene.object.total_area);
}

OptimizeResult sga_optimize(const DofSpec& spec, const SgaParams& params,
                            const EvalConfig& eval, const Scene& scene) {
  validate_dof_spec(spec);
  const int gene_count = spec.gene_count();
  validate_sga_params(params, gene_count);
  const GeneLayout layout = layout_of(spec);
  const int m = params.population_size;
  const double total_area = scene.object.total_area;

  Rng rng(params.seed);
  const auto fit = [&](const Chromosome& ch) {
    return fitness(ch, spec, eval, scene);
  };

  std::vector<Chromosome> pop;
  pop.reserve(m);
  for (int i = 0; i < m; ++i) pop.push_back(random_chromosome(spec, rng));
  std::vector<double> score(m);
  for (int i = 0; i < m; ++i) score[i] = fit(pop[i]);

  const auto ratio = [total_area](double value) {
    return total_area > 0.0 ? value / total_area : 0.0;
  };
  const auto generation_best = [&]() {
    return static_cast<int>(std::max_element(score.begin(), score.end()) -
                            score.begin());
  };

  OptimizeResult result;
  result.trace.push_back(
      {0, score[generation_best()], ratio(score[generation_best()])});

  const auto select = [&]() -> int {
    double total = 0.0;
    for (const double s : score) total += s;
    if (total <= 0.0) return rng.uniform_int(m);
    const double pick = rng.uniform01() * total;
    double cum = 0.0;
    for (int i = 0; i < m; ++i) {
      cum += score[i];
      if (pick <= cum) return i;
    }
    return m - 1;
  };

  for (int t = 1; t <= params.iterations; ++t) {
    std::vector<int> parents(m);
    for (int i = 0; i < m; ++i) parents[i] = select();
    std::vector<Chromosome> next;
    next.reserve(m);
    for (int i = 0; i + 1 < m; i += 2) {
      Chromosome a = pop[parents[i]];
      Chromosome b = pop[parents[i + 1]];
      const int cut = 1 + rng.uniform_int(gene_count - 1);
      for (int g = cut; g < gene_count; ++g) {
        std::swap(a.genes[g], b.genes[g]);
      }
      next.push_back(std::move(a));
      next.push_back(std::move(b));
    }
    if (m % 2 == 1) next.push_back(pop[parents[m - 1]]);
    for (Chromosome& ch : next) {
      for (int g = 0; g < gene_count; ++g) {
        if (rng.uniform01() < params.mutation_probability) {
          ch.genes[g] = rng.uniform(layout.bounds[g].lo, layout.bounds[g].hi);
        }
      }
    }
    pop = std::move(next);
    for (int i = 0; i < m; ++i) score[i] = fit(pop[i]);
    result.trace.push_back(
        {t, score[generation_best()], ratio(score[generation_best()])});
  }

  const int final_best = generation_best();
  result.poses = decode_poses(spec, pop[final_best]);
  result.fitness = score[final_best];
  result.recognized_ratio = ratio(score[final_best]);
  result.final_population = std::move(pop);
  return result;
}

std::vector<HeuristicRow> heuristic_place(
    const std::array<DofEntry, 6>& camera_dof, int max_cameras,
    const IgaParams& params, const EvalConfig& eval, const Scene& scene) {
  if (max_cameras < 1) {
    throw std::invalid_argument("heuristic: max_cameras must be positive");
  }
  DofSpec single;
  single.cameras.push_back(camera_dof);
  validate_dof_spec(single);
  const int gene_count = single.gene_count();

  IgaParams step = params;
  step.recombination_min = std::min(step.recombination_min, gene_count);
  step.recombination_max = std::min(step.recombination_max, gene_count);

  Rng rng(params.seed);
  std::vector<Pose6> placed;
  std::vector<Camera> placed_cameras;
  std::vector<HeuristicRow> rows;

  for (int n = 1; n <= max_cameras; ++n) {
    const FitnessFn fit = [&](const Chromosome& ch) -> double {
      std::vector<Pose6> poses;
      try {
        poses = decode_poses(single, ch);
      } catch (const std::invalid_argument&) {
        return 0.0;
      }
      if (!check_placement(poses[0].position, scene)) return 0.0;
      std::vector<Camera> cameras = placed_cameras;
      cameras.push_back(make_camera(eval.intrinsics, poses[0],
                                    eval.confusion_px, n));
      try {
        return objective(score_pieces(cameras, scene, eval.thold, eval.method));
      } catch (const std::invalid_argument&) {
        return 0.0;
      }
    };
    const OptimizeResult result =
        iga_optimize_with(single, step, rng, fit, scene.object.total_area);
    placed.push_back(result.poses[0]);
    placed_cameras.push_back(make_camera(eval.intrinsics, result.poses[0],
                                         eval.confusion_px, n));
    rows.push_back({n, result.recognized_ratio, placed});
  }
  return rows;
}

}  // namespace radcov
