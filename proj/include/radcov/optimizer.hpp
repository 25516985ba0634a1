#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "radcov/objective.hpp"
#include "radcov/scene.hpp"

namespace radcov {

/// Deterministic uniform source. All draws go through the 53-bit mantissa
/// path so runs reproduce bit-for-bit on any conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Uniform in [0, n); n must be positive.
  int uniform_int(int n) {
    const int k = static_cast<int>(uniform01() * n);
    return k < n ? k : n - 1;
  }

 private:
  std::mt19937_64 gen_;
};

struct GeneBounds {
  double lo{0.0};
  double hi{0.0};
};

/// One degree of freedom of one camera. Active entries evolve inside their
/// bounds; inactive entries stay pinned at fixed_value.
struct DofEntry {
  bool active{true};
  GeneBounds bounds{};
  double fixed_value{0.0};
};

/// Per-camera freedom layout, gene order x y z alpha beta gamma.
struct DofSpec {
  std::vector<std::array<DofEntry, 6>> cameras;

  int gene_count() const;
};

/// Throws std::invalid_argument on empty specs, inverted bounds, pitch or
/// roll ranges leaving [-pi/2, pi/2], or non-finite values.
void validate_dof_spec(const DofSpec& spec);

struct Chromosome {
  std::vector<double> genes;
};

Chromosome random_chromosome(const DofSpec& spec, Rng& rng);
std::vector<Pose6> decode_poses(const DofSpec& spec, const Chromosome& ch);
Chromosome encode_poses(const DofSpec& spec, const std::vector<Pose6>& poses);

/// True when the position avoids every keep-out region and obstacle volume.
bool check_placement(const Vec3& position, const Scene& scene);

struct EvalConfig {
  CameraIntrinsics intrinsics{};
  double confusion_px{0.0};
  double thold{0.0};
  FusionMethod method{FusionMethod::kFull};
};

/// Recognized area of the decoded placement; zero when any camera lands in a
/// keep-out volume or degenerates onto a piece center.
double fitness(const Chromosome& ch, const DofSpec& spec,
               const EvalConfig& eval, const Scene& scene);

struct IgaParams {
  int population_size{20};
  int recombination_min{1};
  int recombination_max{1};
  double mutation_probability{0.2};
  int iterations{100};
  std::uint64_t seed{0};
  /// When set, each generation overwrites its worst member with the tracked
  /// best, so the elite also competes as a regular member.
  bool keep_best_in_population{false};
};

struct SgaParams {
  int population_size{20};
  double mutation_probability{0.2};
  int iterations{100};
  std::uint64_t seed{0};
};

/// Throw std::invalid_argument on any out-of-range field, so configs can be
/// rejected before a scene is ever loaded.
void validate_iga_params(const IgaParams& params, int gene_count);
void validate_sga_params(const SgaParams& params, int gene_count);

struct TraceRow {
  int iteration{0};
  double best_fitness{0.0};
  double recognized_ratio{0.0};
};

struct OptimizeResult {
  std::vector<Pose6> poses;
  double fitness{0.0};
  double recognized_ratio{0.0};
  std::vector<TraceRow> trace;
  std::vector<Chromosome> final_population;
};

using FitnessFn = std::function<double(const Chromosome&)>;

/// Elite-guided search. Each member copies a random fragment from whichever
/// of itself and the tracked best ranks higher, then mutates the remaining
/// genes. The tracked best is external: it seeds donors but is never
/// mutated, and the returned result is the best chromosome ever evaluated.
/// The trace holds rows 0..iterations of that running best, so it never
/// decreases.
OptimizeResult iga_optimize(const DofSpec& spec, const IgaParams& params,
                            const EvalConfig& eval, const Scene& scene);

/// Same search driven by a caller-owned generator and fitness, for callers
/// composing several runs on one stream.
OptimizeResult iga_optimize_with(const DofSpec& spec, const IgaParams& params,
                                 Rng& rng, const FitnessFn& fit,
                                 double total_area);

/// Plain generational baseline: roulette selection, one-point crossover,
/// per-gene mutation, no elitism. The trace reports each generation's own
/// best, which can decrease; the result is the final population's best.
OptimizeResult sga_optimize(const DofSpec& spec, const SgaParams& params,
                            const EvalConfig& eval, const Scene& scene);

struct HeuristicRow {
  int camera_count{0};
  double recognized_ratio{0.0};
  std::vector<Pose6> poses;
};

/// Greedy growth: cameras are added one at a time, each tuned by its own
/// search while every earlier camera stays frozen. One generator drives the
/// whole run. Fragment bounds clamp to the single-camera gene count.
std::vector<HeuristicRow> heuristic_place(
    const std::array<DofEntry, 6>& camera_dof, int max_cameras,
    const IgaParams& params, const EvalConfig& eval, const Scene& scene);

}  // namespace radcov
