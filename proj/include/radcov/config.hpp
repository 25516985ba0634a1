#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "radcov/camera.hpp"
#include "radcov/objective.hpp"
#include "radcov/optimizer.hpp"
#include "radcov/scene.hpp"

namespace radcov {

/// Configuration failure: missing file, malformed text, or a field violating
/// a downstream invariant. Raised before any scene work starts.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t seed{0};
  std::string object_path;
  std::vector<std::string> obstacle_paths;
  std::vector<ForbiddenRegion> forbidden_regions;
  double sigma{0.0};
  double thold{0.0};
  FusionMethod method{FusionMethod::kFull};
  CameraIntrinsics intrinsics{};
  double confusion_px{0.0};
  /// Empty for pure evaluation runs; required by the search commands.
  DofSpec dof;
  /// seed mirrors the top-level seed after loading.
  IgaParams iga{};
  std::string out_dir{"."};
  /// Non-fatal findings, currently only a field-of-view override that
  /// disagrees with the intrinsics-derived angles.
  std::vector<std::string> warnings;
};

/// Parses and fully validates a JSON run configuration. Every downstream
/// invariant is checked here; mesh paths must exist. Relative mesh paths
/// resolve against the config file's directory, out_dir against the working
/// directory.
RunConfig load_config(const std::string& path);

EvalConfig eval_config(const RunConfig& config);

struct LoadedScene {
  Scene scene;
  int piece_count{0};
  /// Degenerate input triangles skipped during ingestion. Scan exports
  /// usually contain a few, so they are counted rather than fatal.
  int dropped_triangles{0};
};

LoadedScene load_scene(const std::string& object_path,
                       const std::vector<std::string>& obstacle_paths,
                       double sigma,
                       std::vector<ForbiddenRegion> forbidden_regions);

LoadedScene load_scene(const RunConfig& config);

}  // namespace radcov
