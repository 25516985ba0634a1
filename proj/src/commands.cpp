#include "radcov/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "radcov/numeric_text.hpp"
#include "radcov/objective.hpp"

namespace radcov {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

fs::path prepare_out_dir(const RunConfig& config) {
  const fs::path dir(config.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<Camera> build_cameras(const RunConfig& config,
                                  const std::vector<Pose6>& poses) {
  std::vector<Camera> cameras;
  cameras.reserve(poses.size());
  for (std::size_t i = 0; i < poses.size(); ++i) {
    cameras.push_back(make_camera(config.intrinsics, poses[i],
                                  config.confusion_px,
                                  static_cast<int>(i) + 1));
  }
  return cameras;
}

ordered_json report_json(const CoverageReport& rep) {
  ordered_json out;
  out["piece_count"] = rep.piece_count;
  out["total_area"] = rep.total_area;
  out["recognized_pieces"] = rep.recognized_pieces;
  out["recognized_ratio"] = rep.recognized_ratio;
  out["objective_value"] = rep.objective_value;
  out["mean_strength_all"] = rep.mean_strength_all;
  out["mean_strength_recognized"] = rep.mean_strength_recognized;
  ordered_json pieces = ordered_json::array();
  for (const PieceScore& piece : rep.pieces) {
    ordered_json p;
    p["id"] = piece.piece_id;
    p["area"] = piece.area;
    p["fused"] = piece.fused;
    p["recognized"] = piece.recognized;
    p["principal"] = piece.principal;
    p["resolution"] = piece.resolution;
    pieces.push_back(std::move(p));
  }
  out["pieces"] = std::move(pieces);
  return out;
}

ordered_json poses_json(const std::vector<Pose6>& poses) {
  ordered_json arr = ordered_json::array();
  for (const Pose6& pose : poses) {
    ordered_json p;
    p["x"] = pose.position.x();
    p["y"] = pose.position.y();
    p["z"] = pose.position.z();
    p["alpha"] = pose.alpha;
    p["beta"] = pose.beta;
    p["gamma"] = pose.gamma;
    arr.push_back(std::move(p));
  }
  ordered_json out;
  out["poses"] = std::move(arr);
  return out;
}

void write_colored_mesh(const fs::path& path, const Mesh& mesh,
                        const std::vector<PieceScore>& scores, double thold) {
  std::vector<Triangle> faces;
  std::vector<FaceColor> colors;
  faces.reserve(mesh.pieces.size());
  colors.reserve(mesh.pieces.size());
  for (std::size_t i = 0; i < mesh.pieces.size(); ++i) {
    const DirectionalPoint& piece = mesh.pieces[i];
    faces.push_back({piece.vertices[0], piece.vertices[1], piece.vertices[2]});
    colors.push_back(strength_color(scores[i].fused, thold));
  }
  write_ply(path.string(), faces, colors);
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::string out = "iteration,best_fitness,recognized_ratio\n";
  for (const TraceRow& row : trace) {
    out += std::to_string(row.iteration) + "," + number_text(row.best_fitness) +
           "," + number_text(row.recognized_ratio) + "\n";
  }
  return out;
}

void log_scene(const LoadedScene& loaded, const RunConfig& config,
               std::ostream& log) {
  for (const std::string& warning : config.warnings) {
    log << "warning: " << warning << "\n";
  }
  log << "pieces: " << loaded.piece_count;
  if (loaded.dropped_triangles > 0) {
    log << " (" << loaded.dropped_triangles << " degenerate triangles dropped)";
  }
  log << "\n";
}

/// A search problem counts as feasible once any freshly drawn population
/// contains a chromosome with positive fitness. Each attempt shifts the
/// seed by one so reruns stay reproducible.
bool feasible(const DofSpec& spec, const RunConfig& config,
              const EvalConfig& eval, const Scene& scene, std::ostream& log) {
  IgaParams probe = config.iga;
  probe.iterations = 0;
  const int genes = spec.gene_count();
  probe.recombination_min = std::min(probe.recombination_min, genes);
  probe.recombination_max = std::min(probe.recombination_max, genes);
  for (int attempt = 0; attempt < kFeasibilityAttempts; ++attempt) {
    probe.seed = config.iga.seed + static_cast<std::uint64_t>(attempt);
    const OptimizeResult result = iga_optimize(spec, probe, eval, scene);
    if (result.fitness > 0.0) return true;
  }
  log << "error: no chromosome with positive fitness in "
      << kFeasibilityAttempts << " initialization attempts (seeds "
      << config.iga.seed << ".." << config.iga.seed + kFeasibilityAttempts - 1
      << "); the problem looks infeasible\n";
  return false;
}

}  // namespace

FaceColor strength_color(double strength, double thold) {
  const double denom = 2.0 * thold;
  const double t = denom > 0.0 ? std::clamp(strength / denom, 0.0, 1.0)
                               : (strength > 0.0 ? 1.0 : 0.0);
  const bool hit = recognized(strength, thold);
  const double from[3] = {hit ? 255.0 : 210.0, hit ? 255.0 : 235.0,
                          hit ? 200.0 : 210.0};
  const double to[3] = {hit ? 255.0 : 0.0, hit ? 160.0 : 140.0,
                        hit ? 0.0 : 0.0};
  FaceColor color;
  color.r = static_cast<unsigned char>(std::lround(from[0] + (to[0] - from[0]) * t));
  color.g = static_cast<unsigned char>(std::lround(from[1] + (to[1] - from[1]) * t));
  color.b = static_cast<unsigned char>(std::lround(from[2] + (to[2] - from[2]) * t));
  return color;
}

std::vector<Pose6> read_poses(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("poses: cannot open " + path);
  ordered_json root;
  try {
    root = ordered_json::parse(in);
  } catch (const ordered_json::exception& e) {
    throw ConfigError("poses: " + path + ": " + e.what());
  }
  if (!root.is_object() || !root.contains("poses") ||
      !root.at("poses").is_array()) {
    throw ConfigError("poses: expected an object with a 'poses' array");
  }
  std::vector<Pose6> poses;
  const auto& arr = root.at("poses");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& p = arr[i];
    const std::string where = "poses[" + std::to_string(i) + "]";
    auto field = [&](const char* key) -> double {
      if (!p.is_object() || !p.contains(key) || !p.at(key).is_number())
        throw ConfigError("poses: " + where + ": missing number '" + key + "'");
      return p.at(key).get<double>();
    };
    const Vec3 position(field("x"), field("y"), field("z"));
    try {
      poses.push_back(
          make_pose(position, field("alpha"), field("beta"), field("gamma")));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("poses: " + where + ": " + e.what());
    }
  }
  return poses;
}

int cmd_evaluate(const RunConfig& config, const std::string& poses_path,
                 std::ostream& log) {
  try {
    const std::vector<Pose6> poses = read_poses(poses_path);
    if (!config.dof.cameras.empty() &&
        poses.size() != config.dof.cameras.size()) {
      log << "error: " << poses.size() << " poses but the config describes "
          << config.dof.cameras.size() << " cameras\n";
      return kExitConfigError;
    }
    const LoadedScene loaded = load_scene(config);
    log_scene(loaded, config, log);
    for (std::size_t i = 0; i < poses.size(); ++i) {
      if (!check_placement(poses[i].position, loaded.scene)) {
        log << "warning: pose " << i
            << " sits in a forbidden region or inside an obstacle\n";
      }
    }
    const CoverageReport rep =
        report(build_cameras(config, poses), loaded.scene, config.thold,
               config.method);
    const fs::path dir = prepare_out_dir(config);
    write_text(dir / "report.json", report_json(rep).dump(2) + "\n");
    write_colored_mesh(dir / "coverage.ply", loaded.scene.object, rep.pieces,
                       config.thold);
    log << "recognized: " << rep.recognized_pieces << "/" << rep.piece_count
        << " pieces, ratio " << rep.recognized_ratio << "\n";
    log << "wrote " << (dir / "report.json").string() << "\n";
    log << "wrote " << (dir / "coverage.ply").string() << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ParseError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

int cmd_optimize(const RunConfig& config, std::ostream& log) {
  try {
    if (config.dof.cameras.empty()) {
      log << "error: the config carries no dof block to optimize\n";
      return kExitConfigError;
    }
    const LoadedScene loaded = load_scene(config);
    log_scene(loaded, config, log);
    const EvalConfig eval = eval_config(config);
    if (!feasible(config.dof, config, eval, loaded.scene, log)) {
      return kExitInfeasible;
    }
    const OptimizeResult result =
        iga_optimize(config.dof, config.iga, eval, loaded.scene);
    const CoverageReport rep =
        report(build_cameras(config, result.poses), loaded.scene, config.thold,
               config.method);
    const fs::path dir = prepare_out_dir(config);
    write_text(dir / "poses.json", poses_json(result.poses).dump(2) + "\n");
    write_text(dir / "trace.csv", trace_csv(result.trace));
    write_text(dir / "report.json", report_json(rep).dump(2) + "\n");
    write_colored_mesh(dir / "deployment.ply", loaded.scene.object, rep.pieces,
                       config.thold);
    log << "best fitness: " << result.fitness << " m^2, ratio "
        << result.recognized_ratio << "\n";
    for (const char* name : {"poses.json", "trace.csv", "report.json",
                             "deployment.ply"}) {
      log << "wrote " << (dir / name).string() << "\n";
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ParseError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

int cmd_heuristic(const RunConfig& config, int max_cameras,
                  std::ostream& log) {
  try {
    if (max_cameras < 1) {
      log << "error: max cameras must be at least 1\n";
      return kExitConfigError;
    }
    if (config.dof.cameras.size() != 1) {
      log << "error: the heuristic needs a dof block with exactly one "
             "camera template\n";
      return kExitConfigError;
    }
    const LoadedScene loaded = load_scene(config);
    log_scene(loaded, config, log);
    const EvalConfig eval = eval_config(config);
    if (!feasible(config.dof, config, eval, loaded.scene, log)) {
      return kExitInfeasible;
    }
    const std::vector<HeuristicRow> rows = heuristic_place(
        config.dof.cameras[0], max_cameras, config.iga, eval, loaded.scene);
    std::string csv = "cameras,recognized_ratio\n";
    for (const HeuristicRow& row : rows) {
      csv += std::to_string(row.camera_count) + "," +
             number_text(row.recognized_ratio) + "\n";
    }
    const fs::path dir = prepare_out_dir(config);
    write_text(dir / "curve.csv", csv);
    write_text(dir / "poses.json",
               poses_json(rows.back().poses).dump(2) + "\n");
    log << "final ratio with " << rows.back().camera_count
        << " cameras: " << rows.back().recognized_ratio << "\n";
    log << "wrote " << (dir / "curve.csv").string() << "\n";
    log << "wrote " << (dir / "poses.json").string() << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ParseError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace radcov
