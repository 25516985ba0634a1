#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "radcov/config.hpp"
#include "radcov/mesh_io.hpp"

namespace radcov {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitInfeasible = 3;

/// Initialization attempts granted before a search problem is declared
/// infeasible. Attempt a draws the initial population from seed + a.
inline constexpr int kFeasibilityAttempts = 5;

/// Mesh export ramp. t = clamp(strength / (2 thold), 0, 1) sweeps light to
/// saturated; recognized faces run pale yellow (255,255,200) to orange
/// (255,160,0), unrecognized pale green (210,235,210) to full green
/// (0,140,0). A zero threshold degenerates to the saturated end for any
/// positive strength.
FaceColor strength_color(double strength, double thold);

/// Pose list as written by cmd_optimize: {"poses": [{x,y,z,alpha,beta,
/// gamma}, ...]}. Throws ConfigError on structural problems.
std::vector<Pose6> read_poses(const std::string& path);

/// Scores a fixed deployment; writes report.json and coverage.ply into
/// config.out_dir.
int cmd_evaluate(const RunConfig& config, const std::string& poses_path,
                 std::ostream& log);

/// Runs the evolutionary search; writes poses.json, trace.csv, report.json
/// and deployment.ply.
int cmd_optimize(const RunConfig& config, std::ostream& log);

/// Greedy camera-count sweep; writes curve.csv and poses.json for the
/// largest deployment.
int cmd_heuristic(const RunConfig& config, int max_cameras, std::ostream& log);

}  // namespace radcov
