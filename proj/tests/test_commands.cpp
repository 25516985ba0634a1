#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "radcov/commands.hpp"
#include "radcov/objective.hpp"

using namespace radcov;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "radcov_commands";
  fs::create_directories(dir);
  return dir;
}

std::string write_text(const std::string& name, const std::string& content) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  return path.string();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text) lines += c == '\n';
  return lines;
}

/// Meter-square plate in the z=0 plane facing +z.
std::string plate_stl() {
  static const std::string path = write_text(
      "plate.stl",
      "solid plate\n"
      "facet normal 0 0 1\nouter loop\n"
      "vertex -0.5 -0.5 0\nvertex 0.5 -0.5 0\nvertex -0.5 0.5 0\n"
      "endloop\nendfacet\n"
      "facet normal 0 0 1\nouter loop\n"
      "vertex 0.5 -0.5 0\nvertex 0.5 0.5 0\nvertex -0.5 0.5 0\n"
      "endloop\nendfacet\n"
      "endsolid plate\n");
  return path;
}

json down_dof_entry() {
  return json::array({json{{"min", -0.5}, {"max", 0.5}},
                      json{{"min", -0.5}, {"max", 0.5}},
                      json{{"min", 0.6}, {"max", 0.9}},
                      json{{"fixed", 0.0}}, json{{"fixed", kPi / 2}},
                      json{{"fixed", 0.0}}});
}

json base_config(const std::string& out_name) {
  plate_stl();
  json j;
  j["seed"] = 7;
  j["object"] = "plate.stl";
  j["sigma"] = 0.25;
  j["thold"] = 1.0;
  j["camera"] = {{"focal_mm", 5.0},
                 {"pixel_size_u_mm", 0.0053},
                 {"pixel_size_v_mm", 0.0053},
                 {"principal_u_px", 800.0},
                 {"principal_v_px", 600.0},
                 {"image_width_px", 1600.0},
                 {"image_height_px", 1200.0},
                 {"aperture_mm", 5.0},
                 {"focus_distance_mm", 1200.0},
                 {"confusion_px", 5.0}};
  j["iga"] = {{"population_size", 6},
              {"recombination_min", 2},
              {"recombination_max", 4},
              {"mutation_probability", 0.2},
              {"iterations", 8}};
  j["out_dir"] = (scratch_dir() / out_name).string();
  return j;
}

RunConfig load(const json& j, const std::string& name) {
  return load_config(write_text(name, j.dump(2)));
}

std::string one_pose_file(const std::string& name, double x, double y,
                          double z) {
  json pose = {{"x", x},     {"y", y},        {"z", z},
               {"alpha", 0}, {"beta", kPi / 2}, {"gamma", 0}};
  json root;
  root["poses"] = json::array({pose});
  return write_text(name, root.dump(2));
}

}  // namespace

TEST_SUITE("commands") {

TEST_CASE("color ramp endpoints and midpoints") {
  const FaceColor unseen = strength_color(0.0, 1.0);
  CHECK(unseen.r == 210);
  CHECK(unseen.g == 235);
  CHECK(unseen.b == 210);

  const FaceColor weak = strength_color(0.5, 1.0);
  CHECK(weak.r == 158);
  CHECK(weak.g == 211);
  CHECK(weak.b == 158);

  const FaceColor at_threshold = strength_color(1.0, 1.0);
  CHECK(at_threshold.r == 255);
  CHECK(at_threshold.g == 208);
  CHECK(at_threshold.b == 100);

  const FaceColor saturated = strength_color(2.5, 1.0);
  CHECK(saturated.r == 255);
  CHECK(saturated.g == 160);
  CHECK(saturated.b == 0);

  // Degenerate threshold: anything positive is already saturated.
  const FaceColor zero_thold = strength_color(0.0, 0.0);
  CHECK(zero_thold.r == 255);
  CHECK(zero_thold.g == 255);
  CHECK(zero_thold.b == 200);
  CHECK(strength_color(0.1, 0.0).g == 160);
}

TEST_CASE("pose files round-trip and validate") {
  const std::string path = one_pose_file("pose_rt.json", 0.125, -0.25, 0.75);
  const std::vector<Pose6> poses = read_poses(path);
  REQUIRE(poses.size() == 1);
  CHECK(poses[0].position == Vec3(0.125, -0.25, 0.75));
  CHECK(poses[0].beta == kPi / 2);

  CHECK_THROWS_AS(read_poses(write_text("bad1.json", "{\"poses\": 3}")),
                  ConfigError);
  CHECK_THROWS_AS(
      read_poses(write_text("bad2.json",
                            "{\"poses\": [{\"x\":0,\"y\":0,\"z\":1}]}")),
      ConfigError);
  json root;
  root["poses"] = json::array({json{{"x", 0},
                                    {"y", 0},
                                    {"z", 1},
                                    {"alpha", 0},
                                    {"beta", 3.0},
                                    {"gamma", 0}}});
  CHECK_THROWS_WITH_AS(read_poses(write_text("bad3.json", root.dump())),
                       doctest::Contains("poses[0]"), ConfigError);
  CHECK_THROWS_AS(read_poses((scratch_dir() / "absent.json").string()),
                  ConfigError);
}

TEST_CASE("evaluate writes a report matching the library") {
  const RunConfig config = load(base_config("out_eval"), "eval.json");
  const std::string poses = one_pose_file("eval_pose.json", 0.0, 0.0, 0.7);
  std::ostringstream log;
  REQUIRE(cmd_evaluate(config, poses, log) == kExitOk);

  const fs::path dir(config.out_dir);
  const json rep = json::parse(slurp(dir / "report.json"));
  CHECK(rep.at("piece_count") == 8);
  CHECK(rep.at("recognized_pieces") == 8);
  CHECK(rep.at("recognized_ratio") == 1.0);
  REQUIRE(rep.at("pieces").size() == 8);
  CHECK(rep.at("pieces")[0].at("principal") == 0);  // camera list index

  // Byte-for-byte agreement with a direct library call.
  const LoadedScene loaded = load_scene(config);
  const std::vector<Camera> cameras = {make_camera(
      config.intrinsics, read_poses(poses)[0], config.confusion_px, 1)};
  const CoverageReport direct =
      report(cameras, loaded.scene, config.thold, config.method);
  CHECK(rep.at("objective_value").get<double>() == direct.objective_value);
  CHECK(rep.at("mean_strength_all").get<double>() == direct.mean_strength_all);
  CHECK(rep.at("pieces")[3].at("fused").get<double>() ==
        direct.pieces[3].fused);

  const ColoredMesh mesh = read_ply((dir / "coverage.ply").string());
  REQUIRE(mesh.faces.size() == 8);
  for (const FaceColor& c : mesh.colors) {
    CHECK(c.r == 255);  // every piece recognized: yellow-to-orange band
  }
  CHECK(log.str().find("recognized: 8/8") != std::string::npos);
}

TEST_CASE("evaluate with no cameras paints everything uncovered") {
  json j = base_config("out_empty");
  const RunConfig config = load(j, "eval_empty.json");
  const std::string poses = write_text("no_poses.json", "{\"poses\": []}\n");
  std::ostringstream log;
  REQUIRE(cmd_evaluate(config, poses, log) == kExitOk);
  const json rep = json::parse(slurp(fs::path(config.out_dir) / "report.json"));
  CHECK(rep.at("recognized_ratio") == 0.0);
  CHECK(rep.at("recognized_pieces") == 0);
  const ColoredMesh mesh =
      read_ply((fs::path(config.out_dir) / "coverage.ply").string());
  for (const FaceColor& c : mesh.colors) {
    CHECK(c.r == 210);
    CHECK(c.g == 235);
    CHECK(c.b == 210);
  }
}

TEST_CASE("evaluate rejects a pose count that contradicts the config") {
  json j = base_config("out_mismatch");
  j["dof"] = json::array({down_dof_entry(), down_dof_entry()});
  const RunConfig config = load(j, "eval_mismatch.json");
  const std::string poses = one_pose_file("one_pose.json", 0.0, 0.0, 0.7);
  std::ostringstream log;
  CHECK(cmd_evaluate(config, poses, log) == kExitConfigError);
  CHECK(log.str().find("1 poses") != std::string::npos);

  CHECK(cmd_evaluate(config, write_text("gone.json", ""), log) ==
        kExitConfigError);
}

TEST_CASE("optimize produces deterministic artifacts and a monotone trace") {
  json j = base_config("out_opt_a");
  j["dof"] = json::array({down_dof_entry(), down_dof_entry()});
  const RunConfig config_a = load(j, "opt_a.json");
  std::ostringstream log_a;
  REQUIRE(cmd_optimize(config_a, log_a) == kExitOk);

  const fs::path dir_a(config_a.out_dir);
  const std::string trace = slurp(dir_a / "trace.csv");
  CHECK(count_lines(trace) == 10);  // header + rows 0..8
  CHECK(trace.rfind("iteration,best_fitness,recognized_ratio\n", 0) == 0);

  const json poses = json::parse(slurp(dir_a / "poses.json"));
  REQUIRE(poses.at("poses").size() == 2);
  const double z0 = poses.at("poses")[0].at("z").get<double>();
  CHECK(z0 >= 0.6);
  CHECK(z0 <= 0.9);

  // First and last trace rows: the running best never worsens.
  std::istringstream rows(trace);
  std::string line;
  std::getline(rows, line);
  double first_fit = -1.0, last_fit = -1.0;
  while (std::getline(rows, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double fit = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    if (first_fit < 0) first_fit = fit;
    last_fit = fit;
  }
  CHECK(last_fit >= first_fit);

  j["out_dir"] = (scratch_dir() / "out_opt_b").string();
  const RunConfig config_b = load(j, "opt_b.json");
  std::ostringstream log_b;
  REQUIRE(cmd_optimize(config_b, log_b) == kExitOk);
  const fs::path dir_b(config_b.out_dir);
  CHECK(slurp(dir_b / "trace.csv") == trace);
  CHECK(slurp(dir_b / "poses.json") == slurp(dir_a / "poses.json"));
  CHECK(slurp(dir_b / "report.json") == slurp(dir_a / "report.json"));
  CHECK(slurp(dir_b / "deployment.ply") == slurp(dir_a / "deployment.ply"));
}

TEST_CASE("optimize with zero iterations leaves a single trace row") {
  json j = base_config("out_probe");
  j["dof"] = json::array({down_dof_entry()});
  j["iga"] = {{"population_size", 5},
              {"recombination_min", 1},
              {"recombination_max", 2},
              {"iterations", 0}};
  const RunConfig config = load(j, "probe.json");
  std::ostringstream log;
  REQUIRE(cmd_optimize(config, log) == kExitOk);
  const std::string trace = slurp(fs::path(config.out_dir) / "trace.csv");
  CHECK(count_lines(trace) == 2);
  CHECK(trace.find("\n0,") != std::string::npos);
}

TEST_CASE("optimize reports infeasible search volumes") {
  json j = base_config("out_walled");
  j["dof"] = json::array({down_dof_entry()});
  j["iga"]["recombination_max"] = 3;
  j["forbidden_regions"] = json::array(
      {json{{"type", "aabb"},
            {"min", json::array({-1.0, -1.0, 0.0})},
            {"max", json::array({1.0, 1.0, 1.0})}}});
  const RunConfig config = load(j, "walled.json");
  std::ostringstream log;
  CHECK(cmd_optimize(config, log) == kExitInfeasible);
  CHECK(log.str().find("infeasible") != std::string::npos);
  CHECK_FALSE(fs::exists(fs::path(config.out_dir) / "poses.json"));

  json no_dof = base_config("out_nodof");
  const RunConfig bare = load(no_dof, "nodof.json");
  std::ostringstream log2;
  CHECK(cmd_optimize(bare, log2) == kExitConfigError);
}

TEST_CASE("heuristic writes a non-decreasing curve") {
  json j = base_config("out_heur");
  j["dof"] = json::array({down_dof_entry()});
  j["iga"]["recombination_max"] = 3;
  const RunConfig config = load(j, "heur.json");
  std::ostringstream log;
  REQUIRE(cmd_heuristic(config, 2, log) == kExitOk);

  const fs::path dir(config.out_dir);
  const std::string curve = slurp(dir / "curve.csv");
  CHECK(count_lines(curve) == 3);
  std::istringstream rows(curve);
  std::string line;
  std::getline(rows, line);
  CHECK(line == "cameras,recognized_ratio");
  double prev = -1.0;
  int count = 0;
  while (std::getline(rows, line)) {
    ++count;
    const auto comma = line.find(',');
    CHECK(std::stoi(line.substr(0, comma)) == count);
    const double ratio = std::stod(line.substr(comma + 1));
    CHECK(ratio >= prev);
    prev = ratio;
  }
  CHECK(prev > 0.0);
  const json poses = json::parse(slurp(dir / "poses.json"));
  CHECK(poses.at("poses").size() == 2);

  // Same seed, same curve.
  j["out_dir"] = (scratch_dir() / "out_heur_b").string();
  const RunConfig again = load(j, "heur_b.json");
  std::ostringstream log_b;
  REQUIRE(cmd_heuristic(again, 2, log_b) == kExitOk);
  CHECK(slurp(fs::path(again.out_dir) / "curve.csv") == curve);
}

TEST_CASE("heuristic rejects bad camera-count requests") {
  json j = base_config("out_heur_bad");
  j["dof"] = json::array({down_dof_entry(), down_dof_entry()});
  const RunConfig two = load(j, "heur_two.json");
  std::ostringstream log;
  CHECK(cmd_heuristic(two, 2, log) == kExitConfigError);
  CHECK(log.str().find("one camera") != std::string::npos);

  json single = base_config("out_heur_bad2");
  single["dof"] = json::array({down_dof_entry()});
  single["iga"]["recombination_max"] = 3;
  const RunConfig one = load(single, "heur_one.json");
  CHECK(cmd_heuristic(one, 0, log) == kExitConfigError);
}

}  // TEST_SUITE
