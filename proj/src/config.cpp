#include "radcov/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>

#include <json.hpp>

#include "radcov/mesh_io.hpp"

namespace radcov {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void fail(const std::string& where, const std::string& message) {
  throw ConfigError("config: " + where + ": " + message);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing key '") + key + "'");
  return *it;
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail(where, "unknown key '" + key + "'");
  }
}

double number_field(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where + "." + key, "not finite");
  return d;
}

double number_or(const json& obj, const char* key, const std::string& where,
                 double fallback) {
  if (!obj.contains(key)) return fallback;
  return number_field(obj, key, where);
}

int int_field(const json& obj, const char* key, const std::string& where,
              int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<int>();
}

Vec3 vec3_field(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_array() || v.size() != 3)
    fail(where + "." + key, "expected an array of 3 numbers");
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number()) fail(where + "." + key, "expected numbers");
    out[i] = v[i].get<double>();
  }
  return out;
}

CameraIntrinsics parse_intrinsics(const json& cam) {
  const std::string where = "camera";
  reject_unknown(cam, where,
                 {"focal_mm", "pixel_size_u_mm", "pixel_size_v_mm",
                  "principal_u_px", "principal_v_px", "image_width_px",
                  "image_height_px", "aperture_mm", "focus_distance_mm",
                  "confusion_px", "fov_override_rad"});
  CameraIntrinsics in;
  in.focal_mm = number_field(cam, "focal_mm", where);
  in.pixel_size_u_mm = number_field(cam, "pixel_size_u_mm", where);
  in.pixel_size_v_mm = number_field(cam, "pixel_size_v_mm", where);
  in.principal_u_px = number_field(cam, "principal_u_px", where);
  in.principal_v_px = number_field(cam, "principal_v_px", where);
  in.image_width_px = number_field(cam, "image_width_px", where);
  in.image_height_px = number_field(cam, "image_height_px", where);
  in.aperture_mm = number_field(cam, "aperture_mm", where);
  in.focus_distance_mm = number_field(cam, "focus_distance_mm", where);
  return in;
}

DofSpec parse_dof(const json& arr) {
  if (!arr.is_array()) fail("dof", "expected an array of cameras");
  DofSpec spec;
  for (std::size_t c = 0; c < arr.size(); ++c) {
    const json& cam = arr[c];
    const std::string where = "dof[" + std::to_string(c) + "]";
    if (!cam.is_array() || cam.size() != 6)
      fail(where, "expected 6 entries (x, y, z, alpha, beta, gamma)");
    std::array<DofEntry, 6> entries;
    for (int d = 0; d < 6; ++d) {
      const json& e = cam[d];
      const std::string ew = where + "[" + std::to_string(d) + "]";
      if (!e.is_object()) fail(ew, "expected an object");
      if (e.contains("fixed")) {
        reject_unknown(e, ew, {"fixed"});
        entries[d] = DofEntry{false, {}, number_field(e, "fixed", ew)};
      } else {
        reject_unknown(e, ew, {"min", "max"});
        DofEntry entry;
        entry.active = true;
        entry.bounds.lo = number_field(e, "min", ew);
        entry.bounds.hi = number_field(e, "max", ew);
        entries[d] = entry;
      }
    }
    spec.cameras.push_back(entries);
  }
  return spec;
}

std::vector<ForbiddenRegion> parse_regions(const json& arr) {
  if (!arr.is_array()) fail("forbidden_regions", "expected an array");
  std::vector<ForbiddenRegion> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& r = arr[i];
    const std::string where = "forbidden_regions[" + std::to_string(i) + "]";
    const std::string type =
        require(r, "type", where).is_string() ? r.at("type").get<std::string>()
                                              : "";
    if (type == "aabb") {
      reject_unknown(r, where, {"type", "min", "max"});
      AabbRegion box;
      box.lo = vec3_field(r, "min", where);
      box.hi = vec3_field(r, "max", where);
      for (int a = 0; a < 3; ++a) {
        if (box.lo[a] > box.hi[a]) fail(where, "min exceeds max");
      }
      out.emplace_back(box);
    } else if (type == "cylinder") {
      reject_unknown(r, where,
                     {"type", "axis_x", "axis_y", "radius", "z_min", "z_max"});
      CylinderRegion cyl;
      cyl.axis_x = number_field(r, "axis_x", where);
      cyl.axis_y = number_field(r, "axis_y", where);
      cyl.radius = number_field(r, "radius", where);
      cyl.z_min = number_field(r, "z_min", where);
      cyl.z_max = number_field(r, "z_max", where);
      if (cyl.radius < 0) fail(where, "negative radius");
      if (cyl.z_min > cyl.z_max) fail(where, "z_min exceeds z_max");
      out.emplace_back(cyl);
    } else {
      fail(where, "type must be 'aabb' or 'cylinder'");
    }
  }
  return out;
}

IgaParams parse_iga(const json& obj, std::uint64_t seed) {
  const std::string where = "iga";
  reject_unknown(obj, where,
                 {"population_size", "recombination_min", "recombination_max",
                  "mutation_probability", "iterations",
                  "keep_best_in_population"});
  IgaParams p;
  p.population_size = int_field(obj, "population_size", where, p.population_size);
  p.recombination_min =
      int_field(obj, "recombination_min", where, p.recombination_min);
  p.recombination_max =
      int_field(obj, "recombination_max", where, p.recombination_max);
  p.mutation_probability = number_or(obj, "mutation_probability", where,
                                     p.mutation_probability);
  p.iterations = int_field(obj, "iterations", where, p.iterations);
  if (obj.contains("keep_best_in_population")) {
    const json& v = obj.at("keep_best_in_population");
    if (!v.is_boolean()) fail(where + ".keep_best_in_population", "expected a bool");
    p.keep_best_in_population = v.get<bool>();
  }
  p.seed = seed;
  return p;
}

void check_fov_override(const json& cam, const CameraIntrinsics& intrinsics,
                        std::vector<std::string>& warnings) {
  if (!cam.contains("fov_override_rad")) return;
  const json& f = cam.at("fov_override_rad");
  const std::string where = "camera.fov_override_rad";
  reject_unknown(f, where, {"left", "right", "top", "bottom"});
  const FovAngles derived = derive_fov_angles(intrinsics);
  const struct {
    const char* key;
    double derived;
  } sides[] = {{"left", derived.left},
               {"right", derived.right},
               {"top", derived.top},
               {"bottom", derived.bottom}};
  for (const auto& side : sides) {
    if (!f.contains(side.key)) continue;
    const double given = number_field(f, side.key, where);
    if (std::abs(given - side.derived) > 1e-6) {
      warnings.push_back("fov override " + std::string(side.key) + " = " +
                         std::to_string(given) +
                         " disagrees with the intrinsics-derived " +
                         std::to_string(side.derived) +
                         "; the derived angle is used");
    }
  }
}

std::string resolve_against(const fs::path& base, const std::string& raw) {
  const fs::path p(raw);
  if (p.is_absolute()) return p.string();
  return (base / p).string();
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(root, "top level",
                 {"seed", "object", "obstacles", "sigma", "thold",
                  "fusion_method", "camera", "dof", "iga", "forbidden_regions",
                  "out_dir"});

  RunConfig config;

  const json& seed = require(root, "seed", "top level");
  if (!seed.is_number_integer() || seed.is_number_float() ||
      (seed.is_number_integer() && !seed.is_number_unsigned() &&
       seed.get<std::int64_t>() < 0)) {
    fail("seed", "expected a non-negative integer");
  }
  config.seed = seed.get<std::uint64_t>();

  const json& object = require(root, "object", "top level");
  if (!object.is_string()) fail("object", "expected a path string");
  const fs::path base = fs::path(path).parent_path();
  config.object_path = resolve_against(base, object.get<std::string>());
  if (!fs::exists(config.object_path))
    fail("object", "file not found: " + config.object_path);

  if (root.contains("obstacles")) {
    const json& obstacles = root.at("obstacles");
    if (!obstacles.is_array()) fail("obstacles", "expected an array of paths");
    for (const json& o : obstacles) {
      if (!o.is_string()) fail("obstacles", "expected path strings");
      const std::string resolved = resolve_against(base, o.get<std::string>());
      if (!fs::exists(resolved))
        fail("obstacles", "file not found: " + resolved);
      config.obstacle_paths.push_back(resolved);
    }
  }

  config.sigma = number_field(root, "sigma", "top level");
  if (config.sigma <= 0) fail("sigma", "must be positive");
  config.thold = number_field(root, "thold", "top level");
  if (config.thold < 0) fail("thold", "must be non-negative");

  if (root.contains("fusion_method")) {
    const json& m = root.at("fusion_method");
    const std::string name = m.is_string() ? m.get<std::string>() : "";
    if (name == "full") {
      config.method = FusionMethod::kFull;
    } else if (name == "csbm") {
      config.method = FusionMethod::kCsbm;
    } else if (name == "rabm") {
      config.method = FusionMethod::kRabm;
    } else {
      fail("fusion_method", "expected 'full', 'csbm' or 'rabm'");
    }
  }

  const json& cam = require(root, "camera", "top level");
  if (!cam.is_object()) fail("camera", "expected an object");
  config.intrinsics = parse_intrinsics(cam);
  try {
    validate_intrinsics(config.intrinsics);
  } catch (const std::invalid_argument& e) {
    fail("camera", e.what());
  }
  config.confusion_px = number_field(cam, "confusion_px", "camera");
  if (config.confusion_px <= 0) fail("camera.confusion_px", "must be positive");
  check_fov_override(cam, config.intrinsics, config.warnings);

  if (root.contains("forbidden_regions"))
    config.forbidden_regions = parse_regions(root.at("forbidden_regions"));

  if (root.contains("dof")) {
    config.dof = parse_dof(root.at("dof"));
    try {
      validate_dof_spec(config.dof);
    } catch (const std::invalid_argument& e) {
      fail("dof", e.what());
    }
  }

  config.iga = root.contains("iga") ? parse_iga(root.at("iga"), config.seed)
                                    : IgaParams{.seed = config.seed};
  try {
    // Without a dof block the fragment length has no chromosome to exceed;
    // the remaining field checks still apply.
    const int genes = config.dof.cameras.empty()
                          ? std::max(config.iga.recombination_max, 1)
                          : config.dof.gene_count();
    validate_iga_params(config.iga, genes);
  } catch (const std::invalid_argument& e) {
    fail("iga", e.what());
  }

  if (root.contains("out_dir")) {
    const json& o = root.at("out_dir");
    if (!o.is_string()) fail("out_dir", "expected a path string");
    config.out_dir = o.get<std::string>();
  }

  return config;
}

EvalConfig eval_config(const RunConfig& config) {
  EvalConfig eval;
  eval.intrinsics = config.intrinsics;
  eval.confusion_px = config.confusion_px;
  eval.thold = config.thold;
  eval.method = config.method;
  return eval;
}

LoadedScene load_scene(const std::string& object_path,
                       const std::vector<std::string>& obstacle_paths,
                       double sigma,
                       std::vector<ForbiddenRegion> forbidden_regions) {
  LoadedScene loaded;
  std::vector<Triangle> object = read_mesh_file(object_path);
  std::vector<Triangle> kept;
  kept.reserve(object.size());
  for (const Triangle& tri : object) {
    if (triangle_area(tri.a, tri.b, tri.c) <= 1e-12) {
      ++loaded.dropped_triangles;
    } else {
      kept.push_back(tri);
    }
  }
  if (kept.empty())
    throw ConfigError("config: object mesh " + object_path +
                      " has no usable triangles");

  std::vector<std::vector<Triangle>> obstacles;
  for (const std::string& path : obstacle_paths) {
    std::vector<Triangle> raw = read_mesh_file(path);
    std::vector<Triangle>& sound = obstacles.emplace_back();
    sound.reserve(raw.size());
    for (const Triangle& tri : raw) {
      if (triangle_area(tri.a, tri.b, tri.c) <= 1e-12) {
        ++loaded.dropped_triangles;
      } else {
        sound.push_back(tri);
      }
    }
  }

  loaded.scene = make_scene(refine_mesh(kept, sigma), std::move(obstacles),
                            std::move(forbidden_regions));
  loaded.piece_count = static_cast<int>(loaded.scene.object.pieces.size());
  return loaded;
}

LoadedScene load_scene(const RunConfig& config) {
  return load_scene(config.object_path, config.obstacle_paths, config.sigma,
                    config.forbidden_regions);
}

}  // namespace radcov
