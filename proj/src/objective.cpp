#include "radcov/objective.hpp"

#include <algorithm>

#include "radcov/coverage.hpp"

namespace radcov {

namespace {

std::vector<int> rabm_principals(
    const std::vector<std::vector<CoverageDecomposition>>& decs,
    const Scene& scene, double thold, int camera_count) {
  std::vector<double> solo(camera_count, 0.0);
  for (std::size_t p = 0; p < decs.size(); ++p) {
    const double area = scene.object.pieces[p].area;
    for (int c = 0; c < camera_count; ++c) {
      if (recognized(decs[p][c].cs_norm, thold)) solo[c] += area;
    }
  }
  std::vector<int> principals;
  if (camera_count == 0) return principals;
  const double best = *std::max_element(solo.begin(), solo.end());
  for (int c = 0; c < camera_count; ++c) {
    if (solo[c] == best) principals.push_back(c);
  }
  return principals;
}

}  // namespace

std::vector<PieceScore> score_pieces(const std::vector<Camera>& cameras,
                                     const Scene& scene, double thold,
                                     FusionMethod method) {
  const int n = static_cast<int>(cameras.size());
  const std::size_t k = scene.object.pieces.size();

  std::vector<std::vector<CoverageDecomposition>> decs(
      k, std::vector<CoverageDecomposition>(n));
  for (std::size_t p = 0; p < k; ++p) {
    for (int c = 0; c < n; ++c) {
      decs[p][c] =
          radial_coverage_vector(cameras[c], scene.object.pieces[p], scene);
    }
  }

  std::vector<int> global_principals;
  if (method == FusionMethod::kRabm) {
    global_principals = rabm_principals(decs, scene, thold, n);
  }

  std::vector<PieceScore> scores;
  scores.reserve(k);
  for (std::size_t p = 0; p < k; ++p) {
    const DirectionalPoint& piece = scene.object.pieces[p];
    PieceScore score;
    score.piece_id = piece.id;
    score.area = piece.area;
    switch (method) {
      case FusionMethod::kFull: {
        score.fused = fused_strength(fused_matrix(decs[p]));
        const std::vector<int> best = strongest_cameras(decs[p]);
        score.principal = best.empty() ? -1 : best.front();
        break;
      }
      case FusionMethod::kCsbm: {
        const SimplifiedChoice choice =
            simplified_fused_strength(decs[p], strongest_cameras(decs[p]));
        score.fused = choice.value;
        score.principal = choice.principal;
        break;
      }
      case FusionMethod::kRabm: {
        const SimplifiedChoice choice =
            simplified_fused_strength(decs[p], global_principals);
        score.fused = choice.value;
        score.principal = choice.principal;
        break;
      }
    }
    score.resolution =
        score.principal >= 0 ? decs[p][score.principal].cv.norm() : 0.0;
    score.recognized = recognized(score.fused, thold);
    scores.push_back(score);
  }
  return scores;
}

double objective(const std::vector<PieceScore>& scores) {
  double sum = 0.0;
  for (const PieceScore& s : scores) {
    if (s.recognized) sum += s.area;
  }
  return sum;
}

CoverageReport report(const std::vector<Camera>& cameras, const Scene& scene,
                      double thold, FusionMethod method) {
  CoverageReport out;
  out.pieces = score_pieces(cameras, scene, thold, method);
  out.piece_count = static_cast<int>(out.pieces.size());
  out.total_area = scene.object.total_area;
  double strength_all = 0.0;
  double strength_reco = 0.0;
  for (const PieceScore& s : out.pieces) {
    strength_all += s.fused;
    if (s.recognized) {
      ++out.recognized_pieces;
      strength_reco += s.fused;
      out.objective_value += s.area;
    }
  }
  if (out.piece_count > 0) {
    out.mean_strength_all = strength_all / out.piece_count;
  }
  if (out.recognized_pieces > 0) {
    out.mean_strength_recognized = strength_reco / out.recognized_pieces;
  }
  if (out.total_area > 0.0) {
    out.recognized_ratio = out.objective_value / out.total_area;
  }
  return out;
}

}  // namespace radcov
