#pragma once

#include <vector>

#include "radcov/camera.hpp"
#include "radcov/fusion.hpp"
#include "radcov/scene.hpp"

namespace radcov {

/// How the per-piece pair strength is obtained.
///  kFull scans every ordered camera pair.
///  kCsbm fixes the principal to the strongest solo view of the piece.
///  kRabm fixes the principal to the camera with the largest solo recognized
///  area over the whole object; solo ties keep every tied candidate.
enum class FusionMethod { kFull, kCsbm, kRabm };

/// A piece counts as recognized once its strength reaches the threshold.
inline bool recognized(double strength, double thold) {
  return strength >= thold;
}

struct PieceScore {
  int piece_id{0};
  double area{0.0};
  double fused{0.0};
  /// Camera leading the piece's evaluation: the strongest solo view for
  /// kFull, the method's principal otherwise; -1 when nothing sees the piece.
  int principal{-1};
  /// Magnitude of the principal's coverage vector on this piece.
  double resolution{0.0};
  bool recognized{false};
};

std::vector<PieceScore> score_pieces(const std::vector<Camera>& cameras,
                                     const Scene& scene, double thold,
                                     FusionMethod method);

/// Recognized area: the sum of piece areas whose strength clears the
/// threshold.
double objective(const std::vector<PieceScore>& scores);

struct CoverageReport {
  double objective_value{0.0};
  double total_area{0.0};
  double recognized_ratio{0.0};
  int piece_count{0};
  int recognized_pieces{0};
  /// Fused strength averaged over every piece.
  double mean_strength_all{0.0};
  /// Fused strength averaged over recognized pieces only; zero when none.
  double mean_strength_recognized{0.0};
  std::vector<PieceScore> pieces;
};

CoverageReport report(const std::vector<Camera>& cameras, const Scene& scene,
                      double thold, FusionMethod method);

}  // namespace radcov
