#include "radcov/fusion.hpp"

#include <algorithm>
#include <cmath>

namespace radcov {

namespace {

bool no_surface_component(const CoverageDecomposition& dec) {
  return dec.cf.norm() <= 1e-12 * std::max(1.0, dec.cv.norm());
}

}  // namespace

double pairwise_fused_strength(const CoverageDecomposition& primary,
                               const CoverageDecomposition& secondary) {
  const double si = primary.cs_norm;
  const double sj = secondary.cs_norm;
  if (no_surface_component(primary) || no_surface_component(secondary)) {
    return std::max(si, sj);
  }
  const Vec3 ui = primary.cf.normalized();
  const Vec3 uj = secondary.cf.normalized();
  return (si * ui + project_onto_plane(ui, sj * uj)).norm();
}

Eigen::MatrixXd fused_matrix(const std::vector<CoverageDecomposition>& decs) {
  const int n = static_cast<int>(decs.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = pairwise_fused_strength(decs[i], decs[j]);
    }
  }
  return m;
}

double fused_strength(const Eigen::MatrixXd& matrix) {
  return matrix.size() == 0 ? 0.0 : matrix.maxCoeff();
}

std::vector<int> strongest_cameras(
    const std::vector<CoverageDecomposition>& decs) {
  double best = 0.0;
  for (const CoverageDecomposition& dec : decs) {
    best = std::max(best, dec.cs_norm);
  }
  std::vector<int> out;
  if (best <= 0.0) return out;
  for (int i = 0; i < static_cast<int>(decs.size()); ++i) {
    if (decs[i].cs_norm == best) out.push_back(i);
  }
  return out;
}

SimplifiedChoice best_pair_for(const std::vector<CoverageDecomposition>& decs,
                               int principal) {
  SimplifiedChoice choice;
  choice.principal = principal;
  for (int j = 0; j < static_cast<int>(decs.size()); ++j) {
    const double v = pairwise_fused_strength(decs[principal], decs[j]);
    if (v > choice.value || choice.auxiliary < 0) {
      choice.value = v;
      choice.auxiliary = j;
    }
  }
  return choice;
}

SimplifiedChoice simplified_fused_strength(
    const std::vector<CoverageDecomposition>& decs,
    const std::vector<int>& principals) {
  SimplifiedChoice best;
  for (const int p : principals) {
    const SimplifiedChoice c = best_pair_for(decs, p);
    if (best.principal < 0 || c.value > best.value) best = c;
  }
  return best;
}

}  // namespace radcov
