#pragma once

#include <vector>

#include "radcov/coverage.hpp"
#include "radcov/geometry.hpp"

namespace radcov {

/// Strength of a primary/secondary camera pair on one piece. The secondary
/// only adds the part of its in-surface direction orthogonal to the
/// primary's, so a co-located partner adds nothing and a quarter-turn
/// partner adds fully. When either view lacks an in-surface component the
/// pair degenerates to the stronger solo view. Not symmetric in its
/// arguments.
double pairwise_fused_strength(const CoverageDecomposition& primary,
                               const CoverageDecomposition& secondary);

/// All ordered pairs for one piece, diagonal included; entry (i, j) treats
/// i as primary. decs[i] is camera i's view of the piece.
Eigen::MatrixXd fused_matrix(const std::vector<CoverageDecomposition>& decs);

/// Largest entry of the pair matrix; zero for an empty matrix.
double fused_strength(const Eigen::MatrixXd& matrix);

/// Indices attaining the maximal solo strength, ascending. Empty when every
/// view is zero.
std::vector<int> strongest_cameras(
    const std::vector<CoverageDecomposition>& decs);

struct SimplifiedChoice {
  int principal{-1};
  int auxiliary{-1};
  double value{0.0};
};

/// Best partner for a fixed principal; the partner search covers every
/// camera including the principal itself. Lowest index wins ties.
SimplifiedChoice best_pair_for(const std::vector<CoverageDecomposition>& decs,
                               int principal);

/// Best pair over the given principal candidates. Ties on value resolve to
/// the lowest principal index, then the lowest auxiliary index. Empty
/// candidates yield the zero choice.
SimplifiedChoice simplified_fused_strength(
    const std::vector<CoverageDecomposition>& decs,
    const std::vector<int>& principals);

}  // namespace radcov
