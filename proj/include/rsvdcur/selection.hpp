#pragma once

#include "rsvdcur/types.hpp"

namespace rsvdcur {

// Greedy interpolation-point selection on a basis matrix (m x k, k <= m).
// The first index is the argmax of |column 0|; step j solves the j x j
// interpolation system at the chosen rows, forms the residual of column j,
// and takes the argmax of its absolute value. Ties go to the lowest index.
// With row_limit >= 0, candidates are restricted to rows < row_limit.
// A singular interpolation system or an all-zero residual raises
// SelectionError carrying the failing step.
IndexList deim(const Eigen::Ref<const Matrix>& basis, Index row_limit = -1);

// Pivot-based variant: the first k column pivots of a column-pivoted QR of
// basis^T. Same output length and distinctness guarantees as deim.
IndexList qdeim(const Eigen::Ref<const Matrix>& basis);

enum class Selector { kDeim, kQdeim };

IndexList select_indices(const Eigen::Ref<const Matrix>& basis,
                         Selector selector);

}  // namespace rsvdcur
