#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace rsvdcur {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using IndexList = std::vector<Index>;

// Relative threshold used for numerical rank decisions throughout the library.
// A quantity counts as negligible when it falls below this factor times the
// largest magnitude it is compared against.
inline constexpr double kRankTolerance = 1e-12;

// Base class for every failure the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch, empty input, or an argument outside its documented range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Numerical rank below what the operation requires; the message names the
// offending matrix.
class RankError : public Error {
 public:
  using Error::Error;
};

// Cholesky pivot failure; carries the index of the failing diagonal entry.
class NotPositiveDefiniteError : public Error {
 public:
  NotPositiveDefiniteError(const std::string& what, Index index)
      : Error(what), index_(index) {}
  Index index() const { return index_; }

 private:
  Index index_ = 0;
};

// Triangular solve with a negligible diagonal entry; carries its index.
class SingularTriangularError : public Error {
 public:
  SingularTriangularError(const std::string& what, Index index)
      : Error(what), index_(index) {}
  Index index() const { return index_; }

 private:
  Index index_ = 0;
};

// Breakdown of a greedy index-selection sweep; carries the failing step.
class SelectionError : public Error {
 public:
  SelectionError(const std::string& what, Index step)
      : Error(what), step_(step) {}
  Index step() const { return step_; }

 private:
  Index step_ = 0;
};

// Iterative or direct numerical kernel failed to produce a usable result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed file content; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, Index line = 0)
      : Error(what), line_(line) {}
  Index line() const { return line_; }

 private:
  Index line_ = 0;
};

// Filesystem-level failure (missing file, unwritable path).
class IoError : public Error {
 public:
  using Error::Error;
};

inline void require_nonempty(const Eigen::Ref<const Matrix>& a,
                             const char* name) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw DimensionError(std::string(name) + ": matrix must be non-empty");
  }
}

inline void require_finite(const Eigen::Ref<const Matrix>& a,
                           const char* name) {
  if (!a.allFinite()) {
    throw DimensionError(std::string(name) + ": entries must be finite");
  }
}

// True when every index lies in [0, bound) with no duplicates.
inline bool valid_index_list(const IndexList& indices, Index bound) {
  std::vector<bool> seen(static_cast<std::size_t>(bound), false);
  for (Index i : indices) {
    if (i < 0 || i >= bound || seen[static_cast<std::size_t>(i)]) return false;
    seen[static_cast<std::size_t>(i)] = true;
  }
  return true;
}

}  // namespace rsvdcur
