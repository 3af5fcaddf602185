#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mono3 {

enum class Errc {
  non_invertible,
  dependent_basis,
  not_surjective,
  dimension_mismatch,
  syntax_error,
  pole_error,
  branch_error,
  point_too_close_to_contour,
  invalid_directions,
  no_convergence,
  invalid_argument,
};

constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::non_invertible: return "NonInvertible";
    case Errc::dependent_basis: return "DependentBasis";
    case Errc::not_surjective: return "NotSurjective";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::pole_error: return "PoleError";
    case Errc::branch_error: return "BranchError";
    case Errc::point_too_close_to_contour: return "PointTooCloseToContour";
    case Errc::invalid_directions: return "InvalidDirections";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. what() starts with the error name,
/// e.g. "NonInvertible: scalar part below floor".
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mono3
