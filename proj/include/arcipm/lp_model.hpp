#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arcipm/types.hpp"

namespace arcipm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Raised when problem data violates a structural invariant.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ObjectiveSense { kMinimize, kMaximize };

enum class RowType { kLessEqual, kGreaterEqual, kEqual, kFree };

struct LpColumn {
  std::string name;
  double cost = 0.0;
  double lower = 0.0;
  double upper = kInfinity;
};

struct LpRow {
  std::string name;
  RowType type = RowType::kEqual;
  double rhs = 0.0;
  std::optional<double> range;
};

struct LpCoefficient {
  std::size_t row = 0;
  std::size_t column = 0;
  double value = 0.0;
};

/// A linear program as a user writes it: objective sense, typed rows,
/// bounded columns, and a sparse coefficient list.
struct GeneralLP {
  std::string name;
  ObjectiveSense sense = ObjectiveSense::kMinimize;
  double objective_constant = 0.0;
  std::vector<LpColumn> columns;
  std::vector<LpRow> rows;
  std::vector<LpCoefficient> coefficients;

  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_columns() const { return columns.size(); }

  /// Throws ModelError on dangling coefficient indices, crossed bounds or
  /// duplicate names.
  void validate() const;

  /// Original-space objective value at `x` (constant included).
  double objective(const std::vector<double>& x) const;
};

/// min c'x  s.t.  A x = b,  x >= 0.
class StandardLP {
 public:
  StandardLP(Matrix a, Vector b, Vector c, std::vector<std::string> row_names = {},
             std::vector<std::string> column_names = {});

  const Matrix& A() const { return a_; }
  const Vector& b() const { return b_; }
  const Vector& c() const { return c_; }
  Index rows() const { return a_.rows(); }
  Index cols() const { return a_.cols(); }
  const std::vector<std::string>& row_names() const { return row_names_; }
  const std::vector<std::string>& column_names() const { return column_names_; }

 private:
  Matrix a_;
  Vector b_;
  Vector c_;
  std::vector<std::string> row_names_;
  std::vector<std::string> column_names_;
};

/// How one original column is expressed through standard-form columns.
struct ColumnMap {
  enum class Kind {
    kShifted,  // x = offset + x[primary]
    kNegated,  // x = offset - x[primary]
    kSplit,    // x = x[primary] - x[secondary]
  };
  Kind kind = Kind::kShifted;
  double offset = 0.0;
  Index primary = 0;
  Index secondary = -1;
};

struct VariableMapping {
  ObjectiveSense sense = ObjectiveSense::kMinimize;
  std::vector<ColumnMap> columns;
  /// Constant added to the standard-form objective (bound shifts and the
  /// document's objective constant, already in minimization sign).
  double objective_offset = 0.0;

  std::vector<double> recover_primal(const Vector& x_standard) const;
  /// Undo the sense flip and bound shifts.
  double recover_objective(double standard_objective) const;
};

struct StandardFormResult {
  StandardLP problem;
  VariableMapping mapping;
};

/// Rewrites `p` as an equality-constrained nonnegative problem. Column order:
/// expanded original columns, then one slack per inequality row, then one
/// slack per finite upper bound. Rows: the original non-free rows, then the
/// upper-bound rows.
StandardFormResult to_standard_form(const GeneralLP& p);

/// Primal-dual point with cached duality measure and residuals.
class Iterate {
 public:
  Iterate() = default;
  Iterate(const StandardLP& p, Vector x, Vector y, Vector s);

  const Vector& x() const { return x_; }
  const Vector& y() const { return y_; }
  const Vector& s() const { return s_; }
  Real mu() const { return mu_; }
  const Vector& rb() const { return rb_; }
  const Vector& rc() const { return rc_; }

  bool strictly_positive() const;
  bool nonnegative() const;

 private:
  Vector x_;
  Vector y_;
  Vector s_;
  Real mu_ = 0;
  Vector rb_;
  Vector rc_;
};

struct Residuals {
  Vector rb;
  Vector rc;
};

Residuals residuals(const StandardLP& p, const Vector& x, const Vector& y, const Vector& s);
inline Residuals residuals(const StandardLP& p, const Iterate& z) {
  return residuals(p, z.x(), z.y(), z.s());
}

Real duality_measure(const Vector& x, const Vector& s);
inline Real duality_measure(const Iterate& z) { return duality_measure(z.x(), z.s()); }

/// ||x o s - mu e|| / mu; nullopt when mu == 0 (converged, undefined).
std::optional<Real> neighborhood_distance(const Vector& x, const Vector& s);
inline std::optional<Real> neighborhood_distance(const Iterate& z) {
  return neighborhood_distance(z.x(), z.s());
}

/// max(mu, ||rb||, ||rc||). Positivity is checked by the caller.
Real kkt_error(const StandardLP& p, const Iterate& z);

struct GeneratedInstance {
  StandardLP problem;
  Vector x_star;
  Vector y_star;
  Vector s_star;
  std::uint64_t seed = 0;
};

/// Random LP with a planted strictly complementary optimum.
///
/// A has i.i.d. entries uniform on [-1, 1] and is resampled until its
/// smallest singular value exceeds 1e-6 times its largest (at most 100
/// draws). A support set B of size m is drawn uniformly; x*_B and s*_N are
/// uniform on [0.5, 1.5], y* is uniform on [-1, 1]. Then b = A x* and
/// c = A'y* + s*. Sampling goes through mt19937_64 so a seed reproduces the
/// instance bit for bit on a given standard library.
GeneratedInstance generate_random_lp(Index m, Index n, std::uint64_t seed);

}  // namespace arcipm
