#include "arcipm/lp_model.hpp"

#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

namespace arcipm {

void GeneralLP::validate() const {
  std::unordered_set<std::string> seen;
  for (const auto& col : columns) {
    if (!seen.insert(col.name).second) {
      throw ModelError(fmt::format("duplicate column name '{}'", col.name));
    }
    if (col.lower > col.upper) {
      throw ModelError(fmt::format("column '{}' has lower bound {} above upper bound {}",
                                   col.name, col.lower, col.upper));
    }
  }
  seen.clear();
  for (const auto& row : rows) {
    if (!seen.insert(row.name).second) {
      throw ModelError(fmt::format("duplicate row name '{}'", row.name));
    }
  }
  for (const auto& a : coefficients) {
    if (a.row >= rows.size() || a.column >= columns.size()) {
      throw ModelError(fmt::format("coefficient references missing row {} or column {}",
                                   a.row, a.column));
    }
  }
}

double GeneralLP::objective(const std::vector<double>& x) const {
  double value = objective_constant;
  for (std::size_t j = 0; j < columns.size(); ++j) value += columns[j].cost * x.at(j);
  return value;
}

StandardLP::StandardLP(Matrix a, Vector b, Vector c, std::vector<std::string> row_names,
                       std::vector<std::string> column_names)
    : a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      row_names_(std::move(row_names)),
      column_names_(std::move(column_names)) {
  if (a_.rows() < 1) throw ModelError("standard form needs at least one row");
  if (a_.cols() < a_.rows()) {
    throw ModelError(fmt::format("standard form needs n >= m, got m={} n={}", a_.rows(),
                                 a_.cols()));
  }
  if (b_.size() != a_.rows() || c_.size() != a_.cols()) {
    throw ModelError(fmt::format("dimension mismatch: A is {}x{}, b has {}, c has {}",
                                 a_.rows(), a_.cols(), b_.size(), c_.size()));
  }
  for (Index i = 0; i < a_.rows(); ++i) {
    if ((a_.row(i).array() == 0).all()) {
      throw ModelError(fmt::format("row {} of A is identically zero", i));
    }
  }
  if (row_names_.empty()) {
    for (Index i = 0; i < a_.rows(); ++i) row_names_.push_back(fmt::format("R{}", i));
  }
  if (column_names_.empty()) {
    for (Index j = 0; j < a_.cols(); ++j) column_names_.push_back(fmt::format("C{}", j));
  }
  if (std::ssize(row_names_) != a_.rows() || std::ssize(column_names_) != a_.cols()) {
    throw ModelError("name list sizes do not match A");
  }
}

Iterate::Iterate(const StandardLP& p, Vector x, Vector y, Vector s)
    : x_(std::move(x)), y_(std::move(y)), s_(std::move(s)) {
  if (x_.size() != p.cols() || s_.size() != p.cols() || y_.size() != p.rows()) {
    throw ModelError("iterate dimensions do not match the problem");
  }
  mu_ = duality_measure(x_, s_);
  auto r = residuals(p, x_, y_, s_);
  rb_ = std::move(r.rb);
  rc_ = std::move(r.rc);
}

bool Iterate::strictly_positive() const {
  return (x_.array() > 0).all() && (s_.array() > 0).all();
}

bool Iterate::nonnegative() const {
  return (x_.array() >= 0).all() && (s_.array() >= 0).all();
}

Residuals residuals(const StandardLP& p, const Vector& x, const Vector& y, const Vector& s) {
  Residuals r;
  r.rb = p.A() * x - p.b();
  r.rc = p.A().transpose() * y + s - p.c();
  return r;
}

Real duality_measure(const Vector& x, const Vector& s) {
  return x.dot(s) / static_cast<Real>(x.size());
}

std::optional<Real> neighborhood_distance(const Vector& x, const Vector& s) {
  const Real mu = duality_measure(x, s);
  if (mu == 0) return std::nullopt;
  return (x.cwiseProduct(s).array() - mu).matrix().norm() / mu;
}

Real kkt_error(const StandardLP& p, const Iterate& z) {
  const Residuals r = residuals(p, z);
  return std::max({duality_measure(z), r.rb.norm(), r.rc.norm()});
}

}  // namespace arcipm
