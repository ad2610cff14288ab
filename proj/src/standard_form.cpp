#include <cmath>

#include <fmt/format.h>

#include "arcipm/lp_model.hpp"

namespace arcipm {

std::vector<double> VariableMapping::recover_primal(const Vector& x_standard) const {
  std::vector<double> x(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const auto& m = columns[j];
    const double v = static_cast<double>(x_standard(m.primary));
    switch (m.kind) {
      case ColumnMap::Kind::kShifted:
        x[j] = m.offset + v;
        break;
      case ColumnMap::Kind::kNegated:
        x[j] = m.offset - v;
        break;
      case ColumnMap::Kind::kSplit:
        x[j] = v - static_cast<double>(x_standard(m.secondary));
        break;
    }
  }
  return x;
}

double VariableMapping::recover_objective(double standard_objective) const {
  const double minimized = standard_objective + objective_offset;
  return sense == ObjectiveSense::kMaximize ? -minimized : minimized;
}

StandardFormResult to_standard_form(const GeneralLP& p) {
  p.validate();
  if (p.columns.empty()) throw ModelError("problem has no columns");

  const double sign = p.sense == ObjectiveSense::kMaximize ? -1.0 : 1.0;
  VariableMapping mapping;
  mapping.sense = p.sense;
  mapping.objective_offset = sign * p.objective_constant;

  // Expand original columns.
  std::vector<std::string> col_names;
  std::vector<double> costs;
  struct UpperRow {
    Index column;
    double rhs;
    std::string name;
  };
  std::vector<UpperRow> upper_rows;
  for (const auto& col : p.columns) {
    ColumnMap m;
    const double cost = sign * col.cost;
    m.primary = std::ssize(costs);
    if (std::isfinite(col.lower)) {
      m.kind = ColumnMap::Kind::kShifted;
      m.offset = col.lower;
      mapping.objective_offset += cost * col.lower;
      costs.push_back(cost);
      col_names.push_back(col.name);
      if (std::isfinite(col.upper)) {
        upper_rows.push_back({m.primary, col.upper - col.lower, col.name + "_UB"});
      }
    } else if (std::isfinite(col.upper)) {
      m.kind = ColumnMap::Kind::kNegated;
      m.offset = col.upper;
      mapping.objective_offset += cost * col.upper;
      costs.push_back(-cost);
      col_names.push_back(col.name + "_NEG");
    } else {
      m.kind = ColumnMap::Kind::kSplit;
      m.secondary = m.primary + 1;
      costs.push_back(cost);
      costs.push_back(-cost);
      col_names.push_back(col.name + "_POS");
      col_names.push_back(col.name + "_NEG");
    }
    mapping.columns.push_back(m);
  }

  // Map original rows onto standard rows; free rows are dropped.
  std::vector<Index> row_index(p.rows.size(), -1);
  std::vector<std::string> row_names;
  Index num_slacks = 0;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const auto& row = p.rows[i];
    if (row.range) {
      throw ModelError(fmt::format("row '{}' is ranged; ranged rows are not supported", row.name));
    }
    if (row.type == RowType::kFree) continue;
    row_index[i] = std::ssize(row_names);
    row_names.push_back(row.name);
    if (row.type != RowType::kEqual) ++num_slacks;
  }
  for (const auto& u : upper_rows) row_names.push_back(u.name);

  const Index m = std::ssize(row_names);
  if (m == 0) throw ModelError("problem has no constraints after conversion");
  const Index n_struct = std::ssize(costs);
  const Index n = n_struct + num_slacks + std::ssize(upper_rows);

  Matrix a = Matrix::Zero(m, n);
  Vector b = Vector::Zero(m);
  Vector c = Vector::Zero(n);
  for (Index j = 0; j < n_struct; ++j) c(j) = costs[j];

  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    if (row_index[i] >= 0) b(row_index[i]) = p.rows[i].rhs;
  }
  for (const auto& coef : p.coefficients) {
    const Index i = row_index[coef.row];
    if (i < 0) continue;
    const auto& cm = mapping.columns[coef.column];
    switch (cm.kind) {
      case ColumnMap::Kind::kShifted:
        a(i, cm.primary) += coef.value;
        b(i) -= coef.value * cm.offset;
        break;
      case ColumnMap::Kind::kNegated:
        a(i, cm.primary) -= coef.value;
        b(i) -= coef.value * cm.offset;
        break;
      case ColumnMap::Kind::kSplit:
        a(i, cm.primary) += coef.value;
        a(i, cm.secondary) -= coef.value;
        break;
    }
  }

  Index next = n_struct;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const auto& row = p.rows[i];
    if (row_index[i] < 0 || row.type == RowType::kEqual) continue;
    a(row_index[i], next) = row.type == RowType::kLessEqual ? 1.0 : -1.0;
    col_names.push_back(row.name + "_SLACK");
    ++next;
  }
  Index upper_row = m - std::ssize(upper_rows);
  for (const auto& u : upper_rows) {
    a(upper_row, u.column) = 1.0;
    a(upper_row, next) = 1.0;
    b(upper_row) = u.rhs;
    col_names.push_back(u.name + "_SLACK");
    ++upper_row;
    ++next;
  }

  return {StandardLP(std::move(a), std::move(b), std::move(c), std::move(row_names),
                     std::move(col_names)),
          std::move(mapping)};
}

}  // namespace arcipm
