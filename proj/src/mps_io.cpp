#include "arcipm/mps_io.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

namespace arcipm {

MpsParseError::MpsParseError(std::size_t line, const std::string& message)
    : std::runtime_error(fmt::format("line {}: {}", line, message)),
      line_(line),
      message_(message) {}

namespace {

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.emplace_back(line.substr(start, i - start));
  }
  return fields;
}

std::optional<MpsSectionKind> section_kind(const std::string& word) {
  if (word == "ROWS") return MpsSectionKind::kRows;
  if (word == "COLUMNS") return MpsSectionKind::kColumns;
  if (word == "RHS") return MpsSectionKind::kRhs;
  if (word == "BOUNDS") return MpsSectionKind::kBounds;
  return std::nullopt;
}

double parse_number(const std::string& token, std::size_t line) {
  double value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw MpsParseError(line, fmt::format("'{}' is not a number", token));
  }
  return value;
}

class LpBuilder {
 public:
  explicit LpBuilder(std::string name) { lp_.name = std::move(name); }

  void add_row(const MpsEntry& e) {
    if (e.fields.size() != 2) throw MpsParseError(e.line, "ROWS entry needs a type and a name");
    const std::string& type = e.fields[0];
    const std::string& name = e.fields[1];
    if (row_index_.count(name) || name == objective_name_) {
      throw MpsParseError(e.line, fmt::format("duplicate row '{}'", name));
    }
    if (type == "N") {
      if (!objective_name_.empty()) {
        throw MpsParseError(e.line, fmt::format("second objective row '{}' (only one N row allowed)",
                                                name));
      }
      objective_name_ = name;
      return;
    }
    LpRow row;
    row.name = name;
    if (type == "L") {
      row.type = RowType::kLessEqual;
    } else if (type == "G") {
      row.type = RowType::kGreaterEqual;
    } else if (type == "E") {
      row.type = RowType::kEqual;
    } else {
      throw MpsParseError(e.line, fmt::format("unknown row type '{}'", type));
    }
    row_index_[name] = lp_.rows.size();
    lp_.rows.push_back(std::move(row));
  }

  void finish_rows(std::size_t line) {
    if (objective_name_.empty()) throw MpsParseError(line, "no objective (N) row");
  }

  void add_column_entry(const MpsEntry& e) {
    if (e.fields.size() >= 2 && e.fields[1] == "'MARKER'") {
      throw MpsParseError(e.line, "integer markers are not supported");
    }
    if (e.fields.size() != 3 && e.fields.size() != 5) {
      throw MpsParseError(e.line, "COLUMNS entry needs a column and one or two (row, value) pairs");
    }
    const std::string& col = e.fields[0];
    auto [it, inserted] = column_index_.try_emplace(col, lp_.columns.size());
    if (inserted) lp_.columns.push_back(LpColumn{col});
    const std::size_t j = it->second;
    for (std::size_t f = 1; f + 1 < e.fields.size(); f += 2) {
      const std::string& row = e.fields[f];
      const double value = parse_number(e.fields[f + 1], e.line);
      if (!seen_.insert({row, col}).second) {
        throw MpsParseError(e.line,
                            fmt::format("duplicate coefficient for row '{}' column '{}'", row, col));
      }
      if (row == objective_name_) {
        lp_.columns[j].cost = value;
        continue;
      }
      const auto r = row_index_.find(row);
      if (r == row_index_.end()) {
        throw MpsParseError(e.line, fmt::format("unknown row '{}'", row));
      }
      if (value != 0) lp_.coefficients.push_back({r->second, j, value});
    }
  }

  void finish_columns(std::size_t line) {
    if (lp_.columns.empty()) throw MpsParseError(line, "no columns");
  }

  void add_rhs_entry(const MpsEntry& e) {
    const std::size_t n = e.fields.size();
    if (n < 2 || n > 5) throw MpsParseError(e.line, "malformed RHS entry");
    const std::size_t first = n % 2 == 1 ? 1 : 0;  // optional set name
    for (std::size_t f = first; f + 1 < n; f += 2) {
      const std::string& row = e.fields[f];
      const double value = parse_number(e.fields[f + 1], e.line);
      if (!rhs_seen_.insert(row).second) {
        throw MpsParseError(e.line, fmt::format("duplicate RHS entry for row '{}'", row));
      }
      if (row == objective_name_) {
        lp_.objective_constant = -value;
        continue;
      }
      const auto r = row_index_.find(row);
      if (r == row_index_.end()) throw MpsParseError(e.line, fmt::format("unknown row '{}'", row));
      lp_.rows[r->second].rhs = value;
    }
  }

  void add_bound(const MpsEntry& e) {
    if (e.fields.empty()) throw MpsParseError(e.line, "empty BOUNDS entry");
    const std::string& type = e.fields[0];
    const bool needs_value = type == "LO" || type == "UP" || type == "FX";
    const bool no_value = type == "FR" || type == "MI";
    if (!needs_value && !no_value) {
      throw MpsParseError(e.line, fmt::format("unsupported bound type '{}'", type));
    }
    // type [set] column [value]
    const std::size_t base = needs_value ? 3 : 2;
    if (e.fields.size() != base && e.fields.size() != base + 1) {
      throw MpsParseError(e.line, fmt::format("malformed {} bound", type));
    }
    const std::size_t col_field = e.fields.size() == base + 1 ? 2 : 1;
    const std::string& col = e.fields[col_field];
    const auto it = column_index_.find(col);
    if (it == column_index_.end()) {
      throw MpsParseError(e.line, fmt::format("bound on unknown column '{}'", col));
    }
    LpColumn& c = lp_.columns[it->second];
    if (type == "FR") {
      c.lower = -kInfinity;
      c.upper = kInfinity;
    } else if (type == "MI") {
      c.lower = -kInfinity;
    } else {
      const double value = parse_number(e.fields.back(), e.line);
      if (type == "LO") c.lower = value;
      if (type == "UP") c.upper = value;
      if (type == "FX") c.lower = c.upper = value;
    }
    if (c.lower > c.upper) {
      throw MpsParseError(e.line, fmt::format("column '{}' has lower bound {} above upper bound {}",
                                              col, c.lower, c.upper));
    }
  }

  GeneralLP take() { return std::move(lp_); }

 private:
  GeneralLP lp_;
  std::string objective_name_;
  std::unordered_map<std::string, std::size_t> row_index_;
  std::unordered_map<std::string, std::size_t> column_index_;
  std::set<std::pair<std::string, std::string>> seen_;
  std::set<std::string> rhs_seen_;
};

}  // namespace

MpsDocument read_mps_document(std::string_view text) {
  MpsDocument doc;
  std::size_t line_no = 0;
  bool ended = false;
  bool named = false;
  std::set<MpsSectionKind> seen;
  std::size_t pos = 0;
  while (pos < text.size() && !ended) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto fields = split_fields(line);
    if (fields.empty() || line.front() == '*') continue;

    const bool header = !std::isspace(static_cast<unsigned char>(line.front()));
    if (!header) {
      if (doc.sections.empty()) throw MpsParseError(line_no, "data line outside any section");
      doc.sections.back().entries.push_back({line_no, fields});
      continue;
    }
    const std::string& word = fields[0];
    if (word == "NAME") {
      if (named || !doc.sections.empty()) throw MpsParseError(line_no, "misplaced NAME");
      named = true;
      doc.name = fields.size() > 1 ? fields[1] : "";
    } else if (word == "ENDATA") {
      ended = true;
    } else if (word == "RANGES") {
      throw MpsParseError(line_no, "RANGES section is not supported");
    } else if (auto kind = section_kind(word)) {
      if (!seen.insert(*kind).second) {
        throw MpsParseError(line_no, fmt::format("section {} appears twice", word));
      }
      if (doc.sections.empty() && *kind != MpsSectionKind::kRows) {
        throw MpsParseError(line_no, "ROWS must be the first section");
      }
      if (!doc.sections.empty() && doc.sections.back().kind > *kind) {
        throw MpsParseError(line_no, fmt::format("section {} out of order", word));
      }
      doc.sections.push_back({*kind, line_no, {}});
    } else {
      throw MpsParseError(line_no, fmt::format("unknown section '{}'", word));
    }
  }
  if (!ended) throw MpsParseError(line_no, "missing ENDATA");
  if (!seen.count(MpsSectionKind::kColumns)) {
    throw MpsParseError(line_no, seen.count(MpsSectionKind::kRows) ? "no columns"
                                                                    : "missing ROWS section");
  }
  return doc;
}

GeneralLP parse_mps(std::string_view text) {
  const MpsDocument doc = read_mps_document(text);
  LpBuilder builder(doc.name);
  for (const auto& section : doc.sections) {
    const std::size_t last = section.entries.empty() ? section.line : section.entries.back().line;
    switch (section.kind) {
      case MpsSectionKind::kRows:
        for (const auto& e : section.entries) builder.add_row(e);
        builder.finish_rows(last);
        break;
      case MpsSectionKind::kColumns:
        for (const auto& e : section.entries) builder.add_column_entry(e);
        builder.finish_columns(section.line);
        break;
      case MpsSectionKind::kRhs:
        for (const auto& e : section.entries) builder.add_rhs_entry(e);
        break;
      case MpsSectionKind::kBounds:
        for (const auto& e : section.entries) builder.add_bound(e);
        break;
    }
  }
  return builder.take();
}

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

std::string write_mps(const StandardLP& p, const std::string& name,
                      const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += fmt::format("* {}\n", c);
  out += fmt::format("NAME {}\nROWS\n N COST\n", name);
  for (Index i = 0; i < p.rows(); ++i) out += fmt::format(" E {}\n", p.row_names()[i]);
  out += "COLUMNS\n";
  for (Index j = 0; j < p.cols(); ++j) {
    const auto& col = p.column_names()[j];
    if (p.c()(j) != 0 || (p.A().col(j).array() == 0).all()) {
      out += fmt::format("    {} COST {}\n", col, format_real(static_cast<double>(p.c()(j))));
    }
    for (Index i = 0; i < p.rows(); ++i) {
      if (p.A()(i, j) == 0) continue;
      out += fmt::format("    {} {} {}\n", col, p.row_names()[i],
                         format_real(static_cast<double>(p.A()(i, j))));
    }
  }
  out += "RHS\n";
  for (Index i = 0; i < p.rows(); ++i) {
    if (p.b()(i) == 0) continue;
    out += fmt::format("    RHS {} {}\n", p.row_names()[i],
                       format_real(static_cast<double>(p.b()(i))));
  }
  out += "ENDATA\n";
  return out;
}

}  // namespace arcipm
