#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arcipm/iteration_record.hpp"
#include "arcipm/lp_model.hpp"

namespace arcipm {

/// Malformed MPS text. `line()` is 1-based; 0 when the problem is the
/// document as a whole (for example a missing ENDATA is reported at the last
/// line).
class MpsParseError : public std::runtime_error {
 public:
  MpsParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

enum class MpsSectionKind { kRows, kColumns, kRhs, kBounds };

struct MpsEntry {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

struct MpsSection {
  MpsSectionKind kind = MpsSectionKind::kRows;
  std::size_t line = 0;
  std::vector<MpsEntry> entries;
};

/// Tokenized document: sections in file order, each data line split on
/// whitespace. Structural rules (known sections, order, ENDATA) are enforced
/// here; semantic rules in parse_mps.
struct MpsDocument {
  std::string name;
  std::vector<MpsSection> sections;
};

MpsDocument read_mps_document(std::string_view text);

/// Free-format MPS subset: NAME, ROWS (N/L/G/E), COLUMNS, RHS, BOUNDS
/// (LO/UP/FX/FR/MI), ENDATA. RANGES, integer markers and other bound types
/// are rejected. An RHS entry on the objective row sets the objective
/// constant to minus that value.
GeneralLP parse_mps(std::string_view text);

/// Writes a standard-form problem as E rows with default bounds; parse_mps
/// reads it back to the same data. `comments` become leading '*' lines.
std::string write_mps(const StandardLP& p, const std::string& name,
                      const std::vector<std::string>& comments = {});

enum class LogFormat { kCsv, kJson };

/// Columns iter,mu,norm_rb,norm_rc,sin_alpha,neigh_dist,status with floats at
/// 17 significant digits.
std::string write_iteration_log(const std::vector<IterationRecord>& records, LogFormat format);

/// Inverse of write_iteration_log; throws std::runtime_error on bad input.
std::vector<IterationRecord> read_iteration_log(std::string_view text, LogFormat format);

/// "{:.17g}".
std::string format_real(double value);

}  // namespace arcipm
