#include <charconv>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "arcipm/mps_io.hpp"

namespace arcipm {

namespace {

constexpr const char* kCsvHeader = "iter,mu,norm_rb,norm_rc,sin_alpha,neigh_dist,status";

double parse_double(const std::string& token) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw std::runtime_error(fmt::format("iteration log: '{}' is not a number", token));
  }
  return value;
}

}  // namespace

std::string write_iteration_log(const std::vector<IterationRecord>& records, LogFormat format) {
  std::string out;
  if (format == LogFormat::kCsv) {
    out = fmt::format("{}\n", kCsvHeader);
    for (const auto& r : records) {
      out += fmt::format("{},{},{},{},{},{},{}\n", r.iter, format_real(r.mu),
                         format_real(r.norm_rb), format_real(r.norm_rc),
                         format_real(r.sin_alpha), format_real(r.neigh_dist), r.status);
    }
    return out;
  }
  out = "[";
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    out += fmt::format(
        "{}\n  {{\"iter\": {}, \"mu\": {}, \"norm_rb\": {}, \"norm_rc\": {}, \"sin_alpha\": {}, "
        "\"neigh_dist\": {}, \"status\": {}}}",
        k == 0 ? "" : ",", r.iter, format_real(r.mu), format_real(r.norm_rb),
        format_real(r.norm_rc), format_real(r.sin_alpha), format_real(r.neigh_dist),
        nlohmann::json(r.status).dump());
  }
  out += records.empty() ? "]\n" : "\n]\n";
  return out;
}

std::vector<IterationRecord> read_iteration_log(std::string_view text, LogFormat format) {
  std::vector<IterationRecord> records;
  if (format == LogFormat::kJson) {
    const auto doc = nlohmann::json::parse(text.begin(), text.end(), nullptr, false);
    if (doc.is_discarded() || !doc.is_array()) {
      throw std::runtime_error("iteration log: expected a JSON array");
    }
    try {
      for (const auto& obj : doc) {
        IterationRecord r;
        r.iter = obj.at("iter").get<int>();
        r.mu = obj.at("mu").get<double>();
        r.norm_rb = obj.at("norm_rb").get<double>();
        r.norm_rc = obj.at("norm_rc").get<double>();
        r.sin_alpha = obj.at("sin_alpha").get<double>();
        r.neigh_dist = obj.at("neigh_dist").get<double>();
        r.status = obj.at("status").get<std::string>();
        records.push_back(std::move(r));
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(fmt::format("iteration log: {}", e.what()));
    }
    return records;
  }

  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error(fmt::format("iteration log: expected header '{}'", kCsvHeader));
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    if (cells.size() != 7) {
      throw std::runtime_error(fmt::format("iteration log line {}: expected 7 fields", line_no));
    }
    IterationRecord r;
    r.iter = static_cast<int>(parse_double(cells[0]));
    r.mu = parse_double(cells[1]);
    r.norm_rb = parse_double(cells[2]);
    r.norm_rc = parse_double(cells[3]);
    r.sin_alpha = parse_double(cells[4]);
    r.neigh_dist = parse_double(cells[5]);
    r.status = cells[6];
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace arcipm
