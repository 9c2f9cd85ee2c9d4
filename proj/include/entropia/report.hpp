#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace entropia {

/// One evaluated constant or bound, with the formula and tolerance used.
struct BoundReport {
  std::string name;
  double value = 0.0;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string formula_id;
  double tolerance = 0.0;
};

/// Round-trippable but compact decimal rendering used in every output row.
std::string format_number(double x);

/// "k=v;k=v" rendering of an input map.
std::string format_inputs(const std::vector<std::pair<std::string, std::string>>& inputs);

std::uint64_t fnv1a64(std::string_view text);
std::string hex64(std::uint64_t x);

/// Rectangular string table rendered as CSV (RFC 4180 quoting) or as a JSON
/// array of objects with the same field names.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string to_csv() const;
  nlohmann::ordered_json to_json() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// name,value,inputs,formula_id,tolerance,config_hash
Table bound_table(const std::vector<BoundReport>& reports, const std::string& config_hash);

}  // namespace entropia
