#include "entropia/report.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>

#include "entropia/error.hpp"

namespace entropia {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::OriginNotInterior: return "OriginNotInterior";
    case ErrorKind::DegenerateBody: return "DegenerateBody";
    case ErrorKind::UnsupportedDim: return "UnsupportedDim";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonPositiveVolume: return "NonPositiveVolume";
    case ErrorKind::GenusTooSmall: return "GenusTooSmall";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::QuadratureDisagreement: return "QuadratureDisagreement";
    case ErrorKind::SigmaBelowOne: return "SigmaBelowOne";
    case ErrorKind::TargetBelowRange: return "TargetBelowRange";
    case ErrorKind::InfeasibleParameters: return "InfeasibleParameters";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::NoReturn: return "NoReturn";
    case ErrorKind::FitPoor: return "FitPoor";
    case ErrorKind::JacobianOverflow: return "JacobianOverflow";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  // Shortest representation that parses back to the same double.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_inputs(const std::vector<std::pair<std::string, std::string>>& inputs) {
  std::string out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i) out += ';';
    out += inputs[i].first + '=' + inputs[i].second;
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) { return fmt::format("{:016x}", x); }

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw Error(ErrorKind::InvalidInput, "row width differs from header");
  rows_.push_back(std::move(row));
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void append_line(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
}

}  // namespace

std::string Table::to_csv() const {
  std::string out;
  append_line(out, header_);
  for (const auto& r : rows_) append_line(out, r);
  return out;
}

nlohmann::ordered_json Table::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows_) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < header_.size(); ++i) obj[header_[i]] = r[i];
    arr.push_back(std::move(obj));
  }
  return arr;
}

Table bound_table(const std::vector<BoundReport>& reports, const std::string& config_hash) {
  Table t({"name", "value", "inputs", "formula_id", "tolerance", "config_hash"});
  for (const auto& r : reports)
    t.add_row({r.name, format_number(r.value), format_inputs(r.inputs), r.formula_id, format_number(r.tolerance),
               config_hash});
  return t;
}

}  // namespace entropia
