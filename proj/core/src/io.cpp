#include "maxstable/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "maxstable/errors.hpp"

#ifndef MAXSTABLE_VERSION
#define MAXSTABLE_VERSION "0.0.0"
#endif

namespace maxstable {

namespace {

void set_precision(std::ostream& out) { out << std::setprecision(std::numeric_limits<double>::max_digits10); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    out.push_back(field);
  }
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DomainError("line " + std::to_string(line_no) + ": invalid number '" + s + "'");
}

int parse_int(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DomainError("line " + std::to_string(line_no) + ": invalid site index '" + s + "'");
}

}  // namespace

std::string_view version() { return MAXSTABLE_VERSION; }

void write_path_csv(std::ostream& out, const Path& path) {
  const bool field = path.grid.dimension() == 2;
  out << (field ? "site_index,site_index2,value\n" : "site_index,value\n");
  set_precision(out);
  for (std::size_t i = 0; i < path.values.size(); ++i) {
    const Site& s = path.grid.site(i);
    out << s.row << ',';
    if (field) out << s.col << ',';
    out << path.values[i] << '\n';
  }
}

Path read_path_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("path CSV is empty");
  const auto header = split(line);
  const bool field = header.size() == 3;
  if (header.size() < 2 || header.size() > 3 || header[0] != "site_index" || header.back() != "value" ||
      (field && header[1] != "site_index2")) {
    throw DomainError("path CSV header must be 'site_index,value' or 'site_index,site_index2,value'");
  }
  std::vector<Site> sites;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split(line);
    if (f.size() != header.size()) throw DomainError("line " + std::to_string(line_no) + ": wrong field count");
    Site s{parse_int(f[0], line_no), field ? parse_int(f[1], line_no) : 0};
    sites.push_back(s);
    values.push_back(parse_double(f.back(), line_no));
  }
  if (sites.empty()) throw DomainError("path CSV has no rows");

  GridSpec grid;
  if (!field) {
    grid = GridSpec::line(sites.size());
  } else {
    const int rows = sites.back().row;
    const int cols = sites.back().col;
    if (rows <= 0 || cols <= 0 || static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) != sites.size()) {
      throw DomainError("2D path CSV does not cover a full lattice");
    }
    grid = GridSpec::lattice(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  }
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (!(sites[i] == grid.site(i))) {
      throw DomainError("path CSV row " + std::to_string(i + 1) + " is out of order; expected row-major sites from 1");
    }
  }
  return Path{std::move(grid), std::move(values)};
}

void write_field_json(std::ostream& out, const Path& path) {
  if (path.grid.dimension() != 2) throw DomainError("field JSON needs a 2D path");
  nlohmann::json values = nlohmann::json::array();
  for (std::size_t r = 0; r < path.grid.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < path.grid.cols(); ++c) row.push_back(path.values[r * path.grid.cols() + c]);
    values.push_back(std::move(row));
  }
  nlohmann::json doc{{"rows", path.grid.rows()}, {"cols", path.grid.cols()}, {"values", std::move(values)}};
  out << doc.dump() << '\n';
}

void write_predictions_csv(std::ostream& out, const std::vector<PredictionRow>& rows) {
  bool envelope = !rows.empty();
  for (const auto& r : rows) envelope = envelope && r.envelope_min && r.envelope_max;
  out << (envelope ? "step,prediction,envelope_min,envelope_max\n" : "step,prediction\n");
  set_precision(out);
  for (const auto& r : rows) {
    out << r.step << ',' << r.prediction;
    if (envelope) out << ',' << *r.envelope_min << ',' << *r.envelope_max;
    out << '\n';
  }
}

std::vector<PredictionRow> prediction_rows(const std::vector<StepForecast>& steps) {
  std::vector<PredictionRow> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back({s.step, s.prediction, std::nullopt, std::nullopt});
  return out;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

std::string manifest_json(const Manifest& manifest) {
  nlohmann::json config = nlohmann::json::parse(manifest.config_json.empty() ? "{}" : manifest.config_json);
  const std::string canonical = config.dump();
  nlohmann::json doc{{"command", manifest.command},
                     {"seed", manifest.seed},
                     {"config", config},
                     {"config_sha256", sha256_hex(canonical)},
                     {"version", std::string(version())},
                     {"outputs", manifest.outputs}};
  return doc.dump(2) + "\n";
}

}  // namespace maxstable
