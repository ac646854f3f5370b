#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxstable/forecast.hpp"
#include "maxstable/grid.hpp"

namespace maxstable {

/// Library version string ("major.minor.patch").
std::string_view version();

/// 1D: `site_index,value`; 2D: `site_index,site_index2,value` (1-based
/// lattice coordinates, row-major). Values are written with round-trip
/// precision so re-reading reproduces the path bitwise.
void write_path_csv(std::ostream& out, const Path& path);

/// Inverse of write_path_csv. Sites must cover a full line or lattice in
/// row-major order. Throws DomainError on malformed input.
Path read_path_csv(std::istream& in);

/// {"rows": r, "cols": c, "values": [[...], ...]} for 2D paths.
void write_field_json(std::ostream& out, const Path& path);

struct PredictionRow {
  std::size_t step = 0;
  double prediction = 0.0;
  std::optional<double> envelope_min;
  std::optional<double> envelope_max;
};

/// `step,prediction[,envelope_min,envelope_max]`; envelope columns appear
/// when every row has them.
void write_predictions_csv(std::ostream& out, const std::vector<PredictionRow>& rows);
std::vector<PredictionRow> prediction_rows(const std::vector<StepForecast>& steps);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

struct Manifest {
  std::string command;
  std::uint64_t seed = 0;
  std::string config_json;  ///< serialized JSON object
  std::vector<std::string> outputs;
};

/// JSON document with command, seed, config, config_sha256 (over the
/// serialized config), library version and output paths.
std::string manifest_json(const Manifest& manifest);

}  // namespace maxstable
