#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// CSV ingestion and emission for the CLI. Price files carry
// `timestamp,price_buy[,price_sell]`, load files `timestamp,z` or
// `timestamp,d,r`; either kind may end with an explicit `duration_h` column
// for nonuniform grids. Timestamps are ISO-8601. Validation is strict: bad
// rows are reported with their row number, never interpolated over.

namespace nemarb::io {

struct PriceTable {
  std::vector<std::int64_t> epoch_s;
  std::vector<double> buy;
  std::optional<std::vector<double>> sell;
  std::optional<std::vector<double>> duration_h;
};

struct LoadTable {
  std::vector<std::int64_t> epoch_s;
  std::vector<double> z_wh;
  std::optional<std::vector<double>> duration_h;
};

/// Seconds since the Unix epoch for "YYYY-MM-DD[T ]HH:MM[:SS][Z]".
std::int64_t parse_iso8601(const std::string& text);

/// Inverse of parse_iso8601, always "YYYY-MM-DDTHH:MM:SS".
std::string format_iso8601(std::int64_t epoch_s);

/// Throws std::runtime_error naming the file and row on missing columns,
/// non-monotone or duplicated timestamps, and spacing that disagrees with
/// expected_step_hours (unless the file carries its own duration column).
PriceTable read_price_csv(const std::string& path, double expected_step_hours);
LoadTable read_load_csv(const std::string& path, double expected_step_hours);

void write_price_csv(const std::string& path, std::int64_t start_epoch_s, double step_hours,
                     const std::vector<double>& buy,
                     const std::optional<std::vector<double>>& sell = std::nullopt);
void write_load_csv(const std::string& path, std::int64_t start_epoch_s, double step_hours,
                    const std::vector<double>& z_wh);

/// FNV-1a 64-bit digest of a file, as 16 hex digits (for run manifests).
std::string file_checksum(const std::string& path);

}  // namespace nemarb::io
