#include "nemarb/csvio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nemarb::io {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t row, const std::string& msg) {
  throw std::runtime_error(path + ":" + std::to_string(row) + ": " + msg);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_number(const std::string& path, std::size_t row, const std::string& field,
                    const std::string& name) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(field, &pos);
    if (pos != field.size() || !std::isfinite(v)) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    fail(path, row, "cannot parse " + name + " value '" + field + "'");
  }
}

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  y = static_cast<int>(yy + (m <= 2));
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  Table table;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    if (table.header.empty())
      table.header = split_csv(trimmed);
    else
      table.rows.push_back(split_csv(trimmed));
  }
  if (table.header.empty()) throw std::runtime_error(path + ": empty file");
  return table;
}

std::ptrdiff_t column_index(const Table& table, const std::string& name) {
  for (std::size_t j = 0; j < table.header.size(); ++j)
    if (table.header[j] == name) return static_cast<std::ptrdiff_t>(j);
  return -1;
}

// Shared timestamp handling; data rows start at file row 2.
std::vector<std::int64_t> parse_timestamps(const std::string& path, const Table& table,
                                           std::ptrdiff_t col) {
  std::vector<std::int64_t> epochs;
  epochs.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::size_t file_row = r + 2;
    if (table.rows[r].size() != table.header.size())
      fail(path, file_row, "expected " + std::to_string(table.header.size()) + " fields, got " +
                               std::to_string(table.rows[r].size()));
    std::int64_t t;
    try {
      t = parse_iso8601(table.rows[r][static_cast<std::size_t>(col)]);
    } catch (const std::exception& e) {
      fail(path, file_row, e.what());
    }
    if (!epochs.empty()) {
      if (t == epochs.back())
        fail(path, file_row, "duplicated timestamp '" +
                                 table.rows[r][static_cast<std::size_t>(col)] + "'");
      if (t < epochs.back()) fail(path, file_row, "timestamps not increasing");
    }
    epochs.push_back(t);
  }
  return epochs;
}

void check_uniform_spacing(const std::string& path, const std::vector<std::int64_t>& epochs,
                           double expected_step_hours) {
  const std::int64_t expected_s = static_cast<std::int64_t>(std::llround(expected_step_hours * 3600.0));
  for (std::size_t r = 1; r < epochs.size(); ++r)
    if (epochs[r] - epochs[r - 1] != expected_s)
      fail(path, r + 2, "gap: spacing is " + std::to_string(epochs[r] - epochs[r - 1]) +
                            " s, expected " + std::to_string(expected_s) + " s");
}

std::vector<double> parse_column(const std::string& path, const Table& table,
                                 std::ptrdiff_t col, const std::string& name) {
  std::vector<double> out;
  out.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    out.push_back(parse_number(path, r + 2, table.rows[r][static_cast<std::size_t>(col)], name));
  return out;
}

}  // namespace

std::int64_t parse_iso8601(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char sep = 0;
  const int got = std::sscanf(text.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d", &y, &mo, &d, &sep, &h,
                              &mi, &s);
  if (got < 6 || (sep != 'T' && sep != ' '))
    throw std::runtime_error("invalid ISO-8601 timestamp '" + text + "'");
  // Reject trailing garbage other than an optional Z / seconds field.
  std::string normalized = text;
  if (!normalized.empty() && normalized.back() == 'Z') normalized.pop_back();
  const std::size_t expect = got == 7 ? 19 : 16;
  if (normalized.size() != expect)
    throw std::runtime_error("invalid ISO-8601 timestamp '" + text + "'");
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60)
    throw std::runtime_error("invalid ISO-8601 timestamp '" + text + "'");
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

std::string format_iso8601(std::int64_t epoch_s) {
  std::int64_t days = epoch_s / 86400;
  std::int64_t rem = epoch_s % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d", y, m, d,
                static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                static_cast<int>(rem % 60));
  return buf;
}

PriceTable read_price_csv(const std::string& path, double expected_step_hours) {
  const Table table = read_table(path);
  const std::ptrdiff_t ts = column_index(table, "timestamp");
  const std::ptrdiff_t buy = column_index(table, "price_buy");
  if (ts < 0 || buy < 0)
    throw std::runtime_error(path + ": missing required columns (timestamp, price_buy)");
  const std::ptrdiff_t sell = column_index(table, "price_sell");
  const std::ptrdiff_t dur = column_index(table, "duration_h");

  PriceTable out;
  out.epoch_s = parse_timestamps(path, table, ts);
  out.buy = parse_column(path, table, buy, "price_buy");
  if (sell >= 0) out.sell = parse_column(path, table, sell, "price_sell");
  if (dur >= 0)
    out.duration_h = parse_column(path, table, dur, "duration_h");
  else
    check_uniform_spacing(path, out.epoch_s, expected_step_hours);
  return out;
}

LoadTable read_load_csv(const std::string& path, double expected_step_hours) {
  const Table table = read_table(path);
  const std::ptrdiff_t ts = column_index(table, "timestamp");
  if (ts < 0) throw std::runtime_error(path + ": missing required column timestamp");
  const std::ptrdiff_t z = column_index(table, "z");
  const std::ptrdiff_t d = column_index(table, "d");
  const std::ptrdiff_t r = column_index(table, "r");
  const std::ptrdiff_t dur = column_index(table, "duration_h");

  LoadTable out;
  out.epoch_s = parse_timestamps(path, table, ts);
  if (z >= 0) {
    out.z_wh = parse_column(path, table, z, "z");
  } else if (d >= 0 && r >= 0) {
    const std::vector<double> demand = parse_column(path, table, d, "d");
    const std::vector<double> gen = parse_column(path, table, r, "r");
    out.z_wh.resize(demand.size());
    for (std::size_t i = 0; i < demand.size(); ++i) out.z_wh[i] = demand[i] - gen[i];
  } else {
    throw std::runtime_error(path + ": missing required columns (z, or d and r)");
  }
  if (dur >= 0)
    out.duration_h = parse_column(path, table, dur, "duration_h");
  else
    check_uniform_spacing(path, out.epoch_s, expected_step_hours);
  return out;
}

void write_price_csv(const std::string& path, std::int64_t start_epoch_s, double step_hours,
                     const std::vector<double>& buy,
                     const std::optional<std::vector<double>>& sell) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error(path + ": cannot open for writing");
  os.precision(12);
  os << "timestamp,price_buy" << (sell ? ",price_sell" : "") << "\n";
  const std::int64_t step_s = static_cast<std::int64_t>(std::llround(step_hours * 3600.0));
  for (std::size_t i = 0; i < buy.size(); ++i) {
    os << format_iso8601(start_epoch_s + static_cast<std::int64_t>(i) * step_s) << ',' << buy[i];
    if (sell) os << ',' << (*sell)[i];
    os << '\n';
  }
}

void write_load_csv(const std::string& path, std::int64_t start_epoch_s, double step_hours,
                    const std::vector<double>& z_wh) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error(path + ": cannot open for writing");
  os.precision(12);
  os << "timestamp,z\n";
  const std::int64_t step_s = static_cast<std::int64_t>(std::llround(step_hours * 3600.0));
  for (std::size_t i = 0; i < z_wh.size(); ++i)
    os << format_iso8601(start_epoch_s + static_cast<std::int64_t>(i) * step_s) << ',' << z_wh[i]
       << '\n';
}

std::string file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  std::uint64_t hash = 1469598103934665603ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 1099511628211ull;
    }
    if (!in) break;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(hash));
  return out;
}

}  // namespace nemarb::io
