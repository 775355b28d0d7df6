#include "gapsense/data_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gapsense {

namespace {

struct UnivariateEntry {
  std::string_view name;
  std::vector<double> values;
  std::string_view citation;
};

const std::vector<UnivariateEntry>& univariate_entries() {
  static const std::vector<UnivariateEntry> entries = {
      {"rosner", {90, 93, 86, 92, 95, 83, 75, 40, 88, 80},
       "Rosner: 10 monthly diastolic blood pressure measurements (PROGRESS datasets)"},
      {"barnett", {3, 4, 7, 8, 10, 949, 951}, "Barnett & Lewis (PROGRESS datasets)"},
      {"grubbs1", {568, 570, 570, 570, 572, 572, 572, 578, 584, 596},
       "Grubbs: strengths of hard-drawn copper wire (PROGRESS datasets)"},
      {"grubbs3", {2.02, 2.22, 3.04, 3.23, 3.59, 3.73, 3.94, 4.05, 4.11, 4.13},
       "Grubbs: percent elongations of plastic material (PROGRESS datasets)"},
      {"cushny", {0, 0.8, 1, 1.2, 1.3, 1.3, 1.4, 1.8, 2.4, 4.6},
       "Cushny & Peebles: extra hours of sleep, two drugs, ten patients (PROGRESS datasets)"},
      {"venus",
       {-0.30, 0.48, 0.63, -0.22, 0.18, -0.44, -0.24, -0.13, -0.05, 0.39, 1.01, 0.06, -1.40, 0.20, 0.10},
       "Herndon 1846, vertical semi-diameter of Venus (Peirce 1852)"},
  };
  return entries;
}

constexpr std::array<std::array<double, 2>, 75> kRuspini = {{
    {4, 53},    {5, 63},    {10, 59},   {9, 77},    {13, 49},   {13, 69},   {12, 88},   {15, 75},
    {18, 61},   {19, 65},   {22, 74},   {27, 72},   {28, 76},   {24, 58},   {27, 55},   {28, 60},
    {30, 52},   {31, 60},   {32, 61},   {36, 72},   {28, 147},  {32, 149},  {35, 153},  {33, 154},
    {38, 151},  {41, 150},  {38, 145},  {38, 143},  {32, 143},  {34, 141},  {44, 156},  {44, 149},
    {44, 143},  {46, 142},  {47, 149},  {49, 152},  {50, 142},  {53, 144},  {52, 152},  {55, 155},
    {54, 124},  {60, 136},  {63, 139},  {86, 132},  {85, 115},  {85, 96},   {78, 94},   {74, 96},
    {97, 122},  {98, 116},  {98, 124},  {99, 119},  {99, 128},  {101, 115}, {108, 111}, {110, 111},
    {108, 116}, {111, 126}, {115, 117}, {117, 115}, {70, 4},    {77, 12},   {83, 21},   {61, 15},
    {69, 15},   {78, 16},   {66, 18},   {58, 13},   {64, 20},   {69, 21},   {66, 23},   {61, 25},
    {76, 27},   {72, 31},   {64, 30},
}};

std::string valid_names() {
  std::string out;
  for (const auto& info : dataset_catalog()) {
    if (!out.empty()) out += ", ";
    out += info.name;
  }
  return out;
}

bool is_separator(char c, TextFormat format) {
  const bool ws = c == ' ' || c == '\t' || c == '\r';
  switch (format) {
    case TextFormat::Csv: return c == ',';
    case TextFormat::Whitespace: return ws;
    case TextFormat::Auto: return ws || c == ',';
  }
  return ws;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view token, std::size_t line) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end)
    throw DataError("line " + std::to_string(line) + ": cannot parse '" + std::string(token) + "'");
  if (!std::isfinite(value))
    throw DataError("line " + std::to_string(line) + ": non-finite value '" + std::string(token) + "'");
  return value;
}

// Tokens of one line. Runs of whitespace collapse; in CSV mode each comma
// delimits exactly one field, so empty fields are errors.
std::vector<double> parse_line(std::string_view line, std::size_t lineno, TextFormat format) {
  std::vector<double> out;
  if (format == TextFormat::Csv) {
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto field = trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
      out.push_back(parse_number(field, lineno));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_separator(line[i], format)) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_separator(line[j], format)) ++j;
    if (j > i) out.push_back(parse_number(line.substr(i, j - i), lineno));
    i = j;
  }
  return out;
}

template <typename RowFn>
void for_each_row(std::string_view text, RowFn fn) {
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    ++lineno;
    line = trim(line);
    if (!line.empty() && line.front() != '#') fn(line, lineno);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

const std::vector<DatasetInfo>& dataset_catalog() {
  static const std::vector<DatasetInfo> catalog = [] {
    std::vector<DatasetInfo> c;
    for (const auto& e : univariate_entries())
      c.push_back({std::string(e.name), DatasetKind::Univariate, std::string(e.citation)});
    c.push_back({"ruspini", DatasetKind::Points2d,
                 "Ruspini, E. H. Numerical methods for fuzzy clustering. Inform. Sci. 2 (1970) 319-350"});
    return c;
  }();
  return catalog;
}

PointSet ruspini_points() {
  PointSet p(static_cast<Eigen::Index>(kRuspini.size()), 2);
  for (std::size_t i = 0; i < kRuspini.size(); ++i) {
    p(static_cast<Eigen::Index>(i), 0) = kRuspini[i][0];
    p(static_cast<Eigen::Index>(i), 1) = kRuspini[i][1];
  }
  return p;
}

Dataset builtin_dataset(std::string_view name) {
  for (const auto& e : univariate_entries())
    if (e.name == name) return Sample(e.values, std::string(name));
  if (name == "ruspini") return ruspini_points();
  throw CatalogError("unknown dataset '" + std::string(name) + "'; valid names: " + valid_names());
}

Sample builtin_sample(std::string_view name) {
  auto ds = builtin_dataset(name);
  if (auto* s = std::get_if<Sample>(&ds)) return std::move(*s);
  throw CatalogError("dataset '" + std::string(name) + "' is not univariate");
}

Sample parse_univariate(std::string_view text, std::string label, TextFormat format) {
  std::vector<double> values;
  for_each_row(text, [&](std::string_view line, std::size_t lineno) {
    auto row = parse_line(line, lineno, format);
    values.insert(values.end(), row.begin(), row.end());
  });
  if (values.empty()) throw DataError("no numeric values in input");
  return Sample(std::move(values), std::move(label));
}

Sample load_univariate(const std::filesystem::path& path, TextFormat format) {
  return parse_univariate(read_file(path), path.string(), format);
}

PointSet parse_points2d(std::string_view text) {
  std::vector<std::array<double, 2>> rows;
  for_each_row(text, [&](std::string_view line, std::size_t lineno) {
    const auto row = parse_line(line, lineno, TextFormat::Auto);
    if (row.size() != 2)
      throw DataError("line " + std::to_string(lineno) + ": expected 2 columns, found " +
                      std::to_string(row.size()));
    rows.push_back({row[0], row[1]});
  });
  if (rows.empty()) throw DataError("no points in input");
  PointSet p(static_cast<Eigen::Index>(rows.size()), 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    p(static_cast<Eigen::Index>(i), 0) = rows[i][0];
    p(static_cast<Eigen::Index>(i), 1) = rows[i][1];
  }
  return p;
}

PointSet load_points2d(const std::filesystem::path& path) { return parse_points2d(read_file(path)); }

}  // namespace gapsense
