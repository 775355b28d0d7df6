#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gapsense/oscillator.hpp"
#include "gapsense/sample.hpp"

namespace gapsense {

enum class DatasetKind { Univariate, Points2d };

struct DatasetInfo {
  std::string name;
  DatasetKind kind;
  std::string citation;
};

/// Thrown for names outside the catalog; the message lists the valid names.
struct CatalogError : DataError {
  using DataError::DataError;
};

using Dataset = std::variant<Sample, PointSet>;

/// rosner, barnett, grubbs1, grubbs3, cushny, venus (univariate) and ruspini (points).
const std::vector<DatasetInfo>& dataset_catalog();

Dataset builtin_dataset(std::string_view name);

/// Univariate convenience; CatalogError if the name is unknown or not univariate.
Sample builtin_sample(std::string_view name);

/// The 75 Ruspini points in their conventional order (ids 1..75).
PointSet ruspini_points();

enum class TextFormat { Auto, Csv, Whitespace };

/// Numbers separated by commas and/or whitespace, any count per line. Blank
/// lines and lines starting with '#' are skipped. Errors carry the line number.
Sample parse_univariate(std::string_view text, std::string label = {},
                        TextFormat format = TextFormat::Auto);
Sample load_univariate(const std::filesystem::path& path, TextFormat format = TextFormat::Auto);

/// Exactly two numeric columns per row, comma or whitespace delimited.
PointSet parse_points2d(std::string_view text);
PointSet load_points2d(const std::filesystem::path& path);

}  // namespace gapsense
