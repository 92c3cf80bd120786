#pragma once

#include "fairhms/types.hpp"

namespace fairhms {

/// Loads a dataset from a comma-separated UTF-8 file with a header row.
/// Group indices are assigned in first-appearance order of the group value,
/// and that order is recorded as the dataset's group labels. Coordinates are
/// returned raw (not yet normalized). When id_column is empty, the 0-based
/// row index is used as the point id.
///
/// Errors (missing file, missing column, unparsable cell, empty dataset) are
/// reported with the offending row and column.
Dataset load_csv(const std::string& path,
                 const std::vector<std::string>& numeric_columns,
                 const std::string& group_column,
                 const std::string& id_column = "");

/// Writes "id,x1,...,xd,group" rows; the inverse of load_csv for generated
/// datasets.
void write_csv(const Dataset& ds, const std::string& path);

}  // namespace fairhms
