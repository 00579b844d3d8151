#pragma once

#include <string>

#include "msw/measure.hpp"

namespace msw {

// Point-cloud CSV: header "x1,...,xd" with an optional trailing "w" column.
// Without the weight column the measure is uniform. Ragged or non-numeric
// rows raise io_error naming the row.
EmpiricalMeasure read_point_cloud_csv(const std::string& path);

// include_weights=false writes the x1..xd header only (uniform clouds).
void write_point_cloud_csv(const std::string& path, const EmpiricalMeasure& mu,
                           bool include_weights = false);

}  // namespace msw
