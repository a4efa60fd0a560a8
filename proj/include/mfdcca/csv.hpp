#pragma once

#include <string>
#include <vector>

#include "mfdcca/estimator.hpp"
#include "mfdcca/highdim.hpp"
#include "mfdcca/scaling.hpp"
#include "mfdcca/series.hpp"

namespace mfdcca {

// 17-significant-digit decimal form; round-trips any double losslessly.
std::string format_double(double v);

// Reads two numeric columns from a comma-separated file. Selectors are
// 0-based indices or header names ("" = columns 0 and 1); a single leading
// header row is detected by non-numeric cells. Ragged rows and rows with
// non-numeric or blank cells are errors naming the offending line.
SeriesPair load_series_csv(const std::string& path, const std::string& col_x = "",
                           const std::string& col_y = "");

// Rectangular headerless grid, rows = i1.
Field2D load_field_csv(const std::string& path);

void write_series_csv(const std::string& path, const SeriesPair& pair,
                      const std::string& header = "x,y");

// columns: q,s,f_xx,f_xy,f_yy
void write_fluctuation_csv(const std::string& path, const FluctuationMatrix& fm);

// columns: q,h,h_stderr,tau,alpha,f_alpha
void write_exponent_csv(const std::string& path, const ScalingResult& sr);

// columns: q,delta_h,delta_tau
void write_delta_csv(const std::string& path, const ExponentDelta& delta);

}  // namespace mfdcca
