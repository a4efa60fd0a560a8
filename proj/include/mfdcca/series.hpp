#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mfdcca {

// Two equal-length real-valued sequences under joint analysis.
struct SeriesPair {
    std::vector<double> x;
    std::vector<double> y;
};

void validate_series(const std::vector<double>& values, const std::string& name = "series");
void validate_pair(const SeriesPair& pair);

// Running cumulative sum; output length equals input length.
std::vector<double> build_profile(const std::vector<double>& series);

enum class Transform { none, log_return, abs_log_return };

Transform transform_from_string(const std::string& name);
std::string to_string(Transform t);

// log_return maps a level series v to r(t) = ln v(t) - ln v(t-1) (length
// N - 1, requires v > 0); abs_log_return takes |r(t)|.
std::vector<double> apply_transform(const std::vector<double>& values, Transform t);
SeriesPair apply_transform(const SeriesPair& pair, Transform t);

}  // namespace mfdcca
