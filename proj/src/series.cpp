#include "mfdcca/series.hpp"

#include <cmath>
#include <cstdlib>

#include "mfdcca/errors.hpp"

namespace mfdcca {

void validate_series(const std::vector<double>& values, const std::string& name) {
    if (values.empty()) {
        throw DataError("empty series: " + name);
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw DataError("non-finite input: " + name);
        }
    }
}

void validate_pair(const SeriesPair& pair) {
    validate_series(pair.x, "x");
    validate_series(pair.y, "y");
    if (pair.x.size() != pair.y.size()) {
        throw DataError("pair length mismatch");
    }
}

std::vector<double> build_profile(const std::vector<double>& series) {
    validate_series(series);
    std::vector<double> profile(series.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        acc += series[i];
        profile[i] = acc;
    }
    return profile;
}

Transform transform_from_string(const std::string& name) {
    if (name == "none") return Transform::none;
    if (name == "log-return") return Transform::log_return;
    if (name == "abs-log-return") return Transform::abs_log_return;
    throw DataError("unknown transform: " + name);
}

std::string to_string(Transform t) {
    switch (t) {
        case Transform::none: return "none";
        case Transform::log_return: return "log-return";
        case Transform::abs_log_return: return "abs-log-return";
    }
    std::abort();
}

std::vector<double> apply_transform(const std::vector<double>& values, Transform t) {
    if (t == Transform::none) return values;
    validate_series(values);
    if (values.size() < 2) {
        throw DataError("series too short for return transform");
    }
    std::vector<double> out(values.size() - 1);
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] <= 0.0 || values[i - 1] <= 0.0) {
            throw DataError("non-positive level in return transform");
        }
        double r = std::log(values[i]) - std::log(values[i - 1]);
        out[i - 1] = (t == Transform::abs_log_return) ? std::fabs(r) : r;
    }
    return out;
}

SeriesPair apply_transform(const SeriesPair& pair, Transform t) {
    return SeriesPair{apply_transform(pair.x, t), apply_transform(pair.y, t)};
}

}  // namespace mfdcca
