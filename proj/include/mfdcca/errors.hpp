#pragma once

#include <stdexcept>
#include <string>

namespace mfdcca {

// Malformed input data or configuration (bad shapes, values out of range,
// unreadable files).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerically degenerate situation: zero boxes under q <= 0, non-positive
// fluctuation values inside a fit range, indefinite circulant embeddings.
class DegeneracyError : public std::runtime_error {
public:
    explicit DegeneracyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mfdcca
