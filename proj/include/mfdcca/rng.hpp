#pragma once

#include <cstdint>
#include <random>

namespace mfdcca {

// Deterministic Gaussian stream. mt19937_64 has a standardized sequence and
// the Box-Muller step below avoids std::normal_distribution, whose output is
// implementation-defined; the same seed therefore produces the same stream
// on any standard library.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

    // uniform on (0, 1]
    double uniform() {
        return 1.0 - (engine_() >> 11) * 0x1.0p-53;
    }

    double gaussian();

    // Independent child seed for sub-stream `stream` (splitmix64 mixing).
    static std::uint64_t substream(std::uint64_t seed, std::uint64_t stream);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mfdcca
