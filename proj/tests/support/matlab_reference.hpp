#pragma once

// Line-by-line transliteration of the original MATLAB MF-X-DMA / MF-X-DFA
// reference implementations, kept independent of the library code paths so
// it can serve as an equivalence oracle. Box layout, trimming, absolute
// covariances and aggregation follow the MATLAB source exactly; the local
// polynomial fit solves the normal equations in long double instead of
// mrdivide.

#include <vector>

namespace matlab_ref {

struct FqTable {
    std::vector<int> s;
    std::vector<double> q;
    // q-major: value(qi, si) = v[qi * s.size() + si]
    std::vector<double> fxx, fxy, fyy;
};

std::vector<int> default_scales(std::size_t series_length);

FqTable mfxdma_1d(const std::vector<double>& x, const std::vector<double>& y, double theta,
                  const std::vector<double>& q, std::vector<int> s = {});

FqTable mfxdfa_1d(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& q, int order, std::vector<int> s = {});

}  // namespace matlab_ref
