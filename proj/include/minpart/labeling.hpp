#pragma once

#include <vector>

namespace minpart {

struct LabelResult {
    std::vector<int> labels;  // 0 = inside the zero band, else component id >= 1
    int count = 0;
};

// 4-connected components of constant sign on an nx*ny sample grid.
// |value| <= band lands in the zero band and separates components.
LabelResult label_signed_components(int nx, int ny,
                                    const std::vector<double>& values,
                                    double band);

}  // namespace minpart
