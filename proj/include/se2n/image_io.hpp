#pragma once

#include <string>

#include "se2n/grid.hpp"

namespace se2n {

// Grayscale in [0,1]. Color inputs are converted with BT.601 luma.
Image load_image(const std::string& path);
Image load_pgm(const std::string& path);
Image load_png(const std::string& path);

// Binary P5, 8 bit, values clamped to [0,1].
void save_pgm(const std::string& path, const Image& img);

inline double luma601(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

}  // namespace se2n
