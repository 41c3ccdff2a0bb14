#pragma once

#include <string>

#include "sfp/image.hpp"

namespace sfp {

// Reads an 8- or 16-bit PNG/JPEG and scales samples to [0,1] by the max code
// value (255 or 65535). Grayscale is replicated to three planes; alpha is
// dropped. Throws IoError on unreadable paths, FormatError on undecodable
// content, DimensionError below 8x8.
PlanarImage load_image(const std::string& path);

// Writes an 8-bit RGB PNG. Quantization is round(s*255) with round-half-up,
// clamped to [0,255]. Throws IoError when the file cannot be written.
void save_image(const PlanarImage& img, const std::string& path);

}  // namespace sfp
