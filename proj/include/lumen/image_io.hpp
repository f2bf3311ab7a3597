#pragma once

#include <string>

#include "lumen/image.hpp"

namespace lumen {

// PNG (8-bit gray/RGB/RGBA, alpha dropped) or binary PPM P6 with maxval
// 255, detected by content. Samples are divided by 255.
RgbImage load_image(const std::string& path);

// Format chosen by extension (.png / .ppm). Samples are scaled by 255 and
// rounded half up.
void save_image(const RgbImage& img, const std::string& path);

RgbImage decode_ppm(const std::string& bytes);
std::string encode_ppm(const RgbImage& img);

std::uint8_t quantize(double v);

}  // namespace lumen
