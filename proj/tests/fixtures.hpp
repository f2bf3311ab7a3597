#pragma once

#include <utility>
#include <vector>

#include "lumen/enhance.hpp"
#include "lumen/harness.hpp"

namespace lumen::test {

// Three fixed 64x64 reference/enhanced pairs used to pin FSIMc against the
// independent implementations.
inline std::vector<std::pair<RgbImage, RgbImage>> fsim_pairs() {
    std::vector<std::pair<RgbImage, RgbImage>> out;

    SyntheticSpec a;
    a.width = a.height = 64;
    a.base_hue = 10.0;
    a.falloff = 1.2;
    a.center_level = 0.85;
    a.noise_amp = 0.02;
    a.seed = 7;
    const RgbImage ia = synth_vignette(a);
    out.emplace_back(ia, enhance_pm(ia).image);

    SyntheticSpec b = a;
    b.base_hue = 18.0;
    b.falloff = 1.6;
    b.seed = 11;
    b.specular = SpecularSpot{30.0, 26.0, 5.0, 1.0};
    const RgbImage ib = synth_vignette(b);
    out.emplace_back(ib, hist_equalize(ib).image);

    SyntheticSpec c = a;
    c.base_hue = 25.0;
    c.falloff = 0.9;
    c.noise_amp = 0.05;
    c.seed = 23;
    const RgbImage ic = synth_vignette(c);
    out.emplace_back(ic, clahe(ic, 8, 0.01).image);
    return out;
}

}  // namespace lumen::test
