#pragma once

#include <vector>

namespace lumen {

// Parameters of the dark/bright split enhancer.
//
//   delta      V threshold between the darker and brighter maps
//   beta       initial TWB denominator
//   omega      step between consecutive TWB denominators
//   phi        maximum of the V component (1 for normalized images)
//   half_unit  constant added to each bilinear weight in the TWB
//
// The bin count and denominators are derived. Fields are public so the
// algorithm can also be driven outside the recommended ranges (delta > phi
// routes every pixel through the HWB branch); use checked() for
// user-supplied values.
struct EnhanceParams {
    double delta = 0.4;
    double beta = 1.475;
    double omega = 0.025;
    double phi = 1.0;
    double half_unit = 0.5;

    // Validates delta in (0,1), beta in [1.45,1.50], omega in [0,0.025].
    static EnhanceParams checked(double delta, double beta, double omega);

    // m = ceil(phi / delta), never less than 1.
    int bin_count() const;

    // H_k = beta + (k - 1) * omega, k in 1..m.
    double denominator(int k) const;

    // Lower edges of bins 1..m followed by phi; size m + 1.
    std::vector<double> bin_edges() const;
};

// Throws InvalidArgument unless the parameters satisfy the recommended
// ranges listed on EnhanceParams::checked.
void validate(const EnhanceParams& params);

// Throws InvalidArgument unless the parameters can drive the pipeline at all:
// delta > 0, beta > 0, omega >= 0, phi > 0.
void validate_structure(const EnhanceParams& params);

}  // namespace lumen
