#include "lumen/params.hpp"

#include <cmath>
#include <sstream>

#include "lumen/error.hpp"

namespace lumen {

namespace {

std::string range_message(const char* name, double value, const char* range) {
    std::ostringstream os;
    os << name << " = " << value << " outside " << range;
    return os.str();
}

}  // namespace

EnhanceParams EnhanceParams::checked(double delta, double beta, double omega) {
    EnhanceParams p;
    p.delta = delta;
    p.beta = beta;
    p.omega = omega;
    validate(p);
    return p;
}

int EnhanceParams::bin_count() const {
    const double q = phi / delta;
    // phi / delta can land a hair above an integer (e.g. 1 / 0.2); snap so
    // an exact ratio does not grow a spurious extra bin.
    const double nearest = std::round(q);
    const double m = std::abs(q - nearest) < 1e-9 ? nearest : std::ceil(q);
    return m < 1.0 ? 1 : static_cast<int>(m);
}

double EnhanceParams::denominator(int k) const { return beta + (k - 1) * omega; }

std::vector<double> EnhanceParams::bin_edges() const {
    const int m = bin_count();
    const double width = (phi - delta) / m;
    std::vector<double> edges(m + 1);
    for (int k = 0; k < m; ++k) edges[k] = delta + k * width;
    edges[m] = phi;
    return edges;
}

void validate_structure(const EnhanceParams& p) {
    if (!(p.delta > 0.0)) throw InvalidArgument(range_message("delta", p.delta, "(0, inf)"));
    if (!(p.beta > 0.0)) throw InvalidArgument(range_message("beta", p.beta, "(0, inf)"));
    if (!(p.omega >= 0.0)) throw InvalidArgument(range_message("omega", p.omega, "[0, inf)"));
    if (!(p.phi > 0.0)) throw InvalidArgument(range_message("phi", p.phi, "(0, inf)"));
    if (!std::isfinite(p.half_unit)) throw InvalidArgument("half_unit must be finite");
}

void validate(const EnhanceParams& p) {
    validate_structure(p);
    if (!(p.delta > 0.0 && p.delta < 1.0)) throw InvalidArgument(range_message("delta", p.delta, "(0, 1)"));
    if (!(p.beta >= 1.45 && p.beta <= 1.50)) throw InvalidArgument(range_message("beta", p.beta, "[1.45, 1.50]"));
    if (!(p.omega >= 0.0 && p.omega <= 0.025))
        throw InvalidArgument(range_message("omega", p.omega, "[0, 0.025]"));
}

}  // namespace lumen
