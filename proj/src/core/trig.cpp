#include "core/trig.hpp"

#include <cmath>

namespace nnc {

namespace {
constexpr long double kDegToRadL = 3.14159265358979323846264338327950288L / 180.0L;
}

double cos_deg(double degrees) {
    double r = std::fmod(degrees, 360.0);
    if (r < 0.0) r += 360.0;
    int q = static_cast<int>(r / 90.0);
    if (q > 3) q = 3;
    double s = r - 90.0 * q;
    long double c;
    switch (q) {
        case 0: c = cosl(static_cast<long double>(s) * kDegToRadL); break;
        case 1: c = -sinl(static_cast<long double>(s) * kDegToRadL); break;
        case 2: c = -cosl(static_cast<long double>(s) * kDegToRadL); break;
        default: c = sinl(static_cast<long double>(s) * kDegToRadL); break;
    }
    return static_cast<double>(c) + 0.0;
}

double sin_deg(double degrees) { return cos_deg(degrees - 90.0); }

double deg2rad(double degrees) { return degrees * (3.14159265358979323846 / 180.0); }

}  // namespace nnc
