#pragma once

namespace nnc {

// Degree-argument trig with exact quadrant folding: results are exact at the
// cardinal angles (sin_deg(90) == 1, cos_deg(90) == +0.0) and correctly
// rounded at 30/45/60 thanks to an extended-precision core. Negative zeros
// are canonicalized to +0.0 so pole coordinates collapse bit-identically.
double sin_deg(double degrees);
double cos_deg(double degrees);

// Degrees -> radians.
double deg2rad(double degrees);

}  // namespace nnc
