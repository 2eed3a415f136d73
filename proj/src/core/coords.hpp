#pragma once

#include <cstdint>
#include <vector>

#include "core/rng.hpp"

namespace nnc {

struct GridField4D;

// Network input coordinates: scaled time/pressure plus the unit-sphere
// embedding of (lat, lon). x^2 + y^2 + z^2 = 1 within 1e-12; both poles
// collapse to a single point bit-identically, and phi and phi + 360 map to
// identical coordinates.
struct NormalizedCoord {
    double t_hat = 0;
    double p_hat = 0;
    double x = 0, y = 0, z = 0;
};

NormalizedCoord normalize(double t, double p, double psi_deg, double phi_deg, double c_t, double c_p);

// Equal-area map from the unit square to (psi, phi) in radians:
// psi = pi/2 - arccos(1 - 2*u2), phi = 2*pi*u1.
void sphere_from_unit_square(double u1, double u2, double& psi_rad, double& phi_rad);

struct TrainSample {
    double t = 0;
    uint32_t p_index = 0;
    double psi_deg = 0;
    double phi_deg = 0;
};

// Owen-scrambled 3D Sobol sequence (time, u1, u2) plus an independent
// counter-based stream for the discrete pressure-level choice. Stateful:
// successive batches continue the sequence. Deterministic in the seed.
class QuasiSampler {
public:
    explicit QuasiSampler(uint64_t seed, size_t pressure_levels = 1);

    // Scrambled sequence point i in [0,1)^3 (random access).
    void point(uint64_t i, double out[3]) const;

    // Next n samples over the field's domain: t continuous over
    // [times.first, times.last], (psi, phi) equal-area on the sphere,
    // p_index uniform over levels.
    std::vector<TrainSample> next_batch(size_t n, const GridField4D& field);

    uint64_t sequence_index() const { return index_; }

private:
    uint64_t index_ = 0;
    uint32_t dim_seed_[3];
    SplitMix level_stream_;
    size_t levels_;
};

}  // namespace nnc
