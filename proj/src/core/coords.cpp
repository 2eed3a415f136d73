#include "core/coords.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/grid_field.hpp"
#include "core/trig.hpp"

namespace nnc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 32-bit direction numbers for the first three Sobol dimensions
// (van der Corput; x+1 with m=[1]; x^2+x+1 with m=[1,3], Joe-Kuo values).
struct SobolDirs {
    uint32_t v[3][32];
    SobolDirs() {
        for (int k = 0; k < 32; ++k) v[0][k] = 1u << (31 - k);
        uint32_t m1[32], m2[32];
        m1[0] = 1;
        for (int k = 1; k < 32; ++k) m1[k] = (m1[k - 1] << 1) ^ m1[k - 1];
        m2[0] = 1;
        m2[1] = 3;
        for (int k = 2; k < 32; ++k) m2[k] = (m2[k - 1] << 1) ^ (m2[k - 2] << 2) ^ m2[k - 2];
        for (int k = 0; k < 32; ++k) {
            v[1][k] = m1[k] << (31 - k);
            v[2][k] = m2[k] << (31 - k);
        }
    }
};

const SobolDirs g_dirs;

uint32_t sobol_raw(uint64_t i, int dim) {
    uint32_t x = 0;
    for (int k = 0; i; i >>= 1, ++k)
        if (i & 1u) x ^= g_dirs.v[dim][k];
    return x;
}

uint32_t reverse_bits(uint32_t x) {
    x = (x << 16) | (x >> 16);
    x = ((x & 0x00FF00FFu) << 8) | ((x & 0xFF00FF00u) >> 8);
    x = ((x & 0x0F0F0F0Fu) << 4) | ((x & 0xF0F0F0F0u) >> 4);
    x = ((x & 0x33333333u) << 2) | ((x & 0xCCCCCCCCu) >> 2);
    x = ((x & 0x55555555u) << 1) | ((x & 0xAAAAAAAAu) >> 1);
    return x;
}

// Hash-based nested uniform (Owen-style) scramble, Laine-Karras construction.
uint32_t owen_scramble(uint32_t x, uint32_t seed) {
    x = reverse_bits(x);
    x += seed;
    x ^= x * 0x6C50B47Cu;
    x ^= x * 0xB82F1E52u;
    x ^= x * 0xC7AFE638u;
    x ^= x * 0x8D22F6E6u;
    return reverse_bits(x);
}

}  // namespace

NormalizedCoord normalize(double t, double p, double psi_deg, double phi_deg, double c_t, double c_p) {
    if (!(c_t > 0.0) || !(c_p > 0.0)) throw UsageError("scaling constants c_t and c_p must be positive");
    double phi = std::fmod(phi_deg, 360.0);
    if (phi < 0.0) phi += 360.0;
    const double cpsi = cos_deg(psi_deg);
    const double spsi = sin_deg(psi_deg);
    NormalizedCoord v;
    v.t_hat = t / c_t;
    v.p_hat = p / c_p;
    // +0.0 canonicalizes -0.0 so all longitudes at a pole give one bit pattern
    v.x = cpsi * cos_deg(phi) + 0.0;
    v.y = cpsi * sin_deg(phi) + 0.0;
    v.z = spsi + 0.0;
    return v;
}

void sphere_from_unit_square(double u1, double u2, double& psi_rad, double& phi_rad) {
    psi_rad = 0.5 * kPi - std::acos(1.0 - 2.0 * u2);
    phi_rad = 2.0 * kPi * u1;
}

QuasiSampler::QuasiSampler(uint64_t seed, size_t pressure_levels)
    : level_stream_(derive_seed(seed, 0x4C45564Cull)),  // "LEVL"
      levels_(pressure_levels ? pressure_levels : 1) {
    for (int d = 0; d < 3; ++d)
        dim_seed_[d] = static_cast<uint32_t>(derive_seed(seed, 0x534F424Cull + d));  // "SOBL"+d
}

void QuasiSampler::point(uint64_t i, double out[3]) const {
    for (int d = 0; d < 3; ++d)
        out[d] = static_cast<double>(owen_scramble(sobol_raw(i, d), dim_seed_[d])) * 0x1.0p-32;
}

std::vector<TrainSample> QuasiSampler::next_batch(size_t n, const GridField4D& field) {
    std::vector<TrainSample> batch(n);
    const double t0 = field.times.front();
    const double t1 = field.times.back();
    for (size_t k = 0; k < n; ++k) {
        double u[3];
        point(index_++, u);
        double psi, phi;
        sphere_from_unit_square(u[1], u[2], psi, phi);
        TrainSample& s = batch[k];
        s.t = t0 + u[0] * (t1 - t0);
        s.p_index = static_cast<uint32_t>(level_stream_.next_below(levels_));
        s.psi_deg = std::clamp(psi * (180.0 / kPi), -90.0, 90.0);
        s.phi_deg = phi * (180.0 / kPi);
    }
    return batch;
}

}  // namespace nnc
