#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Core>

#include "core/coords.hpp"

namespace nnc {

// Fixed Gaussian random Fourier basis with block structure: separate blocks
// for t, p, and the sphere coordinates, so cross-terms exist only among
// (x, y, z). Never trained; entries are stored in the artifact verbatim
// rather than regenerated from the seed.
struct FourierBasis {
    int m = 0;           // features per block; total rows 3m
    float sigma = 0;
    int sphere_dim = 3;  // 3 for (x,y,z); 2 when the XYZ transform is disabled
    uint64_t seed = 0;
    Eigen::VectorXf b_t;  // m
    Eigen::VectorXf b_p;  // m
    Eigen::MatrixXf b_s;  // m x sphere_dim

    int rows() const { return 3 * m; }
    int feature_dim() const { return 6 * m; }
    size_t stored_reals() const { return static_cast<size_t>(m) * (2 + sphere_dim); }
};

FourierBasis make_basis(int m, float sigma, uint64_t seed, int sphere_dim = 3);

// gamma(v) = [cos(B v^T), sin(B v^T)] with the blocked products
// [B_t * t_hat | B_p * p_hat | B_s * sphere]. Output length 6m, first 3m
// entries the cosines, last 3m the sines; everything in [-1, 1].
template <typename T>
void encode(const FourierBasis& basis, T t_hat, T p_hat, const T* sphere, T* out) {
    const int m = basis.m;
    for (int i = 0; i < m; ++i) {
        T a = static_cast<T>(basis.b_t[i]) * t_hat;
        out[i] = std::cos(a);
        out[3 * m + i] = std::sin(a);
    }
    for (int i = 0; i < m; ++i) {
        T a = static_cast<T>(basis.b_p[i]) * p_hat;
        out[m + i] = std::cos(a);
        out[4 * m + i] = std::sin(a);
    }
    for (int i = 0; i < m; ++i) {
        T a = 0;
        for (int d = 0; d < basis.sphere_dim; ++d) a += static_cast<T>(basis.b_s(i, d)) * sphere[d];
        out[2 * m + i] = std::cos(a);
        out[5 * m + i] = std::sin(a);
    }
}

// Convenience overload for the standard five-coordinate input.
template <typename T>
void encode(const FourierBasis& basis, const NormalizedCoord& v, T* out) {
    const T sphere[3] = {static_cast<T>(v.x), static_cast<T>(v.y), static_cast<T>(v.z)};
    encode(basis, static_cast<T>(v.t_hat), static_cast<T>(v.p_hat), sphere, out);
}

}  // namespace nnc
