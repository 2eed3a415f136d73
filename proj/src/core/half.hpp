#pragma once

#include <cstdint>

namespace nnc {

// IEEE 754 binary16 conversions. The encoder uses round-to-nearest-even;
// the decoder is an exact widening. Hand-rolled so the stored bits do not
// depend on compiler intrinsics or FP environment.

// Largest finite half-precision value.
inline constexpr float kHalfMax = 65504.0f;
// Smallest positive normal half-precision value (2^-14).
inline constexpr float kHalfMinNormal = 6.103515625e-05f;

uint16_t f16_from_f32(float value);
float f32_from_f16(uint16_t bits);

// True if round-to-nearest-even would overflow to infinity.
bool f16_overflows(float value);

}  // namespace nnc
