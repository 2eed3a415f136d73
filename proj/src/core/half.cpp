#include "core/half.hpp"

#include <cmath>
#include <cstring>

namespace nnc {

uint16_t f16_from_f32(float value) {
    uint32_t x;
    std::memcpy(&x, &value, 4);
    const uint16_t sign = static_cast<uint16_t>((x >> 16) & 0x8000u);
    const uint32_t mag = x & 0x7FFFFFFFu;

    if (mag >= 0x7F800000u)  // inf / nan
        return static_cast<uint16_t>(sign | 0x7C00u | ((mag & 0x7FFFFFu) ? 0x200u : 0u));
    if (mag >= 0x477FF000u)  // rounds past 65504
        return static_cast<uint16_t>(sign | 0x7C00u);
    if (mag < 0x33000000u)  // below half of the smallest subnormal
        return sign;

    const int exp = static_cast<int>(mag >> 23) - 127;
    uint32_t mant = mag & 0x7FFFFFu;
    if (exp < -14) {
        // subnormal result: shift the implicit leading 1 into the mantissa
        mant |= 0x800000u;
        const int shift = -14 - exp;
        const uint32_t rbits = static_cast<uint32_t>(13 + shift);
        const uint32_t half = 1u << (rbits - 1);
        uint32_t q = mant >> rbits;
        const uint32_t rem = mant & ((1u << rbits) - 1u);
        if (rem > half || (rem == half && (q & 1u))) ++q;
        return static_cast<uint16_t>(sign | q);
    }
    const uint32_t rem = mant & 0x1FFFu;
    uint32_t q = (static_cast<uint32_t>(exp + 15) << 10) | (mant >> 13);
    if (rem > 0x1000u || (rem == 0x1000u && (q & 1u))) ++q;  // may carry into exponent; that is correct RNE
    return static_cast<uint16_t>(sign | q);
}

float f32_from_f16(uint16_t bits) {
    const uint32_t sign = static_cast<uint32_t>(bits & 0x8000u) << 16;
    const uint32_t exp = (bits >> 10) & 0x1Fu;
    uint32_t mant = bits & 0x3FFu;
    uint32_t x;
    if (exp == 0) {
        if (mant == 0) {
            x = sign;
        } else {
            int e = -1;
            do {
                mant <<= 1;
                ++e;
            } while (!(mant & 0x400u));
            x = sign | (static_cast<uint32_t>(127 - 15 - e) << 23) | ((mant & 0x3FFu) << 13);
        }
    } else if (exp == 31) {
        x = sign | 0x7F800000u | (mant << 13);
    } else {
        x = sign | ((exp + 112u) << 23) | (mant << 13);
    }
    float f;
    std::memcpy(&f, &x, 4);
    return f;
}

bool f16_overflows(float value) {
    if (std::isnan(value)) return false;
    return std::fabs(value) >= 65520.0f || std::isinf(value);
}

}  // namespace nnc
