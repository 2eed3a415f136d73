#pragma once

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "core/errors.hpp"

// Little-endian primitives for the binary container formats. Reads track the
// byte offset so format errors can point at the offending position.

namespace nnc {

inline void put_bytes(std::ostream& out, const void* p, size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    if (!out) throw IoError("write failed");
}

inline void put_u16(std::ostream& out, uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8)};
    put_bytes(out, b, 2);
}

inline void put_u32(std::ostream& out, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    put_bytes(out, b, 4);
}

inline void put_u64(std::ostream& out, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    put_bytes(out, b, 8);
}

inline void put_f32(std::ostream& out, float v) {
    uint32_t u;
    std::memcpy(&u, &v, 4);
    put_u32(out, u);
}

inline void put_f64(std::ostream& out, double v) {
    uint64_t u;
    std::memcpy(&u, &v, 8);
    put_u64(out, u);
}

inline void put_string(std::ostream& out, const std::string& s) {
    put_u32(out, static_cast<uint32_t>(s.size()));
    if (!s.empty()) put_bytes(out, s.data(), s.size());
}

class ByteReader {
public:
    explicit ByteReader(std::istream& in) : in_(in) {}

    uint64_t offset() const { return off_; }

    void read_exact(void* p, size_t n) {
        in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (static_cast<size_t>(in_.gcount()) != n)
            throw FormatError("unexpected end of file at byte " + std::to_string(off_ + static_cast<uint64_t>(in_.gcount())));
        off_ += n;
    }

    uint16_t u16() {
        unsigned char b[2];
        read_exact(b, 2);
        return static_cast<uint16_t>(b[0] | (b[1] << 8));
    }

    uint32_t u32() {
        unsigned char b[4];
        read_exact(b, 4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
        return v;
    }

    uint64_t u64() {
        unsigned char b[8];
        read_exact(b, 8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
        return v;
    }

    float f32() {
        uint32_t u = u32();
        float v;
        std::memcpy(&v, &u, 4);
        return v;
    }

    double f64() {
        uint64_t u = u64();
        double v;
        std::memcpy(&v, &u, 8);
        return v;
    }

    std::string string(uint32_t max_len = 1u << 20) {
        uint64_t at = off_;
        uint32_t n = u32();
        if (n > max_len)
            throw FormatError("string length " + std::to_string(n) + " out of range at byte " + std::to_string(at));
        std::string s(n, '\0');
        if (n) read_exact(s.data(), n);
        return s;
    }

private:
    std::istream& in_;
    uint64_t off_ = 0;
};

}  // namespace nnc
