#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>

#include "dbrc/common.hpp"

namespace dbrc {

// Little-endian binary primitives shared by the codes and checkpoint formats.

inline void write_u32_le(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFFu);
    out.write(reinterpret_cast<const char*>(b), 4);
}

inline void write_u64_le(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFFu);
    out.write(reinterpret_cast<const char*>(b), 8);
}

inline void write_f64_le(std::ostream& out, double v) {
    write_u64_le(out, std::bit_cast<std::uint64_t>(v));
}

inline std::uint32_t read_u32_le(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw FormatError("unexpected end of file");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

inline std::uint64_t read_u64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw FormatError("unexpected end of file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

inline double read_f64_le(std::istream& in) {
    return std::bit_cast<double>(read_u64_le(in));
}

}  // namespace dbrc
