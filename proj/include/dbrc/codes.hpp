#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "dbrc/matrix.hpp"

namespace dbrc {

// Bit-packed binary codes. Bit b of item i is 1 for code +1 and 0 for -1,
// stored LSB-first in ceil(bits/64) words per item; padding bits are zero.
struct CodeSet {
    std::uint32_t bits = 0;
    std::uint64_t count = 0;
    std::vector<std::uint64_t> words;

    std::size_t words_per_item() const { return (bits + 63u) / 64u; }

    std::span<const std::uint64_t> item(std::size_t i) const {
        return {words.data() + i * words_per_item(), words_per_item()};
    }
};

// Packs a matrix with entries in {-1, +1}; anything else is rejected.
CodeSet pack(const DenseMatrix& codes);

DenseMatrix unpack(const CodeSet& set);

// XOR popcount between item i of a and item j of b. Bit lengths must match.
std::uint32_t hamming(const CodeSet& a, std::size_t i, const CodeSet& b, std::size_t j);

// Codes file: magic "BHC1", bits (u32 LE), count (u64 LE), words (u64 LE,
// item-major).
void save_codes(const std::filesystem::path& path, const CodeSet& set);
CodeSet load_codes(const std::filesystem::path& path);

}  // namespace dbrc
