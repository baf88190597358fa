#include "dbrc/codes.hpp"

#include <bit>
#include <fstream>
#include <string>
#include <string_view>

#include "dbrc/io_util.hpp"

namespace dbrc {

namespace {
constexpr char kMagic[4] = {'B', 'H', 'C', '1'};
}

CodeSet pack(const DenseMatrix& codes) {
    CodeSet set;
    set.bits = static_cast<std::uint32_t>(codes.cols());
    set.count = codes.rows();
    set.words.assign(codes.rows() * set.words_per_item(), 0u);

    const std::size_t wpi = set.words_per_item();
    for (std::size_t i = 0; i < codes.rows(); ++i) {
        std::uint64_t* item = set.words.data() + i * wpi;
        const double* row = codes.data() + i * codes.cols();
        for (std::size_t b = 0; b < codes.cols(); ++b) {
            if (row[b] == 1.0) {
                item[b / 64] |= std::uint64_t{1} << (b % 64);
            } else if (row[b] != -1.0) {
                throw InvalidArgument("pack: code entries must be -1 or +1");
            }
        }
    }
    return set;
}

DenseMatrix unpack(const CodeSet& set) {
    DenseMatrix codes(set.count, set.bits);
    const std::size_t wpi = set.words_per_item();
    for (std::size_t i = 0; i < set.count; ++i) {
        const std::uint64_t* item = set.words.data() + i * wpi;
        double* row = codes.data() + i * set.bits;
        for (std::size_t b = 0; b < set.bits; ++b) {
            row[b] = (item[b / 64] >> (b % 64)) & 1u ? 1.0 : -1.0;
        }
    }
    return codes;
}

std::uint32_t hamming(const CodeSet& a, std::size_t i, const CodeSet& b, std::size_t j) {
    if (a.bits != b.bits) throw InvalidArgument("hamming: bit lengths differ");
    const std::size_t wpi = a.words_per_item();
    const std::uint64_t* pa = a.words.data() + i * wpi;
    const std::uint64_t* pb = b.words.data() + j * wpi;
    std::uint32_t dist = 0;
    for (std::size_t w = 0; w < wpi; ++w) dist += std::popcount(pa[w] ^ pb[w]);
    return dist;
}

void save_codes(const std::filesystem::path& path, const CodeSet& set) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("save_codes: cannot open " + path.string());
    out.write(kMagic, 4);
    write_u32_le(out, set.bits);
    write_u64_le(out, set.count);
    for (std::uint64_t w : set.words) write_u64_le(out, w);
    if (!out) throw FormatError("save_codes: write failed for " + path.string());
}

CodeSet load_codes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load_codes: cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string_view(magic, 4) != std::string_view(kMagic, 4)) {
        throw FormatError("load_codes: bad magic in " + path.string());
    }
    CodeSet set;
    set.bits = read_u32_le(in);
    set.count = read_u64_le(in);
    if (set.bits == 0) throw FormatError("load_codes: zero bit length");
    set.words.resize(set.count * set.words_per_item());
    for (std::uint64_t& w : set.words) w = read_u64_le(in);
    return set;
}

}  // namespace dbrc
