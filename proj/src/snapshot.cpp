#include "tgs/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <vector>

namespace tgs {

namespace {

constexpr char kMagic[4] = {'T', 'G', 'S', '1'};
constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t n) {
    std::uint64_t h = kFnvOffset;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<std::uint64_t>(data[i]);
        h *= kFnvPrime;
    }
    return h;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>((v >> (8 * b)) & 0xffu));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>((v >> (8 * b)) & 0xffu));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

struct Reader {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos = 0;

    bool has(std::size_t n) const { return size - pos >= n; }

    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(data[pos + b]) << (8 * b);
        pos += 4;
        return v;
    }

    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(data[pos + b]) << (8 * b);
        pos += 8;
        return v;
    }

    double f64() { return std::bit_cast<double>(u64()); }
};

}  // namespace

void write_snapshot(const State& state, double gamma, const std::string& path) {
    const Grid& g = state.n.grid;
    const std::int64_t count = g.total_cells();
    std::vector<std::uint8_t> payload;
    payload.reserve(static_cast<std::size_t>(32 + 16 * count));
    put_u32(payload, static_cast<std::uint32_t>(g.dim));
    put_u32(payload, static_cast<std::uint32_t>(g.cells_per_axis));
    put_f64(payload, g.half_width);
    put_f64(payload, gamma);
    put_f64(payload, state.t);
    for (std::int64_t i = 0; i < count; ++i) put_f64(payload, state.n[i]);
    for (std::int64_t i = 0; i < count; ++i) put_f64(payload, state.c1[i]);
    const std::uint64_t sum = fnv1a(payload.data(), payload.size());

    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw SnapshotError("cannot open snapshot file for writing: " + path);
    bool ok = std::fwrite(kMagic, 1, 4, f) == 4;
    ok = ok && std::fwrite(payload.data(), 1, payload.size(), f) == payload.size();
    std::vector<std::uint8_t> tail;
    put_u64(tail, sum);
    ok = ok && std::fwrite(tail.data(), 1, tail.size(), f) == tail.size();
    ok = (std::fclose(f) == 0) && ok;
    if (!ok) throw SnapshotError("short write while saving snapshot: " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw SnapshotError("cannot open snapshot file: " + path);
    std::vector<std::uint8_t> bytes;
    std::uint8_t buf[1 << 16];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) bytes.insert(bytes.end(), buf, buf + got);
    const bool read_err = std::ferror(f) != 0;
    std::fclose(f);
    if (read_err) throw SnapshotError("read error on snapshot file: " + path);

    if (bytes.size() < 4 + 32 + 8) throw SnapshotError("snapshot file too short: " + path);
    if (std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw FormatVersionMismatch("snapshot magic is not TGS1: " + path);

    const std::uint8_t* payload = bytes.data() + 4;
    const std::size_t payload_size = bytes.size() - 4 - 8;
    Reader tail{bytes.data() + 4 + payload_size, 8, 0};
    const std::uint64_t stored = tail.u64();
    const std::uint64_t computed = fnv1a(payload, payload_size);
    if (stored != computed) throw SnapshotError("snapshot checksum mismatch: " + path);

    Reader r{payload, payload_size, 0};
    const std::uint32_t dim = r.u32();
    const std::uint32_t cells = r.u32();
    const double half_width = r.f64();
    const double gamma = r.f64();
    const double t = r.f64();
    if (dim != 1 && dim != 2)
        throw SnapshotError("snapshot dimension out of range: " + std::to_string(dim));
    std::size_t count = cells;
    if (dim == 2) count *= cells;
    // Header: u32 dim + u32 cells + f64 half_width + f64 gamma + f64 t = 32 bytes.
    if (payload_size != 32 + 16 * count)
        throw SnapshotError("snapshot size inconsistent with its header: " + path);

    Grid grid{static_cast<int>(dim), static_cast<int>(cells), half_width};
    Snapshot snap;
    snap.gamma = gamma;
    snap.state.t = t;
    snap.state.n = Field(grid);
    snap.state.c1 = Field(grid);
    for (std::size_t i = 0; i < count; ++i) snap.state.n[static_cast<std::int64_t>(i)] = r.f64();
    for (std::size_t i = 0; i < count; ++i) snap.state.c1[static_cast<std::int64_t>(i)] = r.f64();
    return snap;
}

}  // namespace tgs
