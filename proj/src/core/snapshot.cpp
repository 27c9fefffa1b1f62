#include "snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

static_assert(sizeof(double) == 8, "f64 layout assumed");

namespace lllab {

namespace {

constexpr char kMagic[8] = {'L', 'L', 'F', 'I', 'E', 'L', 'D', '1'};

struct Header {
    uint32_t kind = 0;
    uint32_t n = 0;
    double length = 0.0;
};

void write_header(std::ofstream& out, SnapshotKind kind, const Grid& g) {
    out.write(kMagic, sizeof(kMagic));
    const uint32_t k = static_cast<uint32_t>(kind);
    const uint32_t n = static_cast<uint32_t>(g.n);
    out.write(reinterpret_cast<const char*>(&k), sizeof(k));
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out.write(reinterpret_cast<const char*>(&g.length), sizeof(g.length));
}

Header read_header(std::ifstream& in, const std::string& path) {
    char magic[8];
    Header h;
    in.read(magic, sizeof(magic));
    in.read(reinterpret_cast<char*>(&h.kind), sizeof(h.kind));
    in.read(reinterpret_cast<char*>(&h.n), sizeof(h.n));
    in.read(reinterpret_cast<char*>(&h.length), sizeof(h.length));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("not a field snapshot: " + path);
    if (h.kind != 1 && h.kind != 2)
        throw std::runtime_error("unknown field kind in " + path);
    if (h.n < 8 || h.n % 2 != 0 || !(h.length > 0.0))
        throw std::runtime_error("corrupt snapshot header in " + path);
    return h;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    return in;
}

std::vector<double> read_payload(std::ifstream& in, size_t count, const std::string& path) {
    std::vector<double> data(count);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw std::runtime_error("truncated snapshot payload in " + path);
    return data;
}

}  // namespace

SnapshotKind probe_snapshot(const std::string& path) {
    std::ifstream in = open_in(path);
    return static_cast<SnapshotKind>(read_header(in, path).kind);
}

void write_snapshot(const std::string& path, const WaveField& psi) {
    std::ofstream out = open_out(path);
    write_header(out, SnapshotKind::cplx, *psi.grid);
    std::vector<double> data;
    data.reserve(2 * psi.psi.size());
    for (const cplx& z : psi.psi) {
        data.push_back(z.real());
        data.push_back(z.imag());
    }
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write failure on " + path);
}

void write_snapshot(const std::string& path, const Magnetization& m) {
    std::ofstream out = open_out(path);
    write_header(out, SnapshotKind::mag3, *m.grid);
    std::vector<double> data;
    data.reserve(3 * m.m1.size());
    for (size_t j = 0; j < m.m1.size(); ++j) {
        data.push_back(m.m1[j]);
        data.push_back(m.m2[j]);
        data.push_back(m.m3[j]);
    }
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write failure on " + path);
}

WaveField read_wavefield_snapshot(const std::string& path) {
    std::ifstream in = open_in(path);
    const Header h = read_header(in, path);
    if (h.kind != static_cast<uint32_t>(SnapshotKind::cplx))
        throw std::runtime_error("snapshot " + path + " does not hold a complex field");
    GridPtr grid = make_grid(static_cast<int>(h.n), h.length);
    const std::vector<double> data = read_payload(in, 2 * h.n, path);
    WaveField psi = make_wavefield(grid);
    for (size_t j = 0; j < h.n; ++j) psi.psi[j] = cplx(data[2 * j], data[2 * j + 1]);
    return psi;
}

Magnetization read_magnetization_snapshot(const std::string& path) {
    std::ifstream in = open_in(path);
    const Header h = read_header(in, path);
    if (h.kind != static_cast<uint32_t>(SnapshotKind::mag3))
        throw std::runtime_error("snapshot " + path + " does not hold a magnetization");
    GridPtr grid = make_grid(static_cast<int>(h.n), h.length);
    const std::vector<double> data = read_payload(in, 3 * h.n, path);
    Magnetization m = make_magnetization(grid);
    for (size_t j = 0; j < h.n; ++j) {
        m.m1[j] = data[3 * j];
        m.m2[j] = data[3 * j + 1];
        m.m3[j] = data[3 * j + 2];
    }
    return m;
}

}  // namespace lllab
