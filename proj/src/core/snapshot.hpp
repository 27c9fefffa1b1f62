#ifndef LLLAB_CORE_SNAPSHOT_HPP
#define LLLAB_CORE_SNAPSHOT_HPP

#include "mapping.hpp"

#include <string>

namespace lllab {

// On-disk field snapshot (*.field), little-endian:
//   bytes 0..7   magic "LLFIELD1"
//   bytes 8..11  u32 kind (1 = CPLX, 2 = MAG3)
//   bytes 12..15 u32 n
//   bytes 16..23 f64 box length
//   payload      n * (2 | 3) f64 samples, interleaved
//                CPLX: re, im; MAG3: m1, m2, m3
enum class SnapshotKind : uint32_t { cplx = 1, mag3 = 2 };

SnapshotKind probe_snapshot(const std::string& path);

void write_snapshot(const std::string& path, const WaveField& psi);
void write_snapshot(const std::string& path, const Magnetization& m);

WaveField read_wavefield_snapshot(const std::string& path);
Magnetization read_magnetization_snapshot(const std::string& path);

}  // namespace lllab

#endif
