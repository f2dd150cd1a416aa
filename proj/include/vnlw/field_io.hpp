#pragma once

#include "vnlw/grid.hpp"

#include <string>

namespace vnlw {

// Binary field snapshot: a 32-byte little-endian header (8-byte magic
// "VNLWFLD1", u32 N, u32 hermitian flag, f64 time, u64 format version)
// followed by interleaved (re, im) double pairs in row-major lattice
// (DFT storage) order. A JSON sidecar <path>.json carries grid metadata.

void write_field_snapshot(const std::string& path, const SpectralField& f,
                          double time);

struct FieldSnapshot {
    SpectralField field;
    double time = 0.0;
};

FieldSnapshot read_field_snapshot(const std::string& path);

// FNV-1a 64-bit content hash of a file, as "fnv1a64:<hex>"
std::string file_content_hash(const std::string& path);

} // namespace vnlw
