#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "kpforge/spectral_field.hpp"

namespace kpforge {

/// KPF1 binary layout, all little-endian:
///   "KPF1" | u32 n | u32 N | f64 L | N^n f64 samples (row-major)
std::vector<std::uint8_t> encode_kpf(const SpectralField& f);
SpectralField decode_kpf(const std::vector<std::uint8_t>& bytes);

void write_kpf(const std::filesystem::path& path, const SpectralField& f);
SpectralField read_kpf(const std::filesystem::path& path);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);

}  // namespace kpforge
