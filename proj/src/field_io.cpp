#include "kpforge/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "kpforge/error.hpp"

namespace kpforge {

namespace {

constexpr char kMagic[4] = {'K', 'P', 'F', '1'};

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  std::uint8_t raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
  out.insert(out.end(), raw, raw + sizeof(T));
}

template <typename T>
T get_le(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw IoError("KPF1: truncated file");
  std::uint8_t raw[sizeof(T)];
  std::memcpy(raw, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
  pos += sizeof(T);
  T value;
  std::memcpy(&value, raw, sizeof(T));
  return value;
}

}  // namespace

std::vector<std::uint8_t> encode_kpf(const SpectralField& f) {
  const GridSpec& g = f.grid();
  std::vector<std::uint8_t> out;
  out.reserve(20 + 8 * g.size());
  out.insert(out.end(), kMagic, kMagic + 4);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.n));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.N));
  put_le<double>(out, g.L);
  for (double v : f.samples()) put_le<double>(out, v);
  return out;
}

SpectralField decode_kpf(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) throw IoError("KPF1: bad magic");
  std::size_t pos = 4;
  const auto n = get_le<std::uint32_t>(bytes, pos);
  const auto N = get_le<std::uint32_t>(bytes, pos);
  const auto L = get_le<double>(bytes, pos);
  GridSpec grid;
  try {
    grid = make_grid(static_cast<int>(n), static_cast<int>(N), L);
  } catch (const ParameterError& e) {
    throw IoError(std::string("KPF1: invalid header: ") + e.what());
  }
  if (bytes.size() != pos + 8 * grid.size()) throw IoError("KPF1: payload size does not match header");
  std::vector<double> samples(grid.size());
  for (auto& v : samples) v = get_le<double>(bytes, pos);
  return SpectralField::from_samples(grid, std::move(samples));
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_kpf(const std::filesystem::path& path, const SpectralField& f) {
  auto bytes = encode_kpf(f);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

SpectralField read_kpf(const std::filesystem::path& path) { return decode_kpf(read_bytes(path)); }

}  // namespace kpforge
