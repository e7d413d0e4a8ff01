#include "symw/checkpoint.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "symw/error.hpp"

namespace symw {
namespace {

constexpr std::array<char, 5> kMagic{'S', 'Y', 'M', 'W', '1'};

template <typename T>
void put(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get(std::istream& in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), bytes.size())) raise(ErrorCode::IoError, "truncated checkpoint");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_checkpoint(std::ostream& out, const WaveFunction& psi) {
  const GridSpec& spec = psi.grid().spec();
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(spec.num_particles));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(spec.dims_per_particle));
  for (const Axis& axis : spec.axes) {
    put<double>(out, axis.min);
    put<double>(out, axis.max);
    put<std::uint32_t>(out, axis.points);
  }
  put<std::uint8_t>(out, static_cast<std::uint8_t>(spec.boundary));
  for (const cplx& z : psi.amplitudes()) {
    put<double>(out, z.real());
    put<double>(out, z.imag());
  }
  if (!out) raise(ErrorCode::IoError, "failed writing checkpoint");
}

WaveFunction read_checkpoint(std::istream& in, std::size_t budget) {
  std::array<char, 5> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) raise(ErrorCode::IoError, "bad checkpoint magic");
  GridSpec spec;
  spec.num_particles = static_cast<int>(get<std::uint32_t>(in));
  spec.dims_per_particle = static_cast<int>(get<std::uint32_t>(in));
  if (spec.dims_per_particle < 1 || spec.dims_per_particle > 3) raise(ErrorCode::IoError, "bad dimension count");
  for (int k = 0; k < spec.dims_per_particle; ++k) {
    Axis axis;
    axis.min = get<double>(in);
    axis.max = get<double>(in);
    axis.points = get<std::uint32_t>(in);
    spec.axes.push_back(axis);
  }
  const auto boundary = get<std::uint8_t>(in);
  if (boundary > 1) raise(ErrorCode::IoError, "bad boundary flag");
  spec.boundary = static_cast<Boundary>(boundary);
  GridHandle grid = build_grid(spec, budget);
  std::vector<cplx> amps(grid->size());
  for (cplx& z : amps) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    z = cplx(re, im);
  }
  return WaveFunction(std::move(grid), std::move(amps));
}

void write_checkpoint(const std::filesystem::path& path, const WaveFunction& psi) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot open " + path.string());
  write_checkpoint(out, psi);
}

WaveFunction read_checkpoint(const std::filesystem::path& path, std::size_t budget) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open " + path.string());
  return read_checkpoint(in, budget);
}

}  // namespace symw
