#pragma once

// Binary wavefunction checkpoints.
//
// Little-endian layout: magic "SYMW1", u32 N, u32 d, then per spatial axis
// (f64 min, f64 max, u32 points), u8 boundary (0 Dirichlet, 1 periodic), then
// every amplitude as (f64 re, f64 im) in row-major grid order.

#include <filesystem>
#include <iosfwd>

#include "symw/grid.hpp"

namespace symw {

void write_checkpoint(std::ostream& out, const WaveFunction& psi);
WaveFunction read_checkpoint(std::istream& in, std::size_t budget = default_memory_budget());

void write_checkpoint(const std::filesystem::path& path, const WaveFunction& psi);
WaveFunction read_checkpoint(const std::filesystem::path& path, std::size_t budget = default_memory_budget());

}  // namespace symw
