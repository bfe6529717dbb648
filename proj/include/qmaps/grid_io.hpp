#pragma once

// Binary grid snapshots: a 16-byte header (4-byte magic, u32 size, two u32
// reserved words = 0, all little-endian) followed by the grid in row-major order as
// little-endian float64. "WGRD" stores N for a 2N x 2N Wigner lattice, "CGRD"
// stores the side G of a G x G classical grid.

#include "qmaps/classical.hpp"
#include "qmaps/wigner.hpp"

#include <filesystem>
#include <iosfwd>

namespace qmaps {

void write_wigner_binary(std::ostream& out, const WignerGrid& w);
WignerGrid read_wigner_binary(std::istream& in);

void write_classical_binary(std::ostream& out, const ClassicalDensity& rho);
ClassicalDensity read_classical_binary(std::istream& in);

/// "q,p,value" rows with 17 significant digits.
void write_grid_csv(std::ostream& out, const RealMatrix& values);

void save_wigner(const std::filesystem::path& path, const WignerGrid& w);
void save_classical(const std::filesystem::path& path, const ClassicalDensity& rho);

} // namespace qmaps
