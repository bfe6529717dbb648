#include "qmaps/grid_io.hpp"

#include "qmaps/errors.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace qmaps {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

void write_grid(std::ostream& out, const char* magic, std::uint32_t size,
                const RealMatrix& values) {
  out.write(magic, 4);
  write_u32(out, size);
  write_u32(out, 0);
  write_u32(out, 0);
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows =
      values;
  out.write(reinterpret_cast<const char*>(rows.data()),
            static_cast<std::streamsize>(rows.size() * sizeof(double)));
  if (!out)
    throw std::runtime_error("grid snapshot: write failed");
}

// Returns the stored size field after checking magic and reserved words.
std::uint32_t read_header(std::istream& in, const char* magic) {
  std::array<char, 4> got{};
  in.read(got.data(), 4);
  if (!in || std::memcmp(got.data(), magic, 4) != 0)
    throw DomainError(std::string("grid snapshot: missing magic ") + magic);
  const std::uint32_t size = read_u32(in);
  const std::uint32_t reserved = read_u32(in);
  const std::uint32_t padding = read_u32(in);
  if (!in || reserved != 0 || padding != 0)
    throw DomainError("grid snapshot: malformed header");
  return size;
}

RealMatrix read_values(std::istream& in, std::uint32_t side) {
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows(side,
                                                                              side);
  in.read(reinterpret_cast<char*>(rows.data()),
          static_cast<std::streamsize>(rows.size() * sizeof(double)));
  if (!in)
    throw DomainError("grid snapshot: truncated data");
  return rows;
}

} // namespace

void write_wigner_binary(std::ostream& out, const WignerGrid& w) {
  write_grid(out, "WGRD", static_cast<std::uint32_t>(w.spec().dimension()),
             w.values());
}

WignerGrid read_wigner_binary(std::istream& in) {
  const std::uint32_t n = read_header(in, "WGRD");
  if (n == 0)
    throw DomainError("grid snapshot: N = 0");
  return WignerGrid(PhaseSpaceSpec(static_cast<int>(n)), read_values(in, 2 * n));
}

void write_classical_binary(std::ostream& out, const ClassicalDensity& rho) {
  write_grid(out, "CGRD", static_cast<std::uint32_t>(rho.side()), rho.values());
}

ClassicalDensity read_classical_binary(std::istream& in) {
  const std::uint32_t g = read_header(in, "CGRD");
  if (g == 0)
    throw DomainError("grid snapshot: G = 0");
  return ClassicalDensity(read_values(in, g));
}

void write_grid_csv(std::ostream& out, const RealMatrix& values) {
  const auto precision = out.precision(17);
  out << "q,p,value\n";
  for (Eigen::Index q = 0; q < values.rows(); ++q)
    for (Eigen::Index p = 0; p < values.cols(); ++p)
      out << q << ',' << p << ',' << values(q, p) << '\n';
  out.precision(precision);
}

void save_wigner(const std::filesystem::path& path, const WignerGrid& w) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open " + path.string());
  write_wigner_binary(out, w);
}

void save_classical(const std::filesystem::path& path, const ClassicalDensity& rho) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open " + path.string());
  write_classical_binary(out, rho);
}

} // namespace qmaps
