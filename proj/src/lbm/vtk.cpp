#include "fibersim/lbm/vtk.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "fibersim/core/error.hpp"
#include "fibersim/lbm/solver.hpp"

namespace fibersim::lbm {

namespace {

// Legacy VTK binary data is big-endian.
void put_be(std::vector<char>& out, float v) {
  std::uint32_t u;
  std::memcpy(&u, &v, sizeof(u));
  if constexpr (std::endian::native == std::endian::little) u = __builtin_bswap32(u);
  char b[4];
  std::memcpy(b, &u, 4);
  out.insert(out.end(), b, b + 4);
}

}  // namespace

void write_vtk(const std::string& path, const LbmSolver& solver, const VtkScales& scales) {
  const auto [nx, ny, nz] = solver.dims();
  std::ofstream os(path, std::ios::binary);
  require(static_cast<bool>(os), ErrorCode::Io, "cannot open '" + path + "' for writing");
  const std::size_t n = static_cast<std::size_t>(nx) * ny * nz;
  os << "# vtk DataFile Version 3.0\nfibersim flow field\nBINARY\nDATASET STRUCTURED_POINTS\n"
     << "DIMENSIONS " << nx << ' ' << ny << ' ' << nz << '\n'
     << "ORIGIN " << 0.5 * scales.dx << ' ' << 0.5 * scales.dx << ' ' << 0.5 * scales.dx << '\n'
     << "SPACING " << scales.dx << ' ' << scales.dx << ' ' << scales.dx << '\n'
     << "POINT_DATA " << n << '\n';

  std::vector<char> buf;
  buf.reserve(4 * n);
  os << "SCALARS density float 1\nLOOKUP_TABLE default\n";
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) put_be(buf, static_cast<float>(solver.density(x, y, z) * scales.density));
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));

  buf.clear();
  buf.reserve(12 * n);
  os << "\nVECTORS velocity float\n";
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) {
        const Vec3 u = solver.velocity(x, y, z) * scales.velocity;
        for (int k = 0; k < 3; ++k) put_be(buf, static_cast<float>(u[k]));
      }
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  os << '\n';
  require(static_cast<bool>(os), ErrorCode::Io, "failed writing '" + path + "'");
}

}  // namespace fibersim::lbm
