#include "fibersim/harness/series.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "fibersim/core/error.hpp"

namespace fibersim::harness {

TimeSeries body_series(const TimeSeries& series, int body) {
  TimeSeries out;
  for (const Sample& s : series)
    if (s.body == body) out.push_back(s);
  return out;
}

void write_csv(const std::filesystem::path& path, const TimeSeries& series) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  require(f != nullptr, ErrorCode::Io, "cannot write " + path.string());
  std::fputs("t_s,body_id,x,y,z,ux,uy,uz,wx,wy,wz\n", f);
  for (const Sample& s : series) {
    std::fprintf(f, "%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.body,
                 s.x.x(), s.x.y(), s.x.z(), s.u.x(), s.u.y(), s.u.z(), s.w.x(), s.w.y(), s.w.z());
  }
  const bool ok = std::ferror(f) == 0;
  const bool closed = std::fclose(f) == 0;
  require(ok && closed, ErrorCode::Io, "write failed for " + path.string());
}

TimeSeries read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  require(line == "t_s,body_id,x,y,z,ux,uy,uz,wx,wy,wz", ErrorCode::Io,
          path.string() + ": unexpected header");
  TimeSeries out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Sample s;
    double v[11];
    std::istringstream ls(line);
    for (double& x : v) {
      std::string cell;
      require(static_cast<bool>(std::getline(ls, cell, ',')), ErrorCode::Io,
              path.string() + ": short row");
      x = std::stod(cell);
    }
    s.t = v[0];
    s.body = static_cast<int>(v[1]);
    s.x = Vec3(v[2], v[3], v[4]);
    s.u = Vec3(v[5], v[6], v[7]);
    s.w = Vec3(v[8], v[9], v[10]);
    out.push_back(s);
  }
  return out;
}

}  // namespace fibersim::harness
