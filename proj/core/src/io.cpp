#include "trcomm/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "trcomm/errors.hpp"

namespace trcomm {

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

void write_doubles_le(std::ofstream& f, const std::vector<double>& v) {
  // Little-endian on-disk layout; byte-swap would go here on BE hosts.
  static_assert(sizeof(double) == 8);
  f.write(reinterpret_cast<const char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(double)));
}

}  // namespace

void write_field_movie(const std::string& path, const FieldMovie& u,
                       const Grid& g) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("write_field_movie: cannot open " + path);
  f << "trcomm-field v1 " << g.nx << " " << g.ny << " " << g.nt << " "
    << kChannels << "\n";
  for (const auto& frame : u.frames)
    for (const auto& c : frame.ch) write_doubles_le(f, c);
  if (!f) throw ConfigError("write_field_movie: write failed for " + path);
}

FieldMovie read_field_movie(const std::string& path, Grid& g_out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("read_field_movie: cannot open " + path);
  std::string header;
  std::getline(f, header);
  std::istringstream hs(header);
  std::string magic, ver;
  int nx = 0, ny = 0, nt = 0, nc = 0;
  hs >> magic >> ver >> nx >> ny >> nt >> nc;
  if (magic != "trcomm-field" || ver != "v1" || nc != kChannels || !hs)
    throw ConfigError("read_field_movie: bad header in " + path);
  g_out.nx = nx;
  g_out.ny = ny;
  g_out.nt = nt;
  FieldMovie u;
  u.frames.assign(static_cast<std::size_t>(nt), FieldState{});
  const std::size_t cells =
      static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  for (auto& frame : u.frames)
    for (auto& c : frame.ch) {
      c.assign(cells, 0.0);
      f.read(reinterpret_cast<char*>(c.data()),
             static_cast<std::streamsize>(cells * sizeof(double)));
      if (!f) throw ConfigError("read_field_movie: truncated file " + path);
    }
  return u;
}

void write_signal_csv(const std::string& path, const SignalSet& s) {
  std::ofstream f(path);
  if (!f) throw ConfigError("write_signal_csv: cannot open " + path);
  f << "antenna,channel,t,value\n";
  for (int k = 0; k < s.antennas(); ++k)
    for (int c = 0; c < s.channels(); ++c)
      for (int i = 0; i < s.nt(); ++i)
        f << k << "," << s.channel_of(c) << "," << format_double(i * s.dt())
          << "," << format_double(s.at(k, c, i)) << "\n";
  if (!f) throw ConfigError("write_signal_csv: write failed for " + path);
}

}  // namespace trcomm
