#pragma once
#include <string>

#include "trcomm/field.hpp"
#include "trcomm/grid.hpp"
#include "trcomm/signal.hpp"

namespace trcomm {

// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

// Field-movie dump: ASCII header line "trcomm-field v1 nx ny nt N" followed
// by nt*N*nx*ny raw little-endian 64-bit floats (frame, channel, row-major).
void write_field_movie(const std::string& path, const FieldMovie& u,
                       const Grid& g);
FieldMovie read_field_movie(const std::string& path, Grid& g_out);

// SignalSet dump: CSV with header "antenna,channel,t,value".
void write_signal_csv(const std::string& path, const SignalSet& s);

}  // namespace trcomm
