#include "trcomm/mirrors.hpp"

#include "trcomm/errors.hpp"

namespace trcomm {

SignalSet time_reverse_signals(const SignalSet& s, const Physics& phys) {
  SignalSet out = s;
  const int nt = s.nt();
  for (int k = 0; k < s.antennas(); ++k)
    for (int c = 0; c < s.channels(); ++c) {
      if (s.channel_of(c) < 0)
        throw DimensionError(
            "time_reverse_signals: unknown channel mapping for partial signal");
      const double sgn = phys.sign_mask[static_cast<std::size_t>(s.channel_of(c))];
      for (int i = 0; i < nt; ++i)
        out.at(k, c, i) = sgn * s.at(k, c, nt - 1 - i);
    }
  return out;
}

FieldMovie time_reverse_field(const FieldMovie& q, const Physics& phys) {
  FieldMovie out = q;
  const int nt = q.nt();
  for (int n = 0; n < nt; ++n)
    for (int c = 0; c < kChannels; ++c) {
      const double sgn = phys.sign_mask[static_cast<std::size_t>(c)];
      const auto& src = q[nt - 1 - n].ch[static_cast<std::size_t>(c)];
      auto& dst = out[n].ch[static_cast<std::size_t>(c)];
      for (std::size_t x = 0; x < src.size(); ++x) dst[x] = sgn * src[x];
    }
  return out;
}

}  // namespace trcomm
