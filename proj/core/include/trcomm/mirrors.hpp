#pragma once
#include "trcomm/field.hpp"
#include "trcomm/physics.hpp"
#include "trcomm/signal.hpp"

namespace trcomm {

// Time-reversal mirrors T / T-hat on signals: sample i -> nt-1-i, channel c
// multiplied by sign_mask of the field channel it maps to.
SignalSet time_reverse_signals(const SignalSet& s, const Physics& phys);

// Time-reversal operator S on fields: frame i -> nt-1-i, per-channel signs.
FieldMovie time_reverse_field(const FieldMovie& q, const Physics& phys);

}  // namespace trcomm
