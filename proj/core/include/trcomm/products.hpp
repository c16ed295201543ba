#pragma once
#include <array>
#include <vector>

#include "trcomm/field.hpp"
#include "trcomm/grid.hpp"
#include "trcomm/medium.hpp"
#include "trcomm/signal.hpp"

namespace trcomm {

// <a,b> on Z or Z-hat: sum_k sum_c sum_t w_k * a*b * (trapezoid dt).
// user_weights (per antenna, >= 0) realize the weighted inner product;
// empty means all weights 1.
double inner_product_signals(const SignalSet& a, const SignalSet& b,
                             const std::vector<double>& user_weights = {});
double norm_signals(const SignalSet& a,
                    const std::vector<double>& user_weights = {});

// Energy inner product on U: <u,v>_U = int int <Gamma u, v> dx dt,
// midpoint in space, trapezoid in time.
double inner_product_fields(const FieldMovie& u, const FieldMovie& v,
                            const Medium& m, const Grid& g);

// Total energy of one frame: 1/2 int <Gamma u, u> dx.
double energy_total(const FieldState& u, const Medium& m, const Grid& g);

// Pointwise energy density E(x) = 1/2 <Gamma u, u>.
std::vector<double> energy_density(const FieldState& u, const Medium& m,
                                   const Grid& g);

// Energy flux F_i = 1/2 <D^i u, u>; acoustic p*v, EM Poynting reduction
// (F_x = -Ez*Hy, F_y = +Ez*Hx).
std::array<std::vector<double>, 2> flux(const FieldState& u, const Medium& m,
                                        const Grid& g);

}  // namespace trcomm
