#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "trcomm/array_ops.hpp"
#include "trcomm/signal.hpp"

namespace trcomm {

enum class SchemeKind { Gradient, GradientReg, MinNorm, MinNormReg, Rls };
enum class BetaRule { Fixed, ExactLineSearch };

struct SchemeConfig {
  SchemeKind scheme = SchemeKind::Gradient;
  BetaRule beta_rule = BetaRule::ExactLineSearch;
  double beta = 1.0;    // used by the Fixed rule
  double lambda = 0.0;  // Tikhonov weight; > 0 meaningful for *_reg / rls
  int max_iter = 50;
  double tol = 1e-3;                 // relative residual stop threshold
  std::vector<double> user_weights;  // per-user weights; empty = all 1
  double noise_level = 0.0;  // additive Gaussian noise on measured signals
  std::uint64_t noise_seed = 0;

  void validate() const;
};

struct SchemeTraceRow {
  int iter = 0;
  double cost = 0.0;      // the scheme's own objective at this iterate
  double residual = 0.0;  // ||A r - s_tilde|| in the (weighted) user norm
  double base_energy = 0.0;  // ||r||_Z
  double beta = 0.0;         // step size taken leaving this iterate
  std::vector<double> user_energy;  // received energy per user
};

struct SchemeTrace {
  std::vector<SchemeTraceRow> rows;
  bool converged = false;
  int iterations = 0;  // update steps actually taken
};

struct SchemeResult {
  SignalSet r;
  SchemeTrace trace;
};

// The ideal signal: alpha(t) on user_index's designated channel, zero
// elsewhere.
SignalSet make_pilot(const std::vector<double>& alpha, int user_index,
                     int user_count, const Grid& g, const MeasurementSpec& spec);

SchemeResult run_gradient(const SignalSet& s_tilde, const CommOperator& op,
                          const SchemeConfig& cfg);
SchemeResult run_gradient_reg(const SignalSet& s_tilde, const CommOperator& op,
                              const SchemeConfig& cfg);
SchemeResult run_min_norm(const SignalSet& s_tilde, const CommOperator& op,
                          const SchemeConfig& cfg);
SchemeResult run_min_norm_reg(const SignalSet& s_tilde, const CommOperator& op,
                              const SchemeConfig& cfg);
SchemeResult run_rls(const SignalSet& s_tilde, const CommOperator& op,
                     const SchemeConfig& cfg);
SchemeResult run_scheme(const SignalSet& s_tilde, const CommOperator& op,
                        const SchemeConfig& cfg);

// ||A||^2 estimated by power iteration on A*A (10 steps by default); the
// basis of the default lambda = 1e-2 * ||A||^2.
double estimate_op_norm2(const CommOperator& op, int iters = 10,
                         std::uint64_t seed = 1);

void write_trace_csv(const std::string& path, const SchemeTrace& trace);

// Dense diagnosis of the near-null subspaces Z_0 and Z_eps of A.
struct NullSpaceReport {
  int rows = 0, cols = 0;
  std::vector<double> singular_values;             // descending; cols entries
  std::vector<std::vector<double>> right_vectors;  // V columns, weighted coords
  std::vector<double> domain_weights;              // sqrt of Z quadrature weights

  int null_dim(double rel_tol = 1e-10) const;
  // Fraction of ||r||_Z^2 carried by right singular directions with
  // sigma < eps * sigma_max.
  double energy_fraction(const SignalSet& r, double eps) const;
};

NullSpaceReport null_space_probe(const CommOperator& op, int max_dim = 4096);

}  // namespace trcomm
