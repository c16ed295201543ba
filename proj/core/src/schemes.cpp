#include "trcomm/schemes.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <fstream>
#include <limits>

#include "trcomm/errors.hpp"
#include "trcomm/io.hpp"
#include "trcomm/products.hpp"
#include "trcomm/rng.hpp"

namespace trcomm {

void SchemeConfig::validate() const {
  if (lambda < 0.0) throw ConfigError("SchemeConfig: lambda must be >= 0");
  if (max_iter < 1) throw ConfigError("SchemeConfig: max_iter must be >= 1");
  if (!(tol > 0.0)) throw ConfigError("SchemeConfig: tol must be > 0");
  if (beta_rule == BetaRule::Fixed && !(beta > 0.0))
    throw ConfigError("SchemeConfig: fixed beta must be > 0");
  for (double w : user_weights)
    if (!(w >= 0.0)) throw ConfigError("SchemeConfig: user weights must be >= 0");
  if (noise_level < 0.0)
    throw ConfigError("SchemeConfig: noise_level must be >= 0");
}

SignalSet make_pilot(const std::vector<double>& alpha, int user_index,
                     int user_count, const Grid& g, const MeasurementSpec& spec) {
  if (user_index < 0 || user_index >= user_count)
    throw DimensionError("make_pilot: user index out of range");
  if (alpha.size() != static_cast<std::size_t>(g.nt))
    throw DimensionError("make_pilot: alpha length must equal nt");
  const int pc = spec.mode == MeasureMode::Partial ? spec.channel : -1;
  SignalSet s(user_count, spec.channels(), g.nt, g.dt, SignalSide::Users, pc);
  // Designated channel: the scalar field channel (p / E_z) for full
  // measurements, the only channel otherwise.
  const int c = spec.mode == MeasureMode::Full ? kChannels - 1 : 0;
  for (int i = 0; i < g.nt; ++i)
    s.at(user_index, c, i) = alpha[static_cast<std::size_t>(i)];
  return s;
}

namespace {

std::vector<double> per_user_energy(const SignalSet& s) {
  std::vector<double> e(static_cast<std::size_t>(s.antennas()), 0.0);
  for (int k = 0; k < s.antennas(); ++k) {
    double acc = 0.0;
    for (int c = 0; c < s.channels(); ++c)
      for (int i = 0; i < s.nt(); ++i) {
        const double w = (i == 0 || i == s.nt() - 1) ? 0.5 : 1.0;
        acc += w * s.at(k, c, i) * s.at(k, c, i);
      }
    e[static_cast<std::size_t>(k)] = acc * s.dt();
  }
  return e;
}

// Shared machinery: noise injection, weighted user-side norms, and the
// weighted adjoint A* W (the adjoint of A into the weighted user space).
struct Ctx {
  const CommOperator& op;
  const SchemeConfig& cfg;
  Rng rng;

  Ctx(const CommOperator& op_, const SchemeConfig& cfg_)
      : op(op_), cfg(cfg_), rng(cfg_.noise_seed) {}

  SignalSet measured(SignalSet s) {
    if (cfg.noise_level > 0.0)
      for (auto& v : s.data()) v += cfg.noise_level * rng.normal();
    return s;
  }
  SignalSet weighted(const SignalSet& s) const {
    if (cfg.user_weights.empty()) return s;
    if (cfg.user_weights.size() != static_cast<std::size_t>(s.antennas()))
      throw DimensionError("user_weights length must match user count");
    SignalSet o = s;
    for (int k = 0; k < o.antennas(); ++k)
      for (int c = 0; c < o.channels(); ++c)
        for (int i = 0; i < o.nt(); ++i)
          o.at(k, c, i) *= cfg.user_weights[static_cast<std::size_t>(k)];
    return o;
  }
  double unorm(const SignalSet& s) const {
    return norm_signals(s, cfg.user_weights);
  }
  double uip(const SignalSet& a, const SignalSet& b) const {
    return inner_product_signals(a, b, cfg.user_weights);
  }
  SignalSet astar_w(const SignalSet& s) { return measured(op.apply_A_star(weighted(s))); }
  SignalSet a(const SignalSet& r) { return measured(op.apply_A(r)); }
};

// Fixed-step divergence detector: three consecutive cost increases.
struct DivergenceWatch {
  double prev = std::numeric_limits<double>::infinity();
  int increases = 0;
  void observe(double cost, const SchemeConfig& cfg) {
    if (cfg.beta_rule != BetaRule::Fixed) return;
    increases = (cost > prev) ? increases + 1 : 0;
    prev = cost;
    if (increases >= 3)
      throw StepSizeError(
          "iteration diverging: cost increased 3 consecutive iterations; "
          "use a smaller fixed beta or exact line search");
  }
};

SchemeResult gradient_impl(const SignalSet& st, const CommOperator& op,
                           const SchemeConfig& cfg, double lambda) {
  cfg.validate();
  Ctx cx(op, cfg);
  SignalSet r = op.zero_base();
  const double stn = cx.unorm(st);
  SchemeTrace tr;
  DivergenceWatch watch;
  for (int n = 0;; ++n) {
    SignalSet ar = cx.a(r);
    SignalSet resid = st;
    resid.axpy(-1.0, ar);
    const double resn = cx.unorm(resid);
    const double rn = norm_signals(r);
    const double cost = 0.5 * resn * resn + 0.5 * lambda * rn * rn;
    tr.rows.push_back({n, cost, resn, rn, 0.0, per_user_energy(ar)});
    if (resn <= cfg.tol * stn) {
      tr.converged = true;
      break;
    }
    if (n >= cfg.max_iter) break;
    watch.observe(cost, cfg);
    SignalSet d = cx.astar_w(resid);
    d.axpy(-lambda, r);
    double beta;
    if (cfg.beta_rule == BetaRule::ExactLineSearch) {
      const double dd = inner_product_signals(d, d);
      if (dd == 0.0) break;
      SignalSet ad = cx.a(d);
      const double den = cx.uip(ad, ad) + lambda * dd;
      if (!(den > 0.0)) break;
      beta = dd / den;
    } else {
      beta = cfg.beta;
    }
    tr.rows.back().beta = beta;
    r.axpy(beta, d);
    ++tr.iterations;
  }
  return {std::move(r), std::move(tr)};
}

SchemeResult min_norm_impl(const SignalSet& st, const CommOperator& op,
                           const SchemeConfig& cfg, double lambda) {
  cfg.validate();
  Ctx cx(op, cfg);
  SignalSet shat = op.zero_users();
  const double stn = cx.unorm(st);
  SchemeTrace tr;
  DivergenceWatch watch;
  SignalSet r_final = op.zero_base();
  for (int n = 0;; ++n) {
    SignalSet r_half = cx.astar_w(shat);
    SignalSet ar = cx.a(r_half);  // = C shat
    SignalSet resid = st;
    resid.axpy(-1.0, ar);
    const double resn = cx.unorm(resid);
    SignalSet s_half = resid;
    s_half.axpy(-lambda, shat);
    const double shn = cx.unorm(s_half);
    const double cost = 0.5 * shn * shn;  // surrogate ||(C+lambda)shat - st||^2/2
    tr.rows.push_back({n, cost, resn, norm_signals(r_half), 0.0,
                       per_user_energy(ar)});
    r_final = std::move(r_half);
    if (resn <= cfg.tol * stn) {
      tr.converged = true;
      break;
    }
    if (n >= cfg.max_iter) break;
    watch.observe(cost, cfg);
    SignalSet r_next = cx.astar_w(s_half);
    SignalSet d = cx.a(r_next);  // update direction (C+lambda) s_half
    d.axpy(lambda, s_half);
    double beta;
    if (cfg.beta_rule == BetaRule::ExactLineSearch) {
      SignalSet t = cx.astar_w(d);
      SignalSet md = cx.a(t);
      md.axpy(lambda, d);
      const double den = cx.uip(md, md);
      if (!(den > 0.0)) break;
      beta = cx.uip(md, s_half) / den;
      if (beta == 0.0) break;
    } else {
      beta = cfg.beta;
    }
    tr.rows.back().beta = beta;
    shat.axpy(beta, d);
    ++tr.iterations;
  }
  return {std::move(r_final), std::move(tr)};
}

SchemeResult rls_impl(const SignalSet& st, const CommOperator& op,
                      const SchemeConfig& cfg, double lambda) {
  cfg.validate();
  Ctx cx(op, cfg);
  SignalSet rt = cx.astar_w(st);  // r-tilde = T B T-hat s-tilde
  SignalSet r = op.zero_base();
  const double stn = cx.unorm(st);
  SchemeTrace tr;
  DivergenceWatch watch;
  for (int n = 0;; ++n) {
    SignalSet s_half = cx.a(r);
    SignalSet cr = cx.astar_w(s_half);
    cr.axpy(lambda, r);  // C_lambda r
    SignalSet r_half = rt;
    r_half.axpy(-1.0, cr);
    SignalSet resid = st;
    resid.axpy(-1.0, s_half);
    const double resn = cx.unorm(resid);
    const double rhn = norm_signals(r_half);
    const double cost = 0.5 * rhn * rhn;  // surrogate ||C_lambda r - rt||^2/2
    tr.rows.push_back({n, cost, resn, norm_signals(r), 0.0,
                       per_user_energy(s_half)});
    if (resn <= cfg.tol * stn) {
      tr.converged = true;
      break;
    }
    if (n >= cfg.max_iter) break;
    watch.observe(cost, cfg);
    SignalSet s_next = cx.a(r_half);
    SignalSet d = cx.astar_w(s_next);
    d.axpy(lambda, r_half);  // C_lambda r_half
    double beta;
    if (cfg.beta_rule == BetaRule::ExactLineSearch) {
      SignalSet t = cx.a(d);
      SignalSet cd = cx.astar_w(t);
      cd.axpy(lambda, d);
      const double den = inner_product_signals(cd, cd);
      if (!(den > 0.0)) break;
      beta = inner_product_signals(cd, r_half) / den;
      if (beta == 0.0) break;
    } else {
      beta = cfg.beta;
    }
    tr.rows.back().beta = beta;
    r.axpy(beta, d);
    ++tr.iterations;
  }
  return {std::move(r), std::move(tr)};
}

}  // namespace

SchemeResult run_gradient(const SignalSet& st, const CommOperator& op,
                          const SchemeConfig& cfg) {
  return gradient_impl(st, op, cfg, 0.0);
}
SchemeResult run_gradient_reg(const SignalSet& st, const CommOperator& op,
                              const SchemeConfig& cfg) {
  return gradient_impl(st, op, cfg, cfg.lambda);
}
SchemeResult run_min_norm(const SignalSet& st, const CommOperator& op,
                          const SchemeConfig& cfg) {
  return min_norm_impl(st, op, cfg, 0.0);
}
SchemeResult run_min_norm_reg(const SignalSet& st, const CommOperator& op,
                              const SchemeConfig& cfg) {
  return min_norm_impl(st, op, cfg, cfg.lambda);
}
SchemeResult run_rls(const SignalSet& st, const CommOperator& op,
                     const SchemeConfig& cfg) {
  return rls_impl(st, op, cfg, cfg.lambda);
}

SchemeResult run_scheme(const SignalSet& st, const CommOperator& op,
                        const SchemeConfig& cfg) {
  switch (cfg.scheme) {
    case SchemeKind::Gradient: return run_gradient(st, op, cfg);
    case SchemeKind::GradientReg: return run_gradient_reg(st, op, cfg);
    case SchemeKind::MinNorm: return run_min_norm(st, op, cfg);
    case SchemeKind::MinNormReg: return run_min_norm_reg(st, op, cfg);
    case SchemeKind::Rls: return run_rls(st, op, cfg);
  }
  throw ConfigError("run_scheme: unknown scheme");
}

double estimate_op_norm2(const CommOperator& op, int iters, std::uint64_t seed) {
  Rng rng(seed);
  SignalSet r = op.zero_base();
  for (auto& v : r.data()) v = rng.uniform(-1.0, 1.0);
  double nrm = norm_signals(r);
  if (nrm == 0.0) return 0.0;
  r.scale(1.0 / nrm);
  double est = 0.0;
  for (int n = 0; n < iters; ++n) {
    SignalSet z = op.apply_A_star(op.apply_A(r));
    est = inner_product_signals(z, r);
    const double zn = norm_signals(z);
    if (zn == 0.0) return 0.0;
    z.scale(1.0 / zn);
    r = std::move(z);
  }
  return est;
}

void write_trace_csv(const std::string& path, const SchemeTrace& trace) {
  std::ofstream f(path);
  if (!f) throw ConfigError("write_trace_csv: cannot open " + path);
  f << "iter,cost,residual,base_energy,beta";
  const std::size_t nu =
      trace.rows.empty() ? 0 : trace.rows.front().user_energy.size();
  for (std::size_t k = 0; k < nu; ++k) f << ",user" << (k + 1) << "_energy";
  f << "\n";
  for (const auto& row : trace.rows) {
    f << row.iter << "," << format_double(row.cost) << ","
      << format_double(row.residual) << "," << format_double(row.base_energy)
      << "," << format_double(row.beta);
    for (double e : row.user_energy) f << "," << format_double(e);
    f << "\n";
  }
  if (!f) throw ConfigError("write_trace_csv: write failed for " + path);
}

namespace {

std::vector<double> sqrt_quadrature_weights(const SignalSet& z) {
  std::vector<double> w(z.size());
  std::size_t idx = 0;
  for (int k = 0; k < z.antennas(); ++k)
    for (int c = 0; c < z.channels(); ++c)
      for (int i = 0; i < z.nt(); ++i, ++idx) {
        const double tw = (i == 0 || i == z.nt() - 1) ? 0.5 : 1.0;
        w[idx] = std::sqrt(tw * z.dt());
      }
  return w;
}

}  // namespace

int NullSpaceReport::null_dim(double rel_tol) const {
  if (singular_values.empty()) return cols;
  const double smax = singular_values.front();
  int n = 0;
  for (double s : singular_values)
    if (s < rel_tol * smax) ++n;
  return n;
}

double NullSpaceReport::energy_fraction(const SignalSet& r, double eps) const {
  if (r.size() != static_cast<std::size_t>(cols))
    throw DimensionError("NullSpaceReport: signal dimension mismatch");
  const double smax = singular_values.empty() ? 0.0 : singular_values.front();
  double total = 0.0, near = 0.0;
  for (int i = 0; i < cols; ++i) {
    double ci = 0.0;
    const auto& v = right_vectors[static_cast<std::size_t>(i)];
    for (int j = 0; j < cols; ++j)
      ci += v[static_cast<std::size_t>(j)] *
            domain_weights[static_cast<std::size_t>(j)] *
            r.data()[static_cast<std::size_t>(j)];
    const double c2 = ci * ci;
    total += c2;
    if (singular_values[static_cast<std::size_t>(i)] < eps * smax) near += c2;
  }
  return total > 0.0 ? near / total : 0.0;
}

NullSpaceReport null_space_probe(const CommOperator& op, int max_dim) {
  SignalSet zb = op.zero_base();
  SignalSet zu = op.zero_users();
  const int cols = static_cast<int>(zb.size());
  const int rows = static_cast<int>(zu.size());
  if (cols > max_dim || rows > max_dim)
    throw SizeError("null_space_probe: scene too large for dense assembly");
  const std::vector<double> wz = sqrt_quadrature_weights(zb);
  const std::vector<double> wu = sqrt_quadrature_weights(zu);
  Eigen::MatrixXd At(rows, cols);
  for (int j = 0; j < cols; ++j) {
    SignalSet e = zb;
    e.data()[static_cast<std::size_t>(j)] =
        1.0 / wz[static_cast<std::size_t>(j)];
    SignalSet s = op.apply_A(e);
    for (int i = 0; i < rows; ++i)
      At(i, j) =
          wu[static_cast<std::size_t>(i)] * s.data()[static_cast<std::size_t>(i)];
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(At, Eigen::ComputeFullV);
  NullSpaceReport rep;
  rep.rows = rows;
  rep.cols = cols;
  rep.domain_weights = wz;
  rep.singular_values.assign(static_cast<std::size_t>(cols), 0.0);
  for (int i = 0; i < svd.singularValues().size() && i < cols; ++i)
    rep.singular_values[static_cast<std::size_t>(i)] = svd.singularValues()(i);
  rep.right_vectors.resize(static_cast<std::size_t>(cols));
  for (int i = 0; i < cols; ++i) {
    auto& v = rep.right_vectors[static_cast<std::size_t>(i)];
    v.resize(static_cast<std::size_t>(cols));
    for (int j = 0; j < cols; ++j) v[static_cast<std::size_t>(j)] = svd.matrixV()(j, i);
  }
  return rep;
}

}  // namespace trcomm
