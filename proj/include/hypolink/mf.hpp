#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypolink/error.hpp"
#include "hypolink/graph.hpp"
#include "hypolink/rng.hpp"

namespace hypolink {

/// Latent-factor parameters for the matrix factorization model. Matter v
/// owns the row p_v, keyword w the column q_w; the prediction is their dot
/// product.
struct FactorPair {
  std::size_t k = 0;
  std::size_t n_matter = 0;
  std::size_t n_keywords = 0;
  std::vector<double> p;  // n_matter x k, row-major
  std::vector<double> q;  // n_keywords x k, row-major

  const double* p_row(NodeId v) const { return p.data() + static_cast<std::size_t>(v) * k; }
  double* p_row(NodeId v) { return p.data() + static_cast<std::size_t>(v) * k; }
  const double* q_col(NodeId w) const { return q.data() + static_cast<std::size_t>(w) * k; }
  double* q_col(NodeId w) { return q.data() + static_cast<std::size_t>(w) * k; }
};

namespace detail {

inline double dot_k(const double* a, const double* b, std::size_t k) {
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

/// Uniform initialization in [0, 1/sqrt(K)); P is filled before Q so the
/// layout is reproducible from the seed alone.
inline FactorPair init_factors(std::size_t n_matter, std::size_t n_keywords,
                               std::size_t k, std::uint64_t seed) {
  if (k == 0) throw UsageError("latent dimension must be at least 1");
  FactorPair f;
  f.k = k;
  f.n_matter = n_matter;
  f.n_keywords = n_keywords;
  f.p.resize(n_matter * k);
  f.q.resize(n_keywords * k);
  SplitRng rng(seed);
  const double hi = 1.0 / std::sqrt(static_cast<double>(k));
  for (double& x : f.p) x = rng.uniform(0.0, hi);
  for (double& x : f.q) x = rng.uniform(0.0, hi);
  return f;
}

/// Squared error over the observed (non-zero) entries plus L2 penalty:
///   sum_(v,w) (r_vw - p_v . q_w)^2 + lambda (|P|^2 + |Q|^2)
inline double mf_loss(const BipartiteGraph& g, const FactorPair& f, double lambda) {
  double loss = 0.0;
  for (NodeId v = 0; v < g.rows.size(); ++v) {
    for (const auto& [w, r] : g.rows[v]) {
      double e = static_cast<double>(r) - detail::dot_k(f.p_row(v), f.q_col(w), f.k);
      loss += e * e;
    }
  }
  double reg = 0.0;
  for (double x : f.p) reg += x * x;
  for (double x : f.q) reg += x * x;
  return loss + lambda * reg;
}

/// Analytic gradient of mf_loss with respect to every entry of P and Q.
inline std::pair<std::vector<double>, std::vector<double>> mf_loss_gradient(
    const BipartiteGraph& g, const FactorPair& f, double lambda) {
  std::vector<double> gp(f.p.size(), 0.0), gq(f.q.size(), 0.0);
  for (NodeId v = 0; v < g.rows.size(); ++v) {
    for (const auto& [w, r] : g.rows[v]) {
      const double* pv = f.p_row(v);
      const double* qw = f.q_col(w);
      double e = static_cast<double>(r) - detail::dot_k(pv, qw, f.k);
      for (std::size_t i = 0; i < f.k; ++i) {
        gp[static_cast<std::size_t>(v) * f.k + i] += -2.0 * e * qw[i];
        gq[static_cast<std::size_t>(w) * f.k + i] += -2.0 * e * pv[i];
      }
    }
  }
  for (std::size_t i = 0; i < f.p.size(); ++i) gp[i] += 2.0 * lambda * f.p[i];
  for (std::size_t i = 0; i < f.q.size(); ++i) gq[i] += 2.0 * lambda * f.q[i];
  return {std::move(gp), std::move(gq)};
}

/// Gradient of the per-sample objective (r - p.q)^2 + lambda(|p|^2 + |q|^2),
/// the quantity each SGD step descends.
inline std::pair<std::vector<double>, std::vector<double>> mf_sample_gradient(
    double r, const std::vector<double>& p, const std::vector<double>& q,
    double lambda) {
  if (p.size() != q.size()) throw std::invalid_argument("factor length mismatch");
  std::size_t k = p.size();
  double e = r - detail::dot_k(p.data(), q.data(), k);
  std::vector<double> gp(k), gq(k);
  for (std::size_t i = 0; i < k; ++i) {
    gp[i] = -2.0 * e * q[i] + 2.0 * lambda * p[i];
    gq[i] = -2.0 * e * p[i] + 2.0 * lambda * q[i];
  }
  return {std::move(gp), std::move(gq)};
}

struct MfTrainConfig {
  std::size_t k_latent = 97;
  double learning_rate = 0.01;
  double regularization = 0.02;
  std::size_t epochs = 200;
  std::uint64_t seed = 0;
};

/// Stochastic gradient descent over the non-zero entries in row-major order,
/// one full sweep per epoch. Fixed epoch count, deterministic given the seed.
inline FactorPair train_mf(const BipartiteGraph& g, const MfTrainConfig& cfg) {
  if (cfg.learning_rate <= 0.0) throw UsageError("learning rate must be positive");
  if (cfg.epochs == 0) throw UsageError("epoch count must be at least 1");
  FactorPair f = init_factors(g.n_matter(), g.n_keywords(), cfg.k_latent,
                              derive_seed(cfg.seed, "mf-init"));
  const double lr = cfg.learning_rate;
  const double lambda = cfg.regularization;
  std::vector<double> p_old(f.k);
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    double sq_err = 0.0;
    for (NodeId v = 0; v < g.rows.size(); ++v) {
      for (const auto& [w, r] : g.rows[v]) {
        double* pv = f.p_row(v);
        double* qw = f.q_col(w);
        double e = static_cast<double>(r) - detail::dot_k(pv, qw, f.k);
        sq_err += e * e;
        for (std::size_t i = 0; i < f.k; ++i) p_old[i] = pv[i];
        for (std::size_t i = 0; i < f.k; ++i) {
          pv[i] += lr * (2.0 * e * qw[i] - 2.0 * lambda * pv[i]);
          qw[i] += lr * (2.0 * e * p_old[i] - 2.0 * lambda * qw[i]);
        }
      }
    }
    if (!std::isfinite(sq_err))
      throw Error("matrix factorization diverged at epoch " + std::to_string(epoch));
  }
  return f;
}

/// Predicted value for the (v, w) link under plain MF.
inline double score_mf(const FactorPair& f, NodeId v, NodeId w) {
  if (v >= f.n_matter) throw std::out_of_range("matter index out of range");
  if (w >= f.n_keywords) throw std::out_of_range("keyword index out of range");
  return detail::dot_k(f.p_row(v), f.q_col(w), f.k);
}

/// MF prediction weighted by the log matter popularity.
inline double score_mfmp(const BipartiteGraph& g, const FactorPair& f, NodeId v,
                         NodeId w) {
  return std::log(static_cast<double>(matter_popularity(g, v))) * score_mf(f, v, w);
}

/// Root mean squared error over the observed entries; the fit quality the
/// factorization is judged by.
inline double mf_rmse(const BipartiteGraph& g, const FactorPair& f) {
  double sq = 0.0;
  std::size_t n = 0;
  for (NodeId v = 0; v < g.rows.size(); ++v) {
    for (const auto& [w, r] : g.rows[v]) {
      double e = static_cast<double>(r) - detail::dot_k(f.p_row(v), f.q_col(w), f.k);
      sq += e * e;
      ++n;
    }
  }
  return n == 0 ? 0.0 : std::sqrt(sq / static_cast<double>(n));
}

}  // namespace hypolink
