#pragma once

#include <cstdint>
#include <vector>

#include "mhscale/clt.hpp"
#include "mhscale/cylinder.hpp"
#include "mhscale/sampler.hpp"

namespace mhscale {

enum class FormKind { discrete_form, limit_form, l2_norm, sobolev_norm };

struct FormEstimate {
  double value = 0.0;
  double se = 0.0;
  std::uint64_t reps = 0;  // 0 marks a quadrature evaluation
  FormKind kind = FormKind::discrete_form;
};

// Phi_n(h) = (n/2) E[(h(X(1)) - h(X(0)))^2] over independent single MHRW
// steps from stationarity. Only the first h.N coordinates feed h; the full
// n-dimensional ratio decides acceptance.
FormEstimate discrete_form(const CylinderFunction& h, const ChainConfig& config,
                           std::uint64_t reps, unsigned threads = 0);

// Phi(h) = (1/2) tau^2 c(tau) E[|grad h|^2] under pi^(x)N.
// reps = 0 selects tensor quadrature (N <= 3), otherwise Monte Carlo.
FormEstimate limit_form(const CylinderFunction& h, double tau,
                        const Potential& target, std::uint64_t reps = 0,
                        std::uint64_t seed = 0, unsigned threads = 0);

// ||h||_S^2 = E[h^2 + |grad h|^2] under pi^(x)N.
FormEstimate sobolev_norm(const CylinderFunction& h, const Potential& target,
                          std::uint64_t reps = 0, std::uint64_t seed = 0,
                          unsigned threads = 0);

// ||h||_{L2}^2 = E[h^2].
FormEstimate l2_norm(const CylinderFunction& h, const Potential& target,
                     std::uint64_t reps = 0, std::uint64_t seed = 0,
                     unsigned threads = 0);

struct MoscoRow {
  int n = 0;
  double phi_n = 0.0, phi_n_se = 0.0;
  double phi_limit = 0.0;
  double rel_gap = 0.0;       // |Phi_n - Phi| / Phi
  bool gap_grew = false;      // gap grew beyond 2 combined se versus previous rung
};

struct MoscoTable {
  std::vector<MoscoRow> rows;
  bool h_compact = true;  // false marks the ESJD diagnostic outside the (M2) hypothesis
};

// Phi_n(h) against Phi(h) along the n ladder, common random numbers across rungs.
MoscoTable mosco_m2_curve(const CylinderFunction& h, double tau,
                          const Potential& target, const std::vector<int>& n_ladder,
                          std::uint64_t reps, std::uint64_t seed,
                          unsigned threads = 0);

struct DominationRow {
  int n = 0;
  double phi_n = 0.0, phi_n_se = 0.0;
  double l2 = 0.0, phi_limit = 0.0;
  double rhs = 0.0;     // C (||h||^2 + Phi(h))
  double margin = 0.0;  // rhs + 3 se - phi_n  (negative = violation)
  bool violation = false;
};

struct DominationReport {
  double constant = 0.0;     // C = sup_n 2n P(chi2_n > (1+eps)n) + (tau^2/2) e^{tau^2 k (1+eps)}
  double sup_term = 0.0;
  int sup_argmax_n = 0;
  double exp_term = 0.0;
  double eps = 0.0;
  std::vector<DominationRow> rows;
  std::uint64_t violations = 0;
};

// Form domination Phi_n(h) <= C (||h||^2 + Phi(h)) with the explicit
// constant from the chi^2 tail split; requires target.lipschitz.
DominationReport domination_check(const CylinderFunction& h, double tau,
                                  const Potential& target,
                                  const std::vector<int>& n_ladder, double eps,
                                  std::uint64_t reps, std::uint64_t seed,
                                  unsigned threads = 0);

struct Chi2Row {
  int n = 0;
  double exact_tail = 0.0;
  double mc_tail = 0.0, mc_se = 0.0;
  double bound = 0.0;  // ((c/n) e^{-(c/n-1)})^{n/2}, c = (1+eps) n
  double n_times_exact = 0.0;
  bool bound_holds = false;
};

struct Chi2Report {
  double eps = 0.0;
  std::vector<Chi2Row> rows;
  bool all_bounds_hold = true;
  bool n_p_decreasing = true;  // along the given ladder
};

// Chernoff bound for P(sum W_i^2 > (1+eps) n) against exact chi^2 tails and
// Monte Carlo, plus the n P -> 0 diagnostic.
Chi2Report chi2_chernoff_check(const std::vector<int>& n_ladder, double eps,
                               std::uint64_t reps, std::uint64_t seed,
                               unsigned threads = 0);

// sup_n 2n P(chi2_n > (1+eps) n) over n = 1..n_max by the exact CDF.
std::pair<double, int> chi2_sup_term(double eps, int n_max = 10000);

}  // namespace mhscale
