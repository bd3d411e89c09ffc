#pragma once

// Closed-form model of the networks: code distance and rate of degenerated
// cliques, densities, error-rate estimates, optimal cluster count, capacity
// and efficiency. All functions take real-valued parameters so non-integral
// geometries (l = n / chi) can be evaluated as-is.

#include <functional>

namespace seqnet::analytic {

// Degenerated clique codes R_r(c).
double min_distance(double r);                 // 4r
double coding_rate(unsigned r, unsigned c);    // floor((c+1)/2) / (r c)
double merit_factor(unsigned r, unsigned c);   // rate * distance

/// Looped chain of tournaments after S sequences of length L (chi | L):
/// 1 - (1 - 1/l^2)^(S L / chi).
double density_seq(double chi, double l, double sequences, double length);
/// Sparse-density approximation S L / (chi l^2).
double density_seq_approx(double chi, double l, double sequences, double length);
/// Vectorial chain under cluster activity restriction:
/// 1 - (1 - r c^2 / n^2)^(S L).
double density_restricted(double n, double r, double c, double sequences, double length);

/// Error floor of one decoding step with a correct window:
/// 1 - (1 - d^r)^(l - 1).
double structural_sber(double density, double r, double l);

/// Sequence error rate of the looped chain, density from density_seq:
/// 1 - (1 - d^r)^((l - 1)(L - r)). Throws for r < 1.
double sqer_seq(double chi, double l, double r, double length, double sequences);

/// Sequence error rate of the restricted vectorial chain:
/// 1 - [(1 - d^(rc))^(n - rl - rc) * prod_{i=1}^{r-1} (1 - d^(ic))^c]^(L - r),
/// density from density_restricted.
double sqer_restricted(double chi, double l, double r, double c, double length, double sequences);

/// Real-valued optimum n^2 / (e S L).
double chi_opt(double n, double sequences, double length);

double capacity_seq(double l, double sequences, double length);   // S L log2 l
double memory_bits_seq(double chi, double l, double r);           // r chi l^2
double efficiency_seq(double chi, double l, double r, double sequences, double length);
/// log2(n / chi) / (e (chi - 1)), the r = chi - 1 approximation at chi_opt.
double efficiency_seq_approx(double n, double chi);

/// Bits carried by one sparse pattern: c log2 l + log2 C(chi, c).
double pattern_information_bits(double chi, double l, double c);

/// Largest x in [lo, hi] with f(x) <= target for f increasing in x, by
/// bisection on a log scale to relative width `rel_tol`.
double solve_increasing(const std::function<double(double)>& f, double target, double lo, double hi,
                        double rel_tol = 1e-9);

/// Largest S with sqer_seq(...) <= target.
double max_sequences_seq(double chi, double l, double r, double length, double target);
/// Largest S with sqer_restricted(...) <= target.
double max_sequences_restricted(double chi, double l, double r, double c, double length,
                                double target);

}  // namespace seqnet::analytic
