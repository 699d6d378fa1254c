#pragma once

#include "collatz/dynamics.hpp"

#include <optional>
#include <vector>

namespace collatz {

/// The unique integer H with p^(H-1) <= |u| < p^H (archimedean absolute
/// value, base-p scale). H can be <= 0 for |u| < 1. u must be nonzero.
long height(const Rational& u, long p);

/// Naive height max(|numerator|, denominator) of a reduced fraction.
Integer height_naive(const Rational& u);

/// Largest r >= 1 with q^(r-1) < p^r; nullopt when q < p (every r works).
std::optional<long> tranche_r(const Params& params);

/// q^(p-1) < p^p, evaluated exactly. Pairs passing this have negative mean
/// height drift.
bool candidate_test(const Params& params);

/// alpha_i = max{k : p^k < q^i}; -1 sentinel for i = 0 (empty set).
long alpha(long i, const Params& params);

struct HeightProfile {
    Rational seed;
    long h0 = 0;
    std::vector<long> heights; // H(u_n), n = 0..n_steps
    std::vector<long> drifts;  // H(u_n) - H(u_0)
};

HeightProfile height_profile(const Rational& u, const Params& params, long n_steps);

/// Composition of the first m length-r blocks of phi(u)'s digits: ell[i]
/// counts blocks with exactly i nonzero digits, e_list the per-block
/// counts; drift is H(u_{rm}) - H(u).
struct TrancheStats {
    long r = 0;
    long m = 0;
    std::vector<long> ell; // size r + 1
    std::vector<int> e_list;
    long nonzero_total = 0; // sum i * ell[i]
    long drift = 0;
    bool height_ok = true; // seed height cleared the configured threshold
};

TrancheStats tranche_stats(const Rational& u, const Params& params, long m,
                           std::optional<long> min_height = std::nullopt);

struct NzDriftReport {
    long m = 0;
    long nz = 0;       // nonzero digits among the first m
    long drift = 0;    // H(u_m) - H(u)
    long alpha_nz = 0;
    long d = 0;        // drift - (alpha_nz - m)
    bool within_two = false;
};

/// Measures d = H(u_m) - H(u) - (alpha_nz - m) and whether |d| <= 2.
/// Requires H(u) > m and at least one nonzero digit.
NzDriftReport nz_drift_check(const Rational& u, const Params& params, long m);

struct SampleSpec {
    bool full = true;
    unsigned long long count = 0; // sampled mode only
    unsigned long long rng_seed = 0;
};

struct MeanDriftReport {
    long p = 0;
    long q = 0;
    long m = 0;
    unsigned long long sample_size = 0;
    bool full_enumeration = true;
    unsigned long long rng_seed = 0;
    Rational empirical_mean;
    double empirical_mean_d = 0.0;
    double lower_bound = 0.0; // m((p-1)/p log q/log p - 1) - 2
    double upper_bound = 0.0; // m((p-1)/p log q/log p - 1) + 2
    bool within_bounds = false;
};

/// Mean of H(u_m) - H(u) over residue-class representatives u = c + p^m K,
/// K seed-keyed in [p^m, 2 p^m) so H(u) > m uniformly. Full enumeration of
/// the p^m classes when p^m <= 2^22, else seeded class sampling.
MeanDriftReport mean_drift(const Params& params, long m, const SampleSpec& sample,
                           unsigned threads = 1);

struct RatioPoint {
    long n = 0;
    double r_over_n = 0.0;
    std::optional<double> psi_over_n;    // psi(n)/n when materialized
    std::optional<double> h_over_n;      // H(u_n)/n
    std::optional<double> growth_ratio;  // p |u_{n+1}|^{1/n} q^{-r_n/n}
};

struct RatioSeries {
    std::vector<RatioPoint> points;
    bool periodic = false;
    std::optional<CycleInfo> cycle;
};

/// Finite-horizon running ratios for visual/numeric inspection; nothing is
/// asserted about convergence.
RatioSeries asymptotic_ratios(const Rational& u, const Params& params, long n_steps);

} // namespace collatz
