#pragma once

#include "collatz/padic.hpp"
#include "collatz/params.hpp"
#include "collatz/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace collatz {

struct CycleInfo {
    long preperiod = 0;
    long period = 0;
    bool operator==(const CycleInfo&) const = default;
};

/// One orbit of g_{p,q}: exact states u_0..u_n, the digit a_i = eps0(-q u_i)
/// at every recorded state, cumulative nonzero-digit counts r_i, and the
/// detected (preperiod, period) when a state repeats within budget. When a
/// cycle is present, states[preperiod + period] == states[preperiod].
struct OrbitRecord {
    Params params;
    std::vector<Rational> states;
    std::vector<Digit> digits; // digits.size() == states.size()
    std::vector<long> r;       // r[i] = #{j <= i : digits[j] != 0}
    std::optional<CycleInfo> cycle;
    bool truncated = false;
};

/// Truncation is a distinct verdict from "not periodic": divergence is only
/// semi-decidable.
struct PeriodicityVerdict {
    bool periodic = false;
    bool truncated = false;
    long preperiod = 0;
    long period = 0;
};

enum class CycleDetector {
    HashSet, // one pass, exact preperiod, O(orbit) memory
    Brent    // low-memory option for long orbits
};

/// A verified cycle, rotated so the member of smallest absolute value comes
/// first (ties: the negative one).
struct Cycle {
    Params params;
    std::vector<Rational> members;
};

/// One k-periodic point datum: ell nonzero digits a placed at the strictly
/// increasing positions psi(0..ell-1) in {0..k-1}, with psi(ell) = k.
struct PeriodicSpec {
    long k = 0;
    long ell = 0;
    std::vector<Digit> a;
    std::vector<long> psi; // length ell + 1, psi.back() == k
};

struct CatalanSolutions {
    std::vector<std::pair<long, long>> minus_one; // (k, ell): q^ell - p^k = -1
    std::vector<std::pair<long, long>> plus_one;  // (k, ell): q^ell - p^k = +1
};

struct TruncatedSeed {
    Integer seed;
    bool escaped = false; // magnitude cutoff rather than step budget
};

struct CycleSearchOptions {
    long max_steps = 1'000'000;
    unsigned escape_bits = 256;   // |u| above 2^escape_bits => suspected divergence
    unsigned threads = 1;
    long long memo_abs_cap = 1LL << 20;
};

struct CycleSearchResult {
    std::vector<Cycle> cycles;            // sorted by representative
    std::vector<TruncatedSeed> truncated; // sorted by seed
};

/// The exact integer identity behind an integer cycle: the representative
/// equals -numerator/denominator with denominator = q^ell - p^k.
struct CycleIdentity {
    Integer numerator;
    Integer denominator;
    Integer quotient; // numerator / denominator, exact
};

/// Advance u in place by one application of g_{p,q}; returns the digit
/// eps0(-q u) consumed by the step (0 exactly when p | u).
Digit orbit_advance(Rational& u, const Params& params);

/// g_{p,q}(u): u/p when p | u, else (q u + eps0(-q u))/p.
Rational step(const Rational& u, const Params& params);

OrbitRecord orbit(const Rational& u, const Params& params, long max_steps);

PeriodicityVerdict is_ultimately_periodic(const Rational& u, const Params& params, long max_steps,
                                          CycleDetector detector = CycleDetector::HashSet);

/// For q < p only: an explicit pigeonhole bound on the number of steps
/// before the orbit of u must repeat (heights stay bounded).
Integer theorem18_step_bound(const Rational& u, const Params& params);

std::vector<PeriodicSpec> periodic_specs(long k, const Params& params);
Rational periodic_point(const PeriodicSpec& spec, const Params& params);

/// All p^k solutions of g^k(u) = u, each verified by direct iteration,
/// deduplicated and sorted.
std::vector<Rational> enumerate_periodic(long k, const Params& params);

/// All (k, ell) with q^ell - p^k = +-1 inside the given bounds.
CatalanSolutions catalan_search(const Params& params, long k_max, long ell_max);

/// Every cycle reachable from an integer seed in [u_min, u_max] within the
/// step budget; seeds that exhaust the budget or escape the magnitude bound
/// are reported separately as suspected divergence.
CycleSearchResult integer_cycle_search(const Params& params, const Integer& u_min,
                                       const Integer& u_max, const CycleSearchOptions& options = {});

CycleIdentity cycle_identity(const Cycle& cycle);

} // namespace collatz
