#pragma once

namespace collatz {

/// Parameter pair (p, q) of the generalized map: p a prime, q >= 2 coprime
/// to p. Construction validates; every map and statistic takes one of these.
class Params {
public:
    Params(long p, long q);

    long p() const noexcept { return p_; }
    long q() const noexcept { return q_; }

    bool operator==(const Params&) const noexcept = default;

private:
    long p_;
    long q_;
};

} // namespace collatz
