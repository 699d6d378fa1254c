#pragma once

#include "collatz/rational.hpp"

namespace collatz {

Integer pow_mod(const Integer& base, const Integer& exp, const Integer& mod);

/// |(Z/q^n Z)^*| = (q-1) q^(n-1) for an odd prime q.
Integer unit_group_order(long q, long n);

/// True when g generates (Z/qZ)^* and (Z/q^2 Z)^*, which for an odd prime q
/// makes g a generator of (Z/q^n Z)^* for every n.
bool generates_unit_group(long g, long q);

/// x in [0, (q-1) q^(n-1)) with g^x = target (mod q^n), for odd prime q and
/// g a generator. Pohlig-Hellman: brute force on the (q-1)-part, digit
/// lifting on the q-power part, O(n) modular exponentiations.
Integer discrete_log(const Integer& g, const Integer& target, long q, long n);

} // namespace collatz
