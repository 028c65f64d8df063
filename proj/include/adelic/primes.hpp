#ifndef ADELIC_PRIMES_HPP
#define ADELIC_PRIMES_HPP

#include <cstdint>
#include <vector>

namespace adelic {

// Deterministic Miller-Rabin, base set valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Ascending list of primes <= limit (sieve of Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

}  // namespace adelic

#endif
