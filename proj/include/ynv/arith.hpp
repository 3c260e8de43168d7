#ifndef YNV_ARITH_HPP
#define YNV_ARITH_HPP

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <vector>

namespace ynv {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using i64 = std::int64_t;
using i128 = __int128;

i64 gcd64(i64 a, i64 b);
i64 mod64(i64 a, i64 m); // result in [0, m)
// Extended gcd: g = ax + by.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y);
i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 a, i64 e, i64 m);

bool is_prime(i64 n);
bool is_squarefree(i64 n);
// Distinct prime factors, ascending.
std::vector<i64> prime_factors(i64 n);
std::vector<i64> primes_up_to(i64 n);

// floor(sqrt(n)); exact.
i64 isqrt64(i64 n);
bool is_square(i64 n, i64* root = nullptr);

// Legendre/Jacobi symbol (a|n), n odd positive.
int jacobi(i64 a, i64 n);
// Kronecker symbol (a|n) for any n.
int kronecker(i64 a, i64 n);

// Hilbert symbol (a,b)_p; p = 0 means the real place.
int hilbert_symbol(i64 a, i64 b, i64 p);

i64 euler_phi(i64 n);

// FNV-1a, used for provenance/config hashes.
std::uint64_t fnv1a(const std::string& s);

} // namespace ynv

#endif
