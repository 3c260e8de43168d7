#include "ynv/arith.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace ynv {

i64 gcd64(i64 a, i64 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 mod64(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y)
{
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

i64 mul_mod(i64 a, i64 b, i64 m)
{
    return (i64)(((i128)a * b) % m);
}

i64 pow_mod(i64 a, i64 e, i64 m)
{
    a = mod64(a, m);
    i64 r = 1 % m;
    while (e > 0) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(i64 n)
{
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for 64-bit range
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<i64> prime_factors(i64 n)
{
    std::vector<i64> out;
    if (n < 0) n = -n;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_squarefree(i64 n)
{
    if (n == 0) return false;
    if (n < 0) n = -n;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % (p * p) == 0) return false;
        while (n % p == 0) n /= p;
    }
    return true;
}

std::vector<i64> primes_up_to(i64 n)
{
    std::vector<bool> sieve(n + 1, true);
    std::vector<i64> out;
    for (i64 i = 2; i <= n; ++i) {
        if (sieve[i]) {
            out.push_back(i);
            for (i64 j = i * i; j <= n; j += i) sieve[j] = false;
        }
    }
    return out;
}

i64 isqrt64(i64 n)
{
    if (n <= 0) return 0;
    i64 r = (i64)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(i64 n, i64* root)
{
    if (n < 0) return false;
    i64 r = isqrt64(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

int jacobi(i64 a, i64 n)
{
    // n odd positive
    a = mod64(a, n);
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            i64 r = n & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

int kronecker(i64 a, i64 n)
{
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    i64 a8 = mod64(a, 8);
    int two_part = 1;
    if (v & 1) {
        if (a8 == 1 || a8 == 7)
            two_part = 1;
        else if (a8 == 3 || a8 == 5)
            two_part = -1;
        else
            return 0; // a even
    }
    return sign * two_part * jacobi(a, n);
}

namespace {

// (a,b)_p for p odd prime, via valuations and Legendre symbols.
int hilbert_odd(i64 a, i64 b, i64 p)
{
    int alpha = 0, beta = 0;
    while (a % p == 0) {
        a /= p;
        ++alpha;
    }
    while (b % p == 0) {
        b /= p;
        ++beta;
    }
    int eps = ((p - 1) / 2) % 2;
    int s = (alpha * beta * eps) % 2;
    int r = s ? -1 : 1;
    if (beta % 2) r *= jacobi(mod64(a, p), p);
    if (alpha % 2) r *= jacobi(mod64(b, p), p);
    return r;
}

int hilbert_two(i64 a, i64 b)
{
    int alpha = 0, beta = 0;
    while (a % 2 == 0) {
        a /= 2;
        ++alpha;
    }
    while (b % 2 == 0) {
        b /= 2;
        ++beta;
    }
    auto eps = [](i64 u) { return (int)mod64((u - 1) / 2, 2); };
    auto omega = [](i64 u) { return (int)mod64((u * u - 1) / 8, 2); };
    int e = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
    return (e % 2) ? -1 : 1;
}

} // namespace

int hilbert_symbol(i64 a, i64 b, i64 p)
{
    if (a == 0 || b == 0) return 0;
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    if (p == 2) return hilbert_two(a, b);
    return hilbert_odd(a, b, p);
}

i64 euler_phi(i64 n)
{
    i64 r = n;
    for (i64 p : prime_factors(n)) r -= r / p;
    return r;
}

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace ynv
