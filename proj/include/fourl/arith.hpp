#pragma once
#include <cstdint>
#include <utility>
#include <vector>

namespace fourl {

using i64 = std::int64_t;
using u64 = std::uint64_t;

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);
i64 mod(i64 a, i64 m);  // result in [0, m)
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 b, i64 e, i64 m);
// Inverse of a modulo m; requires gcd(a, m) = 1. Returns 0 when m = 1.
i64 invmod(i64 a, i64 m);
// x with x = a (mod m1), x = b (mod m2), gcd(m1, m2) = 1.
i64 crt(i64 a, i64 m1, i64 b, i64 m2);

bool isPrime(i64 n);
std::vector<std::pair<i64, int>> factorize(i64 n);
std::vector<i64> primeDivisors(i64 n);
std::vector<i64> divisors(i64 n);
int valuation(i64 n, i64 p);
i64 eulerPhi(i64 n);
int mobius(i64 n);
bool isSquarefree(i64 n);
i64 ipow(i64 b, int e);

std::vector<i64> primesUpTo(i64 n);
// Smallest prime factor table for 0..n.
std::vector<std::int32_t> spfSieve(i64 n);

}  // namespace fourl
