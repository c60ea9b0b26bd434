#include "fourl/arith.hpp"

#include <algorithm>
#include <cstdlib>

#include "fourl/errors.hpp"

namespace fourl {

i64 gcd(i64 a, i64 b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        i64 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

i64 lcm(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return std::llabs(a / gcd(a, b) * b);
}

i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

i64 powmod(i64 b, i64 e, i64 m) {
    if (m == 1) return 0;
    i64 r = 1;
    b = mod(b, m);
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

i64 invmod(i64 a, i64 m) {
    if (m == 1) return 0;
    i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1) {
        i64 qt = g / a1;
        i64 t = g - qt * a1;
        g = a1;
        a1 = t;
        t = x - qt * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw UsageError("invmod: argument not invertible");
    return mod(x, m);
}

i64 crt(i64 a, i64 m1, i64 b, i64 m2) {
    if (gcd(m1, m2) != 1) throw UsageError("crt: moduli not coprime");
    i64 M = m1 * m2;
    if (M == 1) return 0;
    // x = a + m1 * k, m1 * k = b - a (mod m2)
    i64 k = mulmod(mod(b - a, m2), invmod(m1, m2), m2);
    return mod(a + m1 * k, M);
}

bool isPrime(i64 n) {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> f;
    n = std::llabs(n);
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

std::vector<i64> primeDivisors(i64 n) {
    std::vector<i64> out;
    for (auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> d{1};
    for (auto& [p, e] : factorize(n)) {
        std::size_t sz = d.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) d.push_back(d[i] * pk);
        }
    }
    std::vector<i64> sorted(d);
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

int valuation(i64 n, i64 p) {
    if (n == 0) return 0;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

i64 eulerPhi(i64 n) {
    i64 r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

int mobius(i64 n) {
    int m = 1;
    for (auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

bool isSquarefree(i64 n) { return n >= 1 && mobius(n) != 0; }

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::vector<i64> primesUpTo(i64 n) {
    std::vector<i64> ps;
    if (n < 2) return ps;
    std::vector<char> comp(static_cast<std::size_t>(n + 1), 0);
    for (i64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        ps.push_back(i);
        for (i64 j = i * i; j <= n; j += i) comp[j] = 1;
    }
    return ps;
}

std::vector<std::int32_t> spfSieve(i64 n) {
    std::vector<std::int32_t> spf(static_cast<std::size_t>(n + 1), 0);
    for (i64 i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (i64 j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = static_cast<std::int32_t>(i);
    }
    return spf;
}

}  // namespace fourl
