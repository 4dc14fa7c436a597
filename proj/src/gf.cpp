#include "mubgeo/gf.hpp"

#include <cstddef>
#include <string>

namespace mubgeo {

namespace {

// polynomials over GF(p): coefficient vectors, low degree first, no trailing zeros
using Poly = std::vector<int>;

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// remainder of f modulo monic g
Poly poly_mod(Poly f, const Poly& g, int p) {
    trim(f);
    const int dg = degree(g);
    while (degree(f) >= dg) {
        const int shift = degree(f) - dg;
        const int c = f.back();
        for (int i = 0; i <= dg; ++i) {
            f[static_cast<std::size_t>(i + shift)] =
                ((f[static_cast<std::size_t>(i + shift)] - c * g[static_cast<std::size_t>(i)]) % p + p) % p;
        }
        trim(f);
    }
    return f;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& modulus, int p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(prod), modulus, p);
}

Poly decode(int index, int p) {
    Poly f;
    while (index > 0) {
        f.push_back(index % p);
        index /= p;
    }
    return f;
}

int encode(const Poly& f, int p) {
    int v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = v * p + f[i];
    return v;
}

// irreducibility by trial of all monic divisors of degree 1..k/2
bool is_irreducible(const Poly& f, int p) {
    const int k = degree(f);
    for (int d = 1; 2 * d <= k; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int low = 0; low < count; ++low) {
            Poly g = decode(low, p);
            g.resize(static_cast<std::size_t>(d) + 1, 0);
            g[static_cast<std::size_t>(d)] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

// lexicographically smallest monic irreducible of degree k, coefficients
// compared low-degree-first
Poly smallest_irreducible(int p, int k) {
    if (k == 1) return {0, 1};  // x
    long long count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (long long m = 0; m < count; ++m) {
        Poly f(static_cast<std::size_t>(k) + 1, 0);
        f[static_cast<std::size_t>(k)] = 1;
        long long rest = m;
        // digits of m in base p, c0 most significant so that ascending m
        // enumerates (c0, c1, ..., c_{k-1}) in lexicographic order
        for (int i = k - 1; i >= 0; --i) {
            f[static_cast<std::size_t>(i)] = static_cast<int>(rest % p);
            rest /= p;
        }
        if (is_irreducible(f, p)) {
            trim(f);
            f.resize(static_cast<std::size_t>(k) + 1, 0);
            return f;
        }
    }
    throw Error("no irreducible polynomial found (unreachable for prime p)");
}

int pow_elem(const FieldTable& F, int a, int e) {
    int r = 1;
    int base = a;
    while (e > 0) {
        if (e & 1) r = F.mul_table[static_cast<std::size_t>(r) * F.order + base];
        base = F.mul_table[static_cast<std::size_t>(base) * F.order + base];
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

FieldTable field_create(int p, int k, int order_cap) {
    if (!is_prime(p))
        throw NonPrimeCharacteristic("field_create: " + std::to_string(p) + " is not prime");
    if (k < 1) throw Error("field_create: extension degree must be >= 1");

    long long order = 1;
    for (int i = 0; i < k; ++i) {
        order *= p;
        if (order > order_cap)
            throw OrderTooLarge("field_create: p^k exceeds cap " + std::to_string(order_cap));
    }

    FieldTable F;
    F.p = p;
    F.k = k;
    F.order = static_cast<int>(order);
    F.modulus = smallest_irreducible(p, k);

    const int n = F.order;
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    F.add_table.resize(nn);
    F.mul_table.resize(nn);

    std::vector<Poly> elems(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) elems[static_cast<std::size_t>(a)] = decode(a, p);

    for (int a = 0; a < n; ++a) {
        const Poly& fa = elems[static_cast<std::size_t>(a)];
        for (int b = 0; b <= a; ++b) {
            const Poly& fb = elems[static_cast<std::size_t>(b)];
            Poly sum(std::max(fa.size(), fb.size()), 0);
            for (std::size_t i = 0; i < sum.size(); ++i) {
                int v = 0;
                if (i < fa.size()) v += fa[i];
                if (i < fb.size()) v += fb[i];
                sum[i] = v % p;
            }
            const auto s = static_cast<std::uint16_t>(encode(sum, p));
            F.add_table[static_cast<std::size_t>(a) * n + b] = s;
            F.add_table[static_cast<std::size_t>(b) * n + a] = s;

            const auto m =
                static_cast<std::uint16_t>(encode(poly_mul_mod(fa, fb, F.modulus, p), p));
            F.mul_table[static_cast<std::size_t>(a) * n + b] = m;
            F.mul_table[static_cast<std::size_t>(b) * n + a] = m;
        }
    }

    F.inv_table.assign(static_cast<std::size_t>(n), 0);
    for (int a = 1; a < n; ++a) {
        for (int b = 1; b < n; ++b) {
            if (F.mul_table[static_cast<std::size_t>(a) * n + b] == 1) {
                F.inv_table[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(b);
                break;
            }
        }
    }

    // tr(a) = a + a^p + ... + a^{p^{k-1}}, lands in the prime subfield
    F.trace_table.assign(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < n; ++a) {
        int acc = 0;
        int term = a;
        for (int i = 0; i < k; ++i) {
            acc = F.add_table[static_cast<std::size_t>(acc) * n + term];
            term = pow_elem(F, term, p);
        }
        if (acc >= p)
            throw Error("field_create: trace left the prime subfield (internal bug)");
        F.trace_table[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(acc);
    }

    return F;
}

int field_add(const FieldTable& F, int a, int b) { return F.add(a, b); }
int field_mul(const FieldTable& F, int a, int b) { return F.mul(a, b); }
int field_inv(const FieldTable& F, int a) { return F.inv(a); }
int field_trace(const FieldTable& F, int a) { return F.trace(a); }

FieldTable field_from_tables(int p, int k, std::vector<int> modulus,
                             std::vector<std::uint16_t> mul) {
    if (!is_prime(p)) throw ParseFailure("field_from_tables: characteristic is not prime");
    if (k < 1) throw ParseFailure("field_from_tables: bad extension degree");
    long long order = 1;
    for (int i = 0; i < k; ++i) order *= p;
    const int n = static_cast<int>(order);
    if (static_cast<int>(modulus.size()) != k + 1 || modulus[static_cast<std::size_t>(k)] != 1)
        throw ParseFailure("field_from_tables: modulus is not monic of degree k");
    if (mul.size() != static_cast<std::size_t>(n) * n)
        throw ParseFailure("field_from_tables: multiplication table has wrong size");
    for (auto v : mul)
        if (v >= n) throw ParseFailure("field_from_tables: table entry out of range");

    FieldTable F;
    F.p = p;
    F.k = k;
    F.order = n;
    F.modulus = std::move(modulus);
    F.mul_table = std::move(mul);

    F.add_table.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b <= a; ++b) {
            int sum = 0, place = 1, x = a, y = b;
            for (int i = 0; i < k; ++i) {
                sum += ((x % p + y % p) % p) * place;
                x /= p;
                y /= p;
                place *= p;
            }
            F.add_table[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(sum);
            F.add_table[static_cast<std::size_t>(b) * n + a] = static_cast<std::uint16_t>(sum);
        }
    }

    F.inv_table.assign(static_cast<std::size_t>(n), 0);
    for (int a = 1; a < n; ++a) {
        if (F.mul_table[static_cast<std::size_t>(a) * n + 1] != a)
            throw ParseFailure("field_from_tables: a*1 != a, table is corrupt");
        for (int b = 1; b < n; ++b) {
            if (F.mul_table[static_cast<std::size_t>(a) * n + b] == 1) {
                F.inv_table[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(b);
                break;
            }
        }
        if (F.inv_table[static_cast<std::size_t>(a)] == 0)
            throw ParseFailure("field_from_tables: element without inverse, table is corrupt");
    }

    F.trace_table.assign(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < n; ++a) {
        int acc = 0;
        int term = a;
        for (int i = 0; i < k; ++i) {
            acc = F.add_table[static_cast<std::size_t>(acc) * n + term];
            term = pow_elem(F, term, p);
        }
        if (acc >= p) throw ParseFailure("field_from_tables: trace left the prime subfield");
        F.trace_table[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(acc);
    }
    return F;
}

std::pair<int, int> prime_power_decompose(int n) {
    if (n < 2) throw OrderNotPrimePower(std::to_string(n) + " is not a prime power");
    int p = 0;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d) {
        if (n % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return {n, 1};  // n itself is prime
    int k = 0;
    int m = n;
    while (m % p == 0) {
        m /= p;
        ++k;
    }
    if (m != 1) throw OrderNotPrimePower(std::to_string(n) + " is not a prime power");
    return {p, k};
}

bool is_prime_power(int n) {
    try {
        prime_power_decompose(n);
        return true;
    } catch (const OrderNotPrimePower&) {
        return false;
    }
}

}  // namespace mubgeo
