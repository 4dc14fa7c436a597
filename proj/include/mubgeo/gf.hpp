#pragma once

#include <cstdint>
#include <vector>

#include "mubgeo/errors.hpp"

namespace mubgeo {

/// Fully materialized arithmetic tables for GF(p^k).
///
/// Elements are indexed 0..order-1 by the base-p integer encoding of their
/// coefficient vectors (lowest degree = least significant digit), so the
/// prime subfield occupies indices 0..p-1 and constant polynomials keep
/// their integer value. The modulus is the lexicographically smallest monic
/// irreducible polynomial of degree k over GF(p), coefficients compared
/// low-degree-first; for k = 1 it is the polynomial x.
struct FieldTable {
    int p = 0;           // prime characteristic
    int k = 0;           // extension degree
    int order = 0;       // p^k
    std::vector<int> modulus;  // k+1 coefficients, low degree first, monic

    std::vector<std::uint16_t> add_table;    // order * order, row-major
    std::vector<std::uint16_t> mul_table;    // order * order, row-major
    std::vector<std::uint16_t> inv_table;    // inv_table[0] is unused
    std::vector<std::uint16_t> trace_table;  // values in the prime subfield

    int add(int a, int b) const {
        check_range(a);
        check_range(b);
        return add_table[static_cast<std::size_t>(a) * order + b];
    }
    int mul(int a, int b) const {
        check_range(a);
        check_range(b);
        return mul_table[static_cast<std::size_t>(a) * order + b];
    }
    int inv(int a) const {
        check_range(a);
        if (a == 0) throw DivisionByZero("field_inv: 0 has no multiplicative inverse");
        return inv_table[a];
    }
    int trace(int a) const {
        check_range(a);
        return trace_table[a];
    }
    // additive inverse: -a = (p-1) * a, and p-1 indexes the constant poly p-1
    int neg(int a) const { return mul(a, p - 1); }

    void check_range(int a) const {
        if (a < 0 || a >= order) throw IndexOutOfRange("field element index out of range");
    }
};

inline constexpr int kDefaultFieldCap = 1 << 16;

bool is_prime(int p);

/// Build GF(p^k). Throws NonPrimeCharacteristic for composite p and
/// OrderTooLarge when p^k exceeds the cap.
FieldTable field_create(int p, int k, int order_cap = kDefaultFieldCap);

int field_add(const FieldTable& F, int a, int b);
int field_mul(const FieldTable& F, int a, int b);
int field_inv(const FieldTable& F, int a);
int field_trace(const FieldTable& F, int a);

/// Reassemble a FieldTable from a stored multiplication table, deriving the
/// add, inverse and trace tables. Validates shapes and basic identities;
/// throws ParseFailure on inconsistent input.
FieldTable field_from_tables(int p, int k, std::vector<int> modulus,
                             std::vector<std::uint16_t> mul);

/// Factor n as p^k. Throws OrderNotPrimePower otherwise.
std::pair<int, int> prime_power_decompose(int n);

bool is_prime_power(int n);

}  // namespace mubgeo
