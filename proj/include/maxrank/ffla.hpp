#ifndef MAXRANK_FFLA_HPP
#define MAXRANK_FFLA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace maxrank {

// Arithmetic over F_p with p < 2^31, so products of residues fit in int64.
struct PrimeField {
    int64_t p = 2147483647; // 2^31 - 1, prime

    int64_t reduce(int64_t x) const {
        int64_t r = x % p;
        return r < 0 ? r + p : r;
    }
    int64_t add(int64_t a, int64_t b) const { return (a + b) % p; }
    int64_t sub(int64_t a, int64_t b) const { return (a - b % p + p) % p; }
    int64_t mul(int64_t a, int64_t b) const { return (a * b) % p; }
    int64_t pow(int64_t a, int64_t e) const;
    int64_t inv(int64_t a) const; // a != 0 mod p
    int64_t neg(int64_t a) const { return a == 0 ? 0 : p - a; }
};

bool is_prime(int64_t p);

// Square root mod p (Tonelli-Shanks); nullopt when a is a non-residue.
std::optional<int64_t> sqrt_mod(int64_t a, const PrimeField& f);

// Exponent tuples of length n+1 summing to t, graded-lex (all same degree,
// so plain lexicographic on the tuples, descending in the first variable).
struct MonomialBasis {
    int n = 0;
    int t = 0;
    std::vector<std::vector<int>> exponents;
};

MonomialBasis monomial_basis(int n, int t);

struct FFMatrix {
    size_t rows = 0, cols = 0;
    std::vector<int64_t> entries; // row-major, reduced mod p

    int64_t& at(size_t r, size_t c) { return entries[r * cols + c]; }
    int64_t at(size_t r, size_t c) const { return entries[r * cols + c]; }

    static FFMatrix zero(size_t rows, size_t cols) {
        FFMatrix m;
        m.rows = rows;
        m.cols = cols;
        m.entries.assign(rows * cols, 0);
        return m;
    }

    FFMatrix transposed() const;
    std::string dump() const; // row-major text, one row per line
};

// Rank by in-place Gaussian elimination on a working copy.
size_t rank_ff(const FFMatrix& m, const PrimeField& f);

// Homogeneous binary form of degree e in (s, u); coeffs[i] multiplies
// s^i u^(e-i).
struct BinaryForm {
    int degree = 0;
    std::vector<int64_t> coeffs; // size degree+1

    static BinaryForm zero(int degree) {
        BinaryForm b;
        b.degree = degree;
        b.coeffs.assign(degree + 1, 0);
        return b;
    }
    bool is_zero() const;
    // value at (s, u)
    int64_t eval(int64_t s, int64_t u, const PrimeField& f) const;
};

BinaryForm bf_mul(const BinaryForm& a, const BinaryForm& b, const PrimeField& f);
BinaryForm bf_pow(const BinaryForm& a, int e, const PrimeField& f);
BinaryForm bf_add(const BinaryForm& a, const BinaryForm& b, const PrimeField& f);
BinaryForm bf_scale(const BinaryForm& a, int64_t c, const PrimeField& f);
// d/ds and d/du
BinaryForm bf_ds(const BinaryForm& a, const PrimeField& f);
BinaryForm bf_du(const BinaryForm& a, const PrimeField& f);
// monic gcd (Euclid on dehomogenizations, with care at u = 0); gcd(0,0) = 0
BinaryForm bf_gcd(BinaryForm a, BinaryForm b, const PrimeField& f);
bool bf_coprime(const BinaryForm& a, const BinaryForm& b, const PrimeField& f);
bool bf_squarefree(const BinaryForm& a, const PrimeField& f);

// Product of powers: prod forms[i].first ^ forms[i].second.
BinaryForm binary_pow_product(const std::vector<std::pair<BinaryForm, int>>& forms,
                              const PrimeField& f);

} // namespace maxrank

#endif
