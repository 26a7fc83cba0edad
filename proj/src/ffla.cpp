#include "maxrank/ffla.hpp"
#include "maxrank/binomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace maxrank {

int64_t PrimeField::pow(int64_t a, int64_t e) const {
    a = reduce(a);
    int64_t r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

int64_t PrimeField::inv(int64_t a) const {
    a = reduce(a);
    if (a == 0) throw std::domain_error("inverse of zero");
    return pow(a, p - 2);
}

bool is_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t d : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL, 17LL, 19LL, 23LL, 29LL, 31LL, 37LL}) {
        if (p == d) return true;
        if (p % d == 0) return false;
    }
    // deterministic Miller-Rabin, valid for p < 3.3e24 with these bases
    int64_t d = p - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    PrimeField f{p};
    for (int64_t a : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL, 17LL, 19LL, 23LL, 29LL, 31LL, 37LL}) {
        int64_t x = f.pow(a, d);
        if (x == 1 || x == p - 1) continue;
        bool composite = true;
        for (int i = 0; i < r - 1; ++i) {
            x = f.mul(x, x);
            if (x == p - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::optional<int64_t> sqrt_mod(int64_t a, const PrimeField& f) {
    a = f.reduce(a);
    if (a == 0) return 0;
    if (f.pow(a, (f.p - 1) / 2) != 1) return std::nullopt;
    if (f.p % 4 == 3) return f.pow(a, (f.p + 1) / 4);
    // Tonelli-Shanks for p = 1 mod 4
    int64_t q = f.p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    int64_t z = 2;
    while (f.pow(z, (f.p - 1) / 2) != f.p - 1) ++z;
    int64_t m = s;
    int64_t c = f.pow(z, q);
    int64_t t = f.pow(a, q);
    int64_t r = f.pow(a, (q + 1) / 2);
    while (t != 1) {
        int64_t i = 0, tt = t;
        while (tt != 1) { tt = f.mul(tt, tt); ++i; }
        int64_t b = c;
        for (int64_t j = 0; j < m - i - 1; ++j) b = f.mul(b, b);
        m = i;
        c = f.mul(b, b);
        t = f.mul(t, c);
        r = f.mul(r, b);
    }
    return r;
}

MonomialBasis monomial_basis(int n, int t) {
    if (n < 1 || t < 0) throw std::invalid_argument("monomial_basis: need n >= 1, t >= 0");
    MonomialBasis b;
    b.n = n;
    b.t = t;
    std::vector<int> cur(n + 1, 0);
    // lexicographic descending on (e_0, ..., e_n): recurse on the first slot
    // from t down to 0
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == n) {
            cur[pos] = rem;
            b.exponents.push_back(cur);
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[pos] = e;
            self(self, pos + 1, rem - e);
        }
    };
    rec(rec, 0, t);
    return b;
}

FFMatrix FFMatrix::transposed() const {
    FFMatrix t = FFMatrix::zero(cols, rows);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c)
            t.at(c, r) = at(r, c);
    return t;
}

std::string FFMatrix::dump() const {
    std::ostringstream os;
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < cols; ++c) {
            if (c) os << ' ';
            os << at(r, c);
        }
        os << '\n';
    }
    return os.str();
}

size_t rank_ff(const FFMatrix& m, const PrimeField& f) {
    FFMatrix a = m;
    size_t rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < a.cols && row < a.rows; ++col) {
        size_t piv = row;
        while (piv < a.rows && a.at(piv, col) == 0) ++piv;
        if (piv == a.rows) continue;
        if (piv != row)
            for (size_t c = col; c < a.cols; ++c)
                std::swap(a.at(piv, c), a.at(row, c));
        int64_t inv = f.inv(a.at(row, col));
        for (size_t r = row + 1; r < a.rows; ++r) {
            int64_t factor = a.at(r, col);
            if (factor == 0) continue;
            int64_t scale = f.mul(factor, inv);
            for (size_t c = col; c < a.cols; ++c)
                a.at(r, c) = f.sub(a.at(r, c), f.mul(scale, a.at(row, c)));
        }
        ++row;
        ++rank;
    }
    return rank;
}

bool BinaryForm::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](int64_t c) { return c == 0; });
}

int64_t BinaryForm::eval(int64_t s, int64_t u, const PrimeField& f) const {
    s = f.reduce(s);
    u = f.reduce(u);
    // Horner in s with powers of u folded in
    int64_t acc = 0;
    for (int i = degree; i >= 0; --i)
        acc = f.add(f.mul(acc, s), f.mul(coeffs[i], f.pow(u, degree - i)));
    return acc;
}

BinaryForm bf_mul(const BinaryForm& a, const BinaryForm& b, const PrimeField& f) {
    BinaryForm r = BinaryForm::zero(a.degree + b.degree);
    for (int i = 0; i <= a.degree; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (int j = 0; j <= b.degree; ++j)
            r.coeffs[i + j] = f.add(r.coeffs[i + j], f.mul(a.coeffs[i], b.coeffs[j]));
    }
    return r;
}

BinaryForm bf_pow(const BinaryForm& a, int e, const PrimeField& f) {
    if (e < 0) throw std::invalid_argument("bf_pow: negative exponent");
    BinaryForm r = BinaryForm::zero(0);
    r.coeffs[0] = 1;
    BinaryForm base = a;
    while (e > 0) {
        if (e & 1) r = bf_mul(r, base, f);
        if (e > 1) base = bf_mul(base, base, f);
        e >>= 1;
    }
    return r;
}

BinaryForm bf_add(const BinaryForm& a, const BinaryForm& b, const PrimeField& f) {
    if (a.degree != b.degree) throw std::invalid_argument("bf_add: degree mismatch");
    BinaryForm r = BinaryForm::zero(a.degree);
    for (int i = 0; i <= a.degree; ++i) r.coeffs[i] = f.add(a.coeffs[i], b.coeffs[i]);
    return r;
}

BinaryForm bf_scale(const BinaryForm& a, int64_t c, const PrimeField& f) {
    BinaryForm r = a;
    c = f.reduce(c);
    for (auto& x : r.coeffs) x = f.mul(x, c);
    return r;
}

BinaryForm bf_ds(const BinaryForm& a, const PrimeField& f) {
    if (a.degree == 0) return BinaryForm::zero(0);
    BinaryForm r = BinaryForm::zero(a.degree - 1);
    for (int i = 1; i <= a.degree; ++i) r.coeffs[i - 1] = f.mul(a.coeffs[i], i % f.p);
    return r;
}

BinaryForm bf_du(const BinaryForm& a, const PrimeField& f) {
    if (a.degree == 0) return BinaryForm::zero(0);
    BinaryForm r = BinaryForm::zero(a.degree - 1);
    for (int i = 0; i < a.degree; ++i) r.coeffs[i] = f.mul(a.coeffs[i], (a.degree - i) % f.p);
    return r;
}

namespace {

// dehomogenized coefficients (drop trailing zeros): F(s) = f(s, 1)
std::vector<int64_t> dehom(const BinaryForm& a) {
    std::vector<int64_t> v = a.coeffs;
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

std::vector<int64_t> poly_mod(std::vector<int64_t> a, const std::vector<int64_t>& b,
                              const PrimeField& f) {
    int64_t lead_inv = f.inv(b.back());
    while (a.size() >= b.size() && !a.empty()) {
        int64_t q = f.mul(a.back(), lead_inv);
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[off + i] = f.sub(a[off + i], f.mul(q, b[i]));
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

} // namespace

BinaryForm bf_gcd(BinaryForm a, BinaryForm b, const PrimeField& f) {
    if (a.is_zero() && b.is_zero()) return BinaryForm::zero(0);
    if (a.is_zero()) return bf_scale(b, f.inv(*std::find_if(b.coeffs.rbegin(), b.coeffs.rend(), [](int64_t c) { return c != 0; })), f);
    if (b.is_zero()) return bf_gcd(b, a, f);
    // Common u-power: f = u^k * (lower-degree form) iff the top dehomogenized
    // degree falls short of the homogeneous degree.
    std::vector<int64_t> A = dehom(a), B = dehom(b);
    int upow_a = a.degree - int(A.size()) + 1;
    int upow_b = b.degree - int(B.size()) + 1;
    int upow = std::min(upow_a, upow_b);
    while (!B.empty()) {
        A = poly_mod(std::move(A), B, f);
        std::swap(A, B);
    }
    // A is now the univariate gcd; homogenize and tack the u power back on
    BinaryForm g = BinaryForm::zero(int(A.size()) - 1 + upow);
    int64_t lead_inv = f.inv(A.back());
    for (size_t i = 0; i < A.size(); ++i) g.coeffs[i] = f.mul(A[i], lead_inv);
    return g;
}

bool bf_coprime(const BinaryForm& a, const BinaryForm& b, const PrimeField& f) {
    return bf_gcd(a, b, f).degree == 0;
}

bool bf_squarefree(const BinaryForm& a, const PrimeField& f) {
    if (a.is_zero()) return false;
    if (a.degree == 0) return true;
    BinaryForm g = bf_gcd(a, bf_ds(a, f), f);
    g = bf_gcd(g, bf_du(a, f), f);
    return g.degree == 0;
}

BinaryForm binary_pow_product(const std::vector<std::pair<BinaryForm, int>>& forms,
                              const PrimeField& f) {
    BinaryForm r = BinaryForm::zero(0);
    r.coeffs[0] = 1;
    for (const auto& [b, e] : forms) r = bf_mul(r, bf_pow(b, e, f), f);
    return r;
}

} // namespace maxrank
