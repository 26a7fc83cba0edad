#ifndef MAXRANK_NUMSET_HPP
#define MAXRANK_NUMSET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace maxrank {

// (n; d_1,g_1; ...; d_s,g_s): degrees and genera of the components of a
// union of curves in P^n.
struct NumericalSet {
    int n = 3;
    std::vector<std::pair<long long, long long>> pairs; // (d_i, g_i)

    long long s() const { return (long long)pairs.size(); }
    bool operator==(const NumericalSet&) const = default;

    // Every pair is (g=0, d>0) or (g>0, d >= max{2g-1, g+n}).
    bool admissible() const;
    // As above but (0,0) pairs allowed, with at least one nonzero pair.
    bool admissible_generalized() const;

    std::string to_text() const; // "n; d1,g1; d2,g2; ..."
};

// Parses "n; d1,g1; d2,g2; ...". Throws std::invalid_argument with a
// character position on malformed input.
NumericalSet parse_numset(const std::string& text);

struct CriticalValueReport {
    long long k = 0;
    long long w_at_k = 0;
    long long capacity = 0; // binom(n+k, n)
    long long slack = 0;    // capacity - w_at_k
};

struct RQPair {
    long long m = 0, r = 0, q = 0;
};

// w_k = sum over nonzero pairs of (k*d_i + 1 - g_i)
long long wk(const NumericalSet& eps, long long k);

CriticalValueReport critical_value(const NumericalSet& eps);

// Once w_k fits under binom(n+k,n) it stays strictly under at k+1.
// Returns true iff the implication holds at this k.
bool check_nn1(const NumericalSet& eps, long long k);

enum class Prec4Variant { Literal, Interpolation };

// Component-refinement relations: eta "refines" eps pairwise.
bool prec4(const NumericalSet& eta, const NumericalSet& eps,
           Prec4Variant variant = Prec4Variant::Literal);
// Like prec4, or equal to eps with exactly one pair replaced by (0,0).
bool prec4_leq(const NumericalSet& eta, const NumericalSet& eps,
               Prec4Variant variant = Prec4Variant::Literal);
// The n >= 5 relation.
bool prec_n(const NumericalSet& eta, const NumericalSet& eps);

// Single-pair versions (exposed for tests).
bool prec4_pair(long long a, long long q, long long d, long long g, Prec4Variant variant);
bool prec_n_pair(long long a, long long q, long long d, long long g, int n);

enum class ExtremalStatus { Ok, EmptyFamily, BoundViolated };

struct ExtremalResult {
    ExtremalStatus status = ExtremalStatus::Ok;
    NumericalSet eta;
    long long value = 0; // slack for maximal_eta, excess for minimal_eta
    std::string note;
};

// Maximal eta refining eps with critical value < k (k = crit(eps));
// value = binom(n+k-1,n) - w_{k-1}(eta). Bound: [0, 2k] for n >= 5,
// [0, 2k-4] for n = 4, k >= 5. Violations are surfaced, never clamped.
ExtremalResult maximal_eta(const NumericalSet& eps,
                           Prec4Variant variant = Prec4Variant::Literal);

// Minimal eta refining eps with w_k(eta) >= binom(n+k,n);
// value = w_k(eta) - binom(n+k,n), expected in [0, 2k]. n >= 5 only.
ExtremalResult minimal_eta(const NumericalSet& eps, long long k);

// Sum-of-degrees lower bounds on a maximal refinement at level k.
bool hor2_check(const NumericalSet& eta, long long k);

// Unique (r, q) with m*r + 1 + q = binom(m+3,3), 0 <= q <= m.
RQPair rq(long long m);

enum class InterpolationKind { Aly1, L5, Lv4 };

// Does the named interpolation bound guarantee a curve of degree d, genus g
// through x general points? m_or_n is the ambient dimension.
bool interpolation_ok(InterpolationKind kind, long long m_or_n, long long d,
                      long long g, long long x);

// All admissible eps with this n, s <= s_max, d_i <= d_max and critical
// value exactly k_target; components sorted (g desc, d desc); deterministic
// lexicographic order.
std::vector<NumericalSet> enumerate_admissible(int n, long long k_target,
                                               long long s_max, long long d_max);

} // namespace maxrank

#endif
