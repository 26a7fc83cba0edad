#ifndef MAXRANK_ORACLE_HPP
#define MAXRANK_ORACLE_HPP

#include "maxrank/geom.hpp"
#include "maxrank/numset.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace maxrank {

inline constexpr uint64_t kDefaultSeed = 0x6d617872616e6bULL; // fixed, not wall clock
inline constexpr int64_t kDefaultPrime = 2147483647;          // 2^31 - 1
inline constexpr int64_t kSecondPrime = 1000000007;

struct Expected {
    long long t = 0;
    long long h0 = 0, h1 = 0;
    long long w = 0;
    long long capacity = 0;
};

Expected expected_hilbert(const NumericalSet& eps, long long t);

struct ExceptionalEntry {
    NumericalSet eps;
    long long t = 0;
    long long h0 = 0, h1 = 0;
    std::string source;
};

// The shipped exceptional table (n = 3). chi-consistency of every entry is
// asserted the first time the table is built.
const std::vector<ExceptionalEntry>& exceptional_catalog();

// Matching entry modulo component permutation.
std::optional<ExceptionalEntry> exceptional_lookup(const NumericalSet& eps, long long t);

enum class VerdictStatus { CertifiedMaxRank, CertifiedException, Inconclusive };

std::string to_string(VerdictStatus s);

struct VerdictOptions {
    int64_t p = kDefaultPrime;
    int trials = 3;
    uint64_t seed = kDefaultSeed;
    int64_t retry_prime = kSecondPrime; // second prime tried before reporting Inconclusive
    long long ceiling = 100000;         // max matrix columns
};

struct Verdict {
    NumericalSet eps;
    long long t = 0;
    Expected expected;
    std::optional<ExceptionalEntry> override_entry;
    std::vector<HilbertSample> samples;
    VerdictStatus status = VerdictStatus::Inconclusive;
    int64_t p = 0;
    uint64_t seed = 0;
};

// One random degenerate model realizing eps (disjoint union of per-pair
// models: rational curve of degree d-g plus g secant lines each).
CurveModel build_union_model(const NumericalSet& eps, Rng& rng, const PrimeField& f);

Verdict verdict(const NumericalSet& eps, long long t, const VerdictOptions& opts = {});

nlohmann::json verdict_to_json(const Verdict& v);

struct SweepItem {
    NumericalSet eps;
    long long k = 0;
    Verdict at_km1;
    Verdict at_k;
    bool pass = false;
};

struct SweepReport {
    std::vector<SweepItem> items;
    long long pass_count = 0;
    long long fail_count = 0;
    long long inconclusive_count = 0;
    long long exception_count = 0; // CertifiedException occurrences (headline for n >= 4)
};

// The two-check protocol over every enumerated eps with critical value in
// [k_lo, k_hi]: h0(I(k-1)) = 0 and h1(I(k)) = 0; n = 3 expectations route
// through the exceptional catalog first.
SweepReport theorem_sweep(int n, long long k_lo, long long k_hi, long long s_max,
                          long long d_max, const VerdictOptions& opts = {}, int jobs = 1);

nlohmann::json sweep_report_to_json(const SweepReport& rep);

} // namespace maxrank

#endif
