#include "maxrank/numset.hpp"
#include "maxrank/binomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace maxrank {

namespace {

bool pair_admissible(long long d, long long g, int n) {
    if (g == 0) return d > 0;
    return d >= std::max(2 * g - 1, g + n);
}

} // namespace

bool NumericalSet::admissible() const {
    if (n < 3 || pairs.empty()) return false;
    for (auto [d, g] : pairs)
        if (!pair_admissible(d, g, n)) return false;
    return true;
}

bool NumericalSet::admissible_generalized() const {
    if (n < 3 || pairs.empty()) return false;
    bool any_nonzero = false;
    for (auto [d, g] : pairs) {
        if (d == 0 && g == 0) continue;
        any_nonzero = true;
        if (!pair_admissible(d, g, n)) return false;
    }
    return any_nonzero;
}

std::string NumericalSet::to_text() const {
    std::ostringstream os;
    os << n;
    for (auto [d, g] : pairs) os << "; " << d << ',' << g;
    return os.str();
}

NumericalSet parse_numset(const std::string& text) {
    NumericalSet out;
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos; };
    auto fail = [&](const std::string& what) -> void {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what);
    };
    auto read_int = [&]() -> long long {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
        if (pos == start) fail("expected a non-negative integer");
        return std::stoll(text.substr(start, pos - start));
    };
    auto expect = [&](char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            fail(std::string("expected '") + c + "'");
        ++pos;
    };

    long long n = read_int();
    if (n < 3) fail("ambient dimension must be >= 3");
    out.n = (int)n;
    expect(';');
    while (true) {
        long long d = read_int();
        expect(',');
        long long g = read_int();
        out.pairs.emplace_back(d, g);
        skip_ws();
        if (pos == text.size()) break;
        expect(';');
    }
    return out;
}

long long wk(const NumericalSet& eps, long long k) {
    if (k < 1) throw std::invalid_argument("wk: k must be positive");
    if (!eps.admissible() && !eps.admissible_generalized())
        throw std::invalid_argument("wk: input not admissible (even in the generalized sense)");
    long long w = 0;
    for (auto [d, g] : eps.pairs) {
        if (d == 0 && g == 0) continue;
        w += k * d + 1 - g;
    }
    return w;
}

CriticalValueReport critical_value(const NumericalSet& eps) {
    if (!eps.admissible() && !eps.admissible_generalized())
        throw std::invalid_argument("critical_value: input not admissible");
    bool all_rational = std::all_of(eps.pairs.begin(), eps.pairs.end(),
                                    [](auto pr) { return pr.second == 0; });
    CriticalValueReport rep;
    if (all_rational && wk(eps, 1) <= eps.n + 1) {
        rep.k = 1;
        rep.w_at_k = wk(eps, 1);
        rep.capacity = eps.n + 1;
        rep.slack = rep.capacity - rep.w_at_k;
        return rep;
    }
    for (long long k = 2;; ++k) {
        long long w = wk(eps, k);
        long long cap = binom(eps.n + k, eps.n);
        if (w <= cap) {
            rep.k = k;
            rep.w_at_k = w;
            rep.capacity = cap;
            rep.slack = cap - w;
            return rep;
        }
    }
}

bool check_nn1(const NumericalSet& eps, long long k) {
    if (eps.n < 3 || k < 2) throw std::invalid_argument("check_nn1: need n >= 3, k >= 2");
    for (auto [d, g] : eps.pairs)
        if (!(d > g && g >= 0))
            throw std::invalid_argument("check_nn1: requires d_i > g_i >= 0 for all i");
    long long w = 0, w1 = 0;
    for (auto [d, g] : eps.pairs) {
        w += k * d + 1 - g;
        w1 += (k + 1) * d + 1 - g;
    }
    return w > binom(eps.n + k, eps.n) || w1 < binom(eps.n + k + 1, eps.n);
}

bool prec4_pair(long long a, long long q, long long d, long long g, Prec4Variant variant) {
    if (!pair_admissible(d, g, 4)) return false;
    if (a == 0 && q == 0) return g == 0;
    if (!pair_admissible(a, q, 4)) return false;
    if (a == d && q == g) return true;
    if (g < q || a < g - q + 1) return false;
    if (variant == Prec4Variant::Interpolation)
        return 1 + g - q <= 2 * (d - a);
    if (d - a == 2)
        return (a >= 4 && g - q <= 2) || (a >= 3 && g - q <= 1);
    return d - a >= 2 * (g - q);
}

bool prec_n_pair(long long a, long long q, long long d, long long g, int n) {
    if (q > g) return false;
    if (g == 0) return 0 <= a && a <= d;
    if (q == 0 && a == 0) return true;
    if (q > 0) {
        long long ma = std::max(2 * q - 1, n + q);
        long long mg = std::max(2 * g - 1, n + g);
        if (a - ma >= 0 && a - ma <= d - mg) return true;
    }
    if (d == 2 * g - 1 && d > g + n && q == 0 && 2 <= a && a <= n) return true;
    return false;
}

namespace {

void require_compatible(const NumericalSet& eta, const NumericalSet& eps, int n_expected) {
    if (n_expected > 0 && (eta.n != n_expected || eps.n != n_expected))
        throw std::invalid_argument("relation defined for n = " + std::to_string(n_expected));
    if (eta.n != eps.n || eta.s() != eps.s())
        throw std::invalid_argument("mismatched n or s");
}

} // namespace

bool prec4(const NumericalSet& eta, const NumericalSet& eps, Prec4Variant variant) {
    require_compatible(eta, eps, 4);
    for (size_t i = 0; i < eta.pairs.size(); ++i)
        if (!prec4_pair(eta.pairs[i].first, eta.pairs[i].second,
                        eps.pairs[i].first, eps.pairs[i].second, variant))
            return false;
    return true;
}

bool prec4_leq(const NumericalSet& eta, const NumericalSet& eps, Prec4Variant variant) {
    if (prec4(eta, eps, variant)) return true;
    // eps with exactly one pair dropped to (0,0)
    require_compatible(eta, eps, 4);
    int dropped = 0;
    for (size_t i = 0; i < eta.pairs.size(); ++i) {
        if (eta.pairs[i] == eps.pairs[i]) continue;
        if (eta.pairs[i] != std::pair<long long, long long>{0, 0}) return false;
        ++dropped;
    }
    return dropped == 1;
}

bool prec_n(const NumericalSet& eta, const NumericalSet& eps) {
    require_compatible(eta, eps, 0);
    if (eta.n < 5) throw std::invalid_argument("relation defined for n >= 5");
    for (size_t i = 0; i < eta.pairs.size(); ++i)
        if (!prec_n_pair(eta.pairs[i].first, eta.pairs[i].second,
                         eps.pairs[i].first, eps.pairs[i].second, eta.n))
            return false;
    return true;
}

namespace {

using Pair = std::pair<long long, long long>;

bool pair_prec(const Pair& aq, const Pair& dg, int n, Prec4Variant variant) {
    if (n == 4) return prec4_pair(aq.first, aq.second, dg.first, dg.second, variant);
    return prec_n_pair(aq.first, aq.second, dg.first, dg.second, n);
}

// All (a, q) below (d, g) in the per-pair relation, each admissible or (0,0).
std::vector<Pair> pair_downset(const Pair& dg, int n, Prec4Variant variant) {
    std::vector<Pair> out;
    for (long long a = 0; a <= dg.first; ++a)
        for (long long q = 0; q <= dg.second; ++q) {
            if (!(a == 0 && q == 0) && !pair_admissible(a, q, n)) continue;
            if (pair_prec({a, q}, dg, n, variant)) out.emplace_back(a, q);
        }
    return out;
}

long long pair_w(const Pair& p, long long k) {
    if (p.first == 0 && p.second == 0) return 0;
    return k * p.first + 1 - p.second;
}

} // namespace

namespace {

// Exhaustive optimum of sum(pair_w) over the product of per-coordinate
// candidate lists, constrained to [need_at_least, allow_at_most], with at
// least one nonzero pair. Candidates must be pre-sorted by weight
// (descending when maximizing, ascending when minimizing); suffix extrema
// give the branch-and-bound pruning. Ties resolve to the first solution
// found, i.e. lexicographically along the candidate order.
struct ProductSearch {
    const std::vector<std::vector<Pair>>& cand;
    std::vector<std::vector<long long>> weight;
    std::vector<long long> suffix_max, suffix_min;
    long long lo, hi;
    bool maximize;

    std::vector<Pair> best;
    long long best_w = -1;
    bool found = false;
    std::vector<Pair> cur;

    ProductSearch(const std::vector<std::vector<Pair>>& c, long long k, long long lo_,
                  long long hi_, bool maximize_)
        : cand(c), lo(lo_), hi(hi_), maximize(maximize_) {
        size_t s = cand.size();
        weight.resize(s);
        for (size_t i = 0; i < s; ++i)
            for (const Pair& p : cand[i]) weight[i].push_back(pair_w(p, k));
        suffix_max.assign(s + 1, 0);
        suffix_min.assign(s + 1, 0);
        for (size_t i = s; i-- > 0;) {
            auto [mn, mx] = std::minmax_element(weight[i].begin(), weight[i].end());
            suffix_max[i] = suffix_max[i + 1] + *mx;
            suffix_min[i] = suffix_min[i + 1] + *mn;
        }
        cur.resize(s);
    }

    bool better(long long w) const {
        if (!found) return true;
        return maximize ? w > best_w : w < best_w;
    }

    void run(size_t i, long long acc, bool nonzero) {
        if (acc + suffix_min[i] > hi) return;
        if (acc + suffix_max[i] < lo) return;
        if (found && !maximize && acc + suffix_min[i] > best_w) return;
        if (found && maximize && acc + suffix_max[i] < best_w) return;
        if (i == cand.size()) {
            if (!nonzero || acc < lo || acc > hi) return;
            if (better(acc)) {
                best = cur;
                best_w = acc;
                found = true;
            }
            return;
        }
        for (size_t j = 0; j < cand[i].size(); ++j) {
            cur[i] = cand[i][j];
            run(i + 1, acc + weight[i][j], nonzero || cand[i][j] != Pair{0, 0});
        }
    }
};

} // namespace

ExtremalResult maximal_eta(const NumericalSet& eps, Prec4Variant variant) {
    ExtremalResult res;
    if (!eps.admissible()) throw std::invalid_argument("maximal_eta: eps not admissible");
    if (eps.s() < 2) throw std::invalid_argument("maximal_eta: need s >= 2");
    long long k = critical_value(eps).k;
    if ((eps.n == 4 && k < 5) || (eps.n >= 5 && k < 3) || eps.n < 4)
        throw std::invalid_argument("maximal_eta: critical value out of supported range");

    const long long budget = binom(eps.n + k - 1, eps.n);
    const size_t s = eps.pairs.size();
    std::vector<std::vector<Pair>> cand(s);
    for (size_t i = 0; i < s; ++i)
        cand[i] = pair_downset(eps.pairs[i], eps.n, variant);

    for (size_t i = 0; i < s; ++i) {
        if (cand[i].empty()) {
            res.status = ExtremalStatus::EmptyFamily;
            res.note = "no pair refines component " + std::to_string(i);
            return res;
        }
        // heaviest first: the first max-weight solution found is then the
        // lexicographically largest one
        std::sort(cand[i].begin(), cand[i].end(), [&](const Pair& x, const Pair& y) {
            long long wx = pair_w(x, k - 1), wy = pair_w(y, k - 1);
            if (wx != wy) return wx > wy;
            return x > y;
        });
    }

    // The heaviest in-budget member of the family is automatically a maximal
    // element: any strictly larger refinement of a single pair strictly
    // increases its weight.
    ProductSearch search(cand, k - 1, 0, budget, /*maximize=*/true);
    search.run(0, 0, false);
    if (!search.found) {
        res.status = ExtremalStatus::EmptyFamily;
        res.note = "every nonzero refinement exceeds the degree-(k-1) capacity";
        return res;
    }

    res.eta.n = eps.n;
    res.eta.pairs = search.best;
    res.value = budget - search.best_w;
    long long lo = 0, hi = (eps.n == 4) ? 2 * k - 4 : 2 * k;
    if (res.value < lo || res.value > hi) {
        res.status = ExtremalStatus::BoundViolated;
        res.note = "slack " + std::to_string(res.value) + " outside [" +
                   std::to_string(lo) + ", " + std::to_string(hi) + "]";
    }
    return res;
}

ExtremalResult minimal_eta(const NumericalSet& eps, long long k) {
    ExtremalResult res;
    if (eps.n < 5) throw std::invalid_argument("minimal_eta: need n >= 5");
    if (k < 2) throw std::invalid_argument("minimal_eta: need k >= 2");
    if (!eps.admissible()) throw std::invalid_argument("minimal_eta: eps not admissible");
    const long long threshold = binom(eps.n + k, eps.n);
    if (wk(eps, k) < threshold)
        throw std::invalid_argument("minimal_eta: w_k(eps) below binom(n+k,n)");

    const size_t s = eps.pairs.size();
    std::vector<std::vector<Pair>> cand(s);
    for (size_t i = 0; i < s; ++i)
        cand[i] = pair_downset(eps.pairs[i], eps.n, Prec4Variant::Literal);

    for (size_t i = 0; i < s; ++i) {
        // lightest first: the first min-weight solution found is then the
        // lexicographically smallest one
        std::sort(cand[i].begin(), cand[i].end(), [&](const Pair& x, const Pair& y) {
            long long wx = pair_w(x, k), wy = pair_w(y, k);
            if (wx != wy) return wx < wy;
            return x < y;
        });
    }

    // The lightest member still over the threshold is automatically a minimal
    // element: any strictly smaller refinement strictly decreases the weight.
    ProductSearch search(cand, k, threshold, wk(eps, k), /*maximize=*/false);
    search.run(0, 0, false);
    if (!search.found) {
        res.status = ExtremalStatus::EmptyFamily;
        res.note = "no refinement reaches the degree-k capacity";
        return res;
    }

    res.eta.n = eps.n;
    res.eta.pairs = search.best;
    res.value = search.best_w - threshold;
    if (res.value < 0 || res.value > 2 * k) {
        res.status = ExtremalStatus::BoundViolated;
        res.note = "excess " + std::to_string(res.value) + " outside [0, " +
                   std::to_string(2 * k) + "]";
    }
    return res;
}

bool hor2_check(const NumericalSet& eta, long long k) {
    long long sum_a = 0;
    for (auto [a, q] : eta.pairs) sum_a += a;
    if (sum_a < 8 * k - 1) return false;
    long long n = eta.n;
    if (n * (n + 1) * (k + 1) <= k * (n + k - 1) && sum_a < binom(n + k - 2, n - 2))
        return false;
    return true;
}

RQPair rq(long long m) {
    if (m < 1) throw std::invalid_argument("rq: m must be positive");
    long long B = binom(m + 3, 3);
    RQPair out;
    out.m = m;
    out.q = (B - 1) % m;
    out.r = (B - 1 - out.q) / m;
    return out;
}

bool interpolation_ok(InterpolationKind kind, long long m_or_n, long long d,
                      long long g, long long x) {
    if (x < 0 || d < 0 || g < 0) throw std::invalid_argument("interpolation_ok: negative input");
    switch (kind) {
    case InterpolationKind::Aly1: {
        long long m = m_or_n;
        if (m < 3 || d < g + m)
            throw std::invalid_argument("interpolation_ok: aly1 needs m >= 3, d >= g + m");
        if ((m == 3 && d == 5 && g == 2) || (m == 5 && d == 7 && g == 2))
            return x <= 9;
        return (m + 1) * d + (m - 3) * (1 - g) >= (m - 1) * x;
    }
    case InterpolationKind::L5: {
        long long n = m_or_n;
        if (n < 3 || (n + 1) * d < n * g + n * (n + 1))
            throw std::invalid_argument("interpolation_ok: l5 needs (n+1)d >= ng + n(n+1)");
        if (x > d) return false;
        // x <= ((n-1)^2 d - (n-2)^2 g - (2n^2 - 5n + 12)) / (n-2)^2, exactly
        long long num = (n - 1) * (n - 1) * d - (n - 2) * (n - 2) * g -
                        (2 * n * n - 5 * n + 12);
        return x * (n - 2) * (n - 2) <= num;
    }
    case InterpolationKind::Lv4: {
        bool ok_range = d >= g + 4 || (g == 0 && d >= 1 && d <= 3);
        if (!ok_range)
            throw std::invalid_argument("interpolation_ok: lv4 needs d >= g+4 or small rational");
        return x <= d;
    }
    }
    throw std::logic_error("interpolation_ok: unknown kind");
}

std::vector<NumericalSet> enumerate_admissible(int n, long long k_target,
                                               long long s_max, long long d_max) {
    if (n < 3 || s_max < 1 || d_max < 1 || k_target < 1)
        throw std::invalid_argument("enumerate_admissible: bounds must be positive, n >= 3");
    // all admissible pairs, sorted (g desc, then d desc) — component order
    // inside each set is non-increasing in this order
    std::vector<Pair> alphabet;
    for (long long g = d_max; g >= 0; --g)
        for (long long d = d_max; d >= 1; --d)
            if (pair_admissible(d, g, n)) alphabet.emplace_back(d, g);
    std::sort(alphabet.begin(), alphabet.end(), [](const Pair& x, const Pair& y) {
        if (x.second != y.second) return x.second > y.second;
        return x.first > y.first;
    });

    long long cap_k = binom(n + k_target, n);
    std::vector<NumericalSet> out;
    std::vector<Pair> cur;
    auto rec = [&](auto&& self, size_t min_idx) -> void {
        if (!cur.empty()) {
            NumericalSet eps;
            eps.n = n;
            eps.pairs = cur;
            if (critical_value(eps).k == k_target) out.push_back(eps);
        }
        if ((long long)cur.size() == s_max) return;
        for (size_t i = min_idx; i < alphabet.size(); ++i) {
            cur.push_back(alphabet[i]);
            // w_k only grows with more components; prune once over capacity
            NumericalSet eps;
            eps.n = n;
            eps.pairs = cur;
            if (wk(eps, k_target) <= cap_k)
                self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    // s ascending, then lexicographic in component alphabet order
    std::stable_sort(out.begin(), out.end(), [](const NumericalSet& x, const NumericalSet& y) {
        return x.s() < y.s();
    });
    return out;
}

} // namespace maxrank
