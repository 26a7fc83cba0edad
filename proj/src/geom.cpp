#include "maxrank/geom.hpp"
#include "maxrank/binomial.hpp"
#include "maxrank/numset.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace maxrank {

namespace {

// projective equality: all 2x2 minors of [a; b] vanish
bool proj_equal(const Vec& a, const Vec& b, const PrimeField& f) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i])) != 0) return false;
    return true;
}

bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](int64_t x) { return x == 0; });
}

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(size_t a, size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

// one nontrivial kernel vector of A, or nullopt if A has full column rank
std::optional<Vec> nullspace_vector(FFMatrix a, const PrimeField& f) {
    std::vector<long long> pivot_col_of_row;
    size_t row = 0;
    std::vector<bool> is_pivot(a.cols, false);
    for (size_t col = 0; col < a.cols && row < a.rows; ++col) {
        size_t piv = row;
        while (piv < a.rows && a.at(piv, col) == 0) ++piv;
        if (piv == a.rows) continue;
        if (piv != row)
            for (size_t c = 0; c < a.cols; ++c) std::swap(a.at(piv, c), a.at(row, c));
        int64_t inv = f.inv(a.at(row, col));
        for (size_t c = 0; c < a.cols; ++c) a.at(row, c) = f.mul(a.at(row, c), inv);
        for (size_t r = 0; r < a.rows; ++r) {
            if (r == row || a.at(r, col) == 0) continue;
            int64_t scale = a.at(r, col);
            for (size_t c = 0; c < a.cols; ++c)
                a.at(r, c) = f.sub(a.at(r, c), f.mul(scale, a.at(row, c)));
        }
        is_pivot[col] = true;
        pivot_col_of_row.push_back((long long)col);
        ++row;
    }
    size_t free_col = a.cols;
    for (size_t c = 0; c < a.cols; ++c)
        if (!is_pivot[c]) { free_col = c; break; }
    if (free_col == a.cols) return std::nullopt;
    Vec v(a.cols, 0);
    v[free_col] = 1;
    for (size_t r = 0; r < pivot_col_of_row.size(); ++r)
        v[pivot_col_of_row[r]] = f.neg(a.at(r, free_col));
    return v;
}

} // namespace

Vec Component::point_at(int64_t s, int64_t u, const PrimeField& f) const {
    Vec out(param.size());
    for (size_t j = 0; j < param.size(); ++j) out[j] = param[j].eval(s, u, f);
    return out;
}

long long CurveModel::total_degree() const {
    long long d = 0;
    for (const auto& c : components) d += c.degree();
    return d;
}

std::string CurveModel::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["components"] = nlohmann::json::array();
    for (const auto& c : components) {
        nlohmann::json jc;
        jc["kind"] = c.kind == ComponentKind::Line ? "line" : "rational_curve";
        jc["label"] = c.label;
        jc["degree"] = c.degree();
        jc["param"] = nlohmann::json::array();
        for (const auto& b : c.param) jc["param"].push_back(b.coeffs);
        j["components"].push_back(jc);
    }
    j["decorations"] = nlohmann::json::array();
    for (const auto& d : decorations) {
        nlohmann::json jd;
        jd["kind"] = d.kind == DecorationKind::Point     ? "point"
                     : d.kind == DecorationKind::Arrow   ? "arrow"
                                                         : "planar_double_point";
        jd["point"] = d.point;
        jd["directions"] = d.directions;
        j["decorations"].push_back(jd);
    }
    j["nodes"] = nlohmann::json::array();
    for (const auto& e : nodes) {
        nlohmann::json je;
        je["a"] = e.a;
        je["b"] = e.b;
        je["point"] = e.point;
        je["param_a"] = {e.param_a.first, e.param_a.second};
        je["param_b"] = {e.param_b.first, e.param_b.second};
        j["nodes"].push_back(je);
    }
    return j.dump();
}

TreeType TreeType::bamboo(int d) {
    TreeType t;
    t.d = d;
    for (int i = 2; i <= d; ++i) t.tau.push_back(i - 1);
    return t;
}

TreeType TreeType::spreading(int d) {
    TreeType t;
    t.d = d;
    for (int i = 2; i <= d; ++i) t.tau.push_back(1);
    return t;
}

bool TreeType::valid() const {
    if (d < 1 || (int)tau.size() != d - 1) return false;
    for (int i = 2; i <= d; ++i)
        if (tau[i - 2] < 1 || tau[i - 2] >= i) return false;
    return true;
}

Vec random_point(int n, Rng& rng, const PrimeField& f) {
    Vec v(n + 1);
    do {
        for (auto& x : v) x = (int64_t)rng.uniform((uint64_t)f.p);
    } while (is_zero_vec(v));
    return v;
}

Vec random_direction(int n, Rng& rng, const PrimeField& f) { return random_point(n, rng, f); }

Component make_line(int n, const Vec& p1, const Vec& p2, const PrimeField& f) {
    if ((int)p1.size() != n + 1 || (int)p2.size() != n + 1)
        throw std::invalid_argument("make_line: point dimension mismatch");
    if (proj_equal(p1, p2, f) || is_zero_vec(p1) || is_zero_vec(p2))
        throw std::invalid_argument("make_line: points do not span a line");
    Component c;
    c.kind = ComponentKind::Line;
    c.n = n;
    c.param.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
        c.param[j] = BinaryForm::zero(1);
        c.param[j].coeffs[1] = f.reduce(p1[j]); // s-coefficient
        c.param[j].coeffs[0] = f.reduce(p2[j]); // u-coefficient
    }
    return c;
}

Component make_random_line(int n, Rng& rng, const PrimeField& f) {
    for (int tries = 0; tries < 100; ++tries) {
        Vec p1 = random_point(n, rng, f);
        Vec p2 = random_point(n, rng, f);
        if (!proj_equal(p1, p2, f)) return make_line(n, p1, p2, f);
    }
    throw std::runtime_error("make_random_line: exhausted retries");
}

namespace {

bool curve_invariants_ok(const Component& c, Rng& rng, const PrimeField& f) {
    int d = c.degree();
    int n = c.n;
    // coefficient matrix spans: rank min(d+1, n+1)
    FFMatrix m = FFMatrix::zero(n + 1, d + 1);
    for (int j = 0; j <= n; ++j)
        for (int e = 0; e <= d; ++e) m.at(j, e) = c.param[j].coeffs[e];
    if ((long long)rank_ff(m, f) != std::min(d + 1, n + 1)) return false;
    // basepoint-free whp: two random linear combinations share no root
    for (int attempt = 0; attempt < 2; ++attempt) {
        BinaryForm u = BinaryForm::zero(d), v = BinaryForm::zero(d);
        for (int j = 0; j <= n; ++j) {
            u = bf_add(u, bf_scale(c.param[j], (int64_t)rng.uniform((uint64_t)f.p), f), f);
            v = bf_add(v, bf_scale(c.param[j], (int64_t)rng.uniform((uint64_t)f.p), f), f);
        }
        if (!u.is_zero() && !v.is_zero() && bf_coprime(u, v, f)) return true;
    }
    return false;
}

} // namespace

Component make_rational_curve(int n, int d, Rng& rng, const PrimeField& f) {
    if (d < 1 || n < 3) throw std::invalid_argument("make_rational_curve: need d >= 1, n >= 3");
    for (int tries = 0; tries < 100; ++tries) {
        Component c;
        c.kind = d == 1 ? ComponentKind::Line : ComponentKind::RationalCurve;
        c.n = n;
        c.param.resize(n + 1);
        for (int j = 0; j <= n; ++j) {
            c.param[j] = BinaryForm::zero(d);
            for (int e = 0; e <= d; ++e)
                c.param[j].coeffs[e] = (int64_t)rng.uniform((uint64_t)f.p);
        }
        if (curve_invariants_ok(c, rng, f)) return c;
    }
    throw std::runtime_error("make_rational_curve: exhausted retries");
}

namespace {

// (s, u) on a line whose image is proportional to pt, if any
std::optional<std::pair<int64_t, int64_t>> line_param_of_point(const Component& line,
                                                               const Vec& pt,
                                                               const PrimeField& f) {
    // solve M (s, u)^T = lambda pt: nullspace of [M | -pt]
    size_t rows = line.param.size();
    FFMatrix m = FFMatrix::zero(rows, 3);
    for (size_t j = 0; j < rows; ++j) {
        m.at(j, 0) = line.param[j].coeffs[1];
        m.at(j, 1) = line.param[j].coeffs[0];
        m.at(j, 2) = f.neg(f.reduce(pt[j]));
    }
    auto ker = nullspace_vector(m, f);
    if (!ker) return std::nullopt;
    auto& v = *ker;
    if (v[2] == 0) return std::nullopt; // lambda = 0: pt not on the line
    if (v[0] == 0 && v[1] == 0) return std::nullopt;
    return std::make_pair(v[0], v[1]);
}

} // namespace

CurveModel make_tree(int n, const TreeType& type, Rng& rng, const PrimeField& f,
                     const TreeConstraints& constraints) {
    if (!type.valid()) throw std::invalid_argument("make_tree: invalid tree type");
    CurveModel model;
    model.n = n;

    auto pick_point = [&](int line_idx) -> Vec {
        auto it = constraints.through_points.find(line_idx);
        if (it != constraints.through_points.end()) return it->second;
        return random_point(n, rng, f);
    };

    // L_1
    {
        Vec p1 = pick_point(1);
        Vec p2 = random_point(n, rng, f);
        while (proj_equal(p1, p2, f)) p2 = random_point(n, rng, f);
        Component l1 = make_line(n, p1, p2, f);
        l1.label = "L1";
        model.components.push_back(l1);
    }

    for (int i = 2; i <= type.d; ++i) {
        int parent = type.tau[i - 2];
        const Component& pl = model.components[parent - 1];
        Vec node_pt;
        std::pair<int64_t, int64_t> parent_param;
        auto pin = constraints.pinned_nodes.find(i);
        if (pin != constraints.pinned_nodes.end()) {
            auto par = line_param_of_point(pl, pin->second, f);
            if (!par)
                throw std::invalid_argument(
                    "make_tree: infeasible constraints: pinned node for line " +
                    std::to_string(i) + " does not lie on line " + std::to_string(parent));
            node_pt = pin->second;
            parent_param = *par;
        } else {
            int64_t s = (int64_t)rng.uniform((uint64_t)f.p);
            parent_param = {s, 1};
            node_pt = pl.point_at(s, 1, f);
        }
        Vec second = pick_point(i);
        while (proj_equal(node_pt, second, f)) second = random_point(n, rng, f);
        Component li = make_line(n, node_pt, second, f);
        li.label = "L" + std::to_string(i);
        model.components.push_back(li);
        Node nd;
        nd.a = (size_t)parent - 1;
        nd.b = (size_t)i - 1;
        nd.point = node_pt;
        nd.param_a = parent_param;
        nd.param_b = {1, 0}; // the child line hits the node at (s,u) = (1,0)
        model.nodes.push_back(nd);
    }
    return model;
}

CurveModel make_genus_model(int n, long long d, long long g, Rng& rng, const PrimeField& f) {
    bool admissible = (g == 0 && d > 0) || (g > 0 && d >= std::max(2 * g - 1, g + n));
    if (!admissible) throw std::invalid_argument("make_genus_model: (d, g) not admissible");
    CurveModel model;
    model.n = n;
    long long c = d - g;
    Component curve = make_rational_curve(n, (int)c, rng, f);
    curve.label = "C";
    model.components.push_back(curve);
    // g disjoint secant lines, each through 2 distinct parameter points of C
    std::set<int64_t> used;
    for (long long j = 0; j < g; ++j) {
        int64_t s1, s2;
        do { s1 = (int64_t)rng.uniform((uint64_t)f.p); } while (used.count(s1));
        used.insert(s1);
        do { s2 = (int64_t)rng.uniform((uint64_t)f.p); } while (used.count(s2));
        used.insert(s2);
        Vec p1 = model.components[0].point_at(s1, 1, f);
        Vec p2 = model.components[0].point_at(s2, 1, f);
        Component sec = make_line(n, p1, p2, f);
        sec.label = "S" + std::to_string(j + 1);
        model.components.push_back(sec);
        Node n1{0, (size_t)model.components.size() - 1, p1, {s1, 1}, {1, 0}};
        Node n2{0, (size_t)model.components.size() - 1, p2, {s2, 1}, {0, 1}};
        model.nodes.push_back(n1);
        model.nodes.push_back(n2);
    }
    return model;
}

namespace {

void check_nodal(const CurveModel& model) {
    // Nodes must be genuine double points: no component sees two nodes at
    // the same parameter (which would mean >= 3 branches at a point).
    // Parameters are stored normalized ((s,1), (1,0) or (0,1)), so plain
    // pair comparison is sound.
    std::set<std::pair<size_t, std::pair<int64_t, int64_t>>> seen;
    for (const auto& nd : model.nodes) {
        if (nd.a >= model.components.size() || nd.b >= model.components.size() || nd.a == nd.b)
            throw std::invalid_argument("model: bad node indices");
        if (!seen.insert({nd.a, nd.param_a}).second ||
            !seen.insert({nd.b, nd.param_b}).second)
            throw std::invalid_argument("model: non-nodal incidence (three branches at a point)");
    }
}

std::vector<std::vector<size_t>> connected_pieces(const CurveModel& model) {
    UnionFind uf(model.components.size());
    for (const auto& nd : model.nodes) uf.unite(nd.a, nd.b);
    std::map<size_t, std::vector<size_t>> groups;
    for (size_t i = 0; i < model.components.size(); ++i) groups[uf.find(i)].push_back(i);
    std::vector<std::vector<size_t>> out;
    for (auto& [root, members] : groups) out.push_back(members);
    return out;
}

} // namespace

std::vector<long long> arithmetic_genus(const CurveModel& model) {
    check_nodal(model);
    auto pieces = connected_pieces(model);
    std::vector<long long> out;
    for (const auto& piece : pieces) {
        std::set<size_t> members(piece.begin(), piece.end());
        long long delta = 0;
        for (const auto& nd : model.nodes)
            if (members.count(nd.a)) delta += 1;
        out.push_back(delta - (long long)piece.size() + 1);
    }
    return out;
}

long long model_w(const CurveModel& model, long long t) {
    auto pieces = connected_pieces(model);
    auto genera = arithmetic_genus(model);
    long long w = 0;
    for (size_t i = 0; i < pieces.size(); ++i) {
        long long deg = 0;
        for (size_t c : pieces[i]) deg += model.components[c].degree();
        w += t * deg + 1 - genera[i];
    }
    for (const auto& d : model.decorations) w += d.condition_rows();
    return w;
}

FFMatrix condition_matrix(const CurveModel& model, long long t, const PrimeField& f) {
    if (t < 1) throw std::invalid_argument("condition_matrix: t >= 1");
    MonomialBasis basis = monomial_basis(model.n, (int)t);
    size_t cols = basis.exponents.size();
    size_t rows = 0;
    for (const auto& c : model.components) rows += (size_t)(c.degree() * t + 1);
    for (const auto& d : model.decorations) rows += (size_t)d.condition_rows();
    FFMatrix m = FFMatrix::zero(rows, cols);

    size_t row0 = 0;
    for (const auto& c : model.components) {
        // pows[j][e] = param[j]^e, filled lazily up to degree t
        std::vector<std::vector<BinaryForm>> pows(model.n + 1);
        for (int j = 0; j <= model.n; ++j) {
            pows[j].reserve(t + 1);
            pows[j].push_back(BinaryForm::zero(0));
            pows[j][0].coeffs[0] = 1;
            for (long long e = 1; e <= t; ++e)
                pows[j].push_back(bf_mul(pows[j][e - 1], c.param[j], f));
        }
        for (size_t col = 0; col < cols; ++col) {
            const auto& alpha = basis.exponents[col];
            // pullback of the monomial along the parametrization
            BinaryForm pb = pows[0][alpha[0]];
            for (int j = 1; j <= model.n; ++j)
                if (alpha[j] > 0) pb = bf_mul(pb, pows[j][alpha[j]], f);
            for (int r = 0; r <= pb.degree; ++r) m.at(row0 + r, col) = pb.coeffs[r];
        }
        row0 += (size_t)(c.degree() * t + 1);
    }

    for (const auto& dec : model.decorations) {
        // cached powers of the point coordinates
        std::vector<std::vector<int64_t>> pw(model.n + 1);
        for (int j = 0; j <= model.n; ++j) {
            pw[j].assign(t + 1, 1);
            for (long long e = 1; e <= t; ++e) pw[j][e] = f.mul(pw[j][e - 1], f.reduce(dec.point[j]));
        }
        for (size_t col = 0; col < cols; ++col) {
            const auto& alpha = basis.exponents[col];
            int64_t val = 1;
            for (int j = 0; j <= model.n; ++j) val = f.mul(val, pw[j][alpha[j]]);
            m.at(row0, col) = val;
        }
        for (size_t dir = 0; dir < dec.directions.size(); ++dir) {
            const Vec& v = dec.directions[dir];
            for (size_t col = 0; col < cols; ++col) {
                const auto& alpha = basis.exponents[col];
                int64_t acc = 0;
                for (int j = 0; j <= model.n; ++j) {
                    if (alpha[j] == 0) continue;
                    int64_t term = f.mul(f.reduce(v[j]), alpha[j] % f.p);
                    term = f.mul(term, pw[j][alpha[j] - 1]);
                    for (int l = 0; l <= model.n; ++l)
                        if (l != j) term = f.mul(term, pw[l][alpha[l]]);
                    acc = f.add(acc, term);
                }
                m.at(row0 + 1 + dir, col) = acc;
            }
        }
        row0 += (size_t)dec.condition_rows();
    }
    return m;
}

HilbertSample sample_model(const CurveModel& model, long long t, const PrimeField& f,
                           uint64_t seed) {
    FFMatrix m = condition_matrix(model, t, f);
    long long rank = (long long)rank_ff(m, f);
    HilbertSample s;
    s.t = t;
    s.p = f.p;
    s.seed = seed;
    s.rank = rank;
    long long cap = binom(model.n + t, model.n);
    long long w = model_w(model, t);
    s.h0 = cap - rank;
    s.h1 = w - rank;
    s.chi = cap - w;
    return s;
}

std::vector<HilbertSample> h0_h1(const ModelBuilder& build, long long t, const PrimeField& f,
                                 int trials, uint64_t master_seed) {
    if (trials < 1) throw std::invalid_argument("h0_h1: trials >= 1");
    std::vector<HilbertSample> out;
    out.reserve(trials);
    for (int i = 0; i < trials; ++i) {
        uint64_t seed = derive_seed(master_seed, (uint64_t)i);
        Rng rng(seed);
        CurveModel model = build(rng);
        out.push_back(sample_model(model, t, f, seed));
    }
    return out;
}

size_t representative_index(const std::vector<HilbertSample>& samples) {
    size_t best = 0;
    for (size_t i = 1; i < samples.size(); ++i)
        if (samples[i].h0 < samples[best].h0) best = i;
    return best;
}

namespace {

int64_t eval_linear(const Vec& h, const Vec& pt, const PrimeField& f) {
    int64_t acc = 0;
    for (size_t j = 0; j < h.size(); ++j) acc = f.add(acc, f.mul(f.reduce(h[j]), f.reduce(pt[j])));
    return acc;
}

BinaryForm pullback_linear(const Vec& h, const Component& c, const PrimeField& f) {
    BinaryForm acc = BinaryForm::zero(c.degree());
    for (size_t j = 0; j < h.size(); ++j)
        acc = bf_add(acc, bf_scale(c.param[j], f.reduce(h[j]), f), f);
    return acc;
}

// chi(I(t)) for a sub-model given by a subset of components (with the nodes
// among them) in ambient dimension amb: binom(amb+t, amb) - w
long long chi_of_subset(const CurveModel& model, const std::set<size_t>& subset, long long t,
                        int amb, long long extra_points) {
    if (subset.empty()) return binom(amb + t, amb) - extra_points;
    UnionFind uf(model.components.size());
    long long delta = 0;
    for (const auto& nd : model.nodes)
        if (subset.count(nd.a) && subset.count(nd.b)) {
            uf.unite(nd.a, nd.b);
            ++delta;
        }
    // w = sum over pieces of (t*deg + 1 - p_a) with p_a = delta - c + 1 per
    // piece; summed over all pieces this telescopes to t*deg + #comps - delta
    long long deg_total = 0;
    for (size_t i : subset) deg_total += model.components[i].degree();
    long long w = t * deg_total + (long long)subset.size() - delta;
    return binom(amb + t, amb) - w - extra_points;
}

} // namespace

bool residual_chi_check(const CurveModel& model, const Vec& hyperplane, long long t,
                        const PrimeField& f) {
    if (t < 2) throw std::invalid_argument("residual_chi_check: t >= 2");
    if (is_zero_vec(hyperplane)) throw std::invalid_argument("residual_chi_check: zero hyperplane");
    check_nodal(model);
    std::set<size_t> in_h, out_h;
    for (size_t i = 0; i < model.components.size(); ++i) {
        BinaryForm pb = pullback_linear(hyperplane, model.components[i], f);
        if (pb.is_zero()) {
            in_h.insert(i);
        } else {
            // transversality: the hyperplane cuts the component in distinct
            // smooth points
            if (!bf_squarefree(pb, f))
                throw std::invalid_argument("residual_chi_check: non-transversal component");
            out_h.insert(i);
        }
    }
    long long cross_edges = 0;
    for (const auto& nd : model.nodes) {
        bool a_in = in_h.count(nd.a) > 0, b_in = in_h.count(nd.b) > 0;
        if (a_in != b_in) ++cross_edges;
        if (!a_in && !b_in && eval_linear(hyperplane, nd.point, f) == 0)
            throw std::invalid_argument("residual_chi_check: node of the residual lies on H");
    }
    if (!model.decorations.empty())
        throw std::invalid_argument("residual_chi_check: decorated models unsupported");

    // Z cap H = (components inside H) plus, for each component off H, its
    // deg-many trace points; traces at cross nodes already lie on the inside
    // part and are not counted twice.
    long long out_deg = 0;
    for (size_t i : out_h) out_deg += model.components[i].degree();
    long long trace_points = out_deg - cross_edges;

    long long lhs_residual = chi_of_subset(model, out_h, t - 1, model.n, 0);
    long long lhs_trace = chi_of_subset(model, in_h, t, model.n - 1, trace_points);
    long long rhs;
    {
        std::set<size_t> all;
        for (size_t i = 0; i < model.components.size(); ++i) all.insert(i);
        rhs = chi_of_subset(model, all, t, model.n, 0);
    }
    return lhs_residual + lhs_trace == rhs;
}

std::optional<std::vector<size_t>> good_node_partition(const CurveModel& tree,
                                                       const std::vector<long long>& degrees) {
    check_nodal(tree);
    auto pieces = connected_pieces(tree);
    if (pieces.size() != 1 || tree.nodes.size() + 1 != tree.components.size())
        throw std::invalid_argument("good_node_partition: input is not a tree");
    long long want_total = std::accumulate(degrees.begin(), degrees.end(), 0LL);
    if (want_total != tree.total_degree())
        throw std::invalid_argument("good_node_partition: degrees do not sum to deg(tree)");
    size_t s = degrees.size();
    if (s == 0) throw std::invalid_argument("good_node_partition: empty degree list");
    std::vector<long long> want = degrees;
    std::sort(want.begin(), want.end());

    size_t m = tree.nodes.size();
    if (s - 1 > m) return std::nullopt;
    std::vector<size_t> pick(s - 1);
    // first combination
    std::function<bool(size_t, size_t)> try_from = [&](size_t slot, size_t start) -> bool {
        if (slot == s - 1) {
            std::set<size_t> removed(pick.begin(), pick.end());
            UnionFind uf(tree.components.size());
            for (size_t e = 0; e < m; ++e)
                if (!removed.count(e)) uf.unite(tree.nodes[e].a, tree.nodes[e].b);
            std::map<size_t, long long> deg;
            for (size_t i = 0; i < tree.components.size(); ++i)
                deg[uf.find(i)] += tree.components[i].degree();
            std::vector<long long> got;
            for (auto& [root, dg] : deg) got.push_back(dg);
            std::sort(got.begin(), got.end());
            return got == want;
        }
        for (size_t e = start; e + (s - 2 - slot) < m; ++e) {
            pick[slot] = e;
            if (try_from(slot + 1, e + 1)) return true;
        }
        return false;
    };
    if (s == 1) return std::vector<size_t>{}; // whole tree, no cuts
    if (try_from(0, 0)) return pick;
    return std::nullopt;
}

// ---- Segre helpers ----

bool on_segre_quadric(const Vec& pt, const PrimeField& f) {
    return f.sub(f.mul(f.reduce(pt[0]), f.reduce(pt[3])),
                 f.mul(f.reduce(pt[1]), f.reduce(pt[2]))) == 0;
}

Component ruling_line(RulingFamily fam, int64_t c0, int64_t c1, const PrimeField& f) {
    c0 = f.reduce(c0);
    c1 = f.reduce(c1);
    if (c0 == 0 && c1 == 0) throw std::invalid_argument("ruling_line: zero parameter");
    Vec p1(4), p2(4);
    if (fam == RulingFamily::A) {
        p1 = {c0, c1, 0, 0}; // s = 1, u = 0
        p2 = {0, 0, c0, c1}; // s = 0, u = 1
    } else {
        p1 = {c0, 0, c1, 0};
        p2 = {0, c0, 0, c1};
    }
    Component line = make_line(3, p1, p2, f);
    line.label = (fam == RulingFamily::A ? "A(" : "B(") + std::to_string(c0) + ":" +
                 std::to_string(c1) + ")";
    return line;
}

std::optional<std::pair<int64_t, int64_t>> ruling_param(RulingFamily fam, const Vec& pt,
                                                        const PrimeField& f) {
    if (!on_segre_quadric(pt, f)) return std::nullopt;
    int64_t a0 = f.reduce(pt[0]), a1 = f.reduce(pt[1]), a2 = f.reduce(pt[2]),
            a3 = f.reduce(pt[3]);
    if (fam == RulingFamily::A) {
        if (a0 != 0 || a1 != 0) return std::make_pair(a0, a1);
        return std::make_pair(a2, a3);
    }
    if (a0 != 0 || a2 != 0) return std::make_pair(a0, a2);
    return std::make_pair(a1, a3);
}

bool lines_meet(const Component& l1, const Component& l2, const PrimeField& f) {
    FFMatrix m = FFMatrix::zero(4, l1.param.size());
    Vec rows[4] = {l1.point_at(1, 0, f), l1.point_at(0, 1, f), l2.point_at(1, 0, f),
                   l2.point_at(0, 1, f)};
    for (int r = 0; r < 4; ++r)
        for (size_t c = 0; c < l1.param.size(); ++c) m.at(r, c) = rows[r][c];
    return rank_ff(m, f) <= 3;
}

namespace {

struct Endpoint {
    size_t piece;          // index into the bamboo list
    int side;              // 0 or 1 (which end of the path)
    Vec point;             // on Q, not a node
    std::pair<int64_t, int64_t> lambda; // A-family parameter
    size_t line;           // component index of the extreme line
};

bool proj_pair_equal(std::pair<int64_t, int64_t> a, std::pair<int64_t, int64_t> b,
                     const PrimeField& f) {
    return f.sub(f.mul(a.first, b.second), f.mul(a.second, b.first)) == 0;
}

// the <= 2 points of line cap Q
std::vector<Vec> line_cap_quadric(const Component& line, const PrimeField& f) {
    BinaryForm prod03 = bf_mul(line.param[0], line.param[3], f);
    BinaryForm prod12 = bf_mul(line.param[1], line.param[2], f);
    BinaryForm q = BinaryForm::zero(2);
    for (int i = 0; i <= 2; ++i) q.coeffs[i] = f.sub(prod03.coeffs[i], prod12.coeffs[i]);
    std::vector<Vec> pts;
    if (q.is_zero()) return pts; // line inside Q: infinitely many, caller handles
    // roots of c2 s^2 + c1 s u + c0 u^2
    int64_t c2 = q.coeffs[2], c1 = q.coeffs[1], c0 = q.coeffs[0];
    std::vector<std::pair<int64_t, int64_t>> roots;
    if (c2 == 0) {
        roots.emplace_back(1, 0); // u = 0 root
        if (c1 != 0) roots.emplace_back(f.neg(f.mul(c0, f.inv(c1))), 1);
    } else {
        int64_t disc = f.sub(f.mul(c1, c1), f.mul(4 % f.p, f.mul(c2, c0)));
        auto sq = sqrt_mod(disc, f);
        if (sq) {
            int64_t inv2a = f.inv(f.mul(2, c2));
            int64_t r1 = f.mul(f.add(f.neg(c1), *sq), inv2a);
            roots.emplace_back(r1, 1);
            if (*sq != 0) {
                int64_t r2 = f.mul(f.sub(f.neg(c1), *sq), inv2a);
                roots.emplace_back(r2, 1);
            }
        }
    }
    for (auto [s, u] : roots) pts.push_back(line.point_at(s, u, f));
    return pts;
}

} // namespace

std::optional<std::vector<Component>> good_secants(const CurveModel& forest, int x,
                                                   const PrimeField& f) {
    if (forest.n != 3) throw std::invalid_argument("good_secants: n = 3 only");
    if (x == 0) return std::vector<Component>{};
    check_nodal(forest);
    auto pieces = connected_pieces(forest);
    if ((int)pieces.size() < x + 1) return std::nullopt;

    // each piece must be a bamboo; find its two extreme lines
    std::vector<std::array<size_t, 2>> extremes;
    for (const auto& piece : pieces) {
        std::map<size_t, int> degree_in_tree;
        for (size_t c : piece) degree_in_tree[c] = 0;
        for (const auto& nd : forest.nodes) {
            if (degree_in_tree.count(nd.a)) ++degree_in_tree[nd.a];
            if (degree_in_tree.count(nd.b)) ++degree_in_tree[nd.b];
        }
        std::vector<size_t> ends;
        for (auto& [c, deg] : degree_in_tree) {
            if (deg > 2) return std::nullopt; // not a bamboo
            if (deg <= 1) ends.push_back(c);
        }
        if (piece.size() == 1)
            extremes.push_back({piece[0], piece[0]});
        else if (ends.size() == 2)
            extremes.push_back({ends[0], ends[1]});
        else
            return std::nullopt;
    }

    // candidate endpoints: points of (extreme line cap Q) that are not nodes
    std::vector<Endpoint> eps;
    auto add_candidate = [&](size_t pi, int side, size_t line_idx, const Vec& pt) {
        for (const auto& nd : forest.nodes)
            if ((nd.a == line_idx || nd.b == line_idx) && proj_equal(nd.point, pt, f))
                return;
        auto lam = ruling_param(RulingFamily::A, pt, f);
        if (!lam) return;
        eps.push_back({pi, side, pt, *lam, line_idx});
    };
    for (size_t pi = 0; pi < pieces.size(); ++pi) {
        if (extremes[pi][0] == extremes[pi][1]) {
            // single-line bamboo: its <= 2 quadric points, one per side
            auto pts = line_cap_quadric(forest.components[extremes[pi][0]], f);
            for (size_t k = 0; k < pts.size() && k < 2; ++k)
                add_candidate(pi, (int)k, extremes[pi][0], pts[k]);
        } else {
            for (int side = 0; side < 2; ++side) {
                size_t line_idx = extremes[pi][side];
                for (const Vec& pt : line_cap_quadric(forest.components[line_idx], f))
                    add_candidate(pi, side, line_idx, pt);
            }
        }
    }

    // backtracking over pairs of endpoints with equal A-parameter
    std::vector<Component> chosen;
    std::vector<bool> side_used(pieces.size() * 2, false);
    UnionFind uf(pieces.size());

    std::function<bool(int)> solve = [&](int remaining) -> bool {
        if (remaining == 0) return true;
        for (size_t i = 0; i < eps.size(); ++i) {
            if (side_used[eps[i].piece * 2 + eps[i].side]) continue;
            for (size_t j = i + 1; j < eps.size(); ++j) {
                if (side_used[eps[j].piece * 2 + eps[j].side]) continue;
                if (eps[i].piece == eps[j].piece) continue;
                if (uf.find(eps[i].piece) == uf.find(eps[j].piece)) continue;
                if (!proj_pair_equal(eps[i].lambda, eps[j].lambda, f)) continue;
                Component sec = ruling_line(RulingFamily::A, eps[i].lambda.first,
                                            eps[i].lambda.second, f);
                // the secant may only meet the two intended extreme lines
                bool clean = true;
                for (size_t c = 0; c < forest.components.size() && clean; ++c) {
                    if (c == eps[i].line || c == eps[j].line) continue;
                    if (lines_meet(sec, forest.components[c], f)) clean = false;
                }
                for (const auto& prev : chosen)
                    if (clean && lines_meet(sec, prev, f)) clean = false;
                if (!clean) continue;

                side_used[eps[i].piece * 2 + eps[i].side] = true;
                side_used[eps[j].piece * 2 + eps[j].side] = true;
                auto saved_uf = uf.parent;
                uf.unite(eps[i].piece, eps[j].piece);
                chosen.push_back(sec);
                if (solve(remaining - 1)) return true;
                chosen.pop_back();
                uf.parent = saved_uf;
                side_used[eps[i].piece * 2 + eps[i].side] = false;
                side_used[eps[j].piece * 2 + eps[j].side] = false;
            }
        }
        return false;
    };
    if (solve(x)) return chosen;
    return std::nullopt;
}

BmReport verify_bm_witness(const CurveModel& z, long long m, const PrimeField& f) {
    BmReport rep;
    if (z.n != 3) {
        rep.add("ambient dimension 3", false);
        return rep;
    }
    RQPair r = rq(m);
    long long residue = m % 6;
    bool odd_case = residue == 1 || residue == 5;
    long long want_deg = odd_case ? r.r - 1 : r.r;
    long long want_pieces = odd_case ? m + 1 : r.q + 1;
    long long want_secants = odd_case ? m : r.q;

    auto pieces = connected_pieces(z);
    rep.add("degree " + std::to_string(want_deg), z.total_degree() == want_deg);
    rep.add(std::to_string(want_pieces) + " connected components",
            (long long)pieces.size() == want_pieces);

    // every piece a bamboo of lines
    bool all_bamboo = true;
    for (const auto& piece : pieces) {
        std::map<size_t, int> deg;
        for (size_t c : piece) {
            deg[c] = 0;
            if (z.components[c].degree() != 1) all_bamboo = false;
        }
        for (const auto& nd : z.nodes) {
            if (deg.count(nd.a)) ++deg[nd.a];
            if (deg.count(nd.b)) ++deg[nd.b];
        }
        int leaves = 0;
        for (auto& [c, dg] : deg) {
            if (dg > 2) all_bamboo = false;
            if (dg <= 1) ++leaves;
        }
        if (piece.size() > 1 && leaves != 2) all_bamboo = false;
    }
    rep.add("disjoint bamboos of lines", all_bamboo);

    rep.add("all nodes on the quadric", std::all_of(z.nodes.begin(), z.nodes.end(),
                                                     [&](const Node& nd) {
                                                         return on_segre_quadric(nd.point, f);
                                                     }));
    bool no_comp_in_q = true;
    for (const auto& c : z.components) {
        BinaryForm prod03 = bf_mul(c.param[0], c.param[3], f);
        BinaryForm prod12 = bf_mul(c.param[1], c.param[2], f);
        BinaryForm q = BinaryForm::zero(prod03.degree);
        for (int i = 0; i <= q.degree; ++i) q.coeffs[i] = f.sub(prod03.coeffs[i], prod12.coeffs[i]);
        if (q.is_zero()) no_comp_in_q = false;
    }
    rep.add("finite intersection with the quadric", no_comp_in_q);

    HilbertSample s = sample_model(z, m, f, 0);
    rep.add("h0(I(m)) = 0", s.h0 == 0);
    rep.add("h1(I(m)) = 0", s.h1 == 0);

    rep.add(std::to_string(want_secants) + " good secants",
            good_secants(z, (int)want_secants, f).has_value());
    return rep;
}

std::pair<long long, long long> independence_check(const CurveModel& base,
                                                   const Decoration& extra, long long t,
                                                   const PrimeField& f) {
    CurveModel with = base;
    with.decorations.push_back(extra);
    long long cap = binom(base.n + t, base.n);
    long long before = cap - (long long)rank_ff(condition_matrix(base, t, f), f);
    long long after = cap - (long long)rank_ff(condition_matrix(with, t, f), f);
    return {before, after};
}

std::pair<long long, long long> independence_check(const CurveModel& base,
                                                   const Component& extra, long long t,
                                                   const PrimeField& f) {
    CurveModel with = base;
    with.components.push_back(extra);
    long long cap = binom(base.n + t, base.n);
    long long before = cap - (long long)rank_ff(condition_matrix(base, t, f), f);
    long long after = cap - (long long)rank_ff(condition_matrix(with, t, f), f);
    return {before, after};
}

Decoration make_arrow(const Vec& point, const Vec& direction) {
    Decoration d;
    d.kind = DecorationKind::Arrow;
    d.point = point;
    d.directions = {direction};
    return d;
}

Decoration make_planar_double_point(int n, Rng& rng, const PrimeField& f) {
    for (int tries = 0; tries < 100; ++tries) {
        Decoration d;
        d.kind = DecorationKind::PlanarDoublePoint;
        d.point = random_point(n, rng, f);
        d.directions = {random_direction(n, rng, f), random_direction(n, rng, f)};
        FFMatrix m = FFMatrix::zero(3, n + 1);
        for (int c = 0; c <= n; ++c) {
            m.at(0, c) = f.reduce(d.point[c]);
            m.at(1, c) = f.reduce(d.directions[0][c]);
            m.at(2, c) = f.reduce(d.directions[1][c]);
        }
        if (rank_ff(m, f) == 3) return d;
    }
    throw std::runtime_error("make_planar_double_point: exhausted retries");
}

} // namespace maxrank
