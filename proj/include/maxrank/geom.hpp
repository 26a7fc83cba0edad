#ifndef MAXRANK_GEOM_HPP
#define MAXRANK_GEOM_HPP

#include "maxrank/ffla.hpp"
#include "maxrank/rng.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace maxrank {

using Vec = std::vector<int64_t>; // homogeneous (n+1)-tuple, reduced mod p

enum class ComponentKind { RationalCurve, Line };

// Parametrized rational curve P^1 -> P^n: n+1 binary forms of a common
// degree d (d = 1 for lines).
struct Component {
    ComponentKind kind = ComponentKind::Line;
    int n = 3;
    std::vector<BinaryForm> param; // size n+1
    std::string label;

    int degree() const { return param.empty() ? 0 : param[0].degree; }
    Vec point_at(int64_t s, int64_t u, const PrimeField& f) const;
};

enum class DecorationKind { Point, Arrow, PlanarDoublePoint };

struct Decoration {
    DecorationKind kind = DecorationKind::Point;
    Vec point;
    std::vector<Vec> directions; // 0 / 1 / 2 tangent vectors

    int condition_rows() const {
        return kind == DecorationKind::Point ? 1 : kind == DecorationKind::Arrow ? 2 : 3;
    }
};

// A node: two components glued at a common point.
struct Node {
    size_t a = 0, b = 0; // component indices, a < b
    Vec point;
    std::pair<int64_t, int64_t> param_a{0, 1}; // (s, u) on component a
    std::pair<int64_t, int64_t> param_b{0, 1};
};

struct CurveModel {
    int n = 3;
    std::vector<Component> components;
    std::vector<Decoration> decorations;
    std::vector<Node> nodes;

    long long total_degree() const;
    std::string to_json() const;
};

// Attachment map of a tree of d lines: line i (2 <= i <= d) meets line
// tau(i) < i. tau is stored as tau[i-2].
struct TreeType {
    int d = 1;
    std::vector<int> tau; // size d-1, values in [1, i-1]

    static TreeType bamboo(int d);
    static TreeType spreading(int d);
    bool valid() const;
};

struct TreeConstraints {
    // node between line i and line tau(i) pinned to this point (must lie on
    // the parent line, else the constraints are infeasible)
    std::map<int, Vec> pinned_nodes;
    // line i forced through this extra point (e.g. a point of a hyperplane)
    std::map<int, Vec> through_points;
};

Component make_line(int n, const Vec& p1, const Vec& p2, const PrimeField& f);
Component make_random_line(int n, Rng& rng, const PrimeField& f);
Component make_rational_curve(int n, int d, Rng& rng, const PrimeField& f);

CurveModel make_tree(int n, const TreeType& type, Rng& rng, const PrimeField& f,
                     const TreeConstraints& constraints = {});

// Rational curve of degree d-g plus g secant lines; degree d, arithmetic
// genus g, connected.
CurveModel make_genus_model(int n, long long d, long long g, Rng& rng, const PrimeField& f);

// Arithmetic genus per connected component (delta - c + 1 on each piece).
std::vector<long long> arithmetic_genus(const CurveModel& model);
// Sum of (t*deg + 1 - p_a) over connected pieces plus decoration degrees:
// the number of conditions the model imposes on degree-t forms.
long long model_w(const CurveModel& model, long long t);

FFMatrix condition_matrix(const CurveModel& model, long long t, const PrimeField& f);

struct HilbertSample {
    long long t = 0;
    int64_t p = 0;
    uint64_t seed = 0;
    long long rank = 0;
    long long h0 = 0;
    long long h1 = 0;
    long long chi = 0; // h0 - h1 = binom(n+t,n) - w
};

using ModelBuilder = std::function<CurveModel(Rng&)>;

// Rebuilds the model per trial with fresh randomness; per-trial seeds are
// derived from master_seed by counter.
std::vector<HilbertSample> h0_h1(const ModelBuilder& build, long long t,
                                 const PrimeField& f, int trials, uint64_t master_seed);
HilbertSample sample_model(const CurveModel& model, long long t, const PrimeField& f,
                           uint64_t seed);
// index of the sample with minimal h0 (the representative)
size_t representative_index(const std::vector<HilbertSample>& samples);

// Checks chi(I_{Res_H(Z)}(t-1)) + chi(I_{Z cap H, H}(t)) = chi(I_Z(t)) on
// the hyperplane H = {sum h_i x_i = 0}. Throws on non-transversal input.
bool residual_chi_check(const CurveModel& model, const Vec& hyperplane, long long t,
                        const PrimeField& f);

// s-1 nodes whose removal splits the tree into pieces of the requested
// degree multiset, or nullopt.
std::optional<std::vector<size_t>> good_node_partition(const CurveModel& tree,
                                                       const std::vector<long long>& degrees);

// ---- Segre quadric helpers (n = 3, Q : x0 x3 = x1 x2) ----

bool on_segre_quadric(const Vec& pt, const PrimeField& f);
enum class RulingFamily { A, B };
// A(l0:l1): (l0 s, l1 s, l0 u, l1 u);  B(m0:m1): (m0 s, m0 u, m1 s, m1 u).
Component ruling_line(RulingFamily fam, int64_t c0, int64_t c1, const PrimeField& f);
// the A-family (resp. B-family) parameter of a point of Q
std::optional<std::pair<int64_t, int64_t>> ruling_param(RulingFamily fam, const Vec& pt,
                                                        const PrimeField& f);
bool lines_meet(const Component& l1, const Component& l2, const PrimeField& f);

// x pairwise disjoint A-ruling lines, each joining free endpoints of two
// distinct bamboos of the forest so the union is a forest of bamboos with x
// fewer components. Endpoints must lie on Q.
std::optional<std::vector<Component>> good_secants(const CurveModel& forest, int x,
                                                   const PrimeField& f);

struct BmReport {
    std::vector<std::pair<std::string, bool>> clauses;
    bool pass = true;

    void add(const std::string& name, bool ok) {
        clauses.emplace_back(name, ok);
        pass = pass && ok;
    }
};

// Checks the degree/cohomology/quadric-position/secant-count clauses for a
// supplied witness configuration of degree parameter m.
BmReport verify_bm_witness(const CurveModel& z, long long m, const PrimeField& f);

// h^0 of the ideal before and after adding one extra row block.
std::pair<long long, long long> independence_check(const CurveModel& base,
                                                   const Decoration& extra, long long t,
                                                   const PrimeField& f);
std::pair<long long, long long> independence_check(const CurveModel& base,
                                                   const Component& extra, long long t,
                                                   const PrimeField& f);

// Random point / direction helpers shared with tests.
Vec random_point(int n, Rng& rng, const PrimeField& f);
// uniform nonzero vector
Vec random_direction(int n, Rng& rng, const PrimeField& f);
// a general planar double point at a random location
Decoration make_planar_double_point(int n, Rng& rng, const PrimeField& f);
Decoration make_arrow(const Vec& point, const Vec& direction);

} // namespace maxrank

#endif
