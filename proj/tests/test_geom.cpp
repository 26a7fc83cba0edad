#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "maxrank/binomial.hpp"
#include "maxrank/geom.hpp"
#include "maxrank/rng.hpp"

#include <algorithm>

using namespace maxrank;

namespace {

const PrimeField F{2147483647};

bool clause(const BmReport& rep, const std::string& needle) {
    for (const auto& [name, ok] : rep.clauses)
        if (name.find(needle) != std::string::npos) return ok;
    FAIL("missing clause: " << needle);
    return false;
}

bool proj_eq(const Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (F.sub(F.mul(a[i], b[j]), F.mul(a[j], b[i])) != 0) return false;
    return true;
}

long long h0_of(const CurveModel& m, long long t) {
    return binom(m.n + t, m.n) - (long long)rank_ff(condition_matrix(m, t, F), F);
}

// a smooth plane conic inside {x3 = 0}
Component conic_in_hyperplane(Rng& rng) {
    Component c;
    c.kind = ComponentKind::RationalCurve;
    c.n = 3;
    c.param.assign(4, BinaryForm::zero(2));
    FFMatrix coeff = FFMatrix::zero(3, 3);
    do {
        for (int j = 0; j < 3; ++j)
            for (int e = 0; e <= 2; ++e) {
                c.param[j].coeffs[e] = (int64_t)rng.uniform((uint64_t)F.p);
                coeff.at(j, e) = c.param[j].coeffs[e];
            }
    } while (rank_ff(coeff, F) != 3);
    return c;
}

} // namespace

TEST_CASE("lines and rational curves") {
    Rng rng(101);
    Vec p1 = {1, 0, 0, 0}, p2 = {0, 1, 0, 0};
    Component l = make_line(3, p1, p2, F);
    CHECK(l.degree() == 1);
    CHECK(l.point_at(1, 0, F) == p1);
    CHECK(l.point_at(0, 1, F) == p2);
    CHECK_THROWS_AS(make_line(3, p1, p1, F), std::invalid_argument);

    // a line in P^3 lies on a 2-dimensional space of planes
    CurveModel lm;
    lm.n = 3;
    lm.components.push_back(l);
    FFMatrix m1 = condition_matrix(lm, 1, F);
    CHECK(m1.rows == 2);
    CHECK(m1.cols == 4);
    CHECK(rank_ff(m1, F) == 2);
    CHECK(h0_of(lm, 1) == 2);

    // degree-3 rational curve in P^3: net of quadrics
    Component cubic = make_rational_curve(3, 3, rng, F);
    FFMatrix coeff = FFMatrix::zero(4, 4);
    for (int j = 0; j < 4; ++j)
        for (int e = 0; e <= 3; ++e) coeff.at(j, e % 4) = cubic.param[j].coeffs[e];
    CurveModel cm;
    cm.n = 3;
    cm.components.push_back(cubic);
    FFMatrix m2 = condition_matrix(cm, 2, F);
    CHECK(m2.rows == 7);
    CHECK(m2.cols == 10);
    CHECK(rank_ff(m2, F) == 7);
    CHECK(h0_of(cm, 2) == 3);

    // plane conic in P^4: parametrization spans a plane
    Component conic = make_rational_curve(4, 2, rng, F);
    FFMatrix span = FFMatrix::zero(5, 3);
    for (int j = 0; j < 5; ++j)
        for (int e = 0; e <= 2; ++e) span.at(j, e) = conic.param[j].coeffs[e];
    CHECK(rank_ff(span, F) == 3);

    CHECK_THROWS_AS(make_rational_curve(2, 1, rng, F), std::invalid_argument);
    CHECK_THROWS_AS(make_rational_curve(3, 0, rng, F), std::invalid_argument);
}

TEST_CASE("decorations") {
    Rng rng(102);
    Vec pt = random_point(3, rng, F);
    Decoration arrow = make_arrow(pt, random_direction(3, rng, F));
    CHECK(arrow.condition_rows() == 2);
    CurveModel am;
    am.n = 3;
    am.decorations.push_back(arrow);
    FFMatrix m = condition_matrix(am, 1, F);
    CHECK(m.rows == 2);
    CHECK(m.cols == 4);
    CHECK(rank_ff(m, F) == 2);

    // a planar double point imposes 3 independent conditions on quadrics
    CurveModel empty;
    empty.n = 3;
    Decoration pdp = make_planar_double_point(3, rng, F);
    auto [before, after] = independence_check(empty, pdp, 2, F);
    CHECK(before == 10);
    CHECK(after == 7);

    // floor((binom(m+3,3)-2)/3) general planar double points in P^3 impose
    // independent conditions on cubics
    CurveModel z;
    z.n = 3;
    long long count = (binom(6, 3) - 2) / 3;
    CHECK(count == 6);
    for (long long i = 0; i < count; ++i)
        z.decorations.push_back(make_planar_double_point(3, rng, F));
    HilbertSample s = sample_model(z, 3, F, 0);
    CHECK(s.h1 == 0);
    CHECK(s.h0 == 2);
}

TEST_CASE("trees") {
    Rng rng(103);
    TreeType bam = TreeType::bamboo(4);
    CHECK(bam.valid());
    CurveModel t = make_tree(3, bam, rng, F);
    REQUIRE(t.components.size() == 4);
    REQUIRE(t.nodes.size() == 3);
    for (size_t i = 0; i < t.nodes.size(); ++i) {
        CHECK(t.nodes[i].a == i);
        CHECK(t.nodes[i].b == i + 1);
        // the node lies on both incident lines at the stored parameters
        auto pa = t.nodes[i].param_a;
        auto pb = t.nodes[i].param_b;
        CHECK(proj_eq(t.components[t.nodes[i].a].point_at(pa.first, pa.second, F),
                      t.nodes[i].point));
        CHECK(proj_eq(t.components[t.nodes[i].b].point_at(pb.first, pb.second, F),
                      t.nodes[i].point));
    }
    CHECK(arithmetic_genus(t) == std::vector<long long>{0});

    TreeType spread = TreeType::spreading(4);
    CurveModel st = make_tree(4, spread, rng, F);
    REQUIRE(st.nodes.size() == 3);
    for (const auto& nd : st.nodes) CHECK(nd.a == 0); // star: all nodes on L1
    CHECK(arithmetic_genus(st) == std::vector<long long>{0});

    CurveModel single = make_tree(3, TreeType::bamboo(1), rng, F);
    CHECK(single.components.size() == 1);
    CHECK(single.nodes.empty());

    TreeType bad;
    bad.d = 3;
    bad.tau = {1, 3}; // tau(3) = 3 not < 3
    CHECK(!bad.valid());
    CHECK_THROWS_AS(make_tree(3, bad, rng, F), std::invalid_argument);
}

TEST_CASE("tree constraints") {
    Rng rng(104);
    Vec pin = {1, 2, 3, 4};
    TreeConstraints cons;
    cons.through_points[1] = pin; // L1 passes through pin ...
    cons.pinned_nodes[2] = pin;   // ... and the L1-L2 node sits exactly there
    CurveModel t = make_tree(3, TreeType::bamboo(3), rng, F, cons);
    REQUIRE(t.nodes.size() == 2);
    Vec got = t.nodes[0].point;
    // projective equality with pin
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            CHECK(F.sub(F.mul(got[i], pin[j]), F.mul(got[j], pin[i])) == 0);

    // a pinned node off the parent line is infeasible
    TreeConstraints off;
    off.pinned_nodes[2] = random_point(3, rng, F);
    CHECK_THROWS_AS(make_tree(3, TreeType::bamboo(3), rng, F, off), std::invalid_argument);
}

TEST_CASE("genus models") {
    Rng rng(105);
    CurveModel g1 = make_genus_model(3, 4, 1, rng, F);
    CHECK(g1.components.size() == 2);
    CHECK(g1.total_degree() == 4);
    CHECK(arithmetic_genus(g1) == std::vector<long long>{1});

    CurveModel g3 = make_genus_model(3, 6, 3, rng, F);
    CHECK(g3.components.size() == 4);
    CHECK(g3.total_degree() == 6);
    CHECK(arithmetic_genus(g3) == std::vector<long long>{3});

    CurveModel g0 = make_genus_model(4, 5, 0, rng, F);
    CHECK(g0.components.size() == 1);
    CHECK(g0.nodes.empty());

    CHECK_THROWS_AS(make_genus_model(3, 3, 2, rng, F), std::invalid_argument);
}

TEST_CASE("arithmetic genus and nodal validation") {
    Rng rng(106);
    // two disjoint lines
    CurveModel two;
    two.n = 3;
    two.components.push_back(make_random_line(3, rng, F));
    two.components.push_back(make_random_line(3, rng, F));
    CHECK(arithmetic_genus(two) == std::vector<long long>{0, 0});

    // three lines through one point is not nodal
    Vec center = random_point(3, rng, F);
    CurveModel star;
    star.n = 3;
    for (int i = 0; i < 3; ++i)
        star.components.push_back(make_line(3, center, random_point(3, rng, F), F));
    star.nodes.push_back(Node{0, 1, center, {1, 0}, {1, 0}});
    star.nodes.push_back(Node{0, 2, center, {1, 0}, {1, 0}});
    CHECK_THROWS_AS(arithmetic_genus(star), std::invalid_argument);
}

TEST_CASE("hilbert samples and the chi identity") {
    Rng rng(107);
    // empty model
    CurveModel empty;
    empty.n = 3;
    HilbertSample se = sample_model(empty, 2, F, 0);
    CHECK(se.h0 == 10);
    CHECK(se.h1 == 0);

    // two general conics in P^3 at t=2: the classical exceptional pair
    auto two_conics = [](Rng& r) {
        CurveModel m;
        m.n = 3;
        m.components.push_back(make_rational_curve(3, 2, r, F));
        m.components.push_back(make_rational_curve(3, 2, r, F));
        return m;
    };
    auto samples = h0_h1(two_conics, 2, F, 3, 2024);
    REQUIRE(samples.size() == 3);
    const auto& rep = samples[representative_index(samples)];
    CHECK(rep.h0 == 1);
    CHECK(rep.h1 == 1);

    // genus model (3; 6,3) at t=2 has vanishing cohomology
    auto genus_model = [](Rng& r) { return make_genus_model(3, 6, 3, r, F); };
    auto gsamples = h0_h1(genus_model, 2, F, 3, 2025);
    const auto& grep = gsamples[representative_index(gsamples)];
    CHECK(grep.h0 == 0);
    CHECK(grep.h1 == 0);

    // chi identity on every trial of assorted models
    for (const auto& s : samples) CHECK(s.h0 - s.h1 == s.chi);
    for (const auto& s : gsamples) CHECK(s.h0 - s.h1 == s.chi);
    for (long long t = 1; t <= 3; ++t) {
        CurveModel m = make_genus_model(3, 5, 1, rng, F);
        m.decorations.push_back(make_planar_double_point(3, rng, F));
        HilbertSample s = sample_model(m, t, F, 0);
        CHECK(s.h0 - s.h1 == binom(3 + t, 3) - model_w(m, t));
    }
}

TEST_CASE("residual chi bookkeeping") {
    Rng rng(108);
    Vec H = {0, 0, 0, 1}; // x3 = 0

    // a line not in H: chi(I_line(1)) + chi(I_pt,H(2)) = chi(I_line(2))
    CurveModel lm;
    lm.n = 3;
    lm.components.push_back(make_random_line(3, rng, F));
    CHECK(residual_chi_check(lm, H, 2, F));

    // conic inside H plus an external line
    CurveModel mix;
    mix.n = 3;
    mix.components.push_back(conic_in_hyperplane(rng));
    mix.components.push_back(make_random_line(3, rng, F));
    CHECK(residual_chi_check(mix, H, 3, F));

    // a chain crossing H: L1 off H, L2 inside H, L3 off H
    Vec h1 = {1, 2, 3, 0}, h2 = {2, 7, 1, 0}; // points of H
    CurveModel chain;
    chain.n = 3;
    chain.components.push_back(make_line(3, random_point(3, rng, F), h1, F));
    chain.components.push_back(make_line(3, h1, h2, F)); // inside H
    Vec h3 = chain.components[1].point_at(3, 1, F);      // another point of L2
    chain.components.push_back(make_line(3, h3, random_point(3, rng, F), F));
    chain.nodes.push_back(Node{0, 1, h1, {0, 1}, {1, 0}});
    chain.nodes.push_back(Node{1, 2, h3, {3, 1}, {1, 0}});
    CHECK(residual_chi_check(chain, H, 3, F));

    // tangency is rejected: conic meeting H at a double point
    CurveModel tangent;
    tangent.n = 3;
    Component tc = conic_in_hyperplane(rng);
    tc.param[3] = BinaryForm::zero(2);
    tc.param[3].coeffs[2] = 1; // x3 pulls back to s^2
    tangent.components.push_back(tc);
    CHECK_THROWS_AS(residual_chi_check(tangent, H, 3, F), std::invalid_argument);

    CHECK_THROWS_AS(residual_chi_check(lm, H, 1, F), std::invalid_argument);
}

TEST_CASE("good node partitions") {
    Rng rng(109);
    CurveModel bam = make_tree(3, TreeType::bamboo(5), rng, F);
    auto cut = good_node_partition(bam, {2, 3});
    REQUIRE(cut.has_value());
    CHECK(*cut == std::vector<size_t>{1}); // the L2-L3 node

    CHECK(good_node_partition(bam, {5}) == std::vector<size_t>{});

    CurveModel spread = make_tree(3, TreeType::spreading(4), rng, F);
    CHECK(!good_node_partition(spread, {2, 2}).has_value()); // only (1,3) splits
    CHECK(good_node_partition(spread, {1, 3}).has_value());

    CHECK_THROWS_AS(good_node_partition(bam, {2, 2}), std::invalid_argument); // wrong sum
    CurveModel two;
    two.n = 3;
    two.components.push_back(make_random_line(3, rng, F));
    two.components.push_back(make_random_line(3, rng, F));
    CHECK_THROWS_AS(good_node_partition(two, {1, 1}), std::invalid_argument); // not a tree
}

TEST_CASE("segre quadric rulings") {
    CHECK(on_segre_quadric({1, 2, 3, 6}, F));
    CHECK(!on_segre_quadric({1, 2, 3, 7}, F));

    Component a1 = ruling_line(RulingFamily::A, 1, 2, F);
    Component a2 = ruling_line(RulingFamily::A, 1, 3, F);
    Component b1 = ruling_line(RulingFamily::B, 1, 4, F);
    // every ruling point is on Q
    for (int64_t s = 0; s <= 3; ++s)
        CHECK(on_segre_quadric(a1.point_at(s, 1, F), F));
    // same family: disjoint; opposite families: meet
    CHECK(!lines_meet(a1, a2, F));
    CHECK(lines_meet(a1, b1, F));
    CHECK(lines_meet(a2, b1, F));

    // parameter roundtrip
    auto lam = ruling_param(RulingFamily::A, {1, 2, 3, 6}, F);
    REQUIRE(lam.has_value());
    CHECK(F.sub(F.mul(lam->first, 2), F.mul(lam->second, 1)) == 0); // (1:2)
    auto mu = ruling_param(RulingFamily::B, {1, 2, 3, 6}, F);
    REQUIRE(mu.has_value());
    CHECK(F.sub(F.mul(mu->first, 3), F.mul(mu->second, 1)) == 0); // (1:3)
    CHECK(!ruling_param(RulingFamily::A, {1, 2, 3, 7}, F).has_value());
}

TEST_CASE("good secants") {
    Rng rng(110);
    // two single-line bamboos whose quadric points share the A-parameter (1:1)
    Vec pa = {1, 1, 0, 0}, pb = {0, 0, 1, 1}; // both on the A(1:1) line
    CurveModel forest;
    forest.n = 3;
    forest.components.push_back(make_line(3, pa, random_point(3, rng, F), F));
    forest.components.push_back(make_line(3, pb, random_point(3, rng, F), F));
    auto sec = good_secants(forest, 1, F);
    REQUIRE(sec.has_value());
    REQUIRE(sec->size() == 1);
    CHECK(lines_meet((*sec)[0], forest.components[0], F));
    CHECK(lines_meet((*sec)[0], forest.components[1], F));

    // x = 0 is trivially satisfiable; more secants than joinable pieces is not
    CHECK(good_secants(forest, 0, F).has_value());
    CHECK(!good_secants(forest, 2, F).has_value());
}

TEST_CASE("witness verification") {
    Rng rng(111);
    // m = 2: expected degree r(2) = 4, q(2)+1 = 2 bamboos, 1 good secant
    Vec pa = {1, 1, 0, 0}, pb = {0, 0, 1, 1}; // A(1:1) endpoints
    Vec q1 = {1, 2, 3, 6}, q2 = {1, 5, 2, 10}; // generic quadric points
    CurveModel z;
    z.n = 3;
    z.components.push_back(make_line(3, pa, q1, F));                      // L1
    z.components.push_back(make_line(3, q1, q2, F));                      // L2
    z.components.push_back(make_line(3, q2, random_point(3, rng, F), F)); // L3
    z.components.push_back(make_line(3, pb, random_point(3, rng, F), F)); // second bamboo
    z.nodes.push_back(Node{0, 1, q1, {0, 1}, {1, 0}});
    z.nodes.push_back(Node{1, 2, q2, {0, 1}, {1, 0}});
    BmReport rep = verify_bm_witness(z, 2, F);
    CHECK(clause(rep, "degree 4"));
    CHECK(clause(rep, "2 connected components"));
    CHECK(clause(rep, "disjoint bamboos"));
    CHECK(clause(rep, "all nodes on the quadric"));
    CHECK(clause(rep, "finite intersection"));
    CHECK(clause(rep, "h0(I(m)) = 0"));
    CHECK(clause(rep, "h1(I(m)) = 0"));
    CHECK(clause(rep, "1 good secants"));
    CHECK(rep.pass);

    // wrong degree fails clause 1
    CurveModel small;
    small.n = 3;
    small.components.push_back(make_random_line(3, rng, F));
    BmReport bad = verify_bm_witness(small, 2, F);
    CHECK(!clause(bad, "degree 4"));
    CHECK(!bad.pass);

    // a component inside Q fails the finiteness clause
    CurveModel inq;
    inq.n = 3;
    inq.components.push_back(ruling_line(RulingFamily::B, 1, 2, F));
    BmReport infq = verify_bm_witness(inq, 2, F);
    CHECK(!clause(infq, "finite intersection"));
}

TEST_CASE("independence checks") {
    Rng rng(112);
    // twisted cubic: a general secant line kills exactly one quadric
    CurveModel cm;
    cm.n = 3;
    cm.components.push_back(make_rational_curve(3, 3, rng, F));
    Vec s1 = cm.components[0].point_at(5, 1, F);
    Vec s2 = cm.components[0].point_at(9, 1, F);
    Component secant = make_line(3, s1, s2, F);
    auto [before, after] = independence_check(cm, secant, 2, F);
    CHECK(before == 3);
    CHECK(after == 2);

    // appending rows never increases h0
    for (int i = 0; i < 5; ++i) {
        Decoration d = make_planar_double_point(3, rng, F);
        auto [b2, a2] = independence_check(cm, d, 2, F);
        CHECK(a2 <= b2);
    }
}

TEST_CASE("model serialization") {
    Rng rng(113);
    CurveModel m = make_genus_model(3, 4, 1, rng, F);
    m.decorations.push_back(make_arrow(random_point(3, rng, F), random_direction(3, rng, F)));
    std::string js = m.to_json();
    CHECK(js.find("\"components\"") != std::string::npos);
    CHECK(js.find("\"nodes\"") != std::string::npos);
    CHECK(js.find("rational_curve") != std::string::npos);
    CHECK(js.find("arrow") != std::string::npos);
}
