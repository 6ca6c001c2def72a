#include <catch2/catch_amalgamated.hpp>

#include "motivic/orbitfn.hpp"
#include "motivic/rng.hpp"

using namespace motivic;

namespace {

Witt random_witt(Rng& rng, int prec) {
    std::vector<Scalar> g(static_cast<std::size_t>(prec));
    for (auto& x : g) x = Scalar(rng.range(-5, 5), 1 + rng.below(3));
    return Witt(std::move(g));
}

// Witt with nonzero ghosts, for invertible classes and values.
Witt random_unit_witt(Rng& rng, int prec) {
    std::vector<Scalar> g(static_cast<std::size_t>(prec));
    for (auto& x : g) {
        long v = rng.range(1, 5);
        x = Scalar(rng.below(2) ? v : -v, 1 + rng.below(2));
    }
    return Witt(std::move(g));
}

FiniteZSet random_finite(Rng& rng, int max_orbits = 4, int max_deg = 4) {
    int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_orbits)));
    std::vector<int> degs;
    for (int i = 0; i < n; ++i) degs.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_deg))));
    return FiniteZSet(std::move(degs));
}

// Random map whose fibers all contain a fixed point, so fiber classes are
// invertible and expectations are defined.
ZMap random_map(Rng& rng, int max_base = 3) {
    int nb = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_base)));
    std::vector<int> bd;
    std::vector<FiniteZSet> fibers;
    for (int i = 0; i < nb; ++i) {
        bd.push_back(1 + static_cast<int>(rng.below(3)));
        std::vector<int> degs = random_finite(rng, 3, 3).degrees();
        degs.push_back(1);
        fibers.push_back(FiniteZSet(std::move(degs)));
    }
    return ZMap(FiniteZSet(bd), fibers);
}

TotalFunction random_total(Rng& rng, const ZMap& m, int prec) {
    TotalFunction f;
    f.val.resize(static_cast<std::size_t>(m.base_orbits()));
    for (int i = 0; i < m.base_orbits(); ++i)
        for (int j = 0; j < m.fiber(i).orbits(); ++j)
            f.val[static_cast<std::size_t>(i)].push_back(random_witt(rng, prec));
    return f;
}

bool all_agree(const std::vector<Witt>& a, const std::vector<Witt>& b, int k) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].agrees(b[i], k)) return false;
    return true;
}

} // namespace

TEST_CASE("pullback formula") {
    // Identity map: pullback is the identity.
    FiniteZSet b({1, 2, 3});
    ZMap id = ZMap::identity(b);
    Rng rng(41);
    std::vector<Witt> g{random_witt(rng, 12), random_witt(rng, 12), random_witt(rng, 12)};
    TotalFunction tf = pullback(id, g);
    for (int i = 0; i < 3; ++i) REQUIRE(tf.val[static_cast<std::size_t>(i)][0] == g[static_cast<std::size_t>(i)]);

    // Total orbit of degree 4 over base of degree 2: p_2 o [3] = [9].
    ZMap m(FiniteZSet({2}), {FiniteZSet({2})});
    TotalFunction t2 = pullback(m, {Witt::teichmuller(Scalar(3), 8)});
    REQUIRE(t2.val[0][0] == Witt::teichmuller(Scalar(9), 4));

    // Ring map: pullback of a product is the product of pullbacks.
    for (int t = 0; t < 10; ++t) {
        ZMap rm = random_map(rng);
        std::vector<Witt> x, y;
        for (int i = 0; i < rm.base_orbits(); ++i) {
            x.push_back(random_witt(rng, 12));
            y.push_back(random_witt(rng, 12));
        }
        std::vector<Witt> xy;
        for (int i = 0; i < rm.base_orbits(); ++i) xy.push_back(x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)]);
        TotalFunction px = pullback(rm, x), py = pullback(rm, y), pxy = pullback(rm, xy);
        for (std::size_t i = 0; i < px.val.size(); ++i)
            for (std::size_t j = 0; j < px.val[i].size(); ++j)
                REQUIRE(pxy.val[i][j] == px.val[i][j] * py.val[i][j]);
    }
}

TEST_CASE("integration") {
    // int_V 1 = [V].
    Rng rng(42);
    for (int t = 0; t < 10; ++t) {
        FiniteZSet v = random_finite(rng);
        OrbitFunction one = OrbitFunction::constant(v, Witt::unit(8));
        REQUIRE(integrate_point(one).agrees(v.class_witt(8), 8));
    }
    // Single degree-d orbit over the point: f(t^d).
    for (int d = 1; d <= 4; ++d) {
        Witt w = random_witt(rng, 6);
        OrbitFunction f(FiniteZSet({d}), {w});
        REQUIRE(integrate_point(f) == w.substitute(d));
    }
    // Linearity.
    for (int t = 0; t < 10; ++t) {
        FiniteZSet v = random_finite(rng);
        std::vector<Witt> a, b, s;
        for (int i = 0; i < v.orbits(); ++i) {
            a.push_back(random_witt(rng, 8));
            b.push_back(random_witt(rng, 8));
            s.push_back(a.back() + b.back());
        }
        Witt lhs = integrate_point(OrbitFunction(v, s));
        Witt rhs = integrate_point(OrbitFunction(v, a)) + integrate_point(OrbitFunction(v, b));
        REQUIRE(lhs.agrees(rhs));
    }
}

TEST_CASE("restriction") {
    Rng rng(43);
    FiniteZSet v = random_finite(rng);
    std::vector<Witt> vals;
    for (int i = 0; i < v.orbits(); ++i) vals.push_back(random_witt(rng, 24));
    OrbitFunction f(v, vals);
    OrbitFunction r1 = restrict_fn(f, 1);
    REQUIRE(all_agree(r1.val, f.val, 24));

    // Degree-2 orbit, k=4: two split orbits carrying p_2 o f.
    OrbitFunction g(FiniteZSet({2}), {random_witt(rng, 24)});
    OrbitFunction r4 = restrict_fn(g, 4);
    REQUIRE(r4.dom.degrees() == std::vector<int>{1, 1});
    REQUIRE(r4.val[0] == g.val[0].adams(2));
    REQUIRE(r4.val[1] == g.val[0].adams(2));

    // Degree-2 orbit, k=2: p_1 o f on the two split orbits.
    OrbitFunction r2 = restrict_fn(g, 2);
    REQUIRE(r2.dom.degrees() == std::vector<int>{1, 1});
    REQUIRE(r2.val[0] == g.val[0]);
}

TEST_CASE("expectation") {
    Rng rng(44);
    // E[1] = 1.
    for (int t = 0; t < 5; ++t) {
        FiniteZSet v = random_finite(rng);
        OrbitFunction one = OrbitFunction::constant(v, Witt::unit(6));
        Witt e = expectation_point(one);
        REQUIRE(e.agrees(Witt::unit(6), e.prec()));
    }
    // Two fixed points with values [2], [4]: first ghost 3.
    OrbitFunction f(FiniteZSet({1, 1}), {Witt::teichmuller(Scalar(2), 4), Witt::teichmuller(Scalar(4), 4)});
    REQUIRE(expectation_point(f).ghost(1) == Scalar(3));

    // Z-linearity and unitality.
    FiniteZSet v = random_finite(rng);
    std::vector<Witt> a, b, comb;
    for (int i = 0; i < v.orbits(); ++i) {
        a.push_back(random_witt(rng, 8));
        b.push_back(random_witt(rng, 8));
        comb.push_back(a.back().scaled(Scalar(2)) - b.back().scaled(Scalar(3)));
    }
    Witt lhs = expectation_point(OrbitFunction(v, comb));
    Witt rhs = expectation_point(OrbitFunction(v, a)).scaled(Scalar(2)) -
               expectation_point(OrbitFunction(v, b)).scaled(Scalar(3));
    REQUIRE(lhs.agrees(rhs));
}

TEST_CASE("ghost expectation via the fixed-point census") {
    Rng rng(45);
    // Constant [c]: E_k = c_k.
    Witt c = random_witt(rng, 12);
    FiniteZSet v({1, 2, 2, 3});
    OrbitFunction f = OrbitFunction::constant(v, c);
    // A constant function on V means the pullback from the point: value
    // p_d * c on degree-d orbits.
    std::vector<Witt> vals;
    for (int i = 0; i < v.orbits(); ++i) vals.push_back(c.adams(v.deg(i)));
    OrbitFunction fc(v, vals);
    for (int k = 1; k <= 4; ++k) REQUIRE(expectation_ghost(fc, k) == c.ghost(k));

    // Agreement with ghost components of the Witt-valued expectation.
    for (int t = 0; t < 10; ++t) {
        FiniteZSet w = random_finite(rng);
        std::vector<Witt> fv;
        for (int i = 0; i < w.orbits(); ++i) fv.push_back(random_witt(rng, 24));
        OrbitFunction g(w, fv);
        Witt e = expectation_point(g);
        for (int k = 1; k <= std::min(4, e.prec()); ++k) REQUIRE(expectation_ghost(g, k) == e.ghost(k));
    }

    // Frozen two-orbit census: degrees (1,2), values [1], [2], k = 2.
    // V(2) has 3 points: one from the fixed orbit (value ghost_2([1]) = 1)
    // and two from the split degree-2 orbit (value ghost_1([2]) = 2 each):
    // E_2 = (1 + 2 + 2)/3 = 5/3.
    OrbitFunction two(FiniteZSet({1, 2}),
                      {Witt::teichmuller(Scalar(1), 4), Witt::teichmuller(Scalar(2), 4)});
    REQUIRE(expectation_ghost(two, 2) == Scalar(5, 3));

    OrbitFunction empty(FiniteZSet({2}), {Witt::unit(4)});
    REQUIRE_THROWS_AS(expectation_ghost(empty, 1), std::domain_error);
}

TEST_CASE("projection formula") {
    Rng rng(46);
    for (int t = 0; t < 15; ++t) {
        ZMap m = random_map(rng);
        TotalFunction f = random_total(rng, m, 24);
        std::vector<Witt> g;
        for (int i = 0; i < m.base_orbits(); ++i) g.push_back(random_witt(rng, 24));
        // int(f phi^* g) = (int f) g.
        TotalFunction pg = pullback(m, g);
        TotalFunction fpg;
        fpg.val.resize(f.val.size());
        for (std::size_t i = 0; i < f.val.size(); ++i)
            for (std::size_t j = 0; j < f.val[i].size(); ++j)
                fpg.val[i].push_back(f.val[i][j] * pg.val[i][j]);
        std::vector<Witt> lhs = integrate(m, fpg);
        std::vector<Witt> intf = integrate(m, f);
        for (int i = 0; i < m.base_orbits(); ++i) {
            Witt rhs = intf[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)];
            REQUIRE(lhs[static_cast<std::size_t>(i)].agrees(rhs, std::min(lhs[static_cast<std::size_t>(i)].prec(), rhs.prec())));
        }
    }
}

TEST_CASE("base change for integration and expectation") {
    Rng rng(47);
    for (int t = 0; t < 20; ++t) {
        ZMap m2 = random_map(rng);
        // Random psi: B1 with 1-3 orbits mapping into B2.
        int nb1 = 1 + static_cast<int>(rng.below(3));
        std::vector<int> tgt, mult;
        for (int j = 0; j < nb1; ++j) {
            tgt.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(m2.base_orbits()))));
            mult.push_back(1 + static_cast<int>(rng.below(3)));
        }
        CartesianSquare sq(m2, tgt, mult);
        TotalFunction f = random_total(rng, m2, 48);

        // psi^* int f = int phi^* f.
        std::vector<Witt> lhs = pullback_base(sq, integrate(sq.m2, f));
        std::vector<Witt> rhs = integrate(sq.m1, pullback_total(sq, f));
        for (std::size_t j = 0; j < lhs.size(); ++j)
            REQUIRE(lhs[j].agrees(rhs[j], std::min({4, lhs[j].prec(), rhs[j].prec()})));

        // psi^* E[f] = E[phi^* f] (fibers of a random map may be empty; the
        // expectation requires a section, so skip those squares).
        if (sq.m2.has_section()) {
            std::vector<Witt> el = pullback_base(sq, expectation(sq.m2, f));
            std::vector<Witt> er = expectation(sq.m1, pullback_total(sq, f));
            for (std::size_t j = 0; j < el.size(); ++j)
                REQUIRE(el[j].agrees(er[j], std::min({4, el[j].prec(), er[j].prec()})));
        }
    }
}

TEST_CASE("expectations restrict along extension of scalars") {
    Rng rng(48);
    for (int t = 0; t < 20; ++t) {
        ZMap m = random_map(rng);
        if (!m.has_section()) continue;
        TotalFunction f = random_total(rng, m, 48);
        int k = 1 + static_cast<int>(rng.below(4));
        std::vector<Witt> lhs = restrict_base(m, expectation(m, f), k);
        std::vector<Witt> rhs = expectation(m.extend(k), restrict_total(m, f, k));
        REQUIRE(lhs.size() == rhs.size());
        for (std::size_t j = 0; j < lhs.size(); ++j)
            REQUIRE(lhs[j].agrees(rhs[j], std::min({3, lhs[j].prec(), rhs[j].prec()})));
    }
}
