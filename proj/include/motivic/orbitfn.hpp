#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "motivic/symseries.hpp"
#include "motivic/zset.hpp"

namespace motivic {

// Precision given to exact zeros arising from empty sums.
inline constexpr int kEmptySumPrec = 256;

// Element of C(V, W(C)) for finite V: one Witt value per orbit.
struct OrbitFunction {
    FiniteZSet dom;
    std::vector<Witt> val;

    OrbitFunction() = default;
    OrbitFunction(FiniteZSet d, std::vector<Witt> v) : dom(std::move(d)), val(std::move(v)) {
        if (static_cast<std::size_t>(dom.orbits()) != val.size())
            throw std::invalid_argument("orbit function size mismatch");
    }

    static OrbitFunction constant(const FiniteZSet& d, const Witt& w) {
        return OrbitFunction(d, std::vector<Witt>(static_cast<std::size_t>(d.orbits()), w));
    }
};

// Function on the total space of a ZMap, grouped per base orbit then per
// fiber orbit.
struct TotalFunction {
    std::vector<std::vector<Witt>> val;
};

// Restriction res_k from V to V_k: a degree-d orbit splits into gcd(d,k)
// orbits, each carrying p_{k/gcd(d,k)} of the original value. Not the naive
// transport.
inline OrbitFunction restrict_fn(const OrbitFunction& f, int k) {
    auto ext = f.dom.extend(k);
    std::vector<Witt> nv;
    nv.reserve(ext.parent.size());
    for (std::size_t j = 0; j < ext.parent.size(); ++j) {
        int i = ext.parent[j];
        int d = f.dom.deg(i);
        nv.push_back(f.val[static_cast<std::size_t>(i)].adams(k / std::gcd(d, k)));
    }
    return OrbitFunction(ext.set, std::move(nv));
}

// Pullback along a ZMap: (phi^* g)(v) = p_{deg(v)/deg(phi v)} o g(phi v);
// for a fiber orbit of fiber-degree e the ratio is e.
inline TotalFunction pullback(const ZMap& m, const std::vector<Witt>& g) {
    if (g.size() != static_cast<std::size_t>(m.base_orbits()))
        throw std::invalid_argument("pullback: base value count mismatch");
    TotalFunction out;
    out.val.resize(g.size());
    for (int i = 0; i < m.base_orbits(); ++i) {
        const FiniteZSet& fib = m.fiber(i);
        auto& row = out.val[static_cast<std::size_t>(i)];
        row.reserve(static_cast<std::size_t>(fib.orbits()));
        for (int j = 0; j < fib.orbits(); ++j) row.push_back(g[static_cast<std::size_t>(i)].adams(fib.deg(j)));
    }
    return out;
}

// Integration over fibers: (int f)(b) = sum over fiber orbits of f(t^deg).
inline std::vector<Witt> integrate(const ZMap& m, const TotalFunction& f) {
    std::vector<Witt> out;
    out.reserve(static_cast<std::size_t>(m.base_orbits()));
    for (int i = 0; i < m.base_orbits(); ++i) {
        const FiniteZSet& fib = m.fiber(i);
        const auto& row = f.val[static_cast<std::size_t>(i)];
        if (row.size() != static_cast<std::size_t>(fib.orbits()))
            throw std::invalid_argument("integrate: fiber value count mismatch");
        bool started = false;
        Witt acc;
        for (int j = 0; j < fib.orbits(); ++j) {
            Witt term = row[static_cast<std::size_t>(j)].substitute(fib.deg(j));
            acc = started ? acc + term : term;
            started = true;
        }
        if (!started) acc = Witt::zero(kEmptySumPrec);
        out.push_back(acc);
    }
    return out;
}

// Integration over a point base.
inline Witt integrate_point(const OrbitFunction& f, int min_prec = 1) {
    bool started = false;
    Witt acc;
    for (int j = 0; j < f.dom.orbits(); ++j) {
        Witt term = f.val[static_cast<std::size_t>(j)].substitute(f.dom.deg(j));
        acc = started ? acc + term : term;
        started = true;
    }
    if (!started) acc = Witt::zero(std::max(min_prec, kEmptySumPrec));
    return acc;
}

// E_V[f] = int_V f / [V] over a point base.
inline Witt expectation_point(const OrbitFunction& f) {
    Witt num = integrate_point(f);
    Witt cls = f.dom.class_witt(num.prec());
    return num * cls.inverse();
}

// Family expectation E_{V/B}[f]: fiberwise integral divided by the fiber
// class; requires every fiber class invertible.
inline std::vector<Witt> expectation(const ZMap& m, const TotalFunction& f) {
    std::vector<Witt> num = integrate(m, f);
    std::vector<Witt> out;
    out.reserve(num.size());
    for (int i = 0; i < m.base_orbits(); ++i) {
        Witt cls = m.fiber(i).class_witt(num[static_cast<std::size_t>(i)].prec());
        out.push_back(num[static_cast<std::size_t>(i)] * cls.inverse());
    }
    return out;
}

// E_k[f] computed on the finite probability space V_k(1): the uniform
// average, over fixed points of V_k, of the first ghost component of res_k f.
inline Scalar expectation_ghost(const OrbitFunction& f, int k) {
    long long pts = 0;
    Scalar acc(0);
    for (int i = 0; i < f.dom.orbits(); ++i) {
        int d = f.dom.deg(i);
        if (k % d != 0) continue;
        // This orbit contributes d fixed points, each with ghost_1 of
        // p_{k/d} o f = ghost_{k/d}(f).
        acc += Scalar(static_cast<long>(d)) * f.val[static_cast<std::size_t>(i)].ghost(k / d);
        pts += d;
    }
    if (pts == 0) throw std::domain_error("empty fixed-point set");
    return acc / Scalar(static_cast<long>(pts));
}

// psi^* on base functions of a cartesian square.
inline std::vector<Witt> pullback_base(const CartesianSquare& sq, const std::vector<Witt>& g2) {
    std::vector<Witt> out;
    for (std::size_t j = 0; j < sq.target.size(); ++j)
        out.push_back(g2[static_cast<std::size_t>(sq.target[j])].adams(sq.mult[j]));
    return out;
}

// phi^* on total-space functions of a cartesian square: over B1 orbit j the
// fiber orbits split with ratio a = mult[j]; a split piece of a fiber orbit
// of degree e carries p_{a/gcd(e,a)} of the original value.
inline TotalFunction pullback_total(const CartesianSquare& sq, const TotalFunction& f2) {
    TotalFunction out;
    out.val.resize(sq.target.size());
    for (std::size_t j = 0; j < sq.target.size(); ++j) {
        int i = sq.target[j], a = sq.mult[j];
        const FiniteZSet& fib2 = sq.m2.fiber(i);
        for (int w = 0; w < fib2.orbits(); ++w) {
            int e = fib2.deg(w), c = std::gcd(e, a);
            for (int copy = 0; copy < c; ++copy)
                out.val[j].push_back(f2.val[static_cast<std::size_t>(i)][static_cast<std::size_t>(w)].adams(a / c));
        }
    }
    return out;
}

// Restriction of a total-space function to V_k, laid out to match
// m.extend(k): base orbit i of degree d splits into g = gcd(d,k) copies, a
// fiber orbit of degree e into gcd(e, k/g) pieces carrying p_{(k/g)/gcd}.
inline TotalFunction restrict_total(const ZMap& m, const TotalFunction& f, int k) {
    TotalFunction out;
    for (int i = 0; i < m.base_orbits(); ++i) {
        int d = m.base_deg(i), g = std::gcd(d, k);
        std::vector<Witt> row;
        const FiniteZSet& fib = m.fiber(i);
        for (int w = 0; w < fib.orbits(); ++w) {
            int e = fib.deg(w), c = std::gcd(e, k / g);
            for (int copy = 0; copy < c; ++copy)
                row.push_back(f.val[static_cast<std::size_t>(i)][static_cast<std::size_t>(w)].adams((k / g) / c));
        }
        for (int copy = 0; copy < g; ++copy) out.val.push_back(row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// SymSeries-valued functions (coefficient-wise versions of the same maps).
// ---------------------------------------------------------------------------

struct SeriesOrbitFunction {
    FiniteZSet dom;
    std::vector<SymSeries> val;

    SeriesOrbitFunction() = default;
    SeriesOrbitFunction(FiniteZSet d, std::vector<SymSeries> v) : dom(std::move(d)), val(std::move(v)) {
        if (static_cast<std::size_t>(dom.orbits()) != val.size())
            throw std::invalid_argument("orbit function size mismatch");
    }
};

struct SeriesTotalFunction {
    std::vector<std::vector<SymSeries>> val;
};

// Coefficient-wise Adams (p_d * in the coefficient-wise pre-lambda
// structure): how a constant series is seen from a degree-d point.
inline SymSeries coeffwise_adams(const SymSeries& s, int d) {
    SymSeries r(s.deg_cap());
    for (const auto& [t, w] : s.coef()) r.set(t, w.adams(d));
    return r;
}

// Coefficient-wise Witt substitution t -> t^d (the integrand of int_{V/B}).
inline SymSeries coeffwise_substitute(const SymSeries& s, int d) {
    SymSeries r(s.deg_cap());
    for (const auto& [t, w] : s.coef()) r.set(t, w.substitute(d));
    return r;
}

inline SeriesOrbitFunction restrict_fn(const SeriesOrbitFunction& f, int k) {
    auto ext = f.dom.extend(k);
    std::vector<SymSeries> nv;
    nv.reserve(ext.parent.size());
    for (std::size_t j = 0; j < ext.parent.size(); ++j) {
        int i = ext.parent[j];
        int d = f.dom.deg(i);
        nv.push_back(coeffwise_adams(f.val[static_cast<std::size_t>(i)], k / std::gcd(d, k)));
    }
    return SeriesOrbitFunction(ext.set, std::move(nv));
}

inline SeriesTotalFunction pullback(const ZMap& m, const std::vector<SymSeries>& g) {
    SeriesTotalFunction out;
    out.val.resize(g.size());
    for (int i = 0; i < m.base_orbits(); ++i) {
        const FiniteZSet& fib = m.fiber(i);
        auto& row = out.val[static_cast<std::size_t>(i)];
        for (int j = 0; j < fib.orbits(); ++j)
            row.push_back(coeffwise_adams(g[static_cast<std::size_t>(i)], fib.deg(j)));
    }
    return out;
}

inline std::vector<SymSeries> integrate(const ZMap& m, const SeriesTotalFunction& f, int deg_cap) {
    std::vector<SymSeries> out;
    for (int i = 0; i < m.base_orbits(); ++i) {
        const FiniteZSet& fib = m.fiber(i);
        SymSeries acc(deg_cap);
        for (int j = 0; j < fib.orbits(); ++j)
            acc += coeffwise_substitute(f.val[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], fib.deg(j));
        out.push_back(acc);
    }
    return out;
}

inline std::vector<SymSeries> pullback_base(const CartesianSquare& sq, const std::vector<SymSeries>& g2) {
    std::vector<SymSeries> out;
    for (std::size_t j = 0; j < sq.target.size(); ++j)
        out.push_back(coeffwise_adams(g2[static_cast<std::size_t>(sq.target[j])], sq.mult[j]));
    return out;
}

inline SeriesTotalFunction pullback_total(const CartesianSquare& sq, const SeriesTotalFunction& f2) {
    SeriesTotalFunction out;
    out.val.resize(sq.target.size());
    for (std::size_t j = 0; j < sq.target.size(); ++j) {
        int i = sq.target[j], a = sq.mult[j];
        const FiniteZSet& fib2 = sq.m2.fiber(i);
        for (int w = 0; w < fib2.orbits(); ++w) {
            int e = fib2.deg(w), c = std::gcd(e, a);
            for (int copy = 0; copy < c; ++copy)
                out.val[j].push_back(
                    coeffwise_adams(f2.val[static_cast<std::size_t>(i)][static_cast<std::size_t>(w)], a / c));
        }
    }
    return out;
}

inline SeriesTotalFunction restrict_total(const ZMap& m, const SeriesTotalFunction& f, int k) {
    SeriesTotalFunction out;
    for (int i = 0; i < m.base_orbits(); ++i) {
        int d = m.base_deg(i), g = std::gcd(d, k);
        std::vector<SymSeries> row;
        const FiniteZSet& fib = m.fiber(i);
        for (int w = 0; w < fib.orbits(); ++w) {
            int e = fib.deg(w), c = std::gcd(e, k / g);
            for (int copy = 0; copy < c; ++copy)
                row.push_back(coeffwise_adams(f.val[static_cast<std::size_t>(i)][static_cast<std::size_t>(w)],
                                              (k / g) / c));
        }
        for (int copy = 0; copy < g; ++copy) out.val.push_back(row);
    }
    return out;
}

// Restriction of a base function along extension of scalars, matching the
// base orbit layout of m.extend(k).
inline std::vector<Witt> restrict_base(const ZMap& m, const std::vector<Witt>& g, int k) {
    std::vector<Witt> out;
    for (int i = 0; i < m.base_orbits(); ++i) {
        int d = m.base_deg(i), gcdk = std::gcd(d, k);
        Witt v = g[static_cast<std::size_t>(i)].adams(k / gcdk);
        for (int copy = 0; copy < gcdk; ++copy) out.push_back(v);
    }
    return out;
}

inline std::vector<SymSeries> restrict_base(const ZMap& m, const std::vector<SymSeries>& g, int k) {
    std::vector<SymSeries> out;
    for (int i = 0; i < m.base_orbits(); ++i) {
        int d = m.base_deg(i), gcdk = std::gcd(d, k);
        SymSeries v = coeffwise_adams(g[static_cast<std::size_t>(i)], k / gcdk);
        for (int copy = 0; copy < gcdk; ++copy) out.push_back(v);
    }
    return out;
}

} // namespace motivic
