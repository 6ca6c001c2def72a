#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "motivic/orbitfn.hpp"

namespace motivic {

// prod_V H = Exp_sigma(int_V Log_sigma H) over a point base, H given
// per orbit with constant coefficient 1.
inline SymSeries euler_product_point(const SeriesOrbitFunction& h) {
    int cap = 0;
    for (const auto& s : h.val) cap = std::max(cap, s.deg_cap());
    SymSeries integral(cap);
    int prec_hint = 1;
    for (int j = 0; j < h.dom.orbits(); ++j) {
        const SymSeries& hv = h.val[static_cast<std::size_t>(j)];
        if (!hv.constant_term_is_one())
            throw std::domain_error("Euler product requires constant coefficient 1");
        integral += coeffwise_substitute(log_sigma(hv), h.dom.deg(j));
        prec_hint = std::max(prec_hint, hv.max_prec());
    }
    return exp_sigma(integral, prec_hint);
}

// prod_{V/B} H for an explicit map: computed fiberwise (which agrees with
// Exp int Log by definition of the fiberwise integral).
inline std::vector<SymSeries> euler_product(const ZMap& m, const SeriesTotalFunction& h) {
    std::vector<SymSeries> out;
    for (int i = 0; i < m.base_orbits(); ++i)
        out.push_back(euler_product_point(SeriesOrbitFunction(m.fiber(i), h.val[static_cast<std::size_t>(i)])));
    return out;
}

enum class ClassicalVariant { extended, gcd };

// Ghost-component evaluation of prod_V H by classical Euler products:
//   extended: prod over orbits of V_k of (res_k H)_1 (t^deg),
//   gcd:      prod over orbits of V of H_{k/gcd}(t^{deg/gcd})^{gcd}.
// Orbits of extended degree > deg_cap cannot reach surviving coefficients.
inline ScalarSeries euler_product_ghost(const SeriesOrbitFunction& h, int k, ClassicalVariant variant) {
    int cap = 0;
    for (const auto& s : h.val) cap = std::max(cap, s.deg_cap());
    ScalarSeries out = ScalarSeries::one(cap);
    if (variant == ClassicalVariant::extended) {
        SeriesOrbitFunction r = restrict_fn(h, k);
        for (int j = 0; j < r.dom.orbits(); ++j) {
            int d = r.dom.deg(j);
            if (d > cap) continue;
            out = out * ghost_slice(r.val[static_cast<std::size_t>(j)], 1).dilated(d);
        }
        return out;
    }
    for (int j = 0; j < h.dom.orbits(); ++j) {
        int d = h.dom.deg(j);
        int g = std::gcd(k, d);
        if (d / g > cap) continue;
        ScalarSeries f = ghost_slice(h.val[static_cast<std::size_t>(j)], k / g).dilated(d / g);
        out = out * f.pow(g);
    }
    return out;
}

// (1 + p (h_1 + h_2 + ...))^N, the binomial Lambda-distribution MGF.
inline SymSeries binomial_mgf(const Witt& p, const Witt& nexp, int deg_cap) {
    SymSeries inner = SymSeries::one(deg_cap, p.prec());
    SymSeries hs = sum_h(deg_cap, p.prec());
    hs.add_to(Partition{}, -Witt::unit(p.prec()));
    inner += hs.scaled(p);
    return power(inner, nexp);
}

} // namespace motivic
