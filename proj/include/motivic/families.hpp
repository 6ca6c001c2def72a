#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "motivic/euler.hpp"

namespace motivic {

enum class Family { character, smooth_hypersurface, exotic, ci_zeta, ci_lfunction, hirzebruch };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::character: return "character";
        case Family::smooth_hypersurface: return "smooth_hypersurface";
        case Family::exotic: return "exotic";
        case Family::ci_zeta: return "ci_zeta";
        case Family::ci_lfunction: return "ci_lfunction";
        case Family::hirzebruch: return "hirzebruch";
    }
    return "?";
}

inline std::optional<Family> family_from_name(const std::string& s) {
    for (Family f : {Family::character, Family::smooth_hypersurface, Family::exotic, Family::ci_zeta,
                     Family::ci_lfunction, Family::hirzebruch})
        if (s == family_name(f)) return f;
    return std::nullopt;
}

struct FamilySpec {
    Family family = Family::smooth_hypersurface;
    long q = 2;
    int ell = 1;  // character order / relative dimension of the jet condition
    int n = 1;    // ambient/base projective dimension
    int m = 0;    // dimension of the complete intersection
    int r = 1;    // codimension (number of forms)
    std::vector<int> degrees;            // enumeration degrees d (empirical side)
    std::vector<Witt> cohomology;        // [H^i(Y)], i = 0..m; empty = projective table
    int N = 6;                           // symmetric degree cap
    int K = 6;                           // reported ghost precision
};

// [q^j] at the given precision.
inline Witt teich_q(long q, int j, int prec) {
    Witt t = Witt::teichmuller(Scalar(q), prec);
    Witt out = Witt::unit(prec);
    for (int i = 0; i < j; ++i) out *= t;
    return out;
}

// q^{num/2} as an exact scalar; needs the tower only when q is not a perfect
// square and num is odd.
inline Scalar q_half_power(long q, int num, const TowerPtr& tower = nullptr) {
    if (num % 2 == 0) {
        int e = num / 2;
        Rat v = e >= 0 ? Rat(ipow(q, e)) : Rat(1, ipow(q, -e));
        v.canonicalize();
        return Scalar(v);
    }
    long s = perfect_sqrt(q);
    Scalar root = s >= 0 ? Scalar(s) : [&] {
        if (!tower || !tower->has_sqrt())
            throw std::domain_error("scalar tower lacks sqrt(q) needed for odd half-powers");
        return Scalar::sqrt_q(tower);
    }();
    Scalar out(1);
    for (int i = 0; i < std::abs(num); ++i) out *= root;
    return num > 0 ? out : out.inverse();
}

// --- character family (order-ell Kummer characters on A^1) -----------------

// Local expectation of chi_P^{ell j} at a degree-one point over F_{q^k}:
// the census value counts germs with nonzero value among nonzero germs.
// The printed fraction in the source derivation counts the complement; it is
// retained as a flagged cross-check, not as the default.
inline Rat character_local_expectation(long q, int ell, int k, bool printed_fraction = false) {
    Rat Q(ipow(q, k));
    Rat Ql = 1, Ql1 = 1;
    for (int i = 0; i < ell; ++i) Ql *= Q;
    for (int i = 0; i < ell - 1; ++i) Ql1 *= Q;
    Rat v = printed_fraction ? Rat(Ql1 - 1) / Rat(Ql - 1) : Rat(Ql - Ql1) / Rat(Ql - 1);
    v.canonicalize();
    return v;
}

// Witt coefficient with ghost_k = census expectation at level k.
inline Witt character_inner_coefficient(long q, int ell, int prec, bool printed_fraction = false) {
    std::vector<Scalar> g(static_cast<std::size_t>(prec));
    for (int k = 1; k <= prec; ++k)
        g[static_cast<std::size_t>(k) - 1] = Scalar(character_local_expectation(q, ell, k, printed_fraction));
    return Witt(std::move(g));
}

// (1 + c sum_j h_{ell j})^{[q]}: the asymptotic sigma-MGF of the character
// L-function family (the factor at infinity is 1).
inline SymSeries family_character(long q, int ell, int deg_cap, int prec, bool printed_fraction = false) {
    if (ell < 2) throw std::invalid_argument("character order must be >= 2");
    if ((q - 1) % ell != 0) throw std::invalid_argument("character order must divide q-1");
    Witt c = character_inner_coefficient(q, ell, prec, printed_fraction);
    SymSeries hs = sum_h(deg_cap, prec, ell);
    hs.add_to(Partition{}, -Witt::unit(prec));
    SymSeries inner = SymSeries::one(deg_cap, prec) + hs.scaled(c);
    return power(inner, Witt::teichmuller(Scalar(q), prec));
}

// --- smooth hypersurface / exotic transversality zeta ----------------------

// Bernoulli parameter ([q]^l - 1)/([q]^{l+1} - 1).
inline Witt hypersurface_p(long q, int ell, int prec) {
    Witt t = teich_q(q, ell, prec);
    Witt t1 = teich_q(q, ell + 1, prec);
    Witt u = Witt::unit(prec);
    return (t - u) * (t1 - u).inverse();
}

inline SymSeries family_smooth_hypersurface(long q, int ell, const Witt& base_class, int deg_cap) {
    return binomial_mgf(hypersurface_p(q, ell, base_class.prec()), base_class, deg_cap);
}

// --- complete intersections -------------------------------------------------

// L(a,b,c) = prod_{j=0}^{c-1} (1 - a^{-(b-j)}) evaluated at a = q^k.
inline Rat linear_independence_probability(const Rat& a, int b, int c) {
    Rat out(1);
    for (int j = 0; j < c; ++j) {
        Rat aj(1);
        for (int i = 0; i < b - j; ++i) aj *= a;
        out *= (aj - 1) / aj;
    }
    out.canonicalize();
    return out;
}

// Ghost-wise L([q], b, c).
inline Witt linear_independence_witt(long q, int b, int c, int prec) {
    std::vector<Scalar> g(static_cast<std::size_t>(prec));
    for (int k = 1; k <= prec; ++k)
        g[static_cast<std::size_t>(k) - 1] = Scalar(linear_independence_probability(Rat(ipow(q, k)), b, c));
    return Witt(std::move(g));
}

// p = [q]^{-r} L([q],m+r,r) / (1 - [q]^{-r} + [q]^{-r} L([q],m+r,r)).
inline Witt ci_p(long q, int m, int r, int prec) {
    Witt L = linear_independence_witt(q, m + r, r, prec);
    Witt qr = teich_q(q, r, prec).inverse();
    Witt u = Witt::unit(prec);
    return (qr * L) * (u - qr + qr * L).inverse();
}

inline SymSeries family_ci_zeta(long q, int m, int r, const Witt& base_class, int deg_cap) {
    return binomial_mgf(ci_p(q, m, r, base_class.prec()), base_class, deg_cap);
}

// [H^i(P^dim)] = [q^{i/2}] for even i, 0 for odd i.
inline std::vector<Witt> projective_cohomology(long q, int dim, int upto, int prec) {
    std::vector<Witt> h;
    for (int i = 0; i <= upto; ++i) {
        if (i % 2 == 0 && i / 2 <= dim)
            h.push_back(teich_q(q, i / 2, prec));
        else
            h.push_back(Witt::zero(prec));
    }
    return h;
}

// mu = -eps sum_{i=0}^{m-1} (-1)^i ([q^{-m/2}] + [q^{(m-2i)/2}]) [H^i(Y)]
//      - [q^{-m/2}] [H^m(Y)].
inline Witt ci_mu(long q, int m, const std::vector<Witt>& coh, int prec, const TowerPtr& tower = nullptr) {
    if (static_cast<int>(coh.size()) < m + 1)
        throw std::invalid_argument("cohomology classes [H^0..H^m] required");
    int eps = m % 2 == 0 ? 1 : -1;
    Witt qmh = Witt::teichmuller(q_half_power(q, -m, tower), prec);
    Witt acc = Witt::zero(prec);
    for (int i = 0; i < m; ++i) {
        Witt qpow = Witt::teichmuller(q_half_power(q, m - 2 * i, tower), prec);
        Witt term = (qmh + qpow) * coh[static_cast<std::size_t>(i)];
        acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    Witt mu = -acc.scaled(Scalar(static_cast<long>(eps))) - qmh * coh[static_cast<std::size_t>(m)];
    return mu;
}

// The main-theorem assembly: (1 + p sum_i [q^{-im/2}] eps^i f_i)^{[Y]}
// Exp_sigma(mu h_1), with f_i = h_i, eps = 1 for m even and f_i = e_i,
// eps = -1 for m odd.
inline SymSeries family_ci_lfunction(long q, int m, int r, const Witt& base_class,
                                     const std::vector<Witt>& coh, int deg_cap,
                                     const TowerPtr& tower = nullptr) {
    int prec = base_class.prec();
    Witt p = ci_p(q, m, r, prec);
    bool odd = m % 2 != 0;
    SymSeries inner = SymSeries::one(deg_cap, prec);
    for (int i = 1; i <= deg_cap; ++i) {
        Witt ci = p * Witt::teichmuller(q_half_power(q, -i * m, tower), prec);
        if (odd && i % 2 != 0) ci = -ci;
        // f_i expanded in the p-basis.
        for (const auto& sig : partitions_of(i)) {
            Rat c = 1 / sig.z();
            if (odd && (i - sig.length()) % 2 == 1) c = -c;
            inner.add_to(sig, ci.scaled(Scalar(c)));
        }
    }
    SymSeries head = power(inner, base_class);
    SymSeries muh(deg_cap);
    muh.set(Partition{1}, ci_mu(q, m, coh, prec, tower));
    return head * exp_sigma(muh);
}

// The same object obtained by transforming the zeta-side MGF: scale the
// variables by [q^{-m/2}], flip the distribution when m is odd, then multiply
// by Exp_sigma(mu h_1). Kept as an independent route for consistency checks.
inline SymSeries family_ci_lfunction_via_zeta(long q, int m, int r, const Witt& base_class,
                                              const std::vector<Witt>& coh, int deg_cap,
                                              const TowerPtr& tower = nullptr) {
    SymSeries z = family_ci_zeta(q, m, r, base_class, deg_cap);
    SymSeries scaled = scale_variables(z, q_half_power(q, -m, tower));
    if (m % 2 != 0) scaled = negate_distribution(scaled);
    SymSeries muh(deg_cap);
    muh.set(Partition{1}, ci_mu(q, m, coh, base_class.prec(), tower));
    return scaled * exp_sigma(muh);
}

// --- Hirzebruch (2,d) curves ------------------------------------------------

// Closed-form germ census at level k: cases (double point, split pair,
// irreducible), and the total q^6 - q^4 - q^3 + q^2.
struct HirzebruchCounts {
    long long double_point, split_pair, irreducible, total;
};

inline HirzebruchCounts hirzebruch_counts(long q, int k = 1) {
    long Q = ipow(q, k);
    HirzebruchCounts c;
    c.double_point = (Q * Q - 1) * (Q * Q * Q - Q * Q);
    c.split_pair = (Q * Q - 1) * Q * Q * Q * Q / 2;
    c.irreducible = (Q - 1) * (Q - 1) * Q * Q * Q * Q / 2;
    c.total = ipow(Q, 6) - ipow(Q, 4) - ipow(Q, 3) + Q * Q;
    return c;
}

// Inner factor
//   [ (q^2-1)(q-1) S + (q^4-q^2)/2 S^2 + (q^2-q)^2/2 S(t^2) ] / (q^4-q^2-q+1)
// with S = sum_j h_j, all coefficients as [q]-classes, raised to [P^1].
inline SymSeries family_hirzebruch(long q, int deg_cap, int prec) {
    Witt t = Witt::teichmuller(Scalar(q), prec);
    Witt u = Witt::unit(prec);
    Witt t2 = t * t, t3 = t2 * t, t4 = t2 * t2;
    Witt A = (t2 - u) * (t - u);
    Witt B = (t4 - t2).scaled(Scalar(1, 2));
    Witt C = ((t2 - t) * (t2 - t)).scaled(Scalar(1, 2));
    Witt D = t4 - t2 - t + u;
    SymSeries S = sum_h(deg_cap, prec);
    SymSeries F = (S.scaled(A) + (S * S).scaled(B) + S.dilated(2).scaled(C)).scaled(D.inverse());
    Witt p1 = t + u;  // [P^1]
    return power(F, p1);
}

// --- random-matrix comparison ----------------------------------------------

inline SymSeries exp_h2(int deg_cap, int prec) {
    SymSeries f(deg_cap);
    for (const auto& sig : partitions_of(2)) f.add_to(sig, Witt::constant(Scalar(Rat(1) / sig.z()), prec));
    return exp_sigma(f, prec);
}

inline SymSeries exp_e2(int deg_cap, int prec) {
    SymSeries f(deg_cap);
    for (const auto& sig : partitions_of(2)) {
        Rat c = 1 / sig.z();
        if ((2 - sig.length()) % 2 == 1) c = -c;
        f.add_to(sig, Witt::constant(Scalar(c), prec));
    }
    return exp_sigma(f, prec);
}

inline SymSeries exp_h2_h3_etc(int deg_cap, int prec) {
    SymSeries f = sum_h(deg_cap, prec);
    f.add_to(Partition{}, -Witt::unit(prec));
    f.add_to(Partition{1}, -Witt::unit(prec));
    return exp_sigma(f, prec);
}

struct ModQhalfReport {
    bool pass = true;
    double max_ratio = 0.0;
    std::string worst;
};

// Checks |ghost_k(F - reference)| <= C q^{-k/2} for every coefficient of
// degree <= deg cap and every k <= kmax; reports the worst deviation ratio.
inline ModQhalfReport reduce_mod_qhalf(const SymSeries& f, const SymSeries& ref, long q, int kmax,
                                       double bound_const) {
    SymSeries diff = f - ref;
    ModQhalfReport rep;
    for (const auto& [t, w] : diff.coef()) {
        for (int k = 1; k <= kmax; ++k) {
            if (w.prec() < k) throw std::domain_error("insufficient precision in mod-q^{1/2} check");
            double dev = std::abs(w.ghost(k).embed());
            double bound = bound_const * std::pow(static_cast<double>(q), -0.5 * k);
            double ratio = dev / bound;
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.worst = t.str() + " @k=" + std::to_string(k);
            }
            if (dev > bound) rep.pass = false;
        }
    }
    return rep;
}

} // namespace motivic
