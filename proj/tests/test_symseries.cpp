#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <map>

#include "motivic/rng.hpp"
#include "motivic/symseries.hpp"

using namespace motivic;

namespace {

// ---------------------------------------------------------------------------
// Independent oracle: evaluate series as honest polynomials in t1, t2, t3.
// Restriction to three variables is faithful on partitions of length <= 3 and
// kills the rest, so whole-polynomial comparisons are valid for any inputs.
// ---------------------------------------------------------------------------
using Mono = std::array<int, 3>;
using Poly3 = std::map<Mono, Witt>;

int mdeg(const Mono& m) { return m[0] + m[1] + m[2]; }

void padd(Poly3& p, const Mono& m, const Witt& w) {
    auto it = p.find(m);
    if (it == p.end())
        p.emplace(m, w);
    else
        it->second += w;
}

// Multiply by the power sum p_k = t1^k + t2^k + t3^k, truncating at cap.
Poly3 mul_power_sum(const Poly3& p, int k, int cap) {
    Poly3 out;
    for (const auto& [m, w] : p) {
        for (int v = 0; v < 3; ++v) {
            Mono n = m;
            n[static_cast<std::size_t>(v)] += k;
            if (mdeg(n) <= cap) padd(out, n, w);
        }
    }
    return out;
}

Poly3 to_poly3(const SymSeries& f) {
    Poly3 out;
    for (const auto& [tau, c] : f.coef()) {
        Poly3 term{{Mono{0, 0, 0}, c}};
        for (int part : tau.parts()) term = mul_power_sum(term, part, f.deg_cap());
        for (const auto& [m, w] : term) padd(out, m, w);
    }
    return out;
}

Poly3 poly_mul(const Poly3& a, const Poly3& b, int cap) {
    Poly3 out;
    for (const auto& [ma, wa] : a)
        for (const auto& [mb, wb] : b) {
            Mono m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
            if (mdeg(m) <= cap) padd(out, m, wa * wb);
        }
    return out;
}

bool poly_agree(const Poly3& a, const Poly3& b, int upto) {
    auto zero_up_to = [&](const Witt& w) {
        int n = std::min(w.prec(), upto);
        for (int k = 1; k <= n; ++k)
            if (!w.ghost(k).is_zero()) return false;
        return true;
    };
    for (const auto& [m, w] : a) {
        auto it = b.find(m);
        if (it == b.end()) {
            if (!zero_up_to(w)) return false;
        } else if (!w.agrees(it->second, std::min({upto, w.prec(), it->second.prec()}))) {
            return false;
        }
    }
    for (const auto& [m, w] : b)
        if (a.find(m) == a.end() && !zero_up_to(w)) return false;
    return true;
}

SymSeries random_series(Rng& rng, int cap, int prec, bool fil1 = false) {
    SymSeries f(cap);
    auto parts = partitions_up_to(cap);
    int terms = 2 + static_cast<int>(rng.below(4));
    for (int t = 0; t < terms; ++t) {
        const Partition& tau = parts[rng.below(parts.size())];
        if (fil1 && tau.empty()) continue;
        std::vector<Scalar> g(static_cast<std::size_t>(prec));
        for (auto& x : g) x = Scalar(rng.range(-3, 3), 1 + rng.below(2));
        f.add_to(tau, Witt(std::move(g)));
    }
    return f;
}

std::map<Partition, Rat> op_h(int n) {
    std::map<Partition, Rat> a;
    for (const auto& sig : partitions_of(n)) a[sig] = 1 / sig.z();
    return a;
}

std::map<Partition, Rat> op_e(int n) {
    std::map<Partition, Rat> a;
    for (const auto& sig : partitions_of(n)) {
        Rat c = 1 / sig.z();
        a[sig] = (n - sig.length()) % 2 == 0 ? c : -c;
    }
    return a;
}

std::map<Partition, Rat> op_p(int n) { return {{Partition{n}, Rat(1)}}; }

} // namespace

TEST_CASE("product basics") {
    SymSeries f(4);
    f.set(Partition{1}, Witt::unit(4));
    SymSeries p11 = f * f;
    REQUIRE(p11.coef().size() == 1);
    REQUIRE(*p11.find(Partition{1, 1}) == Witt::unit(4));
    SymSeries one = SymSeries::one(4, 4);
    Rng rng(3);
    SymSeries g = random_series(rng, 4, 4);
    REQUIRE(g * one == g);
}

TEST_CASE("multiplication matches the monomial oracle") {
    Rng rng(4);
    for (int t = 0; t < 25; ++t) {
        SymSeries f = random_series(rng, 5, 4);
        SymSeries g = random_series(rng, 5, 4);
        Poly3 lhs = to_poly3(f * g);
        Poly3 rhs = poly_mul(to_poly3(f), to_poly3(g), 5);
        REQUIRE(poly_agree(lhs, rhs, 4));
    }
}

TEST_CASE("plethysm by p_i") {
    // p_2 o (c p_1) = (p_2 o c) p_2 with c = [3].
    SymSeries f(4);
    f.set(Partition{1}, Witt::teichmuller(Scalar(3), 4));
    SymSeries r = plethysm_p(2, f);
    REQUIRE(r.coef().size() == 1);
    REQUIRE(*r.find(Partition{2}) == Witt::teichmuller(Scalar(9), 2));
    Rng rng(5);
    SymSeries g = random_series(rng, 5, 6);
    REQUIRE(plethysm_p(1, g) == g);
}

TEST_CASE("plethysm of h2 against the substitution oracle") {
    // F = p_1 + p_2 with unit coefficients: its monomial multiset in three
    // variables is {t1,t2,t3,t1^2,t2^2,t3^2}; h_2 o F sums products of
    // unordered pairs from the multiset.
    int cap = 6, prec = 6;
    SymSeries f(cap);
    f.set(Partition{1}, Witt::unit(prec));
    f.set(Partition{2}, Witt::unit(prec));
    SymSeries got = plethysm(op_h(2), f);

    std::vector<Mono> ms;
    for (int v = 0; v < 3; ++v) {
        Mono a{0, 0, 0};
        a[static_cast<std::size_t>(v)] = 1;
        ms.push_back(a);
    }
    for (int v = 0; v < 3; ++v) {
        Mono a{0, 0, 0};
        a[static_cast<std::size_t>(v)] = 2;
        ms.push_back(a);
    }
    Poly3 expect;
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i; j < ms.size(); ++j) {
            Mono m{ms[i][0] + ms[j][0], ms[i][1] + ms[j][1], ms[i][2] + ms[j][2]};
            if (mdeg(m) <= cap) padd(expect, m, Witt::unit(3));
        }
    REQUIRE(poly_agree(to_poly3(got), expect, 3));
}

TEST_CASE("plethysm associativity on operator generators") {
    Rng rng(6);
    for (auto& a : {op_p(2), op_h(2), op_e(3)}) {
        for (auto& b : {op_p(3), op_h(2), op_e(2)}) {
            SymSeries f = random_series(rng, 6, 12, true);
            SymSeries bf = plethysm(b, f);
            SymSeries lhs = plethysm(a, bf);
            // (a o b) o F with a o b expanded as an operator: p_sig o b is the
            // product over parts of b with indices scaled.
            std::map<Partition, Rat> ab;
            for (const auto& [sig, ca] : a) {
                std::map<Partition, Rat> term{{Partition{}, Rat(1)}};
                for (int part : sig.parts()) {
                    std::map<Partition, Rat> pb;
                    for (const auto& [tau, cb] : b) pb[tau.scaled(part)] += cb;
                    std::map<Partition, Rat> nt;
                    for (const auto& [t1, c1] : term)
                        for (const auto& [t2, c2] : pb) nt[t1.merged(t2)] += c1 * c2;
                    term = nt;
                }
                for (const auto& [tau, c] : term) ab[tau] += ca * c;
            }
            SymSeries rhs = plethysm(ab, f);
            REQUIRE(lhs.agrees(rhs, 2));
        }
    }
}

TEST_CASE("Exp basics") {
    SymSeries zero(5);
    SymSeries one = exp_sigma(zero, 4);
    REQUIRE(one == SymSeries::one(5, 4));

    // Exp([z] h_1) = sum_j [z^j] h_j.
    int cap = 5, prec = 10;
    SymSeries f(cap);
    f.set(Partition{1}, Witt::teichmuller(Scalar(5), prec));
    SymSeries got = exp_sigma(f);
    SymSeries expect(cap);
    expect.add_to(Partition{}, Witt::unit(prec));
    for (int j = 1; j <= cap; ++j) {
        Witt zj = Witt::teichmuller(Scalar(ipow(5, j)), prec / j);
        for (const auto& sig : partitions_of(j)) expect.add_to(sig, zj.scaled(Scalar(Rat(1) / sig.z())));
    }
    REQUIRE(got == expect);

    // sum_h agrees with Exp(unit h_1).
    SymSeries g(cap);
    g.set(Partition{1}, Witt::unit(prec));
    REQUIRE(exp_sigma(g).agrees(sum_h(cap, prec), 2));
}

TEST_CASE("Exp is a homomorphism and Log inverts it") {
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        SymSeries f = random_series(rng, 5, 10, true);
        SymSeries g = random_series(rng, 5, 10, true);
        REQUIRE(exp_sigma(f + g) == exp_sigma(f) * exp_sigma(g));
        REQUIRE(log_sigma(exp_sigma(f)).agrees(f, 2));
        REQUIRE(exp_sigma(log_sigma(exp_sigma(f))).agrees(exp_sigma(f), 2));
    }
    // Log(1) = 0 and Log(sum h_j) = h_1.
    REQUIRE(log_sigma(SymSeries::one(4, 4)) == SymSeries(4));
    SymSeries l = log_sigma(sum_h(4, 8));
    SymSeries h1(4);
    h1.set(Partition{1}, Witt::unit(8));
    REQUIRE(l.agrees(h1, 2));
    REQUIRE_THROWS_AS(exp_sigma(SymSeries::one(4, 4)), std::domain_error);
    REQUIRE_THROWS_AS(log_sigma(SymSeries(4)), std::domain_error);
}

TEST_CASE("pre-lambda powers") {
    Rng rng(8);
    SymSeries f = random_series(rng, 5, 20, true);
    f += SymSeries::one(5, 20);
    // F^0 = 1, F^unit = F.
    REQUIRE(power(f, Witt::zero(6)) == SymSeries::one(5, 6));
    REQUIRE(power(f, Witt::unit(20)).agrees(f, 4));
    // (1 + h_1)^{(2,2,...)} = (1 + h_1)^2.
    SymSeries oneh(5);
    oneh.set(Partition{}, Witt::unit(12));
    oneh.set(Partition{1}, Witt::unit(12));
    Witt two = Witt::constant(Scalar(2), 12);
    REQUIRE(power(oneh, two).agrees(oneh * oneh, 2));
    // F^{E1+E2} = F^{E1} F^{E2} and (FG)^E = F^E G^E.
    for (int t = 0; t < 6; ++t) {
        SymSeries F = random_series(rng, 4, 16, true) + SymSeries::one(4, 16);
        SymSeries G = random_series(rng, 4, 16, true) + SymSeries::one(4, 16);
        std::vector<Scalar> g1(16), g2(16);
        for (auto& x : g1) x = Scalar(rng.range(-3, 3));
        for (auto& x : g2) x = Scalar(rng.range(-3, 3));
        Witt E1{g1}, E2{g2};
        REQUIRE(power(F, E1 + E2).agrees(power(F, E1) * power(F, E2), 3));
        REQUIRE(power(F * G, E1).agrees(power(F, E1) * power(G, E1), 3));
    }
}

TEST_CASE("basis conversions") {
    // p_2 -> m_(2); h_2 -> m_(2) + m_(1,1); e_2 -> (p_1^2 - p_2)/2.
    SymSeries p2(3);
    p2.set(Partition{2}, Witt::unit(3));
    auto m = to_basis(p2, Basis::m);
    REQUIRE(m.size() == 1);
    REQUIRE(m.at(Partition{2}) == Witt::unit(3));

    SymSeries h2(3);
    for (const auto& sig : partitions_of(2)) h2.add_to(sig, Witt::constant(Scalar(Rat(1) / sig.z()), 3));
    auto hm = to_basis(h2, Basis::m);
    REQUIRE(hm.size() == 2);
    REQUIRE(hm.at(Partition{2}) == Witt::unit(3));
    REQUIRE(hm.at(Partition{1, 1}) == Witt::unit(3));

    auto he = to_basis(h2, Basis::h);
    REQUIRE(he.size() == 1);
    REQUIRE(he.at(Partition{2}) == Witt::unit(3));

    SymSeries e2(3);
    for (const auto& sig : partitions_of(2)) {
        Rat c = 1 / sig.z();
        if ((2 - sig.length()) % 2 == 1) c = -c;
        e2.add_to(sig, Witt::constant(Scalar(c), 3));
    }
    auto ee = to_basis(e2, Basis::e);
    REQUIRE(ee.size() == 1);
    REQUIRE(ee.at(Partition{2}) == Witt::unit(3));
    REQUIRE(*e2.find(Partition{1, 1}) == Witt::constant(Scalar(1, 2), 3));
    REQUIRE(*e2.find(Partition{2}) == Witt::constant(Scalar(-1, 2), 3));

    // Round trips through every basis.
    Rng rng(9);
    for (auto b : {Basis::m, Basis::h, Basis::e, Basis::p}) {
        SymSeries f = random_series(rng, 5, 4);
        REQUIRE(from_basis(to_basis(f, b), b, 5) == f);
    }
}

TEST_CASE("ghost slices") {
    SymSeries f(3);
    f.set(Partition{1}, Witt::teichmuller(Scalar(2), 4));
    ScalarSeries s2 = ghost_slice(f, 2);
    REQUIRE(s2.at(Partition{1}) == Scalar(4));

    ScalarSeries s1 = ghost_slice(sum_h(4, 2), 1);
    for (const auto& sig : partitions_of(3)) REQUIRE(s1.at(sig) == Scalar(Rat(1) / sig.z()));

    Rng rng(10);
    for (int t = 0; t < 10; ++t) {
        SymSeries a = random_series(rng, 4, 4), b = random_series(rng, 4, 4);
        for (int k = 1; k <= 4; ++k)
            REQUIRE(ghost_slice(a * b, k) == ghost_slice(a, k) * ghost_slice(b, k));
    }
    REQUIRE_THROWS_AS(ghost_slice(f, 5), std::domain_error);
}

TEST_CASE("ghost slices intertwine p_i with dilation") {
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        SymSeries f = random_series(rng, 6, 12);
        for (int i : {2, 3}) {
            for (int k = 1; k * i <= 12; ++k) {
                ScalarSeries lhs = ghost_slice(plethysm_p(i, f), k);
                ScalarSeries rhs = ghost_slice(f, i * k).dilated(i);
                REQUIRE(lhs == rhs);
            }
        }
    }
}

TEST_CASE("negation transform") {
    int cap = 6, prec = 12;
    // sum_j h_j maps to sum_j (-1)^j e_j and the two multiply to 1.
    SymSeries H = sum_h(cap, prec);
    SymSeries E = negate_distribution(H);
    auto etab = to_basis(E, Basis::e);
    for (int j = 1; j <= cap; ++j) {
        Witt w = etab.at(Partition{j});
        REQUIRE(w.agrees(Witt::constant(Scalar(j % 2 == 0 ? 1 : -1), prec), prec / j));
    }
    REQUIRE((H * E).agrees(SymSeries::one(cap, prec), 2));

    // Involution.
    Rng rng(12);
    SymSeries f = random_series(rng, 5, 10, true) + SymSeries::one(5, 10);
    REQUIRE(negate_distribution(negate_distribution(f)).agrees(f, 2));

    // Independent characterization: multiply each p_tau coefficient by
    // (-1)^{length(tau)}.
    SymSeries alt(5);
    for (const auto& [tau, w] : f.coef()) alt.set(tau, tau.length() % 2 == 0 ? w : -w);
    REQUIRE(negate_distribution(f).agrees(alt, 2));

    // Deterministic atoms: the transform of Exp(X h_1) is Exp((-X) h_1).
    for (int t = 0; t < 8; ++t) {
        std::vector<Scalar> g(24);
        for (auto& x : g) x = Scalar(rng.range(-4, 4), 1 + rng.below(2));
        Witt X{g};
        SymSeries xh(6);
        xh.set(Partition{1}, X);
        SymSeries nxh(6);
        nxh.set(Partition{1}, -X);
        REQUIRE(negate_distribution(exp_sigma(xh)).agrees(exp_sigma(nxh), 4));
    }
}

TEST_CASE("variable scaling") {
    Rng rng(13);
    // Scaling the atom: Exp(([z]X) h_1) = scale_variables(Exp(X h_1), z).
    for (int t = 0; t < 6; ++t) {
        std::vector<Scalar> g(24);
        for (auto& x : g) x = Scalar(rng.range(-3, 3));
        Witt X{g};
        Scalar z(rng.range(1, 4), 1 + rng.below(2));
        SymSeries xh(5);
        xh.set(Partition{1}, X);
        SymSeries sxh(5);
        sxh.set(Partition{1}, X * Witt::teichmuller(z, 24));
        REQUIRE(scale_variables(exp_sigma(xh), z).agrees(exp_sigma(sxh), 4));
    }
}
