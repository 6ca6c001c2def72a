#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "motivic/numtheory.hpp"
#include "motivic/witt.hpp"

namespace motivic {

// Admissible Z-set recorded as orbit counts a_d for d <= cap. finite() means
// the listed orbits are all of them; otherwise the counts are the truncation
// of an infinite family at the cap.
class ZSet {
public:
    ZSet() = default;
    ZSet(std::vector<long long> counts, bool finite) : a_(std::move(counts)), finite_(finite) {}

    static ZSet point() { return ZSet({1}, true); }

    static ZSet single_orbit(int d) {
        std::vector<long long> a(static_cast<std::size_t>(d), 0);
        a[static_cast<std::size_t>(d) - 1] = 1;
        return ZSet(std::move(a), true);
    }

    // P^n over F_q truncated at degree cap D:
    // a_d = (1/d) sum_{e | d} mu(d/e) (q^{e(n+1)} - 1)/(q^e - 1).
    static ZSet projective_space(long q, int n, int cap) {
        std::vector<long long> a(static_cast<std::size_t>(cap), 0);
        for (int d = 1; d <= cap; ++d) {
            long long s = 0;
            for (int e : divisors(d)) {
                long long pts = 0, qe = ipow(q, e), pw = 1;
                for (int j = 0; j <= n; ++j) {
                    pts += pw;
                    pw *= qe;
                }
                s += mobius(d / e) * pts;
            }
            if (s % d != 0) throw std::logic_error("projective space orbit count not integral");
            a[static_cast<std::size_t>(d) - 1] = s / d;
        }
        return ZSet(std::move(a), false);
    }

    // A^1 over F_q truncated at cap.
    static ZSet affine_line(long q, int cap) {
        std::vector<long long> a(static_cast<std::size_t>(cap), 0);
        for (int d = 1; d <= cap; ++d) {
            long long s = 0;
            for (int e : divisors(d)) s += mobius(d / e) * ipow(q, e);
            a[static_cast<std::size_t>(d) - 1] = s / d;
        }
        return ZSet(std::move(a), false);
    }

    int cap() const { return static_cast<int>(a_.size()); }
    bool finite() const { return finite_; }
    long long count(int d) const {
        if (d < 1 || d > cap()) throw std::domain_error("orbit degree beyond cap");
        return a_[static_cast<std::size_t>(d) - 1];
    }
    const std::vector<long long>& counts() const { return a_; }

    bool empty() const {
        for (long long x : a_)
            if (x) return false;
        return true;
    }

    long long total_orbits() const {
        long long t = 0;
        for (long long x : a_) t += x;
        return t;
    }

    // #V(k) = sum_{d | k} d a_d.
    long long fixed_points(int k) const {
        if (k > cap()) throw std::domain_error("fixed-point index beyond cap");
        long long s = 0;
        for (int d : divisors(k)) s += static_cast<long long>(d) * count(d);
        return s;
    }

    // [V] in ghost coordinates: ghost_k = #V(k).
    Witt class_witt(int prec) const {
        if (prec > cap()) throw std::domain_error("ZSet cap too small for requested precision");
        std::vector<Scalar> g(static_cast<std::size_t>(prec));
        for (int k = 1; k <= prec; ++k) g[static_cast<std::size_t>(k) - 1] = Scalar(fixed_points(k));
        return Witt(std::move(g));
    }

    // V_k: each degree-d orbit splits into gcd(d,k) orbits of degree d/gcd(d,k).
    ZSet extend(int k) const {
        std::vector<long long> a(a_.size(), 0);
        for (int d = 1; d <= cap(); ++d) {
            if (!count(d)) continue;
            int g = std::gcd(d, k);
            a[static_cast<std::size_t>(d / g) - 1] += count(d) * g;
        }
        return ZSet(std::move(a), finite_);
    }

    // Orbit of degree x times orbit of degree y: gcd(x,y) orbits of lcm(x,y).
    // For finite inputs every product orbit is kept; for truncated infinite
    // inputs only degrees up to the smaller cap are exact.
    friend ZSet product(const ZSet& u, const ZSet& v) {
        int cap = std::min(u.cap(), v.cap());
        if (u.finite_ && v.finite_) {
            cap = 1;
            for (int x = 1; x <= u.cap(); ++x)
                if (u.count(x))
                    for (int y = 1; y <= v.cap(); ++y)
                        if (v.count(y)) cap = std::max(cap, static_cast<int>(std::lcm(x, y)));
        }
        std::vector<long long> a(static_cast<std::size_t>(cap), 0);
        for (int x = 1; x <= u.cap(); ++x) {
            if (!u.count(x)) continue;
            for (int y = 1; y <= v.cap(); ++y) {
                if (!v.count(y)) continue;
                long long l = std::lcm(x, y);
                if (l <= cap) a[static_cast<std::size_t>(l) - 1] += u.count(x) * v.count(y) * std::gcd(x, y);
            }
        }
        return ZSet(std::move(a), u.finite_ && v.finite_);
    }

    friend bool operator==(const ZSet& u, const ZSet& v) {
        if (u.finite_ != v.finite_) return false;
        int n = std::max(u.cap(), v.cap());
        for (int d = 1; d <= n; ++d) {
            long long x = d <= u.cap() ? u.count(d) : 0;
            long long y = d <= v.cap() ? v.count(d) : 0;
            if (x != y) return false;
        }
        return true;
    }

    std::string str() const {
        std::string s = "[";
        for (int d = 1; d <= cap(); ++d) {
            if (d > 1) s += ",";
            s += std::to_string(count(d));
        }
        return s + (finite_ ? "]" : "]...");
    }

private:
    std::vector<long long> a_;
    bool finite_ = true;
};

// Finite admissible Z-set with an explicit orbit list; the representation
// used wherever functions need to take per-orbit values.
class FiniteZSet {
public:
    FiniteZSet() = default;
    explicit FiniteZSet(std::vector<int> degs) : deg_(std::move(degs)) {}

    int orbits() const { return static_cast<int>(deg_.size()); }
    int deg(int i) const { return deg_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& degrees() const { return deg_; }

    ZSet to_zset(int cap = 0) const {
        int m = cap;
        for (int d : deg_) m = std::max(m, d);
        if (m == 0) m = 1;
        std::vector<long long> a(static_cast<std::size_t>(m), 0);
        for (int d : deg_) a[static_cast<std::size_t>(d) - 1]++;
        return ZSet(std::move(a), true);
    }

    Witt class_witt(int prec) const {
        std::vector<Scalar> g(static_cast<std::size_t>(prec), Scalar(0));
        for (int k = 1; k <= prec; ++k) {
            long long s = 0;
            for (int d : deg_)
                if (k % d == 0) s += d;
            g[static_cast<std::size_t>(k) - 1] = Scalar(s);
        }
        return Witt(std::move(g));
    }

    long long fixed_points(int k) const {
        long long s = 0;
        for (int d : deg_)
            if (k % d == 0) s += d;
        return s;
    }

    // Orbit-level extension: orbit i of degree d becomes gcd(d,k) orbits of
    // degree d/gcd(d,k); parent records where each new orbit came from.
    struct Extension;
    Extension extend(int k) const;

private:
    std::vector<int> deg_;
};

struct FiniteZSet::Extension {
    FiniteZSet set;
    std::vector<int> parent;
};

inline FiniteZSet::Extension FiniteZSet::extend(int k) const {
    Extension e;
    std::vector<int> nd;
    for (int i = 0; i < orbits(); ++i) {
        int d = deg(i), g = std::gcd(d, k);
        for (int j = 0; j < g; ++j) {
            nd.push_back(d / g);
            e.parent.push_back(i);
        }
    }
    e.set = FiniteZSet(std::move(nd));
    return e;
}

// Map of admissible Z-sets with explicit fibers: one base orbit per entry,
// fiber degrees measured in the fiber's own admissible structure (the action
// multiplied by the base orbit degree).
class ZMap {
public:
    ZMap() = default;
    ZMap(std::vector<int> base_degs, std::vector<FiniteZSet> fibers)
        : base_(std::move(base_degs)), fiber_(std::move(fibers)) {
        if (base_.degrees().size() != fiber_.size()) throw std::invalid_argument("base/fiber mismatch");
    }
    ZMap(FiniteZSet base, std::vector<FiniteZSet> fibers)
        : base_(std::move(base)), fiber_(std::move(fibers)) {
        if (static_cast<std::size_t>(base_.orbits()) != fiber_.size())
            throw std::invalid_argument("base/fiber mismatch");
    }

    // Projection V x B -> B: the fiber over a degree-k orbit is V_k.
    static ZMap projection(const FiniteZSet& v, const FiniteZSet& b) {
        std::vector<FiniteZSet> fibers;
        for (int i = 0; i < b.orbits(); ++i) fibers.push_back(v.extend(b.deg(i)).set);
        return ZMap(b, std::move(fibers));
    }

    static ZMap identity(const FiniteZSet& b) {
        std::vector<FiniteZSet> fibers(static_cast<std::size_t>(b.orbits()), FiniteZSet({1}));
        return ZMap(b, std::move(fibers));
    }

    const FiniteZSet& base() const { return base_; }
    int base_orbits() const { return base_.orbits(); }
    int base_deg(int i) const { return base_.deg(i); }
    const FiniteZSet& fiber(int i) const {
        if (i < 0 || i >= base_orbits()) throw std::domain_error("unknown base orbit");
        return fiber_[static_cast<std::size_t>(i)];
    }

    bool has_section() const {
        for (const auto& f : fiber_)
            if (f.orbits() == 0) return false;
        return true;
    }

    // Total space: fiber orbit of degree e over base orbit of degree b is a
    // V-orbit of degree b*e.
    FiniteZSet total_space() const {
        std::vector<int> degs;
        for (int i = 0; i < base_orbits(); ++i)
            for (int j = 0; j < fiber_[static_cast<std::size_t>(i)].orbits(); ++j)
                degs.push_back(base_.deg(i) * fiber_[static_cast<std::size_t>(i)].deg(j));
        return FiniteZSet(std::move(degs));
    }

    // [V/B] evaluated at base orbit i.
    Witt fiber_class(int i, int prec) const { return fiber(i).class_witt(prec); }

    // Extension of scalars: base orbits split, each new base orbit of degree
    // d/g carries the fiber extended by k/g (the total action is multiplied
    // by k; deg(b) g /(d) ... the fiber action picks up the factor k/g).
    ZMap extend(int k) const {
        auto ext = base_.extend(k);
        std::vector<FiniteZSet> fibers;
        for (std::size_t j = 0; j < ext.parent.size(); ++j) {
            int i = ext.parent[j];
            int d = base_.deg(i);
            int g = std::gcd(d, k);
            fibers.push_back(fiber_[static_cast<std::size_t>(i)].extend(k / g).set);
        }
        return ZMap(ext.set, std::move(fibers));
    }

private:
    FiniteZSet base_;
    std::vector<FiniteZSet> fiber_;
};

// Cartesian square
//     V1 --phi--> V2
//      |           |
//     B1 --psi--> B2
// with psi given orbitwise: B1 orbit j maps onto B2 orbit target[j] with
// degree ratio mult[j]. V1 = V2 x_{B2} B1; its fiber over b1 is the fiber
// over psi(b1) with the action multiplied by the degree ratio.
struct CartesianSquare {
    ZMap m2;
    std::vector<int> target;
    std::vector<int> mult;
    ZMap m1;

    CartesianSquare(ZMap v2b2, std::vector<int> tgt, std::vector<int> ratios)
        : m2(std::move(v2b2)), target(std::move(tgt)), mult(std::move(ratios)) {
        if (target.size() != mult.size()) throw std::invalid_argument("cartesian square shape mismatch");
        std::vector<int> b1;
        std::vector<FiniteZSet> fibers;
        for (std::size_t j = 0; j < target.size(); ++j) {
            int i = target[j];
            b1.push_back(mult[j] * m2.base_deg(i));
            fibers.push_back(m2.fiber(i).extend(mult[j]).set);
        }
        m1 = ZMap(FiniteZSet(std::move(b1)), std::move(fibers));
    }
};

} // namespace motivic
