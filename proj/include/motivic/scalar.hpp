#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace motivic {

using Rat = mpq_class;

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline double rat_double(const Rat& r) { return r.get_d(); }

namespace detail {

// Dense polynomial helpers over Rat, lowest degree first.
using RPoly = std::vector<Rat>;

inline void rp_trim(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RPoly rp_mul(const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    rp_trim(r);
    return r;
}

// Exact division, remainder must vanish.
inline RPoly rp_divexact(RPoly num, const RPoly& den) {
    if (den.empty()) throw std::domain_error("polynomial division by zero");
    RPoly quo(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
    while (num.size() >= den.size()) {
        Rat c = num.back() / den.back();
        std::size_t shift = num.size() - den.size();
        quo[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        rp_trim(num);
        if (num.empty()) break;
        if (num.size() < den.size()) throw std::domain_error("inexact polynomial division");
    }
    if (!num.empty()) throw std::domain_error("inexact polynomial division");
    return quo;
}

inline RPoly rp_rem(RPoly num, const RPoly& den) {
    while (num.size() >= den.size() && !num.empty()) {
        Rat c = num.back() / den.back();
        std::size_t shift = num.size() - den.size();
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        rp_trim(num);
    }
    return num;
}

} // namespace detail

// Coefficient tower Q(zeta_n, s) with zeta_n a primitive n-th root of unity
// (reduced mod the n-th cyclotomic polynomial) and s^2 = q. The tower is fixed
// per computation run; values from different towers do not mix. When q is a
// perfect square, s is not adjoined and sqrt(q) is the integer root.
class Tower {
public:
    // n = 1 means no root of unity; with_sqrt adjoins s with s^2 = q.
    Tower(int zeta_order, bool with_sqrt, long q)
        : n_(zeta_order), has_s_(with_sqrt), q_(q) {
        if (n_ < 1) throw std::invalid_argument("zeta order must be >= 1");
        if (has_s_) {
            long r = static_cast<long>(std::lround(std::sqrt(static_cast<double>(q))));
            if (r * r == q) throw std::invalid_argument("q is a perfect square; sqrt(q) is rational");
        }
        cyclo_ = cyclotomic(n_);
        deg_ = static_cast<int>(cyclo_.size()) - 1;
        // zeta^k for k in [deg, 2deg-2], reduced.
        detail::RPoly x(static_cast<std::size_t>(deg_) + 1, Rat(0));
        x[deg_] = 1;
        detail::RPoly cur = detail::rp_rem(x, cyclo_);
        for (int k = deg_; k <= 2 * deg_ - 2; ++k) {
            zpow_.push_back(pad(cur));
            detail::RPoly next(cur.size() + 1, Rat(0));
            for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] = cur[i];
            cur = detail::rp_rem(next, cyclo_);
        }
    }

    int zeta_order() const { return n_; }
    bool has_sqrt() const { return has_s_; }
    long q() const { return q_; }
    int zeta_degree() const { return deg_; }
    int dim() const { return deg_ * (has_s_ ? 2 : 1); }

    const std::vector<Rat>& zeta_power(int k) const { return zpow_[k - deg_]; }
    const detail::RPoly& cyclo() const { return cyclo_; }

    static detail::RPoly cyclotomic(int n) {
        // x^n - 1 divided by the product of Phi_d over proper divisors d.
        detail::RPoly num(static_cast<std::size_t>(n) + 1, Rat(0));
        num[0] = -1;
        num[n] = 1;
        for (int d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            num = detail::rp_divexact(num, cyclotomic(d));
        }
        return num;
    }

private:
    std::vector<Rat> pad(const detail::RPoly& p) const {
        std::vector<Rat> r(static_cast<std::size_t>(deg_), Rat(0));
        for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i];
        return r;
    }

    int n_;
    bool has_s_;
    long q_;
    detail::RPoly cyclo_;
    int deg_;
    std::vector<std::vector<Rat>> zpow_;
};

using TowerPtr = std::shared_ptr<const Tower>;

// Exact scalar: a rational, or an element of a Tower written on the basis
// zeta^i * s^j (0 <= i < deg, j in {0,1}). Values are immutable in spirit:
// all operations return fresh scalars.
class Scalar {
public:
    Scalar() : a_(0) {}
    Scalar(long v) : a_(v) {}
    Scalar(const Rat& v) : a_(v) {}
    Scalar(long num, long den) : a_(num, den) { a_.canonicalize(); }

    static Scalar zeta(const TowerPtr& tw) {
        if (tw->zeta_degree() == 0) throw std::domain_error("tower has trivial zeta");
        if (tw->zeta_order() == 1) return Scalar(1);
        if (tw->zeta_order() == 2) return Scalar(-1);
        Scalar r;
        r.tw_ = tw;
        r.ext_.assign(static_cast<std::size_t>(tw->dim()) - 1, Rat(0));
        r.coord(1) = 1;
        return r;
    }

    static Scalar sqrt_q(const TowerPtr& tw) {
        if (!tw->has_sqrt()) throw std::domain_error("tower has no formal sqrt");
        Scalar r;
        r.tw_ = tw;
        r.ext_.assign(static_cast<std::size_t>(tw->dim()) - 1, Rat(0));
        r.coord(tw->zeta_degree()) = 1;
        return r;
    }

    bool is_rational() const { return tw_ == nullptr; }
    const Rat& rational() const {
        if (!is_rational()) throw std::domain_error("scalar is not rational");
        return a_;
    }

    bool is_zero() const {
        if (a_ != 0) return false;
        for (const auto& c : ext_)
            if (c != 0) return false;
        return true;
    }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        check_mix(x, y);
        if (x.a_ != y.a_) return false;
        std::size_t n = std::max(x.ext_.size(), y.ext_.size());
        for (std::size_t i = 0; i < n; ++i) {
            Rat xi = i < x.ext_.size() ? x.ext_[i] : Rat(0);
            Rat yi = i < y.ext_.size() ? y.ext_[i] : Rat(0);
            if (xi != yi) return false;
        }
        return true;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        const TowerPtr& tw = check_mix(x, y);
        Scalar r;
        r.tw_ = tw;
        r.a_ = x.a_ + y.a_;
        r.ext_.resize(std::max(x.ext_.size(), y.ext_.size()), Rat(0));
        for (std::size_t i = 0; i < r.ext_.size(); ++i) {
            if (i < x.ext_.size()) r.ext_[i] += x.ext_[i];
            if (i < y.ext_.size()) r.ext_[i] += y.ext_[i];
        }
        r.normalize();
        return r;
    }

    friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

    Scalar operator-() const {
        Scalar r(*this);
        r.a_ = -r.a_;
        for (auto& c : r.ext_) c = -c;
        return r;
    }

    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        const TowerPtr& tw = check_mix(x, y);
        if (x.is_rational() && y.is_rational()) return Scalar(Rat(x.a_ * y.a_));
        if (x.is_rational()) return y.scaled(x.a_);
        if (y.is_rational()) return x.scaled(y.a_);
        // Multiply on the zeta^i s^j basis, fold s^2 = q, reduce zeta powers.
        int deg = tw->zeta_degree();
        std::vector<Rat> acc(static_cast<std::size_t>(2) * (2 * deg - 1), Rat(0));
        int dim = tw->dim();
        for (int i = 0; i < dim; ++i) {
            Rat xi = x.coord_or_zero(i);
            if (xi == 0) continue;
            for (int j = 0; j < dim; ++j) {
                Rat yj = y.coord_or_zero(j);
                if (yj == 0) continue;
                int zi = i % deg + j % deg;
                int sj = i / deg + j / deg;
                Rat c = xi * yj;
                if (sj == 2) {
                    c *= tw->q();
                    sj = 0;
                }
                acc[static_cast<std::size_t>(sj) * (2 * deg - 1) + zi] += c;
            }
        }
        Scalar r;
        r.tw_ = tw;
        r.ext_.assign(static_cast<std::size_t>(dim) - 1, Rat(0));
        for (int sj = 0; sj < 2; ++sj) {
            for (int zi = 0; zi < 2 * deg - 1; ++zi) {
                const Rat& c = acc[static_cast<std::size_t>(sj) * (2 * deg - 1) + zi];
                if (c == 0) continue;
                if (zi < deg) {
                    r.coord(sj * deg + zi) += c;
                } else {
                    const auto& red = tw->zeta_power(zi);
                    for (int t = 0; t < deg; ++t)
                        if (red[t] != 0) r.coord(sj * deg + t) += c * red[t];
                }
            }
        }
        r.normalize();
        return r;
    }

    friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

    Scalar inverse() const {
        if (is_zero()) throw std::domain_error("division by zero scalar");
        if (is_rational()) return Scalar(Rat(1 / a_));
        int deg = tw_->zeta_degree();
        // Split a + b*s with a, b in Q(zeta).
        detail::RPoly pa(static_cast<std::size_t>(deg), Rat(0)), pb(static_cast<std::size_t>(deg), Rat(0));
        for (int i = 0; i < deg; ++i) pa[i] = coord_or_zero(i);
        if (tw_->has_sqrt())
            for (int i = 0; i < deg; ++i) pb[i] = coord_or_zero(deg + i);
        detail::rp_trim(pa);
        detail::rp_trim(pb);
        if (pb.empty()) {
            detail::RPoly ia = cyclo_inverse(pa);
            return from_poly(tw_, ia, {});
        }
        // (a + b s) (a - b s) = a^2 - q b^2 in Q(zeta).
        detail::RPoly norm = detail::rp_rem(detail::rp_mul(pa, pa), tw_->cyclo());
        detail::RPoly qb2 = detail::rp_rem(detail::rp_mul(pb, pb), tw_->cyclo());
        for (std::size_t i = 0; i < qb2.size(); ++i) {
            if (norm.size() <= i) norm.resize(i + 1, Rat(0));
            norm[i] -= Rat(tw_->q()) * qb2[i];
        }
        detail::rp_trim(norm);
        if (norm.empty()) throw std::domain_error("non-invertible scalar (zero norm)");
        detail::RPoly in = cyclo_inverse(norm);
        detail::RPoly ra = detail::rp_rem(detail::rp_mul(pa, in), tw_->cyclo());
        detail::RPoly rb = detail::rp_rem(detail::rp_mul(pb, in), tw_->cyclo());
        for (auto& c : rb) c = -c;
        return from_poly(tw_, ra, rb);
    }

    // Embedding zeta -> exp(2 pi i / n), s -> sqrt(q).
    std::complex<double> embed() const {
        std::complex<double> r(rat_double(a_), 0.0);
        if (!tw_) return r;
        int deg = tw_->zeta_degree();
        const double two_pi = 2.0 * std::acos(-1.0);
        std::complex<double> z = std::polar(1.0, two_pi / tw_->zeta_order());
        double sq = std::sqrt(static_cast<double>(tw_->q()));
        for (int i = 1; i < tw_->dim(); ++i) {
            Rat c = coord_or_zero(i);
            if (c == 0) continue;
            std::complex<double> b = std::pow(z, i % deg);
            if (i / deg == 1) b *= sq;
            r += rat_double(c) * b;
        }
        return r;
    }

    double to_double() const {
        auto c = embed();
        return c.real();
    }

    std::string str() const {
        if (is_rational()) return rat_str(a_);
        std::ostringstream os;
        bool first = true;
        auto term = [&](const Rat& c, const std::string& sym) {
            if (c == 0) return;
            if (!first) os << " + ";
            first = false;
            if (sym.empty()) {
                os << rat_str(c);
            } else if (c == 1) {
                os << sym;
            } else {
                os << rat_str(c) << "*" << sym;
            }
        };
        int deg = tw_->zeta_degree();
        term(a_, "");
        for (int i = 1; i < tw_->dim(); ++i) {
            std::string sym;
            int zi = i % deg, sj = i / deg;
            if (zi > 0) sym = "z^" + std::to_string(zi);
            if (sj == 1) sym = sym.empty() ? "s" : sym + "*s";
            term(coord_or_zero(i), sym);
        }
        if (first) os << "0";
        return os.str();
    }

    const TowerPtr& tower() const { return tw_; }

private:
    Rat& coord(int i) { return i == 0 ? a_ : ext_[static_cast<std::size_t>(i) - 1]; }
    Rat coord_or_zero(int i) const {
        if (i == 0) return a_;
        std::size_t k = static_cast<std::size_t>(i) - 1;
        return k < ext_.size() ? ext_[k] : Rat(0);
    }

    void normalize() {
        bool allz = true;
        for (const auto& c : ext_)
            if (c != 0) {
                allz = false;
                break;
            }
        if (allz) {
            ext_.clear();
            tw_.reset();
        }
    }

    static const TowerPtr& check_mix(const Scalar& x, const Scalar& y) {
        if (x.tw_ && y.tw_ && x.tw_ != y.tw_) throw std::domain_error("mixing scalar towers");
        return x.tw_ ? x.tw_ : y.tw_;
    }

    Scalar scaled(const Rat& r) const {
        Scalar s(*this);
        s.a_ *= r;
        for (auto& c : s.ext_) c *= r;
        s.normalize();
        return s;
    }

    static Scalar from_poly(const TowerPtr& tw, const detail::RPoly& pa, const detail::RPoly& pb) {
        Scalar r;
        r.tw_ = tw;
        r.ext_.assign(static_cast<std::size_t>(tw->dim()) - 1, Rat(0));
        for (std::size_t i = 0; i < pa.size(); ++i) r.coord(static_cast<int>(i)) = pa[i];
        for (std::size_t i = 0; i < pb.size(); ++i)
            r.coord(tw->zeta_degree() + static_cast<int>(i)) = pb[i];
        r.normalize();
        return r;
    }

    // Inverse of p modulo the cyclotomic polynomial via extended Euclid.
    detail::RPoly cyclo_inverse(const detail::RPoly& p) const {
        detail::RPoly r0 = tw_->cyclo(), r1 = p;
        detail::RPoly t0, t1{Rat(1)};
        while (!r1.empty()) {
            // r0 = q*r1 + rem
            detail::RPoly q, rem = r0;
            q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, Rat(0));
            while (rem.size() >= r1.size() && !rem.empty()) {
                Rat c = rem.back() / r1.back();
                std::size_t shift = rem.size() - r1.size();
                q[shift] += c;
                for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
                detail::rp_trim(rem);
            }
            detail::RPoly t2 = t0;
            detail::RPoly qt = detail::rp_mul(q, t1);
            if (t2.size() < qt.size()) t2.resize(qt.size(), Rat(0));
            for (std::size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
            detail::rp_trim(t2);
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = t2;
        }
        if (r0.size() != 1) throw std::domain_error("non-invertible element in cyclotomic field");
        detail::RPoly inv = t0;
        for (auto& c : inv) c /= r0[0];
        return detail::rp_rem(inv, tw_->cyclo());
    }

    Rat a_;
    TowerPtr tw_;
    std::vector<Rat> ext_;
};

inline Scalar operator*(long x, const Scalar& y) { return Scalar(x) * y; }
inline Scalar operator+(long x, const Scalar& y) { return Scalar(x) + y; }

} // namespace motivic
