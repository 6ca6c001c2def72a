#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "motivic/numtheory.hpp"
#include "motivic/partition.hpp"
#include "motivic/witt.hpp"

namespace motivic {

// ---------------------------------------------------------------------------
// Transition tables between the p, h, e, m bases, one square matrix per
// degree. Rows/columns are indexed by partitions_of(n) order. Entries are
// exact rationals; inverses are computed by Gaussian elimination.
// ---------------------------------------------------------------------------
class BasisTables {
public:
    using Mat = std::vector<std::vector<Rat>>;

    static const BasisTables& deg(int n) {
        static std::mutex mu;
        static std::vector<std::unique_ptr<BasisTables>> cache;
        std::lock_guard<std::mutex> lock(mu);
        if (static_cast<int>(cache.size()) <= n) cache.resize(static_cast<std::size_t>(n) + 1);
        if (!cache[static_cast<std::size_t>(n)])
            cache[static_cast<std::size_t>(n)] = std::unique_ptr<BasisTables>(new BasisTables(n));
        return *cache[static_cast<std::size_t>(n)];
    }

    const std::vector<Partition>& parts() const { return parts_; }
    int index(const Partition& t) const { return idx_.at(t); }
    int count() const { return static_cast<int>(parts_.size()); }

    // Expansions: row i of X2p gives basis element X_{tau_i} written in the
    // p-basis (and p2m writes p_{tau_i} in the m-basis).
    const Mat& p2m() const { return p2m_; }
    const Mat& h2p() const { return h2p_; }
    const Mat& e2p() const { return e2p_; }

    // Coefficient-vector maps: if f has p-coefficients c, then its m-basis
    // coefficients are p2m^T c, etc. Stored pre-transposed/inverted.
    const Mat& coef_p_to_m() const { return cp2m_; }
    const Mat& coef_m_to_p() const { return cm2p_; }
    const Mat& coef_p_to_h() const { return cp2h_; }
    const Mat& coef_h_to_p() const { return ch2p_; }
    const Mat& coef_p_to_e() const { return cp2e_; }
    const Mat& coef_e_to_p() const { return ce2p_; }

private:
    explicit BasisTables(int n) : n_(n) {
        parts_ = partitions_of(n);
        for (std::size_t i = 0; i < parts_.size(); ++i) idx_[parts_[i]] = static_cast<int>(i);
        int m = count();
        p2m_.assign(m, std::vector<Rat>(m, Rat(0)));
        for (int i = 0; i < m; ++i) {
            auto row = p_in_m(parts_[static_cast<std::size_t>(i)]);
            for (auto& [mu, c] : row) p2m_[i][idx_.at(mu)] = c;
        }
        h2p_ = assemble_from_parts(/*elementary=*/false);
        e2p_ = assemble_from_parts(/*elementary=*/true);
        cp2m_ = transpose(p2m_);
        cm2p_ = invert(cp2m_);
        ch2p_ = transpose(h2p_);
        cp2h_ = invert(ch2p_);
        ce2p_ = transpose(e2p_);
        cp2e_ = invert(ce2p_);
    }

    // m_lambda * p_r = sum over distinct values v of lambda (and v = 0) of
    // mult_{v+r}(mu) m_mu, where mu replaces one part v by v + r.
    static std::map<Partition, Rat> mul_by_p(const std::map<Partition, Rat>& f, int r) {
        std::map<Partition, Rat> out;
        for (const auto& [lam, c] : f) {
            auto mm = lam.mults();
            mm[0] = 1;
            for (auto [v, cnt] : mm) {
                std::vector<int> parts = lam.parts();
                if (v == 0) {
                    parts.push_back(r);
                } else {
                    auto it = std::find(parts.begin(), parts.end(), v);
                    *it = v + r;
                }
                Partition mu(parts);
                int mult = 0;
                for (int x : mu.parts())
                    if (x == v + r) ++mult;
                out[mu] += c * mult;
            }
        }
        return out;
    }

    static std::map<Partition, Rat> p_in_m(const Partition& tau) {
        std::map<Partition, Rat> f{{Partition{}, Rat(1)}};
        for (int part : tau.parts()) f = mul_by_p(f, part);
        return f;
    }

    // h_n (or e_n) in the p-basis, then extended multiplicatively to h_tau.
    Mat assemble_from_parts(bool elementary) const {
        int m = count();
        Mat out(m, std::vector<Rat>(m, Rat(0)));
        // Single-part expansions for all needed sizes.
        std::vector<std::map<Partition, Rat>> single(static_cast<std::size_t>(n_) + 1);
        for (int k = 0; k <= n_; ++k) {
            std::map<Partition, Rat> f;
            for (const auto& sig : partitions_of(k)) {
                Rat c = 1 / sig.z();
                if (elementary && (k - sig.length()) % 2 == 1) c = -c;
                f[sig] = c;
            }
            single[static_cast<std::size_t>(k)] = f;
        }
        for (int i = 0; i < m; ++i) {
            std::map<Partition, Rat> f{{Partition{}, Rat(1)}};
            for (int part : parts_[static_cast<std::size_t>(i)].parts()) {
                std::map<Partition, Rat> nf;
                for (const auto& [s1, c1] : f)
                    for (const auto& [s2, c2] : single[static_cast<std::size_t>(part)])
                        nf[s1.merged(s2)] += c1 * c2;
                f = nf;
            }
            for (auto& [sig, c] : f) out[i][idx_.at(sig)] = c;
        }
        return out;
    }

    static Mat transpose(const Mat& a) {
        std::size_t m = a.size();
        Mat t(m, std::vector<Rat>(m, Rat(0)));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) t[j][i] = a[i][j];
        return t;
    }

    static Mat invert(Mat a) {
        std::size_t m = a.size();
        Mat inv(m, std::vector<Rat>(m, Rat(0)));
        for (std::size_t i = 0; i < m; ++i) inv[i][i] = 1;
        for (std::size_t col = 0; col < m; ++col) {
            std::size_t piv = col;
            while (piv < m && a[piv][col] == 0) ++piv;
            if (piv == m) throw std::logic_error("singular basis transition matrix");
            std::swap(a[piv], a[col]);
            std::swap(inv[piv], inv[col]);
            Rat d = a[col][col];
            for (std::size_t j = 0; j < m; ++j) {
                a[col][j] /= d;
                inv[col][j] /= d;
            }
            for (std::size_t r = 0; r < m; ++r) {
                if (r == col || a[r][col] == 0) continue;
                Rat f = a[r][col];
                for (std::size_t j = 0; j < m; ++j) {
                    a[r][j] -= f * a[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
        return inv;
    }

    int n_;
    std::vector<Partition> parts_;
    std::map<Partition, int> idx_;
    Mat p2m_, h2p_, e2p_;
    Mat cp2m_, cm2p_, cp2h_, ch2p_, cp2e_, ce2p_;
};

enum class Basis { p, h, e, m };

// ---------------------------------------------------------------------------
// Symmetric-function series truncated at total degree N with Witt-vector
// coefficients, stored on the power-sum basis. Ghost precision follows the
// coefficients (it shrinks under plethysm, per the Witt rules); absent
// entries are exact zeros.
// ---------------------------------------------------------------------------
class SymSeries {
public:
    SymSeries() : n_(0) {}
    explicit SymSeries(int deg_cap) : n_(deg_cap) {}

    static SymSeries one(int deg_cap, int prec) {
        SymSeries s(deg_cap);
        s.set(Partition{}, Witt::unit(prec));
        return s;
    }

    int deg_cap() const { return n_; }
    const std::map<Partition, Witt>& coef() const { return c_; }

    void set(const Partition& t, const Witt& w) {
        if (t.size() > n_) return;
        c_[t] = w;
    }

    void add_to(const Partition& t, const Witt& w) {
        if (t.size() > n_) return;
        auto it = c_.find(t);
        if (it == c_.end())
            c_.emplace(t, w);
        else
            it->second += w;
    }

    const Witt* find(const Partition& t) const {
        auto it = c_.find(t);
        return it == c_.end() ? nullptr : &it->second;
    }

    void erase(const Partition& t) { c_.erase(t); }

    bool has_constant_term() const {
        auto* w = find(Partition{});
        return w != nullptr && !w->is_zero();
    }

    bool constant_term_is_one() const {
        auto* w = find(Partition{});
        if (!w) return false;
        for (int k = 1; k <= w->prec(); ++k)
            if (w->ghost(k) != Scalar(1)) return false;
        return true;
    }

    int max_prec() const {
        int p = 0;
        for (const auto& [t, w] : c_) p = std::max(p, w.prec());
        return p;
    }

    int min_prec() const {
        int p = -1;
        for (const auto& [t, w] : c_)
            if (p < 0 || w.prec() < p) p = w.prec();
        return p;
    }

    friend SymSeries operator+(const SymSeries& a, const SymSeries& b) {
        check_caps(a, b);
        SymSeries r = a;
        for (const auto& [t, w] : b.c_) r.add_to(t, w);
        return r;
    }

    friend SymSeries operator-(const SymSeries& a, const SymSeries& b) {
        check_caps(a, b);
        SymSeries r = a;
        for (const auto& [t, w] : b.c_) r.add_to(t, -w);
        return r;
    }

    friend SymSeries operator*(const SymSeries& a, const SymSeries& b) {
        check_caps(a, b);
        SymSeries r(a.n_);
        for (const auto& [s, x] : a.c_) {
            int rem = a.n_ - s.size();
            for (const auto& [t, y] : b.c_) {
                if (t.size() > rem) continue;
                r.add_to(s.merged(t), x * y);
            }
        }
        return r;
    }

    SymSeries operator-() const {
        SymSeries r(n_);
        for (const auto& [t, w] : c_) r.set(t, -w);
        return r;
    }

    SymSeries& operator+=(const SymSeries& b) { return *this = *this + b; }
    SymSeries& operator-=(const SymSeries& b) { return *this = *this - b; }
    SymSeries& operator*=(const SymSeries& b) { return *this = *this * b; }

    // Multiply every coefficient by a fixed Witt vector.
    SymSeries scaled(const Witt& e) const {
        SymSeries r(n_);
        for (const auto& [t, w] : c_) r.set(t, w * e);
        return r;
    }

    SymSeries scaled(const Scalar& e) const {
        SymSeries r(n_);
        for (const auto& [t, w] : c_) r.set(t, w.scaled(e));
        return r;
    }

    // Variable dilation t_j -> t_j^i: p_tau -> p_{i tau}, coefficients kept.
    SymSeries dilated(int i) const {
        SymSeries r(n_);
        for (const auto& [t, w] : c_) r.set(t.scaled(i), w);
        return r;
    }

    // Equality on common ghost precision (absent coefficients are zero).
    friend bool operator==(const SymSeries& a, const SymSeries& b) {
        if (a.n_ != b.n_) return false;
        for (const auto& [t, w] : a.c_) {
            const Witt* o = b.find(t);
            if (o) {
                if (!w.agrees(*o)) return false;
            } else if (!w.is_zero()) {
                return false;
            }
        }
        for (const auto& [t, w] : b.c_)
            if (!a.find(t) && !w.is_zero()) return false;
        return true;
    }
    friend bool operator!=(const SymSeries& a, const SymSeries& b) { return !(a == b); }

    // Strict agreement of all ghost components up to k for every coefficient
    // present on either side.
    bool agrees(const SymSeries& b, int k) const {
        if (n_ != b.n_) return false;
        for (const auto& [t, w] : c_) {
            const Witt* o = b.find(t);
            if (o) {
                if (!w.agrees(*o, k)) return false;
            } else {
                if (w.prec() < k) return false;
                for (int i = 1; i <= k; ++i)
                    if (!w.ghost(i).is_zero()) return false;
            }
        }
        for (const auto& [t, w] : b.c_) {
            if (find(t)) continue;
            if (w.prec() < k) return false;
            for (int i = 1; i <= k; ++i)
                if (!w.ghost(i).is_zero()) return false;
        }
        return true;
    }

private:
    static void check_caps(const SymSeries& a, const SymSeries& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("symmetric series degree caps differ");
    }

    int n_;
    std::map<Partition, Witt> c_;
};

// Scalar-coefficient symmetric series (ghost slices, classical products).
class ScalarSeries {
public:
    ScalarSeries() : n_(0) {}
    explicit ScalarSeries(int deg_cap) : n_(deg_cap) {}

    static ScalarSeries one(int deg_cap) {
        ScalarSeries s(deg_cap);
        s.set(Partition{}, Scalar(1));
        return s;
    }

    int deg_cap() const { return n_; }
    const std::map<Partition, Scalar>& coef() const { return c_; }

    void set(const Partition& t, const Scalar& v) {
        if (t.size() > n_) return;
        if (v.is_zero())
            c_.erase(t);
        else
            c_[t] = v;
    }

    void add_to(const Partition& t, const Scalar& v) {
        if (t.size() > n_) return;
        auto it = c_.find(t);
        if (it == c_.end()) {
            if (!v.is_zero()) c_.emplace(t, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    Scalar at(const Partition& t) const {
        auto it = c_.find(t);
        return it == c_.end() ? Scalar(0) : it->second;
    }

    friend ScalarSeries operator+(const ScalarSeries& a, const ScalarSeries& b) {
        ScalarSeries r = a;
        for (const auto& [t, v] : b.c_) r.add_to(t, v);
        return r;
    }

    friend ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("scalar series degree caps differ");
        ScalarSeries r(a.n_);
        for (const auto& [s, x] : a.c_) {
            int rem = a.n_ - s.size();
            for (const auto& [t, y] : b.c_) {
                if (t.size() > rem) continue;
                r.add_to(s.merged(t), x * y);
            }
        }
        return r;
    }

    ScalarSeries pow(long e) const {
        ScalarSeries r = one(n_);
        ScalarSeries b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    ScalarSeries dilated(int i) const {
        ScalarSeries r(n_);
        for (const auto& [t, v] : c_) r.set(t.scaled(i), v);
        return r;
    }

    friend bool operator==(const ScalarSeries& a, const ScalarSeries& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }
    friend bool operator!=(const ScalarSeries& a, const ScalarSeries& b) { return !(a == b); }

    // m-basis coefficient table (reports are keyed by monomial symmetric
    // functions).
    std::map<Partition, Scalar> to_m() const {
        std::map<Partition, Scalar> out;
        for (int d = 0; d <= n_; ++d) {
            const auto& bt = BasisTables::deg(d);
            std::vector<Scalar> cp(static_cast<std::size_t>(bt.count()), Scalar(0));
            bool any = false;
            for (int i = 0; i < bt.count(); ++i) {
                auto it = c_.find(bt.parts()[static_cast<std::size_t>(i)]);
                if (it != c_.end()) {
                    cp[static_cast<std::size_t>(i)] = it->second;
                    any = true;
                }
            }
            if (!any) continue;
            const auto& M = bt.coef_p_to_m();
            for (int j = 0; j < bt.count(); ++j) {
                Scalar v(0);
                for (int i = 0; i < bt.count(); ++i)
                    if (M[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] != 0 &&
                        !cp[static_cast<std::size_t>(i)].is_zero())
                        v += Scalar(M[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) *
                             cp[static_cast<std::size_t>(i)];
                if (!v.is_zero()) out[bt.parts()[static_cast<std::size_t>(j)]] = v;
            }
        }
        return out;
    }

private:
    int n_;
    std::map<Partition, Scalar> c_;
};

// ---------------------------------------------------------------------------
// Core operations.
// ---------------------------------------------------------------------------

// p_i acting by plethysm: indices dilate, coefficients pass through the Adams
// operation (their precision shrinks by a factor of i).
inline SymSeries plethysm_p(int i, const SymSeries& f) {
    SymSeries r(f.deg_cap());
    for (const auto& [t, w] : f.coef()) {
        if (t.size() * i > f.deg_cap()) continue;
        r.set(t.scaled(i), w.adams(i));
    }
    return r;
}

// Plethysm a o F for an operator a given by its (finite, rational) p-basis
// expansion. Degree-0 terms of a require F to have no constant term.
inline SymSeries plethysm(const std::map<Partition, Rat>& a, const SymSeries& f) {
    SymSeries out(f.deg_cap());
    int prec = std::max(f.max_prec(), 1);
    for (const auto& [tau, r] : a) {
        if (tau.empty() && f.has_constant_term())
            throw std::domain_error("plethysm of a constant against a series with constant term");
        SymSeries term = SymSeries::one(f.deg_cap(), prec);
        for (int part : tau.parts()) term = term * plethysm_p(part, f);
        out += term.scaled(Scalar(r));
    }
    return out;
}

// Exp_sigma(F) = sum_k h_k o F via the graded Newton recursion
// n (h_n o F) = sum_{k=1}^n (p_k o F)(h_{n-k} o F). Requires F in Fil^1.
inline SymSeries exp_sigma(const SymSeries& f, int unit_prec = -1) {
    if (f.has_constant_term()) throw std::domain_error("Exp_sigma requires zero constant term");
    int n = f.deg_cap();
    if (unit_prec < 0) unit_prec = std::max(f.max_prec(), 1);
    std::vector<SymSeries> P(static_cast<std::size_t>(n) + 1, SymSeries(n));
    for (int k = 1; k <= n; ++k) P[static_cast<std::size_t>(k)] = plethysm_p(k, f);
    std::vector<SymSeries> H(static_cast<std::size_t>(n) + 1, SymSeries(n));
    H[0] = SymSeries::one(n, unit_prec);
    SymSeries out = H[0];
    for (int m = 1; m <= n; ++m) {
        SymSeries acc(n);
        for (int k = 1; k <= m; ++k) acc += P[static_cast<std::size_t>(k)] * H[static_cast<std::size_t>(m - k)];
        H[static_cast<std::size_t>(m)] = acc.scaled(Scalar(1, m));
        out += H[static_cast<std::size_t>(m)];
    }
    return out;
}

// h_n o F for a single n (used by binomial-style assemblies and tests).
inline SymSeries h_plethysm(int n, const SymSeries& f) {
    if (f.has_constant_term()) throw std::domain_error("h_n plethysm requires zero constant term");
    int cap = f.deg_cap();
    std::vector<SymSeries> P(static_cast<std::size_t>(n) + 1, SymSeries(cap));
    for (int k = 1; k <= n; ++k) P[static_cast<std::size_t>(k)] = plethysm_p(k, f);
    std::vector<SymSeries> H(static_cast<std::size_t>(n) + 1, SymSeries(cap));
    H[0] = SymSeries::one(cap, std::max(f.max_prec(), 1));
    for (int m = 1; m <= n; ++m) {
        SymSeries acc(cap);
        for (int k = 1; k <= m; ++k) acc += P[static_cast<std::size_t>(k)] * H[static_cast<std::size_t>(m - k)];
        H[static_cast<std::size_t>(m)] = acc.scaled(Scalar(1, m));
    }
    return H[static_cast<std::size_t>(n)];
}

// Ordinary power-series log of G (constant term 1), truncated.
inline SymSeries series_log(const SymSeries& g) {
    if (!g.constant_term_is_one()) throw std::domain_error("series log requires constant term 1");
    int n = g.deg_cap();
    SymSeries a = g;
    a.erase(Partition{});  // the verified unit cancels exactly
    SymSeries out(n), p = a;
    for (int m = 1; m <= n; ++m) {
        out += p.scaled(Scalar(m % 2 == 1 ? 1 : -1, m));
        if (m < n) p = p * a;
    }
    return out;
}

// Log_sigma as the Moebius inversion of log Exp_sigma(F) = sum_j (p_j o F)/j.
inline SymSeries log_sigma(const SymSeries& g) {
    if (!g.constant_term_is_one()) throw std::domain_error("Log_sigma requires constant term 1");
    int n = g.deg_cap();
    SymSeries L = series_log(g);
    SymSeries out(n);
    for (int j = 1; j <= n; ++j) {
        int mu = mobius(j);
        if (mu == 0) continue;
        out += plethysm_p(j, L).scaled(Scalar(mu, j));
    }
    return out;
}

// Pre-lambda power F^E = Exp_sigma(E Log_sigma F), Witt exponent.
inline SymSeries power(const SymSeries& f, const Witt& e) {
    if (e.is_zero()) return SymSeries::one(f.deg_cap(), e.prec());
    return exp_sigma(log_sigma(f).scaled(e));
}

// Pre-lambda power with series exponent.
inline SymSeries power(const SymSeries& f, const SymSeries& e) {
    return exp_sigma(log_sigma(f) * e);
}

// Coefficient table of F in the requested basis.
inline std::map<Partition, Witt> to_basis(const SymSeries& f, Basis b) {
    std::map<Partition, Witt> out;
    for (int d = 0; d <= f.deg_cap(); ++d) {
        const auto& bt = BasisTables::deg(d);
        std::vector<const Witt*> cp(static_cast<std::size_t>(bt.count()), nullptr);
        bool any = false;
        for (int i = 0; i < bt.count(); ++i) {
            const Witt* w = f.find(bt.parts()[static_cast<std::size_t>(i)]);
            if (w) {
                cp[static_cast<std::size_t>(i)] = w;
                any = true;
            }
        }
        if (!any) continue;
        if (b == Basis::p) {
            for (int i = 0; i < bt.count(); ++i)
                if (cp[static_cast<std::size_t>(i)])
                    out[bt.parts()[static_cast<std::size_t>(i)]] = *cp[static_cast<std::size_t>(i)];
            continue;
        }
        const auto& M = b == Basis::m   ? bt.coef_p_to_m()
                        : b == Basis::h ? bt.coef_p_to_h()
                                        : bt.coef_p_to_e();
        for (int j = 0; j < bt.count(); ++j) {
            bool started = false;
            Witt v;
            for (int i = 0; i < bt.count(); ++i) {
                const Rat& mij = M[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
                if (mij == 0 || !cp[static_cast<std::size_t>(i)]) continue;
                Witt term = cp[static_cast<std::size_t>(i)]->scaled(Scalar(mij));
                v = started ? v + term : term;
                started = true;
            }
            if (started && !v.is_zero()) out[bt.parts()[static_cast<std::size_t>(j)]] = v;
        }
    }
    return out;
}

// Rebuild a series from a coefficient table in the given basis.
inline SymSeries from_basis(const std::map<Partition, Witt>& tab, Basis b, int deg_cap) {
    SymSeries out(deg_cap);
    if (b == Basis::p) {
        for (const auto& [t, w] : tab) out.add_to(t, w);
        return out;
    }
    for (int d = 0; d <= deg_cap; ++d) {
        const auto& bt = BasisTables::deg(d);
        const auto& M = b == Basis::m   ? bt.coef_m_to_p()
                        : b == Basis::h ? bt.coef_h_to_p()
                                        : bt.coef_e_to_p();
        std::vector<const Witt*> cb(static_cast<std::size_t>(bt.count()), nullptr);
        bool any = false;
        for (int i = 0; i < bt.count(); ++i) {
            auto it = tab.find(bt.parts()[static_cast<std::size_t>(i)]);
            if (it != tab.end()) {
                cb[static_cast<std::size_t>(i)] = &it->second;
                any = true;
            }
        }
        if (!any) continue;
        for (int j = 0; j < bt.count(); ++j) {
            bool started = false;
            Witt v;
            for (int i = 0; i < bt.count(); ++i) {
                const Rat& mij = M[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
                if (mij == 0 || !cb[static_cast<std::size_t>(i)]) continue;
                Witt term = cb[static_cast<std::size_t>(i)]->scaled(Scalar(mij));
                v = started ? v + term : term;
                started = true;
            }
            if (started) out.add_to(bt.parts()[static_cast<std::size_t>(j)], v);
        }
    }
    return out;
}

// Coefficient-wise k-th ghost component.
inline ScalarSeries ghost_slice(const SymSeries& f, int k) {
    ScalarSeries out(f.deg_cap());
    for (const auto& [t, w] : f.coef()) {
        if (w.prec() < k) throw std::domain_error("ghost slice beyond coefficient precision");
        out.set(t, w.ghost(k));
    }
    return out;
}

// The negative-MGF substitution: expand in the h-basis and replace h_tau by
// (-1)^{|tau|} e_tau. An involution; sends the MGF of X to the MGF of -X.
inline SymSeries negate_distribution(const SymSeries& f) {
    if (!f.constant_term_is_one())
        throw std::domain_error("negate_distribution requires constant term 1");
    auto h = to_basis(f, Basis::h);
    std::map<Partition, Witt> e;
    for (auto& [t, w] : h) e[t] = t.size() % 2 == 0 ? w : -w;
    return from_basis(e, Basis::e, f.deg_cap());
}

// Scaling the random variable by [z] scales the MGF variables by [z]: each
// degree-n coefficient is multiplied by [z^n].
inline SymSeries scale_variables(const SymSeries& f, const Scalar& z) {
    SymSeries out(f.deg_cap());
    for (const auto& [t, w] : f.coef()) {
        Scalar zn(1);
        for (int i = 0; i < t.size(); ++i) zn *= z;
        out.set(t, w * Witt::teichmuller(zn, w.prec()));
    }
    return out;
}

// sum_{j>=1} h_j (often with indices multiplied by l) as a rational-constant
// series: the workhorse inner factor of the closed-form families.
inline SymSeries sum_h(int deg_cap, int prec, int stride = 1) {
    std::map<Partition, Witt> tab;
    tab[Partition{}] = Witt::unit(prec);
    for (int j = stride; j <= deg_cap; j += stride) tab[Partition{std::vector<int>{j}}] = Witt::unit(prec);
    // h-basis table keyed by one-part partitions h_j.
    SymSeries out(deg_cap);
    for (const auto& [t, w] : tab) {
        if (t.empty()) {
            out.add_to(t, w);
            continue;
        }
        // h_j in p-basis.
        for (const auto& sig : partitions_of(t.size())) {
            out.add_to(sig, w.scaled(Scalar(Rat(1) / sig.z())));
        }
    }
    return out;
}

} // namespace motivic
