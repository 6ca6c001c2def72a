#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "motivic/scalar.hpp"

namespace motivic {

// Truncated big Witt vector of W(C), stored in ghost coordinates g_1..g_K.
// Ring operations are componentwise on ghosts; the series presentation
// 1 + c_1 t + ... of the additive group is a codec (from_series/to_series).
// Precision K is tracked per value: binary operations truncate to the shorter
// operand, Adams operations shrink it, substitution t -> t^i extends it.
class Witt {
public:
    Witt() = default;
    explicit Witt(std::vector<Scalar> ghost) : g_(std::move(ghost)) {}

    static Witt zero(int prec) { return Witt(std::vector<Scalar>(static_cast<std::size_t>(prec))); }

    static Witt unit(int prec) {
        std::vector<Scalar> g(static_cast<std::size_t>(prec), Scalar(1));
        return Witt(std::move(g));
    }

    // [z]: the class 1/(1-zt), ghost (z, z^2, ...).
    static Witt teichmuller(const Scalar& z, int prec) {
        std::vector<Scalar> g(static_cast<std::size_t>(prec));
        Scalar p(1);
        for (int k = 0; k < prec; ++k) {
            p *= z;
            g[static_cast<std::size_t>(k)] = p;
        }
        return Witt(std::move(g));
    }

    // Diagonal image of a rational scalar (the Q-algebra structure of W).
    static Witt constant(const Scalar& r, int prec) {
        return Witt(std::vector<Scalar>(static_cast<std::size_t>(prec), r));
    }

    int prec() const { return static_cast<int>(g_.size()); }

    const Scalar& ghost(int k) const {
        if (k < 1 || k > prec()) throw std::domain_error("ghost index beyond precision");
        return g_[static_cast<std::size_t>(k) - 1];
    }

    bool is_zero() const {
        for (const auto& x : g_)
            if (!x.is_zero()) return false;
        return true;
    }

    Witt truncated(int prec) const {
        if (prec > this->prec()) throw std::domain_error("cannot extend Witt precision");
        return Witt(std::vector<Scalar>(g_.begin(), g_.begin() + prec));
    }

    friend Witt operator+(const Witt& a, const Witt& b) {
        int n = std::min(a.prec(), b.prec());
        std::vector<Scalar> g(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) g[i] = a.g_[i] + b.g_[i];
        return Witt(std::move(g));
    }

    friend Witt operator-(const Witt& a, const Witt& b) {
        int n = std::min(a.prec(), b.prec());
        std::vector<Scalar> g(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) g[i] = a.g_[i] - b.g_[i];
        return Witt(std::move(g));
    }

    friend Witt operator*(const Witt& a, const Witt& b) {
        int n = std::min(a.prec(), b.prec());
        std::vector<Scalar> g(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) g[i] = a.g_[i] * b.g_[i];
        return Witt(std::move(g));
    }

    Witt operator-() const {
        std::vector<Scalar> g(g_.size());
        for (std::size_t i = 0; i < g_.size(); ++i) g[i] = -g_[i];
        return Witt(std::move(g));
    }

    Witt& operator+=(const Witt& b) { return *this = *this + b; }
    Witt& operator-=(const Witt& b) { return *this = *this - b; }
    Witt& operator*=(const Witt& b) { return *this = *this * b; }

    Witt inverse() const {
        std::vector<Scalar> g(g_.size());
        for (std::size_t i = 0; i < g_.size(); ++i) {
            if (g_[i].is_zero()) throw std::domain_error("Witt vector with zero ghost component is not invertible");
            g[i] = g_[i].inverse();
        }
        return Witt(std::move(g));
    }

    Witt scaled(const Scalar& r) const {
        std::vector<Scalar> g(g_.size());
        for (std::size_t i = 0; i < g_.size(); ++i) g[i] = g_[i] * r;
        return Witt(std::move(g));
    }

    friend bool operator==(const Witt& a, const Witt& b) {
        if (a.prec() != b.prec()) return false;
        for (int i = 0; i < a.prec(); ++i)
            if (a.g_[i] != b.g_[i]) return false;
        return true;
    }
    friend bool operator!=(const Witt& a, const Witt& b) { return !(a == b); }

    // True wherever both are defined.
    bool agrees(const Witt& b, int upto = -1) const {
        int n = std::min(prec(), b.prec());
        if (upto >= 0) {
            if (n < upto) return false;
            n = upto;
        }
        for (int i = 0; i < n; ++i)
            if (g_[i] != b.g_[i]) return false;
        return true;
    }

    // Adams operation p_i: ghost (g_i, g_2i, ...), precision floor(K/i).
    Witt adams(int i) const {
        if (i < 1) throw std::invalid_argument("Adams index must be positive");
        int n = prec() / i;
        if (n == 0) throw std::domain_error("insufficient Witt precision for Adams operation");
        std::vector<Scalar> g(static_cast<std::size_t>(n));
        for (int k = 1; k <= n; ++k) g[k - 1] = ghost(i * k);
        return Witt(std::move(g));
    }

    // Substitution t -> t^i on the series presentation: ghost_k = i * g_{k/i}
    // when i | k, else 0. Exact for all k <= i*K, so precision grows.
    Witt substitute(int i) const {
        if (i < 1) throw std::invalid_argument("substitution index must be positive");
        int n = prec() * i;
        std::vector<Scalar> g(static_cast<std::size_t>(n));
        for (int k = 1; k <= n; ++k)
            g[k - 1] = (k % i == 0) ? Scalar(static_cast<long>(i)) * ghost(k / i) : Scalar(0);
        return Witt(std::move(g));
    }

    // Series 1 + c_1 t + ... -> ghosts via g_k = k c_k - sum_{i<k} c_i g_{k-i}.
    static Witt from_series(const std::vector<Scalar>& c) {
        int n = static_cast<int>(c.size());
        if (n < 1) throw std::invalid_argument("series needs at least one coefficient");
        std::vector<Scalar> g(static_cast<std::size_t>(n));
        for (int k = 1; k <= n; ++k) {
            Scalar s = Scalar(static_cast<long>(k)) * c[k - 1];
            for (int i = 1; i < k; ++i) s -= c[i - 1] * g[k - i - 1];
            g[k - 1] = s;
        }
        return Witt(std::move(g));
    }

    // Inverse of from_series: c_k = (g_k + sum_{i<k} c_i g_{k-i}) / k.
    std::vector<Scalar> to_series() const {
        int n = prec();
        std::vector<Scalar> c(static_cast<std::size_t>(n));
        for (int k = 1; k <= n; ++k) {
            Scalar s = ghost(k);
            for (int i = 1; i < k; ++i) s += c[i - 1] * ghost(k - i);
            c[k - 1] = s / Scalar(static_cast<long>(k));
        }
        return c;
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < prec(); ++i) {
            if (i) s += ",";
            s += g_[static_cast<std::size_t>(i)].str();
        }
        return s + ")";
    }

private:
    std::vector<Scalar> g_;
};

} // namespace motivic
