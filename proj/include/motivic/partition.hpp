#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "motivic/scalar.hpp"

namespace motivic {

// Weakly decreasing sequence of positive integers; empty partition allowed.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : p_(parts) { normalize(); }
    explicit Partition(std::vector<int> parts) : p_(std::move(parts)) { normalize(); }

    int size() const {
        int s = 0;
        for (int x : p_) s += x;
        return s;
    }
    int length() const { return static_cast<int>(p_.size()); }
    const std::vector<int>& parts() const { return p_; }
    int part(int i) const { return p_[static_cast<std::size_t>(i)]; }
    bool empty() const { return p_.empty(); }

    // Concatenate-and-sort; the p-basis product rule.
    Partition merged(const Partition& o) const {
        std::vector<int> v = p_;
        v.insert(v.end(), o.p_.begin(), o.p_.end());
        return Partition(std::move(v));
    }

    Partition scaled(int i) const {
        std::vector<int> v = p_;
        for (int& x : v) x *= i;
        return Partition(std::move(v));
    }

    // Multiplicity map value -> count.
    std::map<int, int> mults() const {
        std::map<int, int> m;
        for (int x : p_) m[x]++;
        return m;
    }

    // z_tau = prod_i i^{m_i} m_i!
    Rat z() const {
        Rat z(1);
        for (auto [v, m] : mults()) {
            for (int j = 0; j < m; ++j) z *= v;
            for (int j = 2; j <= m; ++j) z *= j;
        }
        return z;
    }

    std::string str() const {
        if (p_.empty()) return "()";
        std::string s;
        for (std::size_t i = 0; i < p_.size(); ++i) {
            if (i) s += "+";
            s += std::to_string(p_[i]);
        }
        return s;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.p_ == b.p_; }
    friend bool operator!=(const Partition& a, const Partition& b) { return a.p_ != b.p_; }
    // Order by size, then reverse-lexicographic on parts: a stable total order
    // grouping partitions by degree.
    friend bool operator<(const Partition& a, const Partition& b) {
        int sa = a.size(), sb = b.size();
        if (sa != sb) return sa < sb;
        return a.p_ < b.p_;
    }

private:
    void normalize() { std::sort(p_.begin(), p_.end(), std::greater<int>()); }
    std::vector<int> p_;
};

inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem, int maxpart) -> void {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int k = std::min(rem, maxpart); k >= 1; --k) {
            cur.push_back(k);
            self(self, rem - k, k);
            cur.pop_back();
        }
    };
    rec(rec, n, n == 0 ? 1 : n);
    return out;
}

inline std::vector<Partition> partitions_up_to(int n) {
    std::vector<Partition> out;
    for (int d = 0; d <= n; ++d) {
        auto p = partitions_of(d);
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

} // namespace motivic
