#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "scrollcert/fp.hpp"
#include "scrollcert/rat.hpp"

namespace scrollcert {

// Binary forms (homogeneous in (s,t)) as coefficient vectors:
// f = sum_d c[d] * s^(D-d) * t^d with D = c.size()-1. An all-zero vector is
// the zero form of that formal degree.

template <class T>
bool bf_is_zero(const std::vector<T>& c) {
    for (const auto& x : c)
        if (!is_zero(x)) return false;
    return true;
}

template <class T>
T bf_eval(const std::vector<T>& c, const T& s, const T& t) {
    if (c.empty()) throw std::invalid_argument("bf_eval: empty form");
    const std::size_t D = c.size() - 1;
    std::vector<T> tpow;
    tpow.reserve(D + 1);
    T tp = one_like(c[0]);
    for (std::size_t d = 0; d <= D; ++d) {
        tpow.push_back(tp);
        tp *= t;
    }
    T acc = zero_like(c[0]);
    T sp = one_like(c[0]);
    for (std::size_t d = D + 1; d-- > 0;) {
        acc += c[d] * tpow[d] * sp;
        sp *= s;
    }
    return acc;
}

template <class T>
std::vector<T> bf_mul(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("bf_mul: empty form");
    const T zero = zero_like(a[0]);
    std::vector<T> r(a.size() + b.size() - 1, zero);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// --- univariate helpers (dense, index = power of t) ---

template <class T>
int uni_degree(const std::vector<T>& u) {
    for (std::size_t i = u.size(); i-- > 0;)
        if (!is_zero(u[i])) return static_cast<int>(i);
    return -1;
}

template <class T>
std::vector<T> uni_trim(const std::vector<T>& u) {
    int d = uni_degree(u);
    if (d < 0) return {};
    return std::vector<T>(u.begin(), u.begin() + d + 1);
}

template <class T>
std::vector<T> uni_monic(std::vector<T> u) {
    int d = uni_degree(u);
    if (d < 0) return u;
    T inv = one_like(u[d]) / u[d];
    for (auto& x : u) x *= inv;
    return u;
}

// remainder of a by b (b nonzero)
template <class T>
std::vector<T> uni_rem(std::vector<T> a, const std::vector<T>& b) {
    int db = uni_degree(b);
    if (db < 0) throw std::invalid_argument("uni_rem: zero divisor");
    T lead_inv = one_like(b[db]) / b[db];
    int da = uni_degree(a);
    while (da >= db) {
        T f = a[da] * lead_inv;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
        da = uni_degree(a);
    }
    return uni_trim(a);
}

// exact quotient a / b; throws if the division is not exact
template <class T>
std::vector<T> uni_divexact(std::vector<T> a, const std::vector<T>& b) {
    int db = uni_degree(b);
    if (db < 0) throw std::invalid_argument("uni_divexact: zero divisor");
    int da = uni_degree(a);
    if (da < 0) return {};
    if (da < db) throw std::domain_error("uni_divexact: not divisible");
    const T zero = zero_like(b[db]);
    T lead_inv = one_like(b[db]) / b[db];
    std::vector<T> q(da - db + 1, zero);
    while (da >= db) {
        T f = a[da] * lead_inv;
        q[da - db] = f;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
        da = uni_degree(a);
    }
    if (da >= 0) throw std::domain_error("uni_divexact: not divisible");
    return q;
}

template <class T>
std::vector<T> uni_gcd(std::vector<T> a, std::vector<T> b) {
    a = uni_trim(a);
    b = uni_trim(b);
    while (uni_degree(b) >= 0) {
        std::vector<T> r = uni_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return uni_monic(a);
}

// --- binary-form gcd via s-valuation + univariate part ---

// s-adic valuation: a form of formal degree D has s-valuation D - deg_t(u)
// where u is the dehomogenization at s=1.
template <class T>
int bf_s_valuation(const std::vector<T>& c) {
    int du = uni_degree(c);
    if (du < 0) throw std::invalid_argument("bf_s_valuation: zero form");
    return static_cast<int>(c.size()) - 1 - du;
}

// gcd of two binary forms, monic-normalized; zero arguments pass through.
template <class T>
std::vector<T> bf_gcd(const std::vector<T>& a, const std::vector<T>& b) {
    if (bf_is_zero(a)) return b;
    if (bf_is_zero(b)) return a;
    int vs = std::min(bf_s_valuation(a), bf_s_valuation(b));
    std::vector<T> g = uni_gcd(a, b); // dehomogenized gcd, monic
    // rehomogenize: formal degree = deg(g) + vs
    const T zero = zero_like(a[uni_degree(a)]);
    std::vector<T> out = g;
    for (int i = 0; i < vs; ++i) out.push_back(zero);
    if (out.empty()) out.push_back(one_like(a[uni_degree(a)]));
    return out;
}

// exact division of binary forms (content removal)
template <class T>
std::vector<T> bf_divexact(const std::vector<T>& f, const std::vector<T>& g) {
    if (bf_is_zero(g)) throw std::invalid_argument("bf_divexact: zero divisor");
    if (bf_is_zero(f)) {
        if (f.size() < g.size())
            throw std::domain_error("bf_divexact: degree underflow");
        return std::vector<T>(f.size() - g.size() + 1, zero_like(g[0]));
    }
    int vf = bf_s_valuation(f), vg = bf_s_valuation(g);
    if (vf < vg) throw std::domain_error("bf_divexact: s-valuation underflow");
    std::vector<T> q = uni_divexact(f, g);
    const T zero = zero_like(g[uni_degree(g)]);
    std::vector<T> out = q;
    // pad to formal degree deg(f) - deg(g)
    std::size_t want = f.size() - g.size() + 1;
    while (out.size() < want) out.push_back(zero);
    return out;
}

// common content (monic) of a family of binary forms
template <class T>
std::vector<T> bf_content(const std::vector<std::vector<T>>& fam) {
    std::vector<T> g;
    for (const auto& f : fam) {
        if (bf_is_zero(f)) continue;
        g = g.empty() ? f : bf_gcd(g, f);
        if (g.size() == 1) break; // unit content already
    }
    return g;
}

} // namespace scrollcert
