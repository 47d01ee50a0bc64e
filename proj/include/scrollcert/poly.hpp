#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "scrollcert/fp.hpp"
#include "scrollcert/rat.hpp"

namespace scrollcert {

using Exponents = std::vector<int>;

// Sparse multivariate polynomial with exact coefficients. Term map is
// ordered so every iteration (printing, dense extraction) is deterministic.
template <class T>
class MultiPoly {
public:
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly monomial(std::size_t nvars, const Exponents& e,
                              const T& c) {
        MultiPoly p(nvars);
        p.add_term(e, c);
        return p;
    }

    static MultiPoly variable(std::size_t nvars, std::size_t i, const T& one) {
        Exponents e(nvars, 0);
        e[i] = 1;
        return monomial(nvars, e, one);
    }

    std::size_t nvars() const { return nvars_; }
    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, T>& terms() const { return terms_; }

    void add_term(const Exponents& e, const T& c) {
        if (e.size() != nvars_)
            throw std::invalid_argument("MultiPoly: exponent arity mismatch");
        if (is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d; // -1 for the zero polynomial
    }

    bool is_homogeneous() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            if (d < 0) d = s;
            else if (s != d) return false;
        }
        return true;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.nvars_);
                for (std::size_t i = 0; i < a.nvars_; ++i)
                    e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    MultiPoly scaled(const T& c) const {
        MultiPoly r(nvars_);
        if (is_zero(c)) return r;
        for (const auto& [e, v] : terms_) r.add_term(e, v * c);
        return r;
    }

    T eval(const std::vector<T>& x) const {
        if (x.size() != nvars_)
            throw std::invalid_argument("MultiPoly: eval arity mismatch");
        if (terms_.empty())
            throw std::domain_error("MultiPoly: eval of zero needs a domain");
        T acc = zero_like(terms_.begin()->second);
        for (const auto& [e, c] : terms_) {
            T t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            acc += t;
        }
        return acc;
    }

    // eval that tolerates the zero polynomial by taking a domain sample
    T eval_or(const std::vector<T>& x, const T& zero) const {
        return terms_.empty() ? zero : eval(x);
    }

    MultiPoly derivative(std::size_t var) const {
        MultiPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents d = e;
            d[var] -= 1;
            T coeff = c;
            for (int k = 1; k < e[var]; ++k) coeff += c;
            r.add_term(d, coeff);
        }
        return r;
    }

    // Substitute forms[i] for variable i. All forms must be homogeneous of
    // one common degree so degrees multiply.
    MultiPoly compose(const std::vector<MultiPoly>& forms) const {
        if (forms.size() != nvars_)
            throw std::invalid_argument("compose: arity mismatch");
        int fdeg = -1;
        for (const auto& f : forms) {
            if (!f.is_homogeneous())
                throw std::invalid_argument("compose: inhomogeneous form");
            if (!f.empty()) {
                if (fdeg < 0) fdeg = f.degree();
                else if (f.degree() != fdeg)
                    throw std::invalid_argument("compose: mixed form degrees");
            }
        }
        const std::size_t out_vars = forms.empty() ? 0 : forms[0].nvars();
        MultiPoly r(out_vars);
        // memoized powers per substituted variable
        std::vector<std::vector<MultiPoly>> pw(nvars_);
        for (const auto& [e, c] : terms_) {
            if (factor_killed(forms, e)) continue;
            MultiPoly t(out_vars);
            bool started = false;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                const MultiPoly& fi = power(forms, pw, i, e[i]);
                t = started ? t * fi : fi;
                started = true;
            }
            if (!started)
                r.add_term(Exponents(out_vars, 0), c); // constant term
            else
                r = r + t.scaled(c);
        }
        return r;
    }

private:
    static bool factor_killed(const std::vector<MultiPoly>& forms,
                              const Exponents& e) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0 && forms[i].empty()) return true;
        return false;
    }
    static const MultiPoly& power(const std::vector<MultiPoly>& forms,
                                  std::vector<std::vector<MultiPoly>>& pw,
                                  std::size_t i, int e) {
        auto& cache = pw[i];
        if (cache.empty()) cache.push_back(forms[i]); // exponent 1
        while (static_cast<int>(cache.size()) < e)
            cache.push_back(cache.back() * forms[i]);
        return cache[e - 1];
    }
    void check_arity(const MultiPoly& o) const {
        if (nvars_ != o.nvars_)
            throw std::invalid_argument("MultiPoly: variable count mismatch");
    }

    std::size_t nvars_;
    std::map<Exponents, T> terms_;
};

// Canonical list of exponent vectors of total degree d in n variables,
// lexicographic with the first variable's exponent descending.
inline std::vector<Exponents> monomials_of_degree(std::size_t nvars, int d) {
    std::vector<Exponents> out;
    Exponents cur(nvars, 0);
    struct Rec {
        std::size_t nvars;
        std::vector<Exponents>& out;
        Exponents& cur;
        void go(std::size_t i, int rem) {
            if (i + 1 == nvars) {
                cur[i] = rem;
                out.push_back(cur);
                return;
            }
            for (int e = rem; e >= 0; --e) {
                cur[i] = e;
                go(i + 1, rem - e);
            }
        }
    } rec{nvars, out, cur};
    if (nvars > 0 && d >= 0) rec.go(0, d);
    return out;
}

// Coefficients of a homogeneous polynomial on the canonical degree-d basis.
template <class T>
std::vector<T> dense_coefficients(const MultiPoly<T>& p, int d, const T& zero) {
    auto basis = monomials_of_degree(p.nvars(), d);
    std::vector<T> out(basis.size(), zero);
    std::size_t found = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto it = p.terms().find(basis[i]);
        if (it != p.terms().end()) {
            out[i] = it->second;
            ++found;
        }
    }
    if (found != p.term_count())
        throw std::invalid_argument("dense_coefficients: degree mismatch");
    return out;
}

} // namespace scrollcert
