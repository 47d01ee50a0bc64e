#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scrollcert {

// Thrown when two modular values with different moduli meet in one operation.
class DomainMismatch : public std::invalid_argument {
public:
    explicit DomainMismatch(const std::string& what)
        : std::invalid_argument(what) {}
};

// Residue modulo a prime p. The modulus travels with the value: mixing
// moduli is a hard error, never a silent coercion.
class Fp {
public:
    Fp(int64_t v, uint32_t p) : p_(p) {
        if (p < 2) throw std::invalid_argument("Fp: modulus must be >= 2");
        int64_t r = v % static_cast<int64_t>(p);
        if (r < 0) r += p;
        v_ = static_cast<uint32_t>(r);
    }

    uint32_t value() const { return v_; }
    uint32_t modulus() const { return p_; }

    friend Fp operator+(const Fp& a, const Fp& b) {
        a.match(b);
        uint64_t s = static_cast<uint64_t>(a.v_) + b.v_;
        if (s >= a.p_) s -= a.p_;
        return Fp(a.p_, static_cast<uint32_t>(s), 0);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        a.match(b);
        uint64_t s = static_cast<uint64_t>(a.v_) + a.p_ - b.v_;
        if (s >= a.p_) s -= a.p_;
        return Fp(a.p_, static_cast<uint32_t>(s), 0);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        a.match(b);
        uint64_t s = static_cast<uint64_t>(a.v_) * b.v_ % a.p_;
        return Fp(a.p_, static_cast<uint32_t>(s), 0);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
    Fp operator-() const { return Fp(p_, v_ == 0 ? 0 : p_ - v_, 0); }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    Fp inverse() const {
        if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
        // extended Euclid on (v, p)
        int64_t t = 0, nt = 1, r = p_, nr = v_;
        while (nr != 0) {
            int64_t q = r / nr;
            int64_t tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (t < 0) t += p_;
        return Fp(p_, static_cast<uint32_t>(t), 0);
    }

    Fp pow(uint64_t e) const {
        Fp acc(p_, 1 % p_, 0), base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(const Fp& a, const Fp& b) {
        a.match(b);
        return a.v_ == b.v_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

private:
    Fp(uint32_t p, uint32_t v, int) : v_(v), p_(p) {}
    void match(const Fp& o) const {
        if (p_ != o.p_)
            throw DomainMismatch("Fp: mixed moduli " + std::to_string(p_) +
                                 " and " + std::to_string(o.p_));
    }
    uint32_t v_;
    uint32_t p_;
};

inline bool is_zero(const Fp& a) { return a.value() == 0; }
inline Fp zero_like(const Fp& a) { return Fp(0, a.modulus()); }
inline Fp one_like(const Fp& a) { return Fp(1, a.modulus()); }

// Field descriptor: the only place a modulus enters a generic construction.
struct FpField {
    using Scalar = Fp;
    uint32_t p;
    explicit FpField(uint32_t prime) : p(prime) {}
    Fp from_int(int64_t v) const { return Fp(v, p); }
    Fp zero() const { return Fp(0, p); }
    Fp one() const { return Fp(1, p); }
};

// Square root in F_p by direct scan; moduli used in slice work are tiny.
// Returns true and sets r with r*r == a when a is a square.
inline bool sqrt_scan(const Fp& a, Fp& r) {
    uint32_t p = a.modulus();
    for (uint32_t x = 0; x < p; ++x) {
        Fp c(x, p);
        if (c * c == a) { r = c; return true; }
    }
    return false;
}

inline uint32_t least_nonresidue(uint32_t p) {
    for (uint32_t d = 2; d < p; ++d) {
        Fp r(0, p);
        if (!sqrt_scan(Fp(d, p), r)) return d;
    }
    throw std::domain_error("least_nonresidue: field too small");
}

// Quadratic extension F_p(sqrt(d)) with d a fixed non-residue. Carries
// (p, d) on every value, same discipline as Fp.
class Fp2 {
public:
    Fp2(const Fp& a, const Fp& b, uint32_t d) : a_(a), b_(b), d_(d) {
        if (a.modulus() != b.modulus())
            throw DomainMismatch("Fp2: mixed component moduli");
    }

    static Fp2 embed(const Fp& a, uint32_t d) {
        return Fp2(a, zero_like(a), d);
    }

    const Fp& re() const { return a_; }
    const Fp& im() const { return b_; }
    uint32_t modulus() const { return a_.modulus(); }
    uint32_t nonresidue() const { return d_; }

    Fp2 conj() const { return Fp2(a_, -b_, d_); }

    friend Fp2 operator+(const Fp2& x, const Fp2& y) {
        x.match(y);
        return Fp2(x.a_ + y.a_, x.b_ + y.b_, x.d_);
    }
    friend Fp2 operator-(const Fp2& x, const Fp2& y) {
        x.match(y);
        return Fp2(x.a_ - y.a_, x.b_ - y.b_, x.d_);
    }
    friend Fp2 operator*(const Fp2& x, const Fp2& y) {
        x.match(y);
        Fp d(x.d_, x.modulus());
        return Fp2(x.a_ * y.a_ + d * x.b_ * y.b_,
                   x.a_ * y.b_ + x.b_ * y.a_, x.d_);
    }
    friend Fp2 operator/(const Fp2& x, const Fp2& y) { return x * y.inverse(); }
    Fp2 operator-() const { return Fp2(-a_, -b_, d_); }

    Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
    Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
    Fp2& operator*=(const Fp2& o) { return *this = *this * o; }
    Fp2& operator/=(const Fp2& o) { return *this = *this / o; }

    Fp2 inverse() const {
        Fp d(d_, modulus());
        Fp n = a_ * a_ - d * b_ * b_; // norm; zero only for the zero element
        if (is_zero(n)) throw std::domain_error("Fp2: inverse of zero");
        Fp ni = n.inverse();
        return Fp2(a_ * ni, -(b_ * ni), d_);
    }

    friend bool operator==(const Fp2& x, const Fp2& y) {
        x.match(y);
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const Fp2& x, const Fp2& y) { return !(x == y); }

private:
    void match(const Fp2& o) const {
        if (modulus() != o.modulus() || d_ != o.d_)
            throw DomainMismatch("Fp2: mixed extensions");
    }
    Fp a_, b_;
    uint32_t d_;
};

inline bool is_zero(const Fp2& x) { return is_zero(x.re()) && is_zero(x.im()); }
inline Fp2 zero_like(const Fp2& x) {
    return Fp2(zero_like(x.re()), zero_like(x.re()), x.nonresidue());
}
inline Fp2 one_like(const Fp2& x) {
    return Fp2(one_like(x.re()), zero_like(x.re()), x.nonresidue());
}
inline bool is_rational(const Fp2& x) { return is_zero(x.im()); }
inline bool is_rational_coord(const Fp2& x) { return is_rational(x); }
inline Fp rational_part(const Fp2& x) { return x.re(); }

// Uniform "extension" surface over the base field itself, for code paths
// that only sometimes need the quadratic extension.
struct TrivialExtension {
    using Scalar = Fp;
    FpField base;
    Fp embed(const Fp& a) const { return a; }
    Fp sqrt(const Fp& a) const {
        Fp r(0, base.p);
        if (!sqrt_scan(a, r))
            throw std::domain_error("TrivialExtension: not a square");
        return r;
    }
};

inline bool is_rational_coord(const Fp&) { return true; }
inline Fp rational_part(const Fp& a) { return a; }

struct Fp2Field {
    using Scalar = Fp2;
    uint32_t p;
    uint32_t d;
    explicit Fp2Field(uint32_t prime)
        : p(prime), d(least_nonresidue(prime)) {}
    Fp2 from_int(int64_t v) const { return Fp2::embed(Fp(v, p), d); }
    Fp2 zero() const { return from_int(0); }
    Fp2 one() const { return from_int(1); }
    Fp2 embed(const Fp& a) const { return Fp2::embed(a, d); }
    // sqrt of an F_p element inside F_p^2 (always exists)
    Fp2 sqrt(const Fp& a) const {
        Fp r(0, p);
        if (sqrt_scan(a, r)) return embed(r);
        // a = d * (a/d) with a/d a residue
        Fp q = a / Fp(d, p);
        if (!sqrt_scan(q, r))
            throw std::domain_error("Fp2Field: inconsistent residue split");
        return Fp2(Fp(0, p), r, d);
    }
};

} // namespace scrollcert
