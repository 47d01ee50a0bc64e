#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "scrollcert/fp.hpp"
#include "scrollcert/matrix.hpp"
#include "scrollcert/poly.hpp"
#include "scrollcert/rng.hpp"

namespace scrollcert {

// ---------------------------------------------------------------------------
// Divisor classes a*l - b*E on the blown-up plane; l^2 = 1, E^2 = -1, l.E = 0.
// ---------------------------------------------------------------------------

struct F1Class {
    int64_t a;
    int64_t b;
};

inline int64_t f1_dot(const F1Class& u, const F1Class& v) {
    return u.a * v.a - u.b * v.b;
}

inline int64_t binom(int64_t n, int64_t k) {
    if (k < 0 || k > n) return 0;
    int64_t r = 1;
    for (int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Sections of a*l - b*E: degree-a plane curves with a point of order b.
inline int64_t h0_f1(const F1Class& c) {
    if (c.a == 0 && c.b == -1) return 1; // the exceptional curve itself
    if (!(c.a >= c.b && c.b >= 0))
        throw std::invalid_argument("h0_f1: class outside validity domain");
    return binom(c.a + 2, 2) - binom(c.b + 1, 2);
}

// ---------------------------------------------------------------------------
// The smooth septic scroll in P8: image of the plane under the nine quartic
// monomials with a triple point at (1:0:0).
// ---------------------------------------------------------------------------

inline const std::array<Exponents, 9>& scroll_monomials() {
    static const std::array<Exponents, 9> m = {{
        {1, 3, 0}, {1, 2, 1}, {1, 1, 2}, {1, 0, 3},
        {0, 4, 0}, {0, 3, 1}, {0, 2, 2}, {0, 1, 3}, {0, 0, 4},
    }};
    return m;
}

template <class F>
std::vector<MultiPoly<typename F::Scalar>> scroll_forms(const F& fld) {
    using T = typename F::Scalar;
    std::vector<MultiPoly<T>> out;
    for (const auto& e : scroll_monomials())
        out.push_back(MultiPoly<T>::monomial(3, e, fld.one()));
    return out;
}

// Evaluate the parametrization at a plane point; all-zero output happens
// exactly at the base point (1:0:0).
template <class T>
std::vector<T> scroll_eval(const std::vector<T>& z) {
    if (z.size() != 3)
        throw std::invalid_argument("scroll_eval: expects a plane point");
    const T z0 = z[0], z1 = z[1], z2 = z[2];
    const T z1_2 = z1 * z1, z1_3 = z1_2 * z1;
    const T z2_2 = z2 * z2, z2_3 = z2_2 * z2;
    return {z0 * z1_3,  z0 * z1_2 * z2, z0 * z1 * z2_2, z0 * z2_3,
            z1_3 * z1,  z1_3 * z2,      z1_2 * z2_2,    z1 * z2_3,
            z2_3 * z2};
}

// Row layouts of the two determinantal matrices in the nine coordinates
// (y0..y3 = twisted-cubic block, x0..x4 = quartic block).
inline const std::array<std::array<int, 7>, 2>& scroll_matrix_layout() {
    static const std::array<std::array<int, 7>, 2> rows = {{
        {4, 5, 6, 7, 0, 1, 2},
        {5, 6, 7, 8, 1, 2, 3},
    }};
    return rows;
}

inline const std::array<std::array<int, 5>, 3>& secant_matrix_layout() {
    static const std::array<std::array<int, 5>, 3> rows = {{
        {4, 5, 6, 0, 1},
        {5, 6, 7, 1, 2},
        {6, 7, 8, 2, 3},
    }};
    return rows;
}

enum class DeterminantalSystem { scroll, secant };

template <class T>
bool point_is_zero(const std::vector<T>& v) {
    return vec_is_zero(v);
}

// All 2x2 minors (21, scroll) or 3x3 minors (10, secant) at a point of P8.
template <class T>
std::vector<T> determinantal_residuals(const std::vector<T>& pt,
                                       DeterminantalSystem which) {
    if (pt.size() != 9)
        throw std::invalid_argument("determinantal_residuals: expects P8 point");
    if (point_is_zero(pt))
        throw std::invalid_argument("determinantal_residuals: zero vector");
    std::vector<T> out;
    if (which == DeterminantalSystem::scroll) {
        const auto& L = scroll_matrix_layout();
        for (int i = 0; i < 7; ++i)
            for (int j = i + 1; j < 7; ++j)
                out.push_back(pt[L[0][i]] * pt[L[1][j]] -
                              pt[L[0][j]] * pt[L[1][i]]);
    } else {
        const auto& L = secant_matrix_layout();
        for (int c0 = 0; c0 < 5; ++c0)
            for (int c1 = c0 + 1; c1 < 5; ++c1)
                for (int c2 = c1 + 1; c2 < 5; ++c2) {
                    const T a = pt[L[0][c0]], b = pt[L[0][c1]], c = pt[L[0][c2]];
                    const T d = pt[L[1][c0]], e = pt[L[1][c1]], f = pt[L[1][c2]];
                    const T g = pt[L[2][c0]], h = pt[L[2][c1]], i = pt[L[2][c2]];
                    out.push_back(a * (e * i - f * h) - b * (d * i - f * g) +
                                  c * (d * h - e * g));
                }
    }
    return out;
}

template <class T>
bool all_zero(const std::vector<T>& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

// The ten 3x3 minors as polynomials in the nine ambient variables, plus
// their first partials; used for tangent-space ranks.
template <class F>
struct SecantMinorSystem {
    using T = typename F::Scalar;
    std::vector<MultiPoly<T>> minors;            // 10 cubics
    std::vector<std::vector<MultiPoly<T>>> jac;  // 10 x 9 quadrics

    explicit SecantMinorSystem(const F& fld) {
        const auto& L = secant_matrix_layout();
        auto var = [&](int k) {
            return MultiPoly<T>::variable(9, static_cast<std::size_t>(k),
                                          fld.one());
        };
        for (int c0 = 0; c0 < 5; ++c0)
            for (int c1 = c0 + 1; c1 < 5; ++c1)
                for (int c2 = c1 + 1; c2 < 5; ++c2) {
                    auto a = var(L[0][c0]), b = var(L[0][c1]), c = var(L[0][c2]);
                    auto d = var(L[1][c0]), e = var(L[1][c1]), f = var(L[1][c2]);
                    auto g = var(L[2][c0]), h = var(L[2][c1]), i = var(L[2][c2]);
                    minors.push_back(a * (e * i - f * h) - b * (d * i - f * g) +
                                     c * (d * h - e * g));
                }
        for (const auto& m : minors) {
            std::vector<MultiPoly<T>> row;
            for (std::size_t v = 0; v < 9; ++v) row.push_back(m.derivative(v));
            jac.push_back(std::move(row));
        }
    }

    // 10x9 Jacobian evaluated at an ambient point
    Matrix<T> jacobian_at(const std::vector<T>& w, const F& fld) const {
        Matrix<T> J(10, 9, fld.zero());
        for (std::size_t m = 0; m < 10; ++m)
            for (std::size_t v = 0; v < 9; ++v)
                J.at(m, v) = jac[m][v].eval_or(w, fld.zero());
        return J;
    }
};

// ---------------------------------------------------------------------------
// Projective point utilities.
// ---------------------------------------------------------------------------

template <class T>
std::vector<T> projective_normalize(std::vector<T> v) {
    for (const auto& x : v) {
        if (!is_zero(x)) {
            const T inv = one_like(x) / x;
            for (auto& y : v) y *= inv;
            return v;
        }
    }
    throw std::invalid_argument("projective_normalize: zero vector");
}

template <class T>
bool projectively_equal(const std::vector<T>& a, const std::vector<T>& b) {
    return projective_normalize(a) == projective_normalize(b);
}

// Enumerates representatives of P^dim(F_p) in a fixed canonical order:
// leading coordinate 1, earlier coordinates 0, the rest free.
template <class Fn>
void for_each_projective_point(uint32_t p, int dim, Fn&& fn) {
    std::vector<uint32_t> c(static_cast<std::size_t>(dim) + 1, 0);
    for (int lead = 0; lead <= dim; ++lead) {
        for (auto& x : c) x = 0;
        c[lead] = 1;
        const int free_from = lead + 1;
        while (true) {
            fn(c);
            int i = dim;
            for (; i >= free_from; --i) {
                if (++c[i] < p) break;
                c[i] = 0;
            }
            if (i < free_from) break;
        }
    }
}

inline uint64_t projective_point_count(uint64_t p, int dim) {
    uint64_t total = 0, power = 1;
    for (int i = 0; i <= dim; ++i) {
        total += power;
        power *= p;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Sampled chord frames: six parameter points on the scroll, three chord
// points spanning the projection center.
// ---------------------------------------------------------------------------

struct FrameSeed {
    uint32_t p = 0;
    uint64_t seed = 0;
    uint32_t attempts = 0; // how many resamples the invariants consumed
    // canonical integer lifts of the sampled data
    std::array<std::array<int64_t, 3>, 6> params{}; // x1,y1,x2,y2,x3,y3
    std::array<int64_t, 3> chord_c{};
};

template <class T>
struct SecantFrame {
    FrameSeed origin;
    std::array<std::vector<T>, 6> param_points; // plane points
    std::array<std::vector<T>, 6> images;       // their P8 images
    std::array<std::vector<T>, 3> chord_points; // a_i = x_i + c_i y_i
    Matrix<T> span; // 3x9, rows a_1, a_2, a_3

    const std::vector<T>& x_param(int i) const { return param_points[2 * i]; }
    const std::vector<T>& y_param(int i) const { return param_points[2 * i + 1]; }
    const std::vector<T>& x_image(int i) const { return images[2 * i]; }
    const std::vector<T>& y_image(int i) const { return images[2 * i + 1]; }
};

class DegenerateSample : public std::runtime_error {
public:
    DegenerateSample(const std::string& what, uint64_t seed)
        : std::runtime_error(what + " (seed " + std::to_string(seed) + ")") {}
};

// Realize a frame over any field from recorded integer data, revalidating
// the frame invariants there.
template <class F>
std::optional<SecantFrame<typename F::Scalar>> try_realize_frame(
    const F& fld, const FrameSeed& seed) {
    using T = typename F::Scalar;
    SecantFrame<T> fr{seed,
                      {},
                      {},
                      {},
                      Matrix<T>(3, 9, fld.zero())};
    for (int i = 0; i < 6; ++i) {
        std::vector<T> z;
        for (int j = 0; j < 3; ++j) z.push_back(fld.from_int(seed.params[i][j]));
        if (point_is_zero(z)) return std::nullopt;
        fr.param_points[i] = projective_normalize(z);
        fr.images[i] = scroll_eval(fr.param_points[i]);
        if (point_is_zero(fr.images[i])) return std::nullopt; // base point
    }
    // parameter points and images pairwise distinct, and the six points on
    // six distinct rulings (general position needs no shared ruling)
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            if (fr.param_points[i] == fr.param_points[j]) return std::nullopt;
            if (projectively_equal(fr.images[i], fr.images[j]))
                return std::nullopt;
            const auto& a = fr.param_points[i];
            const auto& b = fr.param_points[j];
            if (is_zero(a[1] * b[2] - a[2] * b[1])) return std::nullopt;
        }
    for (int i = 0; i < 3; ++i) {
        const T c = fld.from_int(seed.chord_c[i]);
        if (is_zero(c)) return std::nullopt;
        std::vector<T> a;
        for (int k = 0; k < 9; ++k)
            a.push_back(fr.images[2 * i][k] + c * fr.images[2 * i + 1][k]);
        if (point_is_zero(a)) return std::nullopt;
        // on the secant variety by construction; must miss the scroll
        if (!all_zero(determinantal_residuals(a, DeterminantalSystem::secant)))
            return std::nullopt;
        if (all_zero(determinantal_residuals(a, DeterminantalSystem::scroll)))
            return std::nullopt;
        fr.chord_points[i] = a;
        for (int k = 0; k < 9; ++k) fr.span.at(i, k) = a[k];
    }
    if (rank_of(fr.span) != 3) return std::nullopt;
    return fr;
}

inline SecantFrame<Fp> sample_secant_frame(uint32_t p, uint64_t seed,
                                           uint32_t retry_budget = 16) {
    if (p < 11)
        throw std::invalid_argument("sample_secant_frame: prime must be >= 11");
    FpField fld(p);
    for (uint32_t attempt = 0; attempt < retry_budget; ++attempt) {
        Rng rng(mix_seed(seed, attempt));
        FrameSeed fs;
        fs.p = p;
        fs.seed = seed;
        fs.attempts = attempt;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 3; ++j)
                fs.params[i][j] = static_cast<int64_t>(rng.below(p));
        for (int i = 0; i < 3; ++i)
            fs.chord_c[i] = static_cast<int64_t>(rng.nonzero_below(p));
        auto fr = try_realize_frame(fld, fs);
        if (fr) return *fr;
    }
    throw DegenerateSample("sample_secant_frame: retry budget exhausted", seed);
}

// ---------------------------------------------------------------------------
// Projection away from the sampled plane: six independent linear forms.
// ---------------------------------------------------------------------------

template <class T>
struct ProjectionMap {
    Matrix<T> forms; // 9x6, column j = coefficients of the j-th linear form
    std::vector<MultiPoly<T>> quartics; // the six composed degree-4 forms

    std::vector<T> apply(const std::vector<T>& w) const {
        std::vector<T> out;
        out.reserve(6);
        for (std::size_t j = 0; j < 6; ++j) {
            T acc = zero_like(w[0]);
            for (std::size_t k = 0; k < 9; ++k) acc += forms.at(k, j) * w[k];
            out.push_back(acc);
        }
        return out;
    }
};

template <class F>
ProjectionMap<typename F::Scalar> build_projection(
    const F& fld, const SecantFrame<typename F::Scalar>& frame) {
    using T = typename F::Scalar;
    if (rank_of(frame.span) != 3)
        throw std::invalid_argument("build_projection: plane rank is not 3");
    auto [rank, kernel] = rref_rank(frame.span);
    if (rank != 3 || kernel.size() != 6)
        throw std::invalid_argument("build_projection: annihilator is not P5");
    ProjectionMap<T> proj{Matrix<T>(9, 6, fld.zero()), {}};
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t k = 0; k < 9; ++k) proj.forms.at(k, j) = kernel[j][k];
    // each form kills every chord point
    for (int i = 0; i < 3; ++i)
        if (!point_is_zero(proj.apply(frame.chord_points[i])))
            throw std::logic_error("build_projection: form misses the center");
    auto monos = scroll_forms(fld);
    for (std::size_t j = 0; j < 6; ++j) {
        MultiPoly<T> q(3);
        for (std::size_t k = 0; k < 9; ++k)
            q = q + monos[k].scaled(proj.forms.at(k, j));
        proj.quartics.push_back(std::move(q));
    }
    // projected parametrization must be defined at the six sampled points
    for (int i = 0; i < 6; ++i)
        if (point_is_zero(proj.apply(frame.images[i])))
            throw std::logic_error("build_projection: center meets the scroll");
    return proj;
}

} // namespace scrollcert
