#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "scrollcert/grass.hpp"
#include "scrollcert/plucker.hpp"
#include "scrollcert/rng.hpp"

namespace scrollcert {

// ---------------------------------------------------------------------------
// The fixed quartic scroll: the doubled projective line embedded by the
// bidegree-(1,2) forms (l*n^2, l*n*r, l*r^2, m*n^2, m*n*r, m*r^2). Rulings
// are the fibres of the second factor; the ruling at (n:r) is spanned by
// the two section points below.
// ---------------------------------------------------------------------------

template <class F>
std::array<std::vector<typename F::Scalar>, 2> quartic_ruling_points(
    const F& fld, const typename F::Scalar& n, const typename F::Scalar& r) {
    using T = typename F::Scalar;
    const T z = fld.zero();
    std::vector<T> a{n * n, n * r, r * r, z, z, z};
    std::vector<T> b{z, z, z, n * n, n * r, r * r};
    return {std::move(a), std::move(b)};
}

// Plücker coordinates of the ruling family: fifteen binary quartics.
template <class F>
std::vector<std::vector<typename F::Scalar>> quartic_ruling_forms(const F& fld) {
    using T = typename F::Scalar;
    const T z = fld.zero(), o = fld.one();
    // coordinate sections as binary forms in (n, r)
    std::array<std::vector<T>, 6> A, B;
    A[0] = {o, z, z}; A[1] = {z, o, z}; A[2] = {z, z, o};
    A[3] = A[4] = A[5] = {z, z, z};
    B[3] = {o, z, z}; B[4] = {z, o, z}; B[5] = {z, z, o};
    B[0] = B[1] = B[2] = {z, z, z};
    std::vector<std::vector<T>> out;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            auto f = bf_mul(A[i], B[j]);
            auto g = bf_mul(A[j], B[i]);
            for (std::size_t d = 0; d < f.size(); ++d) f[d] -= g[d];
            out.push_back(std::move(f));
        }
    return out;
}

template <class F>
std::vector<typename F::Scalar> quartic_ruling_eval(
    const F& fld, const typename F::Scalar& n, const typename F::Scalar& r) {
    auto pts = quartic_ruling_points(fld, n, r);
    return pluecker_line(pts[0], pts[1]);
}

// The three marked points and their ruling parameters.
template <class F>
struct KappaFixed {
    using T = typename F::Scalar;
    std::array<std::array<T, 2>, 3> ruling_params;
    std::array<std::vector<T>, 3> marked_points;
};

template <class F>
KappaFixed<F> kappa_fixed(const F& fld) {
    using T = typename F::Scalar;
    KappaFixed<F> fx{{{{fld.zero(), fld.one()},
                       {fld.one(), fld.zero()},
                       {fld.from_int(-1), fld.from_int(-1)}}},
                     {}};
    // ((1:0),(0:1)), ((0:1),(1:0)) and ((1:1),(-1:-1)) on the scroll
    std::array<std::array<T, 2>, 3> lm = {{{fld.one(), fld.zero()},
                                           {fld.zero(), fld.one()},
                                           {fld.one(), fld.one()}}};
    for (int i = 0; i < 3; ++i) {
        auto pts = quartic_ruling_points(fld, fx.ruling_params[i][0],
                                         fx.ruling_params[i][1]);
        std::vector<T> o;
        for (int c = 0; c < 6; ++c)
            o.push_back(lm[i][0] * pts[0][c] + lm[i][1] * pts[1][c]);
        fx.marked_points[i] = std::move(o);
    }
    return fx;
}

// ---------------------------------------------------------------------------
// The reverse construction: three planes through the fixed rulings cut a
// septic residual curve; its crossings with the attached pencil lines are
// the nodes of the reconstructed scroll.
// ---------------------------------------------------------------------------

struct KappaInput {
    // extra point of each plane (the plane is the span of the ruling and
    // this point); must avoid the ruling itself
    std::array<std::vector<Fp>, 3> extra_points;
};

struct KappaLineWitness {
    std::size_t divisor_degree = 0;    // singular divisor on the line
    bool quartic_point_is_root = false;
    bool quartic_point_simple = false;
    bool conjugate_pair = false;       // crossings rational over F_p^2 only
    std::size_t rational_singular_points = 0; // beyond the quartic point
    bool nodes_reduced = false;        // tangent rank 5 at both crossings
    bool crossing_lines_meet = false;
    bool node_rational = false;
    bool node_in_plane = false;
    std::array<int64_t, 6> node{};     // normalized node coordinates
};

struct KappaCertificate {
    bool pass = false;
    std::vector<std::string> failures;
    uint32_t prime = 0;
    uint64_t seed = 0;
    std::size_t q0_span_rank = 0;   // expected 5
    std::size_t full_span_rank = 0; // expected 8
    uint64_t total_hits = 0;
    std::size_t q0_count = 0;       // expected p+1
    std::array<std::size_t, 3> line_counts{};     // expected p+1 each
    std::array<bool, 3> line_meets_q0_once{};
    std::size_t residual_interior = 0; // rational curve points off the lines
    std::array<KappaLineWitness, 3> lines{};
};

namespace kdetail {

// 15x8 Jacobian of the restricted quadric system at a Grassmannian point:
// entry (m, j) is the m-th polarized relation of the point against row j.
template <class T>
Matrix<T> polarized_jacobian(const std::vector<T>& x,
                             const std::vector<std::vector<T>>& rows) {
    Matrix<T> J(15, rows.size(), zero_like(x[0]));
    for (std::size_t j = 0; j < rows.size(); ++j) {
        auto pol = pluecker_polarized(x, rows[j]);
        for (int m = 0; m < 15; ++m) J.at(m, j) = pol[m];
    }
    return J;
}

} // namespace kdetail

inline KappaCertificate kappa(const KappaInput& input, uint32_t p,
                              uint64_t seed) {
    FpField fld(p);
    KappaCertificate cert;
    cert.prime = p;
    cert.seed = seed;
    auto fx = kappa_fixed(fld);

    // plane bases and pencil-line generators
    std::array<std::array<std::vector<Fp>, 3>, 3> plane_basis; // ruling pts + w
    std::array<std::vector<Fp>, 3> g1, g2;
    for (int i = 0; i < 3; ++i) {
        const auto& w = input.extra_points[i];
        if (w.size() != 6 || vec_is_zero(w))
            throw std::invalid_argument("kappa: extra point must be a P5 point");
        auto pts = quartic_ruling_points(fld, fx.ruling_params[i][0],
                                         fx.ruling_params[i][1]);
        Matrix<Fp> M(3, 6, fld.zero());
        for (int c = 0; c < 6; ++c) {
            M.at(0, c) = pts[0][c];
            M.at(1, c) = pts[1][c];
            M.at(2, c) = w[c];
        }
        if (rank_of(M) != 3)
            throw std::invalid_argument("kappa: extra point lies on the ruling");
        plane_basis[i] = {pts[0], pts[1], w};
        g1[i] = quartic_ruling_eval(fld, fx.ruling_params[i][0],
                                    fx.ruling_params[i][1]);
        g2[i] = pluecker_line(fx.marked_points[i], w);
        // the pencil line stays inside the Grassmannian
        if (!vec_is_zero(pluecker_polarized(g1[i], g2[i])))
            throw NonGenericInstance("kappa: pencil line leaves the quadrics");
    }

    // span of the quartic ruling family
    auto forms = quartic_ruling_forms(fld);
    Matrix<Fp> Q0(5, 15, fld.zero());
    for (int d = 0; d <= 4; ++d)
        for (int c = 0; c < 15; ++c) Q0.at(d, c) = forms[c][d];
    cert.q0_span_rank = rank_of(Q0);
    if (cert.q0_span_rank != 5)
        cert.failures.push_back("quartic family span rank is not 5");

    // attach the three pencil lines: one new generator each
    std::vector<std::array<uint32_t, 15>> basis;
    for (int d = 0; d <= 4; ++d) {
        std::array<uint32_t, 15> row{};
        for (int c = 0; c < 15; ++c) row[c] = Q0.at(d, c).value();
        basis.push_back(row);
    }
    for (int i = 0; i < 3; ++i) {
        std::array<uint32_t, 15> row{};
        for (int c = 0; c < 15; ++c) row[c] = g2[i][c].value();
        basis.push_back(row);
    }
    {
        Matrix<Fp> B(8, 15, fld.zero());
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 15; ++c) B.at(r, c) = fld.from_int(basis[r][c]);
        cert.full_span_rank = rank_of(B);
    }
    if (cert.full_span_rank != 8) {
        cert.failures.push_back("attached spans do not fill a P7");
        return cert; // degenerate input; caller resamples
    }

    auto hits = slice_grassmannian(basis, p);
    cert.total_hits = hits.size();

    // census: quartic-family points and pencil-line points
    std::set<std::array<uint16_t, 15>> q0_set;
    for_each_projective_point(p, 1, [&](const std::vector<uint32_t>& nr) {
        auto v = quartic_ruling_eval(fld, fld.from_int(nr[0]),
                                     fld.from_int(nr[1]));
        q0_set.insert(normalized_key15(v));
    });
    std::array<std::vector<std::vector<Fp>>, 3> line_ann;
    for (int i = 0; i < 3; ++i) {
        Matrix<Fp> M(2, 15, fld.zero());
        for (int c = 0; c < 15; ++c) {
            M.at(0, c) = g1[i][c];
            M.at(1, c) = g2[i][c];
        }
        auto [rank, kernel] = rref_rank(M);
        if (rank != 2)
            throw NonGenericInstance("kappa: pencil generators proportional");
        line_ann[i] = kernel;
    }
    auto on_line = [&](const std::vector<Fp>& v, int i) {
        for (const auto& form : line_ann[i]) {
            Fp acc = fld.zero();
            for (int c = 0; c < 15; ++c) acc += form[c] * v[c];
            if (!is_zero(acc)) return false;
        }
        return true;
    };
    std::array<std::set<std::array<uint16_t, 15>>, 3> line_q0_hits;
    for (const auto& h : hits) {
        auto v = hit_point(fld, h);
        const bool on_q0 = q0_set.count(h.point) > 0;
        int on_lines = 0;
        for (int i = 0; i < 3; ++i)
            if (on_line(v, i)) {
                ++on_lines;
                cert.line_counts[i] += 1;
                if (on_q0) line_q0_hits[i].insert(h.point);
            }
        if (on_q0) cert.q0_count += 1;
        if (!on_q0 && on_lines == 0) cert.residual_interior += 1;
    }
    if (cert.q0_count != p + 1)
        cert.failures.push_back("quartic family census is not p+1");
    for (int i = 0; i < 3; ++i) {
        if (cert.line_counts[i] != p + 1)
            cert.failures.push_back("pencil line census is not p+1");
        cert.line_meets_q0_once[i] =
            line_q0_hits[i].size() == 1 &&
            *line_q0_hits[i].begin() == normalized_key15(g1[i]);
        if (!cert.line_meets_q0_once[i])
            cert.failures.push_back("pencil line " + std::to_string(i + 1) +
                                    " does not meet the quartic family exactly "
                                    "at its ruling");
    }

    // basis rows as Fp vectors for the polarized Jacobian
    std::vector<std::vector<Fp>> rows;
    for (const auto& b : basis) {
        std::vector<Fp> r;
        for (int c = 0; c < 15; ++c) r.push_back(fld.from_int(b[c]));
        rows.push_back(std::move(r));
    }

    Rng rng(mix_seed(seed, 0x6a77a));
    for (int i = 0; i < 3; ++i) {
        KappaLineWitness& wit = cert.lines[i];
        Matrix<Fp> J1 = kdetail::polarized_jacobian(g1[i], rows);
        Matrix<Fp> J2 = kdetail::polarized_jacobian(g2[i], rows);

        // rational singular points on the line, beyond the quartic point
        for_each_projective_point(p, 1, [&](const std::vector<uint32_t>& uv) {
            if (uv[0] == 1 && uv[1] == 0) return;
            Matrix<Fp> J(15, 8, fld.zero());
            for (int m = 0; m < 15; ++m)
                for (int j = 0; j < 8; ++j)
                    J.at(m, j) = fld.from_int(uv[0]) * J1.at(m, j) +
                                 fld.from_int(uv[1]) * J2.at(m, j);
            if (rank_of(J) <= 5) wit.rational_singular_points += 1;
        });

        // singular divisor on the line by compressed determinants
        std::vector<std::vector<Fp>> dets;
        int tries = 0;
        while (dets.size() < 8 && tries < 32) {
            ++tries;
            Matrix<Fp> A(6, 15, fld.zero()), B(8, 6, fld.zero());
            for (std::size_t r = 0; r < 6; ++r)
                for (std::size_t c = 0; c < 15; ++c)
                    A.at(r, c) = fld.from_int(static_cast<int64_t>(rng.below(p)));
            for (std::size_t r = 0; r < 8; ++r)
                for (std::size_t c = 0; c < 6; ++c)
                    B.at(r, c) = fld.from_int(static_cast<int64_t>(rng.below(p)));
            // interpolate det(A (u J1 + v J2) B) of bidegree 6 from 7 values
            Matrix<Fp> V(7, 8, fld.zero());
            for (int s = 0; s < 7; ++s) {
                Matrix<Fp> M(15, 8, fld.zero());
                for (int m = 0; m < 15; ++m)
                    for (int j = 0; j < 8; ++j)
                        M.at(m, j) = J1.at(m, j) + fld.from_int(s) * J2.at(m, j);
                Fp d = determinant(A * M * B);
                Fp power = fld.one();
                for (int e = 0; e < 7; ++e) {
                    V.at(s, e) = power;
                    power *= fld.from_int(s);
                }
                V.at(s, 7) = d;
            }
            auto solved = rref(V);
            if (solved.rank != 7) continue; // cannot happen with distinct nodes
            std::vector<Fp> coeff;
            for (int e = 0; e < 7; ++e) coeff.push_back(solved.reduced.at(e, 7));
            if (!bf_is_zero(coeff)) dets.push_back(std::move(coeff));
        }
        if (dets.size() < 4) {
            cert.failures.push_back("compressed determinants degenerate on line " +
                                    std::to_string(i + 1));
            continue;
        }
        std::vector<Fp> g = dets[0];
        for (std::size_t k = 1; k < dets.size(); ++k) g = bf_gcd(g, dets[k]);
        wit.divisor_degree = g.size() - 1;
        if (wit.divisor_degree != 3) {
            cert.failures.push_back("singular divisor on line " +
                                    std::to_string(i + 1) + " has degree " +
                                    std::to_string(wit.divisor_degree) +
                                    ", expected 3");
            continue;
        }
        wit.quartic_point_is_root = is_zero(g[0]);
        if (!wit.quartic_point_is_root) {
            cert.failures.push_back("quartic point is not on the singular "
                                    "divisor of line " + std::to_string(i + 1));
            continue;
        }
        // divide out the quartic point; remaining quadratic = curve crossings
        std::array<Fp, 3> q{g[1], g[2], g[3]};
        wit.quartic_point_simple = !is_zero(q[0]);
        if (!wit.quartic_point_simple) {
            cert.failures.push_back("quartic point is a multiple root on line " +
                                    std::to_string(i + 1));
            continue;
        }
        const Fp disc = q[1] * q[1] - Fp(4, p) * q[0] * q[2];
        if (is_zero(disc)) {
            cert.failures.push_back("curve is tangent to line " +
                                    std::to_string(i + 1));
            continue;
        }
        Fp root(0, p);
        const bool rational = sqrt_scan(disc, root);
        wit.conjugate_pair = !rational;

        auto check_roots = [&](auto efld) -> bool {
            using K = typename decltype(efld)::Scalar;
            auto lift = [&](const Fp& a) { return efld.embed(a); };
            K sq = efld.sqrt(disc);
            K two_a = lift(q[0] + q[0]);
            K x1 = (-lift(q[1]) + sq) / two_a;
            K x2 = (-lift(q[1]) - sq) / two_a;
            std::array<K, 2> xs{x1, x2};
            std::array<std::vector<K>, 2> pl;
            std::vector<std::vector<K>> rowsK;
            for (const auto& r : rows) {
                std::vector<K> rk;
                for (const auto& a : r) rk.push_back(lift(a));
                rowsK.push_back(std::move(rk));
            }
            for (int s = 0; s < 2; ++s) {
                std::vector<K> x;
                for (int c = 0; c < 15; ++c)
                    x.push_back(xs[s] * lift(g1[i][c]) + lift(g2[i][c]));
                if (!on_grassmannian(x)) return false;
                Matrix<K> J = kdetail::polarized_jacobian(x, rowsK);
                if (rank_of(J) != 5) return false;
                pl[s] = std::move(x);
            }
            wit.nodes_reduced = true;
            wit.crossing_lines_meet = lines_meet(pl[0], pl[1]);
            if (!wit.crossing_lines_meet) return false;
            auto span_a = line_span_points(pl[0]);
            auto span_b = line_span_points(pl[1]);
            auto node = projective_normalize(
                line_intersection_point(span_a, span_b));
            for (const auto& c : node)
                if (!is_rational_coord(c)) return false;
            wit.node_rational = true;
            Matrix<Fp> P(4, 6, fld.zero());
            for (int c = 0; c < 6; ++c) {
                P.at(0, c) = plane_basis[i][0][c];
                P.at(1, c) = plane_basis[i][1][c];
                P.at(2, c) = plane_basis[i][2][c];
                P.at(3, c) = rational_part(node[c]);
                wit.node[c] = rational_part(node[c]).value();
            }
            wit.node_in_plane = rank_of(P) == 3;
            return wit.node_in_plane;
        };

        bool ok;
        if (rational) {
            ok = check_roots(TrivialExtension{fld});
            // cross-check: the rational scan saw exactly these two points
            if (wit.rational_singular_points != 2) {
                cert.failures.push_back("rational singular census disagrees on "
                                        "line " + std::to_string(i + 1));
                ok = false;
            }
        } else {
            ok = check_roots(Fp2Field(p));
            if (wit.rational_singular_points != 0) {
                cert.failures.push_back("conjugate case shows rational singular "
                                        "points on line " + std::to_string(i + 1));
                ok = false;
            }
        }
        if (!ok)
            cert.failures.push_back("node reconstruction failed on line " +
                                    std::to_string(i + 1));
    }

    cert.pass = cert.failures.empty();
    return cert;
}

} // namespace scrollcert
