#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scrollcert/matrix.hpp"
#include "scrollcert/poly.hpp"
#include "scrollcert/scanfield.hpp"
#include "scrollcert/scroll.hpp"

namespace scrollcert {

inline int64_t lift_value(const Fp& a) { return a.value(); }
inline int64_t lift_value(const Rat& a) {
    // witness lift for reports; exact only when the value is integral
    return static_cast<int64_t>(
        mpz_class(a.get_num() / a.get_den()).get_si());
}

// Degree-12 plane monomials vanishing to order >= 9 at the base point;
// this is the pullback of the cubic system restricted to the scroll.
inline std::vector<Exponents> sing_system_monomials() {
    std::vector<Exponents> out;
    for (const auto& e : monomials_of_degree(3, 12))
        if (e[1] + e[2] >= 9) out.push_back(e);
    return out;
}

// Degree-3 plane monomials with a double point at the base point: the
// sections cut by the residual sextic system.
inline std::vector<Exponents> sextic_system_monomials() {
    std::vector<Exponents> out;
    for (const auto& e : monomials_of_degree(3, 3))
        if (e[1] + e[2] >= 2) out.push_back(e);
    return out;
}

// Vanishing of a cubic on the projected scroll, expressed on monomial bases:
// rows are the degree-12 coefficients of each composed cubic monomial.
template <class F>
Matrix<typename F::Scalar> cubic_evaluation_matrix(
    const F& fld, const ProjectionMap<typename F::Scalar>& proj) {
    using T = typename F::Scalar;
    const auto cubics = monomials_of_degree(6, 3);  // 56 columns
    const auto rows_basis = monomials_of_degree(3, 12); // 91 rows
    Matrix<T> M(rows_basis.size(), cubics.size(), fld.zero());
    for (std::size_t j = 0; j < cubics.size(); ++j) {
        auto composed = MultiPoly<T>::monomial(6, cubics[j], fld.one())
                            .compose(proj.quartics);
        auto coeffs = dense_coefficients(composed, 12, fld.zero());
        for (std::size_t i = 0; i < coeffs.size(); ++i) M.at(i, j) = coeffs[i];
    }
    return M;
}

struct LinearSystemReport {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t rank = 0;
    int64_t h0 = 0;
    int64_t h1 = 0; // via the exact-sequence bookkeeping h1 = h0 - 13
    int64_t node_conditions = 0;  // cubics through the three nodes
    int64_t sing_ambient = 0;     // sections of the restricted system
    int64_t sing_dim = 0;         // after imposing the six points
};

template <class F>
int64_t cubics_through_points(
    const F& fld, const std::vector<std::vector<typename F::Scalar>>& points) {
    using T = typename F::Scalar;
    const auto cubics = monomials_of_degree(6, 3);
    if (points.empty()) return static_cast<int64_t>(cubics.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (projectively_equal(points[i], points[j]))
                throw std::invalid_argument(
                    "cubics_through_points: duplicate points");
    Matrix<T> M(points.size(), cubics.size(), fld.zero());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != 6)
            throw std::invalid_argument("cubics_through_points: expects P5");
        for (std::size_t j = 0; j < cubics.size(); ++j)
            M.at(i, j) = MultiPoly<T>::monomial(6, cubics[j], fld.one())
                             .eval(points[i]);
    }
    return static_cast<int64_t>(cubics.size()) -
           static_cast<int64_t>(rank_of(M));
}

struct SingSystemReport {
    int64_t ambient = 0;   // sections of the order-9 system
    std::size_t rank = 0;  // rank of the six point conditions
    int64_t dim = 0;       // ambient - rank
};

template <class F>
SingSystemReport sing_conditions_on_R(
    const F& fld, const SecantFrame<typename F::Scalar>& frame) {
    using T = typename F::Scalar;
    const auto basis = sing_system_monomials();
    Matrix<T> M(6, basis.size(), fld.zero());
    for (int i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            M.at(i, j) = MultiPoly<T>::monomial(3, basis[j], fld.one())
                             .eval(frame.param_points[i]);
    SingSystemReport r;
    r.ambient = static_cast<int64_t>(basis.size());
    r.rank = rank_of(M);
    r.dim = r.ambient - static_cast<int64_t>(r.rank);
    return r;
}

// Full cohomology bookkeeping for one frame: h0, rank, h1 plus the two
// constituent dimensions entering the four-term sequence.
template <class F>
LinearSystemReport cubics_through_scroll(
    const F& fld, const SecantFrame<typename F::Scalar>& frame,
    const ProjectionMap<typename F::Scalar>& proj) {
    LinearSystemReport rep;
    auto M = cubic_evaluation_matrix(fld, proj);
    rep.rows = M.rows();
    rep.cols = M.cols();
    rep.rank = rank_of(M);
    rep.h0 = static_cast<int64_t>(rep.cols) - static_cast<int64_t>(rep.rank);
    rep.h1 = rep.h0 - 13;

    std::vector<std::vector<typename F::Scalar>> nodes;
    for (int i = 0; i < 3; ++i)
        nodes.push_back(proj.apply(frame.x_image(i)));
    rep.node_conditions = cubics_through_points(fld, nodes);

    auto sing = sing_conditions_on_R(fld, frame);
    rep.sing_ambient = sing.ambient;
    rep.sing_dim = sing.dim;
    return rep;
}

struct UniqueSexticReport {
    int64_t ambient = 0;       // expected 7
    std::size_t kernel_dim = 0;
    std::vector<int64_t> section; // kernel coefficients (lifted values)
    bool vanishes_at_all_six = false;
};

template <class F>
UniqueSexticReport unique_sextic(const F& fld,
                                 const SecantFrame<typename F::Scalar>& frame) {
    using T = typename F::Scalar;
    const auto basis = sextic_system_monomials();
    Matrix<T> M(6, basis.size(), fld.zero());
    for (int i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            M.at(i, j) = MultiPoly<T>::monomial(3, basis[j], fld.one())
                             .eval(frame.param_points[i]);
    auto [rank, kernel] = rref_rank(M);
    (void)rank;
    UniqueSexticReport rep;
    rep.ambient = static_cast<int64_t>(basis.size());
    rep.kernel_dim = kernel.size();
    if (rep.kernel_dim != 1)
        throw std::domain_error(
            "unique_sextic: section space is not one-dimensional (dim " +
            std::to_string(rep.kernel_dim) + ")");
    MultiPoly<T> section(3);
    for (std::size_t j = 0; j < basis.size(); ++j)
        section.add_term(basis[j], kernel[0][j]);
    rep.vanishes_at_all_six = true;
    for (int i = 0; i < 6; ++i)
        if (!is_zero(section.eval_or(frame.param_points[i], fld.zero())))
            rep.vanishes_at_all_six = false;
    for (const auto& c : kernel[0]) rep.section.push_back(lift_value(c));
    return rep;
}

// ---------------------------------------------------------------------------
// Heuristic smoothness of a random cubic through the scroll: exhaustive
// rational-point scan of the gradient locus over a small field.
// ---------------------------------------------------------------------------

struct SmoothnessReport {
    bool heuristic = true; // rational points only, by construction
    std::size_t kernel_dim = 0;
    bool contains_scroll = false;
    bool node_gradients_nonzero = false;
    uint64_t points_scanned = 0;
    bool no_rational_singular_point = false;
    std::optional<std::array<uint32_t, 6>> singular_witness;
    std::vector<int64_t> cubic_coefficients;
};

inline SmoothnessReport random_cubic_smoothness(const SecantFrame<Fp>& frame,
                                                const ProjectionMap<Fp>& proj,
                                                uint64_t seed) {
    const uint32_t p = frame.origin.p;
    if (p > 13 || p % 3 == 0)
        throw std::invalid_argument(
            "random_cubic_smoothness: needs a scan prime <= 13, not 3");
    FpField fld(p);

    auto M = cubic_evaluation_matrix(fld, proj);
    auto [rank, kernel] = rref_rank(M);
    (void)rank;
    SmoothnessReport rep;
    rep.kernel_dim = kernel.size();
    if (rep.kernel_dim != 13)
        throw std::domain_error(
            "random_cubic_smoothness: cubic system is not 13-dimensional");

    Rng rng(mix_seed(seed, 0x5b00d));
    const auto cubics = monomials_of_degree(6, 3);
    std::vector<Fp> coeffs(56, fld.zero());
    while (point_is_zero(coeffs)) {
        for (auto& c : coeffs) c = fld.zero();
        for (const auto& kv : kernel) {
            Fp r = fld.from_int(static_cast<int64_t>(rng.below(p)));
            for (std::size_t j = 0; j < 56; ++j) coeffs[j] += r * kv[j];
        }
    }
    for (const auto& c : coeffs) rep.cubic_coefficients.push_back(c.value());

    MultiPoly<Fp> cubic(6);
    for (std::size_t j = 0; j < 56; ++j) cubic.add_term(cubics[j], coeffs[j]);
    rep.contains_scroll = cubic.compose(proj.quartics).empty();

    std::vector<MultiPoly<Fp>> grad;
    for (std::size_t v = 0; v < 6; ++v) grad.push_back(cubic.derivative(v));

    rep.node_gradients_nonzero = true;
    for (int i = 0; i < 3; ++i) {
        auto node = proj.apply(frame.x_image(i));
        bool nonzero = false;
        for (const auto& g : grad)
            if (!is_zero(g.eval_or(node, fld.zero()))) nonzero = true;
        if (!nonzero) rep.node_gradients_nonzero = false;
    }

    // dense gradient coefficients on the 21 quadratic monomials
    const auto quads = monomials_of_degree(6, 2);
    std::vector<std::array<uint32_t, 21>> G(6);
    for (std::size_t v = 0; v < 6; ++v) {
        auto dense = dense_coefficients(grad[v], 2, fld.zero());
        for (std::size_t m = 0; m < 21; ++m) G[v][m] = dense[m].value();
    }
    // index pairs of the quadratic monomials in canonical order
    std::array<std::array<int, 2>, 21> qpairs{};
    for (std::size_t m = 0; m < 21; ++m) {
        int a = -1, b = -1;
        for (int v = 0; v < 6; ++v) {
            if (quads[m][v] == 2) {
                a = b = v;
            } else if (quads[m][v] == 1) {
                if (a < 0) a = v;
                else b = v;
            }
        }
        qpairs[m] = {a, b};
    }

    ScanField F(p);
    rep.no_rational_singular_point = true;
    for_each_projective_point(p, 5, [&](const std::vector<uint32_t>& z) {
        ++rep.points_scanned;
        if (!rep.no_rational_singular_point) return;
        uint32_t zz[21];
        for (std::size_t m = 0; m < 21; ++m)
            zz[m] = F.mul(z[qpairs[m][0]], z[qpairs[m][1]]);
        for (int v = 0; v < 6; ++v) {
            uint64_t acc = 0;
            for (std::size_t m = 0; m < 21; ++m)
                acc += static_cast<uint64_t>(G[v][m]) * zz[m];
            if (acc % p != 0) return; // some partial is nonzero: smooth here
        }
        // all six partials vanish; Euler puts the point on the cubic
        rep.no_rational_singular_point = false;
        rep.singular_witness = {z[0], z[1], z[2], z[3], z[4], z[5]};
    });
    return rep;
}

} // namespace scrollcert
