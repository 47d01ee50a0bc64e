#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "scrollcert/matrix.hpp"

namespace scrollcert {

// Plücker coordinates p_ij of lines in P5, indexed 0..14 in the order
// (01,02,03,04,05,12,13,14,15,23,24,25,34,35,45).
inline int pair_index(int i, int j) {
    static const int table[6][6] = {
        {-1, 0, 1, 2, 3, 4},   {0, -1, 5, 6, 7, 8},   {1, 5, -1, 9, 10, 11},
        {2, 6, 9, -1, 12, 13}, {3, 7, 10, 12, -1, 14}, {4, 8, 11, 13, 14, -1}};
    return table[i][j];
}

// The 15 three-term quadrics, one per 4-subset {i<j<k<l} of {0..5}:
//   p_ij p_kl - p_ik p_jl + p_il p_jk.
struct PlueckerRelation {
    int a, b; // + p_a p_b
    int c, d; // - p_c p_d
    int e, f; // + p_e p_f
};

inline const std::array<PlueckerRelation, 15>& pluecker_relations() {
    static const auto rels = [] {
        std::array<PlueckerRelation, 15> out{};
        int n = 0;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                for (int k = j + 1; k < 6; ++k)
                    for (int l = k + 1; l < 6; ++l)
                        out[n++] = {pair_index(i, j), pair_index(k, l),
                                    pair_index(i, k), pair_index(j, l),
                                    pair_index(i, l), pair_index(j, k)};
        return out;
    }();
    return rels;
}

// Wedge of two P5 points; the degenerate (proportional) case is an error.
template <class T>
std::vector<T> pluecker_line(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != 6 || b.size() != 6)
        throw std::invalid_argument("pluecker_line: expects P5 points");
    std::vector<T> v;
    v.reserve(15);
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) v.push_back(a[i] * b[j] - a[j] * b[i]);
    bool zero = true;
    for (const auto& x : v)
        if (!is_zero(x)) zero = false;
    if (zero)
        throw std::invalid_argument("pluecker_line: proportional points");
    return v;
}

template <class T>
std::vector<T> pluecker_residuals(const std::vector<T>& v) {
    if (v.size() != 15)
        throw std::invalid_argument("pluecker_residuals: expects 15 coords");
    bool zero = true;
    for (const auto& x : v)
        if (!is_zero(x)) zero = false;
    if (zero) throw std::invalid_argument("pluecker_residuals: zero vector");
    std::vector<T> out;
    out.reserve(15);
    for (const auto& r : pluecker_relations())
        out.push_back(v[r.a] * v[r.b] - v[r.c] * v[r.d] + v[r.e] * v[r.f]);
    return out;
}

template <class T>
bool on_grassmannian(const std::vector<T>& v) {
    for (const auto& x : pluecker_residuals(v))
        if (!is_zero(x)) return false;
    return true;
}

// Polarized relations B(u, v); B(v, v) = 2 * residual(v). Vanishing of all
// fifteen on two Grassmannian points says the segment between them stays
// inside the Grassmannian.
template <class T>
std::vector<T> pluecker_polarized(const std::vector<T>& u,
                                  const std::vector<T>& v) {
    if (u.size() != 15 || v.size() != 15)
        throw std::invalid_argument("pluecker_polarized: expects 15 coords");
    std::vector<T> out;
    out.reserve(15);
    for (const auto& r : pluecker_relations())
        out.push_back(u[r.a] * v[r.b] + u[r.b] * v[r.a] -
                      u[r.c] * v[r.d] - u[r.d] * v[r.c] +
                      u[r.e] * v[r.f] + u[r.f] * v[r.e]);
    return out;
}

template <class T>
bool proportional_vectors(const std::vector<T>& u, const std::vector<T>& v) {
    // rank of the 2xN stack
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (!is_zero(u[i] * v[j] - u[j] * v[i])) return false;
    return true;
}

// Incidence of two distinct lines given by Plücker vectors.
template <class T>
bool lines_meet(const std::vector<T>& u, const std::vector<T>& v) {
    if (!on_grassmannian(u) || !on_grassmannian(v))
        throw std::invalid_argument("lines_meet: input not a line");
    if (proportional_vectors(u, v))
        throw std::invalid_argument("lines_meet: identical lines");
    for (const auto& x : pluecker_polarized(u, v))
        if (!is_zero(x)) return false;
    return true;
}

// Two spanning points of the line with the given Plücker vector, via the
// column space of the rank-2 antisymmetric matrix M_ij = p_ij.
template <class T>
std::array<std::vector<T>, 2> line_span_points(const std::vector<T>& v) {
    if (!on_grassmannian(v))
        throw std::invalid_argument("line_span_points: not a line");
    const T zero = zero_like(v[0]);
    Matrix<T> M(6, 6, zero);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            if (i < j) M.at(i, j) = v[pair_index(i, j)];
            else if (i > j) M.at(i, j) = -v[pair_index(j, i)];
        }
    // pick two independent columns
    int first = -1;
    for (int j = 0; j < 6 && first < 0; ++j)
        for (int i = 0; i < 6; ++i)
            if (!is_zero(M.at(i, j))) {
                first = j;
                break;
            }
    if (first < 0)
        throw std::invalid_argument("line_span_points: zero matrix");
    std::vector<T> c1, c2;
    for (int i = 0; i < 6; ++i) c1.push_back(M.at(i, first));
    for (int j = first + 1; j < 6; ++j) {
        std::vector<T> cand;
        for (int i = 0; i < 6; ++i) cand.push_back(M.at(i, j));
        if (!proportional_vectors(c1, cand) && !vec_is_zero(cand)) {
            c2 = cand;
            break;
        }
    }
    if (c2.empty())
        throw std::domain_error("line_span_points: rank below 2");
    // consistency: the wedge of the recovered points is the input line
    auto w = pluecker_line(c1, c2);
    if (!proportional_vectors(w, v))
        throw std::logic_error("line_span_points: reconstruction drift");
    return {std::move(c1), std::move(c2)};
}

// Intersection point of two meeting lines, each given by two spanning
// points. Throws if the lines are disjoint or identical.
template <class T>
std::vector<T> line_intersection_point(const std::array<std::vector<T>, 2>& L1,
                                       const std::array<std::vector<T>, 2>& L2) {
    const T zero = zero_like(L1[0][0]);
    Matrix<T> M(6, 4, zero);
    for (int i = 0; i < 6; ++i) {
        M.at(i, 0) = L1[0][i];
        M.at(i, 1) = L1[1][i];
        M.at(i, 2) = -L2[0][i];
        M.at(i, 3) = -L2[1][i];
    }
    auto [rank, kernel] = rref_rank(M);
    if (rank == 4) throw std::domain_error("line_intersection_point: disjoint");
    if (rank < 3)
        throw std::domain_error("line_intersection_point: identical lines");
    const auto& k = kernel[0];
    std::vector<T> pt;
    for (int i = 0; i < 6; ++i) pt.push_back(k[0] * L1[0][i] + k[1] * L1[1][i]);
    if (vec_is_zero(pt))
        throw std::logic_error("line_intersection_point: zero solution");
    return pt;
}

} // namespace scrollcert
