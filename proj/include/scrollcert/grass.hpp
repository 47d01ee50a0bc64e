#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "scrollcert/binform.hpp"
#include "scrollcert/plucker.hpp"
#include "scrollcert/scanfield.hpp"
#include "scrollcert/scroll.hpp"

namespace scrollcert {

class NonGenericInstance : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// The ruling curve: Plücker coordinates of the projected rulings as binary
// forms in the ruling parameter.
// ---------------------------------------------------------------------------

template <class T>
struct RulingCurve {
    std::vector<std::vector<T>> coeffs; // 15 binary forms, common degree
    int degree = 0;
    std::size_t span_rank = 0;
    bool content_removed = false;

    std::vector<T> eval(const T& s, const T& t) const {
        std::vector<T> out;
        out.reserve(15);
        for (const auto& f : coeffs) out.push_back(bf_eval(f, s, t));
        return out;
    }
};

// Wedge the two projected directrix sections: the cubic block (rows 0..3 of
// the projection) sweeps the exceptional curve, the quartic block (rows
// 4..8) the degree-4 section; together they span every ruling.
template <class F>
RulingCurve<typename F::Scalar> ruling_curve(
    const F& fld, const ProjectionMap<typename F::Scalar>& proj) {
    using T = typename F::Scalar;
    std::array<std::vector<T>, 6> A, B;
    for (int j = 0; j < 6; ++j) {
        for (int d = 0; d <= 3; ++d) A[j].push_back(proj.forms.at(d, j));
        for (int d = 0; d <= 4; ++d) B[j].push_back(proj.forms.at(4 + d, j));
    }
    RulingCurve<T> curve;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            auto f = bf_mul(A[i], B[j]);
            auto g = bf_mul(A[j], B[i]);
            for (std::size_t d = 0; d < f.size(); ++d) f[d] -= g[d];
            curve.coeffs.push_back(std::move(f));
        }
    auto content = bf_content(curve.coeffs);
    if (content.empty())
        throw NonGenericInstance("ruling_curve: identically zero wedge");
    if (content.size() > 1) {
        curve.content_removed = true;
        for (auto& f : curve.coeffs) f = bf_divexact(f, content);
    }
    curve.degree = static_cast<int>(curve.coeffs.front().size()) - 1;
    if (curve.degree != 7)
        throw NonGenericInstance("ruling_curve: degree " +
                                 std::to_string(curve.degree) +
                                 " after content removal, expected 7");
    Matrix<T> M(15, 8, fld.zero());
    for (int r = 0; r < 15; ++r)
        for (int d = 0; d <= 7; ++d) M.at(r, d) = curve.coeffs[r][d];
    curve.span_rank = rank_of(M);
    if (curve.span_rank != 8)
        throw NonGenericInstance("ruling_curve: span rank " +
                                 std::to_string(curve.span_rank) +
                                 ", expected 8");
    return curve;
}

// Ruling parameter (z1 : z2) of a sampled plane point.
template <class T>
std::array<T, 2> ruling_parameter(const std::vector<T>& plane_point) {
    if (is_zero(plane_point[1]) && is_zero(plane_point[2]))
        throw std::invalid_argument("ruling_parameter: base point");
    return {plane_point[1], plane_point[2]};
}

// ---------------------------------------------------------------------------
// Bisecant certificate: the chord parameters give three pairwise-disjoint
// lines of the Grassmannian, each meeting the curve at its two parameters.
// ---------------------------------------------------------------------------

struct BisecantCertificate {
    bool pass = false;
    std::vector<std::string> failures;
    std::array<bool, 3> rulings_meet{};     // the node incidences
    std::array<std::size_t, 3> param_hits{}; // curve points on each line
    bool pairwise_disjoint = false;
    bool polarized_cross_tests_false = false;
};

template <class F>
BisecantCertificate bisecant_certificate(
    const F& fld, const RulingCurve<typename F::Scalar>& curve,
    const SecantFrame<typename F::Scalar>& frame, uint32_t p) {
    using T = typename F::Scalar;
    BisecantCertificate cert;

    std::array<std::array<std::vector<T>, 2>, 3> gens;
    for (int i = 0; i < 3; ++i) {
        auto tx = ruling_parameter(frame.x_param(i));
        auto ty = ruling_parameter(frame.y_param(i));
        gens[i][0] = curve.eval(tx[0], tx[1]);
        gens[i][1] = curve.eval(ty[0], ty[1]);
        for (int s = 0; s < 2; ++s)
            if (vec_is_zero(gens[i][s]))
                throw NonGenericInstance("bisecant: curve vanishes at a chord");
        cert.rulings_meet[i] = lines_meet(gens[i][0], gens[i][1]);
        if (!cert.rulings_meet[i])
            cert.failures.push_back("rulings of node " + std::to_string(i + 1) +
                                    " do not meet");
    }

    cert.pairwise_disjoint = true;
    cert.polarized_cross_tests_false = true;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Matrix<T> S(4, 15, fld.zero());
            for (int c = 0; c < 15; ++c) {
                S.at(0, c) = gens[i][0][c];
                S.at(1, c) = gens[i][1][c];
                S.at(2, c) = gens[j][0][c];
                S.at(3, c) = gens[j][1][c];
            }
            if (rank_of(S) != 4) cert.pairwise_disjoint = false;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if (lines_meet(gens[i][a], gens[j][b]))
                        cert.polarized_cross_tests_false = false;
        }
    if (!cert.pairwise_disjoint)
        cert.failures.push_back("bisecant lines are not pairwise disjoint");
    if (!cert.polarized_cross_tests_false)
        cert.failures.push_back("rulings at distinct nodes meet");

    // parameter scan: each line carries exactly the two chord parameters
    for (int i = 0; i < 3; ++i) {
        Matrix<T> base(2, 15, fld.zero());
        for (int c = 0; c < 15; ++c) {
            base.at(0, c) = gens[i][0][c];
            base.at(1, c) = gens[i][1][c];
        }
        std::size_t hits = 0;
        for_each_projective_point(p, 1, [&](const std::vector<uint32_t>& st) {
            std::vector<T> v = curve.eval(fld.from_int(st[0]),
                                          fld.from_int(st[1]));
            Matrix<T> S(3, 15, fld.zero());
            for (int c = 0; c < 15; ++c) {
                S.at(0, c) = base.at(0, c);
                S.at(1, c) = base.at(1, c);
                S.at(2, c) = v[c];
            }
            if (rank_of(S) == 2) ++hits;
        });
        cert.param_hits[i] = hits;
        if (hits != 2)
            cert.failures.push_back("line " + std::to_string(i + 1) + " meets " +
                                    std::to_string(hits) +
                                    " curve parameters, expected 2");
    }
    cert.pass = cert.failures.empty();
    return cert;
}

// ---------------------------------------------------------------------------
// Exhaustive linear section of the Grassmannian: every rational point of the
// projective span that satisfies all fifteen quadrics.
// ---------------------------------------------------------------------------

struct SliceHit {
    std::array<uint16_t, 8> coords{};  // span coefficients, canonical form
    std::array<uint16_t, 15> point{};  // normalized ambient coordinates
};

inline bool operator<(const SliceHit& a, const SliceHit& b) {
    return a.coords < b.coords;
}

class SliceSpaceTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline std::vector<SliceHit> slice_grassmannian(
    const std::vector<std::array<uint32_t, 15>>& basis, uint32_t p) {
    const std::size_t k = basis.size();
    if (k == 0 || k > 8)
        throw SliceSpaceTooLarge("slice_grassmannian: span dimension " +
                                 std::to_string(k) + " exceeds the P7 ceiling");
    if (p != 11 && p != 13 && p != 17)
        throw std::invalid_argument("slice_grassmannian: prime must be 11, 13 or 17");

    // scaled copies of each basis row
    std::vector<std::vector<std::array<uint32_t, 15>>> scaled(k);
    for (std::size_t r = 0; r < k; ++r) {
        scaled[r].resize(p);
        for (uint32_t a = 0; a < p; ++a)
            for (int c = 0; c < 15; ++c)
                scaled[r][a][c] = static_cast<uint32_t>(
                    static_cast<uint64_t>(basis[r][c]) * a % p);
    }
    struct Rel {
        int a, b, c, d, e, f;
    };
    std::array<Rel, 15> rels{};
    for (int m = 0; m < 15; ++m) {
        const auto& r = pluecker_relations()[m];
        rels[m] = {r.a, r.b, r.c, r.d, r.e, r.f};
    }
    ScanField F(p);

    // one task per (leading index, first free digit) block
    struct Task {
        std::size_t lead;
        int first_digit; // -1 when the leading row is the last one
    };
    std::vector<Task> tasks;
    for (std::size_t lead = 0; lead < k; ++lead) {
        if (lead + 1 < k)
            for (uint32_t a = 0; a < p; ++a)
                tasks.push_back({lead, static_cast<int>(a)});
        else
            tasks.push_back({lead, -1});
    }

    std::vector<std::vector<SliceHit>> results(tasks.size());
    auto run_task = [&](std::size_t ti) {
        const Task& task = tasks[ti];
        auto& hits = results[ti];
        std::array<uint32_t, 15> acc{};
        for (int c = 0; c < 15; ++c) acc[c] = basis[task.lead][c];
        std::array<uint16_t, 8> digits{};
        digits[task.lead] = 1;

        auto emit = [&](const std::array<uint32_t, 15>& w) {
            for (const auto& r : rels) {
                uint32_t v = F.sub(
                    F.add(F.mul(w[r.a], w[r.b]), F.mul(w[r.e], w[r.f])),
                    F.mul(w[r.c], w[r.d]));
                if (v != 0) return;
            }
            // normalize the ambient point
            int lead_c = 0;
            while (lead_c < 15 && w[lead_c] == 0) ++lead_c;
            if (lead_c == 15) return; // zero vector cannot arise from a basis
            SliceHit h;
            h.coords = digits;
            const uint32_t s = F.inv[w[lead_c]];
            for (int c = 0; c < 15; ++c)
                h.point[c] = static_cast<uint16_t>(F.mul(w[c], s));
            hits.push_back(h);
        };

        // depth-first over the free digits after the leading one
        auto rec = [&](auto&& self, std::size_t level,
                       const std::array<uint32_t, 15>& cur) -> void {
            if (level == k) {
                emit(cur);
                return;
            }
            for (uint32_t a = 0; a < p; ++a) {
                std::array<uint32_t, 15> next;
                const auto& row = scaled[level][a];
                for (int c = 0; c < 15; ++c) next[c] = F.add(cur[c], row[c]);
                digits[level] = static_cast<uint16_t>(a);
                self(self, level + 1, next);
            }
        };

        if (task.first_digit < 0) {
            emit(acc);
        } else {
            const uint32_t a0 = static_cast<uint32_t>(task.first_digit);
            std::array<uint32_t, 15> start;
            const auto& row = scaled[task.lead + 1][a0];
            for (int c = 0; c < 15; ++c) start[c] = F.add(acc[c], row[c]);
            digits[task.lead + 1] = static_cast<uint16_t>(a0);
            rec(rec, task.lead + 2, start);
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || tasks.size() <= 1) {
        for (std::size_t ti = 0; ti < tasks.size(); ++ti) run_task(ti);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next_task{0};
        const unsigned nthreads = std::min<unsigned>(hw, 8);
        for (unsigned w = 0; w < nthreads; ++w)
            pool.emplace_back([&] {
                while (true) {
                    std::size_t ti = next_task.fetch_add(1);
                    if (ti >= tasks.size()) return;
                    run_task(ti);
                }
            });
        for (auto& t : pool) t.join();
    }

    std::vector<SliceHit> all;
    for (auto& r : results)
        all.insert(all.end(), r.begin(), r.end());
    std::sort(all.begin(), all.end());
    return all;
}

template <class F>
std::vector<typename F::Scalar> hit_point(const F& fld, const SliceHit& h) {
    std::vector<typename F::Scalar> v;
    v.reserve(15);
    for (int c = 0; c < 15; ++c) v.push_back(fld.from_int(h.point[c]));
    return v;
}

inline std::array<uint16_t, 15> normalized_key15(const std::vector<Fp>& v) {
    auto n = projective_normalize(v);
    std::array<uint16_t, 15> k{};
    for (int c = 0; c < 15; ++c) k[c] = static_cast<uint16_t>(n[c].value());
    return k;
}

// ---------------------------------------------------------------------------
// Census of the codimension-7 slice through the ruling curve's span: the
// curve itself, the three bisecants, and a residual quartic.
// ---------------------------------------------------------------------------

struct SliceReport {
    bool pass = false;
    std::vector<std::string> failures;
    uint32_t prime = 0;
    uint64_t total_hits = 0;
    std::size_t gamma_count = 0;                 // expected p+1
    std::array<std::size_t, 3> line_counts{};    // expected p+1 each
    std::size_t residual_count = 0;
    std::size_t residual_span_rank = 0;          // expected 5 (a P4)
    std::array<std::size_t, 3> gamma_line_crossings{};   // expected 2 each
    std::array<std::size_t, 3> residual_line_closure{};  // expected 1 each
    std::size_t gamma_residual_rational = 0;     // 0..3 rational crossings
    bool no_point_on_two_lines = false;
    bool census_consistent = false;
    bool all_hits_on_quadrics = false;
    int64_t genus_partial_measured = 0; // curve plus bisecants, expected 3
    int64_t genus_full = 0;             // plus residual quartic, expected 8
};

// The residual quartic meets the curve in a degree-3 cycle whose points
// need not all be rational; the census identity accounts for that.
inline SliceReport residual_analysis(const std::vector<SliceHit>& hits,
                                     const RulingCurve<Fp>& curve,
                                     const SecantFrame<Fp>& frame,
                                     uint32_t p) {
    FpField fld(p);
    SliceReport rep;
    rep.prime = p;
    rep.total_hits = hits.size();

    // rational points of the curve
    std::set<std::array<uint16_t, 15>> gamma_set;
    for_each_projective_point(p, 1, [&](const std::vector<uint32_t>& st) {
        auto v = curve.eval(fld.from_int(st[0]), fld.from_int(st[1]));
        if (vec_is_zero(v))
            throw NonGenericInstance("residual_analysis: curve vanishes");
        gamma_set.insert(normalized_key15(v));
    });
    if (gamma_set.size() != p + 1)
        rep.failures.push_back("curve points collide over F_p");

    // bisecant generators and their span annihilators
    std::array<std::array<std::vector<Fp>, 2>, 3> gens;
    std::array<std::vector<std::vector<Fp>>, 3> line_ann;
    for (int i = 0; i < 3; ++i) {
        auto tx = ruling_parameter(frame.x_param(i));
        auto ty = ruling_parameter(frame.y_param(i));
        gens[i][0] = curve.eval(tx[0], tx[1]);
        gens[i][1] = curve.eval(ty[0], ty[1]);
        Matrix<Fp> M(2, 15, fld.zero());
        for (int c = 0; c < 15; ++c) {
            M.at(0, c) = gens[i][0][c];
            M.at(1, c) = gens[i][1][c];
        }
        auto [rank, kernel] = rref_rank(M);
        if (rank != 2)
            throw NonGenericInstance("residual_analysis: degenerate bisecant");
        line_ann[i] = kernel; // 13 forms vanishing on the line
    }
    auto on_line = [&](const std::vector<Fp>& v, int i) {
        for (const auto& form : line_ann[i]) {
            Fp acc = fld.zero();
            for (int c = 0; c < 15; ++c) acc += form[c] * v[c];
            if (!is_zero(acc)) return false;
        }
        return true;
    };

    rep.all_hits_on_quadrics = true;
    rep.no_point_on_two_lines = true;
    std::vector<std::vector<Fp>> residual_pts;
    std::vector<std::pair<int, std::vector<Fp>>> line_pts; // (line, point)
    std::size_t gamma_line_cross_total = 0;
    for (const auto& h : hits) {
        auto v = hit_point(fld, h);
        if (!on_grassmannian(v)) rep.all_hits_on_quadrics = false;
        const bool on_gamma = gamma_set.count(h.point) > 0;
        int lines_here = 0, line_idx = -1;
        for (int i = 0; i < 3; ++i)
            if (on_line(v, i)) {
                ++lines_here;
                line_idx = i;
            }
        if (lines_here > 1) rep.no_point_on_two_lines = false;
        if (on_gamma) ++rep.gamma_count;
        if (line_idx >= 0) {
            rep.line_counts[line_idx] += 1;
            line_pts.emplace_back(line_idx, v);
            if (on_gamma) {
                rep.gamma_line_crossings[line_idx] += 1;
                ++gamma_line_cross_total;
            }
        } else if (!on_gamma) {
            residual_pts.push_back(v);
        }
    }
    rep.residual_count = residual_pts.size();

    if (!rep.all_hits_on_quadrics)
        rep.failures.push_back("a slice point fails the quadric recheck");
    if (!rep.no_point_on_two_lines)
        rep.failures.push_back("a slice point lies on two bisecants");
    if (rep.gamma_count != p + 1)
        rep.failures.push_back("curve census is not p+1");
    for (int i = 0; i < 3; ++i) {
        if (rep.line_counts[i] != p + 1)
            rep.failures.push_back("line census is not p+1");
        if (rep.gamma_line_crossings[i] != 2)
            rep.failures.push_back("curve meets line " + std::to_string(i + 1) +
                                   " in " +
                                   std::to_string(rep.gamma_line_crossings[i]) +
                                   " rational points, expected 2");
    }

    if (residual_pts.size() < 5) {
        rep.failures.push_back("residual set too small to span");
        rep.pass = false;
        return rep;
    }
    Matrix<Fp> RM(residual_pts.size(), 15, fld.zero());
    for (std::size_t r = 0; r < residual_pts.size(); ++r)
        for (int c = 0; c < 15; ++c) RM.at(r, c) = residual_pts[r][c];
    auto [rrank, rann] = rref_rank(RM);
    rep.residual_span_rank = rrank;
    if (rrank != 5)
        rep.failures.push_back("residual span rank " + std::to_string(rrank) +
                               ", expected 5");
    auto in_residual_span = [&](const std::vector<Fp>& v) {
        for (const auto& form : rann) {
            Fp acc = fld.zero();
            for (int c = 0; c < 15; ++c) acc += form[c] * v[c];
            if (!is_zero(acc)) return false;
        }
        return true;
    };
    for (const auto& [i, v] : line_pts) {
        if (!in_residual_span(v)) continue;
        if (gamma_set.count(normalized_key15(v)) > 0) continue;
        rep.residual_line_closure[i] += 1;
    }
    for (int i = 0; i < 3; ++i)
        if (rep.residual_line_closure[i] != 1)
            rep.failures.push_back(
                "residual closure meets line " + std::to_string(i + 1) + " in " +
                std::to_string(rep.residual_line_closure[i]) +
                " points, expected 1");

    // rational crossings of curve and residual quartic
    for (const auto& h : hits) {
        auto v = hit_point(fld, h);
        if (gamma_set.count(h.point) > 0 && in_residual_span(v)) {
            bool on_some_line = false;
            for (int i = 0; i < 3; ++i)
                if (on_line(v, i)) on_some_line = true;
            if (!on_some_line) ++rep.gamma_residual_rational;
        }
    }
    if (rep.gamma_residual_rational > 3)
        rep.failures.push_back("more than 3 rational curve-quartic crossings");

    // residual census: p+1 quartic points minus the rational crossings
    std::size_t closure_total = 0;
    for (int i = 0; i < 3; ++i) closure_total += rep.residual_line_closure[i];
    const std::size_t expected_residual =
        p + 1 - closure_total - rep.gamma_residual_rational;
    rep.census_consistent = (rep.residual_count == expected_residual);
    if (!rep.census_consistent)
        rep.failures.push_back("residual count " +
                               std::to_string(rep.residual_count) +
                               " differs from census prediction " +
                               std::to_string(expected_residual));

    // genus bookkeeping: measured crossings for the partial configuration,
    // lattice value 3 for the quartic-curve pairing in the full one
    rep.genus_partial_measured =
        static_cast<int64_t>(gamma_line_cross_total) - 4 + 1;
    int64_t full_crossings = static_cast<int64_t>(gamma_line_cross_total);
    for (int i = 0; i < 3; ++i)
        full_crossings += static_cast<int64_t>(rep.residual_line_closure[i]);
    rep.genus_full = full_crossings + 3 - 5 + 1;
    if (rep.genus_partial_measured != 3)
        rep.failures.push_back("partial-configuration genus is not 3");
    if (rep.genus_full != 8)
        rep.failures.push_back("full-configuration genus is not 8");

    rep.pass = rep.failures.empty();
    return rep;
}

} // namespace scrollcert
