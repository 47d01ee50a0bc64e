#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scrollcert/cubics.hpp"
#include "scrollcert/grass.hpp"
#include "scrollcert/kappa.hpp"
#include "scrollcert/lattice.hpp"
#include "scrollcert/nodescan.hpp"
#include "scrollcert/version.hpp"

namespace scrollcert {

using json = nlohmann::json;

struct Config {
    uint32_t prime = 1009;       // parameter-plane scans and frames
    uint32_t slice_prime = 13;   // Grassmannian slices (11, 13 or 17)
    uint32_t rank_prime = 10007; // pure rank screening
    uint64_t seed = 42;
    bool exact_rationals = false; // extra rational re-runs where optional
};

enum class Verdict { pass, fail, heuristic_pass };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "heuristic-pass";
    }
}

struct Certificate {
    std::string claim_id;
    std::string anchor;
    uint32_t prime = 0;
    uint32_t slice_prime = 0;
    uint64_t seed = 0;
    Verdict verdict = Verdict::fail;
    json witnesses;
    int64_t elapsed_ms = 0;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

namespace certdetail {

inline json point_json(const std::vector<Fp>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.value());
    return a;
}

template <class T, std::size_t N>
json array_json(const std::array<T, N>& a) {
    json out = json::array();
    for (const auto& x : a) out.push_back(x);
    return out;
}

inline json frame_json(const SecantFrame<Fp>& f) {
    json j;
    j["prime"] = f.origin.p;
    j["seed"] = f.origin.seed;
    j["attempts"] = f.origin.attempts;
    json params = json::array();
    for (const auto& pt : f.param_points) params.push_back(point_json(pt));
    j["parameter_points"] = params;
    json chords = json::array();
    for (int i = 0; i < 3; ++i) {
        json c;
        c["coefficient"] = f.origin.chord_c[i];
        c["point"] = point_json(f.chord_points[i]);
        chords.push_back(c);
    }
    j["chords"] = chords;
    return j;
}

// Frames for retries: the attempt index shifts the sampling stream while
// keeping every trial replayable from (prime, seed, attempt).
inline SecantFrame<Fp> frame_for(uint32_t p, uint64_t seed, uint32_t attempt) {
    return sample_secant_frame(p, attempt == 0 ? seed : mix_seed(seed, attempt));
}

inline json lattice_class_json(const LatticeClass& c) {
    json a = json::array();
    for (auto x : c) a.push_back(x);
    return a;
}

} // namespace certdetail

// ---------------------------------------------------------------------------
// claim runners
// ---------------------------------------------------------------------------

namespace runners {

inline void discriminant26(const Config&, Certificate& cert) {
    const int64_t det = discriminant2({7, 25});
    // deg 7 and discriminant 26 force the self-intersection
    const int64_t forced_R2 = (26 + 7 * 7) / 3;
    const bool exact = (26 + 49) % 3 == 0;
    cert.witnesses["gram"] = {{"matrix", {{3, 7}, {7, 25}}}, {"det", det}};
    cert.witnesses["forced_self_intersection"] = forced_R2;
    cert.verdict = (det == 26 && exact && forced_R2 == 25 &&
                    discriminant2({7, forced_R2}) == 26)
                       ? Verdict::pass
                       : Verdict::fail;
}

inline void double_point3(const Config&, Certificate& cert) {
    const int64_t septic = double_point({7, 25, 8, -9, 4});
    const int64_t quintic = double_point({5, 13, 8, -7, 4});
    // quintic control data is itself derived: disc<h^2,R> = 14 at degree 5
    const int64_t quintic_disc = discriminant2({5, 13});
    // synthetic zero of the formula
    const int64_t synth = double_point({9, 6 * 9 + 3 * (-7) + 8 - 4, 8, -7, 4});
    cert.witnesses["septic"] = septic;
    cert.witnesses["quintic_control"] = quintic;
    cert.witnesses["quintic_discriminant"] = quintic_disc;
    cert.witnesses["synthetic_zero"] = synth;
    cert.verdict = (septic == 3 && quintic == 0 && quintic_disc == 14 &&
                    synth == 0)
                       ? Verdict::pass
                       : Verdict::fail;
}

inline void bb_gamma(const Config&, Certificate& cert) {
    const BBClass gamma14{2, -7, 14};
    const BBClass f14{1, 0, 14}, d14{0, 1, 14};
    const BBClass gamma8{2, -5, 8};
    cert.witnesses["q_gamma_genus14"] = bb_q(gamma14, gamma14);
    cert.witnesses["q_f_f"] = bb_q(f14, f14);
    cert.witnesses["q_f_delta"] = bb_q(f14, d14);
    cert.witnesses["q_delta_delta"] = bb_q(d14, d14);
    cert.witnesses["q_gamma_genus8"] = bb_q(gamma8, gamma8);
    cert.verdict = (bb_q(gamma14, gamma14) == 6 && bb_q(f14, f14) == 26 &&
                    bb_q(f14, d14) == 0 && bb_q(d14, d14) == -2 &&
                    bb_q(gamma8, gamma8) == 6)
                       ? Verdict::pass
                       : Verdict::fail;
}

inline void scrolls1(const Config&, Certificate& cert) {
    auto c = scrolls1_certificate();
    cert.witnesses["linear_solution"] = {
        {"a", "7*a1"}, {"b", "52*a1 - 1"}};
    cert.witnesses["reduced_inequality"] = {c.alpha, c.beta, c.gamma};
    cert.witnesses["scan_radius"] = c.scan_radius;
    json sols = json::array();
    for (auto s : c.integer_solutions) sols.push_back(s);
    cert.witnesses["integer_solutions"] = sols;
    cert.witnesses["concluded_class"] = {{"a", c.concluded.a},
                                         {"b", c.concluded.b}};
    cert.verdict = (c.alpha == 39 && c.beta == -26 && c.gamma == -1 &&
                    c.integer_solutions == std::vector<int64_t>{0} &&
                    c.concluded_is_delta_p)
                       ? Verdict::pass
                       : Verdict::fail;
}

inline void c14_remark(const Config&, Certificate& cert) {
    const CurveClass quartic{3, 16, 8}; // 3 f_p - 16 delta_p at genus 8
    Rat q = q_curve(quartic);
    const CurveClass quintic{0, -1, 8};
    cert.witnesses["q_quartic_class"] = q.get_str();
    cert.witnesses["q_delta_p"] = q_curve(quintic).get_str();
    cert.verdict =
        (q == Rat(-2) && q_curve(quintic) == Rat(-1) / 2) ? Verdict::pass
                                                          : Verdict::fail;
}

inline void scroll_ideal(const Config& cfg, Certificate& cert) {
    FpField fld(cfg.prime);
    Rng rng(mix_seed(cfg.seed, 0x5c011));
    uint64_t checked = 0, base_hits = 0;
    bool all_vanish = true;
    while (checked < 1000) {
        std::vector<Fp> z{
            fld.from_int(static_cast<int64_t>(rng.below(cfg.prime))),
            fld.from_int(static_cast<int64_t>(rng.below(cfg.prime))),
            fld.from_int(static_cast<int64_t>(rng.below(cfg.prime)))};
        if (point_is_zero(z)) continue;
        auto w = scroll_eval(z);
        if (point_is_zero(w)) { // base point of the linear system
            ++base_hits;
            continue;
        }
        ++checked;
        if (!all_zero(determinantal_residuals(w, DeterminantalSystem::scroll)))
            all_vanish = false;
        if (!all_zero(determinantal_residuals(w, DeterminantalSystem::secant)))
            all_vanish = false;
    }
    // coordinate checks
    auto e_at = [&](int64_t a, int64_t b, int64_t c) {
        return scroll_eval(std::vector<Fp>{fld.from_int(a), fld.from_int(b),
                                           fld.from_int(c)});
    };
    auto p010 = e_at(0, 1, 0);
    bool coord_ok = !point_is_zero(p010) && p010[4] == fld.one();
    for (int k = 0; k < 9; ++k)
        if (k != 4 && !is_zero(p010[k])) coord_ok = false;
    const bool base_indeterminate = point_is_zero(e_at(1, 0, 0));
    cert.witnesses["points_checked"] = checked;
    cert.witnesses["all_minors_vanish"] = all_vanish;
    cert.witnesses["unit_point_hits_quartic_slot"] = coord_ok;
    cert.witnesses["base_point_indeterminate"] = base_indeterminate;
    cert.verdict = (all_vanish && coord_ok && base_indeterminate)
                       ? Verdict::pass
                       : Verdict::fail;
}

inline void secant_dim5(const Config& cfg, Certificate& cert) {
    FpField fld(cfg.prime);
    SecantMinorSystem<FpField> sys(fld);
    Rng rng(mix_seed(cfg.seed, 0xd105));
    uint64_t secant_rank3 = 0, scroll_rank_low = 0, samples = 0;
    while (samples < 200) {
        auto rnd_param = [&] {
            std::vector<Fp> z{
                fld.from_int(static_cast<int64_t>(rng.below(cfg.prime))),
                fld.from_int(static_cast<int64_t>(rng.below(cfg.prime))),
                fld.from_int(static_cast<int64_t>(rng.below(cfg.prime)))};
            return z;
        };
        auto zx = rnd_param(), zy = rnd_param();
        if (point_is_zero(zx) || point_is_zero(zy)) continue;
        auto x = scroll_eval(zx), y = scroll_eval(zy);
        if (point_is_zero(x) || point_is_zero(y)) continue;
        Fp c = fld.from_int(static_cast<int64_t>(rng.nonzero_below(cfg.prime)));
        std::vector<Fp> w;
        for (int k = 0; k < 9; ++k) w.push_back(x[k] + c * y[k]);
        if (point_is_zero(w)) continue;
        if (all_zero(determinantal_residuals(w, DeterminantalSystem::scroll)))
            continue; // chord degenerated onto the scroll; resample
        ++samples;
        if (!all_zero(determinantal_residuals(w, DeterminantalSystem::secant)))
            continue; // cannot happen for a chord; counts as failure
        if (rank_of(sys.jacobian_at(w, fld)) == 3) ++secant_rank3;
    }
    // on the scroll the tangent space is bigger: rank drops below 3
    uint64_t scroll_samples = 0;
    while (scroll_samples < 20) {
        std::vector<Fp> z{
            fld.from_int(static_cast<int64_t>(rng.below(cfg.prime))),
            fld.from_int(static_cast<int64_t>(rng.below(cfg.prime))),
            fld.from_int(static_cast<int64_t>(rng.below(cfg.prime)))};
        if (point_is_zero(z)) continue;
        auto w = scroll_eval(z);
        if (point_is_zero(w)) continue;
        ++scroll_samples;
        if (rank_of(sys.jacobian_at(w, fld)) < 3) ++scroll_rank_low;
    }
    cert.witnesses["secant_samples"] = samples;
    cert.witnesses["jacobian_rank3"] = secant_rank3;
    cert.witnesses["scroll_samples"] = scroll_samples;
    cert.witnesses["scroll_rank_below3"] = scroll_rank_low;
    cert.verdict = (secant_rank3 == samples && scroll_rank_low == scroll_samples)
                       ? Verdict::pass
                       : Verdict::fail;
}

inline void secant_slice3(const Config& cfg, Certificate& cert) {
    json attempts = json::array();
    for (uint32_t attempt = 0; attempt < 16; ++attempt) {
        SecantFrame<Fp> frame = certdetail::frame_for(cfg.prime, cfg.seed, attempt);
        auto slice = secant_slice(frame, cfg.prime);
        json a;
        a["attempt"] = attempt;
        a["frame"] = certdetail::frame_json(frame);
        a["candidates"] = slice.candidates;
        a["solutions"] = slice.solutions.size();
        json ranks = json::array();
        for (const auto& s : slice.solutions)
            ranks.push_back(s.restricted_jacobian_rank);
        a["jacobian_ranks"] = ranks;
        attempts.push_back(a);
        if (slice.solutions_are_chord_points && slice.all_transverse &&
            slice.candidates ==
                projective_point_count(cfg.prime, 2)) {
            cert.witnesses["attempts"] = attempts;
            cert.witnesses["solution_count"] = slice.solutions.size();
            cert.verdict = Verdict::pass;
            return;
        }
    }
    cert.witnesses["attempts"] = attempts;
    cert.verdict = Verdict::fail;
}

inline void nodes3(const Config& cfg, Certificate& cert) {
    FpField fld(cfg.prime);
    json attempts = json::array();
    for (uint32_t attempt = 0; attempt < 16; ++attempt) {
        auto frame = certdetail::frame_for(cfg.prime, cfg.seed, attempt);
        auto proj = build_projection(fld, frame);
        auto nc = certify_nodes(frame, proj, cfg.prime, cfg.seed);
        json a;
        a["attempt"] = attempt;
        a["frame"] = certdetail::frame_json(frame);
        a["points_scanned"] = nc.points_scanned;
        a["collisions"] = nc.collisions.size();
        a["collisions_are_chords"] = nc.collisions_are_chords;
        a["node_span_rank"] = nc.node_span_rank;
        a["plane_hits"] = nc.plane_hit_count;
        a["immersion_checks"] = nc.immersion_checks;
        a["failures"] = nc.failures;
        attempts.push_back(a);
        if (nc.pass) {
            cert.witnesses["attempts"] = attempts;
            cert.witnesses["scope"] = nc.scope_note;
            cert.verdict = Verdict::pass;
            return;
        }
    }
    cert.witnesses["attempts"] = attempts;
    cert.verdict = Verdict::fail;
}

inline void cubics13(const Config& cfg, Certificate& cert) {
    FpField fld(cfg.prime);
    QQField qq;
    json attempts = json::array();
    for (uint32_t attempt = 0; attempt < 16; ++attempt) {
        auto frame = certdetail::frame_for(cfg.prime, cfg.seed, attempt);
        auto proj = build_projection(fld, frame);
        auto rep = cubics_through_scroll(fld, frame, proj);
        json a;
        a["attempt"] = attempt;
        a["frame"] = certdetail::frame_json(frame);
        a["modular"] = {{"rows", rep.rows},     {"cols", rep.cols},
                        {"rank", rep.rank},     {"h0", rep.h0},
                        {"h1", rep.h1},         {"nodes", rep.node_conditions},
                        {"sing", rep.sing_dim}, {"sing_ambient", rep.sing_ambient}};
        const bool mod_ok = rep.rank == 43 && rep.h0 == 13 && rep.h1 == 0 &&
                            rep.node_conditions == 53 && rep.sing_dim == 40 &&
                            rep.sing_ambient == 46 && rep.rows == 91 &&
                            rep.cols == 56;
        if (mod_ok) {
            // promote over the rationals from the same integer data
            auto qframe = try_realize_frame(qq, frame.origin);
            if (qframe) {
                auto qproj = build_projection(qq, *qframe);
                auto qrep = cubics_through_scroll(qq, *qframe, qproj);
                a["rational"] = {{"rank", qrep.rank},
                                 {"h0", qrep.h0},
                                 {"h1", qrep.h1},
                                 {"nodes", qrep.node_conditions},
                                 {"sing", qrep.sing_dim}};
                attempts.push_back(a);
                if (qrep.rank == 43 && qrep.h0 == 13 && qrep.h1 == 0 &&
                    qrep.node_conditions == 53 && qrep.sing_dim == 40) {
                    cert.witnesses["attempts"] = attempts;
                    cert.witnesses["exact_rational_rerun"] = true;
                    cert.verdict = Verdict::pass;
                    return;
                }
                continue;
            }
        }
        attempts.push_back(a);
    }
    cert.witnesses["attempts"] = attempts;
    cert.verdict = Verdict::fail;
}

inline void unique_sextic_claim(const Config& cfg, Certificate& cert) {
    FpField fld(cfg.prime);
    json attempts = json::array();
    for (uint32_t attempt = 0; attempt < 16; ++attempt) {
        auto frame = certdetail::frame_for(cfg.prime, cfg.seed, attempt);
        json a;
        a["attempt"] = attempt;
        try {
            auto rep = unique_sextic(fld, frame);
            a["ambient"] = rep.ambient;
            a["kernel_dim"] = rep.kernel_dim;
            a["vanishes_at_all_six"] = rep.vanishes_at_all_six;
            a["section"] = rep.section;
            attempts.push_back(a);
            bool ok = rep.ambient == 7 && rep.kernel_dim == 1 &&
                      rep.vanishes_at_all_six;
            if (ok && cfg.exact_rationals) {
                QQField qq;
                auto qframe = try_realize_frame(qq, frame.origin);
                ok = qframe && unique_sextic(qq, *qframe).kernel_dim == 1;
            }
            if (ok) {
                cert.witnesses["attempts"] = attempts;
                cert.verdict = Verdict::pass;
                return;
            }
        } catch (const std::exception& e) {
            a["error"] = e.what();
            attempts.push_back(a);
        }
    }
    cert.witnesses["attempts"] = attempts;
    cert.verdict = Verdict::fail;
}

inline void smooth_cubic(const Config& cfg, Certificate& cert) {
    const uint32_t p = (cfg.slice_prime <= 13 && cfg.slice_prime % 3 != 0)
                           ? cfg.slice_prime
                           : 11;
    json attempts = json::array();
    for (uint32_t attempt = 0; attempt < 16; ++attempt) {
        json a;
        a["attempt"] = attempt;
        a["prime"] = p;
        try {
            FpField fld(p);
            auto frame = certdetail::frame_for(p, cfg.seed, attempt);
            auto proj = build_projection(fld, frame);
            auto rep = random_cubic_smoothness(frame, proj, cfg.seed);
            a["kernel_dim"] = rep.kernel_dim;
            a["contains_scroll"] = rep.contains_scroll;
            a["node_gradients_nonzero"] = rep.node_gradients_nonzero;
            a["points_scanned"] = rep.points_scanned;
            a["no_rational_singular_point"] = rep.no_rational_singular_point;
            a["cubic"] = rep.cubic_coefficients;
            if (rep.singular_witness)
                a["singular_witness"] = certdetail::array_json(*rep.singular_witness);
            attempts.push_back(a);
            if (rep.contains_scroll && rep.node_gradients_nonzero &&
                rep.no_rational_singular_point) {
                cert.witnesses["attempts"] = attempts;
                cert.witnesses["scope"] =
                    "smoothness checked at rational points of a small field "
                    "only; geometric smoothness is not certified";
                cert.verdict = Verdict::heuristic_pass;
                return;
            }
        } catch (const std::exception& e) {
            a["error"] = e.what();
            attempts.push_back(a);
        }
    }
    cert.witnesses["attempts"] = attempts;
    cert.verdict = Verdict::fail;
}

inline void gamma_span7(const Config& cfg, Certificate& cert) {
    FpField fld(cfg.prime);
    json attempts = json::array();
    for (uint32_t attempt = 0; attempt < 16; ++attempt) {
        json a;
        a["attempt"] = attempt;
        try {
            auto frame = certdetail::frame_for(cfg.prime, cfg.seed, attempt);
            auto proj = build_projection(fld, frame);
            auto curve = ruling_curve(fld, proj);
            a["degree"] = curve.degree;
            a["span_rank"] = curve.span_rank;
            a["content_removed"] = curve.content_removed;
            // random residual spot checks on the quadrics
            Rng rng(mix_seed(cfg.seed, 0x9a77a));
            bool on_g = true;
            for (int k = 0; k < 20; ++k) {
                Fp s = fld.from_int(static_cast<int64_t>(rng.below(cfg.prime)));
                Fp t = fld.from_int(static_cast<int64_t>(rng.below(cfg.prime)));
                if (is_zero(s) && is_zero(t)) continue;
                auto v = curve.eval(s, t);
                if (vec_is_zero(v) || !on_grassmannian(v)) on_g = false;
            }
            a["random_points_on_quadrics"] = on_g;
            bool ok = curve.degree == 7 && curve.span_rank == 8 && on_g;
            if (ok && cfg.exact_rationals) {
                QQField qq;
                auto qframe = try_realize_frame(qq, frame.origin);
                if (qframe) {
                    auto qproj = build_projection(qq, *qframe);
                    auto qcurve = ruling_curve(qq, qproj);
                    a["rational_degree"] = qcurve.degree;
                    a["rational_span_rank"] = qcurve.span_rank;
                    ok = qcurve.degree == 7 && qcurve.span_rank == 8;
                } else {
                    ok = false;
                }
            }
            attempts.push_back(a);
            if (ok) {
                cert.witnesses["attempts"] = attempts;
                cert.verdict = Verdict::pass;
                return;
            }
        } catch (const std::exception& e) {
            a["error"] = e.what();
            attempts.push_back(a);
        }
    }
    cert.witnesses["attempts"] = attempts;
    cert.verdict = Verdict::fail;
}

inline void bisecants3(const Config& cfg, Certificate& cert) {
    FpField fld(cfg.prime);
    json attempts = json::array();
    for (uint32_t attempt = 0; attempt < 16; ++attempt) {
        json a;
        a["attempt"] = attempt;
        try {
            auto frame = certdetail::frame_for(cfg.prime, cfg.seed, attempt);
            auto proj = build_projection(fld, frame);
            auto curve = ruling_curve(fld, proj);
            auto bc = bisecant_certificate(fld, curve, frame, cfg.prime);
            a["rulings_meet"] = certdetail::array_json(bc.rulings_meet);
            a["parameter_hits"] = certdetail::array_json(bc.param_hits);
            a["pairwise_disjoint"] = bc.pairwise_disjoint;
            a["cross_incidences_absent"] = bc.polarized_cross_tests_false;
            a["failures"] = bc.failures;
            attempts.push_back(a);
            if (bc.pass) {
                cert.witnesses["attempts"] = attempts;
                cert.witnesses["bisecant_count"] = 3;
                cert.verdict = Verdict::pass;
                return;
            }
        } catch (const std::exception& e) {
            a["error"] = e.what();
            attempts.push_back(a);
        }
    }
    cert.witnesses["attempts"] = attempts;
    cert.verdict = Verdict::fail;
}

inline std::vector<uint32_t> slice_prime_rotation(uint32_t preferred) {
    std::vector<uint32_t> order{preferred};
    for (uint32_t q : {17u, 11u, 13u})
        if (q != preferred) order.push_back(q);
    return order;
}

inline void slice_genus8(const Config& cfg, Certificate& cert) {
    json attempts = json::array();
    auto primes = slice_prime_rotation(cfg.slice_prime);
    for (uint32_t p : primes) {
        FpField fld(p);
        for (uint32_t attempt = 0; attempt < 6; ++attempt) {
            json a;
            a["prime"] = p;
            a["attempt"] = attempt;
            try {
                auto frame = certdetail::frame_for(
                    p, cfg.seed, attempt + 101 * (p != primes.front()));
                auto proj = build_projection(fld, frame);
                auto curve = ruling_curve(fld, proj);
                std::vector<std::array<uint32_t, 15>> basis(8);
                for (int d = 0; d <= 7; ++d)
                    for (int c = 0; c < 15; ++c)
                        basis[d][c] = curve.coeffs[c][d].value();
                auto hits = slice_grassmannian(basis, p);
                auto rep = residual_analysis(hits, curve, frame, p);
                a["total_hits"] = rep.total_hits;
                a["gamma_points"] = rep.gamma_count;
                a["line_points"] = certdetail::array_json(rep.line_counts);
                a["residual_points"] = rep.residual_count;
                a["residual_span_rank"] = rep.residual_span_rank;
                a["gamma_line_crossings"] =
                    certdetail::array_json(rep.gamma_line_crossings);
                a["residual_line_closure"] =
                    certdetail::array_json(rep.residual_line_closure);
                a["gamma_residual_rational"] = rep.gamma_residual_rational;
                a["genus_partial"] = rep.genus_partial_measured;
                a["genus_full"] = rep.genus_full;
                a["failures"] = rep.failures;
                attempts.push_back(a);
                if (rep.pass) {
                    cert.witnesses["attempts"] = attempts;
                    cert.witnesses["prime_used"] = p;
                    cert.witnesses["genus_ledger"] = {
                        {"curve_plus_lines", rep.genus_partial_measured},
                        {"full_section", rep.genus_full},
                        {"lattice_partial", arith_genus({0, 2, 3, 4}, gram_L())},
                        {"lattice_full", arith_genus({0, 1, 2, 3, 4}, gram_L())}};
                    cert.verdict = Verdict::pass;
                    return;
                }
            } catch (const std::exception& e) {
                a["error"] = e.what();
                attempts.push_back(a);
            }
        }
    }
    cert.witnesses["attempts"] = attempts;
    cert.verdict = Verdict::fail;
}

inline void gram_l(const Config&, Certificate& cert) {
    auto L = gram_L();
    auto rep = gram_report(L);
    cert.witnesses["symmetric"] = rep.symmetric;
    cert.witnesses["even"] = rep.even_diagonal;
    cert.witnesses["signature"] = {rep.signature.plus, rep.signature.minus};
    cert.witnesses["c_square"] = rep.c_square;
    cert.witnesses["c_degrees"] = certdetail::array_json(rep.c_degrees);
    cert.witnesses["genus_partial"] = arith_genus({0, 2, 3, 4}, L);
    cert.witnesses["genus_full"] = arith_genus({0, 1, 2, 3, 4}, L);
    cert.verdict =
        (rep.symmetric && rep.even_diagonal && rep.signature.plus == 1 &&
         rep.signature.minus == 4 && rep.signature.zero == 0 &&
         rep.c_square == 14 &&
         rep.c_degrees == std::array<int64_t, 5>{7, 4, 1, 1, 1} &&
         arith_genus({0, 2, 3, 4}, L) == 3 &&
         arith_genus({0, 1, 2, 3, 4}, L) == 8)
            ? Verdict::pass
            : Verdict::fail;
}

inline json dio_case_json(const ReducedDiophantine& r,
                          const DiophantineSolutions& s) {
    json a;
    a["square"] = r.square;
    a["dot"] = r.dot;
    a["sum_z"] = {{"x", r.sx}, {"y", r.sy}, {"const", r.sc}};
    a["sum_z2"] = {{"xx", r.qxx}, {"xy", r.qxy}, {"yy", r.qyy},
                   {"x", r.qx},   {"y", r.qy},   {"const", r.qc}};
    a["box_radius"] = s.box_radius;
    json sols = json::array();
    for (const auto& v : s.solutions)
        sols.push_back(certdetail::lattice_class_json(v));
    a["solutions"] = sols;
    return a;
}

inline void very_ample(const Config&, Certificate& cert) {
    auto L = gram_L();
    bool ok = true;
    json cases = json::array();
    for (auto [sq, dot] : std::vector<std::pair<int64_t, int64_t>>{
             {0, 1}, {0, 2}, {-2, 0}}) {
        auto r = diophantine_reduce(L, sq, dot);
        auto s = diophantine_enumerate(r);
        cases.push_back(dio_case_json(r, s));
        if (!s.solutions.empty()) ok = false;
    }
    // positive control: square -2, degree 1 must recover the three lines
    auto rc = diophantine_reduce(L, -2, 1);
    auto sc = diophantine_enumerate(rc);
    json control = dio_case_json(rc, sc);
    std::vector<LatticeClass> want = {{0, 0, 1, 0, 0},
                                      {0, 0, 0, 1, 0},
                                      {0, 0, 0, 0, 1}};
    auto got = sc.solutions;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    const bool control_ok = got == want;
    // the printed reduction for the degree-1 case matches the derivation
    const bool printed_match =
        [&] {
            auto r = diophantine_reduce(L, 0, 1);
            return r.qxx == -15 && r.qxy == -12 && r.qyy == -5 && r.qx == 2 &&
                   r.qy == 1 && r.qc == 0;
        }();
    cert.witnesses["empty_cases"] = cases;
    cert.witnesses["positive_control"] = control;
    cert.witnesses["control_recovers_lines"] = control_ok;
    cert.witnesses["reduction_matches_printed_form"] = printed_match;
    cert.verdict =
        (ok && control_ok && printed_match) ? Verdict::pass : Verdict::fail;
}

inline void brill_noether(const Config&, Certificate& cert) {
    auto L = gram_L();
    bool derived_empty = true;
    json cases = json::array();
    std::vector<std::pair<int64_t, int64_t>> empties{
        {2, 7}, {2, 6}, {0, 1}, {0, 2}, {0, 3}, {0, 4}};
    for (auto [sq, dot] : empties) {
        auto r = diophantine_reduce(L, sq, dot);
        auto s = diophantine_enumerate(r);
        cases.push_back(dio_case_json(r, s));
        if (!s.solutions.empty()) derived_empty = false;
    }
    // the printed variant of the (2,7) reduction carries +1 where the
    // derivation gives -1; enumerate it anyway and refute its solutions
    // against the true quadratic constraints
    auto r_printed = diophantine_reduce(L, 2, 7);
    r_printed.qc = 1;
    auto s_printed = diophantine_enumerate(r_printed);
    json printed = dio_case_json(r_printed, s_printed);
    bool printed_refuted = true;
    json refutations = json::array();
    for (const auto& D : s_printed.solutions) {
        const int64_t d2 = class_dot(L, D, D);
        LatticeClass C{1, 1, 1, 1, 1};
        const int64_t dc = class_dot(L, D, C);
        json r;
        r["class"] = certdetail::lattice_class_json(D);
        r["square"] = d2;
        r["dot_C"] = dc;
        r["satisfies_original"] = (d2 == 2 && dc == 7);
        refutations.push_back(r);
        if (d2 == 2 && dc == 7) printed_refuted = false;
    }
    printed["refutations"] = refutations;
    cert.witnesses["derived_cases"] = cases;
    cert.witnesses["printed_variant"] = printed;
    cert.witnesses["printed_constant_discrepancy"] =
        "the printed reduction constant +1 differs from the derived -1; its "
        "spurious solutions fail the original square and degree constraints";
    cert.verdict =
        (derived_empty && printed_refuted) ? Verdict::pass : Verdict::fail;
}

inline void kappa_claim(const Config& cfg, Certificate& cert) {
    json attempts = json::array();
    auto primes = slice_prime_rotation(cfg.slice_prime);
    for (uint32_t p : primes) {
        FpField fld(p);
        for (uint32_t attempt = 0; attempt < 6; ++attempt) {
            json a;
            a["prime"] = p;
            a["attempt"] = attempt;
            Rng rng(mix_seed(cfg.seed, 0xca44a + attempt * 7 + p));
            KappaInput in;
            for (int i = 0; i < 3; ++i) {
                std::vector<Fp> w;
                for (int c = 0; c < 6; ++c)
                    w.push_back(
                        fld.from_int(static_cast<int64_t>(rng.below(p))));
                in.extra_points[i] = w;
            }
            try {
                auto kc = kappa(in, p, cfg.seed);
                a["q0_span_rank"] = kc.q0_span_rank;
                a["full_span_rank"] = kc.full_span_rank;
                a["total_hits"] = kc.total_hits;
                a["q0_points"] = kc.q0_count;
                a["line_points"] = certdetail::array_json(kc.line_counts);
                json lines = json::array();
                for (const auto& w : kc.lines) {
                    json l;
                    l["divisor_degree"] = w.divisor_degree;
                    l["conjugate_pair"] = w.conjugate_pair;
                    l["nodes_reduced"] = w.nodes_reduced;
                    l["crossing_lines_meet"] = w.crossing_lines_meet;
                    l["node_rational"] = w.node_rational;
                    l["node_in_plane"] = w.node_in_plane;
                    l["node"] = certdetail::array_json(w.node);
                    lines.push_back(l);
                }
                a["lines"] = lines;
                a["failures"] = kc.failures;
                attempts.push_back(a);
                if (kc.pass) {
                    cert.witnesses["attempts"] = attempts;
                    cert.witnesses["prime_used"] = p;
                    cert.verdict = Verdict::pass;
                    return;
                }
            } catch (const std::exception& e) {
                a["error"] = e.what();
                attempts.push_back(a);
            }
        }
    }
    cert.witnesses["attempts"] = attempts;
    cert.verdict = Verdict::fail;
}

inline void dimension_ledger_claim(const Config&, Certificate& cert) {
    auto lines = dimension_ledger();
    bool ok = true;
    json rows = json::array();
    for (const auto& l : lines) {
        rows.push_back({{"name", l.name},
                        {"lhs", l.lhs},
                        {"rhs", l.rhs},
                        {"holds", l.holds}});
        ok = ok && l.holds;
    }
    cert.witnesses["identities"] = rows;
    cert.verdict = ok ? Verdict::pass : Verdict::fail;
}

} // namespace runners

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

struct ClaimSpec {
    std::string id;
    std::string anchor;
    std::function<void(const Config&, Certificate&)> run;
};

inline const std::vector<ClaimSpec>& claim_registry() {
    static const std::vector<ClaimSpec> reg = {
        {"bb-gamma",
         "the polarization class 2f-7d of the Hilbert square at genus 14 has "
         "square 6 under the Beauville-Bogomolov form",
         runners::bb_gamma},
        {"scrolls1",
         "a degree-7 effective 1-cycle on the Hilbert square at genus 14 has "
         "class delta_p: 39a^2-26a-1 <= 0 admits only the integer 0",
         runners::scrolls1},
        {"c14-remark",
         "the quartic-scroll curve class 3f_p-16delta_p at genus 8 has "
         "self-pairing -2",
         runners::c14_remark},
        {"discriminant-26",
         "det [[3,7],[7,25]] = 26, so discriminant 26 forces "
         "self-intersection 25 for a degree-7 surface class",
         runners::discriminant26},
        {"double-point-3",
         "the double point count for a septic scroll with R^2=25 in a cubic "
         "fourfold is 3; the smooth quintic control gives 0",
         runners::double_point3},
        {"scroll-ideal",
         "every parametrized point of the septic scroll satisfies all 21 "
         "determinantal quadric minors",
         runners::scroll_ideal},
        {"secant-dim-5",
         "the chord variety of the septic scroll is 5-dimensional: the ten "
         "cubic minors have tangent rank 3 at generic chord points",
         runners::secant_dim5},
        {"secant-slice-3pts",
         "the sampled 3-secant plane meets the chord variety in exactly the "
         "three chosen points, transversally",
         runners::secant_slice3},
        {"nodes-3",
         "the projected septic scroll has exactly three rational double "
         "points, spanning a plane that meets the scroll nowhere else",
         runners::nodes3},
        {"cubics-13",
         "the cubics through the 3-nodal septic scroll form a 13-dimensional "
         "space: rank 43, with node conditions 53 and restricted system 40",
         runners::cubics13},
        {"unique-sextic",
         "exactly one sextic directrix class passes through the six chord "
         "points on the smooth scroll",
         runners::unique_sextic_claim},
        {"smooth-cubic",
         "a random cubic through the 3-nodal scroll has no rational singular "
         "point over a small field and is smooth at the three nodes",
         runners::smooth_cubic},
        {"gamma-span-7",
         "the ruling curve of the projected scroll is a septic spanning a P7 "
         "inside the Pluecker space",
         runners::gamma_span7},
        {"bisecants-3",
         "the ruling curve admits exactly three pairwise-disjoint bisecant "
         "lines inside the Grassmannian",
         runners::bisecants3},
        {"slice-genus8",
         "the P7 section of the Grassmannian through the ruling curve "
         "decomposes as the curve, three bisecants and a residual quartic "
         "spanning a P4 that meets each bisecant once",
         runners::slice_genus8},
        {"gram-L",
         "the rank-5 intersection lattice of the section components is even "
         "of signature (1,4) with hyperplane degrees (7,4,1,1,1)",
         runners::gram_l},
        {"very-ample",
         "the degree-1, degree-2 and square -2 divisor constraints on the "
         "lattice have no integral solutions; the -2/degree-1 control "
         "recovers the three line classes",
         runners::very_ample},
        {"brill-noether",
         "no lattice class has square 2 with degree 7 or 6, nor square 0 "
         "with degree at most 4",
         runners::brill_noether},
        {"kappa",
         "attaching three pencil lines to the fixed quartic ruling family "
         "cuts a septic curve meeting each line twice, with node pairs "
         "meeting inside the chosen planes",
         runners::kappa_claim},
        {"dimension-ledger",
         "the dimension identities 80-6=74, 15-6=9, 9+12=21, 35-6+6=35 and "
         "19+2=21 all hold",
         runners::dimension_ledger_claim},
    };
    return reg;
}

inline Certificate run_claim(const std::string& id, const Config& cfg) {
    const ClaimSpec* spec = nullptr;
    for (const auto& s : claim_registry())
        if (s.id == id) spec = &s;
    if (!spec) throw UsageError("unknown claim id: " + id);
    Certificate cert;
    cert.claim_id = spec->id;
    cert.anchor = spec->anchor;
    cert.prime = cfg.prime;
    cert.slice_prime = cfg.slice_prime;
    cert.seed = cfg.seed;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        spec->run(cfg, cert);
    } catch (const std::exception& e) {
        cert.verdict = Verdict::fail;
        cert.witnesses["error"] = e.what();
    }
    cert.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    return cert;
}

struct AggregateReport {
    std::vector<Certificate> certificates;
    bool all_pass = false;
};

inline AggregateReport run_all(const Config& cfg) {
    AggregateReport rep;
    rep.all_pass = true;
    for (const auto& s : claim_registry()) {
        rep.certificates.push_back(run_claim(s.id, cfg));
        if (rep.certificates.back().verdict == Verdict::fail)
            rep.all_pass = false;
    }
    return rep;
}

inline json config_json(const Config& cfg) {
    return {{"prime", cfg.prime},
            {"slice_prime", cfg.slice_prime},
            {"rank_prime", cfg.rank_prime},
            {"seed", cfg.seed},
            {"exact_rationals", cfg.exact_rationals}};
}

inline json certificate_json(const Certificate& c, const Config& cfg) {
    json j;
    j["claim_id"] = c.claim_id;
    j["paper_anchor"] = c.anchor;
    j["prime"] = c.prime;
    j["slice_prime"] = c.slice_prime;
    j["seed"] = c.seed;
    j["verdict"] = verdict_name(c.verdict);
    j["witnesses"] = c.witnesses;
    j["elapsed_ms"] = c.elapsed_ms;
    j["tool_version"] = kToolVersion;
    j["config"] = config_json(cfg);
    return j;
}

inline json aggregate_json(const AggregateReport& rep, const Config& cfg) {
    json j;
    j["tool_version"] = kToolVersion;
    j["config"] = config_json(cfg);
    j["all_pass"] = rep.all_pass;
    json certs = json::array();
    for (const auto& c : rep.certificates)
        certs.push_back(certificate_json(c, cfg));
    j["certificates"] = certs;
    return j;
}

} // namespace scrollcert
