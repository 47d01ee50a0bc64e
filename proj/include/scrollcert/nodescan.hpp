#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "scrollcert/scanfield.hpp"
#include "scrollcert/scroll.hpp"

namespace scrollcert {

struct CollisionPair {
    std::array<uint32_t, 3> first;
    std::array<uint32_t, 3> second;
};

struct NodeCertificate {
    bool pass = false;
    std::vector<std::string> failures;
    uint32_t prime = 0;
    uint64_t seed = 0;
    // (a) the constructed chord pairs collide under the projection
    bool chord_images_match = false;
    // (b) exhaustive collision census over the rational parameter plane
    uint64_t points_scanned = 0;
    uint64_t center_hits = 0;
    uint64_t multi_collisions = 0;
    std::vector<CollisionPair> collisions;
    bool collisions_are_chords = false;
    // (c) span of the three nodes
    std::size_t node_span_rank = 0;
    // (d) node-plane section of the enumerated image
    std::size_t plane_hit_count = 0;
    bool plane_hits_are_nodes = false;
    // (e) immersion spot checks
    std::size_t immersion_checks = 0;
    bool immersion_ok = false;
    std::string scope_note;
};

namespace detail {

inline std::array<uint32_t, 3> normalized_param(const std::vector<Fp>& z) {
    auto n = projective_normalize(z);
    return {n[0].value(), n[1].value(), n[2].value()};
}

inline void eval_scroll_monomials(const ScanField& F, uint32_t z0, uint32_t z1,
                                  uint32_t z2, uint32_t m[9]) {
    const uint32_t z1_2 = F.mul(z1, z1), z1_3 = F.mul(z1_2, z1);
    const uint32_t z2_2 = F.mul(z2, z2), z2_3 = F.mul(z2_2, z2);
    m[0] = F.mul(z0, z1_3);
    m[1] = F.mul(z0, F.mul(z1_2, z2));
    m[2] = F.mul(z0, F.mul(z1, z2_2));
    m[3] = F.mul(z0, z2_3);
    m[4] = F.mul(z1_3, z1);
    m[5] = F.mul(z1_3, z2);
    m[6] = F.mul(z1_2, z2_2);
    m[7] = F.mul(z1, z2_3);
    m[8] = F.mul(z2_3, z2);
}

} // namespace detail

// Exhaustive node certificate: scans the whole rational parameter plane,
// finds every projection collision, and checks the node-plane geometry.
inline NodeCertificate certify_nodes(const SecantFrame<Fp>& frame,
                                     const ProjectionMap<Fp>& proj,
                                     uint32_t p, uint64_t immersion_seed = 1) {
    if (p > 2000)
        throw std::invalid_argument("certify_nodes: prime too large to scan");
    if (frame.origin.p != p)
        throw std::invalid_argument("certify_nodes: frame/prime mismatch");

    NodeCertificate cert;
    cert.prime = p;
    cert.seed = frame.origin.seed;
    cert.scope_note =
        "collision census covers parameter pairs rational over F_p; chords "
        "rational only over extensions are outside this scan";
    FpField fld(p);
    ScanField F(p);

    // (a) direct image comparison for the three chords
    cert.chord_images_match = true;
    std::array<std::vector<Fp>, 3> nodes_vec;
    for (int i = 0; i < 3; ++i) {
        auto px = projective_normalize(proj.apply(frame.x_image(i)));
        auto py = projective_normalize(proj.apply(frame.y_image(i)));
        if (px != py) cert.chord_images_match = false;
        nodes_vec[i] = px;
    }
    if (!cert.chord_images_match)
        cert.failures.push_back("projected chord endpoints differ");

    // (c) node span
    Matrix<Fp> node_mat(3, 6, fld.zero());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) node_mat.at(i, j) = nodes_vec[i][j];
    cert.node_span_rank = rank_of(node_mat);
    if (cert.node_span_rank != 3) {
        cert.failures.push_back("nodes do not span a plane");
        cert.pass = false;
        return cert; // degenerate instance; caller reseeds
    }

    // plane annihilator: three linear forms on P5 vanishing on the nodes
    auto [nrank, plane_forms] = rref_rank(node_mat);
    (void)nrank;

    // raw copies for the scan
    uint32_t K[9][6];
    for (int k = 0; k < 9; ++k)
        for (int j = 0; j < 6; ++j) K[k][j] = proj.forms.at(k, j).value();
    uint32_t PF[3][6];
    for (int f = 0; f < 3; ++f)
        for (int j = 0; j < 6; ++j) PF[f][j] = plane_forms[f][j].value();

    std::array<uint32_t, 3> base{1, 0, 0};
    std::unordered_map<Key6, std::pair<uint64_t, uint32_t>, Key6Hash> seen;
    seen.reserve(projective_point_count(p, 2) * 5 / 4);
    std::set<Key6> plane_hits;

    for_each_projective_point(p, 2, [&](const std::vector<uint32_t>& z) {
        if (z[0] == base[0] && z[1] == base[1] && z[2] == base[2]) return;
        ++cert.points_scanned;
        uint32_t m[9];
        detail::eval_scroll_monomials(F, z[0], z[1], z[2], m);
        uint32_t img[6];
        bool zero = true;
        for (int j = 0; j < 6; ++j) {
            uint64_t acc = 0;
            for (int k = 0; k < 9; ++k)
                acc += static_cast<uint64_t>(K[k][j]) * m[k];
            img[j] = static_cast<uint32_t>(acc % p);
            zero = zero && img[j] == 0;
        }
        if (zero) {
            ++cert.center_hits;
            return;
        }
        // plane membership before normalization (forms are linear)
        bool in_plane = true;
        for (int f = 0; f < 3 && in_plane; ++f) {
            uint64_t acc = 0;
            for (int j = 0; j < 6; ++j)
                acc += static_cast<uint64_t>(PF[f][j]) * img[j];
            in_plane = (acc % p) == 0;
        }
        // normalize image
        int lead = 0;
        while (img[lead] == 0) ++lead;
        const uint32_t s = F.inv[img[lead]];
        Key6 key{};
        for (int j = 0; j < 6; ++j)
            key[j] = static_cast<uint16_t>(F.mul(img[j], s));
        if (in_plane) plane_hits.insert(key);

        const uint64_t param = pack_param3({z[0], z[1], z[2]});
        auto [it, inserted] = seen.try_emplace(key, param, 1u);
        if (!inserted) {
            it->second.second += 1;
            if (it->second.second == 2)
                cert.collisions.push_back(
                    {unpack_param3(it->second.first), {z[0], z[1], z[2]}});
            else
                ++cert.multi_collisions;
        }
    });

    if (cert.center_hits != 0)
        cert.failures.push_back("projection center meets the scroll sample");
    if (cert.multi_collisions != 0)
        cert.failures.push_back("a projected point has three or more preimages");
    if (cert.collisions.size() != 3)
        cert.failures.push_back("collision count is " +
                                std::to_string(cert.collisions.size()) +
                                ", expected 3");

    // the collision pairs must be exactly the constructed chords
    std::vector<std::pair<uint64_t, uint64_t>> expected, found;
    for (int i = 0; i < 3; ++i) {
        uint64_t a = pack_param3(detail::normalized_param(frame.x_param(i)));
        uint64_t b = pack_param3(detail::normalized_param(frame.y_param(i)));
        expected.emplace_back(std::min(a, b), std::max(a, b));
    }
    for (const auto& c : cert.collisions) {
        uint64_t a = pack_param3(c.first), b = pack_param3(c.second);
        found.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(expected.begin(), expected.end());
    std::sort(found.begin(), found.end());
    cert.collisions_are_chords = (expected == found);
    if (!cert.collisions_are_chords)
        cert.failures.push_back("collision pairs are not the sampled chords");

    // (d) plane section must be exactly the three nodes
    cert.plane_hit_count = plane_hits.size();
    std::set<Key6> node_keys;
    for (int i = 0; i < 3; ++i) {
        Key6 k{};
        for (int j = 0; j < 6; ++j)
            k[j] = static_cast<uint16_t>(nodes_vec[i][j].value());
        node_keys.insert(k);
    }
    cert.plane_hits_are_nodes = (plane_hits == node_keys);
    if (!cert.plane_hits_are_nodes)
        cert.failures.push_back("node plane meets the image beyond the nodes");

    // (e) immersion: rank 3 of the 6x3 Jacobian of the quartic forms
    std::vector<std::vector<MultiPoly<Fp>>> jac;
    for (const auto& q : proj.quartics) {
        std::vector<MultiPoly<Fp>> row;
        for (std::size_t v = 0; v < 3; ++v) row.push_back(q.derivative(v));
        jac.push_back(std::move(row));
    }
    auto immersed_at = [&](const std::vector<Fp>& z) {
        Matrix<Fp> J(6, 3, fld.zero());
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 3; ++c)
                J.at(r, c) = jac[r][c].eval_or(z, fld.zero());
        return rank_of(J) == 3;
    };
    cert.immersion_ok = true;
    for (int i = 0; i < 6; ++i) {
        ++cert.immersion_checks;
        if (!immersed_at(frame.param_points[i])) cert.immersion_ok = false;
    }
    Rng rng(mix_seed(immersion_seed, 0xa11ce));
    int done = 0;
    while (done < 100) {
        std::vector<Fp> z{fld.from_int(static_cast<int64_t>(rng.below(p))),
                          fld.from_int(static_cast<int64_t>(rng.below(p))),
                          fld.from_int(static_cast<int64_t>(rng.below(p)))};
        if (point_is_zero(z) || point_is_zero(scroll_eval(z))) continue;
        ++cert.immersion_checks;
        if (!immersed_at(z)) cert.immersion_ok = false;
        ++done;
    }
    if (!cert.immersion_ok)
        cert.failures.push_back("parametrization fails the immersion check");

    cert.pass = cert.failures.empty();
    return cert;
}

// ---------------------------------------------------------------------------
// Plane section of the secant variety: enumerate the sampled plane and keep
// the common zeros of the ten minors, with tangent ranks at each.
// ---------------------------------------------------------------------------

struct SliceSolution {
    std::array<uint32_t, 3> plane_coords;
    std::vector<Fp> ambient;
    std::size_t restricted_jacobian_rank = 0;
};

struct SecantSliceResult {
    uint64_t candidates = 0;
    std::vector<SliceSolution> solutions;
    bool solutions_are_chord_points = false;
    bool all_transverse = false;
};

inline SecantSliceResult secant_slice(const SecantFrame<Fp>& frame,
                                      uint32_t p) {
    if (p > 2000)
        throw std::invalid_argument("secant_slice: prime too large to scan");
    if (frame.origin.p != p)
        throw std::invalid_argument("secant_slice: frame/prime mismatch");
    FpField fld(p);
    ScanField F(p);
    SecantMinorSystem<FpField> sys(fld);

    uint32_t A[3][9];
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 9; ++k) A[i][k] = frame.chord_points[i][k].value();

    const auto& L = secant_matrix_layout();
    static const int triples[10][3] = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4},
                                       {0, 2, 3}, {0, 2, 4}, {0, 3, 4},
                                       {1, 2, 3}, {1, 2, 4}, {1, 3, 4},
                                       {2, 3, 4}};

    SecantSliceResult out;
    for_each_projective_point(p, 2, [&](const std::vector<uint32_t>& c) {
        ++out.candidates;
        uint32_t w[9];
        for (int k = 0; k < 9; ++k) {
            uint64_t acc = static_cast<uint64_t>(A[0][k]) * c[0] +
                           static_cast<uint64_t>(A[1][k]) * c[1] +
                           static_cast<uint64_t>(A[2][k]) * c[2];
            w[k] = static_cast<uint32_t>(acc % p);
        }
        for (const auto& t : triples) {
            const uint32_t a = w[L[0][t[0]]], b = w[L[0][t[1]]], cc = w[L[0][t[2]]];
            const uint32_t d = w[L[1][t[0]]], e = w[L[1][t[1]]], f = w[L[1][t[2]]];
            const uint32_t g = w[L[2][t[0]]], h = w[L[2][t[1]]], i = w[L[2][t[2]]];
            const uint32_t det = F.sub(
                F.add(F.mul(a, F.sub(F.mul(e, i), F.mul(f, h))),
                      F.mul(cc, F.sub(F.mul(d, h), F.mul(e, g)))),
                F.mul(b, F.sub(F.mul(d, i), F.mul(f, g))));
            if (det != 0) return;
        }
        SliceSolution sol;
        sol.plane_coords = {c[0], c[1], c[2]};
        for (int k = 0; k < 9; ++k) sol.ambient.push_back(Fp(w[k], p));
        out.solutions.push_back(std::move(sol));
    });

    // tangent rank of the minor system restricted to the plane
    Matrix<Fp> plane_dirs(9, 3, fld.zero());
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 9; ++k) plane_dirs.at(k, i) = frame.chord_points[i][k];
    out.all_transverse = !out.solutions.empty();
    for (auto& sol : out.solutions) {
        Matrix<Fp> J = sys.jacobian_at(sol.ambient, fld);
        sol.restricted_jacobian_rank = rank_of(J * plane_dirs);
        if (sol.restricted_jacobian_rank != 2) out.all_transverse = false;
    }

    // solutions should be exactly the three chord points (plane unit coords)
    std::vector<std::array<uint32_t, 3>> got;
    for (const auto& s : out.solutions) got.push_back(s.plane_coords);
    std::sort(got.begin(), got.end());
    std::vector<std::array<uint32_t, 3>> want = {
        {0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    out.solutions_are_chord_points = (got == want);
    return out;
}

} // namespace scrollcert
