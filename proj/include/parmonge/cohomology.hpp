#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "parmonge/grading.hpp"
#include "parmonge/root_system.hpp"

namespace parmonge {

// A length-1 or length-2 Weyl element sigma together with
// Delta_sigma = sigma(Delta^-) cap Delta^+.
struct WeylElement {
    std::vector<int> word;          // [i] for s_i, [i, j] for s_i s_j
    std::vector<Root> delta_sigma;  // size equals the length

    bool operator==(const WeylElement& o) const { return word == o.word; }
};

// W^1_Sigma: one simple reflection per element of Sigma.
inline std::vector<WeylElement> enumerate_w1(const RootSystem& rs, const Sigma& sigma) {
    sigma.validate(rs);
    std::vector<WeylElement> out;
    for (int i : sigma.indices) out.push_back({{i}, {rs.simple_root(i)}});
    return out;
}

// W^2_Sigma via the pair characterization: sigma_{ij} = s_i s_j with
// Delta_sigma = {alpha_i, s_i(alpha_j)}, alpha_i in Sigma and
// ht_Sigma(s_i(alpha_j)) >= 1.  For orthogonal i, j the two orders give the
// same Weyl element; only (i, j) with i < j is kept then.  Output sorted by
// (i, j).
inline std::vector<WeylElement> enumerate_w2(const RootSystem& rs, const Sigma& sigma) {
    sigma.validate(rs);
    std::vector<WeylElement> out;
    for (int i = 0; i < rs.rank(); ++i) {
        if (!sigma.contains(i)) continue;
        for (int j = 0; j < rs.rank(); ++j) {
            if (i == j) continue;
            // s_i and s_j commute for orthogonal i, j; keep only i < j then.
            if (!rs.adjacent(i, j) && i > j) continue;
            Root sij = rs.simple_reflection(i, rs.simple_root(j));
            if (height(sij, sigma) < 1) continue;
            out.push_back({{i, j}, {rs.simple_root(i), sij}});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const WeylElement& a, const WeylElement& b) { return a.word < b.word; });
    return out;
}

inline Root sigma_theta(const RootSystem& rs, const WeylElement& sigma) {
    return rs.weyl_apply(sigma.word, rs.highest_root());
}

// Homogeneity weight of the harmonic representative, computed from the
// general formula -ht(sigma(theta)) + sum of heights over Delta_sigma; for
// q = 2 the closed form
//   -ht(theta) + <theta,alpha_i> + 1 + (<theta,alpha_j> + 1) ht(s_i(alpha_j))
// is evaluated as well and both must agree.
inline int homogeneity_weight(const RootSystem& rs, const Sigma& sigma, const WeylElement& w) {
    int general = -height(sigma_theta(rs, w), sigma);
    for (const Root& beta : w.delta_sigma) general += height(beta, sigma);
    if (w.word.size() == 2) {
        const Root& theta = rs.highest_root();
        int i = w.word[0], j = w.word[1];
        int closed = -height(theta, sigma) + rs.cartan_integer(theta, i) + 1 +
                     (rs.cartan_integer(theta, j) + 1) *
                         height(rs.simple_reflection(i, rs.simple_root(j)), sigma);
        if (closed != general)
            throw std::logic_error("homogeneity weight: closed form disagrees with general formula");
    }
    return general;
}

// Non-rigid iff some length-2 element has homogeneity weight >= 1.
inline bool is_rigid(const RootSystem& rs, const Sigma& sigma) {
    for (const WeylElement& w : enumerate_w2(rs, sigma))
        if (homogeneity_weight(rs, sigma, w) >= 1) return false;
    return true;
}

// Weight of -sigma(theta); negative means the class is torsion, otherwise
// curvature (the root vector e_{-sigma(theta)} lies in the parabolic).
inline std::pair<int, bool> torsion_or_curvature(const RootSystem& rs, const Sigma& sigma,
                                                 const WeylElement& w) {
    int weight = -height(sigma_theta(rs, w), sigma);
    return {weight, weight < 0};
}

// Lowest weight of the irreducible summand: -sigma(theta) + beta_1 + beta_2,
// in simple-root coordinates.
inline std::vector<int> lowest_weight(const RootSystem& rs, const Sigma& sigma,
                                      const WeylElement& w) {
    (void)sigma;
    Root st = sigma_theta(rs, w);
    std::vector<int> lw(st.size());
    for (std::size_t k = 0; k < lw.size(); ++k) lw[k] = -st[k];
    for (const Root& beta : w.delta_sigma)
        for (std::size_t k = 0; k < lw.size(); ++k) lw[k] += beta[k];
    return lw;
}

// Make the weight dominant for the semisimple part of g_0 by reflections in
// the simple roots outside Sigma, then report its pairings with those roots.
inline std::map<int, int> highest_weight_pairings(const RootSystem& rs, const Sigma& sigma,
                                                  std::vector<int> lambda) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 0; k < rs.rank(); ++k) {
            if (sigma.contains(k)) continue;
            int p = rs.cartan_pairing(lambda, k);
            if (p < 0) {
                lambda[static_cast<std::size_t>(k)] -= p;
                changed = true;
            }
        }
    }
    std::map<int, int> pairings;
    for (int k = 0; k < rs.rank(); ++k)
        if (!sigma.contains(k)) pairings[k] = rs.cartan_pairing(lambda, k);
    return pairings;
}

// Full record for one degree-2 class.
struct CohomologyClass {
    WeylElement sigma;
    int homogeneity_weight = 0;
    int minus_sigma_theta_weight = 0;
    bool torsion = false;
    std::vector<int> lowest_weight;
    std::map<int, int> highest_weight_pairings;
};

inline std::vector<CohomologyClass> h2_classes(const RootSystem& rs, const Sigma& sigma) {
    std::vector<CohomologyClass> out;
    for (const WeylElement& w : enumerate_w2(rs, sigma)) {
        CohomologyClass c;
        c.sigma = w;
        c.homogeneity_weight = homogeneity_weight(rs, sigma, w);
        auto [wt, tor] = torsion_or_curvature(rs, sigma, w);
        c.minus_sigma_theta_weight = wt;
        c.torsion = tor;
        c.lowest_weight = lowest_weight(rs, sigma, w);
        c.highest_weight_pairings = highest_weight_pairings(rs, sigma, c.lowest_weight);
        out.push_back(std::move(c));
    }
    return out;
}

// Weights of the q = 1 classes, one per element of Sigma.
inline std::vector<std::pair<WeylElement, int>> h1_weights(const RootSystem& rs,
                                                           const Sigma& sigma) {
    std::vector<std::pair<WeylElement, int>> out;
    for (const WeylElement& w : enumerate_w1(rs, sigma))
        out.emplace_back(w, homogeneity_weight(rs, sigma, w));
    return out;
}

inline bool has_nonnegative_h1_weight(const RootSystem& rs, const Sigma& sigma) {
    for (const auto& [w, p] : h1_weights(rs, sigma))
        if (p >= 0) return true;
    return false;
}

}  // namespace parmonge
