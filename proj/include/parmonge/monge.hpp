#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "parmonge/grading.hpp"
#include "parmonge/root_system.hpp"

namespace parmonge {

enum class MongeReason {
    dim2_list,         // decided by the explicit dim g_{-1} = 2 table
    leader_adjacency,  // leader condition decided the verdict
    branch_grading,    // a branch component failed |1|-gradedness
    long_root,         // long-root shortcut (recorded, cross-checked)
    structural,        // decided by the structural oracle
};

struct MongeVerdict {
    bool is_monge = false;
    std::optional<int> leader;    // simple-root index of zeta
    std::vector<Root> y_roots;    // roots spanning the abelian complement
    MongeReason reason = MongeReason::structural;
    // Both Monge-type flags are recorded separately: the dimension match
    // dim g_{-2} = dim y and the ad_x isomorphism onto g_{-2}.
    bool dim_match = false;
    bool adx_isomorphism = false;
};

struct BranchComponent {
    int alpha;               // the Sigma-representative inside the component
    std::vector<int> nodes;  // simple-root indices of the component
};

namespace detail {

// The five gradings with dim g_{-1} = 2 (rank-2 table).  B2 and C2 are the
// same algebra with the labels swapped.
inline std::optional<std::pair<bool, int>> dim2_table(const RootSystem& rs, const Sigma& sigma) {
    const Family fam = rs.spec().family;
    auto want = [&](std::initializer_list<int> idx) { return sigma == Sigma(idx); };
    if (fam == Family::A) {
        if (want({0, 1})) return std::make_pair(true, 0);
        return std::make_pair(false, -1);
    }
    if (fam == Family::B) {
        if (want({1})) return std::make_pair(true, 1);
        if (want({0, 1})) return std::make_pair(true, 0);
        return std::make_pair(false, -1);
    }
    if (fam == Family::C) {
        // C2{alpha_1} = B2{alpha_2}, C2{alpha_1,alpha_2} = B2{alpha_1,alpha_2}.
        if (want({0})) return std::make_pair(true, 0);
        if (want({0, 1})) return std::make_pair(true, 1);
        return std::make_pair(false, -1);
    }
    if (fam == Family::G) {
        if (want({0})) return std::make_pair(true, 0);
        if (want({0, 1})) return std::make_pair(true, 0);
        return std::make_pair(false, -1);
    }
    return std::nullopt;
}

}  // namespace detail

// Connected components of the Dynkin diagram with the leader removed, one per
// element of Sigma \ {zeta}.  Throws when the components are not in bijection
// with Sigma \ {zeta}; callers treat that as a not-Monge signal.
inline std::vector<BranchComponent> branch_components(const RootSystem& rs, int zeta,
                                                      const Sigma& sigma) {
    if (!sigma.contains(zeta))
        throw std::invalid_argument("branch_components: leader must lie in Sigma");
    std::vector<int> comp_of(static_cast<std::size_t>(rs.rank()), -1);
    std::vector<std::vector<int>> comps;
    for (int start = 0; start < rs.rank(); ++start) {
        if (start == zeta || comp_of[static_cast<std::size_t>(start)] >= 0) continue;
        std::vector<int> stack{start};
        std::vector<int> nodes;
        comp_of[static_cast<std::size_t>(start)] = static_cast<int>(comps.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            nodes.push_back(v);
            for (int w : rs.neighbors(v)) {
                if (w == zeta || comp_of[static_cast<std::size_t>(w)] >= 0) continue;
                comp_of[static_cast<std::size_t>(w)] = static_cast<int>(comps.size());
                stack.push_back(w);
            }
        }
        std::sort(nodes.begin(), nodes.end());
        comps.push_back(std::move(nodes));
    }
    std::vector<BranchComponent> out;
    std::vector<bool> used(comps.size(), false);
    for (int a : sigma.indices) {
        if (a == zeta) continue;
        int c = comp_of[static_cast<std::size_t>(a)];
        if (c < 0 || used[static_cast<std::size_t>(c)])
            throw std::invalid_argument("branch_components: Sigma not in bijection with components");
        used[static_cast<std::size_t>(c)] = true;
        out.push_back(BranchComponent{a, comps[static_cast<std::size_t>(c)]});
    }
    for (bool u : used)
        if (!u) throw std::invalid_argument("branch_components: component without Sigma element");
    return out;
}

// The grading of the sub-root-system on comp.nodes by {alpha} has depth 1.
inline bool branch_is_one_graded(const RootSystem& rs, const BranchComponent& comp) {
    std::set<int> node_set(comp.nodes.begin(), comp.nodes.end());
    int max_height = 0;
    for (const Root& beta : rs.positive_roots()) {
        bool supported = true;
        for (int i = 0; i < rs.rank() && supported; ++i)
            if (beta[static_cast<std::size_t>(i)] != 0 && !node_set.count(i)) supported = false;
        if (supported) max_height = std::max(max_height, beta[static_cast<std::size_t>(comp.alpha)]);
    }
    return max_height == 1;
}

// Direct check of the Monge conditions on root data: some simple root zeta of
// Sigma-height 1 has y = Delta^1 \ {zeta} abelian, |Delta^2| = |y|, and
// zeta + beta a root for every beta in y.
inline MongeVerdict structural_monge_oracle(const RootSystem& rs, const Sigma& sigma) {
    sigma.validate(rs);
    MongeVerdict v;
    v.reason = MongeReason::structural;
    std::vector<Root> level1 = height_level(rs, sigma, 1);
    std::vector<Root> level2 = height_level(rs, sigma, 2);
    for (int zeta : sigma.indices) {
        Root zr = rs.simple_root(zeta);
        std::vector<Root> y;
        for (const Root& beta : level1)
            if (beta != zr) y.push_back(beta);
        if (y.empty()) continue;
        bool abelian = true;
        for (std::size_t a = 0; a < y.size() && abelian; ++a)
            for (std::size_t b = a + 1; b < y.size() && abelian; ++b) {
                Root sum(y[a].size());
                for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = y[a][i] + y[b][i];
                if (rs.is_root(sum)) abelian = false;
            }
        if (!abelian) continue;
        bool dim_match = level2.size() == y.size();
        bool adx = true;
        for (const Root& beta : y) {
            Root sum(beta.size());
            for (std::size_t i = 0; i < sum.size(); ++i)
                sum[i] = beta[i] + zr[i];
            if (!rs.is_root(sum)) {
                adx = false;
                break;
            }
        }
        if (dim_match && adx) {
            v.is_monge = true;
            v.leader = zeta;
            v.y_roots = y;
            v.dim_match = dim_match;
            v.adx_isomorphism = adx;
            return v;
        }
    }
    return v;
}

// Root-theoretic Monge classifier.  dim g_{-1} = 2 cases go through the
// explicit rank-2 table; all other cases go through the leader conditions:
// Sigma = {zeta} + all Dynkin neighbors of zeta, and every branch component
// |1|-graded at its Sigma-representative.
inline MongeVerdict is_monge(const RootSystem& rs, const Sigma& sigma) {
    sigma.validate(rs);
    MongeVerdict v;
    std::vector<Root> level1 = height_level(rs, sigma, 1);

    if (level1.size() == 2) {
        auto table = detail::dim2_table(rs, sigma);
        if (!table)
            throw std::logic_error("dim g_{-1} = 2 outside rank 2");
        v.reason = MongeReason::dim2_list;
        v.is_monge = table->first;
        if (v.is_monge) {
            v.leader = table->second;
            Root zr = rs.simple_root(*v.leader);
            for (const Root& beta : level1)
                if (beta != zr) v.y_roots.push_back(beta);
            v.dim_match = height_level(rs, sigma, 2).size() == v.y_roots.size();
            v.adx_isomorphism = true;
        }
        return v;
    }

    // Candidate leaders: elements of Sigma whose full neighbor set lies in
    // Sigma and which are adjacent to every other element of Sigma.
    std::optional<int> leader;
    for (int z : sigma.indices) {
        bool ok = true;
        for (int n : rs.neighbors(z))
            if (!sigma.contains(n)) ok = false;
        for (int a : sigma.indices)
            if (a != z && !rs.adjacent(z, a)) ok = false;
        if (ok) {
            leader = z;
            break;
        }
    }
    if (!leader) {
        v.reason = MongeReason::leader_adjacency;
        return v;
    }
    v.leader = leader;

    std::vector<BranchComponent> comps;
    try {
        comps = branch_components(rs, *leader, sigma);
    } catch (const std::invalid_argument&) {
        v.reason = MongeReason::leader_adjacency;
        v.leader.reset();
        return v;
    }
    for (const auto& comp : comps) {
        if (!branch_is_one_graded(rs, comp)) {
            v.reason = MongeReason::branch_grading;
            return v;
        }
    }
    v.is_monge = true;
    v.reason = MongeReason::branch_grading;
    Root zr = rs.simple_root(*leader);
    for (const Root& beta : level1)
        if (beta != zr) v.y_roots.push_back(beta);
    v.dim_match = height_level(rs, sigma, 2).size() == v.y_roots.size();
    v.adx_isomorphism = [&] {
        for (const Root& beta : v.y_roots) {
            Root sum(beta.size());
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = beta[i] + zr[i];
            if (!rs.is_root(sum)) return false;
        }
        return true;
    }();
    return v;
}

// Long-root shortcut: for dim g_{-1} > 2, Monge is equivalent to the leader
// condition plus Sigma containing a long simple root.
inline bool long_root_criterion(const RootSystem& rs, const Sigma& sigma) {
    bool has_long = false;
    for (int i : sigma.indices)
        if (rs.is_long(rs.simple_root(i))) has_long = true;
    if (!has_long) return false;
    for (int z : sigma.indices) {
        bool ok = true;
        for (int n : rs.neighbors(z))
            if (!sigma.contains(n)) ok = false;
        for (int a : sigma.indices)
            if (a != z && !rs.adjacent(z, a)) ok = false;
        if (ok) return true;
    }
    return false;
}

// All Monge gradings of the given algebra.  At rank 2 every subset is tried
// against the dim-2 table; otherwise Sigma is a function of its leader.
inline std::vector<std::pair<Sigma, MongeVerdict>> enumerate_monge(const AlgebraSpec& spec) {
    RootSystem rs(spec);
    std::vector<std::pair<Sigma, MongeVerdict>> out;
    std::set<std::set<int>> seen;
    if (rs.rank() == 2) {
        for (const auto& idx :
             std::vector<std::set<int>>{{0}, {1}, {0, 1}}) {
            Sigma sigma(idx);
            MongeVerdict v = is_monge(rs, sigma);
            if (v.is_monge) out.emplace_back(sigma, v);
        }
        return out;
    }
    for (int zeta = 0; zeta < rs.rank(); ++zeta) {
        std::set<int> idx{zeta};
        for (int n : rs.neighbors(zeta)) idx.insert(n);
        if (!seen.insert(idx).second) continue;
        Sigma sigma(idx);
        MongeVerdict v = is_monge(rs, sigma);
        if (v.is_monge) out.emplace_back(sigma, v);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace parmonge
