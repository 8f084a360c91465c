#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parmonge/nilpotent.hpp"

namespace parmonge {

// The non-rigid Monge cases, with their defining data.  Parametric families
// (Ia, Ib, IIa, IIIa, IVa) take the rank as a parameter.
struct CaseRealization {
    std::string id;
    AlgebraSpec spec;
    Sigma sigma;
    GradedNilpotent algebra;
};

inline std::vector<std::string> nonrigid_case_ids() {
    return {"Ia", "Ib", "IIa", "IIb", "IIIa", "IIIb", "IIIc", "IIId", "IVa", "Va", "Vb"};
}

inline bool case_is_parametric(const std::string& id) {
    return id == "Ia" || id == "Ib" || id == "IIa" || id == "IIIa" || id == "IVa";
}

inline int case_default_rank(const std::string& id) {
    if (id == "Ia") return 3;
    if (id == "Ib") return 2;
    if (id == "IIa") return 3;
    if (id == "IIb") return 3;
    if (id == "IIIa") return 3;
    if (id == "IIIb") return 2;
    if (id == "IIIc") return 3;
    if (id == "IIId") return 3;
    if (id == "IVa") return 4;
    return 2;  // Va, Vb
}

namespace detail {

struct Seed {
    std::string label;
    int degree;
    std::string coord;
    RationalMatrix matrix;
};
struct Derived {
    std::string label;
    int degree;
    std::string coord;
    std::string left, right;  // bracket arguments, by label
    Rational scale;           // new = scale * [left, right]
};

inline GradedNilpotent assemble(const std::vector<Seed>& seeds,
                                const std::vector<Derived>& derived,
                                const std::vector<std::string>& order,
                                const std::string& leader_label) {
    std::map<std::string, RationalMatrix> mat;
    std::map<std::string, std::pair<int, std::string>> info;  // label -> (degree, coord)
    for (const auto& s : seeds) {
        mat[s.label] = s.matrix;
        info[s.label] = {s.degree, s.coord};
    }
    for (const auto& d : derived) {
        auto l = mat.find(d.left);
        auto r = mat.find(d.right);
        if (l == mat.end() || r == mat.end())
            throw std::logic_error("case assembly: derived element refers to unknown label");
        mat[d.label] = commutator(l->second, r->second).scaled(d.scale);
        if (mat[d.label].is_zero())
            throw std::logic_error("case assembly: derived bracket vanished for " + d.label);
        info[d.label] = {d.degree, d.coord};
    }
    std::vector<BasisElement> basis;
    for (const auto& label : order) {
        auto i = info.find(label);
        if (i == info.end()) throw std::logic_error("case assembly: missing label " + label);
        basis.push_back(BasisElement{label, i->second.first, i->second.second, mat[label]});
    }
    GradedNilpotent g(std::move(basis));
    g.compute_brackets_from_matrices();
    g.set_leader(g.index_of(leader_label));
    return g;
}

inline RationalMatrix e(std::size_t n, std::size_t i, std::size_t j) {
    return RationalMatrix::unit(n, i, j);
}

}  // namespace detail

// Ia: A_l{a1,a2,a3}, l >= 3.  Leader X = E_{3,2}; y spanned by P_0 = E_{2,1}
// and P_i = E_{i+3,3}.
inline CaseRealization build_case_Ia(int ell) {
    if (ell < 3) throw std::invalid_argument("Ia requires rank >= 3");
    const auto n = static_cast<std::size_t>(ell + 1);
    using detail::e;
    std::vector<detail::Seed> seeds;
    std::vector<detail::Derived> derived;
    std::vector<std::string> order;
    seeds.push_back({"P0", -1, "p0", e(n, 2, 1)});
    order.push_back("P0");
    for (int i = 1; i <= ell - 2; ++i) {
        seeds.push_back({"P" + std::to_string(i), -1, "p" + std::to_string(i),
                         e(n, static_cast<std::size_t>(i) + 3, 3)});
        order.push_back("P" + std::to_string(i));
    }
    seeds.push_back({"X", -1, "x", e(n, 3, 2)});
    order.push_back("X");
    derived.push_back({"Y0", -2, "y0", "P0", "X", Rational(1)});
    order.push_back("Y0");
    for (int i = 1; i <= ell - 2; ++i) {
        derived.push_back({"Y" + std::to_string(i), -2, "y" + std::to_string(i),
                           "P" + std::to_string(i), "X", Rational(1)});
        order.push_back("Y" + std::to_string(i));
    }
    for (int i = 1; i <= ell - 2; ++i) {
        derived.push_back({"Z" + std::to_string(i), -3, "z" + std::to_string(i), "P0",
                           "Y" + std::to_string(i), Rational(1)});
        order.push_back("Z" + std::to_string(i));
    }
    return {"Ia", AlgebraSpec{Family::A, ell}, Sigma{0, 1, 2},
            detail::assemble(seeds, derived, order, "X")};
}

// Ib: A_l{a1,a2}, l >= 2.  Jet-space case; depth 2.
inline CaseRealization build_case_Ib(int ell) {
    if (ell < 2) throw std::invalid_argument("Ib requires rank >= 2");
    const auto n = static_cast<std::size_t>(ell + 1);
    using detail::e;
    std::vector<detail::Seed> seeds;
    std::vector<detail::Derived> derived;
    std::vector<std::string> order;
    for (int i = 1; i <= ell - 1; ++i) {
        seeds.push_back({"P" + std::to_string(i), -1, "p" + std::to_string(i),
                         e(n, static_cast<std::size_t>(i) + 2, 2)});
        order.push_back("P" + std::to_string(i));
    }
    seeds.push_back({"X", -1, "x", e(n, 2, 1)});
    order.push_back("X");
    for (int i = 1; i <= ell - 1; ++i) {
        derived.push_back({"Y" + std::to_string(i), -2, "y" + std::to_string(i),
                           "P" + std::to_string(i), "X", Rational(1)});
        order.push_back("Y" + std::to_string(i));
    }
    return {"Ib", AlgebraSpec{Family::A, ell}, Sigma{0, 1},
            detail::assemble(seeds, derived, order, "X")};
}

// IIa: C_l{a_{l-1}, a_l}, l >= 3.  Leader X = E_{l+1,l}.
inline CaseRealization build_case_IIa(int ell) {
    if (ell < 3) throw std::invalid_argument("IIa requires rank >= 3");
    const auto n = static_cast<std::size_t>(2 * ell);
    using detail::e;
    std::vector<detail::Seed> seeds;
    std::vector<detail::Derived> derived;
    std::vector<std::string> order;
    for (int i = 1; i <= ell - 1; ++i) {
        auto ui = static_cast<std::size_t>(i);
        seeds.push_back({"P" + std::to_string(i), -1, "p" + std::to_string(i),
                         e(n, static_cast<std::size_t>(ell), ui) -
                             e(n, static_cast<std::size_t>(2 * ell + 1 - i),
                               static_cast<std::size_t>(ell + 1))});
        order.push_back("P" + std::to_string(i));
    }
    seeds.push_back({"X", -1, "x",
                     e(n, static_cast<std::size_t>(ell + 1), static_cast<std::size_t>(ell))});
    order.push_back("X");
    for (int i = 1; i <= ell - 1; ++i) {
        derived.push_back({"Y" + std::to_string(i), -2, "y" + std::to_string(i),
                           "P" + std::to_string(i), "X", Rational(1)});
        order.push_back("Y" + std::to_string(i));
    }
    for (int i = 1; i <= ell - 1; ++i)
        for (int j = i; j <= ell - 1; ++j) {
            std::string lab = "Z" + std::to_string(i) + std::to_string(j);
            derived.push_back({lab, -3, "z" + std::to_string(i) + std::to_string(j),
                               "P" + std::to_string(i), "Y" + std::to_string(j),
                               i == j ? Rational(1, 2) : Rational(1)});
            order.push_back(lab);
        }
    std::set<int> sig{ell - 2, ell - 1};
    return {"IIa", AlgebraSpec{Family::C, ell}, Sigma{sig},
            detail::assemble(seeds, derived, order, "X")};
}

// IIIa / IVa: B_l{a1,a2} (n = 2l+1) and D_l{a1,a2} (n = 2l).  Leader
// X = E_{2,1} - E_{n,n-1}; P_i = E_{i+2,2} - E_{n-1,n-i-1}, 1 <= i <= n-4.
inline CaseRealization build_case_BD(const std::string& id, Family fam, int ell) {
    if (fam == Family::B && ell < 2) throw std::invalid_argument("IIIa requires rank >= 2");
    if (fam == Family::D && ell < 4) throw std::invalid_argument("IVa requires rank >= 4");
    const auto n = static_cast<std::size_t>(fam == Family::B ? 2 * ell + 1 : 2 * ell);
    const int d = static_cast<int>(n) - 4;
    using detail::e;
    std::vector<detail::Seed> seeds;
    std::vector<detail::Derived> derived;
    std::vector<std::string> order;
    for (int i = 1; i <= d; ++i) {
        auto ui = static_cast<std::size_t>(i);
        seeds.push_back({"P" + std::to_string(i), -1, "p" + std::to_string(i),
                         e(n, ui + 2, 2) - e(n, n - 1, n - ui - 1)});
        order.push_back("P" + std::to_string(i));
    }
    seeds.push_back({"X", -1, "x", e(n, 2, 1) - e(n, n, n - 1)});
    order.push_back("X");
    for (int i = 1; i <= d; ++i) {
        derived.push_back({"Y" + std::to_string(i), -2, "y" + std::to_string(i),
                           "P" + std::to_string(i), "X", Rational(1)});
        order.push_back("Y" + std::to_string(i));
    }
    derived.push_back({"Z", -3, "z", "P1", "Y" + std::to_string(d), Rational(1)});
    order.push_back("Z");
    return {id, AlgebraSpec{fam, ell}, Sigma{0, 1},
            detail::assemble(seeds, derived, order, "X")};
}
inline CaseRealization build_case_IIIa(int ell) { return build_case_BD("IIIa", Family::B, ell); }
inline CaseRealization build_case_IVa(int ell) { return build_case_BD("IVa", Family::D, ell); }

// IIb: C3{a1,a2,a3}.  Leader X = E_{3,2} - E_{5,4}.
inline CaseRealization build_case_IIb() {
    const std::size_t n = 6;
    using detail::e;
    std::vector<detail::Seed> seeds = {
        {"P1", -1, "p1", e(n, 2, 1) - e(n, 6, 5)},
        {"P2", -1, "p2", e(n, 4, 3)},
        {"X", -1, "x", e(n, 3, 2) - e(n, 5, 4)},
    };
    std::vector<detail::Derived> derived = {
        {"Y1", -2, "y1", "P1", "X", Rational(1)},
        {"Y2", -2, "y2", "P2", "X", Rational(1)},
        {"Z1", -3, "z1", "P1", "Y2", Rational(1)},
        {"Z2", -3, "z2", "X", "Y2", Rational(1)},
        {"Z3", -4, "z3", "X", "Z1", Rational(1)},
        {"Z4", -5, "z4", "P1", "Z3", Rational(1)},
    };
    std::vector<std::string> order = {"P1", "P2", "X", "Y1", "Y2", "Z1", "Z2", "Z3", "Z4"};
    return {"IIb", AlgebraSpec{Family::C, 3}, Sigma{0, 1, 2},
            detail::assemble(seeds, derived, order, "X")};
}

// IIIb: B2{a2}.  Heisenberg algebra; the jet space J^1(R, R).
inline CaseRealization build_case_IIIb() {
    AlgebraSpec spec{Family::B, 2};
    MatrixAlgebra ma(spec);
    Root minus_a2{0, -1};
    Root minus_a12{-1, -1};
    std::vector<detail::Seed> seeds = {
        {"P", -1, "p", ma.root_space(minus_a12)},
        {"X", -1, "x", ma.root_space(minus_a2)},
    };
    std::vector<detail::Derived> derived = {{"Y", -2, "y", "P", "X", Rational(1)}};
    std::vector<std::string> order = {"P", "X", "Y"};
    return {"IIIb", spec, Sigma{1}, detail::assemble(seeds, derived, order, "X")};
}

// IIIc: B3{a2,a3}.  Leader X = E_{4,3} - E_{5,4}.
inline CaseRealization build_case_IIIc() {
    const std::size_t n = 7;
    using detail::e;
    std::vector<detail::Seed> seeds = {
        {"Q1", -1, "q1", e(n, 3, 2) - e(n, 6, 5)},
        {"Q2", -1, "q2", e(n, 3, 1) - e(n, 7, 5)},
        {"X", -1, "x", e(n, 4, 3) - e(n, 5, 4)},
    };
    std::vector<detail::Derived> derived = {
        {"P1", -2, "p1", "Q1", "X", Rational(1)},
        {"P2", -2, "p2", "Q2", "X", Rational(1)},
        {"Y1", -3, "y1", "P1", "X", Rational(1)},
        {"Y2", -3, "y2", "P2", "X", Rational(1)},
        {"Z", -4, "z", "Q1", "Y2", Rational(1)},
    };
    std::vector<std::string> order = {"Q1", "Q2", "X", "P1", "P2", "Y1", "Y2", "Z"};
    return {"IIIc", AlgebraSpec{Family::B, 3}, Sigma{1, 2},
            detail::assemble(seeds, derived, order, "X")};
}

// IIId: B3{a1,a2,a3}.  Leader X = E_{3,2} - E_{6,5}.
inline CaseRealization build_case_IIId() {
    const std::size_t n = 7;
    using detail::e;
    std::vector<detail::Seed> seeds = {
        {"P1", -1, "p1", e(n, 2, 1) - e(n, 7, 6)},
        {"P2", -1, "p2", e(n, 4, 3) - e(n, 5, 4)},
        {"X", -1, "x", e(n, 3, 2) - e(n, 6, 5)},
    };
    std::vector<detail::Derived> derived = {
        {"Y1", -2, "y1", "P1", "X", Rational(1)},
        {"Y2", -2, "y2", "P2", "X", Rational(1)},
        {"Z1", -3, "z1", "P1", "Y2", Rational(1)},
        {"Z2", -3, "z2", "P2", "Y2", Rational(1)},
        {"Z3", -4, "z3", "P1", "Z2", Rational(1)},
        {"Z4", -5, "z4", "X", "Z3", Rational(1)},
    };
    std::vector<std::string> order = {"P1", "P2", "X", "Y1", "Y2", "Z1", "Z2", "Z3", "Z4"};
    return {"IIId", AlgebraSpec{Family::B, 3}, Sigma{0, 1, 2},
            detail::assemble(seeds, derived, order, "X")};
}

namespace detail {

// Chevalley bracket table for the negative part of g_2: basis Y_1..Y_6 for
// the root spaces of -a1, -a2, -(a1+a2), -(2a1+a2), -(3a1+a2), -(3a1+2a2).
struct G2Table {
    // nonzero brackets [Y_a, Y_b] = c Y_m, indices 1-based
    struct Entry { int a, b, m; long c; };
    static std::vector<Entry> entries() {
        return {{1, 2, 3, -1}, {1, 3, 4, -2}, {1, 4, 5, 3}, {2, 5, 6, 1}, {3, 4, 6, 3}};
    }
    static std::map<int, Rational> bracket(int a, int b) {
        std::map<int, Rational> out;
        for (const auto& e : entries()) {
            if (e.a == a && e.b == b) out[e.m] += Rational(e.c);
            if (e.a == b && e.b == a) out[e.m] += Rational(-e.c);
        }
        for (auto it = out.begin(); it != out.end();)
            it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return out;
    }
};

struct G2Derived {
    std::string label;
    int degree;
    std::string coord;
    int y_index;     // 1-based index into Y_1..Y_6
    Rational scale;  // element = scale * Y_{y_index}
};

inline GradedNilpotent assemble_g2(const std::vector<G2Derived>& elems,
                                   const std::string& leader_label) {
    std::vector<BasisElement> basis;
    std::map<int, int> y_to_idx;
    for (const auto& el : elems) {
        y_to_idx[el.y_index] = static_cast<int>(basis.size());
        basis.push_back(BasisElement{el.label, el.degree, el.coord, std::nullopt});
    }
    GradedNilpotent g(std::move(basis));
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = a + 1; b < elems.size(); ++b) {
            auto yb = G2Table::bracket(elems[a].y_index, elems[b].y_index);
            std::map<int, Rational> expansion;
            for (const auto& [m, c] : yb) {
                auto it = y_to_idx.find(m);
                if (it == y_to_idx.end())
                    throw std::logic_error("g2 assembly: bracket leaves the selected span");
                const auto& target = elems[static_cast<std::size_t>(it->second)];
                expansion[it->second] = elems[a].scale * elems[b].scale * c / target.scale;
            }
            g.set_bracket(static_cast<int>(a), static_cast<int>(b), std::move(expansion));
        }
    g.set_leader(g.index_of(leader_label));
    g.validate();
    return g;
}

}  // namespace detail

// Va and Vb from the hard-coded g_2 Chevalley table.  Va: Q = Y_3, X = Y_1,
// P = [Q,X] = 2Y_4, Y = [P,X] = -6Y_5, Z = [Q,P] = 6Y_6.  Vb adds R = Y_2.
inline GradedNilpotent g2_chevalley(const Sigma& sigma) {
    if (sigma == Sigma{0}) {
        return detail::assemble_g2(
            {
                {"Q", -1, "q", 3, Rational(1)},
                {"X", -1, "x", 1, Rational(1)},
                {"P", -2, "p", 4, Rational(2)},
                {"Y", -3, "y", 5, Rational(-6)},
                {"Z", -3, "z", 6, Rational(6)},
            },
            "X");
    }
    if (sigma == Sigma{0, 1}) {
        return detail::assemble_g2(
            {
                {"R", -1, "r", 2, Rational(1)},
                {"X", -1, "x", 1, Rational(1)},
                {"Q", -2, "q", 3, Rational(1)},
                {"P", -3, "p", 4, Rational(2)},
                {"Y", -4, "y", 5, Rational(-6)},
                {"Z", -5, "z", 6, Rational(6)},
            },
            "X");
    }
    throw std::invalid_argument("g2_chevalley: Sigma must be {a1} or {a1,a2}");
}

inline CaseRealization build_case_Va() {
    return {"Va", AlgebraSpec{Family::G, 2}, Sigma{0}, g2_chevalley(Sigma{0})};
}
inline CaseRealization build_case_Vb() {
    return {"Vb", AlgebraSpec{Family::G, 2}, Sigma{0, 1}, g2_chevalley(Sigma{0, 1})};
}

inline CaseRealization build_case(const std::string& id, std::optional<int> rank = std::nullopt) {
    const int ell = rank.value_or(case_default_rank(id));
    if (id == "Ia") return build_case_Ia(ell);
    if (id == "Ib") return build_case_Ib(ell);
    if (id == "IIa") return build_case_IIa(ell);
    if (id == "IIb") return build_case_IIb();
    if (id == "IIIa") return build_case_IIIa(ell);
    if (id == "IIIb") return build_case_IIIb();
    if (id == "IIIc") return build_case_IIIc();
    if (id == "IIId") return build_case_IIId();
    if (id == "IVa") return build_case_IVa(ell);
    if (id == "Va") return build_case_Va();
    if (id == "Vb") return build_case_Vb();
    throw std::invalid_argument("unknown case id: " + id);
}

}  // namespace parmonge
