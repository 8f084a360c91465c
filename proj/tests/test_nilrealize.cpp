#include <catch2/catch_amalgamated.hpp>

#include "parmonge/grading.hpp"
#include "parmonge/nilpotent.hpp"
#include "parmonge/standard_cases.hpp"

using namespace parmonge;

namespace {

// Expected nonzero brackets of a case, as (left, right) -> expansion over
// labels; everything not listed must vanish.
using BracketTable = std::map<std::pair<std::string, std::string>, std::map<std::string, Rational>>;

void check_table(const CaseRealization& cr, const BracketTable& expected) {
    const GradedNilpotent& g = cr.algebra;
    const auto m = static_cast<int>(g.dim());
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            const std::string& la = g.basis()[static_cast<std::size_t>(a)].label;
            const std::string& lb = g.basis()[static_cast<std::size_t>(b)].label;
            std::map<std::string, Rational> want;
            auto it = expected.find({la, lb});
            if (it != expected.end()) {
                want = it->second;
            } else {
                it = expected.find({lb, la});
                if (it != expected.end())
                    for (const auto& [l, c] : it->second) want[l] = -c;
            }
            std::map<std::string, Rational> got;
            for (const auto& [c, v] : g.bracket(a, b))
                got[g.basis()[static_cast<std::size_t>(c)].label] = v;
            INFO(cr.id << ": [" << la << ", " << lb << "]");
            REQUIRE(got == want);
        }
}

}  // namespace

TEST_CASE("matrix algebra construction") {
    SECTION("A3: 4x4 trace-free, H1 = E11 - E22") {
        MatrixAlgebra ma({Family::A, 3});
        REQUIRE(ma.n() == 4);
        RationalMatrix h1 = ma.cartan_element(0);
        REQUIRE(h1 == RationalMatrix::unit(4, 1, 1) - RationalMatrix::unit(4, 2, 2));
        REQUIRE(ma.member(RationalMatrix::unit(4, 1, 2)));
        REQUIRE(!ma.member(RationalMatrix::unit(4, 1, 1)));
    }
    SECTION("C3: 6x6 symplectic") {
        MatrixAlgebra ma({Family::C, 3});
        REQUIRE(ma.n() == 6);
        // P_i and X from the IIa construction are members
        REQUIRE(ma.member(RationalMatrix::unit(6, 4, 3)));
        REQUIRE(!ma.member(RationalMatrix::unit(6, 1, 2)));
    }
    SECTION("B3: 7x7, n = 2l+1") {
        MatrixAlgebra ma({Family::B, 3});
        REQUIRE(ma.n() == 7);
        REQUIRE(ma.member(RationalMatrix::unit(7, 2, 1) - RationalMatrix::unit(7, 7, 6)));
        REQUIRE(!ma.member(RationalMatrix::unit(7, 2, 1)));
    }
    SECTION("exceptional families have no matrix model here") {
        REQUIRE_THROWS_AS(MatrixAlgebra({Family::G, 2}), std::invalid_argument);
    }
}

TEST_CASE("root spaces") {
    SECTION("A_l, -a2 -> E_{3,2}") {
        for (int l : {3, 5}) {
            MatrixAlgebra ma({Family::A, l});
            Root beta(static_cast<std::size_t>(l), 0);
            beta[1] = -1;
            REQUIRE(ma.root_space(beta) ==
                    RationalMatrix::unit(static_cast<std::size_t>(l + 1), 3, 2));
        }
    }
    SECTION("C_l, -a_l -> E_{l+1,l}") {
        for (int l : {3, 4}) {
            MatrixAlgebra ma({Family::C, l});
            Root beta(static_cast<std::size_t>(l), 0);
            beta[static_cast<std::size_t>(l - 1)] = -1;
            REQUIRE(ma.root_space(beta) ==
                    RationalMatrix::unit(static_cast<std::size_t>(2 * l),
                                         static_cast<std::size_t>(l + 1),
                                         static_cast<std::size_t>(l)));
        }
    }
    SECTION("B_l, -a1 -> E_{2,1} - E_{n,n-1}") {
        for (int l : {3, 4}) {
            MatrixAlgebra ma({Family::B, l});
            const auto n = static_cast<std::size_t>(2 * l + 1);
            Root beta(static_cast<std::size_t>(l), 0);
            beta[0] = -1;
            REQUIRE(ma.root_space(beta) ==
                    RationalMatrix::unit(n, 2, 1) - RationalMatrix::unit(n, n, n - 1));
        }
    }
    SECTION("every root space is a member and an eigenvector") {
        for (const auto& spec :
             std::vector<AlgebraSpec>{{Family::A, 3}, {Family::B, 3}, {Family::C, 3},
                                      {Family::D, 4}}) {
            MatrixAlgebra ma(spec);
            RootSystem rs(spec);
            for (const Root& beta : rs.positive_roots()) {
                Root neg(beta.size());
                for (std::size_t i = 0; i < beta.size(); ++i) neg[i] = -beta[i];
                for (const Root& r : {beta, neg}) {
                    RationalMatrix v = ma.root_space(r);
                    REQUIRE(ma.member(v));
                    for (int i = 0; i < rs.rank(); ++i) {
                        RationalMatrix lhs = commutator(ma.cartan_element(i), v);
                        REQUIRE(lhs == v.scaled(Rational(ma.eigenvalue(r, i))));
                    }
                }
            }
        }
    }
}

TEST_CASE("case Ia bracket table") {
    for (int l : {3, 4, 5}) {
        CaseRealization cr = build_case_Ia(l);
        cr.algebra.validate();
        BracketTable t;
        t[{"P0", "X"}] = {{"Y0", Rational(1)}};
        for (int i = 1; i <= l - 2; ++i) {
            std::string pi = "P" + std::to_string(i), yi = "Y" + std::to_string(i),
                        zi = "Z" + std::to_string(i);
            t[{pi, "X"}] = {{yi, Rational(1)}};
            t[{"P0", yi}] = {{zi, Rational(1)}};
            t[{pi, "Y0"}] = {{zi, Rational(1)}};
        }
        check_table(cr, t);
        // explicit matrices from the construction
        const auto n = static_cast<std::size_t>(l + 1);
        REQUIRE(*cr.algebra.basis()[static_cast<std::size_t>(cr.algebra.index_of("Y0"))].matrix ==
                RationalMatrix::unit(n, 3, 1).scaled(Rational(-1)));
        REQUIRE(*cr.algebra.basis()[static_cast<std::size_t>(cr.algebra.index_of("Z1"))].matrix ==
                RationalMatrix::unit(n, 4, 1).scaled(Rational(-1)));
    }
}

TEST_CASE("case IIa bracket table") {
    for (int l : {3, 4, 5}) {
        CaseRealization cr = build_case_IIa(l);
        cr.algebra.validate();
        BracketTable t;
        for (int h = 1; h <= l - 1; ++h) {
            t[{"P" + std::to_string(h), "X"}] = {{"Y" + std::to_string(h), Rational(1)}};
            for (int i = 1; i <= l - 1; ++i) {
                std::string z = h <= i ? "Z" + std::to_string(h) + std::to_string(i)
                                       : "Z" + std::to_string(i) + std::to_string(h);
                t[{"P" + std::to_string(h), "Y" + std::to_string(i)}] = {
                    {z, Rational(h == i ? 2 : 1)}};
            }
        }
        check_table(cr, t);
        REQUIRE(*cr.algebra.basis()[static_cast<std::size_t>(cr.algebra.index_of("Y1"))].matrix ==
                RationalMatrix::unit(static_cast<std::size_t>(2 * l),
                                     static_cast<std::size_t>(l + 1), 1)
                        .scaled(Rational(-1)) -
                    RationalMatrix::unit(static_cast<std::size_t>(2 * l),
                                         static_cast<std::size_t>(2 * l), static_cast<std::size_t>(l)));
        // Z_ii = E_{2l+1-i, i}
        REQUIRE(*cr.algebra.basis()[static_cast<std::size_t>(cr.algebra.index_of("Z11"))].matrix ==
                RationalMatrix::unit(static_cast<std::size_t>(2 * l),
                                     static_cast<std::size_t>(2 * l), 1));
    }
}

TEST_CASE("case IIIa/IVa bracket tables: [P_i, Y_j] = kappa_{ij} Z") {
    auto run = [](const CaseRealization& cr, int nd) {
        cr.algebra.validate();
        BracketTable t;
        for (int i = 1; i <= nd; ++i) {
            t[{"P" + std::to_string(i), "X"}] = {{"Y" + std::to_string(i), Rational(1)}};
            // kappa = K_{n-4}: antidiagonal ones
            t[{"P" + std::to_string(i), "Y" + std::to_string(nd + 1 - i)}] = {{"Z", Rational(1)}};
        }
        check_table(cr, t);
    };
    for (int l : {2, 3, 4, 5}) run(build_case_IIIa(l), 2 * l - 3);
    for (int l : {4, 5}) run(build_case_IVa(l), 2 * l - 4);
}

TEST_CASE("case IIb bracket table and grading") {
    CaseRealization cr = build_case_IIb();
    cr.algebra.validate();
    BracketTable t;
    t[{"P1", "X"}] = {{"Y1", Rational(1)}};
    t[{"P2", "X"}] = {{"Y2", Rational(1)}};
    t[{"P1", "Y2"}] = {{"Z1", Rational(1)}};
    t[{"P2", "Y1"}] = {{"Z1", Rational(1)}};
    t[{"X", "Y2"}] = {{"Z2", Rational(1)}};
    t[{"P1", "Z2"}] = {{"Z3", Rational(2)}};
    t[{"X", "Z1"}] = {{"Z3", Rational(1)}};
    t[{"Y1", "Y2"}] = {{"Z3", Rational(1)}};
    t[{"P1", "Z3"}] = {{"Z4", Rational(1)}};
    t[{"Y1", "Z1"}] = {{"Z4", Rational(1)}};
    check_table(cr, t);
    REQUIRE(cr.algebra.degree_dims() ==
            std::map<int, int>{{-1, 3}, {-2, 2}, {-3, 2}, {-4, 1}, {-5, 1}});
    // explicit matrices from the construction
    const GradedNilpotent& g = cr.algebra;
    auto mat = [&](const std::string& l) {
        return *g.basis()[static_cast<std::size_t>(g.index_of(l))].matrix;
    };
    using RM = RationalMatrix;
    REQUIRE(mat("Y1") == RM::unit(6, 6, 4) - RM::unit(6, 3, 1));
    REQUIRE(mat("Y2") == RM::unit(6, 5, 3) + RM::unit(6, 4, 2));
    REQUIRE(mat("Z1") == RM::unit(6, 4, 1).scaled(Rational(-1)) - RM::unit(6, 6, 3));
    REQUIRE(mat("Z2") == RM::unit(6, 5, 2).scaled(Rational(-2)));
    REQUIRE(mat("Z3") == RM::unit(6, 6, 2) + RM::unit(6, 5, 1));
    REQUIRE(mat("Z4") == RM::unit(6, 6, 1).scaled(Rational(-2)));
}

TEST_CASE("case IIIc bracket table and grading") {
    CaseRealization cr = build_case_IIIc();
    cr.algebra.validate();
    BracketTable t;
    t[{"Q1", "X"}] = {{"P1", Rational(1)}};
    t[{"Q2", "X"}] = {{"P2", Rational(1)}};
    t[{"X", "P1"}] = {{"Y1", Rational(-1)}};
    t[{"X", "P2"}] = {{"Y2", Rational(-1)}};
    t[{"Q1", "Y2"}] = {{"Z", Rational(1)}};
    t[{"Q2", "Y1"}] = {{"Z", Rational(-1)}};
    t[{"P1", "P2"}] = {{"Z", Rational(-1)}};
    check_table(cr, t);
    REQUIRE(cr.algebra.degree_dims() == std::map<int, int>{{-1, 3}, {-2, 2}, {-3, 2}, {-4, 1}});
    using RM = RationalMatrix;
    const GradedNilpotent& g = cr.algebra;
    auto mat = [&](const std::string& l) {
        return *g.basis()[static_cast<std::size_t>(g.index_of(l))].matrix;
    };
    REQUIRE(mat("P1") == RM::unit(7, 6, 4) - RM::unit(7, 4, 2));
    REQUIRE(mat("P2") == RM::unit(7, 7, 4) - RM::unit(7, 4, 1));
    REQUIRE(mat("Y1") == RM::unit(7, 6, 3) - RM::unit(7, 5, 2));
    REQUIRE(mat("Y2") == RM::unit(7, 7, 3) - RM::unit(7, 5, 1));
    REQUIRE(mat("Z") == RM::unit(7, 6, 1) - RM::unit(7, 7, 2));
}

TEST_CASE("case IIId bracket table and grading") {
    CaseRealization cr = build_case_IIId();
    cr.algebra.validate();
    BracketTable t;
    t[{"P1", "X"}] = {{"Y1", Rational(1)}};
    t[{"P2", "X"}] = {{"Y2", Rational(1)}};
    t[{"P1", "Y2"}] = {{"Z1", Rational(1)}};
    t[{"P2", "Y1"}] = {{"Z1", Rational(1)}};
    t[{"P2", "Y2"}] = {{"Z2", Rational(1)}};
    t[{"P1", "Z2"}] = {{"Z3", Rational(1)}};
    t[{"P2", "Z1"}] = {{"Z3", Rational(1)}};
    t[{"X", "Z3"}] = {{"Z4", Rational(1)}};
    t[{"Y1", "Z2"}] = {{"Z4", Rational(-1)}};
    t[{"Y2", "Z1"}] = {{"Z4", Rational(-1)}};
    check_table(cr, t);
    REQUIRE(cr.algebra.degree_dims() ==
            std::map<int, int>{{-1, 3}, {-2, 2}, {-3, 2}, {-4, 1}, {-5, 1}});
    using RM = RationalMatrix;
    const GradedNilpotent& g = cr.algebra;
    auto mat = [&](const std::string& l) {
        return *g.basis()[static_cast<std::size_t>(g.index_of(l))].matrix;
    };
    REQUIRE(mat("Y1") == RM::unit(7, 7, 5) - RM::unit(7, 3, 1));
    REQUIRE(mat("Y2") == RM::unit(7, 4, 2) - RM::unit(7, 6, 4));
    REQUIRE(mat("Z1") == RM::unit(7, 7, 4) - RM::unit(7, 4, 1));
    REQUIRE(mat("Z2") == RM::unit(7, 6, 3) - RM::unit(7, 5, 2));
    REQUIRE(mat("Z3") == RM::unit(7, 5, 1) - RM::unit(7, 7, 3));
    REQUIRE(mat("Z4") == RM::unit(7, 7, 2) - RM::unit(7, 6, 1));
}

TEST_CASE("g2 chevalley cases") {
    SECTION("Va: [Q,P] = Z, [P,X] = Y, [Q,X] = P") {
        CaseRealization cr = build_case_Va();
        cr.algebra.validate();
        BracketTable t;
        t[{"Q", "X"}] = {{"P", Rational(1)}};
        t[{"P", "X"}] = {{"Y", Rational(1)}};
        t[{"Q", "P"}] = {{"Z", Rational(1)}};
        check_table(cr, t);
        REQUIRE(cr.algebra.degree_dims() == std::map<int, int>{{-1, 2}, {-2, 1}, {-3, 2}});
    }
    SECTION("Vb: adds R with [R,X] = Q and [Y,R] = Z") {
        CaseRealization cr = build_case_Vb();
        cr.algebra.validate();
        BracketTable t;
        t[{"R", "X"}] = {{"Q", Rational(1)}};
        t[{"Q", "X"}] = {{"P", Rational(1)}};
        t[{"P", "X"}] = {{"Y", Rational(1)}};
        t[{"Y", "R"}] = {{"Z", Rational(1)}};
        t[{"Q", "P"}] = {{"Z", Rational(1)}};
        check_table(cr, t);
        REQUIRE(cr.algebra.degree_dims() ==
                std::map<int, int>{{-1, 2}, {-2, 1}, {-3, 1}, {-4, 1}, {-5, 1}});
    }
    SECTION("unsupported Sigma") {
        REQUIRE_THROWS_AS(g2_chevalley(Sigma{1}), std::invalid_argument);
    }
}

TEST_CASE("realized cases match the grading module dimensions") {
    struct Item {
        std::string id;
        std::optional<int> rank;
    };
    for (const auto& item : std::vector<Item>{{"Ia", 3},
                                              {"Ia", 5},
                                              {"Ib", 4},
                                              {"IIa", 3},
                                              {"IIa", 4},
                                              {"IIb", std::nullopt},
                                              {"IIIa", 2},
                                              {"IIIa", 4},
                                              {"IIIb", std::nullopt},
                                              {"IIIc", std::nullopt},
                                              {"IIId", std::nullopt},
                                              {"IVa", 4},
                                              {"IVa", 5},
                                              {"Va", std::nullopt},
                                              {"Vb", std::nullopt}}) {
        CaseRealization cr = build_case(item.id, item.rank);
        cr.algebra.validate();
        RootSystem rs(cr.spec);
        GradingInfo info = grading_components(rs, cr.sigma);
        auto dims = cr.algebra.degree_dims();
        INFO(cr.id);
        for (const auto& [deg, dim] : dims) REQUIRE(info.dims.at(deg) == dim);
        int total = 0;
        for (const auto& [deg, dim] : dims) total += dim;
        int expected = 0;
        for (int j = 1; j <= info.depth; ++j) expected += info.dims.at(-j);
        REQUIRE(total == expected);
    }
}

TEST_CASE("Monge structure: ad_X maps y onto g_-2 bijectively") {
    for (const auto& id : std::vector<std::string>{"Ia", "IIa", "IIIa", "IVa", "IIb",
                                                   "IIIc", "IIId", "Va", "Vb"}) {
        CaseRealization cr = build_case(id);
        const GradedNilpotent& g = cr.algebra;
        REQUIRE(g.leader_index().has_value());
        int x = *g.leader_index();
        std::vector<int> g2;
        for (std::size_t i = 0; i < g.dim(); ++i)
            if (g.basis()[i].degree == -2) g2.push_back(static_cast<int>(i));
        // images [y_i, X] over the degree -1 complement of the leader
        std::vector<std::map<int, Rational>> images;
        for (std::size_t i = 0; i < g.dim(); ++i) {
            if (g.basis()[i].degree != -1 || static_cast<int>(i) == x) continue;
            images.push_back(g.bracket(static_cast<int>(i), x));
        }
        REQUIRE(images.size() == g2.size());
        RationalMatrix m(images.size(), g2.size());
        for (std::size_t r = 0; r < images.size(); ++r)
            for (std::size_t c = 0; c < g2.size(); ++c) {
                auto it = images[r].find(g2[c]);
                if (it != images[r].end()) m.at(r, c) = it->second;
            }
        INFO(id);
        REQUIRE(rank(m) == g2.size());
    }
}

TEST_CASE("dual structure equations") {
    SECTION("Ia: d theta_z^i = theta_y^i ^ theta_p0 + theta_y0 ^ theta_p^i") {
        CaseRealization cr = build_case_Ia(3);
        auto eqs = cr.algebra.dual_structure_equations();
        const GradedNilpotent& g = cr.algebra;
        int p0 = g.index_of("P0"), p1 = g.index_of("P1"), x = g.index_of("X");
        int y0 = g.index_of("Y0"), y1 = g.index_of("Y1");
        for (const auto& [label, form] : eqs) {
            if (label == "Z1") {
                CoframeTwoForm expect;
                expect.add(y1, p0, Rational(1));
                expect.add(y0, p1, Rational(1));
                REQUIRE(form == expect);
            } else if (label == "Y0") {
                CoframeTwoForm expect;
                expect.add(x, p0, Rational(1));
                REQUIRE(form == expect);
            } else if (label == "P0" || label == "P1" || label == "X") {
                REQUIRE(form.comps.empty());
            }
        }
    }
    SECTION("Va: d theta^z = theta^p ^ theta^q; degree -1 duals closed") {
        CaseRealization cr = build_case_Va();
        auto eqs = cr.algebra.dual_structure_equations();
        const GradedNilpotent& g = cr.algebra;
        for (const auto& [label, form] : eqs) {
            if (label == "Z") {
                CoframeTwoForm expect;
                expect.add(g.index_of("P"), g.index_of("Q"), Rational(1));
                REQUIRE(form == expect);
            }
            if (label == "Q" || label == "X") REQUIRE(form.comps.empty());
        }
    }
}

TEST_CASE("generic realization agrees with grading dims and is valid") {
    for (const auto& spec : std::vector<AlgebraSpec>{{Family::A, 4}, {Family::B, 3},
                                                     {Family::C, 3}, {Family::D, 4}}) {
        MatrixAlgebra ma(spec);
        RootSystem rs(spec);
        for (const auto& [sigma, verdict] : enumerate_monge(spec)) {
            GradedNilpotent g = realize_negative_part(ma, rs, sigma);
            g.validate();
            GradingInfo info = grading_components(rs, sigma);
            for (const auto& [deg, dim] : g.degree_dims()) REQUIRE(info.dims.at(deg) == dim);
        }
    }
}
