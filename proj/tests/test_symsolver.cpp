#include <catch2/catch_amalgamated.hpp>

#include "parmonge/grading.hpp"
#include "parmonge/mc_forms.hpp"
#include "parmonge/symmetry.hpp"

using namespace parmonge;

namespace {

std::map<int, int> root_dims(const AlgebraSpec& spec, const Sigma& sigma) {
    RootSystem rs(spec);
    return grading_components(rs, sigma).dims;
}

void require_grades_match(const SymmetryAlgebra& sa, const std::vector<int>& weights,
                          const std::map<int, int>& expected) {
    auto dims = grade_decomposition(sa, weights);
    REQUIRE(dims == expected);
}

}  // namespace

TEST_CASE("monge_spec construction") {
    SECTION("Ia l=3: one y0, one y1, one z1, F^1_{01} = 1/2") {
        MongeSpec ms = monge_spec("Ia", 3);
        REQUIRE(ms.n_y == 2);
        REQUIRE(ms.n_z == 1);
        REQUIRE(ms.y_names == std::vector<std::string>{"y0", "y1"});
        REQUIRE(ms.z_names == std::vector<std::string>{"z1"});
        REQUIRE(ms.f[0].at(0, 1) == Rational(1, 2));
        REQUIRE(ms.f[0].at(1, 0) == Rational(1, 2));
        REQUIRE(ms.f[0].at(0, 0) == Rational(0));
    }
    SECTION("IIa l=3: z11, z12, z22") {
        MongeSpec ms = monge_spec("IIa", 3);
        REQUIRE(ms.z_names == std::vector<std::string>{"z11", "z12", "z22"});
        REQUIRE(ms.f[0].at(0, 0) == Rational(1));
        REQUIRE(ms.f[1].at(0, 1) == Rational(1, 2));
    }
    SECTION("IIIa l=3 with signature (2,1): kappa = diag(1,1,-1)/2") {
        MongeSpec ms = monge_spec("IIIa", 3, std::make_pair(2, 1));
        REQUIRE(ms.n_y == 3);
        REQUIRE(ms.f[0].at(0, 0) == Rational(1, 2));
        REQUIRE(ms.f[0].at(2, 2) == Rational(-1, 2));
    }
    SECTION("bad signature sums are rejected") {
        REQUIRE_THROWS_AS(monge_spec("IIIa", 3, std::make_pair(2, 2)), std::invalid_argument);
        REQUIRE_THROWS_AS(monge_spec("IVa", 4, std::make_pair(5, 0)), std::invalid_argument);
        REQUIRE_THROWS_AS(monge_spec("IIIa", 3, std::make_pair(-1, 4)), std::invalid_argument);
    }
}

TEST_CASE("determining system shape") {
    SECTION("IIIa l=3: 5 functions x 21 monomials = 105 unknowns") {
        LinearSystem sys = build_determining(monge_spec("IIIa", 3));
        REQUIRE(sys.unknowns().size() == 105);
    }
    SECTION("Ia l=3: 4 functions x 15 monomials = 60 unknowns") {
        LinearSystem sys = build_determining(monge_spec("Ia", 3));
        REQUIRE(sys.unknowns().size() == 60);
    }
    SECTION("IIIa l=3 kernel dimension 21 = dim so(7)") {
        LinearSystem sys = build_determining(monge_spec("IIIa", 3));
        REQUIRE(sys.nullspace().size() == 21);
    }
}

TEST_CASE("symmetry dimensions of the classical quadratic families") {
    struct Case {
        std::string id;
        int ell;
        std::optional<std::pair<int, int>> sig;
        std::size_t dim;
    };
    for (const auto& c : std::vector<Case>{
             {"Ia", 3, {}, 15},   // sl(4)
             {"Ia", 4, {}, 24},   // sl(5)
             {"IIa", 3, {}, 21},  // sp(3)
             {"IIIa", 3, std::make_pair(3, 0), 21},
             {"IIIa", 3, std::make_pair(2, 1), 21},  // so(7), both signatures
             {"IVa", 4, std::make_pair(2, 2), 28},   // so(8)
             {"IVa", 4, std::make_pair(4, 0), 28},
         }) {
        MongeSpec ms = monge_spec(c.id, c.ell, c.sig);
        SymmetryAlgebra sa = solve_symmetries(ms);
        INFO(c.id << " l=" << c.ell);
        REQUIRE(sa.dim() == c.dim);
    }
}

TEST_CASE("solved fields satisfy the symmetry equation and close") {
    MongeSpec ms = monge_spec("Ia", 3);
    SymmetryAlgebra sa = solve_symmetries(ms);  // throws on violation
    REQUIRE(sa.dim() == 15);
    // structure constants recorded for every nonvanishing bracket
    std::size_t nonzero = sa.structure.size();
    REQUIRE(nonzero > 0);
    // negative control: a non-symmetry is rejected by the span solver
    FieldSpanSolver solver(sa.basis);
    PolyVectorField junk{sa.space, {}};
    junk.add_component(0, Polynomial::monomial(sa.space, Monomial{0, 2, 0, 0}, Rational(1)));
    REQUIRE(!solver.expand(junk).has_value());
    REQUIRE(!satisfies_monge_symmetry_equation(ms, junk));
}

TEST_CASE("quadratic ansatz is sufficient: degree 3 adds nothing") {
    for (const auto& [id, ell] :
         std::vector<std::pair<std::string, int>>{{"Ia", 3}, {"IIa", 3}, {"IIIa", 3}}) {
        std::size_t d2 = monge_symmetry_fields(monge_spec(id, ell), 2).size();
        std::size_t d3 = monge_symmetry_fields(monge_spec(id, ell), 3).size();
        INFO(id);
        REQUIRE(d2 == d3);
    }
}

TEST_CASE("grade decomposition of the classical quadratic algebras") {
    SECTION("IIIa l=3: leader weights give grade dims 5,11,5") {
        SymmetryAlgebra sa = solve_symmetries(monge_spec("IIIa", 3));
        auto dims = grade_decomposition(sa, std::vector<int>(sa.space->dim(), 1));
        REQUIRE(dims == std::map<int, int>{{-1, 5}, {0, 11}, {1, 5}});
        // matches the |1|-grading of B3 by the leader alpha_1
        REQUIRE(dims == root_dims({Family::B, 3}, Sigma{0}));
    }
    SECTION("IIIa l=3: full weights (1,2,3) match the B3{a1,a2} grading") {
        SymmetryAlgebra sa = solve_symmetries(monge_spec("IIIa", 3));
        require_grades_match(sa, sa.space->weights, root_dims({Family::B, 3}, Sigma{0, 1}));
    }
    SECTION("Ia l=3: full weights match the A3{a1,a2,a3} grading") {
        SymmetryAlgebra sa = solve_symmetries(monge_spec("Ia", 3));
        require_grades_match(sa, sa.space->weights, root_dims({Family::A, 3}, Sigma{0, 1, 2}));
        // symmetric dimensions
        auto dims = grade_decomposition(sa, sa.space->weights);
        for (const auto& [g, d] : dims) REQUIRE(dims.at(-g) == d);
    }
    SECTION("Ia grade +1 contains x^2 dx + x y0 dy0 + x y1 dy1 + y0 y1 dz1") {
        SymmetryAlgebra sa = solve_symmetries(monge_spec("Ia", 3));
        auto s = sa.space;
        auto coord = [&](const std::string& n) { return s->index_of(n); };
        auto mono = [&](std::initializer_list<std::pair<std::string, int>> factors) {
            Monomial m(s->dim(), 0);
            for (const auto& [n, e] : factors) m[static_cast<std::size_t>(coord(n))] = e;
            return m;
        };
        PolyVectorField f{s, {}};
        f.add_component(coord("x"), Polynomial::monomial(s, mono({{"x", 2}}), Rational(1)));
        f.add_component(coord("y0"),
                        Polynomial::monomial(s, mono({{"x", 1}, {"y0", 1}}), Rational(1)));
        f.add_component(coord("y1"),
                        Polynomial::monomial(s, mono({{"x", 1}, {"y1", 1}}), Rational(1)));
        f.add_component(coord("z1"),
                        Polynomial::monomial(s, mono({{"y0", 1}, {"y1", 1}}), Rational(1)));
        REQUIRE(satisfies_monge_symmetry_equation(monge_spec("Ia", 3), f));
        FieldSpanSolver solver(sa.basis);
        REQUIRE(solver.expand(f).has_value());
    }
}

TEST_CASE("point symmetry check") {
    SECTION("classical quadratic cases: prolonged fields have v-free base coefficients") {
        MongeSpec ms = monge_spec("IIIa", 3);
        SymmetryAlgebra sa = solve_symmetries(ms);
        SymmetryAlgebra prolonged;
        std::set<int> base, deriv;
        for (const auto& f : sa.basis) {
            ProlongedField pf = prolong(ms, f);
            prolonged.space = pf.jet_space;
            prolonged.basis.push_back(pf.field);
        }
        for (int c = 0; c < 1 + ms.n_y + ms.n_z; ++c) base.insert(c);
        for (int i = 0; i < ms.n_y; ++i) deriv.insert(1 + ms.n_y + ms.n_z + i);
        REQUIRE(point_symmetry_check(prolonged, base, deriv));
    }
    SECTION("negative control: a contact field with v-dependent C fails") {
        MongeSpec ms = monge_spec("IIIa", 3);
        SymmetryAlgebra sa;
        ProlongedField pf = prolong(ms, PolyVectorField{ms.base_space(), {}});
        sa.space = pf.jet_space;
        PolyVectorField bad{pf.jet_space, {}};
        int zc = 1 + ms.n_y;  // dz direction
        int vc = 1 + ms.n_y + ms.n_z;
        bad.add_component(zc, Polynomial::coordinate(pf.jet_space, vc));
        sa.basis.push_back(bad);
        REQUIRE(!point_symmetry_check(sa, {zc}, {vc}));
    }
}

TEST_CASE("generic pfaffian solver on the standard systems") {
    SECTION("Va: the Hilbert-Cartan system has a 14-dimensional algebra") {
        CaseRealization cr = build_case("Va");
        PfaffianSystem ps = standard_pfaffian(golden_coframe(cr));
        SymmetryAlgebra sa = pfaffian_symmetries(ps, 3);
        REQUIRE(sa.dim() == 14);
        // grade dims match the G2{a1} grading
        require_grades_match(sa, ps.space->weights, root_dims({Family::G, 2}, Sigma{0}));
    }
    SECTION("IIIc full system: 21; restricted 7-coordinate system: 16") {
        CaseRealization cr = build_case("IIIc");
        SymmetryAlgebra full = pfaffian_symmetries(standard_pfaffian(golden_coframe(cr)), 4);
        REQUIRE(full.dim() == 21);
        SymmetryAlgebra restricted = pfaffian_symmetries(iiic_restricted_system(), 3);
        REQUIRE(restricted.dim() == 16);
    }
    SECTION("Vb: 14, prolonged from the Va space (no r in lower coefficients)") {
        CaseRealization cr = build_case("Vb");
        PfaffianSystem ps = standard_pfaffian(golden_coframe(cr));
        SymmetryAlgebra sa = pfaffian_symmetries(ps, 5);
        REQUIRE(sa.dim() == 14);
        std::set<int> base;
        for (const auto& n : std::vector<std::string>{"x", "q", "p", "y", "z"})
            base.insert(ps.space->index_of(n));
        REQUIRE(point_symmetry_check(sa, base, {ps.space->index_of("r")}));
    }
    SECTION("IIb: 21-dimensional, point symmetries of the Monge system") {
        CaseRealization cr = build_case("IIb");
        PfaffianSystem ps = standard_pfaffian(golden_coframe(cr));
        SymmetryAlgebra sa = pfaffian_symmetries(ps, 5);
        REQUIRE(sa.dim() == 21);
        std::set<int> base, deriv;
        for (const auto& n :
             std::vector<std::string>{"x", "y1", "y2", "z1", "z2", "z3", "z4"})
            base.insert(ps.space->index_of(n));
        deriv = {ps.space->index_of("p1"), ps.space->index_of("p2")};
        REQUIRE(point_symmetry_check(sa, base, deriv));
    }
}

TEST_CASE("known-infinite cases: kernel grows with the bound") {
    SECTION("Ib (contact system on J^1(R, R^2))") {
        CaseRealization cr = build_case("Ib", 3);
        PfaffianSystem ps = standard_pfaffian(golden_coframe(cr));
        std::size_t d2 = pfaffian_kernel(ps, 2).size();
        std::size_t d3 = pfaffian_kernel(ps, 3).size();
        std::size_t d4 = pfaffian_kernel(ps, 4).size();
        REQUIRE(d2 < d3);
        REQUIRE(d3 < d4);
    }
    SECTION("IIIb (contact system on J^1(R, R))") {
        CaseRealization cr = build_case("IIIb");
        PfaffianSystem ps = standard_pfaffian(golden_coframe(cr));
        std::size_t d2 = pfaffian_kernel(ps, 2).size();
        std::size_t d4 = pfaffian_kernel(ps, 4).size();
        REQUIRE(d2 < d4);
    }
}

TEST_CASE("signature independence of the symmetry dimension") {
    for (int r = 0; r <= 3; ++r) {
        MongeSpec ms = monge_spec("IIIa", 3, std::make_pair(r, 3 - r));
        REQUIRE(monge_symmetry_fields(ms).size() == 21);
    }
}

TEST_CASE("leader-weight grades match the |1|-grading by the leader alone") {
    struct Item {
        std::string id;
        int ell;
        AlgebraSpec spec;
        Sigma leader_sigma;
    };
    for (const auto& item : std::vector<Item>{{"Ia", 3, {Family::A, 3}, Sigma{1}},
                                              {"IIa", 3, {Family::C, 3}, Sigma{2}},
                                              {"IIIa", 3, {Family::B, 3}, Sigma{0}},
                                              {"IVa", 4, {Family::D, 4}, Sigma{0}}}) {
        SymmetryAlgebra sa = solve_symmetries(monge_spec(item.id, item.ell));
        auto dims = grade_decomposition(sa, std::vector<int>(sa.space->dim(), 1));
        INFO(item.id);
        REQUIRE(dims == root_dims(item.spec, item.leader_sigma));
    }
}

TEST_CASE("dimensions track dim g across ranks 3..5") {
    auto dim_of = [](const std::string& id, int ell) {
        return monge_symmetry_fields(monge_spec(id, ell)).size();
    };
    // sl(l+1), sp(l), so(2l+1), so(2l)
    REQUIRE(dim_of("Ia", 5) == 35);
    REQUIRE(dim_of("IIa", 4) == 36);
    REQUIRE(dim_of("IIa", 5) == 55);
    REQUIRE(dim_of("IIIa", 4) == 36);
    REQUIRE(dim_of("IIIa", 5) == 55);
    REQUIRE(dim_of("IVa", 5) == 45);
}
