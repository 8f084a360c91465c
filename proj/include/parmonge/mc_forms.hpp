#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "parmonge/forms.hpp"
#include "parmonge/nilpotent.hpp"
#include "parmonge/standard_cases.hpp"
#include "parmonge/poly_matrix.hpp"

namespace parmonge {

// Coframe on the nilpotent group: one 1-form per basis element, over the
// coordinate space named by the dual coordinates (weights = minus the
// degrees).
struct Coframe {
    CoordSpacePtr space;
    std::vector<std::string> labels;  // basis labels, same order as coordinates
    std::vector<PolyForm> forms;      // theta^a, degree 1

    int weight(std::size_t a) const { return space->weights[a]; }
};

inline CoordSpacePtr coordinate_space_of(const GradedNilpotent& g) {
    std::vector<std::string> names;
    std::vector<int> weights;
    for (const auto& b : g.basis()) {
        names.push_back(b.coord_name);
        weights.push_back(-b.degree);
    }
    return make_space(std::move(names), std::move(weights));
}

// Left Maurer-Cartan coframe from the matrix realization, in exponential
// coordinates of the second kind.  The group element is the ordered product
// of exponentials, most negative degree first and the leader's coordinate
// last; theta^a are read off g^{-1} dg = sum_c (R_c^{-1} M_c R_c) dx^c with
// R_c the product of the factors after the c factor.
inline Coframe compute_mc_forms(const GradedNilpotent& g,
                                std::optional<std::vector<int>> ordering = std::nullopt) {
    const std::size_t m = g.dim();
    for (const auto& b : g.basis())
        if (!b.matrix) throw std::invalid_argument("compute_mc_forms: matrix realization required");
    CoordSpacePtr space = coordinate_space_of(g);

    std::vector<int> order;
    if (ordering) {
        order = *ordering;
        if (order.size() != m) throw std::invalid_argument("compute_mc_forms: bad ordering");
    } else {
        for (std::size_t i = 0; i < m; ++i) order.push_back(static_cast<int>(i));
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return g.basis()[static_cast<std::size_t>(a)].degree <
                   g.basis()[static_cast<std::size_t>(b)].degree;
        });
        if (g.leader_index()) {
            auto it = std::find(order.begin(), order.end(), *g.leader_index());
            if (it != order.end()) {
                order.erase(it);
                order.push_back(*g.leader_index());
            }
        }
    }

    const std::size_t n = g.basis().front().matrix->rows();
    // omega_c = R^{-1} M_c R, built right to left over the exponential product.
    std::vector<PolyMatrix> omega(m);
    PolyMatrix r_mat = PolyMatrix::identity(n, space);
    PolyMatrix r_inv = PolyMatrix::identity(n, space);
    for (std::size_t t = m; t-- > 0;) {
        int c = order[t];
        const RationalMatrix& mc = *g.basis()[static_cast<std::size_t>(c)].matrix;
        omega[static_cast<std::size_t>(c)] =
            r_inv * PolyMatrix::from_constant(mc, space) * r_mat;
        r_mat = nilpotent_exp(mc, c, space) * r_mat;
        r_inv = r_inv * nilpotent_exp(mc.scaled(Rational(-1)), c, space);
    }

    // Expansion of each omega_c over the basis matrices.
    RationalMatrix span(n * n, m);
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s)
                span.at(r * n + s, b) = g.basis()[b].matrix->at(r, s);
    // Select m independent rows of the span matrix and invert that block once.
    RationalMatrix spanT = span.transposed();
    auto pivot_rows = rref(spanT);
    if (pivot_rows.size() != m)
        throw std::logic_error("compute_mc_forms: basis matrices are dependent");
    RationalMatrix block(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) block.at(i, j) = span.at(pivot_rows[i], j);
    RationalMatrix aug(m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug.at(i, j) = block.at(i, j);
        aug.at(i, m + i) = Rational(1);
    }
    if (rref(aug).size() != m) throw std::logic_error("compute_mc_forms: singular row block");
    RationalMatrix block_inv(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) block_inv.at(i, j) = aug.at(i, m + j);

    std::vector<PolyForm> forms(m, PolyForm(1, space));
    for (std::size_t c = 0; c < m; ++c) {
        // Collect the monomials of omega_c entrywise, expand each over the basis.
        std::map<Monomial, std::vector<Rational>> by_monomial;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s)
                for (const auto& [mono, coeff] : omega[c].at(r, s).terms()) {
                    auto& vec = by_monomial.try_emplace(mono, std::vector<Rational>(n * n))
                                    .first->second;
                    vec[r * n + s] = coeff;
                }
        for (const auto& [mono, vec] : by_monomial) {
            std::vector<Rational> coef(m);
            for (std::size_t i = 0; i < m; ++i) {
                Rational acc(0);
                for (std::size_t j = 0; j < m; ++j) {
                    if (block_inv.at(i, j).is_zero()) continue;
                    acc += block_inv.at(i, j) * vec[pivot_rows[j]];
                }
                coef[i] = acc;
            }
            // Residue check: the expansion must reproduce every matrix entry.
            for (std::size_t rs = 0; rs < n * n; ++rs) {
                Rational acc(0);
                for (std::size_t b = 0; b < m; ++b)
                    if (!coef[b].is_zero() && !span.at(rs, b).is_zero())
                        acc += span.at(rs, b) * coef[b];
                if (acc != vec[rs])
                    throw std::logic_error("compute_mc_forms: expansion residue nonzero");
            }
            for (std::size_t b = 0; b < m; ++b)
                if (!coef[b].is_zero())
                    forms[b].add_component(static_cast<int>(c),
                                           Polynomial::monomial(space, mono, coef[b]));
        }
    }

    Coframe cf;
    cf.space = space;
    for (const auto& b : g.basis()) cf.labels.push_back(b.label);
    cf.forms = std::move(forms);
    return cf;
}

// d theta^c against the dual structure equation, with the coframe's own forms
// substituted for the theta's.
inline bool coframe_satisfies_structure(const Coframe& cf, const GradedNilpotent& g,
                                        std::string* first_failure = nullptr) {
    auto eqs = g.dual_structure_equations();
    for (std::size_t c = 0; c < cf.forms.size(); ++c) {
        PolyForm lhs = exterior_derivative(cf.forms[c]);
        PolyForm rhs(2, cf.space);
        for (const auto& [key, coeff] : eqs[c].second.comps)
            rhs += wedge(cf.forms[static_cast<std::size_t>(key.first)],
                         cf.forms[static_cast<std::size_t>(key.second)])
                       .scaled(coeff);
        if (lhs != rhs) {
            if (first_failure) *first_failure = eqs[c].first;
            return false;
        }
    }
    return true;
}

// Pfaffian system: a list of 1-form generators on a coordinate space.
struct PfaffianSystem {
    CoordSpacePtr space;
    std::vector<PolyForm> generators;
    std::vector<std::string> generator_labels;
};

// The standard differential system: the coframe elements dual to degrees
// <= -2 (weights >= 2).
inline PfaffianSystem standard_pfaffian(const Coframe& cf) {
    PfaffianSystem ps;
    ps.space = cf.space;
    for (std::size_t a = 0; a < cf.forms.size(); ++a)
        if (cf.weight(a) >= 2) {
            ps.generators.push_back(cf.forms[a]);
            ps.generator_labels.push_back(cf.labels[a]);
        }
    // Pointwise independence at the origin.
    RationalMatrix c0(ps.generators.size(), cf.space->dim());
    for (std::size_t gidx = 0; gidx < ps.generators.size(); ++gidx)
        for (const auto& [k, p] : ps.generators[gidx].components())
            c0.at(gidx, static_cast<std::size_t>(k.first)) = p.constant_term();
    if (rank(c0) != ps.generators.size())
        throw std::logic_error("standard_pfaffian: generators dependent at the origin");
    return ps;
}

// Inverse of the coframe coefficient matrix; rows of the result give the dual
// frame fields E_b = sum_c N_{cb} d/dx^c with theta^a(E_b) = delta^a_b.
inline PolyMatrix coframe_inverse(const Coframe& cf) {
    const std::size_t m = cf.forms.size();
    PolyMatrix mat(m, m, cf.space);
    for (std::size_t a = 0; a < m; ++a)
        for (const auto& [k, p] : cf.forms[a].components())
            mat.at(a, static_cast<std::size_t>(k.first)) = p;
    PolyMatrix eye = PolyMatrix::identity(m, cf.space);
    PolyMatrix defect = eye - mat;
    PolyMatrix inv = eye;
    PolyMatrix power = defect;
    for (std::size_t k = 0; k < m + 1 && !power.is_zero(); ++k) {
        inv = inv + power;
        power = power * defect;
    }
    if (!power.is_zero()) throw std::logic_error("coframe_inverse: coframe not unipotent");
    return inv;
}

inline std::map<int, Polynomial> dual_frame_field(const PolyMatrix& inv, std::size_t b) {
    std::map<int, Polynomial> field;
    for (std::size_t c = 0; c < inv.rows(); ++c)
        if (!inv.at(c, b).is_zero()) field[static_cast<int>(c)] = inv.at(c, b);
    return field;
}

namespace detail {

// Small expression helpers for writing the closed-form coframes.
inline Polynomial var(const CoordSpacePtr& s, const std::string& n) {
    return Polynomial::coordinate(s, s->index_of(n));
}
inline PolyForm dvar(const CoordSpacePtr& s, const std::string& n) {
    return PolyForm::d_coordinate(s, s->index_of(n));
}

}  // namespace detail

// The closed-form Maurer-Cartan coframes of the standard models, stored as
// golden data per case.
inline Coframe golden_coframe(const CaseRealization& cr) {
    using detail::dvar;
    using detail::var;
    const std::string& id = cr.id;
    CoordSpacePtr s = coordinate_space_of(cr.algebra);
    Coframe cf;
    cf.space = s;
    for (const auto& b : cr.algebra.basis()) cf.labels.push_back(b.label);
    auto d = [&](const std::string& n) { return dvar(s, n); };
    auto v = [&](const std::string& n) { return var(s, n); };
    auto push = [&](const PolyForm& f) { cf.forms.push_back(f); };

    const int ell = cr.spec.rank;
    if (id == "Ia") {
        push(d("p0"));
        for (int i = 1; i <= ell - 2; ++i) push(d("p" + std::to_string(i)));
        push(d("x"));
        push(d("y0") - d("x").scaled(v("p0")));
        for (int i = 1; i <= ell - 2; ++i)
            push(d("y" + std::to_string(i)) - d("x").scaled(v("p" + std::to_string(i))));
        for (int i = 1; i <= ell - 2; ++i) {
            std::string yi = "y" + std::to_string(i), pi = "p" + std::to_string(i);
            push(d("z" + std::to_string(i)) - d(yi).scaled(v("p0")) - d("y0").scaled(v(pi)) +
                 d("x").scaled(v("p0") * v(pi)));
        }
    } else if (id == "Ib") {
        for (int i = 1; i <= ell - 1; ++i) push(d("p" + std::to_string(i)));
        push(d("x"));
        for (int i = 1; i <= ell - 1; ++i)
            push(d("y" + std::to_string(i)) - d("x").scaled(v("p" + std::to_string(i))));
    } else if (id == "IIa") {
        for (int i = 1; i <= ell - 1; ++i) push(d("p" + std::to_string(i)));
        push(d("x"));
        for (int i = 1; i <= ell - 1; ++i)
            push(d("y" + std::to_string(i)) - d("x").scaled(v("p" + std::to_string(i))));
        for (int i = 1; i <= ell - 1; ++i)
            for (int j = i; j <= ell - 1; ++j) {
                std::string pi = "p" + std::to_string(i), pj = "p" + std::to_string(j);
                push(d("z" + std::to_string(i) + std::to_string(j)) -
                     d("y" + std::to_string(j)).scaled(v(pi)) -
                     d("y" + std::to_string(i)).scaled(v(pj)) + d("x").scaled(v(pi) * v(pj)));
            }
    } else if (id == "IIIa" || id == "IVa") {
        const int nd = cr.spec.family == Family::B ? 2 * ell - 3 : 2 * ell - 4;
        for (int i = 1; i <= nd; ++i) push(d("p" + std::to_string(i)));
        push(d("x"));
        for (int i = 1; i <= nd; ++i)
            push(d("y" + std::to_string(i)) - d("x").scaled(v("p" + std::to_string(i))));
        PolyForm theta_z = d("z");
        for (int i = 1; i <= nd; ++i) {
            int j = nd + 1 - i;  // kappa = antidiagonal K_{n-4}
            theta_z -= d("y" + std::to_string(j)).scaled(v("p" + std::to_string(i)));
            theta_z += d("x").scaled(
                (v("p" + std::to_string(i)) * v("p" + std::to_string(j))).scaled(Rational(1, 2)));
        }
        push(theta_z);
    } else if (id == "IIb") {
        push(d("p1"));
        push(d("p2"));
        push(d("x"));
        push(d("y1") - d("x").scaled(v("p1")));
        push(d("y2") - d("x").scaled(v("p2")));
        push(d("z1") - d("y1").scaled(v("p2")) - d("y2").scaled(v("p1")) +
             d("x").scaled(v("p1") * v("p2")));
        push(d("z2") - d("y2").scaled(v("x")));
        push(d("z3") - d("z1").scaled(v("x")) - d("z2").scaled(v("p1").scaled(Rational(2))) +
             d("y2").scaled(v("x") * v("p1").scaled(Rational(2)) - v("y1")));
        push(d("z4") + d("z1").scaled(v("x") * v("p1") - v("y1")) + d("z2").scaled(v("p1") * v("p1")) -
             d("z3").scaled(v("p1")) - d("y2").scaled(v("p1") * (v("x") * v("p1") - v("y1"))));
    } else if (id == "IIIb") {
        push(d("p"));
        push(d("x"));
        push(d("y") - d("x").scaled(v("p")));
    } else if (id == "IIIc") {
        push(d("q1"));
        push(d("q2"));
        push(d("x"));
        push(d("p1") - d("x").scaled(v("q1")));
        push(d("p2") - d("x").scaled(v("q2")));
        push(d("y1") - d("x").scaled(v("p1")));
        push(d("y2") - d("x").scaled(v("p2")));
        push(d("z") - d("p1").scaled(v("p2")) + d("y1").scaled(v("q2")) - d("y2").scaled(v("q1")) +
             d("x").scaled(v("p2") * v("q1") - v("p1") * v("q2")));
    } else if (id == "IIId") {
        push(d("p1"));
        push(d("p2"));
        push(d("x"));
        push(d("y1") - d("x").scaled(v("p1")));
        push(d("y2") - d("x").scaled(v("p2")));
        push(d("z1") - d("y1").scaled(v("p2")) - d("y2").scaled(v("p1")) +
             d("x").scaled(v("p1") * v("p2")));
        push(d("z2") - d("y2").scaled(v("p2")) + d("x").scaled((v("p2") * v("p2")).scaled(Rational(1, 2))));
        push(d("z3") + d("y1").scaled((v("p2") * v("p2")).scaled(Rational(1, 2))) +
             d("y2").scaled(v("p1") * v("p2")) - d("z1").scaled(v("p2")) - d("z2").scaled(v("p1")) -
             d("x").scaled((v("p1") * v("p2") * v("p2")).scaled(Rational(1, 2))));
        push(d("z4") + d("z1").scaled(v("y2")) + d("z2").scaled(v("y1")) - d("z3").scaled(v("x")));
    } else if (id == "Va") {
        push(d("q"));
        push(d("x"));
        push(d("p") - d("x").scaled(v("q")));
        push(d("y") - d("x").scaled(v("p")));
        push(d("z") - d("p").scaled(v("q")) + d("x").scaled((v("q") * v("q")).scaled(Rational(1, 2))));
    } else if (id == "Vb") {
        push(d("r"));
        push(d("x"));
        push(d("q") - d("x").scaled(v("r")));
        push(d("p") - d("x").scaled(v("q")));
        push(d("y") - d("x").scaled(v("p")));
        push(d("z") + d("y").scaled(v("r")) - d("p").scaled(v("q")) +
             d("x").scaled((v("q") * v("q")).scaled(Rational(1, 2)) - v("p") * v("r")));
    } else {
        throw std::invalid_argument("golden_coframe: unknown case " + id);
    }
    return cf;
}

// Checks the hard-coded coframe of a case against its structure equations.
inline bool verify_golden_forms(const std::string& id, std::optional<int> rank = std::nullopt,
                               std::string* first_failure = nullptr) {
    CaseRealization cr = build_case(id, rank);
    Coframe cf = golden_coframe(cr);
    return coframe_satisfies_structure(cf, cr.algebra, first_failure);
}

// The Monge system dz/dx = (d2y1/dx2)(dy2/dx) encoded on the 7-dimensional
// partial jet space (x, y1, y2, p1, p2, q1, z), prolonging y1 to second order
// and y2 to first.  Its symmetry algebra is smaller than that of the full
// 8-dimensional standard system.
inline PfaffianSystem iiic_restricted_system() {
    auto s = make_space({"x", "y1", "y2", "p1", "p2", "q1", "z"}, {1, 3, 2, 2, 1, 1, 3});
    auto d = [&](const std::string& n) { return PolyForm::d_coordinate(s, s->index_of(n)); };
    auto v = [&](const std::string& n) { return Polynomial::coordinate(s, s->index_of(n)); };
    PfaffianSystem ps;
    ps.space = s;
    ps.generators = {d("y1") - d("x").scaled(v("p1")), d("y2") - d("x").scaled(v("p2")),
                     d("p1") - d("x").scaled(v("q1")),
                     d("z") - d("x").scaled(v("q1") * v("p2"))};
    ps.generator_labels = {"Y1", "Y2", "P1", "Z"};
    return ps;
}

// Monge normal forms of the standard models, with the
// dictionary identifying coframe coordinates with jet variables.
struct MongeNormalForm {
    std::string case_id;
    std::vector<std::string> equations;
    std::map<std::string, std::string> dictionary;  // coordinate -> jet variable
};

inline MongeNormalForm monge_normal_form(const std::string& id, std::optional<int> rank = std::nullopt) {
    const int ell = rank.value_or(case_default_rank(id));
    MongeNormalForm nf;
    nf.case_id = id;
    auto dict_std = [&](int ny, int nz, bool y0) {
        nf.dictionary["x"] = "x";
        for (int i = y0 ? 0 : 1; i <= ny - (y0 ? 2 : 0); ++i) {
            nf.dictionary["y" + std::to_string(i)] = "y^" + std::to_string(i);
            nf.dictionary["p" + std::to_string(i)] = "dy^" + std::to_string(i) + "/dx";
        }
        (void)nz;
    };
    if (id == "Ia") {
        nf.equations.push_back("dz^i/dx = (dy^0/dx)(dy^i/dx),  1 <= i <= " +
                               std::to_string(ell - 2));
        dict_std(ell - 1, ell - 2, true);
        for (int i = 1; i <= ell - 2; ++i)
            nf.dictionary["z" + std::to_string(i)] = "z^" + std::to_string(i);
    } else if (id == "IIa") {
        nf.equations.push_back("dz^{ij}/dx = (dy^i/dx)(dy^j/dx),  1 <= i <= j <= " +
                               std::to_string(ell - 1));
        dict_std(ell, 0, false);
        for (int i = 1; i <= ell - 1; ++i)
            for (int j = i; j <= ell - 1; ++j)
                nf.dictionary["z" + std::to_string(i) + std::to_string(j)] =
                    "z^{" + std::to_string(i) + std::to_string(j) + "}";
    } else if (id == "IIIa" || id == "IVa") {
        const int nd = id == "IIIa" ? 2 * ell - 3 : 2 * ell - 4;
        nf.equations.push_back("dz/dx = (1/2) sum_{i,j=1..x" + std::to_string(nd) +
                               "} kappa_{ij} (dy^i/dx)(dy^j/dx)");
        dict_std(nd + 1, 1, false);
        nf.dictionary["z"] = "z";
    } else if (id == "IIb") {
        nf.equations = {"dz^1/dx = (dy^1/dx)(dy^2/dx)", "dz^2/dx = x (dy^2/dx)",
                        "dz^3/dx = (y^1 + x dy^1/dx)(dy^2/dx)",
                        "dz^4/dx = y^1 (dy^1/dx)(dy^2/dx)"};
        nf.dictionary = {{"x", "x"},       {"y1", "y^1"},   {"y2", "y^2"},
                         {"p1", "dy^1/dx"}, {"p2", "dy^2/dx"}, {"z1", "z^1"},
                         {"z2", "z^2"},    {"z3", "z^3"},   {"z4", "z^4"}};
    } else if (id == "IIIc") {
        nf.equations = {"dz/dx = (d2y^1/dx2)(dy^2/dx)"};
        nf.dictionary = {{"x", "x"},        {"y1", "y^1"},      {"y2", "y^2"},
                         {"p1", "dy^1/dx"},  {"p2", "dy^2/dx"},  {"q1", "d2y^1/dx2"},
                         {"q2", "d2y^2/dx2"}, {"z", "z"}};
    } else if (id == "IIId") {
        nf.equations = {"dz^1/dx = (dy^1/dx)(dy^2/dx)", "dz^2/dx = (1/2)(dy^2/dx)^2",
                        "dz^3/dx = (1/2)(dy^1/dx)(dy^2/dx)^2",
                        "dz^4/dx = (1/2)(dy^2/dx)(x (dy^1/dx)(dy^2/dx) - y^1 (dy^2/dx) - 2 (dy^1/dx) y^2)"};
        nf.dictionary = {{"x", "x"},       {"y1", "y^1"},   {"y2", "y^2"},
                         {"p1", "dy^1/dx"}, {"p2", "dy^2/dx"}, {"z1", "z^1"},
                         {"z2", "z^2"},    {"z3", "z^3"},   {"z4", "z^4"}};
    } else if (id == "Va") {
        nf.equations = {"dz/dx = (d2y/dx2)^2"};
        nf.dictionary = {{"x", "x"}, {"y", "y"}, {"p", "dy/dx"}, {"q", "d2y/dx2"}, {"z", "z"}};
    } else if (id == "Vb") {
        nf.equations = {"dz/dx = (d2y/dx2)^2  (partial prolongation: r = d3y/dx3)"};
        nf.dictionary = {{"x", "x"},      {"y", "y"},        {"p", "dy/dx"},
                         {"q", "d2y/dx2"}, {"r", "d3y/dx3"}, {"z", "z"}};
    } else if (id == "Ib") {
        nf.equations = {"contact system on J^1(R, R^" + std::to_string(ell - 1) + ")"};
        dict_std(ell, 0, false);
    } else if (id == "IIIb") {
        nf.equations = {"contact system on J^1(R, R)"};
        nf.dictionary = {{"x", "x"}, {"y", "y"}, {"p", "dy/dx"}};
    } else {
        throw std::invalid_argument("monge_normal_form: unknown case " + id);
    }
    return nf;
}

}  // namespace parmonge
