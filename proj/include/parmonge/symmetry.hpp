#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "parmonge/forms.hpp"
#include "parmonge/linear_system.hpp"
#include "parmonge/mc_forms.hpp"
#include "parmonge/polynomial.hpp"
#include "parmonge/rational_matrix.hpp"

namespace parmonge {

// Vector field with polynomial coefficients.
struct PolyVectorField {
    CoordSpacePtr space;
    std::map<int, Polynomial> components;

    Polynomial component(int c) const {
        auto it = components.find(c);
        return it == components.end() ? Polynomial::zero(space) : it->second;
    }
    void add_component(int c, const Polynomial& p) {
        if (p.is_zero()) return;
        auto it = components.find(c);
        if (it == components.end()) {
            components.emplace(c, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) components.erase(it);
        }
    }
    bool is_zero() const { return components.empty(); }

    // Derivation applied to a function.
    Polynomial apply(const Polynomial& f) const {
        Polynomial r = Polynomial::zero(space);
        for (const auto& [c, p] : components) r += p * f.partial(c);
        return r;
    }

    friend PolyVectorField bracket(const PolyVectorField& a, const PolyVectorField& b) {
        require_same_space(a.space, b.space);
        PolyVectorField r{a.space, {}};
        for (std::size_t c = 0; c < a.space->dim(); ++c) {
            Polynomial pc = a.apply(b.component(static_cast<int>(c))) -
                            b.apply(a.component(static_cast<int>(c)));
            r.add_component(static_cast<int>(c), pc);
        }
        return r;
    }

    std::string str() const {
        if (components.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [c, p] : components) {
            if (!first) os << " + ";
            first = false;
            os << "(" << p.str() << ") d/d" << space->names[static_cast<std::size_t>(c)];
        }
        return os.str();
    }
};

// Exact expansion of vector fields over a fixed basis of vector fields, with
// full residual verification.
class FieldSpanSolver {
public:
    explicit FieldSpanSolver(const std::vector<PolyVectorField>& basis) : basis_(&basis) {
        std::set<std::pair<int, Monomial>> keys;
        for (const auto& f : basis)
            for (const auto& [c, p] : f.components)
                for (const auto& [m, v] : p.terms()) keys.insert({c, m});
        for (const auto& k : keys) key_index_.emplace(k, static_cast<int>(key_index_.size()));
        const std::size_t rows = key_index_.size(), cols = basis.size();
        RationalMatrix v(rows, cols);
        for (std::size_t b = 0; b < cols; ++b)
            for (const auto& [c, p] : basis[b].components)
                for (const auto& [m, coeff] : p.terms())
                    v.at(static_cast<std::size_t>(key_index_.at({c, m})), b) = coeff;
        RationalMatrix vt = v.transposed();
        pivot_keys_ = rref(vt);
        if (pivot_keys_.size() != cols)
            throw std::logic_error("FieldSpanSolver: basis fields are linearly dependent");
        RationalMatrix aug(cols, 2 * cols);
        for (std::size_t i = 0; i < cols; ++i) {
            for (std::size_t j = 0; j < cols; ++j) aug.at(i, j) = v.at(pivot_keys_[i], j);
            aug.at(i, cols + i) = Rational(1);
        }
        rref(aug);
        block_inv_ = RationalMatrix(cols, cols);
        for (std::size_t i = 0; i < cols; ++i)
            for (std::size_t j = 0; j < cols; ++j) block_inv_.at(i, j) = aug.at(i, cols + j);
        key_of_row_.resize(key_index_.size());
        for (const auto& [k, idx] : key_index_) key_of_row_[static_cast<std::size_t>(idx)] = k;
    }

    // Coordinates of the target over the basis; nullopt if not in the span.
    std::optional<std::vector<Rational>> expand(const PolyVectorField& target) const {
        const std::size_t cols = basis_->size();
        std::vector<Rational> selected(cols);
        for (std::size_t i = 0; i < cols; ++i) {
            const auto& [c, m] = key_of_row_[pivot_keys_[i]];
            selected[i] = target.component(c).coeff(m);
        }
        std::vector<Rational> x(cols);
        for (std::size_t i = 0; i < cols; ++i) {
            Rational acc(0);
            for (std::size_t j = 0; j < cols; ++j)
                if (!block_inv_.at(i, j).is_zero()) acc += block_inv_.at(i, j) * selected[j];
            x[i] = acc;
        }
        // Residual check against the full target.
        PolyVectorField residual = target;
        for (std::size_t b = 0; b < cols; ++b) {
            if (x[b].is_zero()) continue;
            for (const auto& [c, p] : (*basis_)[b].components)
                residual.add_component(c, p.scaled(-x[b]));
        }
        if (!residual.is_zero()) return std::nullopt;
        return x;
    }

private:
    const std::vector<PolyVectorField>* basis_;
    std::map<std::pair<int, Monomial>, int> key_index_;
    std::vector<std::pair<int, Monomial>> key_of_row_;
    std::vector<std::size_t> pivot_keys_;
    RationalMatrix block_inv_;
};

// A solved symmetry algebra: basis fields, exact structure constants, and the
// coordinate space they live on.
struct SymmetryAlgebra {
    CoordSpacePtr space;
    std::vector<PolyVectorField> basis;
    // [X_a, X_b] = sum_c k[{a,b}][c] X_c for a < b
    std::map<std::pair<int, int>, std::map<int, Rational>> structure;

    std::size_t dim() const { return basis.size(); }
};

// Closure of the span under brackets; throws when a bracket leaves the span.
inline void compute_closure(SymmetryAlgebra& sa) {
    if (sa.basis.empty()) return;
    FieldSpanSolver solver(sa.basis);
    for (std::size_t a = 0; a < sa.basis.size(); ++a)
        for (std::size_t b = a + 1; b < sa.basis.size(); ++b) {
            PolyVectorField br = bracket(sa.basis[a], sa.basis[b]);
            auto coords = solver.expand(br);
            if (!coords)
                throw std::logic_error("symmetry algebra is not closed under brackets");
            std::map<int, Rational> entry;
            for (std::size_t c = 0; c < coords->size(); ++c)
                if (!(*coords)[c].is_zero()) entry[static_cast<int>(c)] = (*coords)[c];
            if (!entry.empty())
                sa.structure[{static_cast<int>(a), static_cast<int>(b)}] = std::move(entry);
        }
}

// Dimensions of the weighted-grade decomposition.  A term x^m d/dx_c has
// grade wdeg(m) - weight(c); the dimension per grade is the rank of the
// grade-components of the basis fields.
inline std::map<int, int> grade_decomposition(const SymmetryAlgebra& sa,
                                              const std::vector<int>& weights) {
    if (weights.size() != sa.space->dim())
        throw std::invalid_argument("grade_decomposition: weight count mismatch");
    auto wdeg = [&](const Monomial& m) {
        int s = 0;
        for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * weights[i];
        return s;
    };
    std::map<int, std::vector<std::map<std::pair<int, Monomial>, Rational>>> per_grade;
    for (const auto& f : sa.basis) {
        std::map<int, std::map<std::pair<int, Monomial>, Rational>> split;
        for (const auto& [c, p] : f.components)
            for (const auto& [m, v] : p.terms())
                split[wdeg(m) - weights[static_cast<std::size_t>(c)]][{c, m}] = v;
        for (auto& [g, comp] : split) per_grade[g].push_back(std::move(comp));
    }
    std::map<int, int> dims;
    for (const auto& [g, comps] : per_grade) {
        std::map<std::pair<int, Monomial>, int> keys;
        for (const auto& comp : comps)
            for (const auto& [k, v] : comp) keys.emplace(k, static_cast<int>(keys.size()));
        RationalMatrix m(comps.size(), keys.size());
        for (std::size_t r = 0; r < comps.size(); ++r)
            for (const auto& [k, v] : comps[r])
                m.at(r, static_cast<std::size_t>(keys.at(k))) = v;
        int rk = static_cast<int>(rank(std::move(m)));
        if (rk > 0) dims[g] = rk;
    }
    return dims;
}

// Every coefficient of the given components is independent of the given
// derivative coordinates (prolonged point transformation test).
inline bool point_symmetry_check(const SymmetryAlgebra& sa, const std::set<int>& base_components,
                                 const std::set<int>& derivative_coords) {
    for (const auto& f : sa.basis)
        for (int c : base_components) {
            Polynomial coeff = f.component(c);
            for (const auto& [m, v] : coeff.terms())
                for (int d : derivative_coords)
                    if (m[static_cast<std::size_t>(d)] != 0) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// First-order quadratic Monge systems  dz^a/dx = F^a_{ij} (dy^i/dx)(dy^j/dx)
// ---------------------------------------------------------------------------

struct MongeSpec {
    std::string case_id;
    int n_y = 0;
    int n_z = 0;
    std::vector<RationalMatrix> f;       // one symmetric n_y x n_y tensor per z
    std::vector<std::string> y_names;    // coordinate names, size n_y
    std::vector<std::string> z_names;    // coordinate names, size n_z

    // Base space (x, y^i, z^a) with the depth-3 weights x:1, y:2, z:3.
    CoordSpacePtr base_space() const {
        std::vector<std::string> names{"x"};
        std::vector<int> weights{1};
        for (const auto& n : y_names) {
            names.push_back(n);
            weights.push_back(2);
        }
        for (const auto& n : z_names) {
            names.push_back(n);
            weights.push_back(3);
        }
        return make_space(std::move(names), std::move(weights));
    }

    void validate() const {
        if (static_cast<int>(f.size()) != n_z)
            throw std::invalid_argument("MongeSpec: one F tensor per z required");
        for (const auto& t : f) {
            if (t.rows() != static_cast<std::size_t>(n_y) ||
                t.cols() != static_cast<std::size_t>(n_y))
                throw std::invalid_argument("MongeSpec: F tensor shape mismatch");
            for (std::size_t i = 0; i < t.rows(); ++i)
                for (std::size_t j = i + 1; j < t.cols(); ++j)
                    if (t.at(i, j) != t.at(j, i))
                        throw std::invalid_argument("MongeSpec: F tensor not symmetric");
        }
    }
};

inline RationalMatrix diagonal_kappa(int r, int s) {
    RationalMatrix k(static_cast<std::size_t>(r + s), static_cast<std::size_t>(r + s));
    for (int i = 0; i < r; ++i) k.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = Rational(1);
    for (int i = r; i < r + s; ++i)
        k.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = Rational(-1);
    return k;
}

// Monge specifications of the classical quadratic families.  For the B and D families kappa is diagonal
// with signature (r, s), r + s = 2l-3 resp. 2l-4.
inline MongeSpec monge_spec(const std::string& case_id, int ell,
                            std::optional<std::pair<int, int>> signature = std::nullopt) {
    MongeSpec ms;
    ms.case_id = case_id;
    if (case_id == "Ia") {
        if (ell < 3) throw std::invalid_argument("Ia requires l >= 3");
        ms.n_y = ell - 1;
        ms.n_z = ell - 2;
        ms.y_names.push_back("y0");
        for (int i = 1; i <= ell - 2; ++i) ms.y_names.push_back("y" + std::to_string(i));
        for (int a = 1; a <= ell - 2; ++a) {
            ms.z_names.push_back("z" + std::to_string(a));
            RationalMatrix t(static_cast<std::size_t>(ms.n_y), static_cast<std::size_t>(ms.n_y));
            t.at(0, static_cast<std::size_t>(a)) = Rational(1, 2);
            t.at(static_cast<std::size_t>(a), 0) = Rational(1, 2);
            ms.f.push_back(std::move(t));
        }
    } else if (case_id == "IIa") {
        if (ell < 3) throw std::invalid_argument("IIa requires l >= 3");
        ms.n_y = ell - 1;
        for (int i = 1; i <= ell - 1; ++i) ms.y_names.push_back("y" + std::to_string(i));
        for (int i = 1; i <= ell - 1; ++i)
            for (int j = i; j <= ell - 1; ++j) {
                ms.z_names.push_back("z" + std::to_string(i) + std::to_string(j));
                RationalMatrix t(static_cast<std::size_t>(ms.n_y),
                                 static_cast<std::size_t>(ms.n_y));
                if (i == j) {
                    t.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i - 1)) =
                        Rational(1);
                } else {
                    t.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) =
                        Rational(1, 2);
                    t.at(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)) =
                        Rational(1, 2);
                }
                ms.f.push_back(std::move(t));
            }
        ms.n_z = static_cast<int>(ms.z_names.size());
    } else if (case_id == "IIIa" || case_id == "IVa") {
        const int d = case_id == "IIIa" ? 2 * ell - 3 : 2 * ell - 4;
        if ((case_id == "IIIa" && ell < 3) || (case_id == "IVa" && ell < 4))
            throw std::invalid_argument(case_id + " rank below threshold");
        auto sig = signature.value_or(std::make_pair(d, 0));
        if (sig.first < 0 || sig.second < 0 || sig.first + sig.second != d)
            throw std::invalid_argument("signature (r,s) must satisfy r+s = " + std::to_string(d));
        ms.n_y = d;
        ms.n_z = 1;
        for (int i = 1; i <= d; ++i) ms.y_names.push_back("y" + std::to_string(i));
        ms.z_names.push_back("z");
        ms.f.push_back(diagonal_kappa(sig.first, sig.second).scaled(Rational(1, 2)));
    } else {
        throw std::invalid_argument("monge_spec: case must be Ia, IIa, IIIa or IVa");
    }
    ms.validate();
    return ms;
}

namespace detail {

// Identities linear in the unknown polynomial coefficients, accumulated per
// monomial so that rows can be emitted deterministically.
struct LinearIdentity {
    std::map<Monomial, std::vector<std::pair<std::int32_t, Rational>>> rows;

    void add(int unknown, const Polynomial& p) {
        for (const auto& [m, c] : p.terms())
            rows[m].emplace_back(static_cast<std::int32_t>(unknown), c);
    }
    void emit(LinearSystem& sys) const {
        for (const auto& [m, entries] : rows) {
            std::map<std::int32_t, Rational> merged;
            for (const auto& [u, c] : entries) {
                auto& acc = merged.try_emplace(u, Rational(0)).first->second;
                acc += c;
            }
            std::vector<std::pair<std::int32_t, Rational>> row;
            for (const auto& [u, c] : merged)
                if (!c.is_zero()) row.emplace_back(u, c);
            if (!row.empty()) sys.add_row(row);
        }
    }
};

inline std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, int deg) {
    std::vector<Monomial> out;
    Monomial m(nvars, 0);
    // lexicographic enumeration in the same order std::map uses
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int remaining) {
        if (pos == nvars) {
            out.push_back(m);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            m[pos] = e;
            rec(pos + 1, remaining - e);
        }
        m[pos] = 0;
    };
    rec(0, deg);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// The determining equations for the infinitesimal symmetries of a quadratic
// Monge system, with A, B^i, C^a polynomial of total degree <= deg in the
// base coordinates.
inline LinearSystem build_determining(const MongeSpec& ms, int deg = 2) {
    ms.validate();
    CoordSpacePtr space = ms.base_space();
    const std::size_t nc = space->dim();
    const int ny = ms.n_y, nz = ms.n_z;
    auto monos = detail::monomials_up_to_degree(nc, deg);
    const auto n_funcs = static_cast<std::size_t>(1 + ny + nz);

    std::vector<std::string> unknowns;
    auto func_name = [&](std::size_t f) {
        if (f == 0) return std::string("A");
        if (f <= static_cast<std::size_t>(ny)) return "B" + std::to_string(f - 1);
        return "C" + std::to_string(f - static_cast<std::size_t>(ny) - 1);
    };
    for (std::size_t f = 0; f < n_funcs; ++f)
        for (const auto& m : monos) {
            std::ostringstream os;
            os << func_name(f) << "[";
            for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
            os << "]";
            unknowns.push_back(os.str());
        }
    LinearSystem sys(std::move(unknowns));

    auto unknown_index = [&](std::size_t f, std::size_t mi) {
        return static_cast<int>(f * monos.size() + mi);
    };
    const std::size_t a_func = 0;
    auto b_func = [&](int l) { return static_cast<std::size_t>(1 + l); };
    auto c_func = [&](int a) { return static_cast<std::size_t>(1 + ny + a); };
    const int x_coord = 0;
    auto y_coord = [&](int i) { return 1 + i; };
    auto z_coord = [&](int a) { return 1 + ny + a; };

    auto d_mono = [&](std::size_t mi, int coord) {
        return Polynomial::monomial(space, monos[mi], Rational(1)).partial(coord);
    };

    // dA/dz^a = 0 and dC^a/dx = 0
    for (int a = 0; a < nz; ++a) {
        detail::LinearIdentity id;
        for (std::size_t mi = 0; mi < monos.size(); ++mi)
            id.add(unknown_index(a_func, mi), d_mono(mi, z_coord(a)));
        id.emit(sys);
    }
    for (int a = 0; a < nz; ++a) {
        detail::LinearIdentity id;
        for (std::size_t mi = 0; mi < monos.size(); ++mi)
            id.add(unknown_index(c_func(a), mi), d_mono(mi, x_coord));
        id.emit(sys);
    }
    // 2 F^a_{li} dB^l/dx = dC^a/dy^i
    for (int a = 0; a < nz; ++a)
        for (int i = 0; i < ny; ++i) {
            detail::LinearIdentity id;
            for (int l = 0; l < ny; ++l) {
                Rational f = ms.f[static_cast<std::size_t>(a)].at(static_cast<std::size_t>(l),
                                                                  static_cast<std::size_t>(i));
                if (f.is_zero()) continue;
                for (std::size_t mi = 0; mi < monos.size(); ++mi)
                    id.add(unknown_index(b_func(l), mi),
                           d_mono(mi, x_coord).scaled(f * Rational(2)));
            }
            for (std::size_t mi = 0; mi < monos.size(); ++mi)
                id.add(unknown_index(c_func(a), mi), -d_mono(mi, y_coord(i)));
            id.emit(sys);
        }
    // F^a_{li} dB^l/dy^j + F^a_{lj} dB^l/dy^i = F^a_{ij} dA/dx + F^b_{ij} dC^a/dz^b
    for (int a = 0; a < nz; ++a)
        for (int i = 0; i < ny; ++i)
            for (int j = i; j < ny; ++j) {
                detail::LinearIdentity id;
                for (int l = 0; l < ny; ++l) {
                    Rational fi = ms.f[static_cast<std::size_t>(a)].at(
                        static_cast<std::size_t>(l), static_cast<std::size_t>(i));
                    Rational fj = ms.f[static_cast<std::size_t>(a)].at(
                        static_cast<std::size_t>(l), static_cast<std::size_t>(j));
                    for (std::size_t mi = 0; mi < monos.size(); ++mi) {
                        if (!fi.is_zero())
                            id.add(unknown_index(b_func(l), mi), d_mono(mi, y_coord(j)).scaled(fi));
                        if (!fj.is_zero())
                            id.add(unknown_index(b_func(l), mi), d_mono(mi, y_coord(i)).scaled(fj));
                    }
                }
                Rational fij = ms.f[static_cast<std::size_t>(a)].at(static_cast<std::size_t>(i),
                                                                    static_cast<std::size_t>(j));
                if (!fij.is_zero())
                    for (std::size_t mi = 0; mi < monos.size(); ++mi)
                        id.add(unknown_index(a_func, mi), -d_mono(mi, x_coord).scaled(fij));
                for (int b = 0; b < nz; ++b) {
                    Rational fbij = ms.f[static_cast<std::size_t>(b)].at(
                        static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                    if (fbij.is_zero()) continue;
                    for (std::size_t mi = 0; mi < monos.size(); ++mi)
                        id.add(unknown_index(c_func(a), mi),
                               -d_mono(mi, z_coord(b)).scaled(fbij));
                }
                id.emit(sys);
            }
    // 2 F^a_{l(i} F^b_{jk)} dB^l/dz^b = F^a_{(ij} dA/dy^{k)}, symmetrized over
    // all six orders of (i, j, k).
    for (int a = 0; a < nz; ++a)
        for (int i = 0; i < ny; ++i)
            for (int j = i; j < ny; ++j)
                for (int k = j; k < ny; ++k) {
                    detail::LinearIdentity id;
                    int perm[6][3] = {{i, j, k}, {i, k, j}, {j, i, k},
                                      {j, k, i}, {k, i, j}, {k, j, i}};
                    for (auto& p : perm) {
                        for (int l = 0; l < ny; ++l) {
                            Rational f1 = ms.f[static_cast<std::size_t>(a)].at(
                                static_cast<std::size_t>(l), static_cast<std::size_t>(p[0]));
                            if (f1.is_zero()) continue;
                            for (int b = 0; b < nz; ++b) {
                                Rational f2 = ms.f[static_cast<std::size_t>(b)].at(
                                    static_cast<std::size_t>(p[1]), static_cast<std::size_t>(p[2]));
                                if (f2.is_zero()) continue;
                                for (std::size_t mi = 0; mi < monos.size(); ++mi)
                                    id.add(unknown_index(b_func(l), mi),
                                           d_mono(mi, z_coord(b)).scaled(f1 * f2 * Rational(2)));
                            }
                        }
                        Rational fij = ms.f[static_cast<std::size_t>(a)].at(
                            static_cast<std::size_t>(p[0]), static_cast<std::size_t>(p[1]));
                        if (!fij.is_zero())
                            for (std::size_t mi = 0; mi < monos.size(); ++mi)
                                id.add(unknown_index(a_func, mi),
                                       -d_mono(mi, y_coord(p[2])).scaled(fij));
                    }
                    id.emit(sys);
                }
    return sys;
}

// Prolongation to the first-jet coordinates v^i = dy^i/dx and the residual of
// the symmetry condition D_x C^a - X(F^a) - F^a D_x A.
struct ProlongedField {
    CoordSpacePtr jet_space;  // (x, y, z, v)
    PolyVectorField field;    // includes the D^i dv_i components
};

inline ProlongedField prolong(const MongeSpec& ms, const PolyVectorField& base_field) {
    const int ny = ms.n_y, nz = ms.n_z;
    CoordSpacePtr base = base_field.space;
    std::vector<std::string> names = base->names;
    std::vector<int> weights = base->weights;
    for (int i = 0; i < ny; ++i) {
        names.push_back("v" + std::to_string(i));
        weights.push_back(1);
    }
    CoordSpacePtr jet = make_space(names, weights);
    auto lift = [&](const Polynomial& p) {
        Polynomial q(jet);
        for (const auto& [m, c] : p.terms()) {
            Monomial ext = m;
            ext.resize(jet->dim(), 0);
            q.add_term(ext, c);
        }
        return q;
    };
    auto v_poly = [&](int i) { return Polynomial::coordinate(jet, 1 + ny + nz + i); };
    auto f_poly = [&](int a) {
        Polynomial f = Polynomial::zero(jet);
        for (int i = 0; i < ny; ++i)
            for (int j = 0; j < ny; ++j) {
                Rational c = ms.f[static_cast<std::size_t>(a)].at(static_cast<std::size_t>(i),
                                                                  static_cast<std::size_t>(j));
                if (!c.is_zero()) f += (v_poly(i) * v_poly(j)).scaled(c);
            }
        return f;
    };
    // total derivative on functions of (x, y, z)
    PolyVectorField dx{jet, {}};
    dx.add_component(0, Polynomial::constant(jet, Rational(1)));
    for (int i = 0; i < ny; ++i) dx.add_component(1 + i, v_poly(i));
    for (int a = 0; a < nz; ++a) dx.add_component(1 + ny + a, f_poly(a));

    ProlongedField out{jet, PolyVectorField{jet, {}}};
    for (const auto& [c, p] : base_field.components) out.field.add_component(c, lift(p));
    Polynomial lifted_a = lift(base_field.component(0));
    for (int i = 0; i < ny; ++i) {
        Polynomial di = dx.apply(lift(base_field.component(1 + i))) -
                        v_poly(i) * dx.apply(lifted_a);
        out.field.add_component(1 + ny + nz + i, di);
    }
    return out;
}

inline bool satisfies_monge_symmetry_equation(const MongeSpec& ms,
                                              const PolyVectorField& base_field) {
    ProlongedField pf = prolong(ms, base_field);
    const int ny = ms.n_y, nz = ms.n_z;
    CoordSpacePtr jet = pf.jet_space;
    auto v_poly = [&](int i) { return Polynomial::coordinate(jet, 1 + ny + nz + i); };
    auto f_poly = [&](int a) {
        Polynomial f = Polynomial::zero(jet);
        for (int i = 0; i < ny; ++i)
            for (int j = 0; j < ny; ++j) {
                Rational c = ms.f[static_cast<std::size_t>(a)].at(static_cast<std::size_t>(i),
                                                                  static_cast<std::size_t>(j));
                if (!c.is_zero()) f += (v_poly(i) * v_poly(j)).scaled(c);
            }
        return f;
    };
    PolyVectorField dx{jet, {}};
    dx.add_component(0, Polynomial::constant(jet, Rational(1)));
    for (int i = 0; i < ny; ++i) dx.add_component(1 + i, v_poly(i));
    for (int a = 0; a < nz; ++a) dx.add_component(1 + ny + a, f_poly(a));

    Polynomial da = dx.apply(pf.field.component(0));
    for (int a = 0; a < nz; ++a) {
        Polynomial residual = dx.apply(pf.field.component(1 + ny + a));
        residual -= pf.field.apply(f_poly(a));
        residual -= f_poly(a) * da;
        if (!residual.is_zero()) return false;
    }
    return true;
}

// Kernel of the determining system as base vector fields (A, B^i, C^a).
inline std::vector<PolyVectorField> monge_symmetry_fields(const MongeSpec& ms, int deg = 2) {
    LinearSystem sys = build_determining(ms, deg);
    CoordSpacePtr space = ms.base_space();
    auto monos = detail::monomials_up_to_degree(space->dim(), deg);
    std::vector<PolyVectorField> fields;
    for (const auto& vec : sys.nullspace()) {
        PolyVectorField f{space, {}};
        for (std::size_t u = 0; u < vec.size(); ++u) {
            if (vec[u].is_zero()) continue;
            std::size_t func = u / monos.size();
            std::size_t mi = u % monos.size();
            f.add_component(static_cast<int>(func), Polynomial::monomial(space, monos[mi], vec[u]));
        }
        fields.push_back(std::move(f));
    }
    return fields;
}

// Full pipeline for a classical quadratic case: solve, verify each field against the
// symmetry equation, and close under brackets.
inline SymmetryAlgebra solve_symmetries(const MongeSpec& ms, int deg = 2) {
    SymmetryAlgebra sa;
    sa.space = ms.base_space();
    sa.basis = monge_symmetry_fields(ms, deg);
    for (const auto& f : sa.basis)
        if (!satisfies_monge_symmetry_equation(ms, f))
            throw std::logic_error("solved field violates the symmetry equation");
    compute_closure(sa);
    return sa;
}

// ---------------------------------------------------------------------------
// Generic bounded-weighted-degree solver for polynomial Pfaffian systems
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Monomial> monomials_up_to_weighted_degree(const CoordSpacePtr& space, int bound) {
    std::vector<Monomial> out;
    const std::size_t n = space->dim();
    Monomial m(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int remaining) {
        if (pos == n) {
            out.push_back(m);
            return;
        }
        int w = space->weights[pos];
        for (int e = 0; e * w <= remaining; ++e) {
            m[pos] = e;
            rec(pos + 1, remaining - e * w);
        }
        m[pos] = 0;
    };
    rec(0, bound);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// Kernel of L_X theta = 0 mod span(generators) for vector fields X whose
// d/dx_c coefficient has weighted degree <= weight(c) + bound.  The mod-out is
// imposed by pairing L_X theta with a frame of the annihilated distribution,
// which eliminates the multiplier unknowns exactly.
inline std::vector<PolyVectorField> pfaffian_kernel(const PfaffianSystem& ps, int bound) {
    const CoordSpacePtr& space = ps.space;
    const std::size_t n = space->dim();
    const std::size_t k = ps.generators.size();

    // Complete the generators to a coframe by coordinate differentials on the
    // non-pivot columns of the constant part.
    RationalMatrix g0(k, n);
    for (std::size_t g = 0; g < k; ++g)
        for (const auto& [key, p] : ps.generators[g].components())
            g0.at(g, static_cast<std::size_t>(key.first)) = p.constant_term();
    {
        RationalMatrix tmp = g0;
        if (rref(tmp).size() != k)
            throw std::invalid_argument("pfaffian_kernel: generators dependent at the origin");
    }
    RationalMatrix g0r = g0;
    auto pivot_cols = rref(g0r);
    std::vector<std::size_t> complement;
    {
        std::vector<bool> is_pivot(n, false);
        for (auto c : pivot_cols) is_pivot[c] = true;
        for (std::size_t c = 0; c < n; ++c)
            if (!is_pivot[c]) complement.push_back(c);
    }

    PolyMatrix coframe(n, n, space);
    for (std::size_t g = 0; g < k; ++g)
        for (const auto& [key, p] : ps.generators[g].components())
            coframe.at(g, static_cast<std::size_t>(key.first)) = p;
    for (std::size_t s = 0; s < complement.size(); ++s)
        coframe.at(k + s, complement[s]) = Polynomial::constant(space, Rational(1));

    // Invert: split off the constant part, then a Neumann series (the
    // positive-weight remainder is nilpotent for graded systems).
    RationalMatrix m0(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m0.at(i, j) = coframe.at(i, j).constant_term();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m0.at(i, j);
        aug.at(i, n + i) = Rational(1);
    }
    if (rref(aug).size() != n)
        throw std::logic_error("pfaffian_kernel: coframe completion singular");
    RationalMatrix m0_inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m0_inv.at(i, j) = aug.at(i, n + j);
    PolyMatrix a = PolyMatrix::from_constant(m0_inv, space) * coframe -
                   PolyMatrix::identity(n, space);
    PolyMatrix inv = PolyMatrix::identity(n, space);
    PolyMatrix power = a;
    std::size_t guard = 0;
    while (!power.is_zero()) {
        PolyMatrix signed_power = power;
        if (guard % 2 == 0)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) signed_power.at(i, j) = -power.at(i, j);
        inv = inv + signed_power;
        power = power * a;
        if (++guard > 3 * n) throw std::logic_error("pfaffian_kernel: coframe not unipotent");
    }
    inv = inv * PolyMatrix::from_constant(m0_inv, space);
    // Frame fields of the distribution: duals of the complement rows.
    std::vector<std::map<int, Polynomial>> frame;
    for (std::size_t s = 0; s < complement.size(); ++s) {
        std::map<int, Polynomial> e;
        for (std::size_t c = 0; c < n; ++c)
            if (!inv.at(c, k + s).is_zero()) e[static_cast<int>(c)] = inv.at(c, k + s);
        frame.push_back(std::move(e));
    }

    // Ansatz unknowns.
    std::vector<std::vector<Monomial>> monos_per_coord(n);
    std::vector<std::size_t> offset(n, 0);
    std::size_t total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        monos_per_coord[c] =
            detail::monomials_up_to_weighted_degree(space, space->weights[c] + bound);
        offset[c] = total;
        total += monos_per_coord[c].size();
    }
    std::vector<std::string> unknowns;
    unknowns.reserve(total);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t mi = 0; mi < monos_per_coord[c].size(); ++mi)
            unknowns.push_back("A_" + space->names[c] + "[" + std::to_string(mi) + "]");
    LinearSystem sys(std::move(unknowns));

    // Conditions: for each generator theta and frame field E,
    //   E(theta(X)) + d theta(X, E) = 0.
    for (std::size_t g = 0; g < k; ++g) {
        PolyForm dtheta = exterior_derivative(ps.generators[g]);
        for (std::size_t s = 0; s < frame.size(); ++s) {
            const auto& e_field = frame[s];
            // Q_c = sum_d dtheta(d/dx_c, d/dx_d) E_d, independent of the monomial.
            std::vector<Polynomial> q(n, Polynomial::zero(space));
            for (const auto& [key, p] : dtheta.components()) {
                auto ec = e_field.find(key.second);
                if (ec != e_field.end())
                    q[static_cast<std::size_t>(key.first)] += p * ec->second;
                ec = e_field.find(key.first);
                if (ec != e_field.end())
                    q[static_cast<std::size_t>(key.second)] -= p * ec->second;
            }
            detail::LinearIdentity id;
            for (std::size_t c = 0; c < n; ++c) {
                Polynomial gc = Polynomial::zero(space);
                bool has_gc = false;
                for (const auto& [key, p] : ps.generators[g].components())
                    if (key.first == static_cast<int>(c)) {
                        gc = p;
                        has_gc = true;
                    }
                if (!has_gc && q[c].is_zero()) continue;
                for (std::size_t mi = 0; mi < monos_per_coord[c].size(); ++mi) {
                    Polynomial mono = Polynomial::monomial(space, monos_per_coord[c][mi], Rational(1));
                    Polynomial contribution = Polynomial::zero(space);
                    if (has_gc) {
                        Polynomial gm = gc * mono;
                        for (const auto& [ec, ep] : e_field) contribution += ep * gm.partial(ec);
                    }
                    if (!q[c].is_zero()) contribution += mono * q[c];
                    if (!contribution.is_zero())
                        id.add(static_cast<int>(offset[c] + mi), contribution);
                }
            }
            id.emit(sys);
        }
    }

    std::vector<PolyVectorField> fields;
    for (const auto& vec : sys.nullspace()) {
        PolyVectorField f{space, {}};
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t mi = 0; mi < monos_per_coord[c].size(); ++mi) {
                const Rational& v = vec[offset[c] + mi];
                if (!v.is_zero())
                    f.add_component(static_cast<int>(c),
                                    Polynomial::monomial(space, monos_per_coord[c][mi], v));
            }
        fields.push_back(std::move(f));
    }
    return fields;
}

inline SymmetryAlgebra pfaffian_symmetries(const PfaffianSystem& ps, int bound) {
    SymmetryAlgebra sa;
    sa.space = ps.space;
    sa.basis = pfaffian_kernel(ps, bound);
    compute_closure(sa);
    return sa;
}

}  // namespace parmonge
