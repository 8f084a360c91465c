#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "parmonge/grading.hpp"
#include "parmonge/monge.hpp"
#include "parmonge/rational_matrix.hpp"
#include "parmonge/root_system.hpp"

namespace parmonge {

// Classical matrix model of a simple Lie algebra:
//   A_l : trace-free (l+1) x (l+1), H_i = E_{i,i} - E_{i+1,i+1}
//   C_l : X^t J + J X = 0, J = [0 K; -K 0],  H_i = E_{i,i} - E_{n+1-i,n+1-i}
//   B_l, D_l : skew with respect to the antidiagonal K_n, same H_i
class MatrixAlgebra {
public:
    explicit MatrixAlgebra(const AlgebraSpec& spec) : spec_(spec) {
        validate(spec);
        switch (spec.family) {
            case Family::A: n_ = static_cast<std::size_t>(spec.rank + 1); break;
            case Family::B: n_ = static_cast<std::size_t>(2 * spec.rank + 1); break;
            case Family::C: n_ = static_cast<std::size_t>(2 * spec.rank); break;
            case Family::D: n_ = static_cast<std::size_t>(2 * spec.rank); break;
            default:
                throw std::invalid_argument("matrix model unsupported for family " + spec.name());
        }
        build_cartan_and_roots();
        build_gram();
    }

    const AlgebraSpec& spec() const { return spec_; }
    std::size_t n() const { return n_; }

    // Diagonal of H_i (0-based index).
    const std::vector<int>& h_diagonal(int i) const { return h_[static_cast<std::size_t>(i)]; }
    RationalMatrix cartan_element(int i) const {
        RationalMatrix m(n_, n_);
        for (std::size_t j = 0; j < n_; ++j)
            m.at(j, j) = Rational(h_[static_cast<std::size_t>(i)][j]);
        return m;
    }

    bool member(const RationalMatrix& x) const {
        if (x.rows() != n_ || x.cols() != n_) return false;
        if (!gram_) {
            Rational tr(0);
            for (std::size_t i = 0; i < n_; ++i) tr += x.at(i, i);
            return tr.is_zero();
        }
        return (x.transposed() * *gram_ + *gram_ * x).is_zero();
    }

    // beta(H_i) for a root in simple-root coordinates.
    int eigenvalue(const Root& beta, int i) const {
        int v = 0;
        for (int k = 0; k < spec_.rank; ++k) {
            int nk = beta[static_cast<std::size_t>(k)];
            if (nk == 0) continue;
            int aki = 0;
            for (std::size_t j = 0; j < n_; ++j)
                aki += alpha_l_[static_cast<std::size_t>(k)][j] * h_[static_cast<std::size_t>(i)][j];
            v += nk * aki;
        }
        return v;
    }

    // Basis matrix of the root space for beta; the simultaneous ad(H_i)
    // eigenspace intersected with the algebra, normalized so the first
    // nonzero entry in row-major order is +1.
    RationalMatrix root_space(const Root& beta) const {
        std::vector<int> values(static_cast<std::size_t>(spec_.rank));
        for (int i = 0; i < spec_.rank; ++i)
            values[static_cast<std::size_t>(i)] = eigenvalue(beta, i);
        std::vector<std::pair<std::size_t, std::size_t>> positions;
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b) {
                if (a == b) continue;
                bool match = true;
                for (int i = 0; i < spec_.rank && match; ++i)
                    if (h_[static_cast<std::size_t>(i)][a] - h_[static_cast<std::size_t>(i)][b] !=
                        values[static_cast<std::size_t>(i)])
                        match = false;
                if (match) positions.emplace_back(a, b);
            }
        if (positions.empty())
            throw std::logic_error("root_space: no matrix positions for root " + root_str(beta));
        std::vector<std::vector<Rational>> kernel;
        if (!gram_) {
            if (positions.size() != 1)
                throw std::logic_error("root_space: eigenspace not 1-dimensional");
            kernel = {{Rational(1)}};
        } else {
            RationalMatrix constraints(n_ * n_, positions.size());
            for (std::size_t p = 0; p < positions.size(); ++p) {
                auto [a, b] = positions[p];
                // (E_ab^t G + G E_ab)_{rs} = delta_{rb} G_{as} + G_{ra} delta_{sb}
                for (std::size_t s = 0; s < n_; ++s)
                    constraints.at(b * n_ + s, p) += gram_->at(a, s);
                for (std::size_t r = 0; r < n_; ++r)
                    constraints.at(r * n_ + b, p) += gram_->at(r, a);
            }
            kernel = kernel_basis(constraints);
            if (kernel.size() != 1)
                throw std::logic_error("root_space: eigenspace not 1-dimensional for " +
                                       root_str(beta));
        }
        RationalMatrix m(n_, n_);
        Rational lead;
        for (std::size_t p = 0; p < positions.size() && lead.is_zero(); ++p)
            lead = kernel[0][p];
        for (std::size_t p = 0; p < positions.size(); ++p) {
            auto [a, b] = positions[p];
            m.at(a, b) = kernel[0][p] / lead;
        }
        return m;
    }

private:
    void build_cartan_and_roots() {
        const int l = spec_.rank;
        h_.assign(static_cast<std::size_t>(l), std::vector<int>(n_, 0));
        alpha_l_.assign(static_cast<std::size_t>(l), std::vector<int>(n_, 0));
        for (int i = 0; i < l; ++i) {
            auto& h = h_[static_cast<std::size_t>(i)];
            if (spec_.family == Family::A) {
                h[static_cast<std::size_t>(i)] = 1;
                h[static_cast<std::size_t>(i + 1)] = -1;
            } else {
                h[static_cast<std::size_t>(i)] = 1;
                h[n_ - 1 - static_cast<std::size_t>(i)] = -1;
            }
        }
        for (int k = 0; k < l; ++k) {
            auto& a = alpha_l_[static_cast<std::size_t>(k)];
            const bool last = (k == l - 1);
            switch (spec_.family) {
                case Family::A:
                    a[static_cast<std::size_t>(k)] = 1;
                    a[static_cast<std::size_t>(k + 1)] = -1;
                    break;
                case Family::B:
                    a[static_cast<std::size_t>(k)] = 1;
                    if (!last) a[static_cast<std::size_t>(k + 1)] = -1;
                    break;
                case Family::C:
                    a[static_cast<std::size_t>(k)] = last ? 2 : 1;
                    if (!last) a[static_cast<std::size_t>(k + 1)] = -1;
                    break;
                case Family::D:
                    if (!last) {
                        a[static_cast<std::size_t>(k)] = 1;
                        a[static_cast<std::size_t>(k + 1)] = -1;
                    } else {
                        a[static_cast<std::size_t>(k - 1)] = 1;
                        a[static_cast<std::size_t>(k)] = 1;
                    }
                    break;
                default:
                    break;
            }
        }
    }

    void build_gram() {
        if (spec_.family == Family::A) return;
        RationalMatrix g(n_, n_);
        if (spec_.family == Family::B || spec_.family == Family::D) {
            for (std::size_t i = 0; i < n_; ++i) g.at(i, n_ - 1 - i) = Rational(1);
        } else {  // C: J = [0 K; -K 0]
            const std::size_t l = n_ / 2;
            for (std::size_t i = 0; i < l; ++i) {
                g.at(i, n_ - 1 - i) = Rational(1);
                g.at(l + i, l - 1 - i) = Rational(-1);
            }
        }
        gram_ = g;
    }

    AlgebraSpec spec_;
    std::size_t n_ = 0;
    std::vector<std::vector<int>> h_;        // diagonals of the H_i
    std::vector<std::vector<int>> alpha_l_;  // simple roots over the L_j
    std::optional<RationalMatrix> gram_;
};

inline MatrixAlgebra build_matrix_algebra(const AlgebraSpec& spec) { return MatrixAlgebra(spec); }

// Constant-coefficient 2-form over an abstract coframe, used for the dual
// structure equations d theta^c = -1/2 c^c_{ab} theta^a ^ theta^b.
struct CoframeTwoForm {
    std::map<std::pair<int, int>, Rational> comps;  // keys (a, b) with a < b

    void add(int a, int b, const Rational& c) {
        if (c.is_zero() || a == b) return;
        auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        Rational v = a < b ? c : -c;
        auto it = comps.find(key);
        if (it == comps.end()) {
            comps.emplace(key, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) comps.erase(it);
        }
    }
    Rational coeff(int a, int b) const {
        if (a == b) return Rational(0);
        auto it = comps.find(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
        if (it == comps.end()) return Rational(0);
        return a < b ? it->second : -it->second;
    }
    bool operator==(const CoframeTwoForm& o) const { return comps == o.comps; }
};

struct BasisElement {
    std::string label;       // e.g. "P1", "X", "Z"
    int degree;              // strictly negative
    std::string coord_name;  // dual coordinate, e.g. "p1", "x", "z"
    std::optional<RationalMatrix> matrix;
};

// A graded nilpotent Lie algebra given by a basis with degrees and exact
// structure constants; optionally matrix-realized.
class GradedNilpotent {
public:
    explicit GradedNilpotent(std::vector<BasisElement> basis) : basis_(std::move(basis)) {
        for (const auto& b : basis_)
            if (b.degree >= 0) throw std::invalid_argument("GradedNilpotent: degrees must be < 0");
    }

    const std::vector<BasisElement>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    int depth() const {
        int k = 0;
        for (const auto& b : basis_) k = std::max(k, -b.degree);
        return k;
    }
    std::optional<int> leader_index() const { return leader_; }
    void set_leader(int idx) { leader_ = idx; }

    int index_of(const std::string& label) const {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].label == label) return static_cast<int>(i);
        throw std::invalid_argument("GradedNilpotent: unknown label " + label);
    }

    void set_bracket(int a, int b, std::map<int, Rational> expansion) {
        if (a == b) throw std::invalid_argument("set_bracket: equal indices");
        if (a > b) {
            std::map<int, Rational> neg;
            for (auto& [c, v] : expansion) neg[c] = -v;
            std::swap(a, b);
            expansion = std::move(neg);
        }
        for (auto it = expansion.begin(); it != expansion.end();)
            it = it->second.is_zero() ? expansion.erase(it) : std::next(it);
        if (!expansion.empty()) brackets_[{a, b}] = std::move(expansion);
    }

    // [X_a, X_b] expanded over the basis; antisymmetric in (a, b).
    std::map<int, Rational> bracket(int a, int b) const {
        if (a == b) return {};
        bool flip = a > b;
        if (flip) std::swap(a, b);
        auto it = brackets_.find({a, b});
        if (it == brackets_.end()) return {};
        if (!flip) return it->second;
        std::map<int, Rational> neg;
        for (const auto& [c, v] : it->second) neg[c] = -v;
        return neg;
    }

    // Bracket of two linear combinations.
    std::map<int, Rational> bracket_combo(const std::map<int, Rational>& u,
                                          const std::map<int, Rational>& v) const {
        std::map<int, Rational> out;
        for (const auto& [a, ca] : u)
            for (const auto& [b, cb] : v)
                for (const auto& [c, s] : bracket(a, b)) {
                    auto& acc = out.try_emplace(c, Rational(0)).first->second;
                    acc += ca * cb * s;
                }
        for (auto it = out.begin(); it != out.end();)
            it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return out;
    }

    // Computes every structure constant from matrix commutators.  All basis
    // elements must carry matrices.
    void compute_brackets_from_matrices() {
        const std::size_t m = basis_.size();
        if (m == 0) return;
        for (const auto& b : basis_)
            if (!b.matrix) throw std::invalid_argument("compute_brackets: missing matrix");
        const std::size_t n = basis_.front().matrix->rows();
        RationalMatrix span(n * n, m);
        for (std::size_t c = 0; c < m; ++c)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s < n; ++s)
                    span.at(r * n + s, c) = basis_[c].matrix->at(r, s);
        brackets_.clear();
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) {
                RationalMatrix comm = commutator(*basis_[a].matrix, *basis_[b].matrix);
                if (comm.is_zero()) continue;
                std::vector<Rational> rhs(n * n);
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t s = 0; s < n; ++s) rhs[r * n + s] = comm.at(r, s);
                auto sol = solve(span, rhs);
                if (!sol)
                    throw std::logic_error("compute_brackets: commutator not in basis span");
                std::map<int, Rational> expansion;
                for (std::size_t c = 0; c < m; ++c)
                    if (!(*sol)[c].is_zero()) expansion[static_cast<int>(c)] = (*sol)[c];
                set_bracket(static_cast<int>(a), static_cast<int>(b), std::move(expansion));
            }
    }

    // Gradedness, nilpotency below -depth, and the Jacobi identity.
    void validate() const {
        const int k = depth();
        for (const auto& [key, expansion] : brackets_) {
            int da = basis_[static_cast<std::size_t>(key.first)].degree;
            int db = basis_[static_cast<std::size_t>(key.second)].degree;
            for (const auto& [c, v] : expansion) {
                if (basis_[static_cast<std::size_t>(c)].degree != da + db)
                    throw std::logic_error("GradedNilpotent: bracket violates grading");
            }
            if (da + db < -k && !expansion.empty())
                throw std::logic_error("GradedNilpotent: nonzero bracket below depth");
        }
        const auto m = static_cast<int>(basis_.size());
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                for (int c = b + 1; c < m; ++c) {
                    std::map<int, Rational> acc;
                    auto add = [&](const std::map<int, Rational>& u) {
                        for (const auto& [d, v] : u) {
                            auto& t = acc.try_emplace(d, Rational(0)).first->second;
                            t += v;
                        }
                    };
                    add(bracket_combo(bracket(a, b), {{c, Rational(1)}}));
                    add(bracket_combo(bracket(b, c), {{a, Rational(1)}}));
                    add(bracket_combo(bracket(c, a), {{b, Rational(1)}}));
                    for (const auto& [d, v] : acc)
                        if (!v.is_zero())
                            throw std::logic_error("GradedNilpotent: Jacobi identity fails");
                }
    }

    std::map<int, int> degree_dims() const {
        std::map<int, int> dims;
        for (const auto& b : basis_) dims[b.degree] += 1;
        return dims;
    }

    // d theta^c = -1/2 c^c_{ab} theta^a ^ theta^b, i.e. the coefficient of
    // theta^a ^ theta^b (a < b) is -c^c_{ab}.
    std::vector<std::pair<std::string, CoframeTwoForm>> dual_structure_equations() const {
        std::vector<std::pair<std::string, CoframeTwoForm>> out;
        for (std::size_t c = 0; c < basis_.size(); ++c) {
            CoframeTwoForm form;
            for (const auto& [key, expansion] : brackets_) {
                auto it = expansion.find(static_cast<int>(c));
                if (it != expansion.end()) form.add(key.first, key.second, -it->second);
            }
            out.emplace_back(basis_[c].label, std::move(form));
        }
        return out;
    }

private:
    std::vector<BasisElement> basis_;
    std::map<std::pair<int, int>, std::map<int, Rational>> brackets_;
    std::optional<int> leader_;
};

// Generic realization of g_- for any Sigma in a classical algebra: root
// vectors for the height -1 roots, deeper levels generated by brackets with
// the first admissible height-1 root.
inline GradedNilpotent realize_negative_part(const MatrixAlgebra& ma, const RootSystem& rs,
                                             const Sigma& sigma) {
    sigma.validate(rs);
    const int k = depth(rs, sigma);
    if (k < 1) throw std::invalid_argument("realize_negative_part: depth must be >= 1");

    std::vector<BasisElement> basis;
    std::vector<Root> basis_roots;
    std::map<Root, std::pair<int, RationalMatrix>> by_root;  // positive root -> (index, matrix)

    auto negate = [](const Root& r) {
        Root n(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) n[i] = -r[i];
        return n;
    };

    for (int j = 1; j <= k; ++j) {
        int idx_in_level = 0;
        for (const Root& beta : height_level(rs, sigma, j)) {
            RationalMatrix m(0, 0);
            if (j == 1) {
                m = ma.root_space(negate(beta));
            } else {
                bool found = false;
                for (const Root& gamma : height_level(rs, sigma, 1)) {
                    Root rest(beta.size());
                    for (std::size_t i = 0; i < beta.size(); ++i) rest[i] = beta[i] - gamma[i];
                    if (!rs.is_positive_root(rest) || height(rest, sigma) != j - 1) continue;
                    auto ig = by_root.find(gamma);
                    auto ir = by_root.find(rest);
                    if (ig == by_root.end() || ir == by_root.end()) continue;
                    m = commutator(ig->second.second, ir->second.second);
                    if (m.is_zero())
                        throw std::logic_error("realize: generating bracket vanished");
                    found = true;
                    break;
                }
                if (!found) throw std::logic_error("realize: generation property failed");
            }
            std::string label = "g" + std::to_string(j) + "_" + std::to_string(idx_in_level);
            basis.push_back(BasisElement{label, -j, label, m});
            by_root[beta] = {static_cast<int>(basis.size()) - 1, m};
            basis_roots.push_back(beta);
            ++idx_in_level;
        }
    }
    GradedNilpotent g(std::move(basis));
    g.compute_brackets_from_matrices();
    MongeVerdict verdict = is_monge(rs, sigma);
    if (verdict.is_monge && verdict.leader) {
        Root zr = rs.simple_root(*verdict.leader);
        for (std::size_t i = 0; i < basis_roots.size(); ++i)
            if (basis_roots[i] == zr) g.set_leader(static_cast<int>(i));
    }
    return g;
}

}  // namespace parmonge
