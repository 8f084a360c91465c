#pragma once

#include <functional>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "parmonge/cohomology.hpp"
#include "parmonge/mc_forms.hpp"
#include "parmonge/monge.hpp"
#include "parmonge/symmetry.hpp"

namespace parmonge {

namespace tables {

inline std::string sigma_word_str(const WeylElement& w) {
    std::string s = "s";
    for (int i : w.word) s += std::to_string(i + 1);
    return s;
}

inline std::string geometry_name(const AlgebraSpec& spec, const Sigma& sigma) {
    return spec.name() + sigma.str();
}

// Connected components of the simple roots outside Sigma, each with a Dynkin
// type label; these are the simple factors of the reductive part g_0.
struct Factor {
    std::vector<int> nodes;  // ascending
    std::string type;
};

inline std::vector<Factor> g0_factors(const RootSystem& rs, const Sigma& sigma) {
    std::vector<int> comp_of(static_cast<std::size_t>(rs.rank()), -1);
    std::vector<std::vector<int>> comps;
    for (int start = 0; start < rs.rank(); ++start) {
        if (sigma.contains(start) || comp_of[static_cast<std::size_t>(start)] >= 0) continue;
        std::vector<int> stack{start}, nodes;
        comp_of[static_cast<std::size_t>(start)] = static_cast<int>(comps.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            nodes.push_back(v);
            for (int w : rs.neighbors(v)) {
                if (sigma.contains(w) || comp_of[static_cast<std::size_t>(w)] >= 0) continue;
                comp_of[static_cast<std::size_t>(w)] = static_cast<int>(comps.size());
                stack.push_back(w);
            }
        }
        std::sort(nodes.begin(), nodes.end());
        comps.push_back(std::move(nodes));
    }
    std::vector<Factor> out;
    for (auto& nodes : comps) {
        Factor f;
        f.nodes = std::move(nodes);
        const auto& c = rs.cartan_matrix();
        auto a = [&](int i, int j) {
            return c[static_cast<std::size_t>(f.nodes[static_cast<std::size_t>(i)])]
                    [static_cast<std::size_t>(f.nodes[static_cast<std::size_t>(j)])];
        };
        const int m = static_cast<int>(f.nodes.size());
        int doubles = 0, triples = 0, forks = 0;
        for (int i = 0; i < m; ++i) {
            int deg = 0;
            for (int j = 0; j < m; ++j) {
                if (i == j || a(i, j) == 0) continue;
                ++deg;
                if (a(i, j) * a(j, i) == 2) ++doubles;  // counted twice
                if (a(i, j) * a(j, i) == 3) ++triples;
            }
            if (deg >= 3) ++forks;
        }
        doubles /= 2;
        triples /= 2;
        if (m == 1) {
            f.type = "A1";
        } else if (triples > 0) {
            f.type = "G2";
        } else if (forks > 0) {
            f.type = (m >= 6 && doubles == 0 && false) ? "E" : "D" + std::to_string(m);
            // E-type forks have the branch node at distance >= 2 from an end;
            // among the factors arising here only D occurs, E kept for safety
            if (doubles == 0 && m >= 6) {
                // distinguish D from E by the position of the fork node
                int fork_node = -1;
                for (int i = 0; i < m; ++i) {
                    int deg = 0;
                    for (int j = 0; j < m; ++j)
                        if (i != j && a(i, j) != 0) ++deg;
                    if (deg >= 3) fork_node = i;
                }
                int short_arms = 0;
                for (int j = 0; j < m; ++j) {
                    if (j == fork_node || a(fork_node, j) == 0) continue;
                    int deg = 0;
                    for (int k = 0; k < m; ++k)
                        if (j != k && a(j, k) != 0) ++deg;
                    if (deg == 1) ++short_arms;
                }
                f.type = (short_arms >= 2 ? "D" : "E") + std::to_string(m);
            }
        } else if (doubles > 0) {
            // path with one double edge: B if the short root is at the end
            // the arrow points to, C if it is the chain of short roots
            int short_count = 0;
            for (int i = 0; i < m; ++i) {
                bool is_short = false;
                for (int j = 0; j < m; ++j)
                    if (i != j && a(i, j) != 0 && a(i, j) < -1) is_short = true;
                if (is_short) ++short_count;
            }
            f.type = (short_count == 1 ? "B" : "C") + std::to_string(m);
            if (m == 2) f.type = "B2";
        } else {
            f.type = "A" + std::to_string(m);
        }
        out.push_back(std::move(f));
    }
    return out;
}

inline std::string g0ss_str(const RootSystem& rs, const Sigma& sigma) {
    auto factors = g0_factors(rs, sigma);
    if (factors.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += "+";
        s += factors[i].type;
    }
    return s;
}

// "3w1+2w4" style rendering of highest-weight pairings, with fundamental
// weights numbered inside each g_0^ss factor; multiple factors are bracketed.
inline std::string highest_weight_str(const RootSystem& rs, const Sigma& sigma,
                                      const std::map<int, int>& pairings) {
    auto factors = g0_factors(rs, sigma);
    if (factors.empty()) return "0";
    std::vector<std::string> parts;
    for (const auto& f : factors) {
        std::string s;
        for (std::size_t k = 0; k < f.nodes.size(); ++k) {
            int c = pairings.at(f.nodes[k]);
            if (c == 0) continue;
            if (!s.empty()) s += "+";
            if (c != 1) s += std::to_string(c);
            s += "w" + std::to_string(k + 1);
        }
        parts.push_back(s.empty() ? "0" : s);
    }
    if (parts.size() == 1) return parts[0];
    std::string s = "[";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ", ";
        s += parts[i];
    }
    return s + "]";
}

struct TableRow {
    std::vector<std::string> cells;
};

inline std::string render_markdown(const std::vector<std::string>& header,
                                   const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << "|";
    for (const auto& h : header) os << " " << h << " |";
    os << "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) os << " --- |";
    os << "\n";
    for (const auto& r : rows) {
        os << "|";
        for (const auto& c : r.cells) os << " " << c << " |";
        os << "\n";
    }
    return os.str();
}

// One row of the W^2 weight tables.
inline TableRow w2_row(const AlgebraSpec& spec, const Sigma& sigma) {
    RootSystem rs(spec);
    auto els = enumerate_w2(rs, sigma);
    std::string words, weights;
    for (std::size_t i = 0; i < els.size(); ++i) {
        if (i) {
            words += ", ";
            weights += ", ";
        }
        words += sigma_word_str(els[i]);
        weights += std::to_string(homogeneity_weight(rs, sigma, els[i]));
    }
    return TableRow{{geometry_name(spec, sigma), words, weights}};
}

inline std::string table_a() {
    std::vector<TableRow> rows;
    rows.push_back(w2_row({Family::A, 2}, Sigma{0, 1}));
    for (int l = 3; l <= 8; ++l) rows.push_back(w2_row({Family::A, l}, Sigma{0, 1}));
    for (int l = 3; l <= 8; ++l) rows.push_back(w2_row({Family::A, l}, Sigma{0, 1, 2}));
    return render_markdown({"Monge system", "W2", "weights"}, rows);
}

inline std::string table_c() {
    std::vector<TableRow> rows;
    rows.push_back(w2_row({Family::C, 3}, Sigma{0, 1, 2}));
    for (int l = 3; l <= 8; ++l) rows.push_back(w2_row({Family::C, l}, Sigma{l - 2, l - 1}));
    return render_markdown({"Monge system", "W2", "weights"}, rows);
}

inline std::string table_b() {
    std::vector<TableRow> rows;
    rows.push_back(w2_row({Family::B, 2}, Sigma{0, 1}));
    rows.push_back(w2_row({Family::B, 2}, Sigma{1}));
    for (int l = 3; l <= 8; ++l) rows.push_back(w2_row({Family::B, l}, Sigma{0, 1}));
    rows.push_back(w2_row({Family::B, 3}, Sigma{1, 2}));
    rows.push_back(w2_row({Family::B, 3}, Sigma{0, 1, 2}));
    for (int l = 4; l <= 8; ++l) rows.push_back(w2_row({Family::B, l}, Sigma{l - 2, l - 1}));
    return render_markdown({"Monge system", "W2", "weights"}, rows);
}

inline std::string table_d() {
    std::vector<TableRow> rows;
    for (int l = 4; l <= 8; ++l) rows.push_back(w2_row({Family::D, l}, Sigma{0, 1}));
    for (int l = 5; l <= 8; ++l) rows.push_back(w2_row({Family::D, l}, Sigma{l - 3, l - 1}));
    return render_markdown({"Monge system", "W2", "weights"}, rows);
}

inline std::string table_exceptional() {
    std::vector<TableRow> rows;
    rows.push_back(w2_row({Family::F, 4}, Sigma{0, 1}));
    rows.push_back(w2_row({Family::E, 6}, Sigma{4, 5}));
    rows.push_back(w2_row({Family::E, 7}, Sigma{5, 6}));
    return render_markdown({"Monge system", "W2", "weights"}, rows);
}

// The positive-homogeneity H^2 data of a non-rigid case: one row per class.
inline std::vector<TableRow> h2_rows(const std::string& label, const AlgebraSpec& spec,
                                     const Sigma& sigma) {
    RootSystem rs(spec);
    std::vector<TableRow> rows;
    for (const auto& c : h2_classes(rs, sigma)) {
        if (c.homogeneity_weight < 1) continue;
        rows.push_back(TableRow{{label, geometry_name(spec, sigma), g0ss_str(rs, sigma),
                                 sigma_word_str(c.sigma), std::to_string(c.homogeneity_weight),
                                 std::to_string(c.minus_sigma_theta_weight),
                                 c.torsion ? "torsion" : "curvature",
                                 highest_weight_str(rs, sigma, c.highest_weight_pairings)}});
    }
    return rows;
}

inline std::string table_h2() {
    std::vector<TableRow> rows;
    auto add = [&](const std::string& label, const AlgebraSpec& spec, const Sigma& sigma) {
        for (auto& r : h2_rows(label, spec, sigma)) rows.push_back(std::move(r));
    };
    add("Ia", {Family::A, 3}, Sigma{0, 1, 2});
    for (int l = 4; l <= 8; ++l) add("Ia", {Family::A, l}, Sigma{0, 1, 2});
    add("IIa", {Family::C, 3}, Sigma{1, 2});
    for (int l = 4; l <= 8; ++l) add("IIa", {Family::C, l}, Sigma{l - 2, l - 1});
    add("IIb", {Family::C, 3}, Sigma{0, 1, 2});
    add("IIIa", {Family::B, 3}, Sigma{0, 1});
    for (int l = 4; l <= 8; ++l) add("IIIa", {Family::B, l}, Sigma{0, 1});
    add("IIIc", {Family::B, 3}, Sigma{1, 2});
    add("IIId", {Family::B, 3}, Sigma{0, 1, 2});
    add("IVa", {Family::D, 4}, Sigma{0, 1});
    for (int l = 5; l <= 8; ++l) add("IVa", {Family::D, l}, Sigma{0, 1});
    add("Va", {Family::G, 2}, Sigma{0});
    add("Vb", {Family::G, 2}, Sigma{0, 1});
    return render_markdown({"case", "geometry", "g0ss", "sigma", "hom wt", "wt of -s(theta)",
                            "class", "highest wt"},
                           rows);
}

// Symmetry dimensions and grade decompositions of the standard models.
inline std::string table_sym() {
    std::vector<TableRow> rows;
    auto grades_str = [](const std::map<int, int>& dims) {
        std::string s;
        for (const auto& [g, d] : dims) {
            if (!s.empty()) s += ", ";
            s += std::to_string(g) + ":" + std::to_string(d);
        }
        return s;
    };
    auto add_quadratic = [&](const std::string& id, int ell,
                             std::optional<std::pair<int, int>> sig) {
        MongeSpec ms = monge_spec(id, ell, sig);
        SymmetryAlgebra sa = solve_symmetries(ms);
        std::string name = id + " l=" + std::to_string(ell);
        if (sig) name += " (" + std::to_string(sig->first) + "," + std::to_string(sig->second) + ")";
        rows.push_back(TableRow{{name, std::to_string(sa.dim()),
                                 grades_str(grade_decomposition(
                                     sa, std::vector<int>(sa.space->dim(), 1))),
                                 grades_str(grade_decomposition(sa, sa.space->weights))}});
    };
    auto add_pfaffian = [&](const std::string& id, int bound) {
        CaseRealization cr = build_case(id);
        PfaffianSystem ps = standard_pfaffian(golden_coframe(cr));
        SymmetryAlgebra sa = pfaffian_symmetries(ps, bound);
        rows.push_back(TableRow{{id, std::to_string(sa.dim()), "-",
                                 grades_str(grade_decomposition(sa, sa.space->weights))}});
    };
    add_quadratic("Ia", 3, std::nullopt);
    add_quadratic("Ia", 4, std::nullopt);
    add_quadratic("IIa", 3, std::nullopt);
    add_quadratic("IIIa", 3, std::make_pair(3, 0));
    add_quadratic("IIIa", 3, std::make_pair(2, 1));
    add_quadratic("IVa", 4, std::make_pair(4, 0));
    add_pfaffian("IIb", 5);
    add_pfaffian("IIIc", 4);
    {
        SymmetryAlgebra sa = pfaffian_symmetries(iiic_restricted_system(), 3);
        rows.push_back(TableRow{{"IIIc (7-coordinate encoding)", std::to_string(sa.dim()), "-",
                                 grades_str(grade_decomposition(sa, sa.space->weights))}});
    }
    add_pfaffian("IIId", 5);
    add_pfaffian("Va", 3);
    add_pfaffian("Vb", 5);
    return render_markdown({"model", "dim", "grades (all weights 1)", "grades (jet weights)"},
                           rows);
}

inline std::vector<std::string> table_names() {
    return {"w2_table_a.md",  "w2_table_b.md", "w2_table_c.md", "w2_table_d.md",
            "w2_table_exceptional.md", "h2_table.md", "sym_table.md"};
}

// All tables, generated in parallel and merged in the fixed name order.
inline std::map<std::string, std::string> generate_all(unsigned jobs = 0) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::pair<std::string, std::function<std::string()>>> producers = {
        {"w2_table_a.md", table_a},
        {"w2_table_b.md", table_b},
        {"w2_table_c.md", table_c},
        {"w2_table_d.md", table_d},
        {"w2_table_exceptional.md", table_exceptional},
        {"h2_table.md", table_h2},
        {"sym_table.md", table_sym},
    };
    std::map<std::string, std::string> out;
    std::size_t next = 0;
    while (next < producers.size()) {
        std::vector<std::pair<std::string, std::future<std::string>>> batch;
        for (unsigned j = 0; j < jobs && next < producers.size(); ++j, ++next)
            batch.emplace_back(producers[next].first,
                               std::async(std::launch::async, producers[next].second));
        for (auto& [name, fut] : batch) out[name] = fut.get();
    }
    return out;
}

}  // namespace tables

}  // namespace parmonge
