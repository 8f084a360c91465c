#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "parmonge/tables.hpp"

namespace parmonge {

inline constexpr const char* kToolVersion = "1.0.0";

enum class OutputFormat { json, markdown, text };

// A parsed CLI request.  Sigma indices are 1-based on the wire, matching the
// usual alpha numbering, and converted on use.
struct Request {
    std::string command;  // roots | grade | monge | cohomology | realize | mc | sym
                          // | reproduce-tables
    std::optional<char> family;
    std::optional<int> rank;
    std::vector<int> sigma_1based;
    std::string case_id;
    std::optional<std::pair<int, int>> signature;
    std::optional<int> degree_bound;
    bool enumerate = false;
    OutputFormat format = OutputFormat::text;
    std::string golden_dir = "data/golden";
    unsigned jobs = 0;
};

struct Report {
    int exit_code = 0;  // 0 ok, 1 domain error, 2 internal invariant breach
    nlohmann::json payload;
    std::string text;
};

namespace detail {

inline Sigma sigma_from_request(const Request& req) {
    std::set<int> idx;
    for (int i : req.sigma_1based) idx.insert(i - 1);
    return Sigma(idx);
}

inline AlgebraSpec spec_from_request(const Request& req) {
    if (!req.family || !req.rank)
        throw std::invalid_argument("command requires --family and --rank");
    AlgebraSpec spec{family_from_letter(*req.family), *req.rank};
    validate(spec);
    return spec;
}

inline nlohmann::json root_json(const Root& r) { return nlohmann::json(r); }

// Markdown renderings for the tabular commands; other commands fall back to
// the plain-text tree.
inline std::string markdown_view(const Request& req, const nlohmann::json& result) {
    using tables::TableRow;
    std::ostringstream os;
    if (req.command == "cohomology") {
        os << "## " << result["algebra"].get<std::string>() << ", sigma = "
           << nlohmann::json(req.sigma_1based).dump() << "\n\n";
        os << (result["rigid"].get<bool>() ? "rigid\n\n" : "non-rigid\n\n");
        std::vector<TableRow> h1;
        for (const auto& item : result["h1"])
            h1.push_back(TableRow{{item["sigma_word"].get<std::string>(),
                                   std::to_string(item["weight"].get<int>())}});
        os << "### H^1\n\n" << tables::render_markdown({"sigma", "weight"}, h1) << "\n";
        std::vector<TableRow> h2;
        for (const auto& item : result["h2"])
            h2.push_back(TableRow{{item["sigma_word"].get<std::string>(),
                                   std::to_string(item["homogeneity_weight"].get<int>()),
                                   std::to_string(item["minus_sigma_theta_weight"].get<int>()),
                                   item["class"].get<std::string>(),
                                   item["highest_weight"].get<std::string>()}});
        os << "### H^2\n\n"
           << tables::render_markdown(
                  {"sigma", "hom wt", "wt of -s(theta)", "class", "highest wt"}, h2);
        return os.str();
    }
    if (req.command == "monge" && result.contains("monge_gradings")) {
        std::vector<TableRow> rows;
        for (const auto& item : result["monge_gradings"]) {
            std::string sig;
            for (const auto& v : item["sigma"])
                sig += (sig.empty() ? "" : ",") + std::to_string(v.get<int>());
            rows.push_back(TableRow{{"{" + sig + "}",
                                     std::to_string(item["verdict"]["leader"].get<int>()),
                                     item["rigid"].get<bool>() ? "yes" : "no"}});
        }
        os << "## Monge gradings of " << result["algebra"].get<std::string>() << "\n\n"
           << tables::render_markdown({"sigma", "leader", "rigid"}, rows);
        return os.str();
    }
    if (req.command == "sym" && result.contains("algebra")) {
        const auto& alg = result["algebra"];
        os << "## " << result["case"].get<std::string>() << ": dimension "
           << alg["dimension"].get<std::size_t>() << "\n\n";
        std::vector<TableRow> rows;
        for (const auto& [g, d] : alg["grades"].items())
            rows.push_back(TableRow{{g, std::to_string(d.get<int>())}});
        os << tables::render_markdown({"grade", "dim"}, rows) << "\n### basis\n\n";
        for (const auto& b : alg["basis"]) os << "- `" << b.get<std::string>() << "`\n";
        return os.str();
    }
    return std::string();
}

inline std::string payload_text(const nlohmann::json& payload, OutputFormat format) {
    if (format == OutputFormat::json) return payload.dump(2) + "\n";
    std::ostringstream os;
    std::function<void(const nlohmann::json&, int)> walk = [&](const nlohmann::json& j,
                                                               int indent) {
        std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
        if (j.is_object()) {
            for (const auto& [k, v] : j.items()) {
                if (v.is_primitive()) {
                    os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                       << "\n";
                } else {
                    os << pad << k << ":\n";
                    walk(v, indent + 1);
                }
            }
        } else if (j.is_array()) {
            for (const auto& v : j) {
                if (v.is_primitive()) {
                    os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
                } else {
                    os << pad << "-\n";
                    walk(v, indent + 1);
                }
            }
        } else {
            os << pad << j.dump() << "\n";
        }
    };
    walk(payload, 0);
    return os.str();
}

inline nlohmann::json run_roots(const Request& req) {
    AlgebraSpec spec = spec_from_request(req);
    RootSystem rs(spec);
    nlohmann::json j;
    j["algebra"] = spec.name();
    j["positive_root_count"] = rs.positive_roots().size();
    j["positive_roots"] = nlohmann::json::array();
    for (const Root& r : rs.positive_roots()) j["positive_roots"].push_back(root_json(r));
    j["highest_root"] = root_json(rs.highest_root());
    j["cartan_matrix"] = rs.cartan_matrix();
    j["symmetrizer"] = rs.symmetrizer();
    return j;
}

inline nlohmann::json run_grade(const Request& req) {
    AlgebraSpec spec = spec_from_request(req);
    RootSystem rs(spec);
    Sigma sigma = sigma_from_request(req);
    sigma.validate(rs);
    GradingInfo info = grading_components(rs, sigma);
    nlohmann::json j;
    j["algebra"] = spec.name();
    j["sigma"] = req.sigma_1based;
    j["depth"] = info.depth;
    nlohmann::json dims = nlohmann::json::object();
    for (const auto& [deg, d] : info.dims) dims[std::to_string(deg)] = d;
    j["dims"] = dims;
    return j;
}

inline nlohmann::json verdict_json(const MongeVerdict& v) {
    nlohmann::json j;
    j["is_monge"] = v.is_monge;
    if (v.leader) j["leader"] = *v.leader + 1;
    j["dim_match"] = v.dim_match;
    j["adx_isomorphism"] = v.adx_isomorphism;
    nlohmann::json y = nlohmann::json::array();
    for (const Root& r : v.y_roots) y.push_back(root_json(r));
    j["y_roots"] = y;
    return j;
}

inline nlohmann::json run_monge(const Request& req) {
    AlgebraSpec spec = spec_from_request(req);
    nlohmann::json j;
    j["algebra"] = spec.name();
    if (req.enumerate) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& [sigma, verdict] : enumerate_monge(spec)) {
            nlohmann::json item;
            std::vector<int> one_based;
            for (int i : sigma.indices) one_based.push_back(i + 1);
            item["sigma"] = one_based;
            item["verdict"] = verdict_json(verdict);
            RootSystem rs(spec);
            item["rigid"] = is_rigid(rs, sigma);
            list.push_back(item);
        }
        j["monge_gradings"] = list;
    } else {
        RootSystem rs(spec);
        Sigma sigma = sigma_from_request(req);
        sigma.validate(rs);
        j["sigma"] = req.sigma_1based;
        j["verdict"] = verdict_json(is_monge(rs, sigma));
        j["oracle"] = verdict_json(structural_monge_oracle(rs, sigma));
        j["rigid"] = is_rigid(rs, sigma);
    }
    return j;
}

inline nlohmann::json run_cohomology(const Request& req) {
    AlgebraSpec spec = spec_from_request(req);
    RootSystem rs(spec);
    Sigma sigma = sigma_from_request(req);
    sigma.validate(rs);
    nlohmann::json j;
    j["algebra"] = spec.name();
    j["sigma"] = req.sigma_1based;
    j["rigid"] = is_rigid(rs, sigma);
    nlohmann::json h1 = nlohmann::json::array();
    for (const auto& [w, p] : h1_weights(rs, sigma)) {
        nlohmann::json item;
        item["sigma_word"] = tables::sigma_word_str(w);
        item["weight"] = p;
        h1.push_back(item);
    }
    j["h1"] = h1;
    nlohmann::json h2 = nlohmann::json::array();
    for (const auto& c : h2_classes(rs, sigma)) {
        nlohmann::json item;
        item["sigma_word"] = tables::sigma_word_str(c.sigma);
        item["homogeneity_weight"] = c.homogeneity_weight;
        item["minus_sigma_theta_weight"] = c.minus_sigma_theta_weight;
        item["class"] = c.torsion ? "torsion" : "curvature";
        item["lowest_weight"] = c.lowest_weight;
        item["highest_weight"] = tables::highest_weight_str(rs, sigma, c.highest_weight_pairings);
        h2.push_back(item);
    }
    j["h2"] = h2;
    return j;
}

inline nlohmann::json run_realize(const Request& req) {
    if (req.case_id.empty()) throw std::invalid_argument("realize requires --case");
    CaseRealization cr = build_case(req.case_id, req.rank);
    cr.algebra.validate();
    nlohmann::json j;
    j["case"] = cr.id;
    j["geometry"] = tables::geometry_name(cr.spec, cr.sigma);
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& b : cr.algebra.basis()) {
        nlohmann::json item;
        item["label"] = b.label;
        item["degree"] = b.degree;
        item["coordinate"] = b.coord_name;
        basis.push_back(item);
    }
    j["basis"] = basis;
    nlohmann::json brackets = nlohmann::json::array();
    const auto m = static_cast<int>(cr.algebra.dim());
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            auto expansion = cr.algebra.bracket(a, b);
            if (expansion.empty()) continue;
            nlohmann::json item;
            item["left"] = cr.algebra.basis()[static_cast<std::size_t>(a)].label;
            item["right"] = cr.algebra.basis()[static_cast<std::size_t>(b)].label;
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& [c, v] : expansion) {
                nlohmann::json t;
                t["basis"] = cr.algebra.basis()[static_cast<std::size_t>(c)].label;
                t["coefficient"] = v.str();
                terms.push_back(t);
            }
            item["terms"] = terms;
            brackets.push_back(item);
        }
    j["brackets"] = brackets;
    nlohmann::json eqs = nlohmann::json::array();
    for (const auto& [label, form] : cr.algebra.dual_structure_equations()) {
        nlohmann::json item;
        item["form"] = label;
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [key, c] : form.comps) {
            nlohmann::json t;
            t["wedge"] = {cr.algebra.basis()[static_cast<std::size_t>(key.first)].label,
                          cr.algebra.basis()[static_cast<std::size_t>(key.second)].label};
            t["coefficient"] = c.str();
            terms.push_back(t);
        }
        item["terms"] = terms;
        eqs.push_back(item);
    }
    j["structure_equations"] = eqs;
    return j;
}

inline nlohmann::json run_mc(const Request& req) {
    if (req.case_id.empty()) throw std::invalid_argument("mc requires --case");
    CaseRealization cr = build_case(req.case_id, req.rank);
    Coframe cf = golden_coframe(cr);
    if (!coframe_satisfies_structure(cf, cr.algebra))
        throw std::logic_error("stored coframe fails its structure equations");
    nlohmann::json j;
    j["case"] = cr.id;
    j["geometry"] = tables::geometry_name(cr.spec, cr.sigma);
    nlohmann::json forms = nlohmann::json::object();
    for (std::size_t a = 0; a < cf.forms.size(); ++a)
        forms["theta_" + cf.space->names[a]] = cf.forms[a].str();
    j["maurer_cartan_forms"] = forms;
    if (cr.algebra.basis().front().matrix) {
        Coframe computed = compute_mc_forms(cr.algebra);
        if (!coframe_satisfies_structure(computed, cr.algebra))
            throw std::logic_error("computed coframe fails its structure equations");
        nlohmann::json cforms = nlohmann::json::object();
        for (std::size_t a = 0; a < computed.forms.size(); ++a)
            cforms["theta_" + computed.space->names[a]] = computed.forms[a].str();
        j["computed_forms"] = cforms;
    }
    PfaffianSystem ps = standard_pfaffian(cf);
    nlohmann::json gens = nlohmann::json::array();
    for (std::size_t g = 0; g < ps.generators.size(); ++g) {
        nlohmann::json item;
        item["label"] = "theta_" + [&] {
            for (std::size_t a = 0; a < cf.labels.size(); ++a)
                if (cf.labels[a] == ps.generator_labels[g]) return cf.space->names[a];
            return ps.generator_labels[g];
        }();
        item["form"] = ps.generators[g].str();
        gens.push_back(item);
    }
    j["standard_pfaffian"] = gens;
    MongeNormalForm nf = monge_normal_form(req.case_id, req.rank);
    j["monge_equations"] = nf.equations;
    j["jet_dictionary"] = nf.dictionary;
    return j;
}

inline nlohmann::json sym_algebra_json(const SymmetryAlgebra& sa) {
    nlohmann::json j;
    j["dimension"] = sa.dim();
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& f : sa.basis) basis.push_back(f.str());
    j["basis"] = basis;
    nlohmann::json grades = nlohmann::json::object();
    for (const auto& [g, d] : grade_decomposition(sa, sa.space->weights))
        grades[std::to_string(g)] = d;
    j["grades"] = grades;
    nlohmann::json structure = nlohmann::json::array();
    for (const auto& [key, expansion] : sa.structure) {
        nlohmann::json item;
        item["pair"] = {key.first, key.second};
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [c, v] : expansion) {
            nlohmann::json t;
            t["basis"] = c;
            t["coefficient"] = v.str();
            terms.push_back(t);
        }
        item["terms"] = terms;
        structure.push_back(item);
    }
    j["bracket_table"] = structure;
    return j;
}

inline nlohmann::json run_sym(const Request& req) {
    if (req.case_id.empty()) throw std::invalid_argument("sym requires --case");
    nlohmann::json j;
    j["case"] = req.case_id;
    const std::string& id = req.case_id;
    if (id == "Ia" || id == "IIa" || id == "IIIa" || id == "IVa") {
        int ell = req.rank.value_or(case_default_rank(id));
        MongeSpec ms = monge_spec(id, ell, req.signature);
        SymmetryAlgebra sa = solve_symmetries(ms, req.degree_bound.value_or(2));
        j["solver"] = "quadratic-monge";
        j["rank"] = ell;
        j["algebra"] = sym_algebra_json(sa);
        j["leader_grades"] = nlohmann::json::object();
        for (const auto& [g, d] :
             grade_decomposition(sa, std::vector<int>(sa.space->dim(), 1)))
            j["leader_grades"][std::to_string(g)] = d;
    } else if (id == "IIIc7") {
        PfaffianSystem ps = iiic_restricted_system();
        SymmetryAlgebra sa = pfaffian_symmetries(ps, req.degree_bound.value_or(3));
        j["solver"] = "pfaffian";
        j["algebra"] = sym_algebra_json(sa);
    } else if (id == "IIb" || id == "IIIc" || id == "IIId" || id == "Va" || id == "Vb") {
        CaseRealization cr = build_case(id, req.rank);
        PfaffianSystem ps = standard_pfaffian(golden_coframe(cr));
        int bound = req.degree_bound.value_or(cr.algebra.depth());
        SymmetryAlgebra sa = pfaffian_symmetries(ps, bound);
        j["solver"] = "pfaffian";
        j["bound"] = bound;
        j["algebra"] = sym_algebra_json(sa);
    } else if (id == "Ib" || id == "IIIb") {
        // infinite-dimensional symmetry algebras: report kernel growth only
        CaseRealization cr = build_case(id, req.rank);
        PfaffianSystem ps = standard_pfaffian(golden_coframe(cr));
        int bound = req.degree_bound.value_or(cr.algebra.depth());
        nlohmann::json growth = nlohmann::json::array();
        for (int d = bound; d <= bound + 2; ++d) {
            nlohmann::json item;
            item["bound"] = d;
            item["kernel_dimension"] = pfaffian_kernel(ps, d).size();
            growth.push_back(item);
        }
        j["solver"] = "pfaffian";
        j["note"] = "symmetry algebra is infinite-dimensional; kernel growth reported";
        j["kernel_growth"] = growth;
    } else {
        throw std::invalid_argument("unknown case id: " + id);
    }
    return j;
}

inline nlohmann::json run_reproduce(const Request& req, std::string* text) {
    namespace fs = std::filesystem;
    auto generated = tables::generate_all(req.jobs);
    nlohmann::json j;
    nlohmann::json results = nlohmann::json::array();
    bool all_ok = true;
    std::ostringstream os;
    for (const auto& name : tables::table_names()) {
        fs::path path = fs::path(req.golden_dir) / name;
        std::string status;
        std::string diff;
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            status = "missing";
            all_ok = false;
        } else {
            std::stringstream buf;
            buf << in.rdbuf();
            if (buf.str() == generated.at(name)) {
                status = "pass";
            } else {
                status = "mismatch";
                all_ok = false;
                std::istringstream golden(buf.str()), fresh(generated.at(name));
                std::string gl, fl;
                int line = 0;
                while (true) {
                    bool g_ok = static_cast<bool>(std::getline(golden, gl));
                    bool f_ok = static_cast<bool>(std::getline(fresh, fl));
                    ++line;
                    if (!g_ok && !f_ok) break;
                    if (gl != fl || g_ok != f_ok) {
                        diff += "line " + std::to_string(line) + ":\n  golden:    " +
                                (g_ok ? gl : "<eof>") + "\n  generated: " + (f_ok ? fl : "<eof>") +
                                "\n";
                    }
                    if (!g_ok || !f_ok) break;
                }
            }
        }
        nlohmann::json item;
        item["table"] = name;
        item["status"] = status;
        if (!diff.empty()) item["diff"] = diff;
        results.push_back(item);
        os << "[" << (status == "pass" ? "PASS" : "FAIL") << "] " << name << "\n";
        if (!diff.empty()) os << diff;
    }
    j["tables"] = results;
    j["all_pass"] = all_ok;
    if (text) *text = os.str();
    return j;
}

}  // namespace detail

inline Report run(const Request& req) {
    Report rep;
    nlohmann::json j;
    j["tool"] = "parmonge";
    j["version"] = kToolVersion;
    j["command"] = req.command;
    try {
        std::string extra_text;
        nlohmann::json payload;
        if (req.command == "roots") payload = detail::run_roots(req);
        else if (req.command == "grade") payload = detail::run_grade(req);
        else if (req.command == "monge") payload = detail::run_monge(req);
        else if (req.command == "cohomology") payload = detail::run_cohomology(req);
        else if (req.command == "realize") payload = detail::run_realize(req);
        else if (req.command == "mc") payload = detail::run_mc(req);
        else if (req.command == "sym") payload = detail::run_sym(req);
        else if (req.command == "reproduce-tables") {
            payload = detail::run_reproduce(req, &extra_text);
            if (!payload["all_pass"].get<bool>()) rep.exit_code = 2;
        } else {
            throw std::invalid_argument("unknown command: " + req.command);
        }
        j["result"] = payload;
        rep.payload = j;
        if (req.command == "reproduce-tables" && req.format != OutputFormat::json) {
            rep.text = extra_text;
        } else if (req.format == OutputFormat::markdown) {
            std::string md = detail::markdown_view(req, payload);
            rep.text = md.empty() ? detail::payload_text(j, req.format) : md;
        } else {
            rep.text = detail::payload_text(j, req.format);
        }
    } catch (const std::invalid_argument& e) {
        j["error"] = e.what();
        rep.payload = j;
        rep.text = std::string("error: ") + e.what() + "\n";
        rep.exit_code = 1;
    } catch (const std::domain_error& e) {
        j["error"] = e.what();
        rep.payload = j;
        rep.text = std::string("error: ") + e.what() + "\n";
        rep.exit_code = 1;
    } catch (const std::logic_error& e) {
        // internal invariant breach
        j["error"] = e.what();
        rep.payload = j;
        rep.text = std::string("internal error: ") + e.what() + "\n";
        rep.exit_code = 2;
    } catch (const std::exception& e) {
        j["error"] = e.what();
        rep.payload = j;
        rep.text = std::string("error: ") + e.what() + "\n";
        rep.exit_code = 1;
    }
    return rep;
}

}  // namespace parmonge
