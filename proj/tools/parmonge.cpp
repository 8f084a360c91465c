// parmonge: classify parabolic geometries of Monge type, compute their
// rigidity weights, realize the nilpotent models, and solve for the symmetry
// algebras of the associated Monge equations.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "parmonge/report.hpp"

using namespace parmonge;

namespace {

std::map<std::string, std::string> read_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not found: " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const char* ws = " \t\r";
            auto b = s.find_first_not_of(ws);
            auto e = s.find_last_not_of(ws);
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

OutputFormat parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "markdown") return OutputFormat::markdown;
    if (s == "text") return OutputFormat::text;
    throw CLI::ValidationError("--format must be json, markdown or text");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact classification and symmetry computations for parabolic "
                 "geometries of Monge type"};
    app.require_subcommand(1);

    Request req;
    std::string family_str, format_str = "text", config_path, sigma_str, signature_str;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format_str, "output format: json | markdown | text")
            ->capture_default_str();
        cmd->add_option("--config", config_path, "key=value config file");
    };
    auto add_algebra = [&](CLI::App* cmd, bool need_sigma) {
        cmd->add_option("--family", family_str, "family letter A..G")->required();
        cmd->add_option("--rank", req.rank, "rank")->required();
        auto* opt = cmd->add_option("--sigma", sigma_str,
                                    "comma-separated 1-based simple-root indices");
        if (need_sigma) opt->required();
    };

    auto* roots = app.add_subcommand("roots", "root system data");
    add_algebra(roots, false);
    add_common(roots);

    auto* grade = app.add_subcommand("grade", "grading by a subset of simple roots");
    add_algebra(grade, true);
    add_common(grade);

    auto* monge = app.add_subcommand("monge", "Monge-type classification");
    add_algebra(monge, false);
    monge->add_flag("--enumerate", req.enumerate, "enumerate all Monge gradings");
    add_common(monge);

    auto* coh = app.add_subcommand("cohomology", "degree 1 and 2 cohomology weights");
    add_algebra(coh, true);
    add_common(coh);

    auto* realize = app.add_subcommand("realize", "matrix/Chevalley realization of g_-");
    realize->add_option("--case", req.case_id, "case id (Ia, Ib, ..., Vb)")->required();
    realize->add_option("--rank", req.rank, "rank for parametric cases");
    add_common(realize);

    auto* mc = app.add_subcommand("mc", "Maurer-Cartan forms and standard Pfaffian system");
    mc->add_option("--case", req.case_id, "case id")->required();
    mc->add_option("--rank", req.rank, "rank for parametric cases");
    add_common(mc);

    auto* sym = app.add_subcommand("sym", "infinitesimal symmetry algebra");
    sym->add_option("--case", req.case_id, "case id (also IIIc7)")->required();
    sym->add_option("--rank", req.rank, "rank for parametric cases");
    sym->add_option("--signature", signature_str, "signature r,s for IIIa/IVa");
    sym->add_option("--degree", req.degree_bound, "ansatz degree / weighted-degree bound");
    add_common(sym);

    auto* repro = app.add_subcommand("reproduce-tables",
                                     "regenerate all tables and compare against golden files");
    repro->add_option("--golden-dir", req.golden_dir, "directory of golden tables")
        ->capture_default_str();
    repro->add_option("--jobs", req.jobs, "worker count (default: hardware parallelism)");
    add_common(repro);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints usage or help text
        return code == 0 ? 0 : 1;
    }

    try {
        // config file values fill in anything flags did not set
        if (!config_path.empty()) {
            auto kv = read_config(config_path);
            if (kv.count("jobs") && req.jobs == 0)
                req.jobs = static_cast<unsigned>(std::stoul(kv["jobs"]));
            if (kv.count("degree") && !req.degree_bound) req.degree_bound = std::stoi(kv["degree"]);
            if (kv.count("golden_dir") && req.golden_dir == "data/golden")
                req.golden_dir = kv["golden_dir"];
            if (kv.count("rank") && !req.rank) req.rank = std::stoi(kv["rank"]);
        }
        req.command = app.get_subcommands().front()->get_name();
        req.format = parse_format(format_str);
        if (!family_str.empty()) {
            if (family_str.size() != 1)
                throw std::invalid_argument("--family must be a single letter");
            req.family = family_str[0];
        }
        if (!sigma_str.empty()) {
            std::stringstream ss(sigma_str);
            std::string tok;
            while (std::getline(ss, tok, ',')) req.sigma_1based.push_back(std::stoi(tok));
        }
        if (!signature_str.empty()) {
            auto comma = signature_str.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("--signature must be r,s");
            req.signature = {std::stoi(signature_str.substr(0, comma)),
                             std::stoi(signature_str.substr(comma + 1))};
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    Report rep = ::parmonge::run(req);
    std::cout << rep.text;
    return rep.exit_code;
}
