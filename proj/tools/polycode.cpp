/*
 * Copyright 2026 The polycode Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "polycode/decomp.hpp"
#include "polycode/error.hpp"
#include "polycode/families.hpp"
#include "polycode/io.hpp"
#include "polycode/toric.hpp"
#include "reproduce.hpp"

using namespace polycode;
using io::json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kOutOfBox = 3, kBudget = 4, kField = 5 };

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::ParseError:
        case ErrorKind::SchemaError:
            return kParse;
        case ErrorKind::OutOfBox:
            return kOutOfBox;
        case ErrorKind::BudgetExceeded:
            return kBudget;
        case ErrorKind::NotAPrimePower:
        case ErrorKind::TooSmall:
            return kField;
        default:
            return kFailure;
    }
}

std::uint64_t env_budget(std::uint64_t fallback) {
    const char* v = std::getenv("POLYCODE_BUDGET");
    if (!v || !*v) return fallback;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v, &end, 10);
    if (*end != '\0' || x == 0) throw Error(ErrorKind::InvalidArgument, std::string("POLYCODE_BUDGET is not a positive integer: ") + v);
    return x;
}

struct Common {
    std::uint32_t q = 5;
    std::optional<std::uint64_t> budget;
    int parallel = 0;
    bool json_out = false;
    bool csv_out = false;

    std::uint64_t distance_budget() const { return budget ? *budget : env_budget(toric::kDefaultDistanceBudget); }
    std::uint64_t node_budget() const { return budget ? *budget : env_budget(decomp::kDefaultNodeBudget); }
    toric::SearchOptions search() const { return {distance_budget(), parallel}; }
};

/// "@file.json" is shorthand for atom(@file.json).
lattice::PolytopeExpr read_target(const std::string& text) {
    if (!text.empty() && text[0] == '@') return io::parse_expr("atom(" + text + ")");
    return io::parse_expr(text);
}

std::string fraction(const Rational& r) { return numerator(r).str() + "/" + denominator(r).str(); }

void print_params(const toric::CodeParams& p, const Common& c) {
    if (c.json_out) {
        std::cout << io::params_json(p).dump(2) << "\n";
        return;
    }
    if (c.csv_out) {
        std::cout << "q,n,N,k,d_lo,d_hi,delta_num,delta_den,rate_num,rate_den,max_zeros,method,rule\n"
                  << p.q << ',' << p.n << ',' << p.N << ',' << p.k << ',' << p.d_lo << ',' << p.d_hi << ','
                  << numerator(p.delta()) << ',' << denominator(p.delta()) << ',' << numerator(p.rate()) << ','
                  << denominator(p.rate()) << ',' << p.max_zeros() << ',' << toric::method_name(p.method) << ','
                  << p.rule << "\n";
        return;
    }
    std::cout << "N=" << p.N << " k=" << p.k;
    if (p.exact())
        std::cout << " d=" << p.d_lo << " delta=" << fraction(p.delta());
    else
        std::cout << " d_lo=" << p.d_lo << " d_hi=" << p.d_hi << " delta_lo=" << fraction(p.delta())
                  << " delta_hi=" << fraction(p.delta_hi());
    std::cout << " rate=" << fraction(p.rate());
    if (p.exact())
        std::cout << " max_zeros=" << p.max_zeros();
    std::cout << " method=" << toric::method_name(p.method) << " rule=" << p.rule << "\n";
    for (const auto& n : p.notes) std::cout << "note: " << n << "\n";
}

int cmd_params(const std::string& expr, const std::string& method, const Common& c) {
    const auto e = io::parse_expr(expr);
    const ff::FieldTable f(c.q);
    if (!e.fits_in_box(c.q))
        throw Error(ErrorKind::OutOfBox, "polytope does not fit in [0, " + std::to_string(c.q - 2) + "]^n");
    toric::CodeParams p;
    int code = kOk;
    if (method == "exhaustive") {
        try {
            p = toric::min_distance_exhaustive(e.evaluate(), f, c.search());
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::BudgetExceeded) throw;
            std::cerr << "polycode: " << err.what() << "; reporting bounds\n";
            p = toric::params_by_formula(e, f, {toric::EngineMode::Bounds, c.search()});
            p.budget_limited = true;
            code = kBudget;
        }
    } else {
        toric::EngineMode mode = toric::EngineMode::Auto;
        if (method == "formula") mode = toric::EngineMode::Formula;
        if (method == "bounds") mode = toric::EngineMode::Bounds;
        p = toric::params_by_formula(e, f, {mode, c.search()});
        if (!p.exact() && p.budget_limited) code = kBudget;
    }
    print_params(p, c);
    return code;
}

int cmd_genmatrix(const std::string& expr, const Common& c) {
    const ff::FieldTable f(c.q);
    const toric::GeneratorMatrix g(io::parse_expr(expr).evaluate(), f);
    if (!c.json_out) {
        std::cout << io::matrix_dump(g);
        return kOk;
    }
    json rows = json::array(), cols = json::array(), entries = json::array();
    for (const auto& p : g.row_labels()) rows.push_back(p.to_string());
    for (std::size_t j = 0; j < g.cols(); ++j) cols.push_back(g.col_label(j));
    for (std::size_t r = 0; r < g.rows(); ++r) entries.push_back(std::vector<ff::Elem>(g.row(r).begin(), g.row(r).end()));
    std::cout << json{{"q", c.q}, {"rows", rows}, {"cols", cols}, {"entries", entries}}.dump() << "\n";
    return kOk;
}

int cmd_decomp(const std::string& target, const std::string& what, const Common& c) {
    const auto e = read_target(target);
    const auto& p = e.evaluate();
    std::vector<std::pair<const char*, decomp::DecompResult>> results;
    if (what == "L" || what == "both") results.emplace_back("L", decomp::full_minkowski_length(p, c.node_budget()));
    if (what == "M" || what == "both") results.emplace_back("M", decomp::hypercube_dimension(p, c.node_budget()));
    bool exceeded = false;
    json out = json::array();
    for (const auto& [name, r] : results) {
        exceeded = exceeded || r.budget_exceeded;
        if (c.json_out) {
            json j = io::decomp_json(r, name);
            j["verified"] = decomp::verify_witness(p, r.witness);
            out.push_back(std::move(j));
            continue;
        }
        std::cout << name << (r.budget_exceeded ? ">=" : "=") << r.value << " nodes=" << r.nodes
                  << " verified=" << (decomp::verify_witness(p, r.witness) ? "yes" : "no");
        if (!r.witness.base.coords().empty()) std::cout << " base=" << r.witness.base.to_string();
        std::cout << " vectors=";
        for (std::size_t i = 0; i < r.witness.vectors.size(); ++i)
            std::cout << (i ? "," : "") << r.witness.vectors[i].to_string();
        if (r.budget_exceeded) std::cout << " (budget exceeded)";
        std::cout << "\n";
    }
    if (c.json_out) std::cout << out.dump(2) << "\n";
    return exceeded ? kBudget : kOk;
}

int cmd_family(const std::string& kind, const std::vector<std::int64_t>& schedule, std::size_t depth,
               const std::string& seed, const Common& c) {
    families::FamilySpec s;
    if (kind == "boxes")
        s.kind = families::FamilyKind::Boxes;
    else if (kind == "simplices")
        s.kind = families::FamilyKind::Simplices;
    else
        s.kind = families::FamilyKind::SelfJoin;
    s.q = c.q;
    s.schedule = schedule;
    s.depth = depth;
    if (!seed.empty()) s.seed = read_target(seed);
    s.distance_budget = c.distance_budget();
    s.node_budget = c.budget ? *c.budget : env_budget(s.node_budget);
    s.threads = c.parallel;
    const ff::FieldTable check(c.q);
    const auto rows = families::run_family(s);
    if (c.json_out)
        std::cout << io::family_json(rows).dump(2) << "\n";
    else
        std::cout << families::family_csv(rows);
    return kOk;
}

int cmd_reproduce(bool all, const std::vector<std::string>& examples, bool list, const Common& c) {
    if (list) {
        for (const auto& n : cli::example_names()) std::cout << n << "\n";
        return kOk;
    }
    if (!all && examples.empty()) throw Error(ErrorKind::InvalidArgument, "reproduce needs --all or --example NAME");
    const auto checks = cli::run_examples(all ? std::vector<std::string>{} : examples,
                                          {c.distance_budget(), c.node_budget(), c.parallel});
    std::size_t failed = 0;
    for (const auto& r : checks) {
        if (!r.pass()) ++failed;
        std::cout << (r.pass() ? "pass" : "FAIL") << "  " << r.example << "  " << r.label << "  expected=" << r.expected
                  << " actual=" << r.actual << "\n";
    }
    std::cout << checks.size() - failed << "/" << checks.size() << " checks passed\n";
    return failed ? kFailure : kOk;
}

int cmd_probe(const families::ProbeSpec& ps, const Common& c) {
    const auto rep = families::conjecture_probe(ps);
    std::ostringstream summary;
    summary << "samples=" << rep.samples.size() << " violations=" << rep.violations << " open=" << rep.open_checks
            << " outliers=" << rep.outliers << " experiment_disagreements=" << rep.experiment_disagreements
            << " seed=" << ps.seed << " q=" << ps.q << "\n";
    if (c.csv_out) {
        std::cout << families::probe_csv(rep);
        std::cerr << summary.str();
    } else if (c.json_out) {
        std::cout << json{{"samples", rep.samples.size()},
                          {"violations", rep.violations},
                          {"open_checks", rep.open_checks},
                          {"outliers", rep.outliers},
                          {"experiment_disagreements", rep.experiment_disagreements},
                          {"seed", ps.seed},
                          {"q", ps.q},
                          {"dim_min", ps.dim_min},
                          {"dim_max", ps.dim_max}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << summary.str();
    }
    return rep.violations ? kFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toric code parameters from lattice polytopes"};
    app.require_subcommand(1);
    Common c;

    auto common = [&c](CLI::App* sub, bool formats) {
        sub->add_option("--q", c.q, "field order (prime power)");
        sub->add_option("--budget", c.budget, "search budget (messages or nodes)");
        sub->add_option("--parallel", c.parallel, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
        if (formats) {
            auto* j = sub->add_flag("--json", c.json_out, "JSON output");
            sub->add_flag("--csv", c.csv_out, "CSV output")->excludes(j);
        }
    };

    std::string expr, method = "auto", what = "both", kind, seed;
    auto* params = app.add_subcommand("params", "code parameters of a polytope expression");
    params->add_option("expr", expr, "polytope expression")->required();
    params->add_option("--method", method, "auto, formula, exhaustive or bounds")->check(CLI::IsMember({"auto", "formula", "exhaustive", "bounds"}));
    common(params, true);

    auto* genmatrix = app.add_subcommand("genmatrix", "dump the generator matrix");
    genmatrix->add_option("expr", expr, "polytope expression")->required();
    common(genmatrix, false);
    genmatrix->add_flag("--json", c.json_out, "JSON output");

    auto* dec = app.add_subcommand("decomp", "full Minkowski length and hypercube dimension");
    dec->add_option("target", expr, "expression or @file.json")->required();
    dec->add_option("--what", what, "L, M or both")->check(CLI::IsMember({"L", "M", "both"}));
    common(dec, false);
    dec->add_flag("--json", c.json_out, "JSON output");

    std::vector<std::int64_t> schedule;
    std::size_t depth = 1;
    auto* fam = app.add_subcommand("family", "tabulate a polytope family");
    fam->add_option("--kind", kind, "family kind")->required()->check(CLI::IsMember({"boxes", "simplices", "self-join"}));
    fam->add_option("--schedule", schedule, "side lengths, comma separated")->delimiter(',');
    fam->add_option("--depth", depth, "number of rows");
    fam->add_option("--seed", seed, "seed expression for self-join");
    common(fam, true);

    bool all = false, list = false;
    std::vector<std::string> examples;
    auto* rep = app.add_subcommand("reproduce", "check the worked examples");
    rep->add_flag("--all", all, "run every example");
    rep->add_option("--example", examples, "example names, comma separated")->delimiter(',');
    rep->add_flag("--list", list, "list example names");
    common(rep, false);

    families::ProbeSpec ps;
    auto* probe = app.add_subcommand("probe", "random probe of the decomposition bounds");
    probe->add_option("--samples", ps.samples, "number of samples");
    probe->add_option("--seed", ps.seed, "run seed");
    probe->add_option("--dim-min", ps.dim_min, "smallest ambient dimension");
    probe->add_option("--dim-max", ps.dim_max, "largest ambient dimension (at most 16)");
    probe->add_option("--distance-budget", ps.distance_budget, "message budget per sample");
    probe->add_option("--node-budget", ps.node_budget, "search nodes per sample");
    common(probe, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (*params) return cmd_params(expr, method, c);
        if (*genmatrix) return cmd_genmatrix(expr, c);
        if (*dec) return cmd_decomp(expr, what, c);
        if (*fam) return cmd_family(kind, schedule, depth, seed, c);
        if (*rep) return cmd_reproduce(all, examples, list, c);
        ps.q = c.q;
        ps.threads = c.parallel;
        return cmd_probe(ps, c);
    } catch (const Error& e) {
        std::cerr << "polycode: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "polycode: " << e.what() << "\n";
        return kFailure;
    }
}
