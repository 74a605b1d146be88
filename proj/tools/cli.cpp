#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "bnci/acceptance.hpp"
#include "bnci/dag.hpp"
#include "bnci/distribution.hpp"
#include "bnci/dsep.hpp"
#include "bnci/error.hpp"
#include "bnci/graphoid.hpp"
#include "bnci/oracle.hpp"
#include "bnci/reduction.hpp"
#include "bnci/witness.hpp"

namespace bnci::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Error(ErrorKind::Io, "cannot write " + path.string());
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

NodeSet labels_to_set(const std::string& text, const std::vector<std::string>& labels) {
    std::vector<NodeId> ids;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        std::istringstream words(tok);
        std::string w;
        while (words >> w) {
            const auto it = std::find(labels.begin(), labels.end(), w);
            if (it == labels.end()) throw Error(ErrorKind::UnknownLabel, w);
            ids.push_back(static_cast<NodeId>(it - labels.begin()));
        }
    }
    return NodeSet(std::move(ids));
}

// Query file for `refute`. Either CI mode:
//   vars: a b c / given <ci> / fd a,b -> c / target <ci>
// or network mode:
//   network1 <dag file> / network2 <dag file> / target <ci>
// Network paths are relative to the query file.
struct RefuteSpec {
    std::vector<std::string> labels;
    CiSet given;
    std::vector<FunctionalDependency> fds;
    std::vector<std::string> target_lines;
    std::optional<Dag> g1, g2;
};

RefuteSpec parse_refute_spec(const std::string& path) {
    RefuteSpec spec;
    const auto dir = fs::path(path).parent_path();
    std::istringstream in(read_file(path));
    std::string raw;
    std::vector<std::string> given_lines, fd_lines;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        const auto where = " (line " + std::to_string(line_no) + ")";
        const auto space = line.find_first_of(" \t");
        const auto keyword = line.substr(0, space);
        const auto rest = space == std::string::npos ? std::string{} : trim(line.substr(space));
        if (keyword == "vars:") {
            std::istringstream words(rest);
            std::string w;
            while (words >> w) spec.labels.push_back(w);
        } else if (keyword == "given") {
            given_lines.push_back(rest);
        } else if (keyword == "fd") {
            fd_lines.push_back(rest);
        } else if (keyword == "target") {
            spec.target_lines.push_back(rest);
        } else if (keyword == "network1" || keyword == "network2") {
            auto g = parse_dag(read_file((dir / rest).string()));
            (keyword == "network1" ? spec.g1 : spec.g2) = std::move(g);
        } else {
            throw Error(ErrorKind::SyntaxError, "unknown keyword '" + keyword + "'" + where);
        }
    }
    if (spec.target_lines.size() != 1) throw Error(ErrorKind::SyntaxError, "query needs exactly one target line");
    if (spec.g1.has_value() != spec.g2.has_value()) {
        throw Error(ErrorKind::SyntaxError, "network mode needs both network1 and network2");
    }
    if (spec.g1) {
        if (!spec.labels.empty() || !given_lines.empty() || !fd_lines.empty()) {
            throw Error(ErrorKind::SyntaxError, "vars, given and fd lines do not combine with networks");
        }
        if (spec.g1->node_count() != spec.g2->node_count()) {
            throw Error(ErrorKind::NodeCountMismatch, "networks have different node counts");
        }
        if (spec.g1->labels() != spec.g2->labels()) {
            throw Error(ErrorKind::SyntaxError, "networks must declare the same nodes in the same order");
        }
        spec.labels = spec.g1->labels();
        return spec;
    }
    if (spec.labels.empty()) throw Error(ErrorKind::SyntaxError, "query needs a 'vars:' line");
    for (const auto& g : given_lines) spec.given.insert(parse_ci(g, spec.labels));
    for (const auto& f : fd_lines) {
        const auto arrow = f.find("->");
        if (arrow == std::string::npos) throw Error(ErrorKind::SyntaxError, "fd needs '->': " + f);
        const auto rhs = labels_to_set(f.substr(arrow + 2), spec.labels);
        if (rhs.size() != 1) throw Error(ErrorKind::SyntaxError, "fd needs one dependent variable: " + f);
        spec.fds.push_back({labels_to_set(f.substr(0, arrow), spec.labels), rhs[0]});
    }
    return spec;
}

std::vector<Value> parse_cards(const std::string& text, std::size_t n) {
    std::vector<Value> cards;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            std::size_t used = 0;
            const auto v = std::stoul(trim(tok), &used);
            if (used != trim(tok).size()) throw std::invalid_argument(tok);
            cards.push_back(static_cast<Value>(v));
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::SyntaxError, "bad cardinality '" + tok + "'");
        }
    }
    // A single value applies to every variable.
    if (cards.size() == 1) cards.assign(n, cards.front());
    return cards;
}

std::string dag_output(const Dag& g, bool dot, const std::string& name) {
    return dot ? to_dot(g, name) : to_text(g);
}

// Implication-A instances go through pairwise elimination and the
// Implication B rewriting first; every instance gets a duplicated target.
ImplicationInstance groups_form(const AnyInstance& any) {
    ImplicationInstance inst;
    if (const auto* a = std::get_if<ImplicationAInstance>(&any)) {
        inst = build_implication_b(eliminate_pairwise_independence(*a));
    } else {
        inst = std::get<ImplicationInstance>(any);
    }
    if (!inst.b0_prime) inst = duplicate_target_variable(inst);
    return inst;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conditional independence toolkit for Bayesian network structures", "bnci"};
    app.require_subcommand(1);
    int code = 0;

    std::string dag_path, dag0_path, ci_text, file_path, dist_path, out_dir, cards_text, format = "text";
    std::size_t n = 0;
    OracleBudget budget;

    auto* dsep = app.add_subcommand("dsep", "Is the CI statement d-separated in the DAG? Prints true/false");
    dsep->add_option("dag", dag_path, "DAG file")->required();
    dsep->add_option("ci", ci_text, "statement such as \"a _||_ c | b\"")->required();

    auto* localci = app.add_subcommand("localci", "Print the local CI set of a DAG");
    localci->add_option("dag", dag_path, "DAG file")->required();

    auto* impliedci = app.add_subcommand("impliedci", "Print every CI implied by a DAG");
    impliedci->add_option("dag", dag_path, "DAG file")->required();

    auto* inclusion = app.add_subcommand("inclusion", "Does dag1 imply every CI of dag0? Prints true/false");
    inclusion->add_option("dag1", dag_path, "DAG file")->required();
    inclusion->add_option("dag0", dag0_path, "DAG file")->required();

    auto* closure = app.add_subcommand("closure", "Semigraphoid closure of a CI set");
    closure->add_option("ciset", file_path, "CI-set file")->required();
    closure->add_option("n", n, "number of variables")->required();

    auto* refute = app.add_subcommand("refute", "Search for a counterexample to an implication");
    refute->add_option("query", file_path, "query file")->required();
    refute->add_option("--seed", budget.seed, "random seed");
    refute->add_option("--restarts", budget.restarts, "number of restarts");
    refute->add_option("--iterations", budget.iterations, "iterations per restart");
    refute->add_option("--cards", cards_text, "cardinalities, one value or a comma list");

    auto* reduce = app.add_subcommand("reduce", "Compile an instance into two networks and a target CI");
    reduce->add_option("instance", file_path, "instance file")->required();
    reduce->add_option("--out", out_dir, "output directory")->required();

    auto* witness = app.add_subcommand("witness", "Build the witness distribution for an instance");
    witness->add_option("instance", file_path, "instance file")->required();
    witness->add_option("dist", dist_path, "distribution of V_1..V_n")->required();

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");

    reduce->add_option("--format", format, "DAG output format")->check(CLI::IsMember({"text", "dot"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    const bool dot = format == "dot";
    try {
        if (dsep->parsed()) {
            const auto g = parse_dag(read_file(dag_path));
            const bool sep = d_separated(g, parse_ci(ci_text, g.labels()));
            out << (sep ? "true" : "false") << '\n';
            code = sep ? 0 : 1;
        } else if (localci->parsed() || impliedci->parsed()) {
            const auto g = parse_dag(read_file(dag_path));
            const auto set = localci->parsed() ? local_ci_set(g) : implied_ci_set(g);
            out << format_ci_set(set, g.labels());
        } else if (inclusion->parsed()) {
            const auto g1 = parse_dag(read_file(dag_path));
            const auto g0 = parse_dag(read_file(dag0_path));
            const bool inc = inclusion_implies(g1, g0);
            out << (inc ? "true" : "false") << '\n';
            code = inc ? 0 : 1;
        } else if (closure->parsed()) {
            const auto file = parse_ci_set(read_file(file_path), index_labels(n));
            if (file.labels.size() != n) {
                throw Error(ErrorKind::NodeCountMismatch, "file declares " + std::to_string(file.labels.size()) +
                                                              " variables, n is " + std::to_string(n));
            }
            out << format_ci_set(semigraphoid_closure(file.statements, n), file.labels);
        } else if (refute->parsed()) {
            const auto spec = parse_refute_spec(file_path);
            if (!cards_text.empty()) budget.cardinalities = parse_cards(cards_text, spec.labels.size());
            const auto target = parse_ci(spec.target_lines.front(), spec.labels);
            const auto cx = spec.g1 ? refute_network_implication(*spec.g1, *spec.g2, target, budget)
                                    : refute_implication(spec.labels.size(), spec.given, spec.fds, target, budget,
                                                         spec.labels);
            if (!cx) {
                out << "inconclusive\n";
            } else {
                out << format_dist(cx->dist);
                std::istringstream report(format_report(cx->report));
                for (std::string line; std::getline(report, line);) out << "# " << line << '\n';
                code = 1;
            }
        } else if (reduce->parsed()) {
            const auto inst = groups_form(parse_instance(read_file(file_path)));
            const auto r = compile_two_networks(inst);
            fs::create_directories(out_dir);
            const std::string ext = dot ? ".dot" : ".dag";
            write_file(fs::path(out_dir) / ("network1" + ext), dag_output(r.network1, dot, "network1"));
            write_file(fs::path(out_dir) / ("network2" + ext), dag_output(r.network2, dot, "network2"));
            CiSet target;
            target.insert(r.target_ci);
            write_file(fs::path(out_dir) / "target.ci", format_ci_set(target, r.network1.labels()));
            out << "network1" << ext << ": " << r.network1.node_count() << " nodes, " << r.network1.edge_count()
                << " edges\n";
            out << "network2" << ext << ": " << r.network2.node_count() << " nodes, " << r.network2.edge_count()
                << " edges\n";
            out << "target.ci: " << format_ci(r.target_ci, r.network1.labels()) << '\n';
        } else if (witness->parsed()) {
            const auto any = parse_instance(read_file(file_path));
            const auto pv = parse_dist(read_file(dist_path));
            if (const auto* a = std::get_if<ImplicationAInstance>(&any)) {
                out << format_dist(implication_b_witness(pv, *a));
            } else {
                out << format_dist(trivial_witness(std::get<ImplicationInstance>(any), pv));
            }
        } else if (selftest->parsed()) {
            bool all = true;
            run_acceptance([&](const CriterionResult& r) {
                out << format_result(r) << std::endl;
                all = all && r.passed;
            });
            code = all ? 0 : 1;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return code;
}

}  // namespace bnci::cli
