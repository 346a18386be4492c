#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chasekit/chase.hpp"
#include "chasekit/classifier.hpp"
#include "chasekit/dchase.hpp"
#include "chasekit/parser.hpp"
#include "chasekit/printer.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;       // usage or parse error
constexpr int kExitChaseFailed = 2; // failure reported; the run itself worked
constexpr int kExitBudget = 3;      // budget exhausted / unknown verdicts

struct RunConfig {
    std::string input;
    std::uint64_t max_steps = 100000;  // 0 = unlimited
    std::uint32_t max_depth = 64;      // 0 = unlimited
    std::string format = "text";
    bool trace = false;
    bool parallel = false;
    std::uint64_t seed = 0;

    chasekit::ChaseBudget budget() const {
        chasekit::ChaseBudget b;
        if (max_steps > 0) b.max_steps = max_steps;
        if (max_depth > 0) b.max_depth = max_depth;
        return b;
    }
    bool unlimited() const { return max_steps == 0 || max_depth == 0; }
    bool json() const { return format == "json"; }

    ordered_json config_json(const std::string& command) const {
        ordered_json j;
        j["command"] = command;
        j["input"] = input;
        j["config"] = {{"max_steps", max_steps}, {"max_depth", max_depth},
                       {"format", format},       {"trace", trace},
                       {"parallel", parallel},   {"seed", seed}};
        return j;
    }
};

std::optional<chasekit::Program> load_program(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        return std::nullopt;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    chasekit::ParseResult parsed = chasekit::parse_program(buffer.str());
    if (!parsed.ok()) {
        std::cerr << path << ":" << parsed.error().to_string() << "\n";
        return std::nullopt;
    }
    return parsed.program();
}

// Refuses unlimited budgets unless termination is guaranteed.
bool interlock_ok(const RunConfig& cfg, const chasekit::Program& prog) {
    if (!cfg.unlimited()) return true;
    if (chasekit::is_weakly_acyclic(prog.dependencies)) return true;
    std::cerr << "error: unlimited budgets require a weakly-acyclic "
                 "dependency set; pass --max-steps N and --max-depth N\n";
    return false;
}

int run_validate(const RunConfig& cfg) {
    auto prog = load_program(cfg.input);
    if (!prog) return kExitUsage;
    if (auto err = chasekit::validate_program(*prog)) {
        std::cerr << "error: " << *err << "\n";
        return kExitUsage;
    }
    if (cfg.json()) {
        ordered_json j = cfg.config_json("validate");
        ordered_json preds = ordered_json::array();
        for (const auto& [name, arity] : prog->schema.predicates()) {
            preds.push_back({{"name", name}, {"arity", arity}});
        }
        j["result"] = {{"ok", true},
                       {"facts", prog->facts.size()},
                       {"dependencies", prog->dependencies.size()},
                       {"queries", prog->queries.size()},
                       {"predicates", std::move(preds)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "ok: " << prog->facts.size() << " facts, "
                  << prog->dependencies.size() << " dependencies, "
                  << prog->queries.size() << " queries\n";
        std::cout << "predicates:";
        for (const auto& [name, arity] : prog->schema.predicates()) {
            std::cout << " " << name << "/" << arity;
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int run_classify(const RunConfig& cfg) {
    auto prog = load_program(cfg.input);
    if (!prog) return kExitUsage;
    chasekit::FragmentReport report = chasekit::classify(prog->dependencies);
    if (cfg.json()) {
        ordered_json j = cfg.config_json("classify");
        j["result"] = ordered_json::parse(report.to_json());
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << report.to_text();
    }
    return kExitOk;
}

bool has_disjunction(const chasekit::Program& prog) {
    for (const chasekit::Dependency& d : prog.dependencies) {
        const auto* tgd = std::get_if<chasekit::Dtgd>(&d);
        if (tgd && !tgd->is_tgd()) return true;
    }
    return false;
}

unsigned worker_count(const RunConfig& cfg) {
    if (!cfg.parallel) return 1;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 1 ? hc : 2;
}

int run_chase(const RunConfig& cfg) {
    auto prog = load_program(cfg.input);
    if (!prog) return kExitUsage;
    if (!interlock_ok(cfg, *prog)) return kExitUsage;

    if (has_disjunction(*prog)) {
        chasekit::ChaseTree tree = chasekit::disjunctive_chase(
            prog->facts, prog->dependencies, cfg.budget(),
            chasekit::ApplicationOrder::Canonical, worker_count(cfg));
        std::size_t saturated = 0, failed = 0, open = 0;
        for (std::size_t id : tree.leaves()) {
            switch (tree.nodes[id].status) {
                case chasekit::ChaseTree::Status::Saturated: ++saturated; break;
                case chasekit::ChaseTree::Status::Failed: ++failed; break;
                default: ++open; break;
            }
        }
        if (cfg.json()) {
            ordered_json j = cfg.config_json("chase");
            j["result"] = {{"kind", "tree"},
                           {"steps", tree.steps},
                           {"saturated_leaves", saturated},
                           {"failed_leaves", failed},
                           {"open_leaves", open},
                           {"tree", ordered_json::parse(
                                        chasekit::export_tree_json(tree))}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "disjunctive chase: " << tree.steps << " steps, "
                      << saturated << " saturated, " << failed << " failed, "
                      << open << " open\n";
            std::cout << chasekit::export_tree_text(tree, true);
        }
        if (open > 0) return kExitBudget;
        if (saturated == 0 && failed > 0) return kExitChaseFailed;
        return kExitOk;
    }

    std::vector<chasekit::TraceEvent> trace;
    chasekit::ChaseOutcome outcome =
        chasekit::chase(prog->facts, prog->dependencies, cfg.budget(),
                        chasekit::ApplicationOrder::Canonical,
                        cfg.trace ? &trace : nullptr);
    const char* kind = outcome.success()
                           ? "success"
                           : (outcome.failure() ? "failure" : "budget_exhausted");
    if (cfg.json()) {
        ordered_json j = cfg.config_json("chase");
        ordered_json result;
        result["kind"] = "chase";
        result["outcome"] = kind;
        result["steps"] = outcome.steps();
        if (const chasekit::Instance* inst = outcome.instance()) {
            ordered_json atoms = ordered_json::array();
            for (const chasekit::Atom& a : *inst) {
                atoms.push_back(chasekit::to_text(a));
            }
            result["instance"] = std::move(atoms);
        }
        if (outcome.failure()) {
            const auto& f = std::get<chasekit::ChaseFailure>(outcome.value);
            result["violated"] = f.rule_label;
            result["detail"] = f.detail;
        }
        if (cfg.trace) {
            ordered_json lines = ordered_json::array();
            for (const chasekit::TraceEvent& e : trace) lines.push_back(e.line());
            result["trace"] = std::move(lines);
        }
        j["result"] = std::move(result);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "outcome: " << kind << "\n";
        std::cout << "steps: " << outcome.steps() << "\n";
        if (cfg.trace) {
            for (const chasekit::TraceEvent& e : trace) {
                std::cout << e.line() << "\n";
            }
        }
        if (outcome.failure()) {
            const auto& f = std::get<chasekit::ChaseFailure>(outcome.value);
            std::cout << "violated: " << f.rule_label << " (" << f.detail
                      << ")\n";
        }
        if (const chasekit::Instance* inst = outcome.instance()) {
            std::cout << chasekit::print_instance(*inst);
        }
    }
    if (outcome.failure()) return kExitChaseFailed;
    if (outcome.budget_exhausted()) return kExitBudget;
    return kExitOk;
}

int run_query(const RunConfig& cfg) {
    auto prog = load_program(cfg.input);
    if (!prog) return kExitUsage;
    if (!interlock_ok(cfg, *prog)) return kExitUsage;
    if (prog->queries.empty()) {
        std::cerr << "warning: no queries in " << cfg.input << "\n";
    }

    chasekit::ChaseTree tree = chasekit::disjunctive_chase(
        prog->facts, prog->dependencies, cfg.budget(),
        chasekit::ApplicationOrder::Canonical, worker_count(cfg));
    const bool unsat = tree.all_failed();

    bool any_unknown = false;
    ordered_json results = ordered_json::array();
    std::ostringstream text;
    for (const chasekit::ConjunctiveQuery& q : prog->queries) {
        ordered_json entry;
        entry["name"] = q.name;
        entry["arity"] = q.arity();
        if (q.is_boolean()) {
            chasekit::Certainty verdict = chasekit::certain_bcq(q, tree);
            const char* name = verdict == chasekit::Certainty::Entailed
                                   ? "Entailed"
                                   : (verdict == chasekit::Certainty::NotEntailed
                                          ? "NotEntailed"
                                          : "Unknown");
            any_unknown |= verdict == chasekit::Certainty::Unknown;
            entry["verdict"] = name;
            text << q.name << ": " << name << "\n";
        } else {
            chasekit::CertainAnswers ans = chasekit::certain_answers(q, tree);
            any_unknown |= ans.status == chasekit::AnswerStatus::LowerBoundUnknown;
            ordered_json tuples = ordered_json::array();
            text << q.name << ":";
            for (const auto& tuple : ans.tuples) {
                ordered_json row = ordered_json::array();
                text << " (";
                for (std::size_t i = 0; i < tuple.size(); ++i) {
                    row.push_back(tuple[i]);
                    text << (i ? ", " : "") << tuple[i];
                }
                text << ")";
                tuples.push_back(std::move(row));
            }
            const char* status = ans.status == chasekit::AnswerStatus::Exact
                                     ? "exact"
                                     : "lower_bound_unknown";
            entry["answers"] = std::move(tuples);
            entry["status"] = status;
            entry["unsatisfiable"] = ans.unsatisfiable;
            text << " [" << status << "]";
            if (ans.unsatisfiable) text << " [unsatisfiable theory]";
            text << "\n";
        }
        results.push_back(std::move(entry));
    }

    if (cfg.json()) {
        ordered_json j = cfg.config_json("query");
        j["result"] = {{"unsatisfiable", unsat},
                       {"queries", std::move(results)}};
        std::cout << j.dump(2) << "\n";
    } else {
        if (unsat) {
            std::cout << "theory unsatisfiable: every branch failed\n";
        }
        std::cout << text.str();
    }
    if (any_unknown) return kExitBudget;
    if (unsat) return kExitChaseFailed;
    return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool budgets) {
    sub->add_option("input", cfg.input, "program file")->required();
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed,
                    "seed echoed into structured output (used by the "
                    "randomized test harness)");
    if (budgets) {
        sub->add_option("--max-steps", cfg.max_steps,
                        "rule application budget, 0 = unlimited")
            ->capture_default_str();
        sub->add_option("--max-depth", cfg.max_depth,
                        "chase level budget, 0 = unlimited")
            ->capture_default_str();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "chasekit: chase-based reasoning over existential rules — "
        "validate, classify, chase, query"};
    app.require_subcommand(1);

    RunConfig cfg;
    CLI::App* validate = app.add_subcommand("validate", "parse and check a program");
    add_common(validate, cfg, false);
    CLI::App* classify =
        app.add_subcommand("classify", "decide fragment membership");
    add_common(classify, cfg, false);
    CLI::App* chase = app.add_subcommand("chase", "run the chase to saturation");
    add_common(chase, cfg, true);
    chase->add_flag("--trace", cfg.trace, "log every chase step");
    CLI::App* query =
        app.add_subcommand("query", "certain-answer query evaluation");
    add_common(query, cfg, true);
    query->add_flag("--parallel", cfg.parallel,
                    "expand branches concurrently (output no longer "
                    "deterministic under budget cuts)");
    chase->add_flag("--parallel", cfg.parallel,
                    "expand branches concurrently (output no longer "
                    "deterministic under budget cuts)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validate->parsed()) return run_validate(cfg);
        if (classify->parsed()) return run_classify(cfg);
        if (chase->parsed()) return run_chase(cfg);
        return run_query(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
