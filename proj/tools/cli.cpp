#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "partdet/error.hpp"
#include "partdet/repro.hpp"
#include "partdet/scenario.hpp"
#include "partdet/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

void write_json(const std::string& path, const nlohmann::json& j) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) partdet::fail("FileError", "cannot write " + path);
    out << j.dump(2) << "\n";
}

int cmd_repro(const std::string& item, const std::string& json_path) {
    auto results = partdet::run_repro(item);
    bool all_match = true;
    nlohmann::json report = nlohmann::json::array();
    for (const auto& r : results) {
        std::cout << "== " << r.item << " ==\n";
        for (const auto& line : r.lines) std::cout << line << "\n";
        for (const auto& v : r.verdicts) std::cout << v.summary() << "\n";
        std::cout << (r.matches_recorded ? "matches the recorded numbers"
                                         : "DOES NOT match the recorded numbers")
                  << "\n";
        all_match = all_match && r.matches_recorded;
        report.push_back(r.to_json());
    }
    write_json(json_path, report);
    return all_match ? kExitOk : kExitError;
}

int cmd_verify(partdet::ScenarioDoc doc, const std::string& json_path) {
    partdet::Verdict v = run_scenario_verify(doc);
    std::cout << v.summary() << "\n";
    write_json(json_path, v.to_json());
    switch (v.status) {
        case partdet::Status::Holds: return kExitOk;
        case partdet::Status::Violated: return kExitViolation;
        case partdet::Status::Inconclusive: break;
    }
    std::cerr << "inconclusive: margin falls between the decision bands\n";
    return kExitError;
}

int cmd_search(const partdet::ScenarioDoc& doc, const std::string& json_path) {
    partdet::SearchScenario sc = scenario_to_search(doc);
    partdet::SearchReport report = run_search(sc);
    std::cout << "scenario " << sc.name << ": " << report.instances << " instances, "
              << report.violations.size() << " violation(s)"
              << (report.budget_exhausted ? ", budget exhausted (partial)" : "") << "\n";
    if (report.has_min) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%+.9f", report.min_margin_bits);
        std::cout << "smallest margin " << buf << " bits at trial "
                  << report.min_margin_instance.at("trial") << "\n";
    }
    std::size_t shown = 0;
    for (const auto& v : report.violations) {
        if (shown == 10) {
            std::cout << "... " << (report.violations.size() - shown) << " more\n";
            break;
        }
        std::cout << "trial " << v.trial << ": " << v.verdict.summary() << "  "
                  << v.instance.dump() << "\n";
        ++shown;
    }
    write_json(json_path, report.to_json());
    return report.violations.empty() ? kExitOk : kExitViolation;
}

int cmd_info(const std::vector<std::string>& args) {
    std::string name;
    if (args.size() == 2) {
        if (args[0] == "cyclic")
            name = "Z" + args[1];
        else if (args[0] == "dihedral")
            name = "D" + args[1];
        else
            partdet::fail("UnknownGroup", "usage: info <name> | info cyclic|dihedral <n>");
    } else if (args.size() == 1) {
        name = args[0] == "quaternion" ? "Q8" : args[0];
    } else {
        partdet::fail("UnknownGroup", "usage: info <name> | info cyclic|dihedral <n>");
    }
    partdet::FiniteGroup g = partdet::parse_structure_name(name);
    std::cout << g.name() << ": order " << g.order() << ", "
              << (g.is_abelian() ? "abelian" : "non-abelian") << "\n"
              << g.to_table_string();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification and counterexample search for functions determined "
                 "by set partitions"};
    app.require_subcommand(1);

    std::string json_path;
    std::uint64_t seed = 0;
    int threads = 0;
    std::uint64_t budget = 0;
    app.add_option("--json", json_path, "write the full JSON report to this path");
    auto* seed_opt = app.add_option("--seed", seed, "override the scenario seed");
    auto* threads_opt = app.add_option("--threads", threads, "cap worker threads");
    auto* budget_opt = app.add_option("--budget", budget, "cap enumeration work");

    auto* repro = app.add_subcommand("repro", "rerun a recorded result (or 'all')");
    std::string item;
    repro->add_option("item", item, "item name")->required();

    auto* verify = app.add_subcommand("verify", "check one statement on a described instance");
    std::string verify_path;
    verify->add_option("scenario", verify_path, "scenario file")->required();

    auto* search = app.add_subcommand("search", "scan an instance space for violations");
    std::string search_path;
    search->add_option("scenario", search_path, "scenario file")->required();

    auto* info = app.add_subcommand("info", "describe a built-in structure");
    std::vector<std::string> info_args;
    info->add_option("structure", info_args, "name, or kind plus size")->expected(1, 2);

    // Let --json/--seed/--threads/--budget appear on either side of the
    // subcommand name.
    for (auto* sub : {repro, verify, search, info}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (repro->parsed()) return cmd_repro(item, json_path);
        if (info->parsed()) return cmd_info(info_args);

        const std::string& path = verify->parsed() ? verify_path : search_path;
        partdet::ScenarioDoc doc = partdet::load_scenario_file(path);
        if (seed_opt->count()) doc.seed = seed;
        if (threads_opt->count()) doc.threads = threads;
        if (budget_opt->count()) doc.budget = budget;
        if (verify->parsed()) return cmd_verify(std::move(doc), json_path);
        return cmd_search(doc, json_path);
    } catch (const partdet::Error& e) {
        std::cerr << "error [" << e.code() << "] " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error " << e.what() << "\n";
        return kExitError;
    }
}
