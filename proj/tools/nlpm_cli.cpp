// Command-line front door: property campaigns, non-additive integrals,
// operator means, and the replication ledger.  JSON on stdout (sorted keys),
// diagnostics on stderr.  Exit codes: 0 pass/match, 2 property fail, 1
// usage or I/O error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "nlpm/calculus.hpp"
#include "nlpm/capacity.hpp"
#include "nlpm/checkers.hpp"
#include "nlpm/json_io.hpp"
#include "nlpm/means.hpp"
#include "nlpm/replication.hpp"

using namespace nlpm;
using nlohmann::json;

namespace {

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int exit_code_for(Verdict v) { return v == Verdict::pass ? 0 : 2; }

int cmd_check_map(const std::string& config_path, std::string map_name, std::string property,
                  int dim, long trials, std::uint64_t seed, std::string contraction_class,
                  bool serial) {
    if (!config_path.empty()) {
        const json cfg = load_json_file(config_path);
        map_name = cfg.at("map").get<std::string>();
        property = cfg.at("property").get<std::string>();
        dim = cfg.at("dim").get<int>();
        if (cfg.contains("trials")) trials = cfg.at("trials").get<long>();
        if (cfg.contains("seed")) seed = cfg.at("seed").get<std::uint64_t>();
        if (cfg.contains("contraction_class"))
            contraction_class = cfg.at("contraction_class").get<std::string>();
    }
    if (map_name.empty() || property.empty())
        throw Error("check-map needs --map and --property (or --config)");

    const MapSpec m = make_map(map_name, dim);
    CheckOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    opt.exec = serial ? Exec::serial : Exec::parallel;
    if (contraction_class == "general")
        opt.contraction_class = ContractionClass::general;
    else if (contraction_class != "positive")
        throw Error("contraction class must be 'positive' or 'general'");

    std::cerr << "seed = " << seed << "\n";
    if (property == "boundedly_positive_type") {
        const auto [k, report] = check_boundedly_positive_type(m, opt);
        std::cerr << "K_estimate = " << k << "\n";
        print_json(report_to_json(report));
        return exit_code_for(report.verdict);
    }
    const PropertyReport report = run_property(m, property, opt);
    print_json(report_to_json(report));
    return exit_code_for(report.verdict);
}

int cmd_integrate(const std::string& kind, const std::string& capacity_path,
                  const std::string& matrix_path, const std::string& interaction, double bound) {
    const json cap_json = load_json_file(capacity_path);
    const HermMatrix a = herm_from_json(load_json_file(matrix_path));

    if (kind == "sugeno") {
        if (is_operator_capacity_json(cap_json))
            throw Error("sugeno integration takes a scalar capacity");
        print_json(json(sugeno_matrix(capacity_from_json(cap_json), a)));
        return 0;
    }
    if (kind == "choquet") {
        if (is_operator_capacity_json(cap_json))
            print_json(matrix_to_json(choquet_matrix_operator(opcapacity_from_json(cap_json), a)));
        else
            print_json(json(choquet_matrix(capacity_from_json(cap_json), a)));
        return 0;
    }
    if (kind == "inclexcl") {
        const InteractionOperator op =
            interaction == "product" ? interaction_product() : interaction_min();
        if (interaction != "min" && interaction != "product")
            throw Error("interaction must be 'min' or 'product'");
        const double k = bound > 0.0 ? bound : eig(a).lambda_max();
        const int n = is_operator_capacity_json(cap_json) ? opcapacity_from_json(cap_json).n()
                                                          : capacity_from_json(cap_json).n();
        if (!interaction_monotone_sampled(op, n, k, 50, 0))
            std::cerr << "warning: interaction kernel is not monotone on [0, K]; the integral "
                         "need not be order preserving\n";
        if (is_operator_capacity_json(cap_json))
            print_json(matrix_to_json(
                inclusion_exclusion_matrix(opcapacity_from_json(cap_json), a, op, k)));
        else
            print_json(json(inclusion_exclusion_matrix(capacity_from_json(cap_json), a, op, k)));
        return 0;
    }
    throw Error("unknown integral kind '" + kind + "'");
}

int cmd_mean(const std::string& function_path, const std::string& a_path,
             const std::string& b_path, double epsilon_shift) {
    const ScalarFunctionSpec f = function_from_json(load_json_file(function_path));
    const MeanSpec m = make_mean(f.name, f);
    const HermMatrix a = herm_from_json(load_json_file(a_path));
    const HermMatrix b = herm_from_json(load_json_file(b_path));
    print_json(matrix_to_json(mean_eval(m, a, b, Tolerance{}, epsilon_shift)));
    return 0;
}

int cmd_replicate(std::uint64_t seed, const std::string& out_path, bool serial) {
    std::cerr << "seed = " << seed << "\n";
    const Ledger ledger = run_all(seed, serial ? Exec::serial : Exec::parallel);
    const json j = ledger_to_json(ledger);
    print_json(j);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write '" + out_path + "'");
        out << j.dump(2) << "\n";
    }
    return ledger.all_matched() ? 0 : 2;
}

int cmd_list_maps() {
    json out = json::array();
    for (const std::string& name : builtin_map_names()) {
        const MapSpec m = make_map(name, name == "exp_scalar" ? 1 : 2);
        json entry;
        entry["name"] = m.name;
        entry["kind"] = m.kind == MapKind::cone_map ? "cone_map" : "algebra_map";
        entry["expected_profile"] = m.expected_profile;
        if (!m.doc.empty()) entry["doc"] = m.doc;
        out.push_back(entry);
    }
    print_json(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-linear positive map toolkit"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check-map", "run a property campaign against a builtin map");
    std::string cfg_path, map_name, property, contraction_class = "positive";
    int dim = 3;
    long trials = 500;
    std::uint64_t seed = 0;
    bool serial = false;
    check->add_option("--config", cfg_path, "campaign config JSON (overrides other flags)");
    check->add_option("--map", map_name, "builtin map name (see list-maps)");
    check->add_option("--property", property,
                      "monotone|supercongruent|concave|normal|positive_type|"
                      "boundedly_positive_type|positive_definite");
    check->add_option("--dim", dim, "matrix dimension")->check(CLI::PositiveNumber);
    check->add_option("--trials", trials, "random trials after the battery")
        ->check(CLI::NonNegativeNumber);
    check->add_option("--seed", seed, "campaign seed");
    check->add_option("--contraction-class", contraction_class, "positive|general");
    check->add_flag("--serial", serial, "use the serial reference evaluator");

    auto* integrate = app.add_subcommand("integrate", "evaluate a non-additive matrix integral");
    std::string kind, capacity_path, matrix_path, interaction = "min";
    double bound = 0.0;
    integrate->add_option("--kind", kind, "choquet|sugeno|inclexcl")->required();
    integrate->add_option("--capacity", capacity_path, "capacity JSON file")->required();
    integrate->add_option("--matrix", matrix_path, "matrix JSON file")->required();
    integrate->add_option("--interaction", interaction, "min|product (inclexcl only)");
    integrate->add_option("--bound", bound, "spectral bound K (default: lambda_max)");

    auto* mean = app.add_subcommand("mean", "operator mean from a representing function");
    std::string function_path, a_path, b_path;
    double epsilon_shift = 0.0;
    mean->add_option("--function", function_path, "function spec JSON")->required();
    mean->add_option("a", a_path, "left matrix JSON")->required();
    mean->add_option("b", b_path, "right matrix JSON (must be invertible)")->required();
    mean->add_option("--epsilon-shift", epsilon_shift,
                     "diagnostic shift: mean of (a+eps, b+eps) instead of a hard error");

    auto* replicate = app.add_subcommand("replicate-paper",
                                         "replay the catalogue of worked examples and "
                                         "counterexamples; exit 0 iff all match");
    std::uint64_t rep_seed = 0;
    std::string rep_out;
    bool rep_serial = false;
    replicate->add_option("--seed", rep_seed, "ledger seed");
    replicate->add_option("--json", rep_out, "also write the ledger to this file");
    replicate->add_flag("--serial", rep_serial, "use the serial reference evaluator");

    auto* list = app.add_subcommand("list-maps", "print builtin maps and expected profiles");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed())
            return cmd_check_map(cfg_path, map_name, property, dim, trials, seed,
                                 contraction_class, serial);
        if (integrate->parsed())
            return cmd_integrate(kind, capacity_path, matrix_path, interaction, bound);
        if (mean->parsed()) return cmd_mean(function_path, a_path, b_path, epsilon_shift);
        if (replicate->parsed()) return cmd_replicate(rep_seed, rep_out, rep_serial);
        if (list->parsed()) return cmd_list_maps();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
