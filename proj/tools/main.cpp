// Batch front end: parse instance files, dispatch to library operations,
// print one deterministic JSON report per invocation on standard output.
// Exit codes: 0 computed (any verdict), 2 bad input, 3 budget exceeded,
// 4 internal assertion (a theorem-backed step failed).

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "homlab/choice.hpp"
#include "homlab/cycles.hpp"
#include "homlab/duality.hpp"
#include "homlab/experiments.hpp"
#include "homlab/filters.hpp"
#include "homlab/gadgets.hpp"
#include "homlab/json_io.hpp"
#include "homlab/power.hpp"
#include "homlab/solver.hpp"

using nlohmann::json;
using namespace homlab;

namespace {

struct Budgets {
    long long max_power_size = 100000;
    int max_subgroup_degree = 5;
    int max_pset_universe = 12;
};

int exit_code_for(errc kind) {
    switch (kind) {
        case errc::budget_exceeded:
            return 3;
        case errc::extraction_failure:
        case errc::census_failure:
        case errc::not_a_partial_order:
        case errc::validation_failure:
            return 4;
        default:
            return 2;
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    parts.push_back(current);
    return parts;
}

std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> indices;
    if (text.empty()) return indices;
    for (const auto& part : split(text, ',')) {
        try {
            size_t used = 0;
            const int value = std::stoi(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            indices.push_back(value);
        } catch (const std::exception&) {
            fail(errc::parse_error, "bad index \"" + part + "\" in \"" + text + "\"");
        }
    }
    return indices;
}

std::vector<std::vector<std::string>> parse_sets(const std::string& text) {
    std::vector<std::vector<std::string>> sets;
    for (const auto& group : split(text, ';')) {
        std::vector<std::string> elements;
        for (const auto& e : split(group, ','))
            if (!e.empty()) elements.push_back(e);
        if (!elements.empty()) sets.push_back(std::move(elements));
    }
    return sets;
}

FiniteFilter filter_from_flags(int index_size, const std::string& base_text,
                               const std::string& gens_text) {
    const IndexSet index_set{index_size};
    if (!base_text.empty() && !gens_text.empty())
        fail(errc::parse_error, "give either --filter-base or --filter-gens, not both");
    if (!gens_text.empty()) {
        std::vector<std::vector<int>> generators;
        for (const auto& group : split(gens_text, ';'))
            generators.push_back(parse_index_list(group));
        return filter_from_generators(index_set, generators);
    }
    if (!base_text.empty()) return filter_from_base(index_set, parse_index_list(base_text));
    return filter_from_base(index_set, full_index_subset(index_set));
}

json filter_to_json(const FiniteFilter& f) {
    return json{{"index_size", f.index_set.size}, {"base", f.base}};
}

json report_cases(const ExperimentReport& r) {
    json cases = json::array();
    for (const auto& c : r.cases)
        cases.push_back(json{{"label", c.label}, {"passed", c.passed}, {"detail", c.detail}});
    return json{{"passed", r.passed}, {"cases", std::move(cases)}};
}

Budgets load_config(const std::string& path) {
    Budgets budgets;
    if (path.empty()) return budgets;
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open config \"" + path + "\"");
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos)
            fail(errc::parse_error, "config line without '=': " + line);
        auto trim = [](std::string s) {
            const auto from = s.find_first_not_of(" \t\r");
            const auto to = s.find_last_not_of(" \t\r");
            return from == std::string::npos ? std::string() : s.substr(from, to - from + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        long long number = 0;
        try {
            number = std::stoll(value);
        } catch (const std::exception&) {
            fail(errc::parse_error, "config value for " + key + " is not a number");
        }
        if (key == "max_power_size")
            budgets.max_power_size = number;
        else if (key == "max_subgroup_degree")
            budgets.max_subgroup_degree = static_cast<int>(number);
        else if (key == "max_pset_universe")
            budgets.max_pset_universe = static_cast<int>(number);
        else
            fail(errc::parse_error, "unknown config key \"" + key + "\"");
    }
    return budgets;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homomorphism laboratory for finite relational structures"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key=value file overriding budgets");

    Budgets budgets;
    std::string command;
    // handlers fill (inputs, result, witness); assembled into one report below
    std::function<void(json&, json&, json&)> run;

    std::string source_path, target_path, hom_path, out_path;
    std::string filter_base_text, filter_gens_text, sets_text, set_text, mark_x, mark_y;
    int index_size = 2, n_value = 3, p_value = 2, q_value = 3, m_value = 2, nn_value = 2;
    bool want_quotient = false, check_clique = false;

    auto* hom_cmd = app.add_subcommand("hom", "decide source -> target and print a witness");
    hom_cmd->add_option("source", source_path, "source structure file")->required();
    hom_cmd->add_option("target", target_path, "target structure file")->required();
    hom_cmd->callback([&] {
        command = "hom";
        run = [&](json& inputs, json& result, json& witness) {
            inputs = {{"source", source_path}, {"target", target_path}};
            const auto found = hom_exists(load_structure(source_path), load_structure(target_path));
            result = {{"exists", found.has_value()}};
            if (found) witness = assignment_to_json(found->assignment);
        };
    });

    auto* ac_cmd = app.add_subcommand("ac", "arc-consistency fixpoint of source against target");
    ac_cmd->add_option("source", source_path, "source structure file")->required();
    ac_cmd->add_option("target", target_path, "target structure file")->required();
    ac_cmd->callback([&] {
        command = "ac";
        run = [&](json& inputs, json& result, json& witness) {
            inputs = {{"source", source_path}, {"target", target_path}};
            const DomainState state =
                arc_consistency(load_structure(source_path), load_structure(target_path));
            bool empty = false;
            json domains = json::object();
            for (const auto& [element, values] : state.domains) {
                empty = empty || values.empty();
                domains[element] = values;
            }
            result = {{"empty", empty}, {"domains", std::move(domains)}};
            (void)witness;
        };
    });

    auto* width_cmd = app.add_subcommand("width1", "width-one verdict via the power-set structure");
    width_cmd->add_option("target", target_path, "structure file")->required();
    width_cmd->callback([&] {
        command = "width1";
        run = [&](json& inputs, json& result, json& witness) {
            inputs = {{"target", target_path}};
            const WidthOneVerdict verdict =
                width_one(load_structure(target_path), budgets.max_pset_universe);
            result = {{"width_one", verdict.width_one}};
            if (verdict.witness) witness = assignment_to_json(verdict.witness->assignment);
        };
    });

    auto* power_cmd = app.add_subcommand("power", "materialize a tolerant power");
    power_cmd->add_option("target", target_path, "base structure file")->required();
    power_cmd->add_option("--index-size", index_size, "size of the index set")->required();
    power_cmd->add_option("--filter-base", filter_base_text, "comma list, e.g. 0,2");
    power_cmd->add_option("--filter-gens", filter_gens_text, "semicolon groups, e.g. 0,1;1,2");
    power_cmd->add_flag("--quotient", want_quotient, "also build the agreement quotient");
    power_cmd->add_option("--out", out_path, "write the built structure to this file");
    power_cmd->callback([&] {
        command = "power";
        run = [&](json& inputs, json& result, json& witness) {
            const FiniteFilter f =
                filter_from_flags(index_size, filter_base_text, filter_gens_text);
            inputs = {{"target", target_path},
                      {"index_size", index_size},
                      {"filter", filter_to_json(f)},
                      {"quotient", want_quotient}};
            const TolerantPower power =
                tolerant_power(load_structure(target_path), f, budgets.max_power_size);
            json sizes = json::object();
            for (const auto& [name, tuples] : power.carrier.relations)
                sizes[name] = tuples.size();
            result = {{"carrier_size", power.carrier.universe.size()},
                      {"relation_sizes", std::move(sizes)}};
            const Structure* artifact = &power.carrier;
            AgreementQuotient quotient;
            if (want_quotient) {
                quotient = quotient_by_agreement(power);
                result["classes"] = quotient.quotient.universe.size();
                artifact = &quotient.quotient;
            }
            if (!out_path.empty()) {
                save_structure(*artifact, out_path);
                result["out"] = out_path;
            }
            (void)witness;
        };
    });

    auto* ppdef_cmd = app.add_subcommand("ppdef", "relation defined by a two-marked gadget");
    ppdef_cmd->add_option("source", source_path, "gadget structure file")->required();
    ppdef_cmd->add_option("target", target_path, "target structure file")->required();
    ppdef_cmd->add_option("--x", mark_x, "first marked element")->required();
    ppdef_cmd->add_option("--y", mark_y, "second marked element")->required();
    ppdef_cmd->add_flag("--check-clique", check_clique, "compare against inequality");
    ppdef_cmd->callback([&] {
        command = "ppdef";
        run = [&](json& inputs, json& result, json& witness) {
            inputs = {{"source", source_path},
                      {"target", target_path},
                      {"x", mark_x},
                      {"y", mark_y}};
            const Gadget gadget{load_structure(source_path), mark_x, mark_y};
            if (gadget.structure.position(mark_x) < 0 || gadget.structure.position(mark_y) < 0)
                fail(errc::unknown_element, "marked elements must lie in the gadget universe");
            const Structure a = load_structure(target_path);
            json pairs = json::array();
            for (const auto& [first, second] : pp_relation(gadget, a))
                pairs.push_back(json::array({first, second}));
            result = {{"pairs", std::move(pairs)}};
            if (check_clique) result["defines_clique"] = defines_clique(gadget, a);
            (void)witness;
        };
    });

    auto* extract_cmd =
        app.add_subcommand("extract", "read an ultrafilter off a clique-power coloring");
    extract_cmd->add_option("--n", n_value, "clique size (at least 3)")->required();
    extract_cmd->add_option("--index-size", index_size, "size of the index set")->required();
    extract_cmd->add_option("--filter-base", filter_base_text, "comma list")->required();
    extract_cmd->add_option("--hom", hom_path, "assignment file for the coloring")->required();
    extract_cmd->callback([&] {
        command = "extract";
        run = [&](json& inputs, json& result, json& witness) {
            const FiniteFilter f = filter_from_flags(index_size, filter_base_text, "");
            inputs = {{"n", n_value},
                      {"index_size", index_size},
                      {"filter", filter_to_json(f)},
                      {"hom", hom_path}};
            const Structure clique = complete_graph(n_value);
            const TolerantPower power = tolerant_power(clique, f, budgets.max_power_size);
            const Homomorphism phi{power.carrier, clique, load_assignment(hom_path)};
            const ExtractionWitness w = extract_ultrafilter(power, phi);
            result = {{"checks",
                       {{"contains_filter", w.checks.contains_filter},
                        {"complement_dichotomy", w.checks.complement_dichotomy},
                        {"upward_closure", w.checks.upward_closure},
                        {"intersection_closure", w.checks.intersection_closure}}},
                      {"normalization", w.normalization}};
            witness = filter_to_json(w.extracted);
        };
    });

    auto* cycles_cmd = app.add_subcommand("cycles", "directed-cycle constructions");
    cycles_cmd->require_subcommand(1);

    auto* crt_cmd = cycles_cmd->add_subcommand("crt", "remainder isomorphism onto the product");
    crt_cmd->add_option("--p", p_value, "first factor")->required();
    crt_cmd->add_option("--q", q_value, "second factor")->required();
    crt_cmd->callback([&] {
        command = "cycles crt";
        run = [&](json& inputs, json& result, json& witness) {
            inputs = {{"p", p_value}, {"q", q_value}};
            const Homomorphism iso = crt_isomorphism(p_value, q_value);
            result = {{"valid", true}, {"size", p_value * q_value}};
            witness = assignment_to_json(iso.assignment);
        };
    });

    auto* census_cmd = cycles_cmd->add_subcommand("census", "components of a cycle-power quotient");
    census_cmd->add_option("--n", n_value, "cycle length")->required();
    census_cmd->add_option("--index-size", index_size, "size of the index set")->required();
    census_cmd->add_option("--filter-base", filter_base_text, "comma list")->required();
    census_cmd->callback([&] {
        command = "cycles census";
        run = [&](json& inputs, json& result, json& witness) {
            const FiniteFilter f = filter_from_flags(index_size, filter_base_text, "");
            inputs = {{"n", n_value}, {"index_size", index_size}, {"filter", filter_to_json(f)}};
            const TolerantPower power =
                tolerant_power(directed_cycle(n_value).structure, f, budgets.max_power_size);
            const ComponentCensus census = component_census(quotient_by_agreement(power));
            result = {{"components", census.count}};
            witness = json{{"components", census.components}};
        };
    });

    auto* kw_cmd = cycles_cmd->add_subcommand("kw", "distinguished subsets from a choice instance");
    kw_cmd->add_option("--p", p_value, "set size (prime)")->required();
    kw_cmd->add_option("--sets", sets_text, "family, e.g. \"a,b;c,d\"")->required();
    kw_cmd->callback([&] {
        command = "cycles kw";
        run = [&](json& inputs, json& result, json& witness) {
            inputs = {{"p", p_value}, {"sets", sets_text}};
            const ChoiceInstance inst = choice_filter(parse_sets(sets_text), budgets.max_power_size);
            if (inst.p != p_value)
                fail(errc::parse_error, "--p disagrees with the size of the given sets");
            // deterministic coloring: evaluation at the least ultrafilter index
            const int at = extend_to_ultrafilter(inst.filter).front().base.front();
            const DistinguishedSubsets d = distinguished_subset(
                inst, [at](const std::vector<int>& digits) { return digits[at]; });
            result = {{"subsets", d.subsets}};
            witness = json{{"counts", d.counts}, {"evaluation_index", at}};
        };
    });

    auto* order_cmd = cycles_cmd->add_subcommand("orderhom", "order-extension coloring");
    order_cmd->add_option("--index-size", index_size, "size of the index set")->required();
    order_cmd->add_option("--filter-base", filter_base_text, "comma list")->required();
    order_cmd->callback([&] {
        command = "cycles orderhom";
        run = [&](json& inputs, json& result, json& witness) {
            const FiniteFilter f = filter_from_flags(index_size, filter_base_text, "");
            inputs = {{"index_size", index_size}, {"filter", filter_to_json(f)}};
            const OrderExtension oe = order_structure_hom(f, budgets.max_power_size);
            result = {{"classes", oe.quotient.quotient.universe.size()}, {"valid", true}};
            witness = json{{"linear_order", oe.linear_order},
                           {"assignment", assignment_to_json(oe.hom.assignment)["assignment"]}};
        };
    });

    auto* choice_cmd = app.add_subcommand("choice", "dependency criteria for choice axioms");
    choice_cmd->require_subcommand(1);

    auto* gauntt_cmd = choice_cmd->add_subcommand("gauntt", "group-theoretic criterion");
    gauntt_cmd->add_option("--m", m_value, "symmetric group degree")->required();
    gauntt_cmd->add_option("--set", set_text, "target sums, e.g. 2,3")->required();
    gauntt_cmd->callback([&] {
        command = "choice gauntt";
        run = [&](json& inputs, json& result, json& witness) {
            const auto indices = parse_index_list(set_text);
            inputs = {{"m", m_value}, {"set", indices}};
            const std::set<int> sums(indices.begin(), indices.end());
            result = {{"holds", gauntt_condition(m_value, sums, budgets.max_subgroup_degree)}};
            (void)witness;
        };
    });

    auto* prime_cmd = choice_cmd->add_subcommand("primesum", "prime partition criterion");
    prime_cmd->add_option("--m", m_value, "sum to decompose")->required();
    prime_cmd->add_option("--n", nn_value, "prime threshold")->required();
    prime_cmd->callback([&] {
        command = "choice primesum";
        run = [&](json& inputs, json& result, json& witness) {
            inputs = {{"m", m_value}, {"n", nn_value}};
            result = {{"holds", prime_sum_criterion(m_value, nn_value)}};
            (void)witness;
        };
    });

    auto* exp_cmd = app.add_subcommand("experiment", "scripted end-to-end compositions");
    exp_cmd->require_subcommand(1);

    auto* lauchli_cmd = exp_cmd->add_subcommand("lauchli-roundtrip",
                                                "colorings of clique powers vs ultrafilters");
    lauchli_cmd->add_option("--index-size", index_size, "index set size (default 2)");
    lauchli_cmd->callback([&] {
        command = "experiment lauchli-roundtrip";
        run = [&](json& inputs, json& result, json& witness) {
            inputs = {{"index_size", index_size}};
            result = report_cases(lauchli_roundtrip(index_size));
            (void)witness;
        };
    });

    auto* comft_cmd = exp_cmd->add_subcommand("com-ft-roundtrip", "tolerant power structure laws");
    comft_cmd->callback([&] {
        command = "experiment com-ft-roundtrip";
        run = [&](json& inputs, json& result, json& witness) {
            inputs = json::object();
            result = report_cases(com_ft_roundtrip());
            (void)witness;
        };
    });

    auto* pplift_cmd = exp_cmd->add_subcommand("pp-lift", "gadget lift of cycle-power colorings");
    pplift_cmd->callback([&] {
        command = "experiment pp-lift";
        run = [&](json& inputs, json& result, json& witness) {
            inputs = json::object();
            result = report_cases(pp_lift());
            (void)witness;
        };
    });

    auto* pk_cmd = exp_cmd->add_subcommand("pk-induction", "prime-power induction step");
    pk_cmd->callback([&] {
        command = "experiment pk-induction";
        run = [&](json& inputs, json& result, json& witness) {
            inputs = json::object();
            result = report_cases(pk_induction());
            (void)witness;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        budgets = load_config(config_path);
        json inputs = json::object(), result = json::object(), witness;
        run(inputs, result, witness);
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        const json report = {{"command", command},
                             {"inputs", std::move(inputs)},
                             {"result", std::move(result)},
                             {"witness", std::move(witness)},
                             {"elapsed_ms", elapsed.count()}};
        std::cout << report.dump(2) << "\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 4;
    }
}
