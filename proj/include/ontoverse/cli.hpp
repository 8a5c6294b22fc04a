#pragma once

// Command-line driver. Exit codes: 0 success / check passed, 2 usage or
// parse error, 3 check performed and negative, 4 enumeration cap exceeded.
// Results go to `out`, diagnostics to `err`.

#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ontoverse/error.hpp"
#include "ontoverse/formats.hpp"
#include "ontoverse/propositions.hpp"
#include "ontoverse/theory.hpp"
#include "ontoverse/version_graph.hpp"
#include "ontoverse/worldviews.hpp"

namespace ontoverse::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNegative = 3, kTooLarge = 4 };

namespace detail {

inline const RealDomain& require_states(const DomainFile& dom, const std::string& path) {
    if (!dom.real_domain) throw Error("domain file '" + path + "' defines no states of affairs");
    return *dom.real_domain;
}

inline int report_validation(const OntologyVersion& v, const PropositionSpace& space, std::ostream& out,
                             std::ostream& err) {
    const auto report = validate_version(v, space);
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    if (report.valid()) return kOk;
    out << v.id << ": not an ontology version about " << space.domain() << '\n';
    for (const auto& vi : report.violations) out << "  " << vi.code << ": " << vi.message << '\n';
    return kNegative;
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"ontoverse: annotated ontology versions, equivalence and correctness checks"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string ovf, ovf2, dom, manifest, target, output, lineage, mode = "strong", coverage = "full", new_id;
    std::vector<std::string> bpcs;
    std::size_t trials = 0;
    std::uint64_t seed = 0;

    auto* validate = app.add_subcommand("validate", "check that a file is an ontology version about a domain");
    auto* assert_cmd = app.add_subcommand("assert", "print the propositions asserted by a version");
    auto* mismatch = app.add_subcommand("mismatch", "detect a mismatch between annotations and theory");
    for (auto* sc : {validate, assert_cmd, mismatch}) {
        sc->add_option("ovf", ovf, "ontology version file")->required();
        sc->add_option("--domain", dom, "domain file")->required();
    }

    auto* equiv = app.add_subcommand("equiv", "compare two versions");
    equiv->add_option("--mode", mode, "strong, weak or stronger")
        ->check(CLI::IsMember({"strong", "weak", "stronger"}));
    equiv->add_option("ovf1", ovf, "first version")->required();
    equiv->add_option("ovf2", ovf2, "second version")->required();
    equiv->add_option("--domain", dom, "domain file")->required();

    auto* check_correct = app.add_subcommand("check-correct", "check a version against a real domain");
    check_correct->add_option("ovf", ovf, "ontology version file")->required();
    check_correct->add_option("--domain", dom, "domain file with states")->required();

    auto* check_conc = app.add_subcommand("check-conc", "check that BPCs are correct conceptualizations");
    check_conc->add_option("--domain", dom, "domain file with states")->required();
    check_conc->add_option("--bpc", bpcs, "behavioral profile file")->required();

    auto* check_spec = app.add_subcommand("check-spec", "check that a version correctly specifies BPCs");
    check_spec->add_option("ovf", ovf, "ontology version file")->required();
    check_spec->add_option("--domain", dom, "domain file")->required();
    check_spec->add_option("--bpc", bpcs, "behavioral profile files")->required();

    auto* theorem1 = app.add_subcommand("theorem1", "randomized check of the correctness-transfer theorem");
    theorem1->add_option("--trials", trials, "number of sampled instances")->required();
    theorem1->add_option("--seed", seed, "random seed")->required();
    theorem1->add_option("--coverage", coverage, "full or partial")->check(CLI::IsMember({"full", "partial"}));

    auto* translate = app.add_subcommand("translate", "translate a ClassBox version into propositional logic");
    translate->add_option("ovf", ovf, "ontology version file")->required();
    translate->add_option("--to", target, "target logic")->required()->check(CLI::IsMember({"proplogic"}));
    translate->add_option("-o,--output", output, "output .ovf file")->required();
    translate->add_option("--id", new_id, "id of the translated version");
    translate->add_option("--manifest", manifest, "graph manifest to record the translation edge in");

    auto* graph = app.add_subcommand("graph", "inspect a version graph manifest");
    graph->add_option("manifest", manifest, "graph manifest")->required();
    graph->add_option("--lineage", lineage, "print the derivation history of a version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        auto load_space = [&]() { return load_dom(dom); };

        if (validate->parsed()) {
            const auto d = load_space();
            const auto v = load_ovf(ovf);
            const int rc = detail::report_validation(v, d.space, out, err);
            if (rc == kOk) out << v.id << ": ontology version about " << d.space.domain() << '\n';
            return rc;
        }
        if (assert_cmd->parsed()) {
            const auto d = load_space();
            const auto v = load_ovf(ovf);
            if (const int rc = detail::report_validation(v, d.space, out, err); rc != kOk) return rc;
            const auto a = asserted_propositions(v, d.space);
            out << "annotations: " << format_set(a.from_annotations) << '\n';
            out << "theory: " << format_set(a.from_theory) << '\n';
            out << "asserted: " << format_set(a.all) << '\n';
            return kOk;
        }
        if (mismatch->parsed()) {
            const auto d = load_space();
            const auto v = load_ovf(ovf);
            if (const int rc = detail::report_validation(v, d.space, out, err); rc != kOk) return rc;
            const auto r = check_mismatch(v, d.space);
            if (!r.mismatch) {
                out << v.id << ": no mismatch\n";
                return kOk;
            }
            out << v.id << ": mismatch between annotations " << format_set(r.asserted.from_annotations)
                << " and theory " << format_set(r.asserted.from_theory) << '\n';
            for (const auto& c : r.conflicts) out << "  conflict " << format_set(c) << '\n';
            return kNegative;
        }
        if (equiv->parsed()) {
            const auto d = load_space();
            const auto v1 = load_ovf(ovf);
            const auto v2 = load_ovf(ovf2);
            require_same_domain(v1, v2);
            for (const auto* v : {&v1, &v2})
                if (const int rc = detail::report_validation(*v, d.space, out, err); rc != kOk) return rc;
            bool holds = false;
            if (mode == "strong") {
                holds = strongly_equivalent(v1, v2, d.space);
                out << v1.id << (holds ? " is" : " is not") << " strongly equivalent to " << v2.id << '\n';
            } else if (mode == "weak") {
                holds = weakly_equivalent_versions(v1, v2, d.space);
                out << v1.id << (holds ? " is" : " is not") << " weakly equivalent to " << v2.id << '\n';
            } else {
                const auto r = stronger_than(v1, v2, d.space);
                holds = r.holds;
                out << v1.id << (holds ? " is" : " is not") << " stronger than " << v2.id;
                if (r.witness) out << " (witness " << format_set(*r.witness) << ")";
                out << '\n';
            }
            return holds ? kOk : kNegative;
        }
        if (check_correct->parsed()) {
            const auto d = load_space();
            const auto& real = detail::require_states(d, dom);
            const auto v = load_ovf(ovf);
            if (const int rc = detail::report_validation(v, d.space, out, err); rc != kOk) return rc;
            const auto r = correct_ontology(v, real, d.space);
            if (r.ok) {
                out << v.id << ": correct ontology version of " << real.domain << '\n';
                return kOk;
            }
            out << v.id << ": not correct; " << *r.proposition << " does not hold in state " << *r.state << '\n';
            return kNegative;
        }
        if (check_conc->parsed()) {
            const auto d = load_space();
            const auto& real = detail::require_states(d, dom);
            int rc = kOk;
            for (const auto& path : bpcs) {
                const auto c = load_bpc(path);
                const auto r = correct_conceptualization(c, real, d.space);
                if (r.ok) {
                    out << c.id << ": correct conceptualization of " << real.domain << '\n';
                } else {
                    out << c.id << ": not correct; " << r.diagnosis << '\n';
                    rc = kNegative;
                }
            }
            return rc;
        }
        if (check_spec->parsed()) {
            const auto d = load_space();
            const auto v = load_ovf(ovf);
            if (const int rc = detail::report_validation(v, d.space, out, err); rc != kOk) return rc;
            std::vector<BPC> members;
            for (const auto& path : bpcs) members.push_back(load_bpc(path));
            const ConceptualizationSet cs(std::move(members));
            const auto r = correct_specification(v, cs, d.space);
            if (!r.ok) {
                out << v.id << ": not a correct specification; " << r.failure << '\n';
                return kNegative;
            }
            out << v.id << ": correct specification\n";
            for (const auto& [p, who] : r.witnesses) out << "  " << p << " vouched by " << who << '\n';
            return kOk;
        }
        if (theorem1->parsed()) {
            const auto report = verify_theorem1(trials, seed, coverage == "full" ? Coverage::Full : Coverage::Partial);
            out << report.to_text();
            return report.counterexamples.empty() ? kOk : kNegative;
        }
        if (translate->parsed()) {
            const auto v = load_ovf(ovf);
            const auto t = translate_logic(v, LogicInstance::proplogic(), new_id);
            {
                std::ofstream f(output, std::ios::binary);
                if (!f) throw Error("cannot write '" + output + "'");
                f << serialize_ovf(t);
            }
            if (!manifest.empty()) {
                auto g = load_manifest(manifest);
                record_translation(g, v.id, t.id, output);
                std::ofstream f(manifest, std::ios::binary);
                if (!f) throw Error("cannot write '" + manifest + "'");
                f << serialize_manifest(g);
            }
            out << "translated " << v.id << " to " << t.id << " (" << output << ")\n";
            return kOk;
        }
        if (graph->parsed()) {
            const auto g = load_manifest(manifest);
            if (!lineage.empty()) {
                for (const auto& id : g.lineage(lineage)) {
                    const auto& entry = g.versions().at(id);
                    out << id << " document=" << entry.document << " file=" << entry.file;
                    for (const auto& e : g.parents_of(id)) out << " <- " << e.parent << " (" << to_string(e.kind) << ")";
                    out << '\n';
                }
                return kOk;
            }
            for (const auto& doc : g.documents()) {
                out << doc << ':';
                for (const auto& id : g.realizations(doc)) out << ' ' << id;
                out << '\n';
            }
            return kOk;
        }
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kTooLarge;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace ontoverse::cli
