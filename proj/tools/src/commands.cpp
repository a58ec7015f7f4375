#include "pba_cli/cli.hpp"
#include "pba_cli/examples.hpp"
#include "pba_cli/json_io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace pba::cli {

namespace {

struct Options {
    std::size_t limit = 0;
    std::string file;
    std::string file2;
    std::string method = "both";
    std::string mode = "otimes";
    std::optional<std::size_t> depth;
    bool trace = false;
    bool via_extension = false;
    std::string examples_action;
    std::string example_name;
};

struct Reply {
    int code = holds;
    Json json;
    std::string summary;
};

/// Converts errors raised while building core objects from a document into
/// InputError pointing at `field`.
template <class F>
auto guarded(const Document& doc, const std::string& field, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const SizeLimitExceeded&) {
        throw;
    } catch (const InvalidAlgebra& e) {
        doc.fail(field, e.what());
    } catch (const GluingCollapse& e) {
        doc.fail(field, e.what());
    } catch (const MalformedTable& e) {
        doc.fail(field, e.what());
    } catch (const PreconditionError& e) {
        doc.fail(field, e.what());
    }
}

std::size_t bx_limit(const Options& o) { return o.limit ? o.limit : kDefaultAlgebraLimit; }

void check_size(const FinitePBA& A, const Options& o) {
    if (o.limit && A.size() > o.limit) {
        throw SizeLimitExceeded("algebra has " + std::to_string(A.size()) + " elements, limit " + std::to_string(o.limit));
    }
}

/// A pBA document, or a scenario standing for its event algebra.
FinitePBA load_algebra(const Document& doc, const Options& o) {
    DocKind k = kind_of(doc);
    FinitePBA A = guarded(doc, "", [&] {
        if (k == DocKind::pba) return parse_pba(doc, doc.json, "");
        if (k == DocKind::scenario) return build_BX(parse_scenario(doc, doc.json, ""), bx_limit(o)).algebra;
        doc.fail("", "expected a pBA or scenario document, got " + kind_name(k));
    });
    check_size(A, o);
    return A;
}

EmpiricalModel load_model(const Document& doc) {
    EmpiricalModel m = guarded(doc, "", [&] { return parse_model(doc, doc.json, ""); });
    ModelReport r = validate_model(m);
    if (!r.ok()) doc.fail("/distributions", r.violations.front().kind + ": " + r.violations.front().detail);
    return m;
}

StateDocument load_state(const Document& doc, const Options& o) {
    StateDocument s = guarded(doc, "", [&] { return parse_state(doc, doc.json, "", bx_limit(o)); });
    check_size(s.algebra, o);
    StateReport r = is_state(s.algebra, s.values);
    if (!r.ok()) doc.fail("/values", r.violations.front().axiom + ": " + r.violations.front().detail);
    return s;
}

Json violation_json(const FinitePBA* A, const Violation& v) {
    Json j;
    j["axiom"] = v.axiom;
    j["witness"] = v.witness;
    if (A) j["labels"] = labels_of(*A, v.witness);
    j["detail"] = v.detail;
    return j;
}

Json true_elements(const FinitePBA& A, const ElementMap& h) {
    std::vector<ElementId> ids;
    for (ElementId e = 0; e < A.size(); ++e) {
        if (h[e] == two().one()) ids.push_back(e);
    }
    return labels_of(A, ids);
}

std::vector<std::string> context_names(const Scenario& s, const Context& c) {
    std::vector<std::string> out;
    for (auto x : c) out.push_back(s.name(x));
    return out;
}

// ---------------------------------------------------------------- commands

Reply cmd_validate(const Document& doc, const Options& o) {
    Reply r;
    DocKind k = kind_of(doc);
    r.json["kind"] = kind_name(k);
    Json violations = Json::array();
    switch (k) {
    case DocKind::pba: {
        if (is_glued(doc.json)) {
            GluedContextSpec spec = parse_glued(doc, doc.json, "");
            try {
                FinitePBA A = guarded(doc, "/contexts", [&] { return from_glued_contexts(spec); });
                r.json["size"] = A.size();
                r.json["blocks"] = A.blocks().size();
            } catch (const GluingCollapse& e) {
                violations.push_back({{"axiom", "gluing collapse"}, {"detail", e.what()}, {"witness", Json::array()}});
            }
        } else {
            PbaTables t = parse_tables(doc, doc.json, "");
            ValidationReport report = guarded(doc, "", [&] { return validate(t); });
            if (report.ok()) {
                FinitePBA A = FinitePBA::from_tables(t);
                r.json["size"] = A.size();
                r.json["blocks"] = A.blocks().size();
            }
            for (const auto& v : report.violations) violations.push_back(violation_json(nullptr, v));
        }
        break;
    }
    case DocKind::scenario: {
        Scenario s = guarded(doc, "", [&] { return parse_scenario(doc, doc.json, ""); });
        Json ctxs = Json::array();
        for (const auto& c : maximal_cliques(s)) ctxs.push_back(s.context_key(c));
        r.json["measurements"] = s.size();
        r.json["maximal_contexts"] = ctxs;
        break;
    }
    case DocKind::model: {
        EmpiricalModel m = guarded(doc, "", [&] { return parse_model(doc, doc.json, ""); });
        for (const auto& v : validate_model(m).violations) {
            violations.push_back({{"kind", v.kind},
                                  {"sigma", context_names(m.scenario, v.sigma)},
                                  {"tau", context_names(m.scenario, v.tau)},
                                  {"event", v.event},
                                  {"detail", v.detail}});
        }
        break;
    }
    case DocKind::state: {
        StateDocument s = guarded(doc, "", [&] { return parse_state(doc, doc.json, "", bx_limit(o)); });
        for (const auto& v : is_state(s.algebra, s.values).violations) violations.push_back(violation_json(&s.algebra, v));
        r.json["size"] = s.algebra.size();
        break;
    }
    case DocKind::extension: {
        ExtensionSpec spec = guarded(doc, "", [&] { return parse_extension(doc, doc.json, ""); });
        r.json["size"] = spec.base.size();
        break;
    }
    }
    r.json["violations"] = violations;
    bool ok = violations.empty();
    r.json["verdict"] = ok ? "valid" : "invalid";
    r.code = ok ? holds : fails;
    r.summary = kind_name(k) + (ok ? " is valid" : " is invalid: " + violations.front().value("axiom", violations.front().value("kind", std::string{})));
    return r;
}

Reply cmd_ks(const Document& doc, const Options& o) {
    FinitePBA A = load_algebra(doc, o);
    KsMethod m = o.method == "direct" ? KsMethod::direct : o.method == "cnf" ? KsMethod::cnf : KsMethod::both;
    KsVerdict v = ks_check(A, m);
    Reply r;
    r.json["size"] = A.size();
    r.json["method"] = v.method;
    r.json["verdict"] = v.has_ks ? "ks" : "no-ks";
    if (v.certificate) {
        r.json["certificate"] = {{"morphism_to_2", {{"true", true_elements(A, *v.certificate)}}}};
    } else {
        r.json["certificate"] = {{"unsatisfiable", true}};
    }
    r.code = v.has_ks ? holds : fails;
    r.summary = v.has_ks ? "K-S property holds: no morphism to 2 (" + v.method + ")"
                         : "no K-S property: morphism to 2 found (" + v.method + ")";
    return r;
}

Reply cmd_contextual(const Document& doc, const Options& o) {
    Reply r;
    DocKind k = kind_of(doc);
    if (k == DocKind::model) {
        EmpiricalModel m = load_model(doc);
        ModelContextuality v = model_noncontextual(m);
        const Scenario& s = m.scenario;
        r.json["global_assignments"] = v.num_global;
        if (v.noncontextual) {
            Json ws = Json::array();
            for (std::size_t g = 0; g < v.weights.size(); ++g) {
                if (v.weights[g] == 0) continue;
                Json assignment = Json::object();
                std::size_t rest = g;
                for (std::size_t x = s.size(); x-- > 0;) {
                    std::size_t n = s.outcomes(x).size();
                    assignment[s.name(x)] = s.outcomes(x)[rest % n];
                    rest /= n;
                }
                ws.push_back({{"weight", rational_text(v.weights[g])}, {"assignment", assignment}});
            }
            r.json["certificate"] = {{"weights", ws}};
        } else {
            Json f = Json::array();
            for (const auto& y : v.farkas) f.push_back(rational_text(y));
            r.json["certificate"] = {{"infeasible", true}, {"farkas", f}};
        }
        r.json["verdict"] = v.noncontextual ? "noncontextual" : "contextual";
        r.code = v.noncontextual ? holds : fails;
    } else if (k == DocKind::state) {
        StateDocument s = load_state(doc, o);
        ContextualityVerdict v = guarded(doc, "/values", [&] { return noncontextual(s.algebra, s.values); });
        r.json["morphisms"] = v.morphisms.size();
        if (v.noncontextual) {
            Json ws = Json::array();
            for (std::size_t i = 0; i < v.morphisms.size(); ++i) {
                if (v.weights[i] == 0) continue;
                ws.push_back({{"weight", rational_text(v.weights[i])}, {"true", true_elements(s.algebra, v.morphisms[i])}});
            }
            r.json["certificate"] = {{"weights", ws}};
        } else {
            Json f = Json::array();
            for (const auto& y : v.farkas) f.push_back(rational_text(y));
            r.json["certificate"] = {{"infeasible", true}, {"farkas", f}};
        }
        r.json["verdict"] = v.noncontextual ? "noncontextual" : "contextual";
        r.code = v.noncontextual ? holds : fails;
    } else {
        doc.fail("", "expected a model or state document, got " + kind_name(k));
    }
    r.summary = r.code == holds ? "noncontextual: LP feasible" : "contextual: LP infeasible";
    return r;
}

Reply cmd_lep(const Document& doc, const Options& o) {
    FinitePBA A = load_algebra(doc, o);
    LepVerdict v = lep_check(A);
    TransitivityVerdict t = transitivity_check(A);
    Reply r;
    r.json["size"] = A.size();
    r.json["verdict"] = v.holds ? "holds" : "fails";
    if (v.witness) {
        auto [a, b, c] = *v.witness;
        r.json["certificate"]["exclusive_not_commeasurable"] = {
            {"a", A.label(a)}, {"b", A.label(b)}, {"via", A.label(c)}};
    }
    if (t.witness) {
        auto [a, b, c] = *t.witness;
        r.json["certificate"]["intransitive"] = {{"a", A.label(a)}, {"b", A.label(b)}, {"c", A.label(c)}};
    }
    r.code = v.holds ? holds : fails;
    r.summary = v.holds ? "LEP holds" : "LEP fails: exclusive pair not commeasurable";
    return r;
}

Reply cmd_pep(const Document& doc, const Options& o) {
    Reply r;
    DocKind k = kind_of(doc);
    if (k == DocKind::model) {
        if (o.via_extension) doc.fail("", "--via-extension needs a state document");
        EmpiricalModel m = load_model(doc);
        ModelPepVerdict v = model_pep_check(m);
        auto ctxs = maximal_cliques(m.scenario);
        r.json["verdict"] = v.holds ? "holds" : "fails";
        r.json["max_sum"] = rational_text(v.max_sum);
        if (!v.holds) {
            Json fam = Json::array();
            for (const auto& e : v.family) {
                const Context& c = ctxs[e.context];
                fam.push_back(m.scenario.event_label(c, m.scenario.event_at(c, e.event)));
            }
            r.json["certificate"] = {{"family", fam}, {"sum", rational_text(v.sum)}};
        }
        r.code = v.holds ? holds : fails;
    } else if (k == DocKind::state) {
        StateDocument s = load_state(doc, o);
        if (o.via_extension) {
            PepExtensionResult x = pep_via_extension(s.algebra, s.values, o.depth.value_or(4));
            r.json["quotient_size"] = x.quotient_size;
            switch (x.outcome) {
            case Outcome::some:
                r.json["verdict"] = "holds";
                r.code = holds;
                break;
            case Outcome::none:
                r.json["verdict"] = "no-extension";
                r.code = fails;
                break;
            case Outcome::inconclusive:
                r.json["verdict"] = "inconclusive";
                r.code = inconclusive;
                break;
            }
        } else {
            PepVerdict v = pep_check_state(s.algebra, s.values);
            r.json["verdict"] = v.holds ? "holds" : "fails";
            r.json["max_sum"] = rational_text(v.max_sum);
            if (!v.holds) r.json["certificate"] = {{"family", labels_of(s.algebra, v.family)}, {"sum", rational_text(v.sum)}};
            r.code = v.holds ? holds : fails;
        }
    } else {
        doc.fail("", "expected a model or state document, got " + kind_name(k));
    }
    r.summary = r.code == holds ? "PEP holds" : r.code == fails ? "PEP fails" : "PEP inconclusive: depth bound hit";
    return r;
}

Reply quotient_reply(const QuotientAlgebra& q, bool trace) {
    Reply r;
    r.json = quotient_to_json(q, trace);
    r.code = q.stabilized() ? holds : inconclusive;
    r.summary = q.stabilized() ? "stabilized with " + std::to_string(q.size()) + " classes"
                               : "not stabilized within the depth bound (" + std::to_string(q.size()) + " classes)";
    return r;
}

Reply cmd_saturate(const Document& doc, const Options& o) {
    DocKind k = kind_of(doc);
    std::optional<ExtensionSpec> spec;
    if (k == DocKind::extension) {
        spec.emplace(guarded(doc, "", [&] { return parse_extension(doc, doc.json, ""); }));
    } else {
        spec.emplace(load_algebra(doc, o));
    }
    if (o.depth) spec->depth_limit = *o.depth;
    if (o.limit) spec->class_limit = o.limit;
    spec->trace = o.trace;
    return quotient_reply(saturate(*spec), o.trace);
}

Reply cmd_tensor(const Document& a, const Document& b, const Options& o) {
    FinitePBA A = load_algebra(a, o);
    FinitePBA B = load_algebra(b, o);
    TensorMode mode = o.mode == "boxtimes" ? TensorMode::boxtimes : TensorMode::otimes;
    TensorResult t = tensor(A, B, mode, o.depth.value_or(4));
    Reply r = quotient_reply(t.quotient, false);
    r.json["mode"] = o.mode;
    return r;
}

Reply cmd_examples(const Options& o) {
    Reply r;
    if (o.examples_action == "list") {
        Json list = Json::array();
        for (const auto& e : example_registry()) list.push_back({{"name", e.name}, {"kind", e.kind}, {"summary", e.summary}});
        r.json = list;
        r.summary = std::to_string(example_registry().size()) + " examples";
        return r;
    }
    const ExampleEntry* e = find_example(o.example_name);
    if (!e) throw InputError("<args>", 0, "name", "unknown example \"" + o.example_name + "\"");
    r.json = e->emit();
    r.summary = e->kind + " " + e->name;
    return r;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Finite partial Boolean algebras: validation, Kochen-Specker, contextuality and exclusivity checks",
                 "pba"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--limit", o.limit, "Cap on algebra sizes (0 = built-in defaults)");

    auto* validate_cmd = app.add_subcommand("validate", "Check a pBA, scenario, model, state or extension document");
    validate_cmd->add_option("file", o.file, "Document path or - for stdin")->required();

    auto* ks_cmd = app.add_subcommand("ks", "Kochen-Specker property: is there no morphism to 2?");
    ks_cmd->add_option("file", o.file)->required();
    ks_cmd->add_option("--method", o.method)->check(CLI::IsMember({"direct", "cnf", "both"}));

    auto* ctx_cmd = app.add_subcommand("contextual", "Noncontextuality LP for a model or state");
    ctx_cmd->add_option("file", o.file)->required();

    auto* lep_cmd = app.add_subcommand("lep", "Logical exclusivity principle");
    lep_cmd->add_option("file", o.file)->required();

    auto* pep_cmd = app.add_subcommand("pep", "Probabilistic exclusivity principle for a model or state");
    pep_cmd->add_option("file", o.file)->required();
    pep_cmd->add_flag("--via-extension", o.via_extension, "Search a state on the saturated exclusivity extension");
    pep_cmd->add_option("--depth", o.depth);

    auto* sat_cmd = app.add_subcommand("saturate", "Saturate an extension spec (or a pBA with no relation)");
    sat_cmd->add_option("file", o.file)->required();
    sat_cmd->add_option("--depth", o.depth);
    sat_cmd->add_flag("--trace", o.trace, "Include the derivation log");

    auto* tensor_cmd = app.add_subcommand("tensor", "Tensor product of two algebras");
    tensor_cmd->add_option("a", o.file)->required();
    tensor_cmd->add_option("b", o.file2)->required();
    tensor_cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"otimes", "boxtimes"}));
    tensor_cmd->add_option("--depth", o.depth);

    auto* ex_cmd = app.add_subcommand("examples", "List or emit registry examples");
    ex_cmd->add_option("action", o.examples_action)->required()->check(CLI::IsMember({"list", "emit"}));
    ex_cmd->add_option("name", o.example_name);

    std::vector<const char*> argv{"pba"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return holds;
    } catch (const CLI::ParseError& e) {
        err << "pba: error: " << e.what() << "\n";
        return input_error;
    }
    if (ex_cmd->parsed() && o.examples_action == "emit" && o.example_name.empty()) {
        err << "pba: error: examples emit needs a name\n";
        return input_error;
    }

    try {
        Reply r;
        if (ex_cmd->parsed()) {
            r = cmd_examples(o);
        } else {
            Document doc = load_document(o.file, in);
            if (validate_cmd->parsed()) r = cmd_validate(doc, o);
            else if (ks_cmd->parsed()) r = cmd_ks(doc, o);
            else if (ctx_cmd->parsed()) r = cmd_contextual(doc, o);
            else if (lep_cmd->parsed()) r = cmd_lep(doc, o);
            else if (pep_cmd->parsed()) r = cmd_pep(doc, o);
            else if (sat_cmd->parsed()) r = cmd_saturate(doc, o);
            else {
                if (o.file == "-" && o.file2 == "-") throw InputError("<args>", 0, "b", "only one operand can be stdin");
                Document doc2 = load_document(o.file2, in);
                r = cmd_tensor(doc, doc2, o);
            }
        }
        out << r.json.dump(2) << "\n";
        err << r.summary << "\n";
        return r.code;
    } catch (const InputError& e) {
        err << "pba: error: " << e.what() << "\n";
        return input_error;
    } catch (const SizeLimitExceeded& e) {
        Json j{{"verdict", "inconclusive"}, {"reason", e.what()}};
        out << j.dump(2) << "\n";
        err << "size limit hit: " << e.what() << "\n";
        return inconclusive;
    } catch (const std::invalid_argument& e) {
        err << "pba: error: " << e.what() << "\n";
        return input_error;
    } catch (const std::exception& e) {
        err << "pba: internal error: " << e.what() << "\n";
        return internal_error;
    }
}

} // namespace pba::cli
