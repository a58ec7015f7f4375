#include "pba_cli/json_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace pba::cli {

namespace fs = std::filesystem;

InputError::InputError(std::string file, std::size_t line, std::string field, const std::string& message)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + (field.empty() ? "" : field + ": ") + message),
      file_(std::move(file)), line_(line), field_(std::move(field)) {}

namespace {

std::size_t line_at(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

std::vector<std::string> pointer_tokens(const std::string& pointer) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < pointer.size()) {
        std::size_t j = pointer.find('/', i + 1);
        out.push_back(pointer.substr(i + 1, j == std::string::npos ? std::string::npos : j - i - 1));
        if (j == std::string::npos) break;
        i = j;
    }
    return out;
}

bool is_number(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

const Json& member(const Document& doc, const Json& j, const std::string& at, const char* key) {
    if (!j.is_object()) doc.fail(at, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) doc.fail(at + "/" + key, "missing field");
    return *it;
}

std::size_t as_size(const Document& doc, const Json& j, const std::string& at) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        doc.fail(at, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

ElementId as_index(const Document& doc, const Json& j, const std::string& at, std::size_t carrier) {
    std::size_t v = as_size(doc, j, at);
    if (v >= carrier) doc.fail(at, "index " + std::to_string(v) + " out of range");
    return static_cast<ElementId>(v);
}

std::string as_string(const Document& doc, const Json& j, const std::string& at) {
    if (!j.is_string()) doc.fail(at, "expected a string");
    return j.get<std::string>();
}

std::vector<std::string> as_strings(const Document& doc, const Json& j, const std::string& at) {
    if (!j.is_array()) doc.fail(at, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(doc, j[i], at + "/" + std::to_string(i)));
    return out;
}

Rational as_rational(const Document& doc, const Json& j, const std::string& at) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
    if (!j.is_string()) doc.fail(at, "expected a rational \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument&) {
        doc.fail(at, "bad rational \"" + j.get<std::string>() + "\"");
    }
}

std::pair<std::size_t, std::size_t> parse_pair_key(const Document& doc, const std::string& key, const std::string& at,
                                                   std::size_t carrier) {
    auto comma = key.find(',');
    std::string a = key.substr(0, comma);
    std::string b = comma == std::string::npos ? "" : key.substr(comma + 1);
    if (!is_number(a) || !is_number(b)) doc.fail(at, "expected a key \"i,j\"");
    std::size_t i = std::stoul(a);
    std::size_t k = std::stoul(b);
    if (i >= carrier || k >= carrier) doc.fail(at, "index out of range");
    return {i, k};
}

std::vector<TableEntry> parse_op(const Document& doc, const Json& j, const std::string& at, std::size_t carrier) {
    if (!j.is_object()) doc.fail(at, "expected an object of \"i,j\": k entries");
    std::vector<TableEntry> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string here = at + "/" + it.key();
        auto [a, b] = parse_pair_key(doc, it.key(), here, carrier);
        out.push_back({static_cast<ElementId>(a), static_cast<ElementId>(b), as_index(doc, it.value(), here, carrier)});
    }
    return out;
}

/// Follows a string-valued reference to another file.
template <class F>
auto with_ref(const Document& doc, const Json& j, const std::string& at, F&& f) {
    if (j.is_string()) {
        fs::path p = j.get<std::string>();
        if (p.is_relative()) p = fs::path(doc.base_dir) / p;
        std::ifstream unused;
        Document sub;
        try {
            sub = load_document(p.string(), unused);
        } catch (const InputError& e) {
            doc.fail(at, std::string("referenced file: ") + e.what());
        }
        return f(sub, sub.json, std::string{});
    }
    return f(doc, j, at);
}

ElementId element_ref(const Document& doc, const Json& j, const std::string& at, const FinitePBA& A) {
    if (j.is_string()) {
        auto e = A.find_label(j.get<std::string>());
        if (!e) doc.fail(at, "unknown element label \"" + j.get<std::string>() + "\"");
        return *e;
    }
    return as_index(doc, j, at, A.size());
}

ElementPairs parse_pairs(const Document& doc, const Json& j, const std::string& at, const FinitePBA& A) {
    if (!j.is_array()) doc.fail(at, "expected an array of pairs");
    ElementPairs out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string here = at + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != 2) doc.fail(here, "expected a pair");
        out.emplace_back(element_ref(doc, j[i][0], here + "/0", A), element_ref(doc, j[i][1], here + "/1", A));
    }
    return out;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
    return out;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto c = s.find(',', start);
        out.push_back(s.substr(start, c - start));
        if (c == std::string::npos) break;
        start = c + 1;
    }
    return out;
}

} // namespace

std::size_t Document::line_of(const std::string& pointer) const {
    std::size_t pos = 0;
    for (const auto& tok : pointer_tokens(pointer)) {
        if (tok.empty() || is_number(tok)) continue;
        auto found = text.find("\"" + tok + "\"", pos);
        if (found == std::string::npos) break;
        pos = found;
    }
    return line_at(text, pos);
}

void Document::fail(const std::string& pointer, const std::string& message) const {
    throw InputError(source, line_of(pointer), pointer.empty() ? "/" : pointer, message);
}

Document parse_document(std::string source, std::string text, std::string base_dir) {
    Document doc;
    doc.source = std::move(source);
    doc.text = std::move(text);
    doc.base_dir = std::move(base_dir);
    try {
        doc.json = Json::parse(doc.text);
    } catch (const Json::parse_error& e) {
        throw InputError(doc.source, line_at(doc.text, e.byte == 0 ? 0 : e.byte - 1), "", "invalid JSON");
    }
    return doc;
}

Document load_document(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return parse_document("<stdin>", std::move(text));
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw InputError(path, 0, "", "cannot open file");
    std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    fs::path dir = fs::path(path).parent_path();
    return parse_document(path, std::move(text), dir.empty() ? "." : dir.string());
}

DocKind kind_of(const Document& doc) {
    const Json& j = doc.json;
    if (!j.is_object()) doc.fail("", "expected a JSON object");
    if (j.contains("base")) return DocKind::extension;
    if (j.contains("values")) return DocKind::state;
    if (j.contains("distributions")) return DocKind::model;
    if (j.contains("measurements")) return DocKind::scenario;
    if (j.contains("carrier") || j.contains("contexts")) return DocKind::pba;
    doc.fail("", "unrecognised document (expected a pBA, scenario, model, state or extension)");
}

std::string kind_name(DocKind k) {
    switch (k) {
    case DocKind::pba: return "pba";
    case DocKind::scenario: return "scenario";
    case DocKind::model: return "model";
    case DocKind::state: return "state";
    case DocKind::extension: return "extension";
    }
    return "?";
}

// ------------------------------------------------------------------- pBA

bool is_glued(const Json& j) { return j.is_object() && j.contains("contexts"); }

PbaTables parse_tables(const Document& doc, const Json& j, const std::string& at) {
    PbaTables t;
    t.carrier = as_size(doc, member(doc, j, at, "carrier"), at + "/carrier");
    if (t.carrier == 0) doc.fail(at + "/carrier", "carrier must be non-empty");
    t.zero = as_index(doc, member(doc, j, at, "zero"), at + "/zero", t.carrier);
    t.one = as_index(doc, member(doc, j, at, "one"), at + "/one", t.carrier);
    const Json& neg = member(doc, j, at, "neg");
    if (!neg.is_array() || neg.size() != t.carrier) doc.fail(at + "/neg", "expected an array of length carrier");
    for (std::size_t i = 0; i < neg.size(); ++i) t.neg.push_back(as_index(doc, neg[i], at + "/neg/" + std::to_string(i), t.carrier));
    const Json& comm = member(doc, j, at, "comm");
    if (!comm.is_array()) doc.fail(at + "/comm", "expected an array of pairs");
    for (std::size_t i = 0; i < comm.size(); ++i) {
        std::string here = at + "/comm/" + std::to_string(i);
        if (!comm[i].is_array() || comm[i].size() != 2) doc.fail(here, "expected a pair");
        t.comm.emplace_back(as_index(doc, comm[i][0], here, t.carrier), as_index(doc, comm[i][1], here, t.carrier));
    }
    t.meet = parse_op(doc, member(doc, j, at, "meet"), at + "/meet", t.carrier);
    t.join = parse_op(doc, member(doc, j, at, "join"), at + "/join", t.carrier);
    if (j.contains("labels")) {
        t.labels = as_strings(doc, j["labels"], at + "/labels");
        if (t.labels.size() != t.carrier) doc.fail(at + "/labels", "expected one label per element");
        if (std::set<std::string>(t.labels.begin(), t.labels.end()).size() != t.labels.size()) {
            doc.fail(at + "/labels", "labels must be unique");
        }
    }
    return t;
}

GluedContextSpec parse_glued(const Document& doc, const Json& j, const std::string& at) {
    GluedContextSpec spec;
    const Json& ctxs = member(doc, j, at, "contexts");
    if (!ctxs.is_array()) doc.fail(at + "/contexts", "expected an array");
    for (std::size_t i = 0; i < ctxs.size(); ++i) {
        std::string here = at + "/contexts/" + std::to_string(i);
        GluedContext c;
        c.name = as_string(doc, member(doc, ctxs[i], here, "name"), here + "/name");
        c.atoms = as_strings(doc, member(doc, ctxs[i], here, "atoms"), here + "/atoms");
        spec.contexts.push_back(std::move(c));
    }
    if (j.contains("forced_true")) spec.forced_true = as_strings(doc, j["forced_true"], at + "/forced_true");
    if (j.contains("forced_false")) spec.forced_false = as_strings(doc, j["forced_false"], at + "/forced_false");
    return spec;
}

FinitePBA parse_pba(const Document& doc, const Json& j, const std::string& at) {
    return with_ref(doc, j, at, [](const Document& d, const Json& v, const std::string& where) {
        if (is_glued(v)) {
            GluedContextSpec spec = parse_glued(d, v, where);
            try {
                return from_glued_contexts(spec);
            } catch (const PreconditionError& e) {
                d.fail(where + "/contexts", e.what());
            }
        }
        PbaTables t = parse_tables(d, v, where);
        try {
            return FinitePBA::from_tables(t);
        } catch (const MalformedTable& e) {
            d.fail(where, e.what());
        }
    });
}

Json tables_to_json(const PbaTables& t) {
    Json j;
    j["carrier"] = t.carrier;
    j["zero"] = t.zero;
    j["one"] = t.one;
    j["neg"] = t.neg;
    Json comm = Json::array();
    for (auto [a, b] : t.comm) comm.push_back({std::min(a, b), std::max(a, b)});
    j["comm"] = comm;
    auto op = [](const std::vector<TableEntry>& entries) {
        Json o = Json::object();
        for (const auto& e : entries) {
            o[std::to_string(std::min(e.a, e.b)) + "," + std::to_string(std::max(e.a, e.b))] = e.value;
        }
        return o;
    };
    j["meet"] = op(t.meet);
    j["join"] = op(t.join);
    if (!t.labels.empty()) j["labels"] = t.labels;
    return j;
}

Json pba_to_json(const FinitePBA& A) { return tables_to_json(A.to_tables()); }

Json glued_to_json(const GluedContextSpec& spec) {
    Json j;
    Json ctxs = Json::array();
    for (const auto& c : spec.contexts) ctxs.push_back({{"name", c.name}, {"atoms", c.atoms}});
    j["contexts"] = ctxs;
    if (!spec.forced_true.empty()) j["forced_true"] = spec.forced_true;
    if (!spec.forced_false.empty()) j["forced_false"] = spec.forced_false;
    return j;
}

// -------------------------------------------------------------- scenario

Scenario parse_scenario(const Document& doc, const Json& j, const std::string& at) {
    return with_ref(doc, j, at, [](const Document& d, const Json& v, const std::string& where) {
        auto measurements = as_strings(d, member(d, v, where, "measurements"), where + "/measurements");
        std::vector<std::pair<std::string, std::string>> compat;
        if (v.contains("compatibility")) {
            const Json& c = v["compatibility"];
            if (!c.is_array()) d.fail(where + "/compatibility", "expected an array of pairs");
            for (std::size_t i = 0; i < c.size(); ++i) {
                auto pair = as_strings(d, c[i], where + "/compatibility/" + std::to_string(i));
                if (pair.size() != 2) d.fail(where + "/compatibility/" + std::to_string(i), "expected a pair");
                compat.emplace_back(pair[0], pair[1]);
            }
        }
        const Json& o = member(d, v, where, "outcomes");
        if (!o.is_object()) d.fail(where + "/outcomes", "expected an object");
        std::map<std::string, std::vector<std::string>> outcomes;
        for (auto it = o.begin(); it != o.end(); ++it) {
            outcomes[it.key()] = as_strings(d, it.value(), where + "/outcomes/" + it.key());
        }
        try {
            return Scenario(measurements, compat, outcomes);
        } catch (const PreconditionError& e) {
            d.fail(where, e.what());
        }
    });
}

Json scenario_to_json(const Scenario& s) {
    Json j;
    j["measurements"] = s.names();
    Json compat = Json::array();
    for (auto [x, y] : s.compatible_pairs()) compat.push_back({s.name(x), s.name(y)});
    j["compatibility"] = compat;
    Json outcomes = Json::object();
    for (std::size_t x = 0; x < s.size(); ++x) outcomes[s.name(x)] = s.outcomes(x);
    j["outcomes"] = outcomes;
    return j;
}

EmpiricalModel parse_model(const Document& doc, const Json& j, const std::string& at) {
    Scenario s = parse_scenario(doc, member(doc, j, at, "scenario"), at + "/scenario");
    EmpiricalModel m(s);
    const Json& dists = member(doc, j, at, "distributions");
    if (!dists.is_object()) doc.fail(at + "/distributions", "expected an object keyed by context");
    std::set<std::string> known;
    for (const auto& ctx : maximal_cliques(s)) {
        std::string key = s.context_key(ctx);
        known.insert(key);
        std::string here = at + "/distributions/" + key;
        if (!dists.contains(key)) doc.fail(here, "missing distribution for maximal context");
        const Json& table = dists[key];
        if (!table.is_object()) doc.fail(here, "expected an object keyed by joint outcome");
        Distribution d{ctx, std::vector<Rational>(s.num_events(ctx))};
        for (auto it = table.begin(); it != table.end(); ++it) {
            std::string cell = here + "/" + it.key();
            auto parts = split(it.key());
            if (parts.size() != ctx.size()) doc.fail(cell, "expected one outcome per measurement");
            Event e;
            for (std::size_t k = 0; k < ctx.size(); ++k) {
                const auto& outs = s.outcomes(ctx[k]);
                auto f = std::find(outs.begin(), outs.end(), parts[k]);
                if (f == outs.end()) doc.fail(cell, "unknown outcome \"" + parts[k] + "\" of " + s.name(ctx[k]));
                e.push_back(static_cast<std::size_t>(f - outs.begin()));
            }
            d.probs[s.event_index(ctx, e)] = as_rational(doc, it.value(), cell);
        }
        m.distributions.push_back(std::move(d));
    }
    for (auto it = dists.begin(); it != dists.end(); ++it) {
        if (!known.count(it.key())) doc.fail(at + "/distributions/" + it.key(), "not a maximal context");
    }
    return m;
}

Json model_to_json(const EmpiricalModel& m) {
    const Scenario& s = m.scenario;
    Json j;
    j["scenario"] = scenario_to_json(s);
    Json dists = Json::object();
    for (const auto& d : m.distributions) {
        Json table = Json::object();
        for (std::size_t e = 0; e < d.probs.size(); ++e) {
            Event ev = s.event_at(d.context, e);
            std::vector<std::string> parts;
            for (std::size_t k = 0; k < ev.size(); ++k) parts.push_back(s.outcomes(d.context[k])[ev[k]]);
            table[join(parts)] = rational_text(d.probs[e]);
        }
        dists[s.context_key(d.context)] = table;
    }
    j["distributions"] = dists;
    return j;
}

StateDocument parse_state(const Document& doc, const Json& j, const std::string& at, std::size_t limit) {
    const Json& alg = member(doc, j, at, "algebra");
    std::optional<Scenario> scenario;
    std::optional<ScenarioAlgebra> sa;
    std::optional<FinitePBA> A;
    with_ref(doc, alg, at + "/algebra", [&](const Document& d, const Json& v, const std::string& where) {
        if (v.is_object() && v.contains("measurements")) {
            scenario = parse_scenario(d, v, where);
            sa = build_BX(*scenario, limit);
            A = sa->algebra;
        } else {
            A = parse_pba(d, v, where);
        }
        return 0;
    });
    const Json& vals = member(doc, j, at, "values");
    if (!vals.is_object()) doc.fail(at + "/values", "expected an object keyed by element label");
    StateValues values(A->size(), Rational(-1));
    values[A->zero()] = 0;
    values[A->one()] = 1;
    for (auto it = vals.begin(); it != vals.end(); ++it) {
        std::string here = at + "/values/" + it.key();
        auto e = A->find_label(it.key());
        if (!e) doc.fail(here, "unknown element label");
        values[*e] = as_rational(doc, it.value(), here);
    }
    for (ElementId e = 0; e < A->size(); ++e) {
        if (values[e] < 0) doc.fail(at + "/values", "no value for element \"" + A->label(e) + "\"");
    }
    return StateDocument{std::move(*A), std::move(values), std::move(scenario), std::move(sa)};
}

Json state_to_json(const Json& algebra, const FinitePBA& A, const StateValues& values) {
    Json j;
    j["algebra"] = algebra;
    Json v = Json::object();
    for (ElementId e = 0; e < A.size(); ++e) v[A.label(e)] = rational_text(values[e]);
    j["values"] = v;
    return j;
}

// ------------------------------------------------------------- extension

ExtensionSpec parse_extension(const Document& doc, const Json& j, const std::string& at) {
    ExtensionSpec spec(parse_pba(doc, member(doc, j, at, "base"), at + "/base"));
    if (j.contains("relation")) spec.relation = parse_pairs(doc, j["relation"], at + "/relation", spec.base);
    if (j.contains("force_equal")) spec.force_equal = parse_pairs(doc, j["force_equal"], at + "/force_equal", spec.base);
    if (j.contains("lep_rule")) {
        if (!j["lep_rule"].is_boolean()) doc.fail(at + "/lep_rule", "expected a boolean");
        spec.lep_rule = j["lep_rule"].get<bool>();
    }
    if (j.contains("depth")) spec.depth_limit = as_size(doc, j["depth"], at + "/depth");
    return spec;
}

Json extension_to_json(const ExtensionSpec& spec) {
    Json j;
    j["base"] = pba_to_json(spec.base);
    auto pairs = [](const ElementPairs& ps) {
        Json a = Json::array();
        for (auto [x, y] : ps) a.push_back({x, y});
        return a;
    };
    j["relation"] = pairs(spec.relation);
    j["force_equal"] = pairs(spec.force_equal);
    j["lep_rule"] = spec.lep_rule;
    j["depth"] = spec.depth_limit;
    return j;
}

Json quotient_to_json(const QuotientAlgebra& q, bool with_trace) {
    Json j = q.algebra() ? pba_to_json(*q.algebra()) : Json::object();
    j["stabilized"] = q.stabilized();
    j["eta"] = q.eta();
    j["size"] = q.size();
    j["levels"] = q.levels();
    j["comm_pairs"] = q.comm_pairs();
    if (with_trace) j["trace"] = q.trace();
    return j;
}

std::string rational_text(const Rational& r) { return to_string(r); }

Json labels_of(const FinitePBA& A, const std::vector<ElementId>& ids) {
    Json out = Json::array();
    for (ElementId e : ids) out.push_back(A.label(e));
    return out;
}

} // namespace pba::cli
