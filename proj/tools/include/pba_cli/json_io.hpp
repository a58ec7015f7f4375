#pragma once

#include "pba/pba.hpp"

#include <json.hpp>

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>

namespace pba::cli {

using Json = nlohmann::json;

/// A document that could not be read. Carries enough to point at the
/// offending spot: "file:line: field: message".
class InputError : public std::runtime_error {
  public:
    InputError(std::string file, std::size_t line, std::string field, const std::string& message);
    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

  private:
    std::string file_;
    std::size_t line_;
    std::string field_;
};

/// Parsed JSON together with its raw text, for line lookups.
struct Document {
    std::string source;
    std::string text;
    Json json;
    /// Directory against which relative paths inside the document resolve.
    std::string base_dir;

    /// Best-effort line of a member named by a JSON pointer ("/a/0/b").
    std::size_t line_of(const std::string& pointer) const;
    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const;
};

/// "-" reads `in`.
Document load_document(const std::string& path, std::istream& in);
Document parse_document(std::string source, std::string text, std::string base_dir = ".");

enum class DocKind { pba, scenario, model, state, extension };
DocKind kind_of(const Document& doc);
std::string kind_name(DocKind k);

// ------------------------------------------------------------- pBA documents

/// Raw tables, unchecked. Requires a raw-table document.
PbaTables parse_tables(const Document& doc, const Json& j, const std::string& at);
GluedContextSpec parse_glued(const Document& doc, const Json& j, const std::string& at);
bool is_glued(const Json& j);
/// Either form; invalid tables raise InvalidAlgebra, a collapse raises
/// GluingCollapse.
FinitePBA parse_pba(const Document& doc, const Json& j, const std::string& at);

Json tables_to_json(const PbaTables& t);
Json pba_to_json(const FinitePBA& A);
Json glued_to_json(const GluedContextSpec& spec);

// ------------------------------------------------------ scenario documents

Scenario parse_scenario(const Document& doc, const Json& j, const std::string& at);
Json scenario_to_json(const Scenario& s);

EmpiricalModel parse_model(const Document& doc, const Json& j, const std::string& at);
Json model_to_json(const EmpiricalModel& m);

struct StateDocument {
    FinitePBA algebra;
    StateValues values;
    /// Set when the algebra came from a scenario.
    std::optional<Scenario> scenario;
    std::optional<ScenarioAlgebra> scenario_algebra;
};

StateDocument parse_state(const Document& doc, const Json& j, const std::string& at, std::size_t limit);
/// `algebra` is written inline; zero-valued entries are kept.
Json state_to_json(const Json& algebra, const FinitePBA& A, const StateValues& values);

// ---------------------------------------------------- extension documents

ExtensionSpec parse_extension(const Document& doc, const Json& j, const std::string& at);
Json extension_to_json(const ExtensionSpec& spec);
Json quotient_to_json(const QuotientAlgebra& q, bool with_trace);

// ----------------------------------------------------------------- helpers

std::string rational_text(const Rational& r);
Json labels_of(const FinitePBA& A, const std::vector<ElementId>& ids);

} // namespace pba::cli
