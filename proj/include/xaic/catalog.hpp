// On-disk documents for method catalogs and regulation sets, their
// validation, canonical serialization, and the built-in AI Act dataset.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "xaic/scoring.hpp"

namespace xaic {

inline constexpr std::string_view kFormatVersion = "1";
/// Token standing in for a sub-property score the method does not report.
inline constexpr std::string_view kUnreported = "unreported";

struct Diagnostic {
    std::string path;  // e.g. "methods[2].scores.no_fp"; empty for document-level
    std::string message;

    std::string str() const { return path.empty() ? message : path + ": " + message; }
};

/// Malformed document text; carries line/column of the failure.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& detail);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed text that violates the schema or a document invariant.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Diagnostic> diagnostics);

    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

struct MethodCatalogDocument {
    std::string format_version{kFormatVersion};
    std::vector<MethodProfile> methods;
    /// Non-fatal findings (unreported scores). Not part of equality.
    std::vector<Diagnostic> warnings;

    const MethodProfile* find(std::string_view name) const;
    const MethodProfile& at(std::string_view name) const;

    bool operator==(const MethodCatalogDocument& o) const {
        return format_version == o.format_version && methods == o.methods;
    }
};

struct RegulationSetDocument {
    std::string format_version{kFormatVersion};
    std::vector<RegulationProfile> regulations;

    const RegulationProfile* find(std::string_view id) const;
    const RegulationProfile& at(std::string_view id) const;

    bool operator==(const RegulationSetDocument&) const = default;
};

MethodCatalogDocument parse_method_catalog(std::string_view text);
RegulationSetDocument parse_regulation_set(std::string_view text);

enum class DocumentKind { MethodCatalog, RegulationSet };

/// Determines the document kind from its top-level array field.
DocumentKind detect_document_kind(std::string_view text);

/// Canonical text: two-space indentation, fixed field order, LF line endings,
/// trailing newline.
std::string serialize(const MethodCatalogDocument& doc);
std::string serialize(const RegulationSetDocument& doc);

/// Diagnostics for an in-memory catalog (same rules the parser enforces).
std::vector<Diagnostic> validate(const MethodCatalogDocument& doc);
std::vector<Diagnostic> validate(const RegulationSetDocument& doc);

struct Dataset {
    MethodCatalogDocument methods;
    RegulationSetDocument regulations;
};

/// The embedded dataset: ten model-agnostic methods and three AI Act
/// provisions (Art. 86, Arts. 13-14, Art. 11 & Annex IV).
const Dataset& builtin_dataset();

/// Embedded source text of the built-in documents.
std::string_view builtin_methods_text();
std::string_view builtin_regulations_text();

}  // namespace xaic
