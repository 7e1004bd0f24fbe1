#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace uiml {

enum class Severity { Error, Warning };

/// A single problem report. `line`/`column` are 1-based when the diagnostic
/// is anchored to a source position and 0 when it is not (e.g. produced from
/// an in-memory document).
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    std::size_t line = 0;
    std::size_t column = 0;

    bool is_error() const { return severity == Severity::Error; }
};

// Stable diagnostic codes. Grouped by producer:
//   0xx parser, 1xx document/vocabulary validation, 2xx transform,
//   3xx vocabulary/mapping files, 4xx logical model files.
namespace diag {
inline constexpr const char* kXmlMalformed = "UIML001";
inline constexpr const char* kDuplicatePartName = "UIML002";
inline constexpr const char* kMissingAttribute = "UIML003";
inline constexpr const char* kDuplicateInterfaceName = "UIML004";
inline constexpr const char* kDuplicateConstantName = "UIML005";
inline constexpr const char* kMalformedBehavior = "UIML006";
inline constexpr const char* kUnknownElement = "UIML010";

inline constexpr const char* kUnknownClass = "UIML101";
inline constexpr const char* kUnknownProperty = "UIML102";
inline constexpr const char* kNonContainerHasChildren = "UIML103";
inline constexpr const char* kUnknownEvent = "UIML104";
inline constexpr const char* kUnresolvedPartRef = "UIML105";
inline constexpr const char* kDanglingContentRef = "UIML106";
inline constexpr const char* kRuleWithoutActions = "UIML107";

inline constexpr const char* kUnknownFamily = "UIML201";
inline constexpr const char* kIllegalMapping = "UIML202";
inline constexpr const char* kMalformedHint = "UIML203";

inline constexpr const char* kVocabularySchema = "UIML301";
inline constexpr const char* kDuplicateVocabularyClass = "UIML302";
inline constexpr const char* kMappingSchema = "UIML303";

inline constexpr const char* kLogicalSchema = "UIML401";
inline constexpr const char* kDuplicateLogicalName = "UIML402";
inline constexpr const char* kEmptyChoice = "UIML403";
}  // namespace diag

inline Diagnostic make_error(std::string code, std::string message,
                             std::size_t line = 0, std::size_t column = 0) {
    return Diagnostic{Severity::Error, std::move(code), std::move(message), line, column};
}

inline Diagnostic make_warning(std::string code, std::string message,
                               std::size_t line = 0, std::size_t column = 0) {
    return Diagnostic{Severity::Warning, std::move(code), std::move(message), line, column};
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.is_error()) return true;
    return false;
}

/// Renders one diagnostic as `file:line:col: code message` (or `file: code
/// message` when the diagnostic carries no position).
inline std::string format_diagnostic(const Diagnostic& d, const std::string& file) {
    std::ostringstream os;
    os << (file.empty() ? "<input>" : file);
    if (d.line > 0) os << ':' << d.line << ':' << (d.column > 0 ? d.column : 1);
    os << ": " << d.code << ' ' << d.message;
    return os.str();
}

}  // namespace uiml
