#pragma once

// Widget vocabularies and generic->target mapping tables. A vocabulary names
// the widget classes legal on a platform family together with their allowed
// properties and events; a mapping table lists, for every generic class, the
// target classes it may become on one family (one flagged as the default).
//
// The builtin generic vocabulary carries the six G-classes; each of the
// three builtin families (html-desktop, wml-phone, voice) has a builtin
// target vocabulary and mapping table. Both kinds of file are loadable from
// JSON so families can be extended.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "uiml/diagnostics.hpp"
#include "uiml/document.hpp"

namespace uiml {

enum class FamilyId { HtmlDesktop, WmlPhone, Voice };

inline constexpr std::array<FamilyId, 3> kAllFamilies = {FamilyId::HtmlDesktop,
                                                         FamilyId::WmlPhone, FamilyId::Voice};

inline std::string to_string(FamilyId family) {
    switch (family) {
        case FamilyId::HtmlDesktop: return "html-desktop";
        case FamilyId::WmlPhone: return "wml-phone";
        case FamilyId::Voice: return "voice";
    }
    return "?";
}

inline std::optional<FamilyId> family_from_string(std::string_view text) {
    if (text == "html-desktop") return FamilyId::HtmlDesktop;
    if (text == "wml-phone") return FamilyId::WmlPhone;
    if (text == "voice") return FamilyId::Voice;
    return std::nullopt;
}

enum class PropertyKind { Text, Number, Boolean };

inline std::string to_string(PropertyKind kind) {
    switch (kind) {
        case PropertyKind::Text: return "text";
        case PropertyKind::Number: return "number";
        case PropertyKind::Boolean: return "boolean";
    }
    return "?";
}

inline std::optional<PropertyKind> property_kind_from_string(std::string_view text) {
    if (text == "text") return PropertyKind::Text;
    if (text == "number") return PropertyKind::Number;
    if (text == "boolean") return PropertyKind::Boolean;
    return std::nullopt;
}

struct PropertyDef {
    std::string name;
    PropertyKind kind = PropertyKind::Text;

    friend bool operator==(const PropertyDef&, const PropertyDef&) = default;
};

struct EventDef {
    std::string event_class;
    std::vector<std::string> data_keys;

    friend bool operator==(const EventDef&, const EventDef&) = default;
};

struct WidgetClassDef {
    std::string name;
    bool container = false;
    std::vector<PropertyDef> properties;
    std::vector<EventDef> events;

    bool allows_property(const std::string& property) const {
        return std::any_of(properties.begin(), properties.end(),
                           [&](const PropertyDef& p) { return p.name == property; });
    }

    const EventDef* find_event(const std::string& event_class) const {
        for (const EventDef& e : events)
            if (e.event_class == event_class) return &e;
        return nullptr;
    }

    friend bool operator==(const WidgetClassDef&, const WidgetClassDef&) = default;
};

struct Vocabulary {
    std::string name;
    std::vector<WidgetClassDef> classes;

    const WidgetClassDef* find_class(const std::string& class_name) const {
        for (const WidgetClassDef& c : classes)
            if (c.name == class_name) return &c;
        return nullptr;
    }

    friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

/// One way a generic class may be realized on a family. `property_renames`
/// maps generic property names to target property names (identity when
/// absent).
struct TargetOption {
    std::string target_class;
    bool is_default = false;
    std::map<std::string, std::string> property_renames;

    friend bool operator==(const TargetOption&, const TargetOption&) = default;
};

/// Generic->target mapping for one family. `event_renames` maps generic
/// event classes to the family's event classes (identity when absent).
struct MappingTable {
    FamilyId family = FamilyId::HtmlDesktop;
    std::map<std::string, std::vector<TargetOption>> entries;
    std::map<std::string, std::string> event_renames;

    std::string rename_event(const std::string& event_class) const {
        auto it = event_renames.find(event_class);
        return it == event_renames.end() ? event_class : it->second;
    }

    friend bool operator==(const MappingTable&, const MappingTable&) = default;
};

struct UnknownClassError : std::runtime_error {
    explicit UnknownClassError(const std::string& name)
        : std::runtime_error("unknown widget class: " + name) {}
};

/// Style property names carrying transformation hints; they are legal on
/// every class and are consumed by the transform stage.
inline constexpr std::string_view kMappingHintPrefix = "g:map-to:";

inline bool is_mapping_hint_property(std::string_view property_name) {
    return property_name.substr(0, kMappingHintPrefix.size()) == kMappingHintPrefix;
}

// ---------------------------------------------------------------------------
// Builtin vocabularies
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<PropertyDef> base_properties() {
    return {{"text", PropertyKind::Text},
            {"visible", PropertyKind::Boolean},
            {"enabled", PropertyKind::Boolean}};
}

inline WidgetClassDef widget_class(std::string name, bool container,
                                   std::vector<PropertyDef> extra_properties = {},
                                   std::vector<EventDef> events = {}) {
    WidgetClassDef def;
    def.name = std::move(name);
    def.container = container;
    def.properties = base_properties();
    for (PropertyDef& p : extra_properties) def.properties.push_back(std::move(p));
    def.events = std::move(events);
    return def;
}

}  // namespace detail

/// The platform-neutral vocabulary: GTopContainer, GArea, GLabel, GText,
/// GList, GButton. Every class carries text/visible/enabled; GText adds
/// value, GList adds items (newline-separated) and selected.
inline const Vocabulary& builtin_generic_vocabulary() {
    static const Vocabulary vocab = [] {
        Vocabulary v;
        v.name = "generic";
        v.classes = {
            detail::widget_class("GTopContainer", true),
            detail::widget_class("GArea", true),
            detail::widget_class("GLabel", false),
            detail::widget_class("GText", false, {{"value", PropertyKind::Text}},
                                 {{"GChangedEvent", {"value"}}}),
            detail::widget_class("GList", false,
                                 {{"items", PropertyKind::Text},
                                  {"selected", PropertyKind::Text}},
                                 {{"GSelectEvent", {"item"}}}),
            detail::widget_class("GButton", false, {}, {{"GActionEvent", {}}}),
        };
        return v;
    }();
    return vocab;
}

inline const Vocabulary& builtin_target_vocabulary(FamilyId family) {
    static const Vocabulary html = [] {
        Vocabulary v;
        v.name = "html-desktop";
        v.classes = {
            detail::widget_class("page", true),
            detail::widget_class("div", true),
            detail::widget_class("form", true),
            detail::widget_class("fieldset", true),
            detail::widget_class("label", false),
            detail::widget_class("input-text", false, {{"value", PropertyKind::Text}},
                                 {{"change", {"value"}}}),
            detail::widget_class("select", false,
                                 {{"items", PropertyKind::Text},
                                  {"selected", PropertyKind::Text}},
                                 {{"change", {"item"}}}),
            detail::widget_class("button", false, {}, {{"click", {}}}),
            detail::widget_class("submit", false, {}, {{"click", {}}}),
            detail::widget_class("reset", false, {}, {{"click", {}}}),
        };
        return v;
    }();
    static const Vocabulary wml = [] {
        Vocabulary v;
        v.name = "wml-phone";
        v.classes = {
            detail::widget_class("deck", true),
            detail::widget_class("card", true),
            detail::widget_class("text", false),
            detail::widget_class("input", false, {{"value", PropertyKind::Text}},
                                 {{"changed", {"value"}}}),
            detail::widget_class("select", false,
                                 {{"items", PropertyKind::Text},
                                  {"selected", PropertyKind::Text}},
                                 {{"picked", {"item"}}}),
            detail::widget_class("do-action", false, {}, {{"accepted", {}}}),
        };
        return v;
    }();
    static const Vocabulary voice = [] {
        Vocabulary v;
        v.name = "voice";
        v.classes = {
            detail::widget_class("dialog", true),
            detail::widget_class("voice-form", true),
            detail::widget_class("prompt", false),
            detail::widget_class("field-spoken", false, {{"value", PropertyKind::Text}},
                                 {{"filled", {"value"}}}),
            detail::widget_class("field-choice", false,
                                 {{"items", PropertyKind::Text},
                                  {"selected", PropertyKind::Text}},
                                 {{"chosen", {"item"}}}),
            detail::widget_class("confirm-action", false, {}, {{"confirmed", {}}}),
        };
        return v;
    }();
    switch (family) {
        case FamilyId::HtmlDesktop: return html;
        case FamilyId::WmlPhone: return wml;
        case FamilyId::Voice: return voice;
    }
    return html;
}

inline const MappingTable& builtin_mapping_table(FamilyId family) {
    static const MappingTable html = [] {
        MappingTable t;
        t.family = FamilyId::HtmlDesktop;
        t.entries = {
            {"GTopContainer", {{"page", true, {}}}},
            {"GArea", {{"div", true, {}}, {"form", false, {}}, {"fieldset", false, {}}}},
            {"GLabel", {{"label", true, {}}}},
            {"GText", {{"input-text", true, {}}}},
            {"GList", {{"select", true, {}}}},
            {"GButton", {{"button", true, {}}, {"submit", false, {}}, {"reset", false, {}}}},
        };
        t.event_renames = {{"GActionEvent", "click"},
                           {"GChangedEvent", "change"},
                           {"GSelectEvent", "change"}};
        return t;
    }();
    static const MappingTable wml = [] {
        MappingTable t;
        t.family = FamilyId::WmlPhone;
        t.entries = {
            {"GTopContainer", {{"deck", true, {}}}},
            {"GArea", {{"card", true, {}}}},
            {"GLabel", {{"text", true, {}}}},
            {"GText", {{"input", true, {}}}},
            {"GList", {{"select", true, {}}}},
            {"GButton", {{"do-action", true, {}}}},
        };
        t.event_renames = {{"GActionEvent", "accepted"},
                           {"GChangedEvent", "changed"},
                           {"GSelectEvent", "picked"}};
        return t;
    }();
    static const MappingTable voice = [] {
        MappingTable t;
        t.family = FamilyId::Voice;
        t.entries = {
            {"GTopContainer", {{"dialog", true, {}}}},
            {"GArea", {{"voice-form", true, {}}}},
            {"GLabel", {{"prompt", true, {}}}},
            {"GText", {{"field-spoken", true, {}}}},
            {"GList", {{"field-choice", true, {}}}},
            {"GButton", {{"confirm-action", true, {}}}},
        };
        t.event_renames = {{"GActionEvent", "confirmed"},
                           {"GChangedEvent", "filled"},
                           {"GSelectEvent", "chosen"}};
        return t;
    }();
    switch (family) {
        case FamilyId::HtmlDesktop: return html;
        case FamilyId::WmlPhone: return wml;
        case FamilyId::Voice: return voice;
    }
    return html;
}

/// Options legal for a generic class on one family, default first. Throws
/// UnknownClassError when the table has no entry for the class.
inline std::vector<TargetOption> mapping_options(const MappingTable& table,
                                                 const std::string& generic_class) {
    auto it = table.entries.find(generic_class);
    if (it == table.entries.end()) throw UnknownClassError(generic_class);
    std::vector<TargetOption> options = it->second;
    std::stable_sort(options.begin(), options.end(),
                     [](const TargetOption& a, const TargetOption& b) {
                         return a.is_default && !b.is_default;
                     });
    return options;
}

inline std::vector<TargetOption> mapping_options(const std::string& generic_class,
                                                 FamilyId family) {
    return mapping_options(builtin_mapping_table(family), generic_class);
}

// ---------------------------------------------------------------------------
// Document validation
// ---------------------------------------------------------------------------

namespace detail {

inline void validate_structure(const Interface& itf, const Structure& structure,
                               const Vocabulary& vocab, std::vector<Diagnostic>& out) {
    std::set<std::string> seen;
    for_each_part(structure, [&](const Part& p) {
        if (!seen.insert(p.name).second)
            out.push_back(make_error(diag::kDuplicatePartName,
                                     "duplicate part name '" + p.name + "'", p.pos.line,
                                     p.pos.column));
        const WidgetClassDef* def = vocab.find_class(p.widget_class);
        if (!def) {
            out.push_back(make_error(diag::kUnknownClass,
                                     "unknown widget class '" + p.widget_class + "' on part '" +
                                         p.name + "'",
                                     p.pos.line, p.pos.column));
            return;
        }
        if (!def->container && !p.children.empty())
            out.push_back(make_error(diag::kNonContainerHasChildren,
                                     "part '" + p.name + "' of non-container class '" +
                                         p.widget_class + "' has children",
                                     p.pos.line, p.pos.column));
    });
    (void)itf;
}

inline void validate_binding(const Interface& itf, const PropertyBinding& b,
                             const Vocabulary& vocab, std::vector<Diagnostic>& out) {
    if (b.selector_kind == SelectorKind::PartName) {
        const Part* part = find_part_any_structure(itf, b.selector);
        if (!part) {
            out.push_back(make_error(diag::kUnresolvedPartRef,
                                     "style selector names unknown part '" + b.selector + "'",
                                     b.pos.line, b.pos.column));
            return;
        }
        const WidgetClassDef* def = vocab.find_class(part->widget_class);
        if (def && !def->allows_property(b.property_name) &&
            !is_mapping_hint_property(b.property_name))
            out.push_back(make_error(diag::kUnknownProperty,
                                     "property '" + b.property_name + "' is not allowed for class '" +
                                         part->widget_class + "' (part '" + b.selector + "')",
                                     b.pos.line, b.pos.column));
    } else {
        const WidgetClassDef* def = vocab.find_class(b.selector);
        if (!def) {
            out.push_back(make_error(diag::kUnknownClass,
                                     "style selector names unknown class '" + b.selector + "'",
                                     b.pos.line, b.pos.column));
            return;
        }
        if (!def->allows_property(b.property_name) && !is_mapping_hint_property(b.property_name))
            out.push_back(make_error(diag::kUnknownProperty,
                                     "property '" + b.property_name + "' is not allowed for class '" +
                                         b.selector + "'",
                                     b.pos.line, b.pos.column));
    }
    if (b.value_kind == ValueKind::ContentRef && !find_constant(itf, b.value))
        out.push_back(make_error(diag::kDanglingContentRef,
                                 "content reference to missing constant '" + b.value + "'",
                                 b.pos.line, b.pos.column));
}

inline void check_part_ref(const Interface& itf, const std::string& part_name,
                           const char* role, const SourcePos& pos,
                           std::vector<Diagnostic>& out) {
    if (!find_part_any_structure(itf, part_name))
        out.push_back(make_error(diag::kUnresolvedPartRef,
                                 std::string(role) + " references unknown part '" + part_name +
                                     "'",
                                 pos.line, pos.column));
}

inline void check_event_allowed(const Interface& itf, const std::string& part_name,
                                const std::string& event_class, const Vocabulary& vocab,
                                const SourcePos& pos, std::vector<Diagnostic>& out) {
    const Part* part = find_part_any_structure(itf, part_name);
    if (!part) return;  // unresolved ref reported separately
    const WidgetClassDef* def = vocab.find_class(part->widget_class);
    if (def && !def->find_event(event_class))
        out.push_back(make_error(diag::kUnknownEvent,
                                 "event class '" + event_class + "' is not allowed for class '" +
                                     part->widget_class + "' (part '" + part_name + "')",
                                 pos.line, pos.column));
}

inline void validate_rule(const Interface& itf, const Rule& rule, const Vocabulary& vocab,
                          std::vector<Diagnostic>& out) {
    if (rule.actions.empty())
        out.push_back(make_error(diag::kRuleWithoutActions, "rule has no actions", rule.pos.line,
                                 rule.pos.column));
    if (rule.condition.source_part) {
        check_part_ref(itf, *rule.condition.source_part, "rule condition", rule.pos, out);
        check_event_allowed(itf, *rule.condition.source_part, rule.condition.event_class, vocab,
                            rule.pos, out);
    }
    for (const Action& action : rule.actions) {
        if (const auto* set = std::get_if<SetPropertyAction>(&action)) {
            check_part_ref(itf, set->part, "property action", rule.pos, out);
        } else if (const auto* call = std::get_if<CallExternalAction>(&action)) {
            for (const ArgRef& arg : call->args)
                if (arg.kind == ArgRef::Kind::PropertyRef)
                    check_part_ref(itf, arg.part, "call argument", rule.pos, out);
        } else if (const auto* fire = std::get_if<FireEventAction>(&action)) {
            check_part_ref(itf, fire->source_part, "event action", rule.pos, out);
            check_event_allowed(itf, fire->source_part, fire->event_class, vocab, rule.pos, out);
        } else if (const auto* re = std::get_if<RestructureAction>(&action)) {
            if (re->op == RestructureAction::Op::AddChild) {
                check_part_ref(itf, re->parent, "restructure action", rule.pos, out);
                for_each_part(re->subtree, [&](const Part& p) {
                    if (!vocab.find_class(p.widget_class))
                        out.push_back(make_error(diag::kUnknownClass,
                                                 "unknown widget class '" + p.widget_class +
                                                     "' on part '" + p.name + "'",
                                                 p.pos.line, p.pos.column));
                });
            } else {
                check_part_ref(itf, re->part, "restructure action", rule.pos, out);
            }
        }
    }
}

}  // namespace detail

/// Structural validation of a document against a vocabulary. Returns the
/// full diagnostic list (never throws); empty means valid. Checks widget
/// classes, container rules, name uniqueness, style selectors and property
/// legality, content references, and behavior part/event references.
/// Mapping-hint properties (g:map-to:<family>) are always legal.
inline std::vector<Diagnostic> validate_document(const UimlDocument& doc,
                                                 const Vocabulary& vocab) {
    std::vector<Diagnostic> out;
    std::set<std::string> interface_names;
    for (const Interface& itf : doc.interfaces) {
        if (!interface_names.insert(itf.name).second)
            out.push_back(make_error(diag::kDuplicateInterfaceName,
                                     "duplicate interface name '" + itf.name + "'", itf.pos.line,
                                     itf.pos.column));
        for (const Structure& s : itf.structures)
            detail::validate_structure(itf, s, vocab, out);
        for (const Style& style : itf.styles)
            for (const PropertyBinding& b : style.bindings)
                detail::validate_binding(itf, b, vocab, out);
        for (const ContentSection& section : itf.contents) {
            std::set<std::string> constant_names;
            for (const ContentConstant& c : section.constants)
                if (!constant_names.insert(c.name).second)
                    out.push_back(make_error(diag::kDuplicateConstantName,
                                             "duplicate constant name '" + c.name + "'",
                                             c.pos.line, c.pos.column));
        }
        for (const Behavior& behavior : itf.behaviors)
            for (const Rule& rule : behavior.rules)
                detail::validate_rule(itf, rule, vocab, out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Vocabulary and mapping files (JSON)
// ---------------------------------------------------------------------------

struct VocabularyLoadResult {
    std::optional<Vocabulary> vocabulary;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return vocabulary.has_value(); }
};

/// Reads a vocabulary from its JSON schema:
///   {name, classes:[{name, container, properties:[{name,kind}],
///                    events:[{class,dataKeys}]}]}
inline VocabularyLoadResult load_vocabulary(const std::string& json_text) {
    VocabularyLoadResult result;
    auto schema_error = [&](const std::string& message) {
        result.diagnostics.push_back(make_error(diag::kVocabularySchema, message));
    };
    nlohmann::json root = nlohmann::json::parse(json_text, nullptr, false);
    if (root.is_discarded() || !root.is_object()) {
        schema_error("vocabulary file is not a JSON object");
        return result;
    }
    Vocabulary vocab;
    vocab.name = root.value("name", "");
    if (!root.contains("classes") || !root["classes"].is_array()) {
        schema_error("vocabulary file needs a 'classes' array");
        return result;
    }
    for (const auto& jclass : root["classes"]) {
        if (!jclass.is_object() || !jclass.contains("name") || !jclass["name"].is_string()) {
            schema_error("every class needs a string 'name'");
            continue;
        }
        WidgetClassDef def;
        def.name = jclass["name"].get<std::string>();
        def.container = jclass.value("container", false);
        std::set<std::string> property_names;
        for (const auto& jprop : jclass.value("properties", nlohmann::json::array())) {
            if (!jprop.is_object() || !jprop.contains("name")) {
                schema_error("class '" + def.name + "': malformed property entry");
                continue;
            }
            PropertyDef p;
            p.name = jprop["name"].get<std::string>();
            auto kind = property_kind_from_string(jprop.value("kind", "text"));
            if (!kind) {
                schema_error("class '" + def.name + "': unknown property kind '" +
                             jprop.value("kind", "") + "'");
                continue;
            }
            p.kind = *kind;
            if (!property_names.insert(p.name).second) {
                schema_error("class '" + def.name + "': duplicate property '" + p.name + "'");
                continue;
            }
            def.properties.push_back(std::move(p));
        }
        std::set<std::string> event_names;
        for (const auto& jevent : jclass.value("events", nlohmann::json::array())) {
            if (!jevent.is_object() || !jevent.contains("class")) {
                schema_error("class '" + def.name + "': malformed event entry");
                continue;
            }
            EventDef e;
            e.event_class = jevent["class"].get<std::string>();
            for (const auto& jkey : jevent.value("dataKeys", nlohmann::json::array()))
                e.data_keys.push_back(jkey.get<std::string>());
            if (!event_names.insert(e.event_class).second) {
                schema_error("class '" + def.name + "': duplicate event '" + e.event_class + "'");
                continue;
            }
            def.events.push_back(std::move(e));
        }
        if (vocab.find_class(def.name)) {
            result.diagnostics.push_back(make_error(
                diag::kDuplicateVocabularyClass, "duplicate class '" + def.name + "'"));
            continue;
        }
        vocab.classes.push_back(std::move(def));
    }
    if (!has_errors(result.diagnostics)) result.vocabulary = std::move(vocab);
    return result;
}

inline std::string save_vocabulary(const Vocabulary& vocab) {
    nlohmann::json root;
    root["name"] = vocab.name;
    root["classes"] = nlohmann::json::array();
    for (const WidgetClassDef& def : vocab.classes) {
        nlohmann::json jclass;
        jclass["name"] = def.name;
        jclass["container"] = def.container;
        jclass["properties"] = nlohmann::json::array();
        for (const PropertyDef& p : def.properties)
            jclass["properties"].push_back({{"name", p.name}, {"kind", to_string(p.kind)}});
        jclass["events"] = nlohmann::json::array();
        for (const EventDef& e : def.events)
            jclass["events"].push_back({{"class", e.event_class}, {"dataKeys", e.data_keys}});
        root["classes"].push_back(std::move(jclass));
    }
    return root.dump(2) + "\n";
}

struct MappingLoadResult {
    std::optional<MappingTable> table;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return table.has_value(); }
};

/// Reads a mapping table from its JSON schema:
///   {family, entries:{GenericClass:[{target, default, renames:{...}}]},
///    eventRenames:{GenericEvent: targetEvent}}
/// Target classes are checked against `target_vocab` when given.
inline MappingLoadResult load_mapping_table(const std::string& json_text,
                                            const Vocabulary* target_vocab = nullptr) {
    MappingLoadResult result;
    auto schema_error = [&](const std::string& message) {
        result.diagnostics.push_back(make_error(diag::kMappingSchema, message));
    };
    nlohmann::json root = nlohmann::json::parse(json_text, nullptr, false);
    if (root.is_discarded() || !root.is_object()) {
        schema_error("mapping file is not a JSON object");
        return result;
    }
    MappingTable table;
    if (!root.contains("family") || !root["family"].is_string()) {
        schema_error("mapping file needs a string 'family'");
        return result;
    }
    auto family = family_from_string(root["family"].get<std::string>());
    if (!family) {
        result.diagnostics.push_back(make_error(
            diag::kUnknownFamily, "unknown family '" + root["family"].get<std::string>() + "'"));
        return result;
    }
    table.family = *family;
    if (!root.contains("entries") || !root["entries"].is_object()) {
        schema_error("mapping file needs an 'entries' object");
        return result;
    }
    for (const auto& [generic_class, joptions] : root["entries"].items()) {
        if (!joptions.is_array() || joptions.empty()) {
            schema_error("entry '" + generic_class + "' needs a nonempty option array");
            continue;
        }
        std::vector<TargetOption> options;
        std::size_t default_count = 0;
        for (const auto& joption : joptions) {
            if (!joption.is_object() || !joption.contains("target")) {
                schema_error("entry '" + generic_class + "': malformed option");
                continue;
            }
            TargetOption option;
            option.target_class = joption["target"].get<std::string>();
            option.is_default = joption.value("default", false);
            if (option.is_default) ++default_count;
            for (const auto& [from, to] : joption.value("renames", nlohmann::json::object()).items())
                option.property_renames[from] = to.get<std::string>();
            if (target_vocab && !target_vocab->find_class(option.target_class))
                schema_error("entry '" + generic_class + "': target class '" +
                             option.target_class + "' is not in the target vocabulary");
            options.push_back(std::move(option));
        }
        if (default_count != 1)
            schema_error("entry '" + generic_class + "' must flag exactly one default option");
        table.entries[generic_class] = std::move(options);
    }
    for (const auto& [from, to] : root.value("eventRenames", nlohmann::json::object()).items())
        table.event_renames[from] = to.get<std::string>();
    if (!has_errors(result.diagnostics)) result.table = std::move(table);
    return result;
}

}  // namespace uiml
