#pragma once

// In-memory model of a UIML document: a <head> of metadata, one or more
// <interface> sections (structure / style / content / behavior), and the
// <peers>/<template> sections preserved verbatim as opaque fragments.
//
// Documents are immutable after construction by convention; every operation
// in this header is a pure query. Source positions (`pos`) are bookkeeping
// for diagnostics and are ignored by equality.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "uiml/diagnostics.hpp"

namespace uiml {

/// 1-based source position; {0,0} for synthesized nodes.
struct SourcePos {
    std::size_t line = 0;
    std::size_t column = 0;
};

struct MetaEntry {
    std::string name;
    std::string content;

    friend bool operator==(const MetaEntry& a, const MetaEntry& b) {
        return a.name == b.name && a.content == b.content;
    }
};

/// One node of a structure tree. `widget_class` is the UIML `class`
/// attribute; child order is significant and preserved through every
/// pipeline stage.
struct Part {
    std::string name;
    std::string widget_class;
    std::vector<Part> children;
    SourcePos pos;

    friend bool operator==(const Part& a, const Part& b) {
        return a.name == b.name && a.widget_class == b.widget_class &&
               a.children == b.children;
    }
};

struct Structure {
    std::vector<Part> roots;

    friend bool operator==(const Structure& a, const Structure& b) {
        return a.roots == b.roots;
    }
};

enum class SelectorKind { PartName, ClassName };
enum class ValueKind { Literal, ContentRef };

/// A <style> entry. The selector names either a part or a widget class;
/// the value is literal text or a reference into a <content> section.
struct PropertyBinding {
    SelectorKind selector_kind = SelectorKind::PartName;
    std::string selector;
    std::string property_name;
    ValueKind value_kind = ValueKind::Literal;
    std::string value;  // literal text, or the constant name for ContentRef
    SourcePos pos;

    friend bool operator==(const PropertyBinding& a, const PropertyBinding& b) {
        return a.selector_kind == b.selector_kind && a.selector == b.selector &&
               a.property_name == b.property_name && a.value_kind == b.value_kind &&
               a.value == b.value;
    }
};

struct Style {
    std::vector<PropertyBinding> bindings;

    friend bool operator==(const Style& a, const Style& b) {
        return a.bindings == b.bindings;
    }
};

struct ContentConstant {
    std::string name;
    std::string value;
    SourcePos pos;

    friend bool operator==(const ContentConstant& a, const ContentConstant& b) {
        return a.name == b.name && a.value == b.value;
    }
};

struct ContentSection {
    std::vector<ContentConstant> constants;

    friend bool operator==(const ContentSection& a, const ContentSection& b) {
        return a.constants == b.constants;
    }
};

/// Rule condition: either "event occurred" or "event occurred and one of its
/// data values equals an expected string".
struct Condition {
    enum class Kind { EventOccurs, EventDataEquals };
    Kind kind = Kind::EventOccurs;
    std::optional<std::string> source_part;  // absent matches any source
    std::string event_class;
    std::string data_key;  // EventDataEquals only
    std::string expected;  // EventDataEquals only

    friend bool operator==(const Condition& a, const Condition& b) {
        return a.kind == b.kind && a.source_part == b.source_part &&
               a.event_class == b.event_class && a.data_key == b.data_key &&
               a.expected == b.expected;
    }
};

struct SetPropertyAction {
    std::string part;
    std::string property_name;
    std::string value;

    friend bool operator==(const SetPropertyAction&, const SetPropertyAction&) = default;
};

/// Argument of a CallExternal action: literal text or a property read.
struct ArgRef {
    enum class Kind { Literal, PropertyRef };
    Kind kind = Kind::Literal;
    std::string text;           // Literal
    std::string part;           // PropertyRef
    std::string property_name;  // PropertyRef

    friend bool operator==(const ArgRef&, const ArgRef&) = default;
};

struct CallExternalAction {
    std::string function;
    std::vector<ArgRef> args;

    friend bool operator==(const CallExternalAction&, const CallExternalAction&) = default;
};

struct FireEventAction {
    std::string event_class;
    std::string source_part;
    std::vector<std::pair<std::string, std::string>> data;

    friend bool operator==(const FireEventAction&, const FireEventAction&) = default;
};

struct RestructureAction {
    enum class Op { AddChild, Remove };
    Op op = Op::Remove;
    std::string parent;  // AddChild
    Part subtree;        // AddChild
    std::string part;    // Remove

    friend bool operator==(const RestructureAction& a, const RestructureAction& b) {
        return a.op == b.op && a.parent == b.parent && a.subtree == b.subtree &&
               a.part == b.part;
    }
};

using Action = std::variant<SetPropertyAction, CallExternalAction, FireEventAction,
                            RestructureAction>;

struct Rule {
    Condition condition;
    std::vector<Action> actions;  // document order; must be nonempty in valid docs
    SourcePos pos;

    friend bool operator==(const Rule& a, const Rule& b) {
        return a.condition == b.condition && a.actions == b.actions;
    }
};

struct Behavior {
    std::vector<Rule> rules;  // document order is the dispatch order

    friend bool operator==(const Behavior& a, const Behavior& b) {
        return a.rules == b.rules;
    }
};

struct Interface {
    std::string name;
    std::vector<Structure> structures;
    std::vector<Style> styles;
    std::vector<ContentSection> contents;
    std::vector<Behavior> behaviors;
    SourcePos pos;

    friend bool operator==(const Interface& a, const Interface& b) {
        return a.name == b.name && a.structures == b.structures && a.styles == b.styles &&
               a.contents == b.contents && a.behaviors == b.behaviors;
    }
};

/// Whole-document model. `preserved_peers` / `preserved_templates` hold the
/// raw <peers>/<template> elements byte-for-byte (multiple occurrences are
/// joined with '\n'); they are carried through serialization untouched.
/// `source_name` is display-only and excluded from equality.
struct UimlDocument {
    std::vector<MetaEntry> head;
    std::vector<Interface> interfaces;
    std::string preserved_peers;
    std::string preserved_templates;
    std::string source_name;

    friend bool operator==(const UimlDocument& a, const UimlDocument& b) {
        return a.head == b.head && a.interfaces == b.interfaces &&
               a.preserved_peers == b.preserved_peers &&
               a.preserved_templates == b.preserved_templates;
    }
};

struct UnknownInterfaceError : std::runtime_error {
    explicit UnknownInterfaceError(const std::string& name)
        : std::runtime_error("unknown interface: " + name) {}
};

struct DanglingContentRefError : std::runtime_error {
    explicit DanglingContentRefError(const std::string& constant)
        : std::runtime_error("content reference to missing constant: " + constant) {}
};

// ---------------------------------------------------------------------------
// Traversal helpers
// ---------------------------------------------------------------------------

/// Preorder visit of a part subtree. Visitor: void(const Part&).
template <typename F>
void for_each_part(const Part& part, F&& visit) {
    visit(part);
    for (const Part& child : part.children) for_each_part(child, visit);
}

/// Preorder visit of every part of a structure.
template <typename F>
void for_each_part(const Structure& structure, F&& visit) {
    for (const Part& root : structure.roots) for_each_part(root, visit);
}

inline const Part* find_part_in(const Part& part, const std::string& name) {
    if (part.name == name) return &part;
    for (const Part& child : part.children)
        if (const Part* hit = find_part_in(child, name)) return hit;
    return nullptr;
}

inline const Part* find_part_in(const Structure& structure, const std::string& name) {
    for (const Part& root : structure.roots)
        if (const Part* hit = find_part_in(root, name)) return hit;
    return nullptr;
}

inline const Interface* find_interface(const UimlDocument& doc, const std::string& name) {
    for (const Interface& itf : doc.interfaces)
        if (itf.name == name) return &itf;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

/// Total number of parts in a structure, all depths.
inline std::size_t count_parts(const Structure& structure) {
    std::size_t n = 0;
    for_each_part(structure, [&](const Part&) { ++n; });
    return n;
}

/// Looks up a part by name in the first structure of the named interface.
/// Returns nullptr when the part (or the interface's structure) is absent.
/// Throws UnknownInterfaceError when the interface does not exist.
inline const Part* find_part(const UimlDocument& doc, const std::string& interface_name,
                             const std::string& part_name) {
    const Interface* itf = find_interface(doc, interface_name);
    if (!itf) throw UnknownInterfaceError(interface_name);
    if (itf->structures.empty()) return nullptr;
    return find_part_in(itf->structures.front(), part_name);
}

namespace detail {

/// Finds a part searching every structure of the interface in order.
inline const Part* find_part_any_structure(const Interface& itf, const std::string& name) {
    for (const Structure& s : itf.structures)
        if (const Part* hit = find_part_in(s, name)) return hit;
    return nullptr;
}

inline const std::string* find_constant(const Interface& itf, const std::string& name) {
    // Later sections/definitions win, mirroring the binding cascade.
    const std::string* found = nullptr;
    for (const ContentSection& section : itf.contents)
        for (const ContentConstant& c : section.constants)
            if (c.name == name) found = &c.value;
    return found;
}

inline std::string resolve_binding_value(const Interface& itf, const PropertyBinding& b) {
    if (b.value_kind == ValueKind::Literal) return b.value;
    const std::string* constant = find_constant(itf, b.value);
    if (!constant) throw DanglingContentRefError(b.value);
    return *constant;
}

}  // namespace detail

/// Resolves the effective value of `property_name` on `part_name` through the
/// style cascade: part-name bindings beat class-name bindings; within equal
/// specificity the last binding in document order wins. ContentRef values are
/// substituted from the interface's content constants.
///
/// Throws UnknownInterfaceError for a missing interface and
/// DanglingContentRefError when the winning binding references a missing
/// constant. Returns nullopt when no binding applies.
inline std::optional<std::string> resolve_property(const UimlDocument& doc,
                                                   const std::string& interface_name,
                                                   const std::string& part_name,
                                                   const std::string& property_name) {
    const Interface* itf = find_interface(doc, interface_name);
    if (!itf) throw UnknownInterfaceError(interface_name);

    const Part* part = detail::find_part_any_structure(*itf, part_name);
    const PropertyBinding* part_hit = nullptr;
    const PropertyBinding* class_hit = nullptr;
    for (const Style& style : itf->styles) {
        for (const PropertyBinding& b : style.bindings) {
            if (b.property_name != property_name) continue;
            if (b.selector_kind == SelectorKind::PartName && b.selector == part_name)
                part_hit = &b;
            else if (b.selector_kind == SelectorKind::ClassName && part &&
                     b.selector == part->widget_class)
                class_hit = &b;
        }
    }
    const PropertyBinding* winner = part_hit ? part_hit : class_hit;
    if (!winner) return std::nullopt;
    return detail::resolve_binding_value(*itf, *winner);
}

}  // namespace uiml
