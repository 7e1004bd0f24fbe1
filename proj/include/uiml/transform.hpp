#pragma once

// Second pipeline stage: generic UIML -> platform-specific UIML. A
// MappingPlan picks one target class per part (external hint beats
// in-document hint beats table default); to_platform applies it, preserving
// tree shape, child order, and part names while renaming classes, mapped
// properties and event classes. split() runs the whole thing for a list of
// families.
//
// In-document hints are style bindings whose property name is
// `g:map-to:<family>`; they are consumed here and never reach platform
// output.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "uiml/diagnostics.hpp"
#include "uiml/document.hpp"
#include "uiml/vocabulary.hpp"

namespace uiml {

/// Requested target classes per part and family.
struct HintSet {
    std::map<std::string, std::map<FamilyId, std::string>> by_part;

    bool empty() const { return by_part.empty(); }

    void set(const std::string& part, FamilyId family, std::string target_class) {
        by_part[part][family] = std::move(target_class);
    }

    const std::string* find(const std::string& part, FamilyId family) const {
        auto it = by_part.find(part);
        if (it == by_part.end()) return nullptr;
        auto jt = it->second.find(family);
        return jt == it->second.end() ? nullptr : &jt->second;
    }

    friend bool operator==(const HintSet&, const HintSet&) = default;
};

struct HintExtraction {
    HintSet hints;
    std::vector<Diagnostic> diagnostics;
};

/// Collects `g:map-to:<family>` hints from style bindings. Hints must use a
/// part-name selector and a literal value; offenders are diagnosed and
/// skipped. The last hint for a (part, family) pair wins.
inline HintExtraction extract_hints(const UimlDocument& doc) {
    HintExtraction result;
    for (const Interface& itf : doc.interfaces) {
        for (const Style& style : itf.styles) {
            for (const PropertyBinding& b : style.bindings) {
                if (!is_mapping_hint_property(b.property_name)) continue;
                if (b.selector_kind != SelectorKind::PartName) {
                    result.diagnostics.push_back(
                        make_error(diag::kMalformedHint,
                                   "mapping hint '" + b.property_name +
                                       "' must use a part-name selector",
                                   b.pos.line, b.pos.column));
                    continue;
                }
                if (b.value_kind != ValueKind::Literal || b.value.empty()) {
                    result.diagnostics.push_back(
                        make_error(diag::kMalformedHint,
                                   "mapping hint '" + b.property_name +
                                       "' needs a literal nonempty target class",
                                   b.pos.line, b.pos.column));
                    continue;
                }
                const std::string family_name =
                    b.property_name.substr(std::string(kMappingHintPrefix).size());
                auto family = family_from_string(family_name);
                if (!family) {
                    result.diagnostics.push_back(
                        make_error(diag::kUnknownFamily,
                                   "mapping hint names unknown family '" + family_name + "'",
                                   b.pos.line, b.pos.column));
                    continue;
                }
                result.hints.set(b.selector, *family, b.value);
            }
        }
    }
    return result;
}

struct HintLoadResult {
    std::optional<HintSet> hints;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return hints.has_value(); }
};

/// Reads an external hints file: {"parts": {PartName: {family: target}}}.
inline HintLoadResult load_hints(const std::string& json_text) {
    HintLoadResult result;
    nlohmann::json root = nlohmann::json::parse(json_text, nullptr, false);
    if (root.is_discarded() || !root.is_object()) {
        result.diagnostics.push_back(
            make_error(diag::kMalformedHint, "hints file is not a JSON object"));
        return result;
    }
    HintSet hints;
    for (const auto& [part, jfamilies] : root.value("parts", nlohmann::json::object()).items()) {
        if (!jfamilies.is_object()) {
            result.diagnostics.push_back(make_error(
                diag::kMalformedHint, "hints for part '" + part + "' must be an object"));
            continue;
        }
        for (const auto& [family_name, jtarget] : jfamilies.items()) {
            auto family = family_from_string(family_name);
            if (!family) {
                result.diagnostics.push_back(make_error(
                    diag::kUnknownFamily,
                    "hint for part '" + part + "' names unknown family '" + family_name + "'"));
                continue;
            }
            if (!jtarget.is_string() || jtarget.get<std::string>().empty()) {
                result.diagnostics.push_back(make_error(
                    diag::kMalformedHint,
                    "hint for part '" + part + "' needs a nonempty target class string"));
                continue;
            }
            hints.set(part, *family, jtarget.get<std::string>());
        }
    }
    if (!has_errors(result.diagnostics)) result.hints = std::move(hints);
    return result;
}

/// Per-part realization choice on one family, plus the rename context
/// to_platform needs to apply it.
struct MappingPlan {
    struct ClassChoice {
        std::string target_class;
        std::map<std::string, std::string> property_renames;

        friend bool operator==(const ClassChoice&, const ClassChoice&) = default;
    };

    FamilyId family = FamilyId::HtmlDesktop;
    std::map<std::string, std::string> choices;  // part name -> target class
    std::map<std::string, std::map<std::string, std::string>> property_renames;  // per part
    std::map<std::string, ClassChoice> class_defaults;  // per generic class
    std::map<std::string, std::string> event_renames;

    const std::string* target_for(const std::string& part_name) const {
        auto it = choices.find(part_name);
        return it == choices.end() ? nullptr : &it->second;
    }

    std::string rename_property(const std::string& part_name, const std::string& property) const {
        auto it = property_renames.find(part_name);
        if (it == property_renames.end()) return property;
        auto jt = it->second.find(property);
        return jt == it->second.end() ? property : jt->second;
    }

    std::string rename_event(const std::string& event_class) const {
        auto it = event_renames.find(event_class);
        return it == event_renames.end() ? event_class : it->second;
    }
};

struct PlanResult {
    std::optional<MappingPlan> plan;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return plan.has_value(); }
};

namespace detail {

inline std::string options_summary(const std::vector<TargetOption>& options) {
    std::string out;
    for (const TargetOption& o : options) {
        if (!out.empty()) out += ", ";
        out += o.target_class;
    }
    return out;
}

/// Visits every part the plan must cover: the compiled (first) structure of
/// each interface plus restructure subtrees reachable from behavior rules.
template <typename F>
void for_each_plannable_part(const UimlDocument& doc, F&& visit) {
    for (const Interface& itf : doc.interfaces) {
        if (!itf.structures.empty()) for_each_part(itf.structures.front(), visit);
        for (const Behavior& behavior : itf.behaviors)
            for (const Rule& rule : behavior.rules)
                for (const Action& action : rule.actions)
                    if (const auto* re = std::get_if<RestructureAction>(&action))
                        if (re->op == RestructureAction::Op::AddChild)
                            for_each_part(re->subtree, visit);
    }
}

}  // namespace detail

/// Builds the mapping plan for one family. Precedence per part:
/// external hint, then in-document hint, then the table's default option.
/// A requested class that is not a legal option is an IllegalMapping error.
inline PlanResult plan(const UimlDocument& doc, FamilyId family, const HintSet& doc_hints,
                       const HintSet& external_hints, const MappingTable& table) {
    PlanResult result;
    MappingPlan p;
    p.family = family;
    p.event_renames = table.event_renames;
    for (const auto& [generic_class, options] : table.entries) {
        std::vector<TargetOption> ordered = mapping_options(table, generic_class);
        p.class_defaults[generic_class] = {ordered.front().target_class,
                                           ordered.front().property_renames};
    }

    std::set<std::string> hinted_parts;
    for (const auto& [part, families] : external_hints.by_part)
        if (families.count(family)) hinted_parts.insert(part);
    for (const auto& [part, families] : doc_hints.by_part)
        if (families.count(family)) hinted_parts.insert(part);

    detail::for_each_plannable_part(doc, [&](const Part& part) {
        hinted_parts.erase(part.name);
        auto entry = table.entries.find(part.widget_class);
        if (entry == table.entries.end()) {
            if (!p.choices.count(part.name))
                result.diagnostics.push_back(make_error(
                    diag::kIllegalMapping,
                    "no mapping options for class '" + part.widget_class + "' (part '" +
                        part.name + "') on family " + to_string(family),
                    part.pos.line, part.pos.column));
            return;
        }
        const std::vector<TargetOption> options = mapping_options(table, part.widget_class);
        const std::string* requested = external_hints.find(part.name, family);
        if (!requested) requested = doc_hints.find(part.name, family);

        const TargetOption* chosen = nullptr;
        if (requested) {
            for (const TargetOption& o : options)
                if (o.target_class == *requested) chosen = &o;
            if (!chosen) {
                result.diagnostics.push_back(make_error(
                    diag::kIllegalMapping,
                    "part '" + part.name + "': '" + *requested + "' is not a legal " +
                        to_string(family) + " mapping for class '" + part.widget_class +
                        "' (allowed: " + detail::options_summary(options) + ")",
                    part.pos.line, part.pos.column));
                return;
            }
        } else {
            chosen = &options.front();  // default-first ordering
        }

        auto existing = p.choices.find(part.name);
        if (existing != p.choices.end()) {
            // Same part name reused (e.g. across interfaces): the first
            // choice stands but must be legal for this class too.
            bool legal = false;
            for (const TargetOption& o : options)
                if (o.target_class == existing->second) legal = true;
            if (!legal)
                result.diagnostics.push_back(make_error(
                    diag::kIllegalMapping,
                    "part name '" + part.name + "' maps to '" + existing->second +
                        "', which is not legal for class '" + part.widget_class + "'",
                    part.pos.line, part.pos.column));
            return;
        }
        p.choices[part.name] = chosen->target_class;
        if (!chosen->property_renames.empty())
            p.property_renames[part.name] = chosen->property_renames;
    });

    for (const std::string& part : hinted_parts)
        result.diagnostics.push_back(make_warning(
            diag::kMalformedHint, "hint for unknown part '" + part + "' ignored"));

    if (!has_errors(result.diagnostics)) result.plan = std::move(p);
    return result;
}

inline PlanResult plan(const UimlDocument& doc, FamilyId family, const HintSet& doc_hints,
                       const HintSet& external_hints) {
    return plan(doc, family, doc_hints, external_hints, builtin_mapping_table(family));
}

namespace detail {

inline Part map_part(const Part& part, const MappingPlan& plan) {
    Part out;
    out.name = part.name;
    out.pos = part.pos;
    const std::string* target = plan.target_for(part.name);
    if (!target)
        throw std::invalid_argument("mapping plan is not total: part '" + part.name + "'");
    out.widget_class = *target;
    out.children.reserve(part.children.size());
    for (const Part& child : part.children) out.children.push_back(map_part(child, plan));
    return out;
}

/// Distinct (target class, renames) choices, in first-use order, among the
/// interface's plannable parts of one generic class.
inline std::vector<MappingPlan::ClassChoice> class_choices_in_use(
    const UimlDocument& doc, const Interface& itf, const std::string& generic_class,
    const MappingPlan& plan) {
    std::vector<MappingPlan::ClassChoice> used;
    auto note = [&](const Part& part) {
        if (part.widget_class != generic_class) return;
        const std::string* target = plan.target_for(part.name);
        if (!target) return;
        for (const auto& choice : used)
            if (choice.target_class == *target) return;
        auto renames = plan.property_renames.find(part.name);
        used.push_back({*target, renames == plan.property_renames.end()
                                     ? std::map<std::string, std::string>{}
                                     : renames->second});
    };
    if (!itf.structures.empty()) for_each_part(itf.structures.front(), note);
    for (const Behavior& behavior : itf.behaviors)
        for (const Rule& rule : behavior.rules)
            for (const Action& action : rule.actions)
                if (const auto* re = std::get_if<RestructureAction>(&action))
                    if (re->op == RestructureAction::Op::AddChild)
                        for_each_part(re->subtree, note);
    (void)doc;
    return used;
}

inline Style map_style(const UimlDocument& doc, const Interface& itf, const Style& style,
                       const MappingPlan& plan) {
    Style out;
    for (const PropertyBinding& b : style.bindings) {
        if (is_mapping_hint_property(b.property_name)) continue;  // consumed
        if (b.selector_kind == SelectorKind::PartName) {
            PropertyBinding nb = b;
            nb.property_name = plan.rename_property(b.selector, b.property_name);
            out.bindings.push_back(std::move(nb));
            continue;
        }
        // Class selectors follow the classes actually chosen for parts of
        // that generic class; with none in use, the family default.
        std::vector<MappingPlan::ClassChoice> targets =
            class_choices_in_use(doc, itf, b.selector, plan);
        if (targets.empty()) {
            auto fallback = plan.class_defaults.find(b.selector);
            if (fallback == plan.class_defaults.end()) {
                out.bindings.push_back(b);  // class unknown to the table; left as-is
                continue;
            }
            targets.push_back(fallback->second);
        }
        for (const auto& choice : targets) {
            PropertyBinding nb = b;
            nb.selector = choice.target_class;
            auto rename = choice.property_renames.find(b.property_name);
            if (rename != choice.property_renames.end()) nb.property_name = rename->second;
            out.bindings.push_back(std::move(nb));
        }
    }
    return out;
}

inline Behavior map_behavior(const Behavior& behavior, const MappingPlan& plan) {
    Behavior out;
    for (const Rule& rule : behavior.rules) {
        Rule nr;
        nr.pos = rule.pos;
        nr.condition = rule.condition;
        nr.condition.event_class = plan.rename_event(rule.condition.event_class);
        for (const Action& action : rule.actions) {
            if (const auto* set = std::get_if<SetPropertyAction>(&action)) {
                SetPropertyAction na = *set;
                na.property_name = plan.rename_property(set->part, set->property_name);
                nr.actions.emplace_back(std::move(na));
            } else if (const auto* call = std::get_if<CallExternalAction>(&action)) {
                CallExternalAction na = *call;
                for (ArgRef& arg : na.args)
                    if (arg.kind == ArgRef::Kind::PropertyRef)
                        arg.property_name = plan.rename_property(arg.part, arg.property_name);
                nr.actions.emplace_back(std::move(na));
            } else if (const auto* fire = std::get_if<FireEventAction>(&action)) {
                FireEventAction na = *fire;
                na.event_class = plan.rename_event(fire->event_class);
                nr.actions.emplace_back(std::move(na));
            } else if (const auto* re = std::get_if<RestructureAction>(&action)) {
                RestructureAction na = *re;
                if (re->op == RestructureAction::Op::AddChild)
                    na.subtree = map_part(re->subtree, plan);
                nr.actions.emplace_back(std::move(na));
            }
        }
        out.rules.push_back(std::move(nr));
    }
    return out;
}

}  // namespace detail

/// Applies a mapping plan. The output's structure tree is node-for-node
/// isomorphic to the input's compiled structure: same part names, same child
/// order, classes replaced per plan. Only the first structure of each
/// interface is carried into platform output; styles have hint bindings
/// dropped and selectors/properties renamed; behavior event classes are
/// renamed per the family's event map.
///
/// Requires the plan to cover every part (throws std::invalid_argument
/// otherwise).
inline UimlDocument to_platform(const UimlDocument& doc, const MappingPlan& plan) {
    UimlDocument out;
    out.head = doc.head;
    out.preserved_peers = doc.preserved_peers;
    out.preserved_templates = doc.preserved_templates;
    out.source_name = doc.source_name;
    for (const Interface& itf : doc.interfaces) {
        Interface nitf;
        nitf.name = itf.name;
        nitf.pos = itf.pos;
        if (!itf.structures.empty()) {
            Structure ns;
            for (const Part& root : itf.structures.front().roots)
                ns.roots.push_back(detail::map_part(root, plan));
            nitf.structures.push_back(std::move(ns));
        }
        for (const Style& style : itf.styles)
            nitf.styles.push_back(detail::map_style(doc, itf, style, plan));
        nitf.contents = itf.contents;
        for (const Behavior& behavior : itf.behaviors)
            nitf.behaviors.push_back(detail::map_behavior(behavior, plan));
        out.interfaces.push_back(std::move(nitf));
    }
    return out;
}

struct SplitResult {
    std::vector<std::pair<FamilyId, UimlDocument>> documents;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

/// One platform document per requested family. In-document hints are
/// extracted once; per-family failures are aggregated into `diagnostics`
/// and skip only that family. Output order follows the family list; the
/// documents themselves do not depend on it.
inline SplitResult split(const UimlDocument& doc, const std::vector<FamilyId>& families,
                         const HintSet& external_hints = {}) {
    SplitResult result;
    HintExtraction extraction = extract_hints(doc);
    result.diagnostics = extraction.diagnostics;
    for (FamilyId family : families) {
        PlanResult planned = plan(doc, family, extraction.hints, external_hints);
        result.diagnostics.insert(result.diagnostics.end(), planned.diagnostics.begin(),
                                  planned.diagnostics.end());
        if (!planned.ok()) continue;
        result.documents.emplace_back(family, to_platform(doc, *planned.plan));
    }
    return result;
}

}  // namespace uiml
