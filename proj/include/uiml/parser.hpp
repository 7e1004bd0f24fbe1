#pragma once

// UIML text <-> UimlDocument. The reader accepts the documented UIML subset
// (prolog and DOCTYPE lines are skipped), recovers from structural errors to
// report up to kMaxDiagnostics problems, and captures <peers>/<template>
// verbatim. The writer produces the canonical form: 2-space indentation,
// fixed attribute order, UTF-8, trailing newline.

#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uiml/document.hpp"
#include "uiml/xml.hpp"

namespace uiml {

inline constexpr std::size_t kMaxDiagnostics = 50;

struct ParseResult {
    std::optional<UimlDocument> document;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return document.has_value(); }
};

namespace detail {

struct ParseAbort {};  // thrown internally when the diagnostic cap is hit

class UimlParser {
public:
    UimlParser(std::string_view input, std::string source_name)
        : scanner_(input), source_name_(std::move(source_name)) {}

    ParseResult run() {
        ParseResult result;
        try {
            parse_document();
        } catch (const ParseAbort&) {
            // Diagnostic cap reached; fall through with what we have.
        }
        result.diagnostics = std::move(diagnostics_);
        if (!has_errors(result.diagnostics)) {
            doc_.source_name = source_name_;
            result.document = std::move(doc_);
        }
        return result;
    }

private:
    xml::Scanner scanner_;
    std::string source_name_;
    UimlDocument doc_;
    std::vector<Diagnostic> diagnostics_;
    xml::Token cur_;
    bool fatal_ = false;

    // ------------------------------------------------------------------
    // Diagnostics and token plumbing
    // ------------------------------------------------------------------

    void report(Diagnostic d) {
        diagnostics_.push_back(std::move(d));
        if (diagnostics_.size() >= kMaxDiagnostics) throw ParseAbort{};
    }

    void error_at(const char* code, std::string message, std::size_t line, std::size_t col) {
        report(make_error(code, std::move(message), line, col));
    }

    void error_at(const char* code, std::string message, const xml::Token& t) {
        error_at(code, std::move(message), t.line, t.column);
    }

    /// Advances to the next token; a scanner error is recorded once and
    /// makes every subsequent token Eof.
    void next_token() {
        if (fatal_) {
            cur_.kind = xml::Token::Kind::Eof;
            return;
        }
        if (!scanner_.next(cur_)) {
            fatal_ = true;
            report(scanner_.error());
            cur_.kind = xml::Token::Kind::Eof;
        }
    }

    static const std::string* attr(const xml::Token& t, const char* name) {
        for (const auto& a : t.attributes)
            if (a.name == name) return &a.value;
        return nullptr;
    }

    std::string require_attr(const xml::Token& t, const char* name) {
        if (const std::string* v = attr(t, name)) return *v;
        error_at(diag::kMissingAttribute,
                 "<" + t.name + "> is missing required attribute '" + name + "'", t);
        return {};
    }

    static SourcePos pos_of(const xml::Token& t) { return SourcePos{t.line, t.column}; }

    // ------------------------------------------------------------------
    // Generic element traversal
    // ------------------------------------------------------------------

    /// Consumes tokens until the matching close of `open` (which must be an
    /// OpenTag already consumed). Child elements are passed to `on_child`,
    /// which must consume the whole child. Character data goes to
    /// `text_sink` when given, otherwise non-whitespace text is an error.
    template <typename OnChild>
    void parse_children(const xml::Token open, OnChild&& on_child,
                        std::string* text_sink = nullptr) {
        for (;;) {
            next_token();
            switch (cur_.kind) {
                case xml::Token::Kind::CloseTag:
                    if (cur_.name != open.name) {
                        fatal_ = true;
                        error_at(diag::kXmlMalformed,
                                 "expected </" + open.name + ">, found </" + cur_.name + ">",
                                 cur_);
                        cur_.kind = xml::Token::Kind::Eof;
                    }
                    return;
                case xml::Token::Kind::Eof:
                    if (!fatal_) {
                        fatal_ = true;
                        error_at(diag::kXmlMalformed,
                                 "unexpected end of input; <" + open.name + "> is not closed",
                                 open);
                    }
                    return;
                case xml::Token::Kind::Misc:
                    break;
                case xml::Token::Kind::Text:
                    if (text_sink)
                        *text_sink += cur_.text;
                    else if (!cur_.whitespace_only)
                        error_at(diag::kUnknownElement,
                                 "unexpected text inside <" + open.name + ">", cur_);
                    break;
                case xml::Token::Kind::OpenTag:
                case xml::Token::Kind::SelfCloseTag:
                    on_child(cur_);
                    if (fatal_) return;
                    break;
            }
        }
    }

    /// Skips the rest of an element whose OpenTag was just consumed.
    void skip_element(const xml::Token open) {
        parse_children(open, [&](const xml::Token& child) {
            if (child.kind == xml::Token::Kind::OpenTag) skip_element(child);
        }, nullptr);
    }

    void unknown_element(const xml::Token& child, const std::string& parent) {
        error_at(diag::kUnknownElement,
                 "unknown element <" + child.name + "> inside <" + parent + ">", child);
        if (child.kind == xml::Token::Kind::OpenTag) skip_element(child);
    }

    /// Collects the text content of an element that may not contain child
    /// elements (e.g. <constant>, <data>, <arg> literals).
    std::string parse_text_only(const xml::Token open) {
        std::string text;
        parse_children(open, [&](const xml::Token& child) {
            unknown_element(child, open.name);
        }, &text);
        return text;
    }

    // ------------------------------------------------------------------
    // Document
    // ------------------------------------------------------------------

    void parse_document() {
        // Locate the root element.
        for (;;) {
            next_token();
            if (cur_.kind == xml::Token::Kind::Misc) continue;
            if (cur_.kind == xml::Token::Kind::Text && cur_.whitespace_only) continue;
            break;
        }
        if (cur_.kind == xml::Token::Kind::Eof) {
            if (!fatal_)
                error_at(diag::kXmlMalformed, "missing root element", 1, 1);
            return;
        }
        if (cur_.kind != xml::Token::Kind::OpenTag &&
            cur_.kind != xml::Token::Kind::SelfCloseTag) {
            error_at(diag::kXmlMalformed, "expected root element", cur_);
            return;
        }
        if (cur_.name != "uiml") {
            error_at(diag::kUnknownElement, "expected root element <uiml>, found <" + cur_.name + ">",
                     cur_);
            return;
        }
        if (cur_.kind == xml::Token::Kind::OpenTag) {
            xml::Token root = cur_;
            parse_children(root, [&](const xml::Token& child) { parse_top_level(child); });
        }
        check_interface_names();

        // Nothing but trailing whitespace/comments may follow the root.
        for (;;) {
            next_token();
            if (cur_.kind == xml::Token::Kind::Eof) return;
            if (cur_.kind == xml::Token::Kind::Misc) continue;
            if (cur_.kind == xml::Token::Kind::Text && cur_.whitespace_only) continue;
            error_at(diag::kXmlMalformed, "content after the root element", cur_);
            return;
        }
    }

    void parse_top_level(const xml::Token& child) {
        if (child.name == "head") {
            if (child.kind == xml::Token::Kind::OpenTag) parse_head(child);
        } else if (child.name == "interface") {
            parse_interface(child);
        } else if (child.name == "peers") {
            capture_fragment(child, doc_.preserved_peers);
        } else if (child.name == "template") {
            capture_fragment(child, doc_.preserved_templates);
        } else {
            unknown_element(child, "uiml");
        }
    }

    void check_interface_names() {
        std::set<std::string> seen;
        for (const Interface& itf : doc_.interfaces)
            if (!seen.insert(itf.name).second)
                error_at(diag::kDuplicateInterfaceName,
                         "duplicate interface name '" + itf.name + "'", itf.pos.line,
                         itf.pos.column);
    }

    /// Slices the raw bytes of an opaque element (tags included). Multiple
    /// fragments of the same kind are joined with '\n'.
    void capture_fragment(const xml::Token open, std::string& sink) {
        std::size_t begin = open.begin;
        std::size_t end = open.end;
        if (open.kind == xml::Token::Kind::OpenTag) {
            std::size_t depth = 1;
            while (depth > 0) {
                next_token();
                if (cur_.kind == xml::Token::Kind::Eof) {
                    if (!fatal_) {
                        fatal_ = true;
                        error_at(diag::kXmlMalformed,
                                 "unexpected end of input; <" + open.name + "> is not closed",
                                 open);
                    }
                    return;
                }
                if (cur_.kind == xml::Token::Kind::OpenTag) ++depth;
                if (cur_.kind == xml::Token::Kind::CloseTag) --depth;
            }
            if (cur_.name != open.name) {
                fatal_ = true;
                error_at(diag::kXmlMalformed,
                         "expected </" + open.name + ">, found </" + cur_.name + ">", cur_);
                return;
            }
            end = cur_.end;
        }
        std::string fragment(scanner_.input().substr(begin, end - begin));
        if (!sink.empty()) sink += '\n';
        sink += fragment;
    }

    // ------------------------------------------------------------------
    // Head
    // ------------------------------------------------------------------

    void parse_head(const xml::Token open) {
        parse_children(open, [&](const xml::Token& child) {
            if (child.name != "meta") {
                unknown_element(child, "head");
                return;
            }
            MetaEntry entry;
            entry.name = require_attr(child, "name");
            if (const std::string* c = attr(child, "content")) entry.content = *c;
            if (attr(child, "name") && entry.name.empty())
                error_at(diag::kMissingAttribute, "<meta> attribute 'name' must be nonempty",
                         child);
            doc_.head.push_back(std::move(entry));
            if (child.kind == xml::Token::Kind::OpenTag) skip_element(child);
        });
    }

    // ------------------------------------------------------------------
    // Interface and its sections
    // ------------------------------------------------------------------

    void parse_interface(const xml::Token open) {
        Interface itf;
        itf.pos = pos_of(open);
        if (const std::string* n = attr(open, "name")) itf.name = *n;
        if (open.kind == xml::Token::Kind::OpenTag) {
            parse_children(open, [&](const xml::Token& child) {
                if (child.name == "structure") {
                    Structure s;
                    if (child.kind == xml::Token::Kind::OpenTag) {
                        parse_children(child, [&](const xml::Token& grand) {
                            if (grand.name == "part")
                                s.roots.push_back(parse_part(grand));
                            else
                                unknown_element(grand, "structure");
                        });
                    }
                    check_part_names(s);
                    itf.structures.push_back(std::move(s));
                } else if (child.name == "style") {
                    itf.styles.push_back(parse_style(child));
                } else if (child.name == "content") {
                    itf.contents.push_back(parse_content(child));
                } else if (child.name == "behavior") {
                    itf.behaviors.push_back(parse_behavior(child));
                } else {
                    unknown_element(child, "interface");
                }
            });
        }
        doc_.interfaces.push_back(std::move(itf));
    }

    Part parse_part(const xml::Token open) {
        Part part;
        part.pos = pos_of(open);
        part.name = require_attr(open, "name");
        part.widget_class = require_attr(open, "class");
        if (attr(open, "name") && part.name.empty())
            error_at(diag::kMissingAttribute, "<part> attribute 'name' must be nonempty", open);
        if (attr(open, "class") && part.widget_class.empty())
            error_at(diag::kMissingAttribute, "<part> attribute 'class' must be nonempty", open);
        if (open.kind == xml::Token::Kind::OpenTag) {
            parse_children(open, [&](const xml::Token& child) {
                if (child.name == "part")
                    part.children.push_back(parse_part(child));
                else
                    unknown_element(child, "part");
            });
        }
        return part;
    }

    void check_part_names(const Structure& s) {
        std::set<std::string> seen;
        for_each_part(s, [&](const Part& p) {
            if (!seen.insert(p.name).second)
                error_at(diag::kDuplicatePartName, "duplicate part name '" + p.name + "'",
                         p.pos.line, p.pos.column);
        });
    }

    Style parse_style(const xml::Token open) {
        Style style;
        if (open.kind != xml::Token::Kind::OpenTag) return style;
        parse_children(open, [&](const xml::Token& child) {
            if (child.name == "property")
                style.bindings.push_back(parse_binding(child));
            else
                unknown_element(child, "style");
        });
        return style;
    }

    PropertyBinding parse_binding(const xml::Token open) {
        PropertyBinding b;
        b.pos = pos_of(open);
        const std::string* part_sel = attr(open, "part-name");
        const std::string* class_sel = attr(open, "class-name");
        if (part_sel && class_sel) {
            error_at(diag::kMalformedBehavior,
                     "<property> may not have both 'part-name' and 'class-name'", open);
        } else if (!part_sel && !class_sel) {
            error_at(diag::kMalformedBehavior,
                     "<property> needs a 'part-name' or 'class-name' selector", open);
        }
        if (class_sel) {
            b.selector_kind = SelectorKind::ClassName;
            b.selector = *class_sel;
        } else if (part_sel) {
            b.selector = *part_sel;
        }
        b.property_name = require_attr(open, "name");

        if (open.kind != xml::Token::Kind::OpenTag) return b;
        std::string text;
        bool have_ref = false;
        parse_children(open, [&](const xml::Token& child) {
            if (child.name == "reference") {
                if (have_ref)
                    error_at(diag::kMalformedBehavior,
                             "<property> may contain at most one <reference>", child);
                have_ref = true;
                b.value_kind = ValueKind::ContentRef;
                b.value = require_attr(child, "constant");
                if (child.kind == xml::Token::Kind::OpenTag) skip_element(child);
            } else {
                unknown_element(child, "property");
            }
        }, &text);
        if (have_ref) {
            if (text.find_first_not_of(" \t\r\n") != std::string::npos)
                error_at(diag::kMalformedBehavior,
                         "<property> may not mix text with <reference>", open);
        } else {
            b.value = std::move(text);
        }
        return b;
    }

    ContentSection parse_content(const xml::Token open) {
        ContentSection section;
        if (open.kind != xml::Token::Kind::OpenTag) return section;
        parse_children(open, [&](const xml::Token& child) {
            if (child.name != "constant") {
                unknown_element(child, "content");
                return;
            }
            ContentConstant c;
            c.pos = pos_of(child);
            c.name = require_attr(child, "name");
            if (child.kind == xml::Token::Kind::OpenTag) c.value = parse_text_only(child);
            for (const ContentConstant& prev : section.constants)
                if (prev.name == c.name)
                    error_at(diag::kDuplicateConstantName,
                             "duplicate constant name '" + c.name + "'", child);
            section.constants.push_back(std::move(c));
        });
        return section;
    }

    // ------------------------------------------------------------------
    // Behavior
    // ------------------------------------------------------------------

    Behavior parse_behavior(const xml::Token open) {
        Behavior behavior;
        if (open.kind != xml::Token::Kind::OpenTag) return behavior;
        parse_children(open, [&](const xml::Token& child) {
            if (child.name == "rule")
                behavior.rules.push_back(parse_rule(child));
            else
                unknown_element(child, "behavior");
        });
        return behavior;
    }

    Rule parse_rule(const xml::Token open) {
        Rule rule;
        rule.pos = pos_of(open);
        bool have_condition = false;
        if (open.kind == xml::Token::Kind::OpenTag) {
            parse_children(open, [&](const xml::Token& child) {
                if (child.name == "condition") {
                    if (have_condition)
                        error_at(diag::kMalformedBehavior,
                                 "<rule> may contain only one <condition>", child);
                    have_condition = true;
                    rule.condition = parse_condition(child);
                } else if (child.name == "action") {
                    if (child.kind == xml::Token::Kind::OpenTag) parse_actions(child, rule.actions);
                } else {
                    unknown_element(child, "rule");
                }
            });
        }
        if (!have_condition)
            error_at(diag::kMalformedBehavior, "<rule> is missing its <condition>", open);
        if (rule.actions.empty())
            error_at(diag::kRuleWithoutActions, "<rule> must contain at least one action", open);
        return rule;
    }

    Condition parse_condition(const xml::Token open) {
        Condition cond;
        bool have_event = false;
        if (open.kind == xml::Token::Kind::OpenTag) {
            parse_children(open, [&](const xml::Token& child) {
                if (child.name == "event") {
                    if (have_event)
                        error_at(diag::kMalformedBehavior,
                                 "<condition> may contain only one <event>", child);
                    have_event = true;
                    cond.event_class = require_attr(child, "class");
                    if (const std::string* p = attr(child, "part-name")) cond.source_part = *p;
                    if (child.kind == xml::Token::Kind::OpenTag) skip_element(child);
                } else if (child.name == "op") {
                    parse_equal_op(child, cond);
                } else {
                    unknown_element(child, "condition");
                }
            });
        }
        if (!have_event)
            error_at(diag::kMalformedBehavior, "<condition> is missing its <event>", open);
        return cond;
    }

    void parse_equal_op(const xml::Token open, Condition& cond) {
        const std::string op_name = require_attr(open, "name");
        if (op_name != "equal")
            error_at(diag::kMalformedBehavior, "unsupported <op name=\"" + op_name + "\">", open);
        cond.kind = Condition::Kind::EventDataEquals;
        bool have_key = false, have_value = false;
        if (open.kind != xml::Token::Kind::OpenTag) {
            error_at(diag::kMalformedBehavior, "<op> needs <data> and <constant> children", open);
            return;
        }
        parse_children(open, [&](const xml::Token& child) {
            if (child.name == "data") {
                have_key = true;
                cond.data_key = require_attr(child, "key");
                if (child.kind == xml::Token::Kind::OpenTag) skip_element(child);
            } else if (child.name == "constant") {
                have_value = true;
                if (child.kind == xml::Token::Kind::OpenTag)
                    cond.expected = parse_text_only(child);
            } else {
                unknown_element(child, "op");
            }
        });
        if (!have_key || !have_value)
            error_at(diag::kMalformedBehavior, "<op> needs <data> and <constant> children", open);
    }

    void parse_actions(const xml::Token open, std::vector<Action>& out) {
        parse_children(open, [&](const xml::Token& child) {
            if (child.name == "property") {
                SetPropertyAction a;
                const std::string* part_sel = attr(child, "part-name");
                if (!part_sel)
                    error_at(diag::kMissingAttribute,
                             "action <property> is missing required attribute 'part-name'",
                             child);
                else
                    a.part = *part_sel;
                a.property_name = require_attr(child, "name");
                if (child.kind == xml::Token::Kind::OpenTag) a.value = parse_text_only(child);
                out.emplace_back(std::move(a));
            } else if (child.name == "call") {
                CallExternalAction a;
                a.function = require_attr(child, "name");
                if (child.kind == xml::Token::Kind::OpenTag) parse_call_args(child, a.args);
                out.emplace_back(std::move(a));
            } else if (child.name == "event") {
                FireEventAction a;
                a.event_class = require_attr(child, "class");
                a.source_part = require_attr(child, "part-name");
                if (child.kind == xml::Token::Kind::OpenTag) {
                    parse_children(child, [&](const xml::Token& grand) {
                        if (grand.name != "data") {
                            unknown_element(grand, "event");
                            return;
                        }
                        std::string key = require_attr(grand, "key");
                        std::string value;
                        if (grand.kind == xml::Token::Kind::OpenTag)
                            value = parse_text_only(grand);
                        a.data.emplace_back(std::move(key), std::move(value));
                    });
                }
                out.emplace_back(std::move(a));
            } else if (child.name == "restructure") {
                parse_restructure(child, out);
            } else {
                unknown_element(child, "action");
            }
        });
    }

    void parse_call_args(const xml::Token open, std::vector<ArgRef>& args) {
        parse_children(open, [&](const xml::Token& child) {
            if (child.name != "arg") {
                unknown_element(child, "call");
                return;
            }
            ArgRef arg;
            const std::string* part_sel = attr(child, "part-name");
            const std::string* prop = attr(child, "property");
            if (part_sel || prop) {
                if (!part_sel || !prop)
                    error_at(diag::kMalformedBehavior,
                             "<arg> property reference needs both 'part-name' and 'property'",
                             child);
                arg.kind = ArgRef::Kind::PropertyRef;
                if (part_sel) arg.part = *part_sel;
                if (prop) arg.property_name = *prop;
                if (child.kind == xml::Token::Kind::OpenTag) {
                    std::string text = parse_text_only(child);
                    if (text.find_first_not_of(" \t\r\n") != std::string::npos)
                        error_at(diag::kMalformedBehavior,
                                 "<arg> may not mix text with a property reference", child);
                }
            } else if (child.kind == xml::Token::Kind::OpenTag) {
                arg.text = parse_text_only(child);
            }
            args.push_back(std::move(arg));
        });
    }

    void parse_restructure(const xml::Token open, std::vector<Action>& out) {
        RestructureAction a;
        const std::string op = require_attr(open, "op");
        if (op == "add-child") {
            a.op = RestructureAction::Op::AddChild;
            a.parent = require_attr(open, "parent");
            bool have_subtree = false;
            if (open.kind == xml::Token::Kind::OpenTag) {
                parse_children(open, [&](const xml::Token& child) {
                    if (child.name == "part") {
                        if (have_subtree)
                            error_at(diag::kMalformedBehavior,
                                     "<restructure> may contain only one <part>", child);
                        have_subtree = true;
                        a.subtree = parse_part(child);
                        Structure probe;
                        probe.roots.push_back(a.subtree);
                        check_part_names(probe);
                    } else {
                        unknown_element(child, "restructure");
                    }
                });
            }
            if (!have_subtree)
                error_at(diag::kMalformedBehavior,
                         "<restructure op=\"add-child\"> needs a <part> subtree", open);
        } else if (op == "remove") {
            a.part = require_attr(open, "part-name");
            if (open.kind == xml::Token::Kind::OpenTag) skip_element(open);
        } else {
            error_at(diag::kMalformedBehavior, "unsupported <restructure op=\"" + op + "\">",
                     open);
            if (open.kind == xml::Token::Kind::OpenTag) skip_element(open);
        }
        out.emplace_back(std::move(a));
    }
};

// ---------------------------------------------------------------------------
// Canonical serialization
// ---------------------------------------------------------------------------

class UimlWriter {
public:
    explicit UimlWriter(std::ostream& os) : os_(os) {}

    void write(const UimlDocument& doc) {
        const bool empty = doc.head.empty() && doc.interfaces.empty() &&
                           doc.preserved_peers.empty() && doc.preserved_templates.empty();
        if (empty) {
            os_ << "<uiml/>\n";
            return;
        }
        os_ << "<uiml>\n";
        if (!doc.head.empty()) {
            line(1, "<head>");
            for (const MetaEntry& m : doc.head)
                line(2, "<meta name=\"" + xml::escape_attr(m.name) + "\" content=\"" +
                            xml::escape_attr(m.content) + "\"/>");
            line(1, "</head>");
        }
        for (const Interface& itf : doc.interfaces) write_interface(itf);
        if (!doc.preserved_peers.empty()) line(1, doc.preserved_peers);
        if (!doc.preserved_templates.empty()) line(1, doc.preserved_templates);
        os_ << "</uiml>\n";
    }

private:
    std::ostream& os_;

    void indent(int depth) {
        for (int i = 0; i < depth; ++i) os_ << "  ";
    }

    void line(int depth, const std::string& text) {
        indent(depth);
        os_ << text << '\n';
    }

    void write_interface(const Interface& itf) {
        std::string open = "<interface";
        if (!itf.name.empty()) open += " name=\"" + xml::escape_attr(itf.name) + "\"";
        const bool empty = itf.structures.empty() && itf.styles.empty() &&
                           itf.contents.empty() && itf.behaviors.empty();
        if (empty) {
            line(1, open + "/>");
            return;
        }
        line(1, open + ">");
        for (const Structure& s : itf.structures) {
            if (s.roots.empty()) {
                line(2, "<structure/>");
                continue;
            }
            line(2, "<structure>");
            for (const Part& p : s.roots) write_part(p, 3);
            line(2, "</structure>");
        }
        for (const Style& s : itf.styles) {
            if (s.bindings.empty()) {
                line(2, "<style/>");
                continue;
            }
            line(2, "<style>");
            for (const PropertyBinding& b : s.bindings) write_binding(b, 3);
            line(2, "</style>");
        }
        for (const ContentSection& c : itf.contents) {
            if (c.constants.empty()) {
                line(2, "<content/>");
                continue;
            }
            line(2, "<content>");
            for (const ContentConstant& k : c.constants) {
                std::string open_tag = "<constant name=\"" + xml::escape_attr(k.name) + "\"";
                if (k.value.empty())
                    line(3, open_tag + "/>");
                else
                    line(3, open_tag + ">" + xml::escape_text(k.value) + "</constant>");
            }
            line(2, "</content>");
        }
        for (const Behavior& b : itf.behaviors) write_behavior(b);
        line(1, "</interface>");
    }

    void write_part(const Part& p, int depth) {
        std::string open = "<part name=\"" + xml::escape_attr(p.name) + "\" class=\"" +
                           xml::escape_attr(p.widget_class) + "\"";
        if (p.children.empty()) {
            line(depth, open + "/>");
            return;
        }
        line(depth, open + ">");
        for (const Part& child : p.children) write_part(child, depth + 1);
        line(depth, "</part>");
    }

    void write_binding(const PropertyBinding& b, int depth) {
        std::string open = "<property ";
        open += b.selector_kind == SelectorKind::PartName ? "part-name=\"" : "class-name=\"";
        open += xml::escape_attr(b.selector) + "\" name=\"" +
                xml::escape_attr(b.property_name) + "\"";
        if (b.value_kind == ValueKind::ContentRef) {
            line(depth, open + ">");
            line(depth + 1, "<reference constant=\"" + xml::escape_attr(b.value) + "\"/>");
            line(depth, "</property>");
        } else if (b.value.empty()) {
            line(depth, open + "/>");
        } else {
            line(depth, open + ">" + xml::escape_text(b.value) + "</property>");
        }
    }

    void write_behavior(const Behavior& behavior) {
        if (behavior.rules.empty()) {
            line(2, "<behavior/>");
            return;
        }
        line(2, "<behavior>");
        for (const Rule& r : behavior.rules) {
            line(3, "<rule>");
            write_condition(r.condition);
            line(4, "<action>");
            for (const Action& a : r.actions) write_action(a);
            line(4, "</action>");
            line(3, "</rule>");
        }
        line(2, "</behavior>");
    }

    void write_condition(const Condition& c) {
        line(4, "<condition>");
        std::string ev = "<event class=\"" + xml::escape_attr(c.event_class) + "\"";
        if (c.source_part) ev += " part-name=\"" + xml::escape_attr(*c.source_part) + "\"";
        line(5, ev + "/>");
        if (c.kind == Condition::Kind::EventDataEquals) {
            line(5, "<op name=\"equal\">");
            line(6, "<data key=\"" + xml::escape_attr(c.data_key) + "\"/>");
            if (c.expected.empty())
                line(6, "<constant/>");
            else
                line(6, "<constant>" + xml::escape_text(c.expected) + "</constant>");
            line(5, "</op>");
        }
        line(4, "</condition>");
    }

    void write_action(const Action& action) {
        if (const auto* set = std::get_if<SetPropertyAction>(&action)) {
            std::string open = "<property part-name=\"" + xml::escape_attr(set->part) +
                               "\" name=\"" + xml::escape_attr(set->property_name) + "\"";
            if (set->value.empty())
                line(5, open + "/>");
            else
                line(5, open + ">" + xml::escape_text(set->value) + "</property>");
        } else if (const auto* call = std::get_if<CallExternalAction>(&action)) {
            std::string open = "<call name=\"" + xml::escape_attr(call->function) + "\"";
            if (call->args.empty()) {
                line(5, open + "/>");
                return;
            }
            line(5, open + ">");
            for (const ArgRef& arg : call->args) {
                if (arg.kind == ArgRef::Kind::PropertyRef)
                    line(6, "<arg part-name=\"" + xml::escape_attr(arg.part) + "\" property=\"" +
                                xml::escape_attr(arg.property_name) + "\"/>");
                else if (arg.text.empty())
                    line(6, "<arg/>");
                else
                    line(6, "<arg>" + xml::escape_text(arg.text) + "</arg>");
            }
            line(5, "</call>");
        } else if (const auto* fire = std::get_if<FireEventAction>(&action)) {
            std::string open = "<event class=\"" + xml::escape_attr(fire->event_class) +
                               "\" part-name=\"" + xml::escape_attr(fire->source_part) + "\"";
            if (fire->data.empty()) {
                line(5, open + "/>");
                return;
            }
            line(5, open + ">");
            for (const auto& [key, value] : fire->data) {
                std::string data_open = "<data key=\"" + xml::escape_attr(key) + "\"";
                if (value.empty())
                    line(6, data_open + "/>");
                else
                    line(6, data_open + ">" + xml::escape_text(value) + "</data>");
            }
            line(5, "</event>");
        } else if (const auto* re = std::get_if<RestructureAction>(&action)) {
            if (re->op == RestructureAction::Op::Remove) {
                line(5, "<restructure op=\"remove\" part-name=\"" + xml::escape_attr(re->part) +
                            "\"/>");
            } else {
                line(5, "<restructure op=\"add-child\" parent=\"" + xml::escape_attr(re->parent) +
                            "\">");
                write_part(re->subtree, 6);
                line(5, "</restructure>");
            }
        }
    }
};

}  // namespace detail

/// Parses UIML text. On success `document` is set and `diagnostics` holds at
/// most warnings; on failure `document` is empty and `diagnostics` explains
/// why (up to kMaxDiagnostics entries, in source order).
inline ParseResult parse_uiml(std::string_view input, std::string source_name = "") {
    return detail::UimlParser(input, std::move(source_name)).run();
}

/// Canonical serialization: deterministic, 2-space indent, fixed attribute
/// order, trailing newline. parse(serialize(doc)) reproduces `doc` exactly.
inline std::string serialize(const UimlDocument& doc) {
    std::ostringstream os;
    detail::UimlWriter(os).write(doc);
    return os.str();
}

}  // namespace uiml
