#pragma once

// Minimal XML scanner for the UIML subset. Handles tags with quoted
// attributes, character data with entity references, comments, CDATA,
// prolog and DOCTYPE lines. No namespaces, no external entities, no DTD
// interpretation. Tokens carry 1-based positions and byte spans so callers
// can anchor diagnostics and slice verbatim source.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "uiml/diagnostics.hpp"

namespace uiml::xml {

inline std::string escape_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '\r': out += "&#13;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string escape_attr(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\n': out += "&#10;"; break;
            case '\t': out += "&#9;"; break;
            case '\r': out += "&#13;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Attribute {
    std::string name;
    std::string value;
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Token {
    enum class Kind { OpenTag, CloseTag, SelfCloseTag, Text, Misc, Eof };
    Kind kind = Kind::Eof;
    std::string name;                   // tag tokens
    std::vector<Attribute> attributes;  // OpenTag / SelfCloseTag
    std::string text;                   // Text: decoded character data
    bool whitespace_only = true;        // Text
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t begin = 0;  // byte span [begin, end) in the input
    std::size_t end = 0;
};

class Scanner {
public:
    explicit Scanner(std::string_view input) : in_(input) {
        // Skip a UTF-8 BOM if present.
        if (in_.size() >= 3 && in_.compare(0, 3, "\xEF\xBB\xBF") == 0) pos_ = 3;
    }

    /// Scans the next token. Returns false on a well-formedness error;
    /// `error()` then holds a UIML001 diagnostic.
    bool next(Token& out) {
        if (failed_) return false;
        out = Token{};
        skip_misc(out);
        if (failed_) return false;
        if (out.kind == Token::Kind::Misc) return true;

        out.line = line_;
        out.column = col_;
        out.begin = pos_;
        if (pos_ >= in_.size()) {
            out.kind = Token::Kind::Eof;
            out.end = pos_;
            return true;
        }
        if (in_[pos_] == '<') return scan_tag(out);
        return scan_text(out);
    }

    const Diagnostic& error() const { return error_; }
    std::string_view input() const { return in_; }

private:
    std::string_view in_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    bool failed_ = false;
    Diagnostic error_;

    bool fail(const std::string& message, std::size_t line, std::size_t col) {
        failed_ = true;
        error_ = make_error(diag::kXmlMalformed, message, line, col);
        return false;
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < in_.size() ? in_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (pos_ >= in_.size()) return;
        if (in_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    bool starts_with(const char* s) const {
        return in_.compare(pos_, std::char_traits<char>::length(s), s) == 0;
    }

    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
    static bool is_name_char(char c) {
        return !is_space(c) && c != '<' && c != '>' && c != '/' && c != '=' && c != '\0';
    }

    void skip_spaces() {
        while (pos_ < in_.size() && is_space(in_[pos_])) advance();
    }

    // Consumes comments, the XML prolog, and DOCTYPE as a single Misc token.
    void skip_misc(Token& out) {
        std::size_t start_line = line_, start_col = col_, start = pos_;
        bool consumed = false;
        for (;;) {
            if (starts_with("<!--")) {
                consumed = true;
                while (pos_ < in_.size() && !starts_with("-->")) advance();
                if (pos_ >= in_.size()) {
                    fail("unterminated comment", start_line, start_col);
                    return;
                }
                advance(); advance(); advance();
            } else if (starts_with("<?")) {
                consumed = true;
                while (pos_ < in_.size() && !starts_with("?>")) advance();
                if (pos_ >= in_.size()) {
                    fail("unterminated processing instruction", start_line, start_col);
                    return;
                }
                advance(); advance();
            } else if (starts_with("<!DOCTYPE") || starts_with("<!doctype")) {
                consumed = true;
                int bracket_depth = 0;
                char quote = '\0';
                while (pos_ < in_.size()) {
                    char c = in_[pos_];
                    if (quote != '\0') {
                        if (c == quote) quote = '\0';
                    } else if (c == '"' || c == '\'') {
                        quote = c;
                    } else if (c == '[') {
                        ++bracket_depth;
                    } else if (c == ']') {
                        --bracket_depth;
                    } else if (c == '>' && bracket_depth == 0) {
                        break;
                    }
                    advance();
                }
                if (pos_ >= in_.size()) {
                    fail("unterminated DOCTYPE", start_line, start_col);
                    return;
                }
                advance();  // '>'
            } else {
                break;
            }
        }
        if (consumed) {
            out.kind = Token::Kind::Misc;
            out.line = start_line;
            out.column = start_col;
            out.begin = start;
            out.end = pos_;
        }
    }

    bool scan_text(Token& out) {
        out.kind = Token::Kind::Text;
        std::string text;
        bool ws_only = true;
        while (pos_ < in_.size() && in_[pos_] != '<') {
            char c = in_[pos_];
            if (c == '&') {
                if (!decode_entity(text)) return false;
                ws_only = false;
                continue;
            }
            if (!is_space(c)) ws_only = false;
            text += c;
            advance();
        }
        out.text = std::move(text);
        out.whitespace_only = ws_only;
        out.end = pos_;
        return true;
    }

    bool decode_entity(std::string& sink) {
        std::size_t at_line = line_, at_col = col_;
        advance();  // '&'
        std::string entity;
        while (pos_ < in_.size() && in_[pos_] != ';' && entity.size() < 12) {
            entity += in_[pos_];
            advance();
        }
        if (peek() != ';')
            return fail("malformed entity reference", at_line, at_col);
        advance();  // ';'
        if (entity == "amp") sink += '&';
        else if (entity == "lt") sink += '<';
        else if (entity == "gt") sink += '>';
        else if (entity == "quot") sink += '"';
        else if (entity == "apos") sink += '\'';
        else if (!entity.empty() && entity[0] == '#') {
            unsigned long code = 0;
            try {
                code = entity[1] == 'x' || entity[1] == 'X'
                           ? std::stoul(entity.substr(2), nullptr, 16)
                           : std::stoul(entity.substr(1), nullptr, 10);
            } catch (const std::exception&) {
                return fail("malformed character reference &" + entity + ";", at_line, at_col);
            }
            append_utf8(sink, static_cast<unsigned>(code));
        } else {
            return fail("unknown entity &" + entity + ";", at_line, at_col);
        }
        return true;
    }

    static void append_utf8(std::string& out, unsigned cp) {
        if (cp <= 0x7F) {
            out += static_cast<char>(cp);
        } else if (cp <= 0x7FF) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp <= 0xFFFF) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    bool scan_tag(Token& out) {
        std::size_t tag_line = line_, tag_col = col_;
        if (starts_with("<![CDATA[")) {
            for (int i = 0; i < 9; ++i) advance();
            std::string text;
            while (pos_ < in_.size() && !starts_with("]]>")) {
                text += in_[pos_];
                advance();
            }
            if (pos_ >= in_.size()) return fail("unterminated CDATA section", tag_line, tag_col);
            advance(); advance(); advance();
            out.kind = Token::Kind::Text;
            out.whitespace_only = text.find_first_not_of(" \t\r\n") == std::string::npos;
            out.text = std::move(text);
            out.end = pos_;
            return true;
        }

        advance();  // '<'
        bool closing = false;
        if (peek() == '/') {
            closing = true;
            advance();
        }
        if (!is_name_char(peek()))
            return fail("expected element name after '<'", tag_line, tag_col);
        std::string name;
        while (is_name_char(peek())) {
            name += peek();
            advance();
        }
        out.name = std::move(name);

        if (closing) {
            skip_spaces();
            if (peek() != '>')
                return fail("malformed closing tag </" + out.name + ">", tag_line, tag_col);
            advance();
            out.kind = Token::Kind::CloseTag;
            out.end = pos_;
            return true;
        }

        // Attributes.
        for (;;) {
            skip_spaces();
            char c = peek();
            if (c == '\0') return fail("unterminated tag <" + out.name + ">", tag_line, tag_col);
            if (c == '>') {
                advance();
                out.kind = Token::Kind::OpenTag;
                out.end = pos_;
                return true;
            }
            if (c == '/') {
                advance();
                if (peek() != '>')
                    return fail("malformed tag <" + out.name + ">", tag_line, tag_col);
                advance();
                out.kind = Token::Kind::SelfCloseTag;
                out.end = pos_;
                return true;
            }
            Attribute attr;
            attr.line = line_;
            attr.column = col_;
            while (is_name_char(peek())) {
                attr.name += peek();
                advance();
            }
            if (attr.name.empty())
                return fail("malformed attribute in <" + out.name + ">", line_, col_);
            skip_spaces();
            if (peek() != '=')
                return fail("attribute '" + attr.name + "' is missing '='", attr.line, attr.column);
            advance();
            skip_spaces();
            char quote = peek();
            if (quote != '"' && quote != '\'')
                return fail("attribute '" + attr.name + "' value must be quoted", attr.line,
                            attr.column);
            advance();
            while (pos_ < in_.size() && peek() != quote) {
                if (peek() == '&') {
                    if (!decode_entity(attr.value)) return false;
                    continue;
                }
                attr.value += peek();
                advance();
            }
            if (peek() != quote)
                return fail("unterminated attribute value for '" + attr.name + "'", attr.line,
                            attr.column);
            advance();
            for (const Attribute& prev : out.attributes)
                if (prev.name == attr.name)
                    return fail("duplicate attribute '" + attr.name + "'", attr.line, attr.column);
            out.attributes.push_back(std::move(attr));
        }
    }
};

}  // namespace uiml::xml
