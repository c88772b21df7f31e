// Copyright 2026 The Gloss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// A small namespace-aware XML reader and writer, sufficient for the two
// location-event schemas. No DTDs, no external entities.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gloss/error.hpp"

namespace gloss::xml {

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(ErrorCode::NotWellFormed, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct Attribute {
    std::string qname;
    std::string local;
    std::string ns;  // empty for unprefixed attributes
    std::string value;

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct Node;

struct Element {
    std::string local;
    std::string ns;
    std::vector<Attribute> attributes;  // namespace declarations excluded
    std::vector<Node> children;
    std::size_t line = 0;

    const Attribute* attribute(std::string_view local_name) const {
        for (const auto& a : attributes)
            if (a.ns.empty() && a.local == local_name)
                return &a;
        return nullptr;
    }

    /// Concatenated character data of the direct text children.
    std::string text() const;

    /// True when there is non-whitespace character data among the children.
    bool has_significant_text() const;

    friend bool operator==(const Element&, const Element&) = default;
};

/// Pre-serialized markup, written out untouched. Only produced by callers
/// building documents; the reader never yields it.
struct Raw {
    std::string xml;

    friend bool operator==(const Raw&, const Raw&) = default;
};

struct Node {
    std::variant<Element, std::string, Raw> value;

    const Element* element() const { return std::get_if<Element>(&value); }
    const std::string* text() const { return std::get_if<std::string>(&value); }
    const Raw* raw() const { return std::get_if<Raw>(&value); }

    friend bool operator==(const Node&, const Node&) = default;
};

inline std::string Element::text() const {
    std::string out;
    for (const auto& c : children)
        if (const auto* t = c.text())
            out += *t;
    return out;
}

inline bool is_xml_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

inline bool Element::has_significant_text() const {
    for (const auto& c : children)
        if (const auto* t = c.text())
            for (char ch : *t)
                if (!is_xml_space(ch))
                    return true;
    return false;
}

struct Document {
    Element root;
    std::string declared_encoding;
    std::vector<std::string> warnings;
};

namespace detail {

inline void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
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

inline std::string latin1_to_utf8(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    for (unsigned char c : in)
        append_utf8(out, c);
    return out;
}

inline bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t n = 0;
        std::uint32_t cp = 0;
        if (c < 0x80) { ++i; continue; }
        if ((c & 0xE0) == 0xC0) { n = 1; cp = c & 0x1F; }
        else if ((c & 0xF0) == 0xE0) { n = 2; cp = c & 0x0F; }
        else if ((c & 0xF8) == 0xF0) { n = 3; cp = c & 0x07; }
        else return false;
        if (i + n >= s.size()) return false;
        for (std::size_t k = 1; k <= n; ++k) {
            const auto cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        if ((n == 1 && cp < 0x80) || (n == 2 && cp < 0x800) || (n == 3 && cp < 0x10000) || cp > 0x10FFFF ||
            (cp >= 0xD800 && cp <= 0xDFFF))
            return false;
        i += n + 1;
    }
    return true;
}

inline std::string_view trim(std::string_view s) noexcept {
    while (!s.empty() && is_xml_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_xml_space(s.back()))
        s.remove_suffix(1);
    return s;
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out)
        if (c >= 'A' && c <= 'Z')
            c = static_cast<char>(c - 'A' + 'a');
    return out;
}

inline bool is_name_start(unsigned char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == ':' || c >= 0x80;
}

inline bool is_name_char(unsigned char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

// Raw attribute as written, before namespace processing.
struct RawAttribute {
    std::string qname;
    std::string value;
};

class Reader {
public:
    explicit Reader(std::string_view text, std::vector<std::string>& warnings) : s_(text), warnings_(warnings) {}

    Element read_document() {
        skip_misc();
        if (at_end() || peek() != '<')
            fail("document has no root element");
        Scope root_scope;
        root_scope.bindings["xml"] = "http://www.w3.org/XML/1998/namespace";
        Element root = read_element(root_scope);
        skip_misc();
        if (!at_end())
            fail("content after the root element");
        return root;
    }

    /// Encoding named by the XML declaration; nullopt without a declaration.
    static std::optional<std::string> declared_encoding(std::string_view s) {
        if (s.substr(0, 5) != "<?xml")
            return std::nullopt;
        const auto end = s.find("?>");
        if (end == std::string_view::npos)
            return std::nullopt;
        const auto decl = s.substr(0, end);
        const auto at = decl.find("encoding");
        if (at == std::string_view::npos)
            return std::string();
        auto pos = decl.find_first_of("\"'", at);
        if (pos == std::string_view::npos)
            return std::string();
        const char q = decl[pos];
        const auto close = decl.find(q, pos + 1);
        if (close == std::string_view::npos)
            return std::string();
        return std::string(decl.substr(pos + 1, close - pos - 1));
    }

private:
    struct Scope {
        std::map<std::string, std::string, std::less<>> bindings;  // "" is the default namespace
    };

    bool at_end() const { return pos_ >= s_.size(); }
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }
    bool starts_with(std::string_view lit) const { return s_.substr(pos_, lit.size()) == lit; }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < s_.size(); ++i) {
            if (s_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, col_, what); }

    void skip_space() {
        while (!at_end() && is_xml_space(peek()))
            advance();
    }

    void skip_until(std::string_view terminator, const char* what) {
        const auto found = s_.find(terminator, pos_);
        if (found == std::string_view::npos)
            fail(std::string("unterminated ") + what);
        advance(found + terminator.size() - pos_);
    }

    void skip_misc() {
        for (;;) {
            skip_space();
            if (starts_with("<?")) {
                skip_until("?>", "processing instruction");
            } else if (starts_with("<!--")) {
                skip_comment();
            } else if (starts_with("<!DOCTYPE")) {
                fail("document type declarations are not supported");
            } else {
                return;
            }
        }
    }

    void skip_comment() {
        advance(4);
        const auto found = s_.find("--", pos_);
        if (found == std::string_view::npos)
            fail("unterminated comment");
        advance(found - pos_);
        if (!starts_with("-->"))
            fail("'--' inside comment");
        advance(3);
    }

    std::string read_name() {
        if (at_end() || !is_name_start(static_cast<unsigned char>(peek())))
            fail("expected a name");
        const std::size_t start = pos_;
        while (!at_end() && is_name_char(static_cast<unsigned char>(peek())))
            advance();
        return std::string(s_.substr(start, pos_ - start));
    }

    void read_reference(std::string& out) {
        advance();  // '&'
        if (peek() == '#') {
            advance();
            int base = 10;
            if (peek() == 'x') {
                base = 16;
                advance();
            }
            std::uint32_t cp = 0;
            std::size_t digits = 0;
            while (!at_end() && peek() != ';') {
                const char c = peek();
                int d = -1;
                if (c >= '0' && c <= '9') d = c - '0';
                else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
                else if (base == 16 && c >= 'A' && c <= 'F') d = c - 'A' + 10;
                if (d < 0)
                    fail("bad character reference");
                cp = cp * static_cast<std::uint32_t>(base) + static_cast<std::uint32_t>(d);
                if (cp > 0x10FFFF)
                    fail("character reference out of range");
                ++digits;
                advance();
            }
            if (digits == 0 || at_end())
                fail("bad character reference");
            advance();
            const bool allowed = cp == 0x9 || cp == 0xA || cp == 0xD || (cp >= 0x20 && cp <= 0xD7FF) ||
                                 (cp >= 0xE000 && cp <= 0xFFFD) || (cp >= 0x10000 && cp <= 0x10FFFF);
            if (!allowed)
                fail("character reference to a forbidden character");
            append_utf8(out, cp);
            return;
        }
        const std::string name = read_name();
        if (peek() != ';')
            fail("entity reference without ';'");
        advance();
        if (name == "lt") out += '<';
        else if (name == "gt") out += '>';
        else if (name == "amp") out += '&';
        else if (name == "quot") out += '"';
        else if (name == "apos") out += '\'';
        else fail("undeclared entity '" + name + "'");
    }

    void check_char(char c) {
        const auto u = static_cast<unsigned char>(c);
        if (u < 0x20 && c != '\t' && c != '\n' && c != '\r')
            fail("control character in document");
    }

    std::string read_attribute_value(const std::string& qname) {
        std::string out;
        const char q = peek();
        if (q != '"' && q != '\'') {
            // Unquoted values show up in hand-written documents; read up to
            // whitespace or the end of the tag and carry on, with a warning.
            const std::size_t start = pos_;
            while (!at_end() && !is_xml_space(peek()) && peek() != '>' && !(peek() == '/' && peek(1) == '>')) {
                if (peek() == '<' || peek() == '"' || peek() == '\'')
                    fail("malformed attribute value");
                advance();
            }
            if (pos_ == start)
                fail("attribute '" + qname + "' has no value");
            warnings_.push_back("line " + std::to_string(line_) + ": unquoted value for attribute '" + qname + "'");
            return std::string(s_.substr(start, pos_ - start));
        }
        advance();
        while (!at_end() && peek() != q) {
            const char c = peek();
            if (c == '<')
                fail("'<' in attribute value");
            if (c == '&') {
                read_reference(out);
                continue;
            }
            check_char(c);
            out += is_xml_space(c) ? ' ' : c;
            advance();
        }
        if (at_end())
            fail("unterminated attribute value");
        advance();
        return out;
    }

    static std::pair<std::string_view, std::string_view> split_qname(std::string_view qname) {
        const auto colon = qname.find(':');
        if (colon == std::string_view::npos)
            return {{}, qname};
        return {qname.substr(0, colon), qname.substr(colon + 1)};
    }

    std::string resolve(const Scope& scope, std::string_view prefix, bool is_attribute) const {
        if (prefix.empty() && is_attribute)
            return {};
        auto it = scope.bindings.find(prefix);
        if (it == scope.bindings.end()) {
            if (prefix.empty())
                return {};
            fail("unbound namespace prefix '" + std::string(prefix) + "'");
        }
        return it->second;
    }

    Element read_element(const Scope& parent_scope) {
        const std::size_t start_line = line_;
        advance();  // '<'
        const std::string qname = read_name();
        std::vector<RawAttribute> raw;
        bool self_closing = false;
        for (;;) {
            const bool had_space = !at_end() && is_xml_space(peek());
            skip_space();
            if (at_end())
                fail("unterminated start tag <" + qname + ">");
            if (peek() == '>') {
                advance();
                break;
            }
            if (peek() == '/' && peek(1) == '>') {
                advance(2);
                self_closing = true;
                break;
            }
            if (!had_space)
                fail("attributes must be separated by whitespace");
            std::string aname = read_name();
            skip_space();
            if (peek() != '=')
                fail("attribute '" + aname + "' has no value");
            advance();
            skip_space();
            std::string value = read_attribute_value(aname);
            for (const auto& r : raw)
                if (r.qname == aname)
                    fail("duplicate attribute '" + aname + "'");
            raw.push_back({std::move(aname), std::move(value)});
        }

        Scope scope = parent_scope;
        for (const auto& a : raw) {
            if (a.qname == "xmlns")
                scope.bindings[""] = a.value;
            else if (a.qname.rfind("xmlns:", 0) == 0) {
                if (a.value.empty())
                    fail("empty namespace binding for '" + a.qname + "'");
                scope.bindings[a.qname.substr(6)] = a.value;
            }
        }

        Element el;
        el.line = start_line;
        const auto [prefix, local] = split_qname(qname);
        if (local.empty() || local.find(':') != std::string_view::npos)
            fail("malformed element name '" + qname + "'");
        el.local = std::string(local);
        el.ns = resolve(scope, prefix, false);
        for (auto& a : raw) {
            if (a.qname == "xmlns" || a.qname.rfind("xmlns:", 0) == 0)
                continue;
            const auto [apfx, alocal] = split_qname(a.qname);
            Attribute attr{a.qname, std::string(alocal), resolve(scope, apfx, true), std::move(a.value)};
            for (const auto& other : el.attributes)
                if (other.local == attr.local && other.ns == attr.ns)
                    fail("duplicate attribute '" + a.qname + "'");
            el.attributes.push_back(std::move(attr));
        }
        if (self_closing)
            return el;

        std::string text;
        const auto flush = [&] {
            if (!text.empty()) {
                el.children.push_back(Node{std::move(text)});
                text.clear();
            }
        };
        for (;;) {
            if (at_end())
                fail("element <" + qname + "> is not closed");
            const char c = peek();
            if (c == '<') {
                if (starts_with("</")) {
                    advance(2);
                    const std::string closing = read_name();
                    if (closing != qname)
                        fail("end tag </" + closing + "> does not match <" + qname + ">");
                    skip_space();
                    if (peek() != '>')
                        fail("malformed end tag </" + closing + ">");
                    advance();
                    flush();
                    return el;
                }
                if (starts_with("<!--")) {
                    skip_comment();
                    continue;
                }
                if (starts_with("<![CDATA[")) {
                    advance(9);
                    const auto found = s_.find("]]>", pos_);
                    if (found == std::string_view::npos)
                        fail("unterminated CDATA section");
                    for (std::size_t i = pos_; i < found; ++i)
                        check_char(s_[i]);
                    text.append(s_.substr(pos_, found - pos_));
                    advance(found + 3 - pos_);
                    continue;
                }
                if (starts_with("<?")) {
                    skip_until("?>", "processing instruction");
                    continue;
                }
                if (starts_with("<!"))
                    fail("markup declarations are not allowed in content");
                flush();
                el.children.push_back(Node{read_element(scope)});
                continue;
            }
            if (c == '&') {
                read_reference(text);
                continue;
            }
            if (c == ']' && starts_with("]]>"))
                fail("']]>' in character data");
            check_char(c);
            text += c;
            advance();
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    std::vector<std::string>& warnings_;
};

}  // namespace detail

/// Parses a complete document. UTF-8 and ISO-8859-1 input are accepted
/// (per the XML declaration); element text and attribute values come back
/// as UTF-8. Line ends are normalized to '\n'.
inline Document parse(std::string_view bytes) {
    if (bytes.empty())
        throw ParseError(1, 1, "empty document");
    std::string_view body = bytes;
    if (body.substr(0, 3) == "\xEF\xBB\xBF")
        body.remove_prefix(3);

    Document doc;
    const auto declared = detail::Reader::declared_encoding(body);
    std::string text;
    const std::string enc = declared ? detail::lower(*declared) : std::string();
    if (enc == "iso-8859-1" || enc == "latin1" || enc == "iso_8859-1" || enc == "l1") {
        text = detail::latin1_to_utf8(body);
    } else if (enc.empty() || enc == "utf-8" || enc == "utf8" || enc == "us-ascii" || enc == "ascii") {
        if (!detail::valid_utf8(body))
            throw ParseError(1, 1, "document is not valid UTF-8");
        text.assign(body);
    } else {
        throw ParseError(1, 1, "unsupported encoding '" + *declared + "'");
    }
    doc.declared_encoding = declared.value_or("");

    std::string normalized;
    normalized.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r') {
            normalized += '\n';
            if (i + 1 < text.size() && text[i + 1] == '\n')
                ++i;
        } else {
            normalized += text[i];
        }
    }

    detail::Reader reader(normalized, doc.warnings);
    doc.root = reader.read_document();
    return doc;
}

// --- Writing ---------------------------------------------------------------

inline void escape_text(std::string& out, std::string_view s) {
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '\r': out += "&#13;"; break;
        default: out += c;
        }
    }
}

inline void escape_attribute(std::string& out, std::string_view s) {
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '"': out += "&quot;"; break;
        case '\t': out += "&#9;"; break;
        case '\n': out += "&#10;"; break;
        case '\r': out += "&#13;"; break;
        default: out += c;
        }
    }
}

/// Writes an element subtree. Output never uses element prefixes: every
/// element whose namespace differs from its parent's gets an xmlns
/// declaration. Elements holding only elements are indented when
/// `indent` >= 0; anything with text is written exactly.
class Writer {
public:
    /// Single-line form with the root's namespace always declared, so the
    /// result means the same thing wherever it is pasted.
    static std::string compact(const Element& e) {
        std::string out;
        write(out, e, nullptr, -1);
        return out;
    }

    static std::string document(const Element& root) {
        std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        write(out, root, nullptr, 0);
        return out;
    }

    static void write(std::string& out, const Element& e, const std::string* enclosing_ns, int indent) {
        const bool pretty = indent >= 0;
        if (pretty)
            out.append(static_cast<std::size_t>(indent) * 2, ' ');
        out += '<';
        out += e.local;
        if (enclosing_ns == nullptr || e.ns != *enclosing_ns) {
            out += " xmlns=\"";
            escape_attribute(out, e.ns);
            out += '"';
        }
        int prefix_counter = 0;
        for (const auto& a : e.attributes) {
            out += ' ';
            if (!a.ns.empty()) {
                const std::string pfx = "a" + std::to_string(prefix_counter++);
                out += "xmlns:" + pfx + "=\"";
                escape_attribute(out, a.ns);
                out += "\" " + pfx + ":";
            }
            out += a.local;
            out += "=\"";
            escape_attribute(out, a.value);
            out += '"';
        }
        if (e.children.empty()) {
            out += "/>";
            if (pretty)
                out += '\n';
            return;
        }
        out += '>';
        const bool element_only = std::none_of(e.children.begin(), e.children.end(),
                                               [](const Node& n) { return n.text() != nullptr; });
        const bool nest_pretty = pretty && element_only;
        if (nest_pretty)
            out += '\n';
        for (const auto& child : e.children) {
            if (const auto* t = child.text()) {
                escape_text(out, *t);
            } else if (const auto* r = child.raw()) {
                if (nest_pretty)
                    out.append(static_cast<std::size_t>(indent + 1) * 2, ' ');
                out += r->xml;
                if (nest_pretty)
                    out += '\n';
            } else {
                write(out, *child.element(), &e.ns, nest_pretty ? indent + 1 : -1);
            }
        }
        if (nest_pretty)
            out.append(static_cast<std::size_t>(indent) * 2, ' ');
        out += "</";
        out += e.local;
        out += '>';
        if (pretty)
            out += '\n';
    }
};

}  // namespace gloss::xml
