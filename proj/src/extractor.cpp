#include "sqa/extractor.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace sqa {

namespace {

bool is_kw(const Token& t, const char* w) { return t.kind == TokenKind::Keyword && t.text == w; }
bool is_punct(const Token& t, const char* w) {
    return t.kind == TokenKind::Punctuation && t.text == w;
}

const std::unordered_set<std::string>& primitive_types() {
    static const std::unordered_set<std::string> prim = {
        "void",  "bool",   "boolean", "char", "byte",     "short",  "int",
        "long",  "float",  "double",  "unsigned", "signed", "size_t", "String",
        "string"};
    return prim;
}

struct LineFlags {
    bool has_code = false;
    bool has_comment = false;
};

std::vector<LineFlags> classify_lines(const std::vector<Token>& tokens) {
    std::vector<LineFlags> lines(2);
    auto mark = [&](int line, bool code) {
        if (static_cast<size_t>(line) >= lines.size()) lines.resize(line + 1);
        if (code)
            lines[line].has_code = true;
        else
            lines[line].has_comment = true;
    };
    for (const auto& t : tokens) {
        if (t.kind == TokenKind::Whitespace) continue;
        int span = static_cast<int>(std::count(t.text.begin(), t.text.end(), '\n'));
        for (int l = t.line; l <= t.line + span; ++l)
            mark(l, t.kind != TokenKind::Comment);
    }
    return lines;
}

std::int64_t count_loc(const std::vector<LineFlags>& lines, int first, int last) {
    std::int64_t n = 0;
    for (int l = std::max(first, 1); l <= last && static_cast<size_t>(l) < lines.size(); ++l)
        if (lines[l].has_code) ++n;
    return n;
}

std::int64_t count_comment_lines(const std::vector<LineFlags>& lines, int first, int last) {
    std::int64_t n = 0;
    for (int l = std::max(first, 1); l <= last && static_cast<size_t>(l) < lines.size(); ++l)
        if (lines[l].has_comment && !lines[l].has_code) ++n;
    return n;
}

// Strips array/pointer/reference/template decoration down to the base type
// name, e.g. "java.util.List<Foo>[]" -> "List".
std::string base_type(const std::string& type) {
    std::string t = type;
    if (auto lt = t.find('<'); lt != std::string::npos) t = t.substr(0, lt);
    while (!t.empty() && (t.back() == '*' || t.back() == '&' || t.back() == '[' ||
                          t.back() == ']' || t.back() == ' '))
        t.pop_back();
    if (auto dot = t.find_last_of(".:"); dot != std::string::npos) t = t.substr(dot + 1);
    return t;
}

bool looks_like_type_name(const std::string& s) {
    return !s.empty() && (std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_');
}

}  // namespace

std::int64_t cyclomatic(const std::vector<Token>& body_tokens) {
    std::int64_t decisions = 0;
    for (const auto& t : body_tokens) {
        if (t.kind == TokenKind::Keyword) {
            if (t.text == "if" || t.text == "while" || t.text == "for" || t.text == "case" ||
                t.text == "catch")
                ++decisions;
        } else if (t.kind == TokenKind::Punctuation) {
            if (t.text == "?" || t.text == "&&" || t.text == "||") ++decisions;
        }
    }
    return 1 + decisions;
}

namespace {

class Extractor {
public:
    explicit Extractor(const SourceUnit& unit)
        : unit_(unit), tokens_(tokenize(unit)), lines_(classify_lines(tokens_)) {
        for (size_t i = 0; i < tokens_.size(); ++i) {
            const auto& t = tokens_[i];
            if (t.kind == TokenKind::Whitespace || t.kind == TokenKind::Comment) continue;
            // Opaque preprocessor lines are invisible to the structural pass.
            if (t.kind == TokenKind::Literal && !t.text.empty() && t.text[0] == '#') continue;
            sig_.push_back(i);
        }
    }

    ExtractionResult run() {
        result_.total_loc = count_loc(lines_, 1, static_cast<int>(lines_.size()));
        size_t p = 0;
        while (p < sig_.size()) p = parse_top_level(p);
        return {std::move(result_), std::move(warnings_)};
    }

private:
    const SourceUnit& unit_;
    std::vector<Token> tokens_;
    std::vector<LineFlags> lines_;
    std::vector<size_t> sig_;  // indices of structural tokens
    SystemSnapshot result_;
    std::vector<ExtractionWarning> warnings_;
    std::string current_package_;

    const Token& tok(size_t p) const {
        static const Token eof{TokenKind::Punctuation, "", 0};
        return p < sig_.size() ? tokens_[sig_[p]] : eof;
    }

    void warn(size_t p, const std::string& reason) {
        warnings_.push_back({unit_.file_path, tok(p).line, reason});
    }

    // Position just past the matching close brace; sig_.size() when unbalanced.
    size_t match_brace(size_t open) const {
        int depth = 0;
        for (size_t p = open; p < sig_.size(); ++p) {
            if (is_punct(tok(p), "{")) ++depth;
            if (is_punct(tok(p), "}") && --depth == 0) return p + 1;
        }
        return sig_.size();
    }

    size_t skip_past(size_t p, const char* stop) const {
        while (p < sig_.size() && !is_punct(tok(p), stop)) {
            if (is_punct(tok(p), "{")) {
                p = match_brace(p);
                continue;
            }
            ++p;
        }
        return p < sig_.size() ? p + 1 : p;
    }

    // Skips an unparseable region: to the next ';' or past a balanced brace
    // block, whichever comes first.
    size_t skip_statementish(size_t p) const {
        while (p < sig_.size()) {
            if (is_punct(tok(p), ";")) return p + 1;
            if (is_punct(tok(p), "{")) return match_brace(p);
            if (is_punct(tok(p), "}")) return p + 1;
            ++p;
        }
        return p;
    }

    static bool is_modifier(const Token& t) {
        if (t.kind != TokenKind::Keyword) return false;
        static const std::unordered_set<std::string> mods = {
            "public",  "private", "protected", "static",  "final",    "abstract",
            "native",  "synchronized", "transient", "volatile", "inline", "extern",
            "virtual", "override", "const"};
        return mods.count(t.text) != 0;
    }

    struct Modifiers {
        Visibility visibility = Visibility::Default;
        bool explicit_visibility = false;
        bool is_static = false;
        bool is_constant = false;
        bool is_virtual = false;
    };

    size_t read_modifiers(size_t p, Modifiers& m) {
        while (is_modifier(tok(p))) {
            const std::string& w = tok(p).text;
            if (w == "public") {
                m.visibility = Visibility::Public;
                m.explicit_visibility = true;
            } else if (w == "protected") {
                m.visibility = Visibility::Protected;
                m.explicit_visibility = true;
            } else if (w == "private") {
                m.visibility = Visibility::Private;
                m.explicit_visibility = true;
            } else if (w == "static") {
                m.is_static = true;
            } else if (w == "final" || w == "const") {
                m.is_constant = true;
            } else if (w == "virtual" || w == "override" || w == "abstract") {
                m.is_virtual = true;
            }
            ++p;
        }
        return p;
    }

    // Reads a type expression: qualified name with optional generics and
    // array/pointer/reference decoration. Returns npos-equivalent (same p)
    // when no type is present.
    size_t read_type(size_t p, std::string& out) {
        std::string type;
        const Token& t = tok(p);
        if (t.kind == TokenKind::Identifier ||
            (t.kind == TokenKind::Keyword && primitive_types().count(t.text))) {
            type = t.text;
            ++p;
        } else {
            return p;
        }
        // Qualified name parts.
        while ((is_punct(tok(p), ".") || is_punct(tok(p), "::")) &&
               tok(p + 1).kind == TokenKind::Identifier) {
            type += tok(p).text + tok(p + 1).text;
            p += 2;
        }
        if (is_punct(tok(p), "<")) {
            int depth = 0;
            while (p < sig_.size()) {
                if (is_punct(tok(p), "<")) ++depth;
                if (is_punct(tok(p), ">") && --depth == 0) {
                    type += "<>";
                    ++p;
                    break;
                }
                if (is_punct(tok(p), ";") || is_punct(tok(p), "{")) return p;  // bail out
                ++p;
            }
        }
        while (is_punct(tok(p), "[") && is_punct(tok(p + 1), "]")) {
            type += "[]";
            p += 2;
        }
        while (is_punct(tok(p), "*") || is_punct(tok(p), "&")) {
            type += tok(p).text;
            ++p;
        }
        out = type;
        return p;
    }

    size_t parse_top_level(size_t p) {
        const Token& t = tok(p);
        if (is_punct(t, ";")) return p + 1;
        if (unit_.language == Language::JavaLike) {
            if (is_kw(t, "package")) {
                std::string name;
                size_t q = p + 1;
                while (q < sig_.size() && !is_punct(tok(q), ";")) {
                    name += tok(q).text;
                    ++q;
                }
                current_package_ = name;
                if (!name.empty() &&
                    std::none_of(result_.packages.begin(), result_.packages.end(),
                                 [&](const auto& pk) { return pk.name == name; }))
                    result_.packages.push_back({name, 0, 0});
                return q + 1;
            }
            if (is_kw(t, "import")) return skip_past(p, ";");
        }
        Modifiers mods;
        size_t q = read_modifiers(p, mods);
        if (is_kw(tok(q), "class")) return parse_class(q, mods);
        if (is_kw(tok(q), "interface")) {
            warn(q, "interface skipped (outside the supported subset)");
            size_t r = q;
            while (r < sig_.size() && !is_punct(tok(r), "{") && !is_punct(tok(r), ";")) ++r;
            return is_punct(tok(r), "{") ? match_brace(r) : r + 1;
        }
        if (unit_.language == Language::CLike &&
            (is_kw(tok(q), "struct") || is_kw(tok(q), "union") || is_kw(tok(q), "enum") ||
             is_kw(tok(q), "typedef"))) {
            return skip_past(p, ";");
        }

        // Candidate function or variable: type name (...)
        std::string type;
        size_t r = read_type(q, type);
        if (r != q && tok(r).kind == TokenKind::Identifier && is_punct(tok(r + 1), "(")) {
            return parse_function(p, r, type, mods, nullptr);
        }
        if (r != q && (is_punct(tok(r + 1), ";") || is_punct(tok(r + 1), "=") ||
                       is_punct(tok(r + 1), ","))) {
            return skip_past(p, ";");  // global variable
        }
        warn(p, "unrecognized top-level construct near '" + t.text + "'");
        return skip_statementish(p);
    }

    size_t parse_class(size_t p, const Modifiers& mods) {
        // p points at 'class'
        size_t q = p + 1;
        if (tok(q).kind != TokenKind::Identifier) {
            warn(p, "class without a name");
            return skip_statementish(p);
        }
        ClassInfo cls;
        cls.name = tok(q).text;
        cls.package_name = current_package_;
        cls.visibility = mods.explicit_visibility ? mods.visibility : Visibility::Default;
        ++q;
        if (is_kw(tok(q), "extends") || is_punct(tok(q), ":")) {
            ++q;
            // C++ style base clause may start with an access keyword.
            while (is_modifier(tok(q))) ++q;
            std::string anc;
            q = read_type(q, anc);
            if (!anc.empty()) cls.ancestor_name = base_type(anc);
        }
        while (q < sig_.size() && !is_punct(tok(q), "{") && !is_punct(tok(q), ";")) ++q;
        if (!is_punct(tok(q), "{")) {
            warn(p, "class body not found: " + cls.name);
            return q + 1;
        }
        size_t body_begin = q + 1;
        size_t end = match_brace(q);
        if (end == sig_.size() && !is_punct(tok(end - 1), "}")) {
            warn(q, "unbalanced class body: " + cls.name);
        }
        int first_line = tok(q).line;
        int last_line = end > 0 ? tok(end - 1).line : first_line;
        cls.comment_line_count = count_comment_lines(lines_, first_line, last_line);

        struct PendingBody {
            size_t method_index;
            size_t begin, end;  // sig positions of '{' and past '}'
        };
        std::vector<PendingBody> bodies;

        size_t m = body_begin;
        Visibility section = Visibility::Default;  // C++ style access sections
        while (m + 1 < end || (m < end && !is_punct(tok(m), "}"))) {
            if (is_punct(tok(m), "}")) break;
            if (is_punct(tok(m), ";")) {
                ++m;
                continue;
            }
            // C++ access label
            if (is_modifier(tok(m)) && is_punct(tok(m + 1), ":") &&
                (tok(m).text == "public" || tok(m).text == "private" ||
                 tok(m).text == "protected")) {
                section = tok(m).text == "public"
                              ? Visibility::Public
                              : tok(m).text == "private" ? Visibility::Private
                                                         : Visibility::Protected;
                m += 2;
                continue;
            }
            Modifiers mm;
            size_t q2 = read_modifiers(m, mm);
            Visibility vis = mm.explicit_visibility ? mm.visibility : section;

            if (is_kw(tok(q2), "class")) {  // nested class, hoisted to top level
                m = parse_class(q2, mm);
                continue;
            }

            // Constructor: ClassName (
            if (tok(q2).kind == TokenKind::Identifier && tok(q2).text == cls.name &&
                is_punct(tok(q2 + 1), "(")) {
                m = parse_member_function(cls, bodies, q2, "", vis, mm);
                continue;
            }

            std::string type;
            size_t r = read_type(q2, type);
            if (r != q2 && tok(r).kind == TokenKind::Identifier) {
                if (is_punct(tok(r + 1), "(")) {
                    m = parse_member_function(cls, bodies, r, type, vis, mm);
                    continue;
                }
                // Field declaration, possibly a comma list.
                size_t f = r;
                while (f < end) {
                    if (tok(f).kind == TokenKind::Identifier) {
                        DataVariableInfo d;
                        d.name = tok(f).text;
                        d.type_name = type;
                        d.kind = primitive_types().count(base_type(type))
                                     ? DataKind::Primitive
                                     : DataKind::UserDefined;
                        d.visibility = vis;
                        d.is_static = mm.is_static;
                        d.is_constant = mm.is_constant;
                        cls.data_members.push_back(std::move(d));
                    }
                    // Skip initializer up to ',' or ';'
                    int depth = 0;
                    while (f < end) {
                        if (is_punct(tok(f), "(") || is_punct(tok(f), "{") ||
                            is_punct(tok(f), "["))
                            ++depth;
                        if (is_punct(tok(f), ")") || is_punct(tok(f), "}") ||
                            is_punct(tok(f), "]"))
                            --depth;
                        if (depth == 0 && (is_punct(tok(f), ",") || is_punct(tok(f), ";"))) break;
                        ++f;
                    }
                    ++cls.statement_count;
                    if (is_punct(tok(f), ",")) {
                        ++f;
                        continue;
                    }
                    ++f;
                    break;
                }
                m = f;
                continue;
            }
            warn(m, "unrecognized class member near '" + tok(m).text + "' in " + cls.name);
            m = skip_statementish(m);
        }

        // With the full member list known, analyze the saved bodies.
        for (const auto& b : bodies) analyze_body(cls.methods[b.method_index], &cls, b.begin, b.end);
        result_.classes.push_back(std::move(cls));
        return end;
    }

    // Parses a member function whose name sits at position `name_pos`
    // (followed by '('). Adds the method to cls and records its body range.
    template <typename Bodies>
    size_t parse_member_function(ClassInfo& cls, Bodies& bodies, size_t name_pos,
                                 const std::string& return_type, Visibility vis,
                                 const Modifiers& mods) {
        MethodInfo meth;
        meth.name = tok(name_pos).text;
        meth.return_type = return_type;
        meth.visibility = vis;
        meth.overrides_ancestor = mods.is_virtual;
        size_t p = parse_parameters(name_pos + 1, meth);
        // Trailing const / throws clause
        while (p < sig_.size() && !is_punct(tok(p), "{") && !is_punct(tok(p), ";") &&
               !is_punct(tok(p), "}"))
            ++p;
        if (is_punct(tok(p), "{")) {
            size_t end = match_brace(p);
            cls.methods.push_back(std::move(meth));
            bodies.push_back({cls.methods.size() - 1, p, end});
            return end;
        }
        // Bodiless declaration (abstract / prototype)
        meth.cyclomatic_complexity = 1;
        cls.methods.push_back(std::move(meth));
        return p + 1;
    }

    size_t parse_function(size_t /*start*/, size_t name_pos, const std::string& return_type,
                          const Modifiers& mods, ClassInfo* /*unused*/) {
        MethodInfo fn;
        fn.name = tok(name_pos).text;
        fn.return_type = return_type;
        fn.visibility = mods.is_static && unit_.language == Language::CLike ? Visibility::Private
                                                                            : Visibility::Public;
        size_t p = parse_parameters(name_pos + 1, fn);
        while (p < sig_.size() && !is_punct(tok(p), "{") && !is_punct(tok(p), ";")) ++p;
        if (is_punct(tok(p), "{")) {
            size_t end = match_brace(p);
            analyze_body(fn, nullptr, p, end);
            result_.free_functions.push_back(std::move(fn));
            return end;
        }
        // Prototype only.
        return p + 1;
    }

    // p points at '('; returns position just past ')'.
    size_t parse_parameters(size_t p, MethodInfo& meth) {
        if (is_punct(tok(p), "(")) ++p;
        std::vector<std::vector<size_t>> groups(1);
        int depth = 1;
        while (p < sig_.size() && depth > 0) {
            if (is_punct(tok(p), "(")) ++depth;
            if (is_punct(tok(p), ")")) {
                if (--depth == 0) break;
            }
            if (depth == 1 && is_punct(tok(p), ","))
                groups.emplace_back();
            else
                groups.back().push_back(p);
            ++p;
        }
        for (const auto& g : groups) {
            if (g.empty()) continue;
            if (g.size() == 1 && is_kw(tok(g[0]), "void")) continue;
            ParameterInfo param;
            bool by_ref = false;
            size_t name_idx = g.size();
            for (size_t k = g.size(); k-- > 0;) {
                if (tok(g[k]).kind == TokenKind::Identifier) {
                    name_idx = k;
                    break;
                }
            }
            std::string type;
            for (size_t k = 0; k < g.size(); ++k) {
                const Token& t = tok(g[k]);
                if (is_punct(t, "&") || is_punct(t, "*")) by_ref = true;
                if (k == name_idx) continue;
                if (t.kind == TokenKind::Keyword && is_modifier(t)) continue;
                type += t.text;
            }
            if (name_idx < g.size()) param.name = tok(g[name_idx]).text;
            if (type.empty() && name_idx < g.size()) {
                // Untyped parameter list (K&R style): use the name as type.
                type = param.name;
                param.name.clear();
            }
            param.type_name = type;
            param.passing_mode = by_ref ? PassingMode::ByReference : PassingMode::ByValue;
            if (!param.type_name.empty()) meth.parameters.push_back(std::move(param));
        }
        return p + 1;
    }

    // Fills loc, statements, comments, complexity, calls and member accesses
    // for a body spanning sig positions [open, end) where tok(open) == '{'.
    void analyze_body(MethodInfo& meth, const ClassInfo* owner, size_t open, size_t end) {
        int first_line = tok(open).line;
        int last_line = end > open ? tok(end - 1).line : first_line;
        meth.loc = count_loc(lines_, first_line, last_line);
        meth.comment_line_count = count_comment_lines(lines_, first_line, last_line);

        std::vector<Token> body;
        body.reserve((end - open) * 2);
        for (size_t p = open; p < end; ++p) body.push_back(tok(p));
        meth.cyclomatic_complexity = cyclomatic(body);

        std::unordered_set<std::string> fields;
        if (owner)
            for (const auto& d : owner->data_members) fields.insert(d.name);
        std::unordered_map<std::string, std::string> var_types;
        for (const auto& prm : meth.parameters)
            if (!prm.name.empty()) var_types[prm.name] = base_type(prm.type_name);
        if (owner)
            for (const auto& d : owner->data_members) var_types[d.name] = base_type(d.type_name);

        std::set<CallTarget> calls;
        std::set<std::string> accessed;

        for (size_t p = open; p < end; ++p) {
            const Token& t = tok(p);
            if (t.kind == TokenKind::Keyword) {
                if (t.text == "if" || t.text == "while" || t.text == "for" || t.text == "switch" ||
                    t.text == "do")
                    ++meth.statement_count;
                if (t.text == "new" && tok(p + 1).kind == TokenKind::Identifier &&
                    is_punct(tok(p + 2), "(")) {
                    calls.insert({tok(p + 1).text, tok(p + 1).text});
                }
                continue;
            }
            if (is_punct(t, ";")) {
                ++meth.statement_count;
                continue;
            }
            if (t.kind != TokenKind::Identifier) continue;

            bool qualified = p > open && (is_punct(tok(p - 1), ".") || is_punct(tok(p - 1), "->") ||
                                          is_punct(tok(p - 1), "::"));
            bool is_call = is_punct(tok(p + 1), "(");

            if (is_call) {
                if (!qualified) {
                    calls.insert({"", t.text});
                } else {
                    size_t recv = p - 2;
                    const Token& r = tok(recv);
                    if (is_kw(r, "this")) {
                        calls.insert({"", t.text});
                    } else if (is_kw(r, "super")) {
                        calls.insert({owner && owner->ancestor_name ? *owner->ancestor_name : "?",
                                      t.text});
                    } else if (r.kind == TokenKind::Identifier) {
                        auto it = var_types.find(r.text);
                        if (it != var_types.end() && !primitive_types().count(it->second))
                            calls.insert({it->second, t.text});
                        else if (it == var_types.end() && looks_like_type_name(r.text))
                            calls.insert({r.text, t.text});  // static-style call
                        else
                            calls.insert({"?", t.text});
                    } else {
                        calls.insert({"?", t.text});  // chained or computed receiver
                    }
                }
                continue;
            }

            // Local declaration: Type name (= | ;) — remember for receivers.
            if (!qualified && looks_like_type_name(t.text) &&
                tok(p + 1).kind == TokenKind::Identifier &&
                (is_punct(tok(p + 2), "=") || is_punct(tok(p + 2), ";"))) {
                var_types[tok(p + 1).text] = t.text;
            }

            if (fields.count(t.text)) {
                bool this_qualified =
                    qualified && is_kw(tok(p - 2), "this");
                if (!qualified || this_qualified) accessed.insert(t.text);
            }
        }

        meth.invoked_targets.assign(calls.begin(), calls.end());
        meth.accessed_members.assign(accessed.begin(), accessed.end());
        meth.fan_out = distinct_call_fanout(meth, owner ? owner->name : "");
    }
};

}  // namespace

ExtractionResult extract_unit(const SourceUnit& unit) { return Extractor(unit).run(); }

SystemSnapshot resolve_couplings(const SystemSnapshot& snapshot,
                                 std::vector<ExtractionWarning>* warnings) {
    SystemSnapshot out = snapshot;

    std::unordered_map<std::string, std::vector<ClassInfo*>> classes_by_name;
    for (auto& c : out.classes) classes_by_name[c.name].push_back(&c);
    std::unordered_map<std::string, std::vector<MethodInfo*>> free_by_name;
    for (auto& f : out.free_functions) {
        free_by_name[f.name].push_back(&f);
        f.fan_in = 0;
    }
    for (auto& c : out.classes)
        for (auto& m : c.methods) m.fan_in = 0;

    auto unique_class = [&](const std::string& name) -> ClassInfo* {
        auto it = classes_by_name.find(name);
        if (it == classes_by_name.end() || it->second.size() != 1) return nullptr;
        return it->second.front();
    };

    // Looks a method up in a class, walking the ancestor chain.
    auto find_method = [&](ClassInfo* cls, const std::string& name) -> MethodInfo* {
        std::unordered_set<std::string> seen;
        while (cls && seen.insert(cls->name).second) {
            for (auto& m : cls->methods)
                if (m.name == name) return &m;
            cls = cls->ancestor_name ? unique_class(*cls->ancestor_name) : nullptr;
        }
        return nullptr;
    };

    // Mark methods overriding an ancestor method of the same name/arity.
    for (auto& c : out.classes) {
        if (!c.ancestor_name) continue;
        ClassInfo* anc = unique_class(*c.ancestor_name);
        for (auto& m : c.methods) {
            if (m.overrides_ancestor) continue;
            ClassInfo* a = anc;
            std::unordered_set<std::string> seen;
            while (a && seen.insert(a->name).second) {
                for (const auto& am : a->methods)
                    if (am.name == m.name && am.parameters.size() == m.parameters.size()) {
                        m.overrides_ancestor = true;
                        break;
                    }
                if (m.overrides_ancestor) break;
                a = a->ancestor_name ? unique_class(*a->ancestor_name) : nullptr;
            }
        }
    }

    // Cross-package references as distinct (source class, target class) pairs.
    std::set<std::pair<std::string, std::string>> class_refs;
    std::unordered_map<std::string, std::string> package_of;
    for (const auto& c : out.classes) package_of[c.name] = c.package_name;

    auto resolve_from = [&](MethodInfo& m, ClassInfo* owner) {
        std::set<CallTarget> distinct(m.invoked_targets.begin(), m.invoked_targets.end());
        std::string owner_name = owner ? owner->name : "";
        for (const auto& t : distinct) {
            if ((t.class_name.empty() || t.class_name == owner_name) && t.method_name == m.name)
                continue;  // self-recursion
            MethodInfo* target = nullptr;
            std::string target_class;
            if (t.class_name == "?") {
                // receiver type unknown; external by construction
            } else if (t.class_name.empty()) {
                target = owner ? find_method(owner, t.method_name) : nullptr;
                if (target) target_class = owner_name;
                if (!target) {
                    auto it = free_by_name.find(t.method_name);
                    if (it != free_by_name.end()) target = it->second.front();
                }
            } else if (ClassInfo* cls = unique_class(t.class_name)) {
                target = find_method(cls, t.method_name);
                target_class = t.class_name;
                if (owner && t.class_name != owner_name)
                    class_refs.insert({owner->name, t.class_name});
            }
            if (target && target != &m) {
                ++target->fan_in;
            } else if (!target && warnings) {
                warnings->push_back(
                    {"", 0,
                     "unresolved call target " +
                         (t.class_name.empty() ? t.method_name
                                               : t.class_name + "." + t.method_name) +
                         " from " + (owner_name.empty() ? m.name : owner_name + "." + m.name)});
            }
        }
        m.fan_out = distinct_call_fanout(m, owner_name);
    };

    for (auto& c : out.classes) {
        // Member types and the ancestor are class references too.
        for (const auto& d : c.data_members) {
            std::string bt = base_type(d.type_name);
            if (d.kind == DataKind::UserDefined && unique_class(bt) && bt != c.name)
                class_refs.insert({c.name, bt});
        }
        if (c.ancestor_name && unique_class(*c.ancestor_name))
            class_refs.insert({c.name, *c.ancestor_name});
        for (auto& m : c.methods) resolve_from(m, &c);
    }
    for (auto& f : out.free_functions) resolve_from(f, nullptr);

    // Package couplings from cross-package class reference pairs.
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> pkg;  // name -> (ca, ce)
    for (const auto& [src, dst] : class_refs) {
        const std::string& ps = package_of[src];
        const std::string& pd = package_of[dst];
        if (ps == pd) continue;
        pkg[ps].second += 1;  // efferent from source package
        pkg[pd].first += 1;   // afferent into target package
    }
    for (auto& p : out.packages) {
        auto it = pkg.find(p.name);
        p.afferent_couplings = it == pkg.end() ? 0 : it->second.first;
        p.efferent_couplings = it == pkg.end() ? 0 : it->second.second;
        pkg.erase(p.name);
    }
    for (const auto& [name, counts] : pkg) {
        if (name.empty()) continue;  // default package has no record
        out.packages.push_back({name, counts.first, counts.second});
    }
    return out;
}

}  // namespace sqa
