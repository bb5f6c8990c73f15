#include "sqa/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace sqa {

namespace {

const std::unordered_set<std::string>& c_keywords() {
    static const std::unordered_set<std::string> kw = {
        "auto",     "break",  "case",    "char",   "const",    "continue", "default",
        "do",       "double", "else",    "enum",   "extern",   "float",    "for",
        "goto",     "if",     "inline",  "int",    "long",     "register", "return",
        "short",    "signed", "sizeof",  "static", "struct",   "switch",   "typedef",
        "union",    "unsigned", "void",  "volatile", "while",  "bool"};
    return kw;
}

const std::unordered_set<std::string>& java_keywords() {
    static const std::unordered_set<std::string> kw = {
        "abstract", "boolean", "break",   "byte",       "case",      "catch",   "char",
        "class",    "const",  "continue", "default",    "do",        "double",  "else",
        "extends",  "final",  "finally",  "float",      "for",       "if",      "implements",
        "import",   "instanceof", "int",  "interface",  "long",      "native",  "new",
        "package",  "private", "protected", "public",   "return",    "short",   "static",
        "super",    "switch", "synchronized", "this",   "throw",     "throws",  "transient",
        "try",      "void",   "volatile", "while",      "override",  "virtual"};
    return kw;
}

// Multi-character operators kept whole so the structural passes can see
// short-circuit operators, scope resolution and member access directly.
constexpr std::array<const char*, 21> kMultiOps = {
    "<<=", ">>=", "::", "->", "&&", "||", "++", "--", "==", "!=", "<=",
    ">=",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<"};

}  // namespace

bool is_language_keyword(Language lang, const std::string& word) {
    const auto& set = lang == Language::CLike ? c_keywords() : java_keywords();
    return set.count(word) != 0;
}

bool language_for_extension(const std::string& ext, Language& out) {
    std::string e = ext;
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
    if (e == "c" || e == "h") {
        out = Language::CLike;
        return true;
    }
    if (e == "java" || e == "cpp" || e == "cc" || e == "cxx" || e == "hpp" || e == "cs") {
        out = Language::JavaLike;
        return true;
    }
    return false;
}

std::vector<Token> tokenize(const SourceUnit& unit) {
    const std::string& src = unit.content;
    std::vector<Token> tokens;
    size_t i = 0;
    int line = 1;
    bool at_line_start = true;

    auto emit = [&](TokenKind kind, size_t begin, size_t end, int start_line) {
        tokens.push_back({kind, src.substr(begin, end - begin), start_line});
    };

    while (i < src.size()) {
        char c = src[i];
        int start_line = line;
        size_t begin = i;

        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
            while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) {
                if (src[i] == '\n') {
                    ++line;
                    at_line_start = true;
                }
                ++i;
            }
            emit(TokenKind::Whitespace, begin, i, start_line);
            continue;
        }

        if (c == '#' && at_line_start && unit.language == Language::CLike) {
            // Opaque preprocessor line, including continuations.
            while (i < src.size() && src[i] != '\n') {
                if (src[i] == '\\' && i + 1 < src.size() && src[i + 1] == '\n') {
                    ++line;
                    i += 2;
                    continue;
                }
                ++i;
            }
            emit(TokenKind::Literal, begin, i, start_line);
            at_line_start = false;
            continue;
        }
        at_line_start = false;

        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') ++i;
            emit(TokenKind::Comment, begin, i, start_line);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            i += 2;
            bool closed = false;
            while (i < src.size()) {
                if (src[i] == '\n') ++line;
                if (src[i] == '*' && i + 1 < src.size() && src[i + 1] == '/') {
                    i += 2;
                    closed = true;
                    break;
                }
                ++i;
            }
            if (!closed) throw UnterminatedConstruct("unterminated block comment", start_line);
            emit(TokenKind::Comment, begin, i, start_line);
            continue;
        }
        if (c == '"' || c == '\'') {
            char quote = c;
            ++i;
            bool closed = false;
            while (i < src.size()) {
                if (src[i] == '\\' && i + 1 < src.size()) {
                    i += 2;
                    continue;
                }
                if (src[i] == '\n') break;
                if (src[i] == quote) {
                    ++i;
                    closed = true;
                    break;
                }
                ++i;
            }
            if (!closed)
                throw UnterminatedConstruct(
                    quote == '"' ? "unterminated string literal" : "unterminated character literal",
                    start_line);
            emit(TokenKind::Literal, begin, i, start_line);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                ++i;
            std::string word = src.substr(begin, i - begin);
            emit(is_language_keyword(unit.language, word) ? TokenKind::Keyword
                                                          : TokenKind::Identifier,
                 begin, i, start_line);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) ||
                                      src[i] == '.' || src[i] == '_'))
                ++i;
            emit(TokenKind::Literal, begin, i, start_line);
            continue;
        }
        // Punctuation, maximal munch over the known multi-char operators.
        size_t len = 1;
        for (const char* op : kMultiOps) {
            size_t n = std::char_traits<char>::length(op);
            if (src.compare(i, n, op) == 0) {
                len = n;
                break;
            }
        }
        i += len;
        emit(TokenKind::Punctuation, begin, i, start_line);
    }
    return tokens;
}

}  // namespace sqa
