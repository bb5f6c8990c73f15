#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sqa {

struct UnterminatedConstruct : std::runtime_error {
    UnterminatedConstruct(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    int line;
};

enum class Language { CLike, JavaLike };

struct SourceUnit {
    std::string file_path;
    Language language = Language::CLike;
    std::string content;
};

enum class TokenKind { Identifier, Keyword, Punctuation, Literal, Comment, Whitespace };

struct Token {
    TokenKind kind;
    std::string text;
    int line;  // 1-based line of the token's first character
};

// Lossless scan: concatenating token texts reproduces the source exactly.
// Strings, character literals and comments are single tokens; preprocessor
// lines in the C-like subset come back as one opaque Literal token.
std::vector<Token> tokenize(const SourceUnit& unit);

bool is_language_keyword(Language lang, const std::string& word);

// Infers the language from a file extension ("c", "java", ...); returns
// false when the extension is unknown.
bool language_for_extension(const std::string& ext, Language& out);

}  // namespace sqa
