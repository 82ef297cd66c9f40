#pragma once

// Tokenizer shared by the program, relation-data, domain and mode readers.

#include <string>
#include <string_view>
#include <vector>

#include "relkit/ast.h"

namespace relkit::detail {

enum class Tok {
    Ident,
    Number,     // decimal integer or decimal fraction, e.g. 12, 0.5
    FloatLit,   // exponent or hex-float form, e.g. 1e-3, 0x1.8p+0
    Implies,    // <-
    Or,         // \/
    And,        // /\ .
    Eq,         // =
    Lt,         // <
    Le,         // <=
    Gt,         // >
    Ge,         // >=
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Dot,
    Colon,
    Bar,
    End,
    Error,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
    int endLine = 1;
    int endCol = 1;
};

/// Tokenizes the whole input. Never throws; unknown bytes become Error
/// tokens and the stream always ends with End.
std::vector<Token> tokenize(std::string_view text);

const char* describe(Tok kind);

inline bool isOperatorToken(Tok k) {
    return k == Tok::Plus || k == Tok::Minus || k == Tok::Star || k == Tok::Slash || k == Tok::Lt ||
           k == Tok::Le || k == Tok::Gt || k == Tok::Ge || k == Tok::Eq;
}

/// Cursor over a token vector with span helpers.
class TokenStream {
public:
    TokenStream(std::vector<Token> tokens, std::string file)
        : tokens_(std::move(tokens)), file_(std::move(file)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool atIdent(std::string_view word) const { return at(Tok::Ident) && peek().text == word; }
    const Token& next() {
        const Token& t = peek();
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }
    bool accept(Tok k) {
        if (!at(k)) return false;
        next();
        return true;
    }
    std::size_t position() const { return pos_; }
    void reset(std::size_t pos) { pos_ = pos; }
    /// Index of the previously consumed token.
    const Token& previous() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }

    SourceSpan spanFrom(const Token& start) const {
        const Token& end = pos_ == 0 ? start : tokens_[pos_ - 1];
        return SourceSpan{file_, start.line, start.col, end.endLine, end.endCol};
    }
    SourceSpan spanOf(const Token& t) const {
        return SourceSpan{file_, t.line, t.col, t.endLine, t.endCol};
    }
    const std::string& file() const { return file_; }

private:
    std::vector<Token> tokens_;
    std::string file_;
    std::size_t pos_ = 0;
};

}  // namespace relkit::detail
