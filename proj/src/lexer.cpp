#include "lexer.h"

#include <cctype>

namespace relkit::detail {

namespace {

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool hexDigit(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

const char* describe(Tok kind) {
    switch (kind) {
        case Tok::Ident: return "identifier";
        case Tok::Number: return "number";
        case Tok::FloatLit: return "float literal";
        case Tok::Implies: return "'<-'";
        case Tok::Or: return "'\\/'";
        case Tok::And: return "'/\\'";
        case Tok::Eq: return "'='";
        case Tok::Lt: return "'<'";
        case Tok::Le: return "'<='";
        case Tok::Gt: return "'>'";
        case Tok::Ge: return "'>='";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Comma: return "','";
        case Tok::Semi: return "';'";
        case Tok::Dot: return "'.'";
        case Tok::Colon: return "':'";
        case Tok::Bar: return "'|'";
        case Tok::End: return "end of input";
        case Tok::Error: return "invalid character";
    }
    return "token";
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };

    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }

        Token tok;
        tok.line = line;
        tok.col = col;
        std::size_t start = i;
        auto peekAt = [&](std::size_t k) { return i + k < text.size() ? text[i + k] : '\0'; };

        auto emit = [&](Tok kind, std::size_t len) {
            tok.kind = kind;
            tok.text = std::string(text.substr(start, len));
            advance(len);
            tok.endLine = line;
            tok.endCol = col;
            out.push_back(std::move(tok));
        };

        if (identStart(c)) {
            std::size_t n = 1;
            while (i + n < text.size() && identChar(text[i + n])) ++n;
            emit(Tok::Ident, n);
            continue;
        }
        if (digit(c)) {
            std::size_t n = 1;
            if (c == '0' && (peekAt(1) == 'x' || peekAt(1) == 'X')) {
                n = 2;
                while (i + n < text.size() && (hexDigit(text[i + n]) || text[i + n] == '.')) ++n;
                if (peekAt(n) == 'p' || peekAt(n) == 'P') {
                    ++n;
                    if (peekAt(n) == '+' || peekAt(n) == '-') ++n;
                    while (i + n < text.size() && digit(text[i + n])) ++n;
                }
                emit(Tok::FloatLit, n);
                continue;
            }
            while (i + n < text.size() && digit(text[i + n])) ++n;
            if (peekAt(n) == '.' && digit(peekAt(n + 1))) {
                n += 1;
                while (i + n < text.size() && digit(text[i + n])) ++n;
            }
            bool exponent = false;
            if (peekAt(n) == 'e' || peekAt(n) == 'E') {
                std::size_t m = n + 1;
                if (peekAt(m) == '+' || peekAt(m) == '-') ++m;
                if (digit(peekAt(m))) {
                    while (i + m < text.size() && digit(text[i + m])) ++m;
                    n = m;
                    exponent = true;
                }
            }
            emit(exponent ? Tok::FloatLit : Tok::Number, n);
            continue;
        }

        char d = peekAt(1);
        switch (c) {
            case '<':
                if (d == '-') emit(Tok::Implies, 2);
                else if (d == '=') emit(Tok::Le, 2);
                else emit(Tok::Lt, 1);
                continue;
            case '>':
                if (d == '=') emit(Tok::Ge, 2);
                else emit(Tok::Gt, 1);
                continue;
            case '\\':
                if (d == '/') emit(Tok::Or, 2);
                else emit(Tok::Error, 1);
                continue;
            case '/':
                if (d == '\\') emit(Tok::And, 2);
                else emit(Tok::Slash, 1);
                continue;
            case '=': emit(Tok::Eq, 1); continue;
            case '+': emit(Tok::Plus, 1); continue;
            case '-': emit(Tok::Minus, 1); continue;
            case '*': emit(Tok::Star, 1); continue;
            case '(': emit(Tok::LParen, 1); continue;
            case ')': emit(Tok::RParen, 1); continue;
            case '[': emit(Tok::LBracket, 1); continue;
            case ']': emit(Tok::RBracket, 1); continue;
            case ',': emit(Tok::Comma, 1); continue;
            case ';': emit(Tok::Semi, 1); continue;
            case '.': emit(Tok::Dot, 1); continue;
            case ':': emit(Tok::Colon, 1); continue;
            case '|': emit(Tok::Bar, 1); continue;
            default: {
                // Consume one UTF-8 sequence as a single error token.
                std::size_t n = 1;
                while (i + n < text.size() && (static_cast<unsigned char>(text[i + n]) & 0xC0) == 0x80)
                    ++n;
                emit(Tok::Error, n);
                continue;
            }
        }
    }
    Token end;
    end.kind = Tok::End;
    end.line = end.endLine = line;
    end.col = end.endCol = col;
    out.push_back(end);
    return out;
}

}  // namespace relkit::detail
