#include "kb/lexer.hpp"

#include <cctype>
#include <charconv>

#include "dynes/kb/parser.hpp"

namespace dynes::krl {

const char* describe(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::String: return "string";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Assign: return "':='";
    case Tok::Amp: return "'&'";
    case Tok::Tilde: return "'~'";
    case Tok::Gt: return "'>'";
    case Tok::Lt: return "'<'";
    case Tok::Eq: return "'='";
    case Tok::Ge: return "'>='";
    case Tok::Le: return "'<='";
    case Tok::Ne: return "'!='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::End: return "end of input";
    }
    return "?";
}

namespace {

[[noreturn]] void fail(SourceLoc loc, std::string msg) { throw KrlError({Diagnostic{loc, std::move(msg)}}); }

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;
    int col = 1;
    auto bump = [&](std::size_t n = 1) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto push = [&](Tok kind, std::size_t len, SourceLoc loc) {
        out.push_back(Token{kind, std::string(src.substr(i, len)), 0.0, loc});
        bump(len);
    };

    while (i < src.size()) {
        const char c = src[i];
        const SourceLoc loc{line, col};
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            bump();
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') bump();
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            push(Tok::Ident, j - i, loc);
            continue;
        }
        if (digit(c)) {
            std::size_t j = i;
            while (j < src.size() && digit(src[j])) ++j;
            if (j + 1 < src.size() && src[j] == '.' && digit(src[j + 1])) {
                ++j;
                while (j < src.size() && digit(src[j])) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && digit(src[k])) {
                    while (k < src.size() && digit(src[k])) ++k;
                    j = k;
                }
            }
            Token t{Tok::Number, std::string(src.substr(i, j - i)), 0.0, loc};
            auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
            if (res.ec != std::errc{}) fail(loc, "malformed number '" + t.text + "'");
            out.push_back(std::move(t));
            bump(j - i);
            continue;
        }
        if (c == '"') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
            if (j >= src.size() || src[j] != '"') fail(loc, "unterminated string");
            out.push_back(Token{Tok::String, std::string(src.substr(i + 1, j - i - 1)), 0.0, loc});
            bump(j - i + 1);
            continue;
        }
        const char n = i + 1 < src.size() ? src[i + 1] : '\0';
        switch (c) {
        case '{': push(Tok::LBrace, 1, loc); continue;
        case '}': push(Tok::RBrace, 1, loc); continue;
        case '(': push(Tok::LParen, 1, loc); continue;
        case ')': push(Tok::RParen, 1, loc); continue;
        case '[': push(Tok::LBracket, 1, loc); continue;
        case ']': push(Tok::RBracket, 1, loc); continue;
        case ',': push(Tok::Comma, 1, loc); continue;
        case ';': push(Tok::Semi, 1, loc); continue;
        case '.': push(Tok::Dot, 1, loc); continue;
        case '&': push(Tok::Amp, 1, loc); continue;
        case '~': push(Tok::Tilde, 1, loc); continue;
        case '=': push(Tok::Eq, 1, loc); continue;
        case '+': push(Tok::Plus, 1, loc); continue;
        case '-': push(Tok::Minus, 1, loc); continue;
        case '*': push(Tok::Star, 1, loc); continue;
        case '/': push(Tok::Slash, 1, loc); continue;
        case ':':
            if (n == '=') push(Tok::Assign, 2, loc);
            else push(Tok::Colon, 1, loc);
            continue;
        case '>':
            if (n == '=') push(Tok::Ge, 2, loc);
            else push(Tok::Gt, 1, loc);
            continue;
        case '<':
            if (n == '=') push(Tok::Le, 2, loc);
            else push(Tok::Lt, 1, loc);
            continue;
        case '!':
            if (n == '=') {
                push(Tok::Ne, 2, loc);
                continue;
            }
            break;
        default: break;
        }
        fail(loc, std::string("unexpected character '") + c + "'");
    }
    out.push_back(Token{Tok::End, "", 0.0, SourceLoc{line, col}});
    return out;
}

}  // namespace dynes::krl
