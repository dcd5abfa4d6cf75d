#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dynes/kb/ast.hpp"

namespace dynes::krl {

enum class Tok {
    Ident,
    Number,
    String,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Dot,
    Assign,  // :=
    Amp,
    Tilde,
    Gt,
    Lt,
    Eq,
    Ge,
    Le,
    Ne,
    Plus,
    Minus,
    Star,
    Slash,
    End,
};

const char* describe(Tok t);

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    SourceLoc loc;
};

/// Throws KrlError on malformed input.
std::vector<Token> tokenize(std::string_view src);

}  // namespace dynes::krl
