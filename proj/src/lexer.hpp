#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qirvm/errors.hpp"

namespace qirvm::detail {

enum class Tok {
    Eof,
    LocalVar,   // %name, text excludes '%'
    GlobalVar,  // @name, text excludes '@'
    AttrRef,    // #N, text is N
    MetaRef,    // !N, text is N
    MetaName,   // !llvm.module.flags, text excludes '!'
    MetaString, // !"...", text is decoded payload
    Exclaim,    // bare '!' (as in !{...})
    String,     // "...", decoded
    CString,    // c"...", decoded
    Integer,
    Float,      // decimal with '.' or exponent
    HexFloat,   // 0x...
    Ident,
    LabelDef,   // name: , text excludes ':'
    Equal,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Star,
};

std::string_view describe(Tok kind);

struct Token {
    Tok kind = Tok::Eof;
    std::string text;
    SourceLoc loc;

    bool is(Tok k) const { return kind == k; }
    bool is_ident(std::string_view word) const { return kind == Tok::Ident && text == word; }
};

// Tokenizes the whole buffer; the last token is always Eof. Comments run
// from ';' to end of line.
std::vector<Token> tokenize(std::string_view text);

// Number of lines in text (at least 1); used to clamp end-of-input errors.
int count_lines(std::string_view text);

}  // namespace qirvm::detail
