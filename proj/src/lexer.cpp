#include "lexer.hpp"

#include <cctype>

namespace qirvm::detail {

std::string_view describe(Tok kind) {
    switch (kind) {
    case Tok::Eof: return "end of input";
    case Tok::LocalVar: return "local identifier";
    case Tok::GlobalVar: return "global identifier";
    case Tok::AttrRef: return "attribute group reference";
    case Tok::MetaRef: return "metadata reference";
    case Tok::MetaName: return "named metadata";
    case Tok::MetaString: return "metadata string";
    case Tok::Exclaim: return "'!'";
    case Tok::String: return "string constant";
    case Tok::CString: return "c-string constant";
    case Tok::Integer: return "integer literal";
    case Tok::Float: return "floating-point literal";
    case Tok::HexFloat: return "hex floating-point literal";
    case Tok::Ident: return "identifier";
    case Tok::LabelDef: return "block label";
    case Tok::Equal: return "'='";
    case Tok::Comma: return "','";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Star: return "'*'";
    }
    return "token";
}

int count_lines(std::string_view text) {
    int lines = 0;
    for (char c : text) {
        if (c == '\n') ++lines;
    }
    if (!text.empty() && text.back() != '\n') ++lines;
    return lines == 0 ? 1 : lines;
}

namespace {

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$' || c == '-';
}

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$';
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space_and_comments();
            Token tok = next();
            bool eof = tok.is(Tok::Eof);
            out.push_back(std::move(tok));
            if (eof) break;
        }
        return out;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    SourceLoc here() const { return {line_, col_}; }

    void skip_space_and_comments() {
        while (!at_end()) {
            char c = peek();
            if (c == ';') {
                while (!at_end() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const { throw ParseError(loc, msg); }

    std::string read_quoted(SourceLoc start) {
        advance();  // opening quote
        std::string out;
        for (;;) {
            if (at_end() || peek() == '\n') fail(start, "unterminated string constant");
            char c = advance();
            if (c == '"') break;
            if (c == '\\') {
                if (peek() == '\\') {
                    advance();
                    out.push_back('\\');
                    continue;
                }
                int hi = hex_value(peek());
                int lo = hex_value(peek(1));
                if (hi < 0 || lo < 0) fail(here(), "invalid escape sequence in string constant");
                advance();
                advance();
                out.push_back(static_cast<char>(hi * 16 + lo));
                continue;
            }
            out.push_back(c);
        }
        return out;
    }

    std::string read_name() {
        std::string out;
        while (!at_end() && is_name_char(peek())) out.push_back(advance());
        return out;
    }

    Token sigil_name(Tok kind, SourceLoc start) {
        advance();  // sigil
        std::string name;
        if (peek() == '"') {
            name = read_quoted(start);
        } else {
            name = read_name();
        }
        if (name.empty()) fail(start, "expected a name after sigil");
        return {kind, std::move(name), start};
    }

    Token number(SourceLoc start) {
        std::string out;
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            out.push_back(advance());
            out.push_back(advance());
            while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) out.push_back(advance());
            return {Tok::HexFloat, std::move(out), start};
        }
        bool is_float = false;
        if (peek() == '-' || peek() == '+') out.push_back(advance());
        while (std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(advance());
        if (peek() == '.') {
            is_float = true;
            out.push_back(advance());
            while (std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(advance());
        }
        if (peek() == 'e' || peek() == 'E') {
            char sign = peek(1);
            bool digit_next = std::isdigit(static_cast<unsigned char>(sign)) ||
                              ((sign == '+' || sign == '-') && std::isdigit(static_cast<unsigned char>(peek(2))));
            if (digit_next) {
                is_float = true;
                out.push_back(advance());
                if (peek() == '+' || peek() == '-') out.push_back(advance());
                while (std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(advance());
            }
        }
        if (!is_float && peek() == ':') {
            advance();
            return {Tok::LabelDef, std::move(out), start};
        }
        return {is_float ? Tok::Float : Tok::Integer, std::move(out), start};
    }

    Token next() {
        SourceLoc start = here();
        if (at_end()) return {Tok::Eof, {}, start};
        char c = peek();
        switch (c) {
        case '=': advance(); return {Tok::Equal, "=", start};
        case ',': advance(); return {Tok::Comma, ",", start};
        case '(': advance(); return {Tok::LParen, "(", start};
        case ')': advance(); return {Tok::RParen, ")", start};
        case '{': advance(); return {Tok::LBrace, "{", start};
        case '}': advance(); return {Tok::RBrace, "}", start};
        case '[': advance(); return {Tok::LBracket, "[", start};
        case ']': advance(); return {Tok::RBracket, "]", start};
        case '*': advance(); return {Tok::Star, "*", start};
        case '%': return sigil_name(Tok::LocalVar, start);
        case '@': return sigil_name(Tok::GlobalVar, start);
        case '#': {
            advance();
            std::string digits;
            while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(advance());
            if (digits.empty()) fail(start, "expected attribute group number after '#'");
            return {Tok::AttrRef, std::move(digits), start};
        }
        case '!': {
            advance();
            if (peek() == '"') return {Tok::MetaString, read_quoted(start), start};
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                std::string digits;
                while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(advance());
                return {Tok::MetaRef, std::move(digits), start};
            }
            if (is_ident_start(peek())) return {Tok::MetaName, read_name(), start};
            return {Tok::Exclaim, "!", start};
        }
        case '"': {
            std::string s = read_quoted(start);
            return {Tok::String, std::move(s), start};
        }
        default: break;
        }
        if (c == 'c' && peek(1) == '"') {
            advance();
            return {Tok::CString, read_quoted(start), start};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            ((c == '-' || c == '+') && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            return number(start);
        }
        if (is_ident_start(c)) {
            std::string word;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                                 peek() == '.' || peek() == '$')) {
                word.push_back(advance());
            }
            if (peek() == ':') {
                advance();
                return {Tok::LabelDef, std::move(word), start};
            }
            return {Tok::Ident, std::move(word), start};
        }
        fail(start, std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace qirvm::detail
