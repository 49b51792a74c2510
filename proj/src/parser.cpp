#include "ffqe/parser.hpp"

#include <cctype>

#include "ffqe/errors.hpp"

namespace ffqe {

namespace {

enum class Tok {
    Ident,
    Int,
    LParen,
    RParen,
    Dot,
    Eq,
    Neq,
    Tilde,
    AndOp,
    OrOp,
    Imp,
    Iff,
    Plus,
    Minus,
    Star,
    Caret,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

struct Lexer {
    std::string_view s;
    size_t i = 0;
    int line = 1;
    int col = 1;

    void bump(size_t n = 1) {
        for (size_t k = 0; k < n && i < s.size(); ++k) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    }
    void skip_ws() {
        for (;;) {
            while (i < s.size() && std::isspace((unsigned char)s[i])) bump();
            if (i < s.size() && s[i] == '#') {
                while (i < s.size() && s[i] != '\n') bump();
                continue;
            }
            break;
        }
    }
    bool starts(const char* t) const {
        size_t n = std::char_traits<char>::length(t);
        return s.compare(i, n, t) == 0;
    }

    Token next() {
        skip_ws();
        int ln = line, cl = col;
        if (i >= s.size()) return {Tok::End, "", ln, cl};
        char c = s[i];
        auto tok = [&](Tok k, size_t len) {
            Token t{k, std::string(s.substr(i, len)), ln, cl};
            bump(len);
            return t;
        };
        if (starts("<->")) return tok(Tok::Iff, 3);
        if (starts("->")) return tok(Tok::Imp, 2);
        if (starts("!=")) return tok(Tok::Neq, 2);
        if (starts("/\\")) return tok(Tok::AndOp, 2);
        if (starts("\\/")) return tok(Tok::OrOp, 2);
        switch (c) {
            case '(': return tok(Tok::LParen, 1);
            case ')': return tok(Tok::RParen, 1);
            case '.': return tok(Tok::Dot, 1);
            case '=': return tok(Tok::Eq, 1);
            case '~': return tok(Tok::Tilde, 1);
            case '+': return tok(Tok::Plus, 1);
            case '-': return tok(Tok::Minus, 1);
            case '*': return tok(Tok::Star, 1);
            case '^': return tok(Tok::Caret, 1);
            default: break;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t n = 0;
            while (i + n < s.size() && std::isdigit((unsigned char)s[i + n])) ++n;
            return tok(Tok::Int, n);
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t n = 0;
            while (i + n < s.size() &&
                   (std::isalnum((unsigned char)s[i + n]) || s[i + n] == '_'))
                ++n;
            return tok(Tok::Ident, n);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", ln, cl);
    }
};

bool is_keyword(const std::string& w) {
    return w == "exists" || w == "forall" || w == "true" || w == "false";
}

struct Parser {
    const FieldSpec& field;
    std::vector<Token> toks;
    size_t pos = 0;

    explicit Parser(const FieldSpec& f, std::string_view text) : field(f) {
        Lexer lx{text};
        for (;;) {
            Token t = lx.next();
            toks.push_back(t);
            if (t.kind == Tok::End) break;
        }
    }

    const Token& peek() const { return toks[pos]; }
    Token take() { return toks[pos++]; }
    bool at(Tok k) const { return toks[pos].kind == k; }
    bool eat(Tok k) {
        if (at(k)) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw ParseError(msg, t.line, t.col);
    }
    void expect(Tok k, const char* what) {
        if (!eat(k)) fail(std::string("expected ") + what);
    }

    // ---- terms ----

    TermPtr term() {
        TermPtr v = at(Tok::Minus) ? (take(), Term::neg(term_prod())) : term_prod();
        std::vector<TermPtr> sum{v};
        for (;;) {
            if (eat(Tok::Plus))
                sum.push_back(term_prod());
            else if (eat(Tok::Minus))
                sum.push_back(Term::neg(term_prod()));
            else
                break;
        }
        return Term::add(std::move(sum));
    }
    TermPtr term_prod() {
        std::vector<TermPtr> prod{term_pow()};
        while (eat(Tok::Star)) prod.push_back(term_pow());
        return Term::mul(std::move(prod));
    }
    TermPtr term_pow() {
        TermPtr base = term_primary();
        if (eat(Tok::Caret)) {
            if (!at(Tok::Int)) fail("expected integer exponent");
            Token t = take();
            unsigned long long e = std::stoull(t.text);
            if (e > (1u << 20)) throw ParseError("exponent too large", t.line, t.col);
            return Term::pow(std::move(base), (uint32_t)e);
        }
        return base;
    }
    TermPtr term_primary() {
        if (eat(Tok::LParen)) {
            TermPtr t = term();
            expect(Tok::RParen, "')'");
            return t;
        }
        if (at(Tok::Int)) {
            Token t = take();
            if (t.text.size() > 9) throw ParseError("integer too large", t.line, t.col);
            return Term::integer(field, std::stoll(t.text));
        }
        if (at(Tok::Ident)) {
            Token t = take();
            if (is_keyword(t.text))
                throw ParseError("keyword '" + t.text + "' in term position", t.line, t.col);
            if (t.text[0] == '_')
                throw SemanticError("identifier '" + t.text + "' is reserved");
            if (t.text == field.generator_name() && field.r() > 1) {
                std::vector<int> c(field.r(), 0);
                c[1] = 1;
                return Term::constant(FieldElement(field, field.code_of(c)));
            }
            return Term::variable(t.text);
        }
        fail("expected term");
    }

    // ---- formulas ----

    FormulaPtr formula() {
        if (at(Tok::Ident) && (peek().text == "exists" || peek().text == "forall")) {
            Token q = take();
            std::vector<std::string> vars;
            while (at(Tok::Ident) && !is_keyword(peek().text)) {
                Token v = take();
                if (v.text[0] == '_')
                    throw SemanticError("identifier '" + v.text + "' is reserved");
                if (v.text == field.generator_name() && field.r() > 1)
                    throw SemanticError("cannot bind the field generator '" + v.text + "'");
                vars.push_back(v.text);
            }
            if (vars.empty()) fail("expected quantified variables");
            expect(Tok::Dot, "'.'");
            FormulaPtr body = formula();
            return Formula::quantify(
                q.text == "exists" ? Quantifier::Exists : Quantifier::Forall,
                std::move(vars), std::move(body));
        }
        return iff();
    }
    FormulaPtr iff() {
        FormulaPtr lhs = imp();
        while (eat(Tok::Iff)) {
            FormulaPtr rhs = imp();
            // a <-> b  ==  (~a \/ b) /\ (~b \/ a)
            lhs = Formula::conj(
                field,
                {Formula::disj(field, {Formula::negate(lhs), rhs}),
                 Formula::disj(field, {Formula::negate(rhs), lhs})});
        }
        return lhs;
    }
    FormulaPtr imp() {
        FormulaPtr lhs = disj();
        if (eat(Tok::Imp)) {
            FormulaPtr rhs = imp(); // right associative
            return Formula::disj(field, {Formula::negate(lhs), rhs});
        }
        return lhs;
    }
    FormulaPtr disj() {
        std::vector<FormulaPtr> kids{conj()};
        while (eat(Tok::OrOp)) kids.push_back(conj());
        return kids.size() == 1 ? kids[0] : Formula::disj(field, std::move(kids));
    }
    FormulaPtr conj() {
        std::vector<FormulaPtr> kids{neg()};
        while (eat(Tok::AndOp)) kids.push_back(neg());
        return kids.size() == 1 ? kids[0] : Formula::conj(field, std::move(kids));
    }
    FormulaPtr neg() {
        if (eat(Tok::Tilde)) return Formula::negate(neg());
        return atom();
    }
    FormulaPtr atom() {
        if (at(Tok::Ident) && peek().text == "true") {
            take();
            return Formula::tru(field);
        }
        if (at(Tok::Ident) && peek().text == "false") {
            take();
            return Formula::fls(field);
        }
        if (at(Tok::Ident) && (peek().text == "exists" || peek().text == "forall"))
            return formula();
        if (at(Tok::LParen)) {
            // Could open a parenthesized term of a relation or a parenthesized
            // formula; try the relation first and fall back.
            size_t save = pos;
            try {
                return relation();
            } catch (const ParseError&) {
                pos = save;
            }
            expect(Tok::LParen, "'('");
            FormulaPtr f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        return relation();
    }
    FormulaPtr relation() {
        TermPtr lhs = term();
        bool negated;
        if (eat(Tok::Eq))
            negated = false;
        else if (eat(Tok::Neq))
            negated = true;
        else
            fail("expected '=' or '!='");
        TermPtr rhs = term();
        // store moved to one side; "t = 0" keeps just t
        TermPtr moved =
            (rhs->kind() == Term::Kind::Constant && rhs->value().is_zero())
                ? lhs
                : Term::sub(lhs, rhs);
        return negated ? Formula::neg_atom(field, moved) : Formula::atom(field, moved);
    }
};

} // namespace

FormulaPtr parse_formula(std::string_view text, const FieldSpec& field) {
    Parser p(field, text);
    FormulaPtr f = p.formula();
    if (!p.at(Tok::End)) p.fail("trailing input after formula");
    validate_user_formula(f);
    return f;
}

} // namespace ffqe
