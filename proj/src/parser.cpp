#include "chasekit/parser.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace chasekit {

std::string ParseError::to_string() const {
    std::ostringstream os;
    os << pos.line << ":" << pos.col << ": ";
    switch (kind) {
        case Kind::Syntax: os << "syntax error: "; break;
        case Kind::ArityMismatch: os << "arity mismatch: "; break;
        case Kind::UnsafeRule: os << "unsafe rule: "; break;
        case Kind::Validation: os << "invalid program: "; break;
    }
    os << message;
    if (!expected.empty()) {
        os << " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) os << ", ";
            os << expected[i];
        }
        os << ")";
    }
    return os.str();
}

namespace {

enum class Tok {
    Ident,     // lowercase-first identifier: predicate, constant, query name
    Var,       // uppercase-first identifier
    Number,    // digit run, a constant
    LParen,
    RParen,
    Comma,
    Dot,
    Arrow,     // ->
    Turnstile, // :-
    Pipe,
    Equals,
    KwExists,
    KwFalse,
    End,
};

const char* describe(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Var: return "variable";
        case Tok::Number: return "number";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::Arrow: return "'->'";
        case Tok::Turnstile: return "':-'";
        case Tok::Pipe: return "'|'";
        case Tok::Equals: return "'='";
        case Tok::KwExists: return "'exists'";
        case Tok::KwFalse: return "'false'";
        case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

struct LexFail {
    ParseError error;
};

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> tokens;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
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
        if (c == '%') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        SourcePos pos{line, col};
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) ||
                    text[i] == '_')) {
                advance(1);
            }
            std::string word(text.substr(start, i - start));
            Tok kind;
            if (word == "exists") {
                kind = Tok::KwExists;
            } else if (word == "false") {
                kind = Tok::KwFalse;
            } else if (std::isupper(static_cast<unsigned char>(word[0]))) {
                kind = Tok::Var;
            } else {
                kind = Tok::Ident;
            }
            tokens.push_back({kind, std::move(word), pos});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[i]))) {
                advance(1);
            }
            tokens.push_back(
                {Tok::Number, std::string(text.substr(start, i - start)), pos});
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            tokens.push_back({Tok::Arrow, "->", pos});
            advance(2);
            continue;
        }
        if (c == ':' && i + 1 < text.size() && text[i + 1] == '-') {
            tokens.push_back({Tok::Turnstile, ":-", pos});
            advance(2);
            continue;
        }
        Tok kind;
        switch (c) {
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case ',': kind = Tok::Comma; break;
            case '.': kind = Tok::Dot; break;
            case '|': kind = Tok::Pipe; break;
            case '=': kind = Tok::Equals; break;
            default:
                throw LexFail{ParseError{ParseError::Kind::Syntax, pos,
                                         std::string("unexpected character '") +
                                             c + "'",
                                         {}}};
        }
        tokens.push_back({kind, std::string(1, c), pos});
        advance(1);
    }
    tokens.push_back({Tok::End, "", {line, col}});
    return tokens;
}

struct ParseFail {
    ParseError error;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Program run() {
        Program prog;
        while (peek().kind != Tok::End) {
            statement(prog);
        }
        return prog;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        if (i >= tokens_.size()) i = tokens_.size() - 1;
        return tokens_[i];
    }

    const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const Token& at, std::string message,
                           std::vector<std::string> expected = {}) {
        throw ParseFail{ParseError{ParseError::Kind::Syntax, at.pos,
                                   std::move(message), std::move(expected)}};
    }

    [[noreturn]] void fail_kind(ParseError::Kind kind, SourcePos pos,
                                std::string message) {
        throw ParseFail{ParseError{kind, pos, std::move(message), {}}};
    }

    const Token& expect(Tok kind) {
        if (peek().kind != kind) {
            fail(peek(), "unexpected " + std::string(describe(peek().kind)),
                 {describe(kind)});
        }
        return take();
    }

    Term term() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Var: take(); return Term::variable(t.text);
            case Tok::Ident:
            case Tok::Number: take(); return Term::constant(t.text);
            default:
                fail(t, "unexpected " + std::string(describe(t.kind)),
                     {"constant", "variable"});
        }
    }

    // Syntax only; schema declaration is the caller's business because a
    // query head looks like an atom but its name is a label, not a predicate.
    Atom atom_raw(SourcePos* where = nullptr) {
        const Token& name = expect(Tok::Ident);
        if (where) *where = name.pos;
        Atom a{name.text, {}};
        expect(Tok::LParen);
        if (peek().kind != Tok::RParen) {
            a.args.push_back(term());
            while (peek().kind == Tok::Comma) {
                take();
                a.args.push_back(term());
            }
        }
        expect(Tok::RParen);
        return a;
    }

    void declare(Program& prog, const Atom& a, SourcePos pos) {
        if (!prog.schema.declare(a.predicate, a.arity())) {
            fail_kind(ParseError::Kind::ArityMismatch, pos,
                      "predicate " + a.predicate + " used with arity " +
                          std::to_string(a.arity()) +
                          " but earlier with arity " +
                          std::to_string(*prog.schema.arity_of(a.predicate)));
        }
    }

    Atom atom(Program& prog) {
        SourcePos pos;
        Atom a = atom_raw(&pos);
        declare(prog, a, pos);
        return a;
    }

    Disjunct disjunct(Program& prog) {
        Disjunct d;
        if (peek().kind == Tok::KwExists) {
            take();
            d.existentials.push_back(Term::variable(expect(Tok::Var).text));
            while (peek().kind == Tok::Comma && peek(1).kind == Tok::Var) {
                take();
                d.existentials.push_back(Term::variable(expect(Tok::Var).text));
            }
        }
        d.head.push_back(atom(prog));
        while (peek().kind == Tok::Comma) {
            take();
            d.head.push_back(atom(prog));
        }
        return d;
    }

    void dependency(Program& prog, std::vector<Atom> body, SourcePos pos) {
        Dependency dep;
        if (peek().kind == Tok::KwFalse) {
            take();
            dep = NegConstraint{std::move(body)};
        } else if (peek().kind == Tok::Var) {
            Term left = Term::variable(take().text);
            expect(Tok::Equals);
            Term right = Term::variable(expect(Tok::Var).text);
            dep = Egd{std::move(body), std::move(left), std::move(right)};
        } else {
            Dtgd tgd{std::move(body), {}};
            tgd.disjuncts.push_back(disjunct(prog));
            while (peek().kind == Tok::Pipe) {
                take();
                tgd.disjuncts.push_back(disjunct(prog));
            }
            dep = std::move(tgd);
        }
        expect(Tok::Dot);
        if (auto err = validate_dependency(dep)) {
            fail_kind(ParseError::Kind::UnsafeRule, pos, *err);
        }
        prog.dependencies.push_back(std::move(dep));
        prog.dependency_lines.push_back(pos.line);
    }

    void query(Program& prog, Atom head, SourcePos pos) {
        ConjunctiveQuery q;
        q.name = head.predicate;
        for (const Term& t : head.args) {
            if (!t.is_variable()) {
                fail_kind(ParseError::Kind::Validation, pos,
                          "query head arguments must be variables");
            }
            q.answer_terms.push_back(t);
        }
        expect(Tok::Turnstile);
        while (true) {
            if (peek().kind == Tok::Ident && peek(1).kind == Tok::LParen) {
                q.body.push_back(atom(prog));
            } else {
                Term left = term();
                expect(Tok::Equals);
                q.equalities.insert(make_equality(std::move(left), term()));
            }
            if (peek().kind != Tok::Comma) break;
            take();
        }
        expect(Tok::Dot);

        std::optional<ConjunctiveQuery> normalized = normalize_query(q);
        if (normalized) {
            const std::set<std::string> body_vars = variables_of(normalized->body);
            for (const Term& t : normalized->answer_terms) {
                if (t.is_variable() && !body_vars.count(t.name())) {
                    fail_kind(ParseError::Kind::UnsafeRule, pos,
                              "answer variable " + t.name() +
                                  " is not bound by the query body");
                }
            }
        }
        prog.queries.push_back(std::move(q));
        prog.query_lines.push_back(pos.line);
    }

    void statement(Program& prog) {
        const Token& first = peek();
        if (first.kind != Tok::Ident) {
            fail(first, "unexpected " + std::string(describe(first.kind)),
                 {"fact", "rule", "query"});
        }
        SourcePos pos = first.pos;
        Atom a = atom_raw();
        if (peek().kind == Tok::Turnstile) {
            query(prog, std::move(a), pos);
            return;
        }
        declare(prog, a, pos);
        std::vector<Atom> atoms;
        atoms.push_back(std::move(a));
        while (peek().kind == Tok::Comma) {
            take();
            atoms.push_back(atom(prog));
        }
        if (peek().kind == Tok::Arrow) {
            take();
            dependency(prog, std::move(atoms), pos);
            return;
        }
        if (peek().kind == Tok::Dot) {
            take();
            for (Atom& fact : atoms) {
                for (const Term& t : fact.args) {
                    if (t.is_variable()) {
                        fail_kind(ParseError::Kind::UnsafeRule, pos,
                                  "fact contains the unbound variable " +
                                      t.name());
                    }
                }
                prog.facts.insert(std::move(fact));
            }
            return;
        }
        fail(peek(), "unexpected " + std::string(describe(peek().kind)),
             {"','", "'.'", "'->'", "':-'"});
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

ParseResult parse_program(std::string_view text) {
    try {
        Parser parser(lex(text));
        return ParseResult(parser.run());
    } catch (const LexFail& f) {
        return ParseResult(f.error);
    } catch (const ParseFail& f) {
        return ParseResult(f.error);
    }
}

}  // namespace chasekit
