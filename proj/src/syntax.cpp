#include "pafas/syntax.hpp"
#include "pafas/error.hpp"
#include "pafas/predicates.hpp"

#include <map>
#include <optional>
#include <set>

namespace pafas {

namespace {

enum class Tok { Ident, Zero, Dot, Plus, Pipe, ReadArrow, LBracket, RBracket, LBrace, RBrace, Comma, MapArrow,
                 LParen, RParen, Bang, Defines, Equals, Semicolon, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t{Tok::End, "", line_, col_};
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            char c = src_[pos_];
            if (is_identifier_start(c)) {
                std::size_t start = pos_;
                while (pos_ < src_.size() && is_identifier_char(src_[pos_])) advance();
                t.kind = Tok::Ident;
                t.text = std::string(src_.substr(start, pos_ - start));
            } else if (c == '0') {
                advance();
                if (pos_ < src_.size() && is_identifier_char(src_[pos_]))
                    throw ParseError(ErrorKind::Syntax, "unexpected character after '0'", t.line, t.column);
                t.kind = Tok::Zero;
            } else if (starts("|>")) { t.kind = Tok::ReadArrow; advance(2); }
            else if (starts("->")) { t.kind = Tok::MapArrow; advance(2); }
            else if (starts("<=")) { t.kind = Tok::Defines; advance(2); }
            else {
                switch (c) {
                case '.': t.kind = Tok::Dot; break;
                case '+': t.kind = Tok::Plus; break;
                case '|': t.kind = Tok::Pipe; break;
                case '[': t.kind = Tok::LBracket; break;
                case ']': t.kind = Tok::RBracket; break;
                case '{': t.kind = Tok::LBrace; break;
                case '}': t.kind = Tok::RBrace; break;
                case ',': t.kind = Tok::Comma; break;
                case '(': t.kind = Tok::LParen; break;
                case ')': t.kind = Tok::RParen; break;
                case '!': t.kind = Tok::Bang; break;
                case '=': t.kind = Tok::Equals; break;
                case ';': t.kind = Tok::Semicolon; break;
                default:
                    throw ParseError(ErrorKind::Syntax, std::string("unexpected character '") + c + "'", t.line,
                                     t.column);
                }
                advance();
            }
            out.push_back(std::move(t));
        }
    }

private:
    bool starts(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }
    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }
    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, Dialect dialect) : toks_(std::move(tokens)), dialect_(dialect) {}

    SourceProgram program() {
        SourceProgram prog;
        prog.dialect = dialect_;
        if (is_equation_start()) {
            while (is_equation_start()) {
                Token name = take();
                take(); // <=
                if (eq_names_.contains(name.text))
                    fail(ErrorKind::Syntax, "duplicate equation '" + name.text + "'", name);
                eq_names_.insert(name.text);
                eq_pos_.emplace(name.text, name);
                raw_.emplace_back(name.text, name);
                bodies_.emplace_back(name.text, Term::nil());
                body_tokens_.push_back(pos_);
                skip_term();
                accept(Tok::Semicolon);
            }
        }
        std::optional<std::size_t> main_start;
        Token main_tok = peek();
        if (peek().kind == Tok::Ident && peek().text == "main") {
            take();
            expect(Tok::Equals, "'=' after main");
            main_start = pos_;
            main_tok = peek();
            skip_term();
            accept(Tok::Semicolon);
        } else if (raw_.empty()) {
            main_start = pos_;
            skip_term();
        }
        if (peek().kind != Tok::End) fail(ErrorKind::Syntax, "unexpected token", peek());

        // Second pass: now that all equation names are known, parse bodies.
        for (std::size_t i = 0; i < bodies_.size(); ++i) {
            pos_ = body_tokens_[i];
            bodies_[i].second = expr(false);
        }
        Term main = Term::nil();
        if (main_start) {
            pos_ = *main_start;
            main = expr(false);
        }
        prog.equations = bodies_;

        if (main_start) {
            NameSet refs = free_vars(main);
            std::map<std::string, Term> expansions;
            for (const auto& r : refs) expansions.emplace(r, checked_expand(r));
            for (const auto& [n, e] : expansions) main = substitute(main, n, e);
            prog.main = main;
        } else {
            prog.main = checked_expand(raw_.front().first);
        }
        if (auto v = check_stratified(prog.main))
            fail(ErrorKind::UrgencyPosition, v->str(), main_start ? main_tok : raw_.front().second);
        if (!has_guarded_recursion(prog.main))
            fail(ErrorKind::UnguardedRecursion, "unguarded recursion", main_start ? main_tok : raw_.front().second);
        return prog;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    Token take() {
        Token t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        take();
        return true;
    }
    Token expect(Tok k, const std::string& what) {
        if (peek().kind != k) fail(ErrorKind::Syntax, "expected " + what, peek());
        return take();
    }
    [[noreturn]] void fail(ErrorKind kind, const std::string& msg, const Token& at) const {
        throw ParseError(kind, msg, at.line, at.column);
    }

    bool is_equation_start() const {
        return peek().kind == Tok::Ident && peek(1).kind == Tok::Defines;
    }

    // Skips one term in the first pass: runs the parser with name checks off.
    void skip_term() {
        bool saved = resolving_;
        resolving_ = false;
        expr(false);
        resolving_ = saved;
    }

    Term checked_expand(const std::string& name) {
        if (!eq_names_.contains(name)) {
            const Token& at = eq_pos_.empty() ? toks_.front() : eq_pos_.begin()->second;
            fail(ErrorKind::UnknownName, "unknown equation name '" + name + "'", at);
        }
        Term t = desugar_equations(bodies_, name);
        if (!has_guarded_recursion(t))
            fail(ErrorKind::UnguardedRecursion, "unguarded recursion in equation '" + name + "'", eq_pos_.at(name));
        return t;
    }

    Action action_token(bool initial) {
        Token start = peek();
        bool urgent = accept(Tok::Bang);
        if (urgent && initial)
            fail(ErrorKind::UrgencyPosition, "urgency marker in an initial-only position", start);
        Token name = expect(Tok::Ident, "action name");
        if (name.text == "tau") return Action::tau(urgent);
        if (!is_valid_action_name(name.text)) fail(ErrorKind::Syntax, "invalid action name '" + name.text + "'", name);
        return Action::visible(name.text, urgent);
    }

    std::string name_token(const std::string& what) {
        Token t = expect(Tok::Ident, what);
        if (!is_valid_action_name(t.text)) fail(ErrorKind::Syntax, "invalid " + what + " '" + t.text + "'", t);
        return t.text;
    }

    Term expr(bool initial) {
        Term t = par(initial);
        while (accept(Tok::Plus)) t = Term::sum(t, par(initial));
        return t;
    }

    bool at_sync_open() const { return peek().kind == Tok::Pipe && peek(1).kind == Tok::LBracket; }

    Term par(bool initial) {
        Term t = unary(initial);
        while (at_sync_open()) {
            take();
            take();
            NameSet sync;
            if (peek().kind != Tok::RBracket) {
                do sync.insert(name_token("synchronisation action"));
                while (accept(Tok::Comma));
            }
            expect(Tok::RBracket, "']' closing synchronisation set");
            expect(Tok::Pipe, "'|' closing synchronisation set");
            t = Term::par(t, unary(initial), std::move(sync));
        }
        return t;
    }

    Term unary(bool initial) {
        const Token& t = peek();
        if (t.kind == Tok::Ident && t.text == "rec") {
            Token rec_tok = take();
            Token var = expect(Tok::Ident, "recursion variable");
            if (!is_valid_action_name(var.text)) fail(ErrorKind::Syntax, "invalid variable '" + var.text + "'", var);
            if (bound_.contains(var.text)) fail(ErrorKind::ShadowedBinder, "rec binder '" + var.text + "' shadows an enclosing binder", var);
            if (eq_names_.contains(var.text)) fail(ErrorKind::ShadowedBinder, "rec binder '" + var.text + "' shadows an equation name", var);
            expect(Tok::Dot, "'.' after recursion variable");
            bound_.insert(var.text);
            Term body = expr(initial);
            bound_.erase(var.text);
            if (resolving_ && !is_guarded(var.text, body))
                fail(ErrorKind::UnguardedRecursion, "unguarded recursion on '" + var.text + "'", rec_tok);
            return Term::rec(var.text, body);
        }
        if (t.kind == Tok::LBrace) {
            Token brace = take();
            ReadSetActions actions;
            if (peek().kind != Tok::RBrace) {
                do actions.push_back(action_token(initial));
                while (accept(Tok::Comma));
            }
            expect(Tok::RBrace, "'}' closing read set");
            expect(Tok::ReadArrow, "'|>' after read set");
            if (dialect_ == Dialect::R)
                fail(ErrorKind::WrongDialect, "read sets belong to the read-set language (use --lang s)", brace);
            if (!is_legal_read_set(actions))
                fail(ErrorKind::IllegalReadSet, "read set cannot contain both a lazy and an urgent copy of the same action", brace);
            return Term::read_set(std::move(actions), unary(initial));
        }
        bool action_start = (t.kind == Tok::Bang) ||
                            (t.kind == Tok::Ident && t.text != "rec" &&
                             (peek(1).kind == Tok::Dot || peek(1).kind == Tok::ReadArrow));
        if (action_start) {
            Token start = peek();
            Action a = action_token(initial);
            if (accept(Tok::Dot)) return Term::prefix(a, unary(true));
            if (peek().kind == Tok::ReadArrow) {
                if (dialect_ == Dialect::S)
                    fail(ErrorKind::WrongDialect, "read-action prefixes belong to the read-action language (use {a} |> in --lang s)", start);
                take();
                return Term::read(a, unary(initial));
            }
            fail(ErrorKind::Syntax, "expected '.' or '|>' after action", peek());
        }
        return postfix(initial);
    }

    Term postfix(bool initial) {
        Term t = atom(initial);
        while (peek().kind == Tok::LBracket) {
            take();
            std::map<std::string, Action> m;
            if (peek().kind != Tok::RBracket) {
                do {
                    Token from_tok = peek();
                    std::string from = name_token("relabelled action");
                    expect(Tok::MapArrow, "'->' in relabelling");
                    Token to = expect(Tok::Ident, "relabelling target");
                    Action target = to.text == "tau" ? Action::tau() : Action::visible(name_check(to), false);
                    if (!m.emplace(from, target).second)
                        fail(ErrorKind::Syntax, "action '" + from + "' relabelled twice", from_tok);
                } while (accept(Tok::Comma));
            }
            expect(Tok::RBracket, "']' closing relabelling");
            t = Term::relabel(t, Relabelling(m));
        }
        return t;
    }

    std::string name_check(const Token& t) {
        if (!is_valid_action_name(t.text)) fail(ErrorKind::Syntax, "invalid action name '" + t.text + "'", t);
        return t.text;
    }

    Term atom(bool initial) {
        Token t = peek();
        switch (t.kind) {
        case Tok::Zero: take(); return Term::nil();
        case Tok::LParen: {
            take();
            Term inner = expr(initial);
            expect(Tok::RParen, "')'");
            return inner;
        }
        case Tok::Ident: {
            take();
            if (t.text == "tau" || t.text == "main")
                fail(ErrorKind::Syntax, "unexpected keyword '" + t.text + "'", t);
            if (resolving_ && !bound_.contains(t.text) && !eq_names_.contains(t.text))
                fail(ErrorKind::UnknownName, "unknown name '" + t.text + "'", t);
            return Term::var(t.text);
        }
        default:
            fail(ErrorKind::Syntax, "expected a term", t);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Dialect dialect_;
    bool resolving_ = true;
    NameSet bound_;
    std::set<std::string> eq_names_;
    std::map<std::string, Token> eq_pos_;
    std::vector<std::pair<std::string, Token>> raw_;
    std::vector<std::pair<std::string, Term>> bodies_;
    std::vector<std::size_t> body_tokens_;
};

Term expand(const std::map<std::string, Term>& eqs, const std::string& name, NameSet& open) {
    open.insert(name);
    Term body = eqs.at(name);
    NameSet refs = free_vars(body);
    for (const auto& r : refs) {
        if (open.contains(r) || !eqs.contains(r)) continue;
        body = substitute(body, r, expand(eqs, r, open));
    }
    open.erase(name);
    if (free_vars(body).contains(name)) return Term::rec(name, body);
    return body;
}

int level(const Term& t) {
    switch (t.kind()) {
    case Kind::Rec: return 0;
    case Kind::Sum: return 1;
    case Kind::Par: return 2;
    case Kind::Prefix:
    case Kind::ReadAction:
    case Kind::ReadSet: return 3;
    case Kind::Relabel: return 4;
    default: return 5;
    }
}

void print_to(const Term& t, int required, std::string& out) {
    bool parens = level(t) < required;
    if (parens) out += "(";
    switch (t.kind()) {
    case Kind::Nil: out += "0"; break;
    case Kind::Var: out += t.name(); break;
    case Kind::Prefix:
        out += t.action().str();
        out += ".";
        print_to(t.body(), 3, out);
        break;
    case Kind::ReadAction:
        out += t.action().str();
        out += " |> ";
        print_to(t.body(), 3, out);
        break;
    case Kind::ReadSet: {
        out += "{";
        bool first = true;
        for (const auto& a : t.read_actions()) {
            if (!first) out += ",";
            out += a.str();
            first = false;
        }
        out += "} |> ";
        print_to(t.body(), 3, out);
        break;
    }
    case Kind::Sum:
        print_to(t.left(), 1, out);
        out += " + ";
        print_to(t.right(), 2, out);
        break;
    case Kind::Par: {
        print_to(t.left(), 2, out);
        out += " |[";
        bool first = true;
        for (const auto& a : t.sync()) {
            if (!first) out += ",";
            out += a;
            first = false;
        }
        out += "]| ";
        print_to(t.right(), 3, out);
        break;
    }
    case Kind::Relabel: {
        print_to(t.body(), 4, out);
        out += "[";
        bool first = true;
        for (const auto& [from, to] : t.relabelling().mapping()) {
            if (!first) out += ", ";
            out += from + "->" + to.name();
            first = false;
        }
        out += "]";
        break;
    }
    case Kind::Rec:
        out += "rec " + t.name() + ". ";
        print_to(t.body(), 0, out);
        break;
    }
    if (parens) out += ")";
}

} // namespace

Term desugar_equations(const std::vector<std::pair<std::string, Term>>& equations, const std::string& name) {
    std::map<std::string, Term> eqs(equations.begin(), equations.end());
    NameSet open;
    return expand(eqs, name, open);
}

SourceProgram parse_program(std::string_view text, Dialect dialect) {
    Parser p(Lexer(text).run(), dialect);
    return p.program();
}

Term parse_term(std::string_view text, Dialect dialect) { return parse_program(text, dialect).main; }

std::string print(const Term& t) {
    std::string out;
    print_to(t, 0, out);
    return out;
}

} // namespace pafas
