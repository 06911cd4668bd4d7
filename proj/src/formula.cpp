#include "mqw/formula.hpp"

#include <algorithm>
#include <cctype>
#include <exception>
#include <functional>
#include <optional>

namespace mqw {

TermPtr Term::zero() { return std::make_shared<const Term>(Term{Kind::zero, {}, nullptr, nullptr}); }
TermPtr Term::one() { return std::make_shared<const Term>(Term{Kind::one, {}, nullptr, nullptr}); }
TermPtr Term::var(std::string name) {
    return std::make_shared<const Term>(Term{Kind::var, std::move(name), nullptr, nullptr});
}
TermPtr Term::binary(Kind k, TermPtr a, TermPtr b) {
    return std::make_shared<const Term>(Term{k, {}, std::move(a), std::move(b)});
}
TermPtr Term::negate(TermPtr a) { return std::make_shared<const Term>(Term{Kind::neg, {}, std::move(a), nullptr}); }
TermPtr Term::literal(unsigned long n) {
    if (n == 0) return zero();
    TermPtr t = one();
    for (unsigned long j = 1; j < n; ++j) t = binary(Kind::add, t, one());
    return t;
}

FormulaPtr Formula::equal(TermPtr a, TermPtr b) {
    return std::make_shared<const Formula>(Formula{Kind::eq, std::move(a), std::move(b), nullptr, nullptr, {}, {}});
}
FormulaPtr Formula::negate(FormulaPtr a) {
    return std::make_shared<const Formula>(Formula{Kind::not_, nullptr, nullptr, std::move(a), nullptr, {}, {}});
}
FormulaPtr Formula::binary(Kind k, FormulaPtr a, FormulaPtr b) {
    return std::make_shared<const Formula>(Formula{k, nullptr, nullptr, std::move(a), std::move(b), {}, {}});
}
FormulaPtr Formula::quantifier(Kind k, std::string var, std::string domain, FormulaPtr body) {
    return std::make_shared<const Formula>(
        Formula{k, nullptr, nullptr, std::move(body), nullptr, std::move(var), std::move(domain)});
}

namespace {

template <class P>
bool same(const P& a, const P& b) {
    if (!a || !b) return !a && !b;
    return a == b || *a == *b;
}

bool is_quantifier(const Formula& f) { return f.kind == Formula::Kind::exists || f.kind == Formula::Kind::forall; }

}  // namespace

bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.name == b.name && same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
}

bool operator==(const Formula& a, const Formula& b) {
    return a.kind == b.kind && a.var == b.var && a.domain == b.domain && same(a.lt, b.lt) && same(a.rt, b.rt) &&
           same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
}

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------- lexer

namespace {

enum class Tok { ident, number, lparen, rparen, plus, minus, star, caret, square, eq, neq, not_, and_, or_, implies,
                 exists, forall, in, dot, comma, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line, column, offset;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::end: return "end of input";
        case Tok::ident: return "identifier '" + t.text + "'";
        case Tok::number: return "number " + t.text;
        default: return "'" + t.text + "'";
    }
}

class Lexer {
public:
    explicit Lexer(const std::string& src) : s_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            const std::size_t line = line_, col = col_, off = i_;
            if (i_ >= s_.size()) {
                out.push_back({Tok::end, "", line, col, off});
                return out;
            }
            auto tok = next();
            tok.line = line;
            tok.column = col;
            tok.offset = off;
            out.push_back(std::move(tok));
        }
    }

private:
    // Decodes one UTF-8 code point without consuming it.
    std::pair<char32_t, std::size_t> peek_cp() const {
        const auto c = static_cast<unsigned char>(s_[i_]);
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 6 ? 2 : (c >> 4) == 14 ? 3 : (c >> 3) == 30 ? 4 : 0;
        if (len == 0 || i_ + len > s_.size()) throw ParseError("invalid UTF-8 byte", line_, col_);
        char32_t cp = len == 1 ? c : c & (0x7f >> len);
        for (std::size_t j = 1; j < len; ++j) {
            const auto cc = static_cast<unsigned char>(s_[i_ + j]);
            if ((cc >> 6) != 2) throw ParseError("invalid UTF-8 byte", line_, col_);
            cp = (cp << 6) | (cc & 0x3f);
        }
        return {cp, len};
    }

    void advance(std::size_t bytes) {
        for (std::size_t j = 0; j < bytes; ++j) {
            if (s_[i_] == '\n') {
                ++line_;
                col_ = 0;
            }
            // count code points, not continuation bytes
            if ((static_cast<unsigned char>(s_[i_]) >> 6) != 2) ++col_;
            ++i_;
        }
    }

    void skip_space() {
        while (i_ < s_.size()) {
            const char c = s_[i_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance(1);
            } else if (c == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') advance(1);
            } else {
                break;
            }
        }
    }

    Token make(Tok k, std::size_t bytes) {
        Token t{k, s_.substr(i_, bytes), 0, 0, 0};
        advance(bytes);
        return t;
    }

    bool starts(const char* lit) const { return s_.compare(i_, std::char_traits<char>::length(lit), lit) == 0; }

    Token next() {
        const char c = s_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_' || s_[j] == '\''))
                ++j;
            Token t = make(Tok::ident, j - i_);
            if (t.text == "exists") t.kind = Tok::exists;
            else if (t.text == "forall") t.kind = Tok::forall;
            else if (t.text == "in") t.kind = Tok::in;
            else if (t.text == "not") t.kind = Tok::not_;
            else if (t.text == "and") t.kind = Tok::and_;
            else if (t.text == "or") t.kind = Tok::or_;
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            return make(Tok::number, j - i_);
        }
        if (starts("->")) return make(Tok::implies, 2);
        if (starts("!=")) return make(Tok::neq, 2);
        if (starts("/\\")) return make(Tok::and_, 2);
        if (starts("\\/")) return make(Tok::or_, 2);
        switch (c) {
            case '(': return make(Tok::lparen, 1);
            case ')': return make(Tok::rparen, 1);
            case '+': return make(Tok::plus, 1);
            case '-': return make(Tok::minus, 1);
            case '*': return make(Tok::star, 1);
            case '^': return make(Tok::caret, 1);
            case '=': return make(Tok::eq, 1);
            case '~':
            case '!': return make(Tok::not_, 1);
            case '&': return make(Tok::and_, 1);
            case '|': return make(Tok::or_, 1);
            case '.': return make(Tok::dot, 1);
            case ',': return make(Tok::comma, 1);
            default: break;
        }
        const auto [cp, len] = peek_cp();
        switch (cp) {
            case U'¬': return make(Tok::not_, len);
            case U'∧': return make(Tok::and_, len);
            case U'∨': return make(Tok::or_, len);
            case U'→': return make(Tok::implies, len);
            case U'∃': return make(Tok::exists, len);
            case U'∀': return make(Tok::forall, len);
            case U'∈': return make(Tok::in, len);
            case U'·':
            case U'×': return make(Tok::star, len);
            case U'−': return make(Tok::minus, len);
            case U'≠': return make(Tok::neq, len);
            case U'²': return make(Tok::square, len);
            default: break;
        }
        throw ParseError("unexpected character '" + s_.substr(i_, len) + "'", line_, col_);
    }

    const std::string& s_;
    std::size_t i_ = 0, line_ = 1, col_ = 1;
};

// ---------------------------------------------------------------- parser

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(Lexer(src).run()) {}

    FormulaPtr whole_formula() {
        auto f = formula();
        expect_end();
        return f;
    }

    TermPtr whole_term() {
        auto t = term();
        expect_end();
        return t;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool at(Tok k) const { return peek().kind == k; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("expected " + what + ", found " + describe(peek()), peek().line, peek().column);
    }

    const Token& expect(Tok k, const char* what) {
        if (!at(k)) fail(what);
        return take();
    }

    void expect_end() {
        if (!at(Tok::end)) fail("end of input");
    }

    FormulaPtr formula() {
        auto lhs = disjunction();
        if (at(Tok::implies)) {
            take();
            return Formula::binary(Formula::Kind::implies, lhs, formula());
        }
        return lhs;
    }

    FormulaPtr disjunction() {
        auto f = conjunction();
        while (at(Tok::or_)) {
            take();
            f = Formula::binary(Formula::Kind::or_, f, conjunction());
        }
        return f;
    }

    FormulaPtr conjunction() {
        auto f = unary();
        while (at(Tok::and_)) {
            take();
            f = Formula::binary(Formula::Kind::and_, f, unary());
        }
        return f;
    }

    FormulaPtr unary() {
        if (at(Tok::not_)) {
            take();
            return Formula::negate(unary());
        }
        if (at(Tok::exists) || at(Tok::forall)) {
            const auto kind = take().kind == Tok::exists ? Formula::Kind::exists : Formula::Kind::forall;
            std::vector<std::string> vars{expect(Tok::ident, "a bound variable").text};
            while (at(Tok::comma)) {
                take();
                vars.push_back(expect(Tok::ident, "a bound variable").text);
            }
            expect(Tok::in, "'in'");
            const std::string domain = expect(Tok::ident, "a domain name").text;
            expect(Tok::dot, "'.'");
            auto body = formula();
            for (auto v = vars.rbegin(); v != vars.rend(); ++v) body = Formula::quantifier(kind, *v, domain, body);
            return body;
        }
        return atom();
    }

    FormulaPtr atom() {
        if (!at(Tok::lparen)) return comparison();
        // "(" opens either a term or a formula; keep whichever reading gets further.
        const std::size_t start = pos_;
        try {
            return comparison();
        } catch (const ParseError& as_term) {
            const std::size_t term_reach = pos_;
            pos_ = start;
            try {
                take();
                auto f = formula();
                expect(Tok::rparen, "')'");
                return f;
            } catch (const ParseError& as_formula) {
                if (term_reach > pos_) throw as_term;
                throw;
            }
        }
    }

    FormulaPtr comparison() {
        auto lhs = term();
        if (at(Tok::eq)) {
            take();
            return Formula::equal(lhs, term());
        }
        if (at(Tok::neq)) {
            take();
            return Formula::negate(Formula::equal(lhs, term()));
        }
        fail("'=' or '!='");
    }

    TermPtr term() {
        auto t = product();
        while (at(Tok::plus) || at(Tok::minus)) {
            const auto k = take().kind == Tok::plus ? Term::Kind::add : Term::Kind::sub;
            t = Term::binary(k, t, product());
        }
        return t;
    }

    TermPtr product() {
        auto t = signed_factor();
        while (at(Tok::star)) {
            take();
            t = Term::binary(Term::Kind::mul, t, signed_factor());
        }
        return t;
    }

    TermPtr signed_factor() {
        if (at(Tok::minus)) {
            take();
            return Term::negate(signed_factor());
        }
        return power();
    }

    TermPtr power() {
        auto base = primary();
        unsigned long e = 1;
        if (at(Tok::square)) {
            take();
            e = 2;
        } else if (at(Tok::caret)) {
            take();
            const Token& n = expect(Tok::number, "an exponent");
            e = small_number(n, 64);
            if (e == 0) throw ParseError("exponent must be positive", n.line, n.column);
        } else {
            return base;
        }
        TermPtr t = base;
        for (unsigned long j = 1; j < e; ++j) t = Term::binary(Term::Kind::mul, t, base);
        return t;
    }

    TermPtr primary() {
        if (at(Tok::number)) return Term::literal(small_number(take(), 100000));
        if (at(Tok::ident)) return Term::var(take().text);
        if (at(Tok::lparen)) {
            take();
            auto t = term();
            expect(Tok::rparen, "')'");
            return t;
        }
        fail("a term");
    }

    static unsigned long small_number(const Token& t, unsigned long limit) {
        if (t.text.size() > 9 || std::stoul(t.text) > limit)
            throw ParseError("literal " + t.text + " exceeds " + std::to_string(limit), t.line, t.column);
        return std::stoul(t.text);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- printer

std::optional<unsigned long> literal_value(const Term& t) {
    if (t.kind == Term::Kind::one) return 1;
    if (t.kind == Term::Kind::add && t.rhs->kind == Term::Kind::one)
        if (auto n = literal_value(*t.lhs)) return *n + 1;
    return std::nullopt;
}

int precedence(const Term& t) {
    if (literal_value(t)) return 4;
    switch (t.kind) {
        case Term::Kind::add:
        case Term::Kind::sub: return 1;
        case Term::Kind::mul: return 2;
        case Term::Kind::neg: return 3;
        default: return 4;
    }
}

std::string print(const Term& t, int min_prec) {
    std::string s;
    if (auto n = literal_value(t)) {
        s = std::to_string(*n);
    } else {
        switch (t.kind) {
            case Term::Kind::zero: s = "0"; break;
            case Term::Kind::one: s = "1"; break;
            case Term::Kind::var: s = t.name; break;
            case Term::Kind::add: s = print(*t.lhs, 1) + " + " + print(*t.rhs, 2); break;
            case Term::Kind::sub: s = print(*t.lhs, 1) + " - " + print(*t.rhs, 2); break;
            case Term::Kind::mul: s = print(*t.lhs, 2) + "*" + print(*t.rhs, 3); break;
            case Term::Kind::neg: s = "-" + print(*t.lhs, 3); break;
        }
    }
    return precedence(t) < min_prec ? "(" + s + ")" : s;
}

int precedence(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::implies: return 1;
        case Formula::Kind::or_: return 2;
        case Formula::Kind::and_: return 3;
        case Formula::Kind::not_: return f.lhs->kind == Formula::Kind::eq ? 5 : 4;
        case Formula::Kind::eq: return 5;
        default: return 0;
    }
}

// `tail`: nothing follows this subformula before the enclosing parenthesis,
// so a quantifier body may run to its end.
std::string print(const Formula& f, int min_prec, bool tail) {
    const bool parens = is_quantifier(f) ? !tail : precedence(f) < min_prec;
    if (parens) tail = true;
    std::string s;
    switch (f.kind) {
        case Formula::Kind::eq: s = print(*f.lt, 1) + " = " + print(*f.rt, 1); break;
        case Formula::Kind::not_:
            if (f.lhs->kind == Formula::Kind::eq)
                s = print(*f.lhs->lt, 1) + " != " + print(*f.lhs->rt, 1);
            else
                s = "~" + print(*f.lhs, 4, tail);
            break;
        case Formula::Kind::and_: s = print(*f.lhs, 3, false) + " & " + print(*f.rhs, 4, tail); break;
        case Formula::Kind::or_: s = print(*f.lhs, 2, false) + " | " + print(*f.rhs, 3, tail); break;
        case Formula::Kind::implies: s = print(*f.lhs, 2, false) + " -> " + print(*f.rhs, 1, tail); break;
        case Formula::Kind::exists:
        case Formula::Kind::forall: {
            s = f.kind == Formula::Kind::exists ? "exists " : "forall ";
            const Formula* q = &f;
            s += q->var;
            while (q->lhs->kind == f.kind && q->lhs->domain == f.domain) {
                q = q->lhs.get();
                s += ", " + q->var;
            }
            s += " in " + f.domain + ". " + print(*q->lhs, 0, true);
            break;
        }
    }
    return parens ? "(" + s + ")" : s;
}

// ---------------------------------------------------------------- semantics

void collect(const Term& t, std::set<std::string>& out) {
    if (t.kind == Term::Kind::var) out.insert(t.name);
    if (t.lhs) collect(*t.lhs, out);
    if (t.rhs) collect(*t.rhs, out);
}

void collect(const Formula& f, std::set<std::string>& out) {
    if (f.kind == Formula::Kind::eq) {
        collect(*f.lt, out);
        collect(*f.rt, out);
        return;
    }
    if (is_quantifier(f)) {
        std::set<std::string> inner;
        collect(*f.lhs, inner);
        inner.erase(f.var);
        out.insert(inner.begin(), inner.end());
        return;
    }
    collect(*f.lhs, out);
    if (f.rhs) collect(*f.rhs, out);
}

bool mentions(const Formula& f, const std::string& v) { return free_variables(f).count(v) > 0; }

void flatten(const FormulaPtr& f, Formula::Kind k, std::vector<FormulaPtr>& out) {
    if (f->kind == k) {
        flatten(f->lhs, k, out);
        flatten(f->rhs, k, out);
    } else {
        out.push_back(f);
    }
}

FormulaPtr rebuild(const std::vector<FormulaPtr>& parts, Formula::Kind k) {
    FormulaPtr f = parts.front();
    for (std::size_t j = 1; j < parts.size(); ++j) f = Formula::binary(k, f, parts[j]);
    return f;
}

FormulaPtr push_quantifier(Formula::Kind q, const std::string& var, const std::string& domain, const FormulaPtr& body) {
    // exists distributes over |, forall over &
    const auto spread = q == Formula::Kind::exists ? Formula::Kind::or_ : Formula::Kind::and_;
    const auto split = q == Formula::Kind::exists ? Formula::Kind::and_ : Formula::Kind::or_;
    if (body->kind == spread)
        return Formula::binary(spread, push_quantifier(q, var, domain, body->lhs),
                               push_quantifier(q, var, domain, body->rhs));
    if (body->kind == split) {
        std::vector<FormulaPtr> parts, with_var;
        flatten(body, split, parts);
        for (const auto& p : parts)
            if (mentions(*p, var)) with_var.push_back(p);
        if (with_var.size() < parts.size() && !with_var.empty()) {
            std::vector<FormulaPtr> out;
            bool placed = false;
            for (const auto& p : parts) {
                if (!mentions(*p, var)) {
                    out.push_back(p);
                } else if (!placed) {
                    out.push_back(push_quantifier(q, var, domain, rebuild(with_var, split)));
                    placed = true;
                }
            }
            return rebuild(out, split);
        }
    }
    return Formula::quantifier(q, var, domain, body);
}

Element combine(ArithOp op, const Element& a, const Element& b) {
    if (a.field() == b.field()) return arith(op, a, b);
    const FieldSpec f = compositum(a.field(), b.field());
    return arith(op, a.lift(f), b.lift(f));
}

bool equal_values(const Element& a, const Element& b) {
    if (a.field() == b.field()) return a == b;
    const FieldSpec f = compositum(a.field(), b.field());
    return a.lift(f) == b.lift(f);
}

class Evaluator {
public:
    Evaluator(const Assignment& a, const Domains& d) : env_(a), domains_(d) {}

    Element term(const Term& t) {
        switch (t.kind) {
            case Term::Kind::zero: return Element::rational(0);
            case Term::Kind::one: return Element::rational(1);
            case Term::Kind::var: {
                auto it = env_.find(t.name);
                if (it == env_.end()) throw EvalError("unbound variable '" + t.name + "'");
                return it->second;
            }
            case Term::Kind::add: return combine(ArithOp::add, term(*t.lhs), term(*t.rhs));
            case Term::Kind::sub: return combine(ArithOp::sub, term(*t.lhs), term(*t.rhs));
            case Term::Kind::mul: return combine(ArithOp::mul, term(*t.lhs), term(*t.rhs));
            case Term::Kind::neg: return -term(*t.lhs);
        }
        throw std::logic_error("bad term kind");
    }

    bool formula(const Formula& f) {
        switch (f.kind) {
            case Formula::Kind::eq: return equal_values(term(*f.lt), term(*f.rt));
            case Formula::Kind::not_: return !formula(*f.lhs);
            case Formula::Kind::and_: return formula(*f.lhs) && formula(*f.rhs);
            case Formula::Kind::or_: return formula(*f.lhs) || formula(*f.rhs);
            case Formula::Kind::implies: return !formula(*f.lhs) || formula(*f.rhs);
            case Formula::Kind::exists:
            case Formula::Kind::forall: return quantified(f);
        }
        throw std::logic_error("bad formula kind");
    }

    void bind(const std::string& name, const Element& v) { env_.insert_or_assign(name, v); }

private:
    bool quantified(const Formula& f) {
        auto d = domains_.find(f.domain);
        if (d == domains_.end()) throw EvalError("unbound domain '" + f.domain + "'");
        const bool want = f.kind == Formula::Kind::exists;
        std::optional<Element> saved;
        if (auto it = env_.find(f.var); it != env_.end()) saved = it->second;
        bool result = !want;
        for (const auto& v : d->second) {
            env_.insert_or_assign(f.var, v);
            if (formula(*f.lhs) == want) {
                result = want;
                break;
            }
        }
        if (saved)
            env_.insert_or_assign(f.var, *saved);
        else
            env_.erase(f.var);
        return result;
    }

    Assignment env_;
    const Domains& domains_;
};

void check_bindings(const Formula& f, const std::string& var, const Assignment& a, const Domains& d) {
    for (const auto& v : free_variables(f))
        if (v != var && !a.count(v)) throw EvalError("unbound variable '" + v + "'");
    for (const auto& n : domain_names(f))
        if (!d.count(n)) throw EvalError("unbound domain '" + n + "'");
}

}  // namespace

FormulaPtr parse_formula(const std::string& src) { return Parser(src).whole_formula(); }
TermPtr parse_term(const std::string& src) { return Parser(src).whole_term(); }

std::string to_string(const Formula& f) { return print(f, 0, true); }
std::string to_string(const Term& t) { return print(t, 0); }

std::set<std::string> free_variables(const Formula& f) {
    std::set<std::string> out;
    collect(f, out);
    return out;
}

std::set<std::string> free_variables(const Term& t) {
    std::set<std::string> out;
    collect(t, out);
    return out;
}

std::set<std::string> domain_names(const Formula& f) {
    std::set<std::string> out;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (is_quantifier(g)) out.insert(g.domain);
        if (g.lhs) walk(*g.lhs);
        if (g.rhs) walk(*g.rhs);
    };
    walk(f);
    return out;
}

FormulaPtr miniscope(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::eq: return f;
        case Formula::Kind::not_: return Formula::negate(miniscope(f->lhs));
        case Formula::Kind::and_:
        case Formula::Kind::or_:
        case Formula::Kind::implies: return Formula::binary(f->kind, miniscope(f->lhs), miniscope(f->rhs));
        case Formula::Kind::exists:
        case Formula::Kind::forall: return push_quantifier(f->kind, f->var, f->domain, miniscope(f->lhs));
    }
    throw std::logic_error("bad formula kind");
}

Element evaluate(const Term& t, const Assignment& a) {
    static const Domains none;
    return Evaluator(a, none).term(t);
}

bool evaluate(const Formula& f, const Assignment& a, const Domains& domains) {
    return Evaluator(a, domains).formula(f);
}

bool evaluate_scoped(const FormulaPtr& f, const Assignment& a, const Domains& domains) {
    return evaluate(*miniscope(f), a, domains);
}

std::vector<Element> define_set(const FormulaPtr& f, const std::string& var, const Assignment& a,
                                const std::vector<Element>& pool, const Domains& domains) {
    check_bindings(*f, var, a, domains);
    const FormulaPtr scoped = miniscope(f);
    std::vector<char> keep(pool.size(), 0);
    std::exception_ptr error;
    const auto n = static_cast<long>(pool.size());
#pragma omp parallel
    {
        Evaluator ev(a, domains);
#pragma omp for schedule(dynamic)
        for (long j = 0; j < n; ++j) {
            try {
                ev.bind(var, pool[j]);
                keep[j] = ev.formula(*scoped);
            } catch (...) {
#pragma omp critical(mqw_define_set_error)
                if (!error) error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
    std::vector<Element> out;
    for (std::size_t j = 0; j < pool.size(); ++j)
        if (keep[j]) out.push_back(pool[j]);
    return out;
}

std::vector<Element> define_set_serial(const FormulaPtr& f, const std::string& var, const Assignment& a,
                                       const std::vector<Element>& pool, const Domains& domains) {
    check_bindings(*f, var, a, domains);
    const FormulaPtr scoped = miniscope(f);
    std::vector<Element> out;
    Assignment env = a;
    for (const auto& v : pool) {
        env.insert_or_assign(var, v);
        if (evaluate(*scoped, env, domains)) out.push_back(v);
    }
    return out;
}

std::string family_formula_source(const std::string& domain) {
    return "p*x != 0 & p*x != q & exists x1, x2, x3, x4, x5, x6, x7, x8 in " + domain +
           ". p*x = x1^2 + x2^2 + x3^2 + x4^2 & q - p*x = x5^2 + x6^2 + x7^2 + x8^2";
}

}  // namespace mqw
