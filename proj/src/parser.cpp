#include "htc/parser.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace htc {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
    Ident, Number, KwInt, KwBool, KwTrue, KwFalse, KwUndef,
    LParen, RParen, LBrace, RBrace, Comma, Semi, Dot, DotDot,
    Colon, Assign, If, Bar, Amp, Arrow,
    Le, Lt, Eq, Ne, Ge, Gt, Plus, Minus, Star, End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Integer value = 0;
    std::size_t line = 1;
    std::size_t col = 1;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

bool is_keyword(std::string_view s) {
    return s == "not" || s == "def" || s == "sum" || s == "count" || s == "min" || s == "max";
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.col = col_;
            if (i_ >= src_.size()) {
                t.kind = Tok::End;
                out.push_back(t);
                return out;
            }
            char c = src_[i_];
            if (is_ident_start(c)) {
                t.kind = Tok::Ident;
                t.text = identifier();
            } else if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
                std::size_t b = i_;
                while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_])) != 0) {
                    advance();
                }
                t.kind = Tok::Number;
                t.text = std::string(src_.substr(b, i_ - b));
                auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
                if (ec != std::errc{}) {
                    throw ParseError(t.line, t.col, "integer literal out of range");
                }
            } else if (c == '#') {
                advance();
                std::size_t b = i_;
                while (i_ < src_.size() && is_ident_char(src_[i_])) {
                    advance();
                }
                std::string_view w = src_.substr(b, i_ - b);
                t.text = "#" + std::string(w);
                if (w == "int") t.kind = Tok::KwInt;
                else if (w == "bool") t.kind = Tok::KwBool;
                else if (w == "true") t.kind = Tok::KwTrue;
                else if (w == "false") t.kind = Tok::KwFalse;
                else if (w == "undef") t.kind = Tok::KwUndef;
                else throw ParseError(t.line, t.col, "unknown directive '" + t.text + "'");
            } else {
                t.kind = punct(t);
            }
            out.push_back(std::move(t));
        }
    }

private:
    void advance() {
        if (src_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    bool at(std::string_view s) const { return src_.substr(i_, s.size()) == s; }

    void skip_space() {
        while (i_ < src_.size()) {
            char c = src_[i_];
            if (c == '%') {
                while (i_ < src_.size() && src_[i_] != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
                advance();
            } else {
                return;
            }
        }
    }

    // `name` or a compound `name(arg, ...)` kept verbatim minus whitespace.
    std::string identifier() {
        std::size_t b = i_;
        while (i_ < src_.size() && is_ident_char(src_[i_])) {
            advance();
        }
        std::string name(src_.substr(b, i_ - b));
        if (i_ >= src_.size() || src_[i_] != '(' || is_keyword(name)) {
            return name;
        }
        std::size_t line = line_;
        std::size_t col = col_;
        int depth = 0;
        do {
            char c = src_[i_];
            if (c == '(') {
                ++depth;
            } else if (c == ')') {
                --depth;
            } else if (!is_ident_char(c) && c != ',' && c != '-' &&
                       std::isspace(static_cast<unsigned char>(c)) == 0) {
                throw ParseError(line_, col_, std::string("unexpected '") + c + "' in compound name");
            }
            if (std::isspace(static_cast<unsigned char>(c)) == 0) {
                name.push_back(c);
            }
            advance();
        } while (depth > 0 && i_ < src_.size());
        if (depth > 0) {
            throw ParseError(line, col, "unclosed '(' in compound name");
        }
        return name;
    }

    Tok punct(Token& t) {
        struct P { std::string_view s; Tok k; };
        static constexpr P table[] = {
            {"..", Tok::DotDot}, {":=", Tok::Assign}, {":-", Tok::If}, {"->", Tok::Arrow},
            {"<=", Tok::Le}, {">=", Tok::Ge}, {"!=", Tok::Ne},
            {"(", Tok::LParen}, {")", Tok::RParen}, {"{", Tok::LBrace}, {"}", Tok::RBrace},
            {",", Tok::Comma}, {";", Tok::Semi}, {".", Tok::Dot}, {":", Tok::Colon},
            {"|", Tok::Bar}, {"&", Tok::Amp}, {"<", Tok::Lt}, {">", Tok::Gt}, {"=", Tok::Eq},
            {"+", Tok::Plus}, {"-", Tok::Minus}, {"*", Tok::Star},
        };
        for (const auto& p : table) {
            if (at(p.s)) {
                t.text = std::string(p.s);
                for (std::size_t k = 0; k < p.s.size(); ++k) {
                    advance();
                }
                return p.k;
            }
        }
        throw ParseError(t.line, t.col, std::string("unexpected character '") + src_[i_] + "'");
    }

    std::string_view src_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

bool is_relation(Tok k) {
    return k == Tok::Le || k == Tok::Lt || k == Tok::Eq || k == Tok::Ne || k == Tok::Ge || k == Tok::Gt;
}

Relation to_relation(Tok k) {
    switch (k) {
        case Tok::Le: return Relation::Le;
        case Tok::Lt: return Relation::Lt;
        case Tok::Eq: return Relation::Eq;
        case Tok::Ne: return Relation::Ne;
        case Tok::Ge: return Relation::Ge;
        default: return Relation::Gt;
    }
}

bool further(const ParseError& a, const ParseError& b) {
    return a.line() != b.line() ? a.line() > b.line() : a.column() > b.column();
}

bool is_atom_literal(const Formula& f) {
    return f.kind() == Formula::Kind::Compare || f.kind() == Formula::Kind::Bool;
}

bool is_literal(const Formula& f) {
    return is_atom_literal(f) || (f.is_negation() && is_atom_literal(f.negated_operand()));
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

    Theory theory() {
        Theory th;
        while (peek().kind != Tok::End) {
            if (peek().kind == Tok::KwInt || peek().kind == Tok::KwBool) {
                directive(th.domain);
            } else {
                statement(th);
            }
        }
        return th;
    }

    Formula single_formula() {
        Formula f = implication();
        expect(Tok::End, "end of input");
        return f;
    }

    LinearExpr single_expr() {
        LinearExpr e = expr();
        expect(Tok::End, "end of input");
        return e;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

    bool peek_ident(std::string_view word, std::size_t k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == word;
    }

    const Token& next() {
        const Token& t = peek();
        if (pos_ < toks_.size() - 1) {
            ++pos_;
        }
        return t;
    }

    bool accept(Tok k) {
        if (peek().kind == k) {
            next();
            return true;
        }
        return false;
    }

    const Token& expect(Tok k, std::string_view what) {
        if (peek().kind != k) {
            fail(peek(), "expected " + std::string(what));
        }
        return next();
    }

    [[noreturn]] static void fail(const Token& at, const std::string& msg) {
        std::string found = at.kind == Tok::End ? "end of input" : "'" + at.text + "'";
        throw ParseError(at.line, at.col, msg + ", found " + found);
    }

    // -- directives ---------------------------------------------------------

    Integer signed_number() {
        bool neg = accept(Tok::Minus);
        Integer v = expect(Tok::Number, "integer").value;
        return neg ? -v : v;
    }

    void directive(DomainSpec& domain) {
        const Token& kw = next();
        std::vector<std::string> names;
        do {
            names.push_back(expect(Tok::Ident, "variable name").text);
        } while (accept(Tok::Comma));
        if (kw.kind == Tok::KwBool) {
            expect(Tok::Dot, "'.'");
            for (const auto& n : names) {
                domain.add_bool(n);
            }
            return;
        }
        Integer lo = DomainSpec::kDefaultLo;
        Integer hi = DomainSpec::kDefaultHi;
        if (peek().kind != Tok::Dot) {
            const Token& at = peek();
            lo = signed_number();
            expect(Tok::DotDot, "'..'");
            hi = signed_number();
            if (lo > hi) {
                throw ParseError(at.line, at.col, "empty interval " + std::to_string(lo) + ".." + std::to_string(hi));
            }
        }
        expect(Tok::Dot, "'.'");
        for (const auto& n : names) {
            domain.add_int(n, lo, hi);
        }
    }

    // -- statements ---------------------------------------------------------

    bool at_assignment() const { return peek().kind == Tok::Ident && peek(1).kind == Tok::Assign; }

    Assignment assignment() {
        Assignment a;
        a.target = expect(Tok::Ident, "variable name").text;
        expect(Tok::Assign, "':='");
        a.lower = expr();
        a.upper = accept(Tok::DotDot) ? expr() : a.lower;
        return a;
    }

    std::vector<Formula> body() {
        std::vector<Formula> out;
        if (peek().kind == Tok::Dot) {
            return out;
        }
        do {
            out.push_back(implication());
        } while (accept(Tok::Comma));
        return out;
    }

    void statement(Theory& th) {
        if (accept(Tok::If)) {
            std::vector<Formula> b = body();
            expect(Tok::Dot, "'.'");
            if (std::all_of(b.begin(), b.end(), is_literal)) {
                th.add(LCRule{{}, std::move(b)});
            } else {
                th.add(Formula::negate(Formula::conj_all(b)));
            }
            return;
        }
        if (at_assignment()) {
            LCRule r;
            do {
                if (!at_assignment()) {
                    fail(peek(), "expected an assignment (heads cannot mix assignments and formulas)");
                }
                r.head.push_back(assignment());
            } while (accept(Tok::Semi));
            if (accept(Tok::If)) {
                std::size_t body_pos = pos_;
                r.body = body();
                for (const auto& f : r.body) {
                    if (!is_literal(f)) {
                        fail(toks_[body_pos], "LC-rule bodies consist of literals");
                    }
                }
            }
            expect(Tok::Dot, "'.'");
            th.add(std::move(r));
            return;
        }
        std::vector<Formula> head;
        do {
            if (at_assignment()) {
                fail(peek(), "heads cannot mix assignments and formulas");
            }
            head.push_back(implication());
        } while (accept(Tok::Semi));
        Formula h = Formula::disj_all(head);
        if (accept(Tok::If)) {
            std::vector<Formula> b = body();
            if (b.empty()) {
                fail(peek(), "expected a rule body");
            }
            h = Formula::implies(Formula::conj_all(b), h);
        }
        expect(Tok::Dot, "'.'");
        th.add(std::move(h));
    }

    // -- formulas -----------------------------------------------------------

    Formula implication() {
        Formula lhs = disjunction();
        if (accept(Tok::Arrow)) {
            return Formula::implies(std::move(lhs), implication());
        }
        return lhs;
    }

    Formula disjunction() {
        Formula f = conjunction();
        while (accept(Tok::Bar)) {
            f = Formula::disj(std::move(f), conjunction());
        }
        return f;
    }

    Formula conjunction() {
        Formula f = unary();
        while (accept(Tok::Amp)) {
            f = Formula::conj(std::move(f), unary());
        }
        return f;
    }

    Formula unary() {
        if (peek_ident("not")) {
            next();
            return Formula::negate(unary());
        }
        return primary();
    }

    Formula primary() {
        switch (peek().kind) {
            case Tok::KwTrue: next(); return Formula::top();
            case Tok::KwFalse: next(); return Formula::bot();
            case Tok::LParen: {
                std::size_t save = pos_;
                std::optional<ParseError> first;
                try {
                    return atom();
                } catch (const ParseError& e) {
                    first = e;
                }
                pos_ = save;
                try {
                    next();
                    Formula f = implication();
                    expect(Tok::RParen, "')'");
                    return f;
                } catch (const ParseError& e) {
                    throw further(*first, e) ? *first : e;
                }
            }
            default: return atom();
        }
    }

    Formula atom() {
        if (peek_ident("def") && peek(1).kind == Tok::LParen) {
            next();
            next();
            LinearExpr e = expr();
            expect(Tok::RParen, "')'");
            return Formula::compare(Comparison{std::move(e), Relation::Def, {}});
        }
        std::size_t start = pos_;
        LinearExpr lhs = expr();
        if (!is_relation(peek().kind)) {
            const Token& first = toks_[start];
            if (pos_ == start + 1 && first.kind == Tok::Ident) {
                return Formula::boolean(first.text);
            }
            fail(peek(), "expected a comparison operator");
        }
        Relation r = to_relation(next().kind);
        LinearExpr rhs = expr();
        return Formula::compare(Comparison{std::move(lhs), r, std::move(rhs)});
    }

    // -- expressions --------------------------------------------------------

    LinearExpr expr() {
        LinearExpr e;
        Integer sign = 1;
        if (accept(Tok::Minus)) {
            sign = -1;
        } else {
            accept(Tok::Plus);
        }
        e.terms.push_back(term(sign));
        for (;;) {
            if (accept(Tok::Plus)) {
                e.terms.push_back(term(1));
            } else if (accept(Tok::Minus)) {
                e.terms.push_back(term(-1));
            } else {
                return e;
            }
        }
    }

    bool at_aggregate() const {
        return peek().kind == Tok::Ident && peek(1).kind == Tok::LBrace &&
               (peek().text == "sum" || peek().text == "count" || peek().text == "min" || peek().text == "max");
    }

    bool adjacent(const Token& a, const Token& b) const {
        return a.line == b.line && a.col + a.text.size() == b.col;
    }

    Term term(Integer sign) {
        if (peek().kind == Tok::Number) {
            const Token& num = next();
            Integer k = sign * num.value;
            if (accept(Tok::Star)) {
                return scaled_factor(k);
            }
            if (peek().kind == Tok::Ident && adjacent(num, peek()) && !is_keyword(peek().text)) {
                return LinearTerm::scaled(k, next().text);
            }
            return LinearTerm::constant(k);
        }
        return scaled_factor(sign);
    }

    Term scaled_factor(Integer k) {
        if (peek().kind == Tok::LParen) {
            return conditional().scaled(k);
        }
        if (at_aggregate()) {
            Aggregate a = aggregate();
            a.coef = k;
            return a;
        }
        if (peek().kind == Tok::KwUndef) {
            next();
            return UndefTerm{};
        }
        if (peek().kind == Tok::Ident && !is_keyword(peek().text)) {
            return LinearTerm::scaled(k, next().text);
        }
        fail(peek(), "expected a term");
    }

    LinearTerm signed_linear_term() {
        Integer sign = 1;
        if (accept(Tok::Minus)) {
            sign = -1;
        } else {
            accept(Tok::Plus);
        }
        if (peek().kind == Tok::Number) {
            const Token& num = next();
            Integer k = sign * num.value;
            if (accept(Tok::Star)) {
                return LinearTerm::scaled(k, expect(Tok::Ident, "variable").text);
            }
            if (peek().kind == Tok::Ident && adjacent(num, peek()) && !is_keyword(peek().text)) {
                return LinearTerm::scaled(k, next().text);
            }
            return LinearTerm::constant(k);
        }
        if (peek().kind == Tok::Ident && !is_keyword(peek().text)) {
            return LinearTerm::scaled(sign, next().text);
        }
        fail(peek(), "expected a linear term");
    }

    ConditionalTerm conditional() {
        expect(Tok::LParen, "'('");
        ConditionalTerm c;
        c.then_term = signed_linear_term();
        expect(Tok::Bar, "'|'");
        c.else_term = signed_linear_term();
        expect(Tok::Colon, "':'");
        c.condition = implication();
        expect(Tok::RParen, "')' closing the conditional term");
        return c;
    }

    Aggregate aggregate() {
        Aggregate a;
        const std::string& fn = next().text;
        a.function = fn == "sum" ? AggFunction::Sum
                     : fn == "count" ? AggFunction::Count
                     : fn == "min" ? AggFunction::Min
                                   : AggFunction::Max;
        expect(Tok::LBrace, "'{'");
        if (accept(Tok::RBrace)) {
            return a;
        }
        do {
            AggElement el;
            if (a.function == AggFunction::Count) {
                el.term = LinearTerm::constant(1);
                el.condition = implication();
            } else {
                el.term = signed_linear_term();
                el.condition = accept(Tok::Colon) ? implication() : Formula::top();
            }
            a.elements.push_back(std::move(el));
        } while (accept(Tok::Semi));
        expect(Tok::RBrace, "'}'");
        return a;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

std::string relation_text(Relation r) {
    switch (r) {
        case Relation::Le: return "<=";
        case Relation::Lt: return "<";
        case Relation::Eq: return "=";
        case Relation::Ne: return "!=";
        case Relation::Ge: return ">=";
        case Relation::Gt: return ">";
        case Relation::Def: return "def";
    }
    return "?";
}

std::string term_text(const LinearTerm& t) {
    if (t.is_constant()) {
        return std::to_string(t.coef);
    }
    if (t.coef == 1) {
        return t.var;
    }
    if (t.coef == -1) {
        return "-" + t.var;
    }
    return std::to_string(t.coef) + "*" + t.var;
}

enum Level { kImp = 1, kOr = 2, kAnd = 3, kUnary = 4 };

std::string formula_text(const Formula& f, int ctx);

std::string conditional_text(const ConditionalTerm& c) {
    return "(" + term_text(c.then_term) + "|" + term_text(c.else_term) + ": " + formula_text(c.condition, kImp) +
           ")";
}

std::string aggregate_body(const Aggregate& a) {
    static const char* names[] = {"sum", "count", "min", "max"};
    std::string out = names[static_cast<int>(a.function)];
    out += "{";
    for (std::size_t i = 0; i < a.elements.size(); ++i) {
        const auto& el = a.elements[i];
        if (i > 0) {
            out += "; ";
        }
        if (a.function == AggFunction::Count) {
            out += formula_text(el.condition, kImp);
        } else {
            out += term_text(el.term);
            if (!el.condition.is_top()) {
                out += " : " + formula_text(el.condition, kImp);
            }
        }
    }
    return out + "}";
}

// Signed rendering of one summand: {negative, magnitude text}.
std::pair<bool, std::string> summand(const Term& t) {
    if (const auto* lt = std::get_if<LinearTerm>(&t)) {
        if (lt->coef < 0) {
            return {true, term_text(lt->negated())};
        }
        return {false, term_text(*lt)};
    }
    if (const auto* ct = std::get_if<ConditionalTerm>(&t)) {
        if (ct->then_term.coef < 0 && ct->else_term.coef < 0) {
            return {true, conditional_text(ct->scaled(-1))};
        }
        return {false, conditional_text(*ct)};
    }
    if (const auto* ag = std::get_if<Aggregate>(&t)) {
        Integer k = ag->coef < 0 ? -ag->coef : ag->coef;
        std::string body = aggregate_body(*ag);
        return {ag->coef < 0, k == 1 ? body : std::to_string(k) + "*" + body};
    }
    return {false, "#undef"};
}

std::string expr_text(const LinearExpr& e) {
    std::string out;
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        auto [neg, text] = summand(e.terms[i]);
        if (i == 0) {
            out += neg ? "-" + text : text;
        } else {
            out += neg ? " - " : " + ";
            out += text;
        }
    }
    return out;
}

std::string paren(bool need, std::string s) { return need ? "(" + s + ")" : s; }

std::string formula_text(const Formula& f, int ctx) {
    switch (f.kind()) {
        case Formula::Kind::Bot: return "#false";
        case Formula::Kind::Bool: return f.bool_name();
        case Formula::Kind::Compare: {
            const auto& c = f.comparison();
            if (c.rel == Relation::Def) {
                return "def(" + expr_text(c.lhs) + ")";
            }
            return expr_text(c.lhs) + " " + relation_text(c.rel) + " " + expr_text(c.rhs);
        }
        case Formula::Kind::And:
            return paren(ctx > kAnd, formula_text(f.lhs(), kAnd) + " & " + formula_text(f.rhs(), kUnary));
        case Formula::Kind::Or:
            return paren(ctx > kOr, formula_text(f.lhs(), kOr) + " | " + formula_text(f.rhs(), kAnd));
        case Formula::Kind::Implies:
            if (f.is_top()) {
                return "#true";
            }
            if (f.is_negation()) {
                return "not " + formula_text(f.negated_operand(), kUnary);
            }
            return paren(ctx > kImp, formula_text(f.lhs(), kOr) + " -> " + formula_text(f.rhs(), kImp));
    }
    return "?";
}

void spine(const Formula& f, Formula::Kind k, std::vector<Formula>& out) {
    if (f.kind() == k) {
        spine(f.lhs(), k, out);
        out.push_back(f.rhs());
    } else {
        out.push_back(f);
    }
}

std::string joined(const std::vector<Formula>& fs, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += formula_text(fs[i], kImp);
    }
    return out;
}

std::string statement_text(const Formula& f) {
    if (f.kind() != Formula::Kind::Implies || f.is_top()) {
        return formula_text(f, kImp) + ".";
    }
    std::vector<Formula> body;
    spine(f.lhs(), Formula::Kind::And, body);
    std::string head;
    if (f.rhs().is_bot()) {
        head = "#false";
    } else {
        std::vector<Formula> heads;
        spine(f.rhs(), Formula::Kind::Or, heads);
        head = joined(heads, "; ");
    }
    return head + " :- " + joined(body, ", ") + ".";
}

}  // namespace

Theory parse_theory(std::string_view text) {
    Theory th = Parser(text).theory();
    validate(th);
    return th;
}

Theory parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_theory(ss.str());
}

Formula parse_formula(std::string_view text) { return Parser(text).single_formula(); }

LinearExpr parse_expr(std::string_view text) { return Parser(text).single_expr(); }

std::string pretty_print(const LinearTerm& t) { return term_text(t); }
std::string pretty_print(const LinearExpr& e) { return expr_text(e); }
std::string pretty_print(const Formula& f) { return formula_text(f, kImp); }

std::string pretty_print(const Assignment& a) {
    std::string out = a.target + " := " + expr_text(a.lower);
    if (!a.is_single()) {
        out += " .. " + expr_text(a.upper);
    }
    return out;
}

std::string pretty_print(const LCRule& r) {
    std::string out;
    for (std::size_t i = 0; i < r.head.size(); ++i) {
        out += (i > 0 ? "; " : "") + pretty_print(r.head[i]);
    }
    if (!r.body.empty() || r.head.empty()) {
        out += r.head.empty() ? ":- " : " :- ";
        out += joined(r.body, ", ");
    }
    return out + ".";
}

std::string pretty_print(const Statement& s) {
    if (const auto* f = std::get_if<Formula>(&s)) {
        return statement_text(*f);
    }
    return pretty_print(std::get<LCRule>(s));
}

std::string pretty_print(const DomainSpec& domain) {
    std::string out;
    const auto& vs = domain.vars();
    for (std::size_t i = 0; i < vs.size();) {
        std::size_t j = i + 1;
        while (j < vs.size() && vs[j].kind == vs[i].kind && vs[j].lo == vs[i].lo && vs[j].hi == vs[i].hi) {
            ++j;
        }
        out += vs[i].kind == VarKind::Bool ? "#bool " : "#int ";
        for (std::size_t k = i; k < j; ++k) {
            out += (k > i ? ", " : "") + vs[k].name;
        }
        if (vs[i].kind == VarKind::Int) {
            out += " " + std::to_string(vs[i].lo) + ".." + std::to_string(vs[i].hi);
        }
        out += ".\n";
        i = j;
    }
    return out;
}

std::string pretty_print(const Theory& th) {
    std::string out = pretty_print(th.domain);
    for (const auto& s : th.statements) {
        out += pretty_print(s) + "\n";
    }
    return out;
}

}  // namespace htc
