#include "qdx/parser.hpp"

#include "qdx/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qdx {

namespace {

struct Token {
    enum Kind { Ident, Integer, String, Punct, End } kind = End;
    std::string text;
    long long value = 0;
    int line = 0, col = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= text_.size()) {
            tok_.kind = Token::End;
            return;
        }
        char c = text_[pos_];
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::string id;
            while (pos_ < text_.size() &&
                   (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
                id += take();
            tok_.kind = Token::Ident;
            tok_.text = std::move(id);
            return;
        }
        if (std::isdigit((unsigned char)c) ||
            (c == '-' && pos_ + 1 < text_.size() && std::isdigit((unsigned char)text_[pos_ + 1]))) {
            std::string num;
            if (c == '-') num += take();
            while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) num += take();
            tok_.kind = Token::Integer;
            tok_.text = num;
            try {
                tok_.value = std::stoll(num);
            } catch (const std::out_of_range&) {
                throw SyntaxError(tok_.line, tok_.col, "integer literal out of range");
            }
            return;
        }
        if (c == '"') {
            take();
            std::string s;
            while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') s += take();
            if (pos_ >= text_.size() || text_[pos_] != '"')
                throw SyntaxError(tok_.line, tok_.col, "unterminated string");
            take();
            tok_.kind = Token::String;
            tok_.text = std::move(s);
            return;
        }
        if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            take();
            take();
            tok_.kind = Token::Punct;
            tok_.text = "->";
            return;
        }
        static const std::string punct = "{}[]()<>=,;/+-:*^";
        if (punct.find(c) != std::string::npos) {
            tok_.kind = Token::Punct;
            tok_.text = std::string(1, take());
            return;
        }
        throw SyntaxError(line_, col_, std::string("unexpected character '") + c + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') take();
            } else if (std::isspace((unsigned char)c)) {
                take();
            } else {
                break;
            }
        }
    }

    char take() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    Parser(const std::string& text, std::size_t group_bound)
        : lex_(text), group_bound_(group_bound) {}

    Environment run() {
        while (lex_.peek().kind != Token::End) {
            skip_separators();
            if (lex_.peek().kind == Token::End) break;
            Token head = expect_ident("declaration keyword");
            if (head.text == "ring") parse_ring();
            else if (head.text == "ideal") parse_ideal();
            else if (head.text == "module") parse_module();
            else if (head.text == "map") parse_map();
            else if (head.text == "group") parse_group();
            else if (head.text == "gset") parse_gset();
            else if (head.text == "model") parse_model();
            else if (head.text == "fixture") parse_fixture();
            else
                throw SyntaxError(head.line, head.col, "unknown declaration '" + head.text + "'");
        }
        return std::move(env_);
    }

private:
    // --- token helpers --------------------------------------------------------
    void skip_separators() {
        while (lex_.peek().kind == Token::Punct &&
               (lex_.peek().text == ";" || lex_.peek().text == ","))
            lex_.next();
    }
    Token expect_ident(const std::string& what) {
        Token t = lex_.next();
        if (t.kind != Token::Ident) throw SyntaxError(t.line, t.col, "expected " + what);
        return t;
    }
    Token expect_punct(const std::string& p) {
        Token t = lex_.next();
        if (t.kind != Token::Punct || t.text != p)
            throw SyntaxError(t.line, t.col, "expected '" + p + "'");
        return t;
    }
    long long expect_int() {
        Token t = lex_.next();
        if (t.kind != Token::Integer) throw SyntaxError(t.line, t.col, "expected an integer");
        return t.value;
    }
    // Structural counts (points, shifts, copies, ranks, primes) stay small.
    int expect_count(long long lo, long long hi, const std::string& what) {
        Token t = lex_.peek();
        long long v = expect_int();
        if (v < lo || v > hi)
            throw SyntaxError(t.line, t.col,
                              what + " must be between " + std::to_string(lo) + " and " +
                                  std::to_string(hi));
        return (int)v;
    }
    bool peek_punct(const std::string& p) {
        return lex_.peek().kind == Token::Punct && lex_.peek().text == p;
    }
    bool peek_ident(const std::string& id) {
        return lex_.peek().kind == Token::Ident && lex_.peek().text == id;
    }
    bool accept_punct(const std::string& p) {
        if (peek_punct(p)) {
            lex_.next();
            return true;
        }
        return false;
    }

    std::string declare(const std::string& kind) {
        Token name = expect_ident(kind + " name");
        if (env_.name_taken(name.text))
            throw DuplicateName("duplicate name '" + name.text + "' at line " +
                                std::to_string(name.line));
        expect_punct("=");
        env_.order.emplace_back(kind, name.text);
        return name.text;
    }

    // --- shared pieces ---------------------------------------------------------
    std::vector<long long> parse_int_list() {
        expect_punct("[");
        std::vector<long long> out;
        while (!peek_punct("]")) {
            out.push_back(expect_int());
            skip_separators();
        }
        expect_punct("]");
        return out;
    }

    std::vector<std::string> parse_ident_list() {
        expect_punct("[");
        std::vector<std::string> out;
        while (!peek_punct("]")) {
            out.push_back(expect_ident("identifier").text);
            skip_separators();
        }
        expect_punct("]");
        return out;
    }

    Rat parse_rational() {
        long long num = expect_int();
        if (accept_punct("/")) {
            long long den = expect_int();
            return Rat(num, den);
        }
        return Rat(num);
    }

    // `{ vars=[x,y]; weights=[1,2]; p=2 }`
    WeightedRing parse_ring_body() {
        Token open = expect_punct("{");
        std::vector<std::string> vars;
        std::vector<long long> weights;
        long long p = -1;
        while (!peek_punct("}")) {
            skip_separators();
            if (peek_punct("}")) break;
            Token key = expect_ident("ring field");
            expect_punct("=");
            if (key.text == "vars") vars = parse_ident_list();
            else if (key.text == "weights") weights = parse_int_list();
            else if (key.text == "p") p = expect_int();
            else
                throw SyntaxError(key.line, key.col, "unknown ring field '" + key.text + "'");
            skip_separators();
        }
        expect_punct("}");
        if (p < 0) throw SyntaxError(open.line, open.col, "ring is missing p");
        if (vars.size() != weights.size())
            throw SyntaxError(open.line, open.col, "vars and weights differ in length");
        std::vector<int> w(weights.begin(), weights.end());
        return WeightedRing(w, (int)p, vars);
    }

    // `["x*y", "x^2"]` resolved against a ring's variable names
    MonIdeal parse_ideal_body(const WeightedRing& R) {
        expect_punct("[");
        std::vector<Exponent> gens;
        while (!peek_punct("]")) {
            Token mono = lex_.next();
            if (mono.kind != Token::String)
                throw SyntaxError(mono.line, mono.col, "expected a quoted monomial");
            gens.push_back(parse_monomial(mono, R));
            skip_separators();
        }
        expect_punct("]");
        return MonIdeal::make(std::move(gens));
    }

    Exponent parse_monomial(const Token& tok, const WeightedRing& R) {
        // grammar: name(^int)? ('*' name(^int)?)* | "1"
        Exponent e(R.n(), 0);
        const std::string& s = tok.text;
        std::size_t i = 0;
        auto fail = [&](const std::string& msg) -> void {
            throw SyntaxError(tok.line, tok.col, "bad monomial '" + s + "': " + msg);
        };
        auto skip_spaces = [&] { while (i < s.size() && s[i] == ' ') ++i; };
        skip_spaces();
        if (i < s.size() && s[i] == '1' && i + 1 >= s.size()) return e;
        while (i < s.size()) {
            skip_spaces();
            std::string name;
            while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) name += s[i++];
            if (name.empty()) fail("expected a variable name");
            auto it = std::find(R.var_names.begin(), R.var_names.end(), name);
            if (it == R.var_names.end()) fail("unknown variable '" + name + "'");
            int idx = (int)(it - R.var_names.begin());
            int exp = 1;
            skip_spaces();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip_spaces();
                std::string digits;
                while (i < s.size() && std::isdigit((unsigned char)s[i])) digits += s[i++];
                if (digits.empty() || digits.size() > 6) fail("expected a small exponent");
                exp = std::stoi(digits);
            }
            e[idx] += exp;
            skip_spaces();
            if (i < s.size()) {
                if (s[i] != '*') fail("expected '*'");
                ++i;
            }
        }
        return e;
    }

    // Unquoted monomial from the token stream: `x^2 * y` or `1`.
    Exponent parse_token_monomial(const WeightedRing& R) {
        Exponent e(R.n(), 0);
        if (lex_.peek().kind == Token::Integer && lex_.peek().value == 1) {
            lex_.next();
            return e;
        }
        while (true) {
            Token var = expect_ident("variable name");
            auto it = std::find(R.var_names.begin(), R.var_names.end(), var.text);
            if (it == R.var_names.end())
                throw SyntaxError(var.line, var.col, "unknown variable '" + var.text + "'");
            int exp = 1;
            if (accept_punct("^")) exp = expect_count(0, 1000000, "exponent");
            e[it - R.var_names.begin()] += exp;
            if (!accept_punct("*")) break;
        }
        return e;
    }

    // `<(0 1 2), (0 1)>`; max point determines the degree unless forced
    std::vector<Perm> parse_perm_list(int degree) {
        expect_punct("<");
        // First pass over tokens is impossible with a streaming lexer, so
        // cycles are collected as raw point lists and materialized after the
        // degree is known.
        std::vector<std::vector<std::vector<int>>> perms;
        int max_point = -1;
        while (!peek_punct(">")) {
            skip_separators();
            if (peek_punct(">")) break;
            std::vector<std::vector<int>> cycles;
            expect_punct("(");
            while (true) {
                std::vector<int> cyc;
                while (!peek_punct(")")) {
                    int pt = expect_count(0, 1000000, "cycle point");
                    max_point = std::max(max_point, pt);
                    cyc.push_back(pt);
                }
                expect_punct(")");
                if (!cyc.empty()) cycles.push_back(std::move(cyc));
                if (!peek_punct("(")) break;
                expect_punct("(");
            }
            perms.push_back(std::move(cycles));
            skip_separators();
        }
        expect_punct(">");
        int deg = degree > 0 ? degree : max_point + 1;
        if (deg < 1) deg = 1;
        std::vector<Perm> out;
        for (const auto& cycles : perms) out.push_back(Perm::from_cycles(deg, cycles));
        return out;
    }

    const WeightedRing& ring_by_name(const Token& t) {
        const auto* d = env_.find_ring(t.text);
        if (!d) throw UnknownReference("unknown ring '" + t.text + "' at line " +
                                       std::to_string(t.line));
        return d->ring;
    }

    // --- declarations -----------------------------------------------------------
    void parse_ring() {
        auto name = declare("ring");
        env_.rings.push_back({name, parse_ring_body()});
    }

    void parse_ideal() {
        auto name = declare("ideal");
        Token rname = expect_ident("ring name");
        const auto& R = ring_by_name(rname);
        env_.ideals.push_back({name, rname.text, parse_ideal_body(R)});
    }

    void parse_module() {
        auto name = declare("module");
        Token rname = expect_ident("ring name");
        ring_by_name(rname);
        expect_punct("[");
        std::vector<std::pair<int, std::string>> parts;
        std::vector<GradedModule::Summand> summands;
        while (!peek_punct("]")) {
            skip_separators();
            if (peek_punct("]")) break;
            expect_punct("(");
            int shift = expect_count(0, 1000000, "shift");
            skip_separators();
            Token iname = expect_ident("ideal name");
            expect_punct(")");
            const auto* idecl = env_.find_ideal(iname.text);
            if (!idecl)
                throw UnknownReference("unknown ideal '" + iname.text + "' at line " +
                                       std::to_string(iname.line));
            if (idecl->ring_name != rname.text)
                throw SyntaxError(iname.line, iname.col,
                                  "ideal '" + iname.text + "' lives in ring '" + idecl->ring_name +
                                      "', not '" + rname.text + "'");
            parts.emplace_back(shift, iname.text);
            summands.push_back({shift, idecl->ideal});
            skip_separators();
        }
        expect_punct("]");
        env_.modules.push_back({name, rname.text, std::move(parts),
                                GradedModule::make(std::move(summands))});
    }

    void parse_map() {
        auto name = declare("map");
        Token src = expect_ident("source ring");
        expect_punct("->");
        Token dst = expect_ident("target ring");
        const auto& S = ring_by_name(src);
        const auto& T = ring_by_name(dst);
        expect_punct("{");
        std::vector<Exponent> images(S.n());
        std::vector<bool> seen(S.n(), false);
        while (!peek_punct("}")) {
            skip_separators();
            if (peek_punct("}")) break;
            Token var = expect_ident("source variable");
            auto it = std::find(S.var_names.begin(), S.var_names.end(), var.text);
            if (it == S.var_names.end())
                throw SyntaxError(var.line, var.col, "unknown source variable '" + var.text + "'");
            int idx = (int)(it - S.var_names.begin());
            if (seen[idx])
                throw SyntaxError(var.line, var.col, "variable '" + var.text + "' mapped twice");
            seen[idx] = true;
            Token arrow = lex_.next();
            if (arrow.kind != Token::Punct || arrow.text != "->")
                throw SyntaxError(arrow.line, arrow.col, "expected '->'");
            if (lex_.peek().kind == Token::String) {
                images[idx] = parse_monomial(lex_.next(), T);
            } else {
                images[idx] = parse_token_monomial(T);
            }
            skip_separators();
        }
        Token close = expect_punct("}");
        for (int i = 0; i < S.n(); ++i)
            if (!seen[i])
                throw SyntaxError(close.line, close.col,
                                  "map does not assign source variable '" + S.var_names[i] + "'");
        env_.maps.push_back({name, src.text, dst.text, MonRingMap::make(S, T, images)});
    }

    void parse_group() {
        auto name = declare("group");
        auto gens = parse_perm_list(0);
        int inferred = 1;
        for (const auto& g : gens) inferred = std::max(inferred, g.degree());
        int degree = inferred;
        if (peek_ident("on")) {
            Token kw = lex_.next();
            degree = expect_count(1, 1000000, "group degree");
            if (degree < inferred)
                throw SyntaxError(kw.line, kw.col, "declared degree is below a moved point");
        }
        // Re-materialize with the final degree.
        std::vector<Perm> fixed;
        for (const auto& g : gens) {
            Perm p = Perm::identity(degree);
            for (int i = 0; i < g.degree(); ++i) p.img[i] = g.img[i];
            fixed.push_back(std::move(p));
        }
        env_.groups.push_back({name, PermGroup(degree, std::move(fixed), group_bound_)});
    }

    void parse_gset() {
        auto name = declare("gset");
        std::string group_name;
        std::vector<Environment::GSetTerm> terms;
        while (true) {
            Token head = expect_ident("gset term");
            Environment::GSetTerm term;
            if (head.text == "pt") {
                expect_punct("(");
                Token g = expect_ident("group name");
                expect_punct(")");
                set_group(group_name, g);
                term.kind = Environment::GSetTerm::Pt;
            } else if (head.text == "cosets") {
                expect_punct("(");
                Token g = expect_ident("group name");
                set_group(group_name, g);
                skip_separators();
                const auto* gd = env_.find_group(group_name);
                term.kind = Environment::GSetTerm::Cosets;
                term.subgroup_gens = parse_perm_list(gd->group.degree());
                expect_punct(")");
            } else if (head.text == "free") {
                expect_punct("(");
                Token first = lex_.next();
                if (first.kind == Token::Ident) {
                    set_group(group_name, first);
                    skip_separators();
                    term.copies = expect_count(0, 1000, "orbit copy count");
                } else if (first.kind == Token::Integer) {
                    if (group_name.empty())
                        throw SyntaxError(first.line, first.col,
                                          "free(k) needs a group from an earlier term");
                    if (first.value < 0 || first.value > 1000)
                        throw SyntaxError(first.line, first.col,
                                          "orbit copy count must be between 0 and 1000");
                    term.copies = (int)first.value;
                } else {
                    throw SyntaxError(first.line, first.col, "expected group or copy count");
                }
                expect_punct(")");
                term.kind = Environment::GSetTerm::Free;
            } else if (head.text == "table") {
                expect_punct("(");
                Token g = expect_ident("group name");
                set_group(group_name, g);
                skip_separators();
                Token key = expect_ident("points");
                if (key.text != "points") throw SyntaxError(key.line, key.col, "expected points=");
                expect_punct("=");
                term.points = expect_count(0, 1000000, "point count");
                skip_separators();
                Token key2 = expect_ident("action");
                if (key2.text != "action") throw SyntaxError(key2.line, key2.col, "expected action=");
                expect_punct("=");
                expect_punct("[");
                while (!peek_punct("]")) {
                    Token at = lex_.peek();
                    auto row = parse_int_list();
                    for (long long v : row)
                        if (v < 0 || v >= term.points)
                            throw SyntaxError(at.line, at.col, "action entry outside the point range");
                    term.action.emplace_back(row.begin(), row.end());
                    skip_separators();
                }
                expect_punct("]");
                expect_punct(")");
                term.kind = Environment::GSetTerm::Table;
            } else {
                throw SyntaxError(head.line, head.col, "unknown gset term '" + head.text + "'");
            }
            terms.push_back(std::move(term));
            if (!accept_punct("+")) break;
        }
        const auto* gd = env_.find_group(group_name);
        GSet built = build_gset(gd->group, terms);
        env_.gsets.push_back({name, group_name, std::move(terms), std::move(built)});
    }

    void set_group(std::string& group_name, const Token& g) {
        if (!env_.find_group(g.text))
            throw UnknownReference("unknown group '" + g.text + "' at line " +
                                   std::to_string(g.line));
        if (group_name.empty()) group_name = g.text;
        else if (group_name != g.text)
            throw SyntaxError(g.line, g.col, "gset terms must all use the same group");
    }

    GSet build_gset(const PermGroup& G, const std::vector<Environment::GSetTerm>& terms) {
        GSet acc;
        bool first = true;
        for (const auto& t : terms) {
            GSet piece;
            switch (t.kind) {
                case Environment::GSetTerm::Pt: piece = GSet::point(G); break;
                case Environment::GSetTerm::Cosets:
                    piece = GSet::cosets(G, Subgroup::closure(G.degree(), t.subgroup_gens));
                    break;
                case Environment::GSetTerm::Free: piece = GSet::free_orbits(G, t.copies); break;
                case Environment::GSetTerm::Table: piece = GSet::make(G, t.points, t.action); break;
            }
            acc = first ? piece : GSet::disjoint_union(G, acc, piece);
            first = false;
        }
        return acc;
    }

    void parse_model() {
        auto name = declare("model");
        Token head = expect_ident("model kind");
        if (head.text == "elemab") {
            expect_punct("(");
            long long rank = -1, p = -1;
            while (!peek_punct(")")) {
                skip_separators();
                Token key = expect_ident("elemab field");
                expect_punct("=");
                if (key.text == "rank") rank = expect_count(0, 64, "rank");
                else if (key.text == "p") p = expect_count(2, 1000000000, "p");
                else throw SyntaxError(key.line, key.col, "unknown elemab field");
                skip_separators();
            }
            expect_punct(")");
            if (rank < 0 || p < 2) throw SyntaxError(head.line, head.col, "elemab needs rank and p");
            env_.models.push_back({name, ElementaryAbelianModel{(int)rank, (int)p}});
        } else if (head.text == "presented") {
            expect_punct("(");
            WeightedRing R;
            if (peek_ident("ring")) {
                lex_.next();
                R = parse_ring_body();
            } else {
                R = ring_by_name(expect_ident("ring name"));
            }
            skip_separators();
            MonIdeal I;
            if (peek_ident("ideal")) {
                lex_.next();
                I = parse_ideal_body(R);
            } else {
                Token iname = expect_ident("ideal name");
                const auto* idecl = env_.find_ideal(iname.text);
                if (!idecl)
                    throw UnknownReference("unknown ideal '" + iname.text + "' at line " +
                                           std::to_string(iname.line));
                I = idecl->ideal;
            }
            expect_punct(")");
            env_.models.push_back({name, PresentedModel{std::move(R), std::move(I)}});
        } else if (head.text == "series") {
            expect_punct("(");
            std::vector<long long> num, den;
            long long dim = -1;
            std::string note;
            std::optional<std::vector<std::vector<std::vector<int>>>> action;
            long long action_p = -1;
            while (!peek_punct(")")) {
                skip_separators();
                if (peek_punct(")")) break;
                Token key = expect_ident("series field");
                expect_punct("=");
                if (key.text == "num") num = parse_int_list();
                else if (key.text == "den") den = parse_int_list();
                else if (key.text == "dim") dim = expect_count(0, 1000000, "dim");
                else if (key.text == "p") action_p = expect_count(2, 1000000000, "p");
                else if (key.text == "note") {
                    Token s = lex_.next();
                    if (s.kind != Token::String)
                        throw SyntaxError(s.line, s.col, "note must be a string");
                    note = s.text;
                } else if (key.text == "action") {
                    expect_punct("[");
                    std::vector<std::vector<std::vector<int>>> mats;
                    while (!peek_punct("]")) {
                        skip_separators();
                        if (peek_punct("]")) break;
                        // one matrix: [[..],[..]]
                        expect_punct("[");
                        std::vector<std::vector<int>> mat;
                        if (lex_.peek().kind == Token::Integer) {
                            // 1x1 shorthand: [c]
                            mat.push_back({(int)expect_int()});
                        } else {
                            while (!peek_punct("]")) {
                                auto row = parse_int_list();
                                mat.push_back(std::vector<int>(row.begin(), row.end()));
                                skip_separators();
                            }
                        }
                        expect_punct("]");
                        mats.push_back(std::move(mat));
                        skip_separators();
                    }
                    expect_punct("]");
                    action = std::move(mats);
                } else {
                    throw SyntaxError(key.line, key.col, "unknown series field '" + key.text + "'");
                }
                skip_separators();
            }
            expect_punct(")");
            if (dim < 0) throw SyntaxError(head.line, head.col, "series needs dim=");
            std::vector<Int> coeffs(num.begin(), num.end());
            SeriesExpr s(poly_from_coeffs(coeffs), std::vector<int>(den.begin(), den.end()));
            std::optional<LinearWAction> act;
            if (action) {
                int rank = action->empty() ? 0 : (int)(*action)[0].size();
                if (action_p < 2)
                    throw SyntaxError(head.line, head.col, "series action needs p=");
                act = LinearWAction::make(rank, (int)action_p, *action);
            }
            env_.models.push_back(
                {name, SeriesOnlyModel::make(std::move(s), (int)dim, std::move(note), std::move(act))});
        } else {
            throw SyntaxError(head.line, head.col, "unknown model kind '" + head.text + "'");
        }
    }

    void parse_fixture() {
        auto name = declare("fixture");
        Environment::FixtureDecl decl;
        decl.name = name;
        decl.fixture.p = 0; // must be declared explicitly
        expect_punct("{");
        while (!peek_punct("}")) {
            skip_separators();
            if (peek_punct("}")) break;
            Token key = expect_ident("fixture field");
            if (key.text == "group") {
                expect_punct("=");
                Token g = expect_ident("group name");
                if (!env_.find_group(g.text))
                    throw UnknownReference("unknown group '" + g.text + "' at line " +
                                           std::to_string(g.line));
                decl.group_name = g.text;
            } else if (key.text == "p") {
                expect_punct("=");
                decl.fixture.p = expect_count(2, 1000000000, "p");
            } else if (key.text == "gset") {
                expect_punct("=");
                Token x = expect_ident("gset name");
                if (!env_.find_gset(x.text))
                    throw UnknownReference("unknown gset '" + x.text + "' at line " +
                                           std::to_string(x.line));
                decl.gset_name = x.text;
            } else if (key.text == "global_model") {
                expect_punct("=");
                decl.global_model_name = model_ref();
            } else if (key.text == "stabilizer_model") {
                Environment::FixtureDecl::StabEntry entry;
                entry.gens = parse_perm_list(group_degree(decl, key));
                expect_punct("=");
                entry.model_name = model_ref();
                decl.stab_entries.push_back(std::move(entry));
            } else if (key.text == "centralizer_model") {
                Environment::FixtureDecl::CentEntry entry;
                if (peek_ident("rank")) {
                    lex_.next();
                    entry.rank_key = expect_count(0, 64, "rank");
                } else if (peek_ident("pair")) {
                    lex_.next();
                    expect_punct("(");
                    auto gens = parse_perm_list(group_degree(decl, key));
                    skip_separators();
                    int pt = expect_count(0, 1000000, "point");
                    expect_punct(")");
                    entry.pair_key = {std::move(gens), pt};
                } else {
                    Token t = lex_.peek();
                    throw SyntaxError(t.line, t.col, "expected 'rank' or 'pair'");
                }
                expect_punct("=");
                entry.model_name = model_ref();
                decl.cent_entries.push_back(std::move(entry));
            } else if (key.text == "algebraic") {
                expect_punct("=");
                decl.alg = parse_algebraic(decl, key);
            } else if (key.text == "expected_lhs") {
                expect_punct("=");
                decl.expected_lhs = parse_rational();
            } else if (key.text == "expected_rhs") {
                expect_punct("=");
                decl.expected_rhs = parse_rational();
            } else if (key.text == "note") {
                expect_punct("=");
                Token s = lex_.next();
                if (s.kind != Token::String)
                    throw SyntaxError(s.line, s.col, "note must be a string");
                decl.note = s.text;
            } else {
                throw SyntaxError(key.line, key.col, "unknown fixture field '" + key.text + "'");
            }
            skip_separators();
        }
        Token close = expect_punct("}");
        resolve_fixture(decl, close);
        env_.fixtures.push_back(std::move(decl));
    }

    int group_degree(const Environment::FixtureDecl& decl, const Token& at) {
        if (decl.group_name.empty())
            throw SyntaxError(at.line, at.col, "fixture must declare its group before this field");
        return env_.find_group(decl.group_name)->group.degree();
    }

    std::string model_ref() {
        Token m = expect_ident("model name");
        if (!env_.find_model(m.text))
            throw UnknownReference("unknown model '" + m.text + "' at line " +
                                   std::to_string(m.line));
        return m.text;
    }

    Environment::FixtureDecl::AlgDecl parse_algebraic(const Environment::FixtureDecl& decl,
                                                      const Token& at) {
        Environment::FixtureDecl::AlgDecl alg;
        expect_punct("{");
        while (!peek_punct("}")) {
            skip_separators();
            if (peek_punct("}")) break;
            Token key = expect_ident("algebraic field");
            if (key.text == "ring") {
                expect_punct("=");
                Token r = expect_ident("ring name");
                ring_by_name(r);
                alg.ring_name = r.text;
            } else if (key.text == "module") {
                expect_punct("=");
                Token m = expect_ident("module name");
                if (!env_.find_module(m.text))
                    throw UnknownReference("unknown module '" + m.text + "' at line " +
                                           std::to_string(m.line));
                alg.module_name = m.text;
            } else if (key.text == "match") {
                Environment::FixtureDecl::MatchDecl match;
                expect_punct("(");
                if (lex_.peek().kind == Token::Integer) {
                    long long z = expect_int();
                    if (z != 0)
                        throw SyntaxError(key.line, key.col, "prime must be (0) or variable names");
                } else {
                    while (!peek_punct(")")) {
                        match.prime_vars.push_back(expect_ident("variable name").text);
                        skip_separators();
                    }
                }
                expect_punct(")");
                Token arrow = lex_.next();
                if (arrow.kind != Token::Punct || arrow.text != "->")
                    throw SyntaxError(arrow.line, arrow.col, "expected '->'");
                Token pairkw = expect_ident("pair");
                if (pairkw.text != "pair")
                    throw SyntaxError(pairkw.line, pairkw.col, "expected 'pair('");
                expect_punct("(");
                match.pair_gens = parse_perm_list(group_degree(decl, key));
                skip_separators();
                match.point = expect_count(0, 1000000, "point");
                expect_punct(")");
                if (peek_ident("with")) {
                    lex_.next();
                    Token res = expect_ident("res");
                    if (res.text != "res") throw SyntaxError(res.line, res.col, "expected 'res'");
                    Token mapname = expect_ident("map name");
                    if (!env_.find_map(mapname.text))
                        throw UnknownReference("unknown map '" + mapname.text + "' at line " +
                                               std::to_string(mapname.line));
                    match.res_name = mapname.text;
                }
                alg.matches.push_back(std::move(match));
            } else {
                throw SyntaxError(key.line, key.col, "unknown algebraic field '" + key.text + "'");
            }
            skip_separators();
        }
        expect_punct("}");
        if (alg.ring_name.empty() || alg.module_name.empty())
            throw SyntaxError(at.line, at.col, "algebraic block needs ring and module");
        const auto* md = env_.find_module(alg.module_name);
        if (md->ring_name != alg.ring_name)
            throw SyntaxError(at.line, at.col, "algebraic module lives in a different ring");
        return alg;
    }

    void resolve_fixture(Environment::FixtureDecl& decl, const Token& at) {
        if (decl.group_name.empty() || decl.gset_name.empty() || decl.fixture.p < 2)
            throw SyntaxError(at.line, at.col, "fixture needs group, p, and gset");
        Fixture& f = decl.fixture;
        f.name = decl.name;
        f.G = env_.find_group(decl.group_name)->group;
        const auto* xd = env_.find_gset(decl.gset_name);
        if (xd->group_name != decl.group_name)
            throw SyntaxError(at.line, at.col, "fixture gset belongs to a different group");
        f.X = xd->gset;
        f.note = decl.note;
        f.expected_lhs = decl.expected_lhs;
        f.expected_rhs = decl.expected_rhs;
        if (decl.global_model_name)
            f.global_model = env_.find_model(*decl.global_model_name)->model;
        for (const auto& e : decl.stab_entries) {
            for (const auto& g : e.gens)
                if (!f.G.contains(g))
                    throw UnknownReference("stabilizer key generator is not in the group");
            f.stabilizer_models.push_back({Subgroup::closure(f.G.degree(), e.gens),
                                           env_.find_model(e.model_name)->model});
        }
        for (const auto& e : decl.cent_entries) {
            CentralizerModelEntry entry;
            if (e.pair_key) {
                for (const auto& g : e.pair_key->first)
                    if (!f.G.contains(g))
                        throw UnknownReference("centralizer key generator is not in the group");
                entry.pair_key = {Subgroup::closure(f.G.degree(), e.pair_key->first),
                                  e.pair_key->second};
            }
            entry.rank_key = e.rank_key;
            entry.model = env_.find_model(e.model_name)->model;
            f.centralizer_models.push_back(std::move(entry));
        }
        if (decl.alg) {
            AlgebraicSide side;
            side.ring = env_.find_ring(decl.alg->ring_name)->ring;
            side.module = env_.find_module(decl.alg->module_name)->module;
            for (const auto& m : decl.alg->matches) {
                PrimeClassMatch match;
                std::vector<int> vars;
                for (const auto& vn : m.prime_vars) {
                    auto it = std::find(side.ring.var_names.begin(), side.ring.var_names.end(), vn);
                    if (it == side.ring.var_names.end())
                        throw UnknownReference("match prime names unknown variable '" + vn + "'");
                    vars.push_back((int)(it - side.ring.var_names.begin()));
                }
                match.prime = MonPrime::make(std::move(vars));
                for (const auto& g : m.pair_gens)
                    if (!f.G.contains(g))
                        throw UnknownReference("match pair generator is not in the group");
                match.A = Subgroup::closure(f.G.degree(), m.pair_gens);
                match.point = m.point;
                if (match.point < 0 || match.point >= f.X.num_points())
                    throw SyntaxError(at.line, at.col, "match point is outside the gset");
                if (m.res_name) match.res = env_.find_map(*m.res_name)->map;
                side.matches.push_back(std::move(match));
            }
            f.algebraic = std::move(side);
        }
    }

    Lexer lex_;
    std::size_t group_bound_;
    Environment env_;
};

} // namespace

const Environment::RingDecl* Environment::find_ring(const std::string& name) const {
    for (const auto& d : rings)
        if (d.name == name) return &d;
    return nullptr;
}
const Environment::IdealDecl* Environment::find_ideal(const std::string& name) const {
    for (const auto& d : ideals)
        if (d.name == name) return &d;
    return nullptr;
}
const Environment::ModuleDecl* Environment::find_module(const std::string& name) const {
    for (const auto& d : modules)
        if (d.name == name) return &d;
    return nullptr;
}
const Environment::MapDecl* Environment::find_map(const std::string& name) const {
    for (const auto& d : maps)
        if (d.name == name) return &d;
    return nullptr;
}
const Environment::GroupDecl* Environment::find_group(const std::string& name) const {
    for (const auto& d : groups)
        if (d.name == name) return &d;
    return nullptr;
}
const Environment::GSetDecl* Environment::find_gset(const std::string& name) const {
    for (const auto& d : gsets)
        if (d.name == name) return &d;
    return nullptr;
}
const Environment::ModelDecl* Environment::find_model(const std::string& name) const {
    for (const auto& d : models)
        if (d.name == name) return &d;
    return nullptr;
}
const Environment::FixtureDecl* Environment::find_fixture(const std::string& name) const {
    for (const auto& d : fixtures)
        if (d.name == name) return &d;
    return nullptr;
}
bool Environment::name_taken(const std::string& name) const {
    for (const auto& [kind, n] : order)
        if (n == name) return true;
    return false;
}

std::pair<const WeightedRing*, GradedModule> Environment::module_or_ideal(
    const std::string& name) const {
    if (const auto* md = find_module(name)) return {&find_ring(md->ring_name)->ring, md->module};
    if (const auto* id = find_ideal(name))
        return {&find_ring(id->ring_name)->ring, GradedModule::cyclic(id->ideal)};
    throw UnknownReference("no module or ideal named '" + name + "'");
}

Environment parse_environment(const std::string& text, std::size_t group_bound) {
    return Parser(text, group_bound).run();
}

// --- pretty printing -----------------------------------------------------------

namespace {

std::string perm_list_text(const std::vector<Perm>& perms) {
    std::string out = "<";
    for (std::size_t i = 0; i < perms.size(); ++i) {
        if (i) out += ", ";
        out += perms[i].to_cycle_string();
    }
    return out + ">";
}

std::string int_list_text(const std::vector<long long>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

std::string ring_body_text(const WeightedRing& R) {
    std::string out = "{ vars=[";
    for (int i = 0; i < R.n(); ++i) {
        if (i) out += ", ";
        out += R.var_names[i];
    }
    out += "]; weights=[";
    for (int i = 0; i < R.n(); ++i) {
        if (i) out += ", ";
        out += std::to_string(R.weights[i]);
    }
    out += "]; p=" + std::to_string(R.p) + " }";
    return out;
}

std::string ideal_body_text(const WeightedRing& R, const MonIdeal& I) {
    std::string out = "[";
    for (std::size_t i = 0; i < I.gens.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + R.monomial_to_string(I.gens[i]) + "\"";
    }
    return out + "]";
}

std::string model_text(const CohModel& m) {
    if (const auto* ea = std::get_if<ElementaryAbelianModel>(&m))
        return "elemab(rank=" + std::to_string(ea->rank) + ", p=" + std::to_string(ea->p) + ")";
    if (const auto* pr = std::get_if<PresentedModel>(&m))
        return "presented(ring " + ring_body_text(pr->ring) + ", ideal " +
               ideal_body_text(pr->ring, pr->ideal) + ")";
    const auto& so = std::get<SeriesOnlyModel>(m);
    std::string out = "series(num=[";
    int d = poly_degree(so.series.numerator);
    for (int i = 0; i <= std::max(d, 0); ++i) {
        if (i) out += ", ";
        auto it = so.series.numerator.find(i);
        out += (it == so.series.numerator.end() ? Int(0) : it->second).str();
    }
    out += "], den=[";
    for (std::size_t i = 0; i < so.series.denom_weights.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(so.series.denom_weights[i]);
    }
    out += "], dim=" + std::to_string(so.declared_dim);
    if (!so.note.empty()) out += ", note=\"" + so.note + "\"";
    if (so.action) {
        out += ", p=" + std::to_string(so.action->p) + ", action=[";
        for (std::size_t g = 0; g < so.action->gens.size(); ++g) {
            if (g) out += ", ";
            out += "[";
            for (std::size_t r = 0; r < so.action->gens[g].size(); ++r) {
                if (r) out += ", ";
                out += "[";
                for (std::size_t c = 0; c < so.action->gens[g][r].size(); ++c) {
                    if (c) out += ", ";
                    out += std::to_string(so.action->gens[g][r][c]);
                }
                out += "]";
            }
            out += "]";
        }
        out += "]";
    }
    return out + ")";
}

std::string prime_vars_text(const std::vector<std::string>& vars) {
    if (vars.empty()) return "(0)";
    std::string out = "(";
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out += ", ";
        out += vars[i];
    }
    return out + ")";
}

} // namespace

std::string pretty_print(const Environment& env) {
    std::ostringstream os;
    for (const auto& [kind, name] : env.order) {
        if (kind == "ring") {
            os << "ring " << name << " = " << ring_body_text(env.find_ring(name)->ring) << "\n";
        } else if (kind == "ideal") {
            const auto* d = env.find_ideal(name);
            const auto& R = env.find_ring(d->ring_name)->ring;
            os << "ideal " << name << " = " << d->ring_name << " " << ideal_body_text(R, d->ideal)
               << "\n";
        } else if (kind == "module") {
            const auto* d = env.find_module(name);
            os << "module " << name << " = " << d->ring_name << " [";
            for (std::size_t i = 0; i < d->parts.size(); ++i) {
                if (i) os << ", ";
                os << "(" << d->parts[i].first << ", " << d->parts[i].second << ")";
            }
            os << "]\n";
        } else if (kind == "map") {
            const auto* d = env.find_map(name);
            os << "map " << name << " = " << d->source_ring << " -> " << d->target_ring << " { ";
            for (int i = 0; i < d->map.source.n(); ++i) {
                if (i) os << "; ";
                os << d->map.source.var_names[i] << " -> \""
                   << d->map.target.monomial_to_string(d->map.images[i]) << "\"";
            }
            os << " }\n";
        } else if (kind == "group") {
            const auto* d = env.find_group(name);
            os << "group " << name << " = " << perm_list_text(d->group.generators()) << " on "
               << d->group.degree() << "\n";
        } else if (kind == "gset") {
            const auto* d = env.find_gset(name);
            os << "gset " << name << " = ";
            for (std::size_t i = 0; i < d->terms.size(); ++i) {
                if (i) os << " + ";
                const auto& t = d->terms[i];
                switch (t.kind) {
                    case Environment::GSetTerm::Pt: os << "pt(" << d->group_name << ")"; break;
                    case Environment::GSetTerm::Cosets:
                        os << "cosets(" << d->group_name << ", " << perm_list_text(t.subgroup_gens)
                           << ")";
                        break;
                    case Environment::GSetTerm::Free:
                        os << "free(" << d->group_name << ", " << t.copies << ")";
                        break;
                    case Environment::GSetTerm::Table: {
                        os << "table(" << d->group_name << ", points=" << t.points << ", action=[";
                        for (std::size_t r = 0; r < t.action.size(); ++r) {
                            if (r) os << ", ";
                            os << int_list_text(
                                std::vector<long long>(t.action[r].begin(), t.action[r].end()));
                        }
                        os << "])";
                        break;
                    }
                }
            }
            os << "\n";
        } else if (kind == "model") {
            os << "model " << name << " = " << model_text(env.find_model(name)->model) << "\n";
        } else if (kind == "fixture") {
            const auto* d = env.find_fixture(name);
            os << "fixture " << name << " = {\n";
            os << "  group = " << d->group_name << "\n";
            os << "  p = " << d->fixture.p << "\n";
            os << "  gset = " << d->gset_name << "\n";
            if (d->global_model_name) os << "  global_model = " << *d->global_model_name << "\n";
            for (const auto& e : d->stab_entries)
                os << "  stabilizer_model " << perm_list_text(e.gens) << " = " << e.model_name
                   << "\n";
            for (const auto& e : d->cent_entries) {
                os << "  centralizer_model ";
                if (e.rank_key) os << "rank " << *e.rank_key;
                else
                    os << "pair(" << perm_list_text(e.pair_key->first) << ", "
                       << e.pair_key->second << ")";
                os << " = " << e.model_name << "\n";
            }
            if (d->alg) {
                os << "  algebraic = {\n";
                os << "    ring = " << d->alg->ring_name << "\n";
                os << "    module = " << d->alg->module_name << "\n";
                for (const auto& m : d->alg->matches) {
                    os << "    match " << prime_vars_text(m.prime_vars) << " -> pair("
                       << perm_list_text(m.pair_gens) << ", " << m.point << ")";
                    if (m.res_name) os << " with res " << *m.res_name;
                    os << "\n";
                }
                os << "  }\n";
            }
            if (d->expected_lhs) os << "  expected_lhs = " << rat_to_string(*d->expected_lhs) << "\n";
            if (d->expected_rhs) os << "  expected_rhs = " << rat_to_string(*d->expected_rhs) << "\n";
            if (!d->note.empty()) os << "  note = \"" << d->note << "\"\n";
            os << "}\n";
        }
    }
    return os.str();
}

} // namespace qdx
