#pragma once

// CPLEX-style LP file writer and reader for Model. The pair round-trips
// exactly: numbers are printed with just enough digits to re-parse to the
// same double, and the objective lists every variable (zero coefficients
// included) so the reader recovers the original variable order. Named
// auxiliary expressions are not part of the format and do not survive a
// round-trip.

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "hubshop/milp/model.hpp"

namespace hubshop::milp {

namespace lpdetail {

inline bool clean_char(char c) {
    return std::isalnum((unsigned char)c) || c == '_' || c == '.' || c == '#';
}

inline std::string sanitize_name(const std::string& raw, const char* fallbackPrefix, int id) {
    std::string s;
    s.reserve(raw.size());
    for (char c : raw) s.push_back(clean_char(c) ? c : '_');
    if (s.empty()) s = fallbackPrefix + std::to_string(id);
    if (std::isdigit((unsigned char)s[0]) || s[0] == '.') s.insert(s.begin(), 'v');
    return s;
}

inline std::string bound_token(double v) {
    if (v == kInf) return "+inf";
    if (v == -kInf) return "-inf";
    return format_double(v);
}

}  // namespace lpdetail

inline std::string write_lp(const Model& m) {
    if (m.num_vars() == 0) throw SchemaError("write_lp: model has no variables");

    std::vector<std::string> vname(m.num_vars());
    {
        std::map<std::string, int> seen;
        for (int j = 0; j < m.num_vars(); ++j) {
            vname[j] = lpdetail::sanitize_name(m.vars[j].name, "v", j);
            auto [it, fresh] = seen.emplace(vname[j], j);
            if (!fresh)
                throw SchemaError("write_lp: variable names '" + m.vars[it->second].name +
                                  "' and '" + m.vars[j].name + "' collide as '" + vname[j] + "'");
        }
    }
    std::vector<std::string> cname(m.cons.size());
    {
        std::map<std::string, int> seen;
        for (size_t i = 0; i < m.cons.size(); ++i) {
            cname[i] = lpdetail::sanitize_name(m.cons[i].name, "c", (int)i);
            auto [it, fresh] = seen.emplace(cname[i], (int)i);
            if (!fresh)
                throw SchemaError("write_lp: constraint names '" + m.cons[it->second].name +
                                  "' and '" + m.cons[i].name + "' collide as '" + cname[i] + "'");
        }
    }

    std::ostringstream out;
    out << "Minimize\n obj:";
    // Every variable appears, so a reader sees them in creation order.
    {
        std::vector<double> c(m.num_vars(), 0.0);
        for (const auto& [j, v] : m.objective.terms) c[j] = v;
        int col = 5;
        for (int j = 0; j < m.num_vars(); ++j) {
            std::string t = (c[j] < 0.0 ? " - " : " + ") + format_double(std::fabs(c[j])) + " " +
                            vname[j];
            if (col + (int)t.size() > 250) {
                out << "\n ";
                col = 1;
            }
            out << t;
            col += (int)t.size();
        }
    }
    out << "\nSubject To\n";
    for (size_t i = 0; i < m.cons.size(); ++i) {
        const Constraint& con = m.cons[i];
        if (con.expr.empty())
            throw SchemaError("write_lp: constraint '" + con.name + "' has an empty expression");
        out << " " << cname[i] << ":";
        int col = (int)cname[i].size() + 2;
        for (const auto& [j, v] : con.expr.terms) {
            std::string t =
                (v < 0.0 ? " - " : " + ") + format_double(std::fabs(v)) + " " + vname[j];
            if (col + (int)t.size() > 250) {
                out << "\n ";
                col = 1;
            }
            out << t;
            col += (int)t.size();
        }
        const char* s = con.sense == Sense::LessEq      ? "<="
                        : con.sense == Sense::GreaterEq ? ">="
                                                        : "=";
        out << " " << s << " " << format_double(con.rhs) << "\n";
    }
    out << "Bounds\n";
    for (int j = 0; j < m.num_vars(); ++j) {
        const Variable& v = m.vars[j];
        if (v.lo == -kInf && v.hi == kInf)
            out << " " << vname[j] << " free\n";
        else
            out << " " << lpdetail::bound_token(v.lo) << " <= " << vname[j]
                << " <= " << lpdetail::bound_token(v.hi) << "\n";
    }
    bool anyBin = false;
    for (const auto& v : m.vars)
        if (v.kind == VarKind::Binary) anyBin = true;
    if (anyBin) {
        out << "Binaries\n";
        int col = 0;
        for (int j = 0; j < m.num_vars(); ++j) {
            if (m.vars[j].kind != VarKind::Binary) continue;
            if (col + (int)vname[j].size() + 1 > 250) {
                out << "\n";
                col = 0;
            }
            out << " " << vname[j];
            col += (int)vname[j].size() + 1;
        }
        out << "\n";
    }
    out << "End\n";
    return out.str();
}

inline void write_lp_file(const Model& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw SchemaError("write_lp: cannot open '" + path + "' for writing");
    f << write_lp(m);
    if (!f) throw SchemaError("write_lp: write to '" + path + "' failed");
}

namespace lpdetail {

struct Token {
    enum Kind { Name, Number, Relation, Plus, Minus, Colon, EndOfFile } kind;
    std::string text;
    double num = 0.0;
    Sense sense = Sense::LessEq;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        skip_ws();
        if (pos_ >= s_.size()) return {Token::EndOfFile, ""};
        char c = s_[pos_];
        if (c == ':') {
            ++pos_;
            return {Token::Colon, ":"};
        }
        if (c == '<' || c == '>' || c == '=') {
            size_t start = pos_++;
            if (pos_ < s_.size() && s_[pos_] == '=') ++pos_;
            Token t{Token::Relation, s_.substr(start, pos_ - start)};
            t.sense = c == '<' ? Sense::LessEq : c == '>' ? Sense::GreaterEq : Sense::Equal;
            return t;
        }
        if (c == '+') {
            ++pos_;
            return {Token::Plus, "+"};
        }
        if (c == '-') {
            // A '-' may begin "-inf"; otherwise it is a sign.
            if (s_.compare(pos_, 4, "-inf") == 0 && !clean_char(peek_at(pos_ + 4))) {
                pos_ += 4;
                Token t{Token::Number, "-inf"};
                t.num = -kInf;
                return t;
            }
            ++pos_;
            return {Token::Minus, "-"};
        }
        size_t start = pos_;
        while (pos_ < s_.size() && clean_char(s_[pos_])) ++pos_;
        if (pos_ == start)
            throw SchemaError("read_lp: unexpected character '" + std::string(1, c) +
                              "' at offset " + std::to_string(pos_));
        std::string word = s_.substr(start, pos_ - start);
        // Scientific-notation tails like "1e+5" stop at clean_char boundaries.
        if ((std::isdigit((unsigned char)word[0]) || word[0] == '.') &&
            (word.back() == 'e' || word.back() == 'E') && pos_ < s_.size() &&
            (s_[pos_] == '+' || s_[pos_] == '-')) {
            size_t p = pos_ + 1;
            size_t d = p;
            while (d < s_.size() && std::isdigit((unsigned char)s_[d])) ++d;
            if (d > p) {
                word += s_.substr(pos_, d - pos_);
                pos_ = d;
            }
        }
        const char* cs = word.c_str();
        char* end = nullptr;
        double v = std::strtod(cs, &end);
        if (end == cs + word.size() && end != cs) {
            Token t{Token::Number, word};
            t.num = v;
            return t;
        }
        if (word == "inf") {
            Token t{Token::Number, word};
            t.num = kInf;
            return t;
        }
        return {Token::Name, word};
    }

    size_t offset() const { return pos_; }

private:
    const std::string& s_;
    size_t pos_ = 0;

    char peek_at(size_t i) const { return i < s_.size() ? s_[i] : '\0'; }

    void skip_ws() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '\\') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else if (std::isspace((unsigned char)c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }
};

inline std::string lower(std::string s) {
    for (char& c : s) c = (char)std::tolower((unsigned char)c);
    return s;
}

inline bool is_section_word(const std::string& w, std::string* section) {
    std::string l = lower(w);
    if (l == "minimize" || l == "minimise" || l == "min") *section = "objective";
    else if (l == "maximize" || l == "maximise" || l == "max") *section = "maximize";
    else if (l == "subject" || l == "st" || l == "s.t." || l == "st.") *section = "constraints";
    else if (l == "bounds" || l == "bound") *section = "bounds";
    else if (l == "binaries" || l == "binary" || l == "bin") *section = "binaries";
    else if (l == "general" || l == "generals" || l == "gen") *section = "general";
    else if (l == "end") *section = "end";
    else return false;
    return true;
}

}  // namespace lpdetail

inline Model read_lp(const std::string& text) {
    using lpdetail::Token;
    lpdetail::Lexer lex(text);

    Model m;
    std::map<std::string, int> varId;
    std::vector<bool> hasBounds;
    auto var_of = [&](const std::string& name) {
        auto it = varId.find(name);
        if (it != varId.end()) return it->second;
        int id = m.add_continuous(name, 0.0, kInf);
        varId.emplace(name, id);
        hasBounds.push_back(false);
        return id;
    };
    auto fail = [&](const std::string& why) -> SchemaError {
        return SchemaError("read_lp: " + why + " near offset " + std::to_string(lex.offset()));
    };

    Token tok = lex.next();
    // Numbers outside expressions (bounds, right-hand sides) may carry signs.
    auto signed_number = [&](const char* what) {
        double sign = 1.0;
        while (tok.kind == Token::Plus || tok.kind == Token::Minus) {
            if (tok.kind == Token::Minus) sign = -sign;
            tok = lex.next();
        }
        if (tok.kind != Token::Number) throw fail(std::string("expected ") + what);
        double v = sign * tok.num;
        tok = lex.next();
        return v;
    };
    auto expect_section = [&](const char* want) {
        std::string sec;
        if (tok.kind != Token::Name || !lpdetail::is_section_word(tok.text, &sec) || sec != want)
            throw fail(std::string("expected section '") + want + "'");
        if (sec == "constraints" && lpdetail::lower(tok.text) == "subject") {
            Token to = lex.next();
            if (to.kind != Token::Name || lpdetail::lower(to.text) != "to")
                throw fail("expected 'To' after 'Subject'");
        }
        tok = lex.next();
    };

    {
        std::string sec;
        if (tok.kind == Token::Name && lpdetail::is_section_word(tok.text, &sec) &&
            sec == "maximize")
            throw fail("maximization is not supported");
    }
    expect_section("objective");

    // Expression parser: consumes [label:] ((+|-)* [num] name)* and stops at
    // a sense token, a section keyword, or a "name :" lookahead.
    struct Parsed {
        LinearExpr expr;
        std::string label;
        bool hitSense = false;
        Sense sense = Sense::LessEq;
    };
    auto parse_expr = [&](bool allowLabel) {
        Parsed p;
        bool first = true;
        double sign = 1.0;
        bool signSeen = false;
        bool coeffSeen = false;
        double coeff = 1.0;
        while (true) {
            if (tok.kind == Token::EndOfFile) break;
            if (tok.kind == Token::Relation) {
                if (signSeen || coeffSeen) throw fail("dangling sign or coefficient");
                p.hitSense = true;
                p.sense = tok.sense;
                tok = lex.next();
                break;
            }
            if (tok.kind == Token::Plus || tok.kind == Token::Minus) {
                if (tok.kind == Token::Minus) sign = -sign;
                signSeen = true;
                tok = lex.next();
                continue;
            }
            if (tok.kind == Token::Number) {
                if (coeffSeen) throw fail("two consecutive numbers in expression");
                coeff = tok.num;
                coeffSeen = true;
                tok = lex.next();
                continue;
            }
            if (tok.kind == Token::Name) {
                std::string sec;
                if (!signSeen && !coeffSeen && lpdetail::is_section_word(tok.text, &sec)) break;
                std::string name = tok.text;
                Token after = lex.next();
                if (after.kind == Token::Colon) {
                    if (!first || signSeen || coeffSeen || !allowLabel)
                        throw fail("unexpected label '" + name + "'");
                    p.label = name;
                    tok = lex.next();
                    continue;
                }
                p.expr.add(var_of(name), sign * coeff);
                sign = 1.0;
                coeff = 1.0;
                signSeen = coeffSeen = false;
                first = false;
                tok = after;
                continue;
            }
            throw fail("unexpected token '" + tok.text + "' in expression");
        }
        if (signSeen || coeffSeen) throw fail("expression ends with a dangling term");
        return p;
    };

    {
        Parsed obj = parse_expr(/*allowLabel=*/true);
        if (obj.hitSense) throw fail("objective must not contain a relation");
        m.objective = std::move(obj.expr);
    }

    expect_section("constraints");
    while (true) {
        std::string sec;
        if (tok.kind == Token::EndOfFile) throw fail("missing 'End'");
        if (tok.kind == Token::Name && lpdetail::is_section_word(tok.text, &sec)) break;
        Parsed row = parse_expr(/*allowLabel=*/true);
        if (!row.hitSense) throw fail("constraint lacks a relation");
        if (row.expr.empty()) throw fail("constraint '" + row.label + "' has no terms");
        double rhs = signed_number("a right-hand side");
        std::string name = row.label.empty() ? "c" + std::to_string(m.cons.size()) : row.label;
        m.add_constraint(name, std::move(row.expr), row.sense, rhs);
    }

    auto section_of = [&](std::string* sec) {
        return tok.kind == Token::Name && lpdetail::is_section_word(tok.text, sec);
    };

    std::string sec;
    if (section_of(&sec) && sec == "bounds") {
        tok = lex.next();
        while (!(section_of(&sec)) && tok.kind != Token::EndOfFile) {
            // Forms: "lo <= x <= hi" | "x <= hi" | "x >= lo" | "x = v" | "x free".
            if (tok.kind == Token::Number || tok.kind == Token::Plus ||
                tok.kind == Token::Minus) {
                double lo = signed_number("a lower bound value");
                if (tok.kind != Token::Relation || tok.sense != Sense::LessEq)
                    throw fail("expected '<=' after lower bound");
                tok = lex.next();
                if (tok.kind != Token::Name) throw fail("expected variable in bound");
                int j = var_of(tok.text);
                tok = lex.next();
                m.vars[j].lo = lo;
                hasBounds[j] = true;
                if (tok.kind == Token::Relation && tok.sense == Sense::LessEq) {
                    tok = lex.next();
                    m.vars[j].hi = signed_number("an upper bound value");
                }
            } else if (tok.kind == Token::Name) {
                int j = var_of(tok.text);
                tok = lex.next();
                if (tok.kind == Token::Name && lpdetail::lower(tok.text) == "free") {
                    m.vars[j].lo = -kInf;
                    m.vars[j].hi = kInf;
                    hasBounds[j] = true;
                    tok = lex.next();
                } else if (tok.kind == Token::Relation) {
                    Sense s = tok.sense;
                    tok = lex.next();
                    double v = signed_number("a bound value");
                    hasBounds[j] = true;
                    if (s == Sense::LessEq) m.vars[j].hi = v;
                    else if (s == Sense::GreaterEq) m.vars[j].lo = v;
                    else {
                        m.vars[j].lo = v;
                        m.vars[j].hi = v;
                    }
                } else {
                    throw fail("malformed bound line");
                }
            } else {
                throw fail("malformed bounds section");
            }
        }
    }
    if (section_of(&sec) && sec == "binaries") {
        tok = lex.next();
        while (tok.kind == Token::Name && !lpdetail::is_section_word(tok.text, &sec)) {
            int j = var_of(tok.text);
            m.vars[j].kind = VarKind::Binary;
            if (!hasBounds[j]) {
                m.vars[j].lo = 0.0;
                m.vars[j].hi = 1.0;
            }
            tok = lex.next();
        }
    }
    if (section_of(&sec) && sec == "general") throw fail("general integers are not supported");
    if (!(section_of(&sec) && sec == "end")) throw fail("missing 'End'");
    return m;
}

inline Model read_lp_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw SchemaError("read_lp: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return read_lp(buf.str());
}

}  // namespace hubshop::milp
