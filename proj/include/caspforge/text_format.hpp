#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "caspforge/csp.hpp"
#include "caspforge/program.hpp"

namespace caspforge {

/// One rule per line in the paper's notation: facts "h.", normal rules
/// "h :- a, not b.", integrity rules with an empty head ":- ...", choice
/// rules "{h1; h2}." and cardinality rules "h :- 2 {a; not b}.".
inline std::string emit_program(const GroundProgram& p) {
    std::ostringstream os;
    for (const auto& r : p.rules()) {
        const bool integrity = r.kind != RuleKind::Choice && r.head[0] == p.bottom();
        switch (r.kind) {
            case RuleKind::Choice: {
                os << "{";
                for (size_t i = 0; i < r.head.size(); ++i)
                    os << (i ? "; " : "") << p.atom_name(r.head[i]);
                os << "}";
                break;
            }
            case RuleKind::Normal:
            case RuleKind::Cardinality:
                if (!integrity) os << p.atom_name(r.head[0]);
                break;
        }
        const bool has_body =
            !r.body_pos.empty() || !r.body_neg.empty() || r.kind == RuleKind::Cardinality;
        if (has_body) {
            os << (integrity ? ":-" : " :-");
            os << " ";
            if (r.kind == RuleKind::Cardinality) {
                os << r.bound << " {";
                bool first = true;
                for (AtomId a : r.body_pos) {
                    os << (first ? "" : "; ") << p.atom_name(a);
                    first = false;
                }
                for (AtomId a : r.body_neg) {
                    os << (first ? "not " : "; not ") << p.atom_name(a);
                    first = false;
                }
                os << "}";
            } else {
                bool first = true;
                for (AtomId a : r.body_pos) {
                    os << (first ? "" : ", ") << p.atom_name(a);
                    first = false;
                }
                for (AtomId a : r.body_neg) {
                    os << (first ? "not " : ", not ") << p.atom_name(a);
                    first = false;
                }
            }
        }
        os << ".\n";
    }
    return os.str();
}

namespace detail {

class LineParser {
public:
    LineParser(std::string_view text, int line) : s_(text), line_(line) {}

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= s_.size() || s_[pos_] == '#';
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error("syntax error at line " + std::to_string(line_) + ", column " +
                    std::to_string(pos_ + 1) + ": " + what);
    }

    std::string ident() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) fail("expected identifier");
        std::string out(s_.substr(start, pos_ - start));
        if (std::isdigit(static_cast<unsigned char>(out[0]))) fail("expected identifier");
        return out;
    }

    Value integer() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(
                                                       s_[start]))))
            fail("expected integer");
        return static_cast<Value>(std::stol(std::string(s_.substr(start, pos_ - start))));
    }

    bool try_consume(std::string_view tok) {
        skip_ws();
        if (s_.substr(pos_).starts_with(tok)) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void consume(std::string_view tok) {
        if (!try_consume(tok)) fail("expected '" + std::string(tok) + "'");
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

private:
    std::string_view s_;
    size_t pos_ = 0;
    int line_;
};

}  // namespace detail

/// Line-oriented CSP format:
///
///   var x 1..3
///   var y {1,2,4}
///   neq x y
///   alldiff x y z
///   allowed c1 (x,y) {(1,2),(2,1)}
///   forbidden c2 (x,y) {(1,1)} direct
///
/// '#' starts a comment. Disequalities and all-different constraints are
/// auto-named _c<position>; explicit ids must not start with '_'.
inline CspInstance parse_csp(const std::string& text) {
    std::vector<VariableDecl> vars;
    std::vector<Constraint> cons;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::set<std::string> var_names;
    while (std::getline(is, line)) {
        ++lineno;
        detail::LineParser lp(line, lineno);
        if (lp.at_end()) continue;
        const std::string kw = lp.ident();
        if (kw == "var") {
            VariableDecl v;
            v.name = lp.ident();
            if (lp.peek_is('{')) {
                lp.consume("{");
                v.domain.push_back(lp.integer());
                while (lp.try_consume(",")) v.domain.push_back(lp.integer());
                lp.consume("}");
            } else {
                Value lo = lp.integer();
                lp.consume("..");
                Value hi = lp.integer();
                if (hi < lo) lp.fail("empty domain range");
                for (Value x = lo; x <= hi; ++x) v.domain.push_back(x);
            }
            var_names.insert(v.name);
            vars.push_back(std::move(v));
        } else if (kw == "neq") {
            Constraint c;
            c.kind = ConstraintKind::NotEqual;
            c.scope = {lp.ident(), lp.ident()};
            c.id = "_c" + std::to_string(cons.size() + 1);
            cons.push_back(std::move(c));
        } else if (kw == "alldiff") {
            Constraint c;
            c.kind = ConstraintKind::AllDifferent;
            while (!lp.at_end()) c.scope.push_back(lp.ident());
            c.id = "_c" + std::to_string(cons.size() + 1);
            cons.push_back(std::move(c));
        } else if (kw == "allowed" || kw == "forbidden") {
            Constraint c;
            c.kind = kw == "allowed" ? ConstraintKind::ExtensionalAllowed
                                     : ConstraintKind::ExtensionalForbidden;
            c.id = lp.ident();
            if (c.id.starts_with("_")) lp.fail("ids starting with '_' are reserved");
            lp.consume("(");
            c.scope.push_back(lp.ident());
            while (lp.try_consume(",")) c.scope.push_back(lp.ident());
            lp.consume(")");
            lp.consume("{");
            while (lp.peek_is('(')) {
                lp.consume("(");
                Tuple t{lp.integer()};
                while (lp.try_consume(",")) t.push_back(lp.integer());
                lp.consume(")");
                if (t.size() != c.scope.size()) lp.fail("arity mismatch in tuple");
                c.tuples.push_back(std::move(t));
                if (!lp.try_consume(",")) break;
            }
            lp.consume("}");
            if (!lp.at_end()) {
                if (lp.ident() != "direct") lp.fail("unexpected trailing token");
                c.prefer_direct = true;
            }
            cons.push_back(std::move(c));
        } else {
            lp.fail("unknown declaration '" + kw + "'");
        }
    }
    for (const auto& c : cons)
        for (const auto& s : c.scope)
            if (!var_names.contains(s))
                throw Error("unknown variable: " + s + " in constraint " + c.id);
    return CspInstance(std::move(vars), std::move(cons));
}

/// Canonical text for an instance; parse_csp(serialize_csp(csp))
/// reconstructs it exactly (auto ids included).
inline std::string serialize_csp(const CspInstance& csp) {
    std::ostringstream os;
    for (const auto& v : csp.variables()) {
        os << "var " << v.name << " ";
        const bool contiguous =
            v.domain.back() - v.domain.front() + 1 == static_cast<Value>(v.domain.size());
        if (contiguous) {
            os << v.domain.front() << ".." << v.domain.back();
        } else {
            os << "{";
            for (size_t i = 0; i < v.domain.size(); ++i)
                os << (i ? "," : "") << v.domain[i];
            os << "}";
        }
        os << "\n";
    }
    for (const auto& c : csp.constraints()) {
        switch (c.kind) {
            case ConstraintKind::NotEqual:
                os << "neq " << c.scope[0] << " " << c.scope[1] << "\n";
                break;
            case ConstraintKind::AllDifferent: {
                os << "alldiff";
                for (const auto& s : c.scope) os << " " << s;
                os << "\n";
                break;
            }
            default: {
                os << (c.kind == ConstraintKind::ExtensionalAllowed ? "allowed " : "forbidden ")
                   << c.id << " (";
                for (size_t i = 0; i < c.scope.size(); ++i)
                    os << (i ? "," : "") << c.scope[i];
                os << ") {";
                for (size_t t = 0; t < c.tuples.size(); ++t) {
                    os << (t ? "," : "") << "(";
                    for (size_t i = 0; i < c.tuples[t].size(); ++i)
                        os << (i ? "," : "") << c.tuples[t][i];
                    os << ")";
                }
                os << "}";
                if (c.prefer_direct) os << " direct";
                os << "\n";
                break;
            }
        }
    }
    return os.str();
}

}  // namespace caspforge
