// Independent reference semantics and random formula generators, shared by
// the formula tests and the acceptance binary.
#pragma once

#include "mqw/formula.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace oracle {

using mqw::Formula;
using mqw::FormulaPtr;
using mqw::Rational;
using mqw::Term;
using mqw::TermPtr;

using Env = std::map<std::string, Rational>;
using RatDomains = std::map<std::string, std::vector<Rational>>;

inline Rational ref_term(const Term& t, const Env& env) {
    switch (t.kind) {
        case Term::Kind::zero: return 0;
        case Term::Kind::one: return 1;
        case Term::Kind::var: return env.at(t.name);
        case Term::Kind::add: return ref_term(*t.lhs, env) + ref_term(*t.rhs, env);
        case Term::Kind::sub: return ref_term(*t.lhs, env) - ref_term(*t.rhs, env);
        case Term::Kind::mul: return ref_term(*t.lhs, env) * ref_term(*t.rhs, env);
        case Term::Kind::neg: return -ref_term(*t.lhs, env);
    }
    return 0;
}

// Each quantifier instance gets a fresh copy of the environment.
inline bool ref_holds(const Formula& f, const Env& env, const RatDomains& doms) {
    switch (f.kind) {
        case Formula::Kind::eq: return ref_term(*f.lt, env) == ref_term(*f.rt, env);
        case Formula::Kind::not_: return !ref_holds(*f.lhs, env, doms);
        case Formula::Kind::and_: return ref_holds(*f.lhs, env, doms) && ref_holds(*f.rhs, env, doms);
        case Formula::Kind::or_: return ref_holds(*f.lhs, env, doms) || ref_holds(*f.rhs, env, doms);
        case Formula::Kind::implies: return !ref_holds(*f.lhs, env, doms) || ref_holds(*f.rhs, env, doms);
        case Formula::Kind::exists:
        case Formula::Kind::forall: {
            const bool exists = f.kind == Formula::Kind::exists;
            for (const auto& v : doms.at(f.domain)) {
                Env inner = env;
                inner[f.var] = v;
                if (ref_holds(*f.lhs, inner, doms) == exists) return exists;
            }
            return !exists;
        }
    }
    return false;
}

inline mqw::Assignment to_assignment(const Env& env) {
    mqw::Assignment a;
    for (const auto& [k, v] : env) a.emplace(k, mqw::Element::rational(v));
    return a;
}

inline mqw::Domains to_domains(const RatDomains& d) {
    mqw::Domains out;
    for (const auto& [k, vs] : d) {
        auto& dst = out[k];
        for (const auto& v : vs) dst.push_back(mqw::Element::rational(v));
    }
    return out;
}

inline std::vector<Rational> range(long lo, long hi) {
    std::vector<Rational> out;
    for (long v = lo; v <= hi; ++v) out.emplace_back(v);
    return out;
}

struct HandCase {
    std::string source;
    Env env;
    RatDomains domains;
    bool expected;
};

inline std::vector<HandCase> hand_cases(const std::string& phi_source) {
    const RatDomains d012{{"D", range(0, 2)}};
    const RatDomains sym{{"D", range(-1, 1)}};
    const RatDomains w05{{"W", range(0, 5)}};
    return {
        {"x = 0", {{"x", 0}}, {}, true},
        {"x = 0", {{"x", 1}}, {}, false},
        {"forall y in D. y*y = y", {}, {{"D", range(0, 1)}}, true},
        {"forall y in D. y*y = y", {}, d012, false},
        {"exists y in D. x = y*y", {{"x", 4}}, d012, true},
        {"exists y in D. x = y*y", {{"x", 3}}, d012, false},
        {"exists y in D. x*y = 1", {{"x", 1}}, sym, true},
        {"exists y in D. x*y = 1", {{"x", 2}}, sym, false},
        {"forall a in D. exists b in D. a + b = 0", {}, sym, true},
        {"forall a in D. exists b in D. a + b = 0", {}, {{"D", range(0, 1)}}, false},
        {"exists a in D. forall b in D. a*b = 0", {}, d012, true},
        {"x != 0 -> exists y in D. x*y = 1", {{"x", 0}}, d012, true},
        {"~(x = 1) | x*x = 1", {{"x", 1}}, {}, true},
        {"(exists x in D. x = 1) & x = 5", {{"x", 5}}, d012, true},
        {"x - 1 = -(1 - x)", {{"x", 7}}, {}, true},
        {"2*x + 3 = 7", {{"x", 2}}, {}, true},
        {"exists y in E. y = y", {}, {{"E", {}}}, false},
        {"forall y in E. ~(y = y)", {}, {{"E", {}}}, true},
        {phi_source, {{"x", 3}, {"p", 1}, {"q", 5}}, w05, true},
        {phi_source, {{"x", 5}, {"p", 1}, {"q", 5}}, w05, false},
    };
}

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    TermPtr term(int depth) {
        const int pick = uniform(0, depth <= 0 ? 2 : 6);
        switch (pick) {
            case 0: return Term::var(vars_[uniform(0, static_cast<int>(vars_.size()) - 1)]);
            case 1: return Term::literal(static_cast<unsigned long>(uniform(0, 3)));
            case 2: return Term::var(vars_[uniform(0, static_cast<int>(vars_.size()) - 1)]);
            case 3: return Term::binary(Term::Kind::add, term(depth - 1), term(depth - 1));
            case 4: return Term::binary(Term::Kind::sub, term(depth - 1), term(depth - 1));
            case 5: return Term::binary(Term::Kind::mul, term(depth - 1), term(depth - 1));
            default: return Term::negate(term(depth - 1));
        }
    }

    /// Any shape, both quantifiers over any of the given domains.
    FormulaPtr formula(int depth, const std::vector<std::string>& domains) {
        const int pick = uniform(0, depth <= 0 ? 0 : 6);
        switch (pick) {
            case 0: return Formula::equal(term(2), term(2));
            case 1: return Formula::negate(formula(depth - 1, domains));
            case 2: return Formula::binary(Formula::Kind::and_, formula(depth - 1, domains), formula(depth - 1, domains));
            case 3: return Formula::binary(Formula::Kind::or_, formula(depth - 1, domains), formula(depth - 1, domains));
            case 4:
                return Formula::binary(Formula::Kind::implies, formula(depth - 1, domains), formula(depth - 1, domains));
            default: {
                const auto kind = pick == 5 ? Formula::Kind::exists : Formula::Kind::forall;
                const auto& v = vars_[uniform(0, static_cast<int>(vars_.size()) - 1)];
                const auto& d = domains[uniform(0, static_cast<int>(domains.size()) - 1)];
                return Formula::quantifier(kind, v, d, formula(depth - 1, domains));
            }
        }
    }

    /// Negation normal form with existentials over E and universals over A.
    FormulaPtr positive(int depth) {
        const int pick = uniform(0, depth <= 0 ? 1 : 5);
        const auto& v = vars_[uniform(0, static_cast<int>(vars_.size()) - 1)];
        switch (pick) {
            case 0: return Formula::equal(term(1), term(1));
            case 1: return Formula::negate(Formula::equal(term(1), term(1)));
            case 2: return Formula::binary(Formula::Kind::and_, positive(depth - 1), positive(depth - 1));
            case 3: return Formula::binary(Formula::Kind::or_, positive(depth - 1), positive(depth - 1));
            case 4: return Formula::quantifier(Formula::Kind::exists, v, "E", positive(depth - 1));
            default: return Formula::quantifier(Formula::Kind::forall, v, "A", positive(depth - 1));
        }
    }

    Env environment(long lo, long hi) {
        Env env;
        for (const auto& v : vars_) env[v] = uniform(static_cast<int>(lo), static_cast<int>(hi));
        return env;
    }

    std::vector<Rational> subset(long lo, long hi) {
        std::vector<Rational> out;
        for (long v = lo; v <= hi; ++v)
            if (uniform(0, 1)) out.emplace_back(v);
        return out;
    }

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
    std::mt19937_64 rng_;
    std::vector<std::string> vars_{"x", "y", "z"};
};

/// Superset of `small` adding some values from [lo, hi].
inline std::vector<Rational> enlarge(const std::vector<Rational>& small, long lo, long hi, Generator& g) {
    std::vector<Rational> out = small;
    for (long v = lo; v <= hi; ++v)
        if (std::find(out.begin(), out.end(), Rational(v)) == out.end() && g.uniform(0, 1)) out.emplace_back(v);
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> corpus_files() {
    return {"phi.txt",  "phi_ascii.txt", "idempotent.txt", "square.txt", "sum_of_two_squares.txt",
            "between.txt", "unit.txt",   "nested.txt"};
}

}  // namespace oracle
