// First-order formulas over the ring language {0, 1; +, *} with bounded
// quantifiers, evaluated exactly on Elements.
//
// Concrete syntax, ASCII or Unicode, tightest binding first:
//   negation      ~  !  not  ¬
//   conjunction   &  /\  and  ∧
//   disjunction   |  \/  or  ∨
//   implication   ->  →            (right-associative)
//   quantifiers   exists x, y in D. body    forall x in D. body    (∃ ∀ ∈)
//   atoms         s = t    s != t (≠)
//   terms         0, 1, decimal literals (sums of 1), variables, + - * (· −), unary -, t^n, t²
// A quantifier body extends as far to the right as possible; # starts a comment.
#pragma once

#include "mqw/element.hpp"

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mqw {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    enum class Kind { zero, one, var, add, sub, mul, neg };
    Kind kind;
    std::string name;  // var
    TermPtr lhs, rhs;  // rhs unused by neg

    static TermPtr zero();
    static TermPtr one();
    static TermPtr var(std::string name);
    static TermPtr binary(Kind k, TermPtr a, TermPtr b);
    static TermPtr negate(TermPtr a);
    /// 0 for n = 0, otherwise 1 + 1 + ... + 1 grouped to the left.
    static TermPtr literal(unsigned long n);
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { eq, not_, and_, or_, implies, exists, forall };
    Kind kind;
    TermPtr lt, rt;           // eq
    FormulaPtr lhs, rhs;      // connectives; not_ and quantifiers use lhs
    std::string var, domain;  // quantifiers

    static FormulaPtr equal(TermPtr a, TermPtr b);
    static FormulaPtr negate(FormulaPtr a);
    static FormulaPtr binary(Kind k, FormulaPtr a, FormulaPtr b);
    static FormulaPtr quantifier(Kind k, std::string var, std::string domain, FormulaPtr body);
};

bool operator==(const Term& a, const Term& b);
bool operator==(const Formula& a, const Formula& b);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FormulaPtr parse_formula(const std::string& src);
TermPtr parse_term(const std::string& src);

/// ASCII rendering with the fewest parentheses that parse back to the same tree.
std::string to_string(const Formula& f);
std::string to_string(const Term& t);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> free_variables(const Term& t);
/// Domain names referenced by quantifiers.
std::set<std::string> domain_names(const Formula& f);

using Assignment = std::map<std::string, Element>;
using Domains = std::map<std::string, std::vector<Element>>;

/// Pushes quantifiers inward: an existential past conjuncts (and a universal
/// past disjuncts) that do not mention its variable, and across the
/// connective it distributes over. Equivalent under any domains.
FormulaPtr miniscope(const FormulaPtr& f);

/// Exact evaluation of a term; operands in different fields meet in their compositum.
Element evaluate(const Term& t, const Assignment& a);

/// Bounded Tarskian semantics. Throws EvalError for an unbound variable or domain.
bool evaluate(const Formula& f, const Assignment& a, const Domains& domains);

/// Miniscopes once, then evaluates.
bool evaluate_scoped(const FormulaPtr& f, const Assignment& a, const Domains& domains);

/// {v in pool : f holds with var -> v}. The other free variables must be in `a`.
std::vector<Element> define_set(const FormulaPtr& f, const std::string& var, const Assignment& a,
                                const std::vector<Element>& pool, const Domains& domains);
std::vector<Element> define_set_serial(const FormulaPtr& f, const std::string& var, const Assignment& a,
                                       const std::vector<Element>& pool, const Domains& domains);

/// The family formula phi(x; p, q) with its witnesses ranging over `domain`.
std::string family_formula_source(const std::string& domain = "W");

}  // namespace mqw
