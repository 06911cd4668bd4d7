// mqw: command-line front end. Exit status 0 = pass, 1 = fail, 2 = usage error.
#include "mqw/audit.hpp"
#include "mqw/definable.hpp"
#include "mqw/enumerator.hpp"
#include "mqw/formula.hpp"
#include "mqw/serialize.hpp"
#include "mqw/units.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace mqw;
using nlohmann::json;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

void write_json(const std::string& path, const json& j) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Operands: element JSON, or a term over integers with the names i and sqrtN.
Element parse_operand(const std::string& text) {
    if (!text.empty() && text.front() == '{') return element_from_json(json::parse(text));
    const TermPtr t = parse_term(text);
    Assignment names;
    for (const auto& v : free_variables(*t)) {
        if (v == "i") {
            names.emplace(v, Element::imaginary_unit(FieldSpec::make({}, true)));
        } else if (v.rfind("sqrt", 0) == 0 && v.size() > 4 &&
                   v.find_first_not_of("0123456789", 4) == std::string::npos) {
            const Integer n(v.substr(4));
            names.emplace(v, sqrt_nat(n, field_for_radicand(n)));
        } else {
            throw UsageError("unknown name '" + v + "' (use i or sqrtN)");
        }
    }
    return evaluate(*t, names);
}

Element parse_value(const std::string& text) {
    try {
        return Element::rational(parse_rational(text));
    } catch (const std::exception&) {
        throw UsageError("expected a decimal number, got '" + text + "'");
    }
}

std::vector<Element> parse_values(const std::string& text, const std::string& what) {
    if (text.find("..") != std::string::npos) {
        std::vector<Element> out;
        for (long v : parse_int_list(text, what)) out.push_back(Element::integer(v));
        return out;
    }
    std::vector<Element> out;
    for (const auto& item : split(text, ',')) out.push_back(parse_value(item));
    return out;
}

// "4*x^2 + 2" or low-to-high coefficients "2,0,4".
IntPolynomial parse_poly(const std::string& text) {
    if (text.find_first_of("x^*+-") == std::string::npos || text.find(',') != std::string::npos) {
        std::vector<Integer> cs;
        for (const auto& c : split(text, ',')) {
            try {
                cs.emplace_back(c);
            } catch (const std::exception&) {
                throw UsageError("bad coefficient '" + c + "'");
            }
        }
        return IntPolynomial(std::move(cs));
    }
    const TermPtr t = parse_term(text);
    std::function<IntPolynomial(const Term&)> go = [&](const Term& u) -> IntPolynomial {
        switch (u.kind) {
            case Term::Kind::zero: return IntPolynomial();
            case Term::Kind::one: return IntPolynomial::constant(1);
            case Term::Kind::var:
                if (u.name != "x") throw UsageError("polynomials use the variable x, got '" + u.name + "'");
                return IntPolynomial::x();
            case Term::Kind::add: return go(*u.lhs) + go(*u.rhs);
            case Term::Kind::sub: return go(*u.lhs) - go(*u.rhs);
            case Term::Kind::mul: return go(*u.lhs) * go(*u.rhs);
            case Term::Kind::neg: return IntPolynomial() - go(*u.lhs);
        }
        return {};
    };
    return go(*t);
}

json coefficients_json(const IntPolynomial& p) {
    json out = json::array();
    for (const auto& c : p.coefficients()) out.push_back(c.get_str());
    return out;
}

std::string squares_text(const Integer& n, const std::array<Integer, 4>& s) {
    return n.get_str() + " = " + s[0].get_str() + "^2 + " + s[1].get_str() + "^2 + " + s[2].get_str() + "^2 + " +
           s[3].get_str() + "^2";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic in multiquadratic fields and audits of the W construction"};
    app.require_subcommand(1);
    std::string json_path;
    int status = kPass;

    // ------------------------------------------------------------ audit
    auto* audit = app.add_subcommand("audit", "run a lemma audit and print a table");
    std::string lemma;
    AuditParams given;
    bool timing = false;
    audit->add_option("lemma", lemma, "one of: jrnumber mu-finite unit-power hasse delta f-identity w-member family")
        ->required();
    const std::vector<std::pair<std::string, std::string>> audit_flags{
        {"--primes", "primes"}, {"--t", "t"},       {"--lower", "lower"},         {"--maximal", "maximal"},
        {"--bound", "bound"},   {"--count", "count"}, {"--radicands", "radicands"}, {"--N", "N"},
        {"--k", "k"},           {"--N-max", "N_max"}, {"--n-max", "n_max"},         {"--C", "C"},
        {"--constant", "constant"}, {"--max-x", "max_x"}, {"--p", "p"},           {"--q", "q"},
        {"--pool", "pool"},     {"--witness-domain", "witness_domain"}};
    std::map<std::string, std::string> audit_values;
    for (const auto& [flag, key] : audit_flags)
        audit->add_option(flag, audit_values[key], "audit parameter " + key);
    audit->add_option("--json", json_path, "write the JSON report here");
    audit->add_flag("--timing", timing, "include runtime_ms in the JSON report");
    audit->callback([&] {
        for (const auto& [flag, key] : audit_flags)
            if (audit->count(flag)) given[key] = audit_values[key];
        const auto r = run_audit(lemma, given);
        std::cout << report_table(r);
        write_json(json_path, report_to_json(r, timing));
        status = r.all_passed() ? kPass : kFail;
    });

    // ------------------------------------------------------------ enumerate-box
    auto* box = app.add_subcommand("enumerate-box", "list {x in O : lower << x << t}");
    std::string primes = "2";
    long t = 4, lower = 0;
    bool maximal = false;
    box->add_option("--primes", primes, "comma-separated primes (none for Q)")->capture_default_str();
    box->add_option("--t", t, "upper bound")->capture_default_str();
    box->add_option("--lower", lower, "lower bound")->capture_default_str();
    box->add_flag("--maximal", maximal, "use {1, (1+sqrt p)/2} on Q(sqrt p), p = 1 mod 4");
    box->add_option("--json", json_path, "write the elements as JSON");
    box->callback([&] {
        std::vector<std::int64_t> ps;
        if (primes != "none")
            for (long p : parse_int_list(primes, "primes")) ps.push_back(p);
        const FieldSpec field = FieldSpec::make(ps, false);
        const BoxQuery q{default_order(field, maximal), lower, t};
        const auto xs = totally_bounded_box(q);
        std::cout << xs.size() << " elements of " << field.to_string() << " strictly between " << lower << " and " << t
                  << "\n";
        json j{{"field", field_to_json(field)}, {"lower", lower}, {"t", t}, {"elements", json::array()}};
        for (const auto& x : xs) {
            std::cout << "  " << x.to_string() << "\n";
            j["elements"].push_back(element_to_json(x));
        }
        write_json(json_path, j);
    });

    // ------------------------------------------------------------ family
    auto* family = app.add_subcommand("family", "members of the family phi(x; p, q) over a pool");
    long fp = 1, fq = 5, fN = 1;
    std::string pool_text, dom_text;
    family->add_option("--p", fp)->capture_default_str();
    family->add_option("--q", fq)->capture_default_str();
    family->add_option("--N", fN, "exponent parameter of W")->capture_default_str();
    family->add_option("--pool", pool_text, "candidate values, a..b or a,b,c (default 0..q)");
    family->add_option("--witness-domain", dom_text, "values for the square witnesses (default 0..q)");
    family->add_option("--json", json_path);
    family->callback([&] {
        if (fp < 1 || fq < 0 || fN < 1) throw UsageError("need p >= 1, q >= 0, N >= 1");
        const auto pool = parse_values(pool_text.empty() ? "0.." + std::to_string(fq) : pool_text, "pool");
        const auto dom = parse_values(dom_text.empty() ? "0.." + std::to_string(fq) : dom_text, "witness-domain");
        const auto members = family_set(fp, fq, static_cast<unsigned>(fN), pool, dom);
        std::cout << members.size() << " members\n";
        json j{{"p", fp}, {"q", fq}, {"N", fN}, {"members", json::array()}};
        for (const auto& m : members) {
            std::cout << "  x = " << m.x.to_string() << ": " << squares_text(m.px, m.px_squares) << ", "
                      << squares_text(fq - m.px, m.rest_squares) << "\n";
            j["members"].push_back({{"x", m.x.to_string()}, {"px", m.px.get_str()}});
        }
        write_json(json_path, j);
    });

    // ------------------------------------------------------------ poly-f
    auto* polyf = app.add_subcommand("poly-f", "print (x + sqrt(x^2+1))^(2N) + (x - sqrt(x^2+1))^(2N)");
    long pN = 1;
    polyf->add_option("--N", pN)->capture_default_str();
    polyf->add_option("--json", json_path);
    polyf->callback([&] {
        if (pN < 1) throw UsageError("N must be positive");
        const auto f = poly_f(static_cast<unsigned>(pN));
        std::cout << f.to_string() << "\n";
        write_json(json_path, {{"N", pN}, {"poly", f.to_string()}, {"coefficients", coefficients_json(f)}});
    });

    // ------------------------------------------------------------ delta
    auto* delta = app.add_subcommand("delta", "iterated forward difference f(x+k) - f(x)");
    long dk = 1, diters = 1;
    std::string poly_text = "4*x^2 + 2";
    delta->add_option("--k", dk)->capture_default_str();
    delta->add_option("--iters", diters)->capture_default_str();
    delta->add_option("--poly", poly_text, "expression in x, or coefficients low to high")->capture_default_str();
    delta->add_option("--json", json_path);
    delta->callback([&] {
        if (dk < 1 || diters < 0) throw UsageError("need k >= 1 and iters >= 0");
        const auto f = parse_poly(poly_text);
        const auto d = delta_iter(f, dk, static_cast<unsigned>(diters));
        std::cout << d.to_string() << "\n";
        write_json(json_path, {{"poly", f.to_string()}, {"k", dk}, {"iters", diters}, {"result", d.to_string()},
                               {"coefficients", coefficients_json(d)}});
    });

    // ------------------------------------------------------------ four-squares
    auto* four = app.add_subcommand("four-squares", "a^2 + b^2 + c^2 + d^2 = n");
    std::string n_text;
    four->add_option("n", n_text)->required();
    four->add_option("--json", json_path);
    four->callback([&] {
        const Integer n = parse_integer(n_text);
        if (n < 0) throw UsageError("n must be nonnegative");
        const auto s = four_squares(n);
        std::cout << squares_text(n, s) << "\n";
        write_json(json_path, {{"n", n.get_str()},
                               {"squares", {s[0].get_str(), s[1].get_str(), s[2].get_str(), s[3].get_str()}}});
    });

    // ------------------------------------------------------------ w-member
    auto* wm = app.add_subcommand("w-member", "certificate that n lies in W");
    std::string wn_text, wC_text;
    long wN = 1;
    bool stated = false;
    wm->add_option("n", wn_text)->required();
    wm->add_option("--N", wN)->capture_default_str();
    wm->add_option("--C", wC_text, "override the constant (default (2N)! 2^(2N))");
    wm->add_flag("--stated-constant", stated, "use 2 (2N)! instead");
    wm->add_option("--json", json_path, "write the nested derivation");
    wm->callback([&] {
        if (wN < 1 || wN > 3) throw UsageError("N must be 1, 2 or 3");
        const Integer n = parse_integer(wn_text);
        if (n < 0) throw UsageError("n must be nonnegative");
        const auto N = static_cast<unsigned>(wN);
        Integer C = stated ? stated_constant(N) : leading_constant(N);
        if (!wC_text.empty()) C = parse_integer(wC_text);
        if (C < 1) throw UsageError("C must be positive");
        const auto chain = w_member(n, N, C);
        if (!chain) {
            std::cout << "no certificate for " << n.get_str() << " with C = " << C.get_str() << "\n";
            status = kFail;
            return;
        }
        const bool ok = verify_chain(**chain, N);
        const auto& w = std::get<WSum>((*chain)->node);
        std::cout << n.get_str() << " =";
        for (const auto& term : w.terms) std::cout << " " << term->target.to_string() << " +";
        std::cout << " " << w.remainder.get_str() << "   (C = " << C.get_str() << ", " << w.terms.size()
                  << " terms)\nverified: " << (ok ? "yes" : "no") << "\n";
        write_json(json_path, chain_to_json(**chain));
        status = ok ? kPass : kFail;
    });

    // ------------------------------------------------------------ units
    auto* units = app.add_subcommand("units", "unit computations");
    units->require_subcommand(1);
    auto* pell = units->add_subcommand("pell", "fundamental solution of x^2 - d y^2 = +-1");
    long pd = 2;
    pell->add_option("--d", pd)->required();
    pell->add_option("--json", json_path);
    pell->callback([&] {
        if (pd < 2 || is_perfect_square(pd)) throw UsageError("d must be a non-square >= 2");
        const auto s = pell_fundamental(pd);
        const auto u = pell_unit(s);
        std::cout << "x = " << s.x.get_str() << ", y = " << s.y.get_str() << ", norm " << s.norm_sign << "\n"
                  << "unit " << u.to_string() << " in " << u.field().to_string() << "\n";
        write_json(json_path, {{"d", pd}, {"x", s.x.get_str()}, {"y", s.y.get_str()}, {"norm", s.norm_sign},
                               {"unit", element_to_json(u)}});
    });

    // ------------------------------------------------------------ roots-of-unity
    auto* rou = app.add_subcommand("roots-of-unity", "the roots of unity of the field generated by all sqrt's");
    long bound = 200;
    rou->add_option("--bound", bound, "scan orders m <= bound")->capture_default_str();
    rou->add_option("--json", json_path);
    rou->callback([&] {
        if (bound < 24) throw UsageError("bound must be at least 24");
        const auto r = roots_of_unity(static_cast<unsigned>(bound));
        std::cout << "N = " << r.order_N << " over " << r.host_field.to_string() << "\n";
        json roots = json::array();
        for (std::size_t k = 0; k < r.roots.size(); ++k) {
            std::cout << "  zeta^" << k << " (order " << r.orders[k] << ") = " << r.roots[k].to_string() << "\n";
            roots.push_back({{"k", k}, {"order", r.orders[k]}, {"value", element_to_json(r.roots[k])}});
        }
        write_json(json_path, {{"N", r.order_N}, {"admissible_orders", r.admissible_orders}, {"roots", roots}});
    });

    // ------------------------------------------------------------ eval
    auto* ev = app.add_subcommand("eval", "evaluate a formula file over finite domains");
    std::string formula_path, assign_text, define_var, eval_pool;
    std::vector<std::string> domain_texts;
    ev->add_option("--formula", formula_path, "UTF-8 file with one formula")->required();
    ev->add_option("--assign", assign_text, "name=value,...");
    ev->add_option("--domain", domain_texts, "NAME=a..b or NAME=v1,v2 (repeatable)");
    ev->add_option("--define", define_var, "list the pool values of this variable that satisfy the formula");
    ev->add_option("--pool", eval_pool, "pool for --define");
    ev->add_option("--json", json_path);
    ev->callback([&] {
        const auto f = parse_formula(read_text(formula_path));
        Assignment a;
        for (const auto& item : split(assign_text, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw UsageError("--assign expects name=value, got '" + item + "'");
            a.insert_or_assign(item.substr(0, eq), parse_value(item.substr(eq + 1)));
        }
        Domains doms;
        for (const auto& d : domain_texts) {
            const auto eq = d.find('=');
            if (eq == std::string::npos) throw UsageError("--domain expects NAME=values, got '" + d + "'");
            doms[d.substr(0, eq)] = parse_values(d.substr(eq + 1), "domain " + d.substr(0, eq));
        }
        json j{{"formula", to_string(*f)}};
        if (!define_var.empty()) {
            if (eval_pool.empty()) throw UsageError("--define needs --pool");
            const auto set = define_set(f, define_var, a, parse_values(eval_pool, "pool"), doms);
            std::cout << "{";
            for (std::size_t k = 0; k < set.size(); ++k) std::cout << (k ? ", " : "") << set[k].to_string();
            std::cout << "}\n";
            j["set"] = json::array();
            for (const auto& x : set) j["set"].push_back(x.to_string());
        } else {
            const bool v = evaluate_scoped(f, a, doms);
            std::cout << (v ? "true" : "false") << "\n";
            j["value"] = v;
        }
        write_json(json_path, j);
    });

    // ------------------------------------------------------------ element
    auto* el = app.add_subcommand("element", "field arithmetic on elements");
    std::string op, a_text, b_text;
    long bits = 64;
    el->add_option("op", op, "add sub mul div inverse norm trace charpoly embed conjugates integral unit")
        ->required()
        ->check(CLI::IsMember({"add", "sub", "mul", "div", "inverse", "norm", "trace", "charpoly", "embed",
                               "conjugates", "integral", "unit"}));
    el->add_option("--a", a_text, "operand: term in i and sqrtN, or element JSON")->required();
    el->add_option("--b", b_text, "second operand for add/sub/mul/div");
    el->add_option("--bits", bits, "precision of embeddings")->capture_default_str();
    el->add_option("--json", json_path);
    el->callback([&] {
        const Element a = parse_operand(a_text);
        json j{{"op", op}, {"a", element_to_json(a)}};
        auto emit = [&](const std::string& text, const json& value) {
            std::cout << text << "\n";
            j["result"] = value;
        };
        if (op == "add" || op == "sub" || op == "mul" || op == "div") {
            if (b_text.empty()) throw UsageError(op + " needs --b");
            const Element b = parse_operand(b_text);
            const FieldSpec f = compositum(a.field(), b.field());
            const ArithOp k = op == "add" ? ArithOp::add : op == "sub" ? ArithOp::sub : op == "mul" ? ArithOp::mul : ArithOp::div;
            const Element r = arith(k, a.lift(f), b.lift(f));
            emit(r.to_string(), element_to_json(r));
        } else if (op == "inverse") {
            const Element r = a.inverse();
            emit(r.to_string(), element_to_json(r));
        } else if (op == "norm") {
            emit(to_display_string(a.norm()), to_fraction_string(a.norm()));
        } else if (op == "trace") {
            emit(to_display_string(a.trace()), to_fraction_string(a.trace()));
        } else if (op == "charpoly") {
            emit(a.char_poly().to_string(), a.char_poly().to_string());
        } else if (op == "integral") {
            emit(a.is_integral() ? "integral" : "not integral", a.is_integral());
            status = a.is_integral() ? kPass : kFail;
        } else if (op == "unit") {
            const auto w = is_unit(a);
            emit(w ? "unit, inverse " + w->inverse.to_string() : "not a unit",
                 w ? element_to_json(w->inverse) : json());
            status = w ? kPass : kFail;
        } else {
            json list = json::array();
            std::string text;
            for (const auto& s : SignVector::all(a.field())) {
                if (op == "conjugates") {
                    const Element c = a.conjugate(s);
                    text += c.to_string() + "\n";
                    list.push_back(c.to_string());
                } else {
                    const auto z = a.embed(s, static_cast<unsigned>(std::max(16L, bits)));
                    const std::string line = z.re.to_string() + " + i*" + z.im.to_string();
                    text += line + "\n";
                    list.push_back(line);
                }
            }
            if (!text.empty()) text.pop_back();
            emit(text, list);
        }
        write_json(json_path, j);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "formula: " << e.what() << "\n";
        return kUsage;
    } catch (const EvalError& e) {
        std::cerr << "evaluation: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return status;
}
