#include "mqw/audit.hpp"

#include "mqw/definable.hpp"
#include "mqw/enumerator.hpp"
#include "mqw/formula.hpp"
#include "mqw/serialize.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace mqw {

std::string AuditReport::status() const {
    if (failed) return "fail";
    return notes.empty() ? "pass" : "pass-with-note";
}

namespace {

long parse_long(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw UsageError(what + ": expected a decimal integer, got '" + text + "'");
    return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw UsageError(what + ": expected true or false, got '" + text + "'");
}

class Audit {
public:
    Audit(std::string id, AuditParams params) {
        report_.lemma_id = std::move(id);
        report_.parameters = std::move(params);
    }

    const std::string& param(const std::string& k) const { return report_.parameters.at(k); }
    long number(const std::string& k) const { return parse_long(param(k), k); }
    long positive(const std::string& k) const {
        const long v = number(k);
        if (v < 1) throw UsageError(k + " must be positive");
        return v;
    }
    long natural(const std::string& k) const {
        const long v = number(k);
        if (v < 0) throw UsageError(k + " must be nonnegative");
        return v;
    }

    void check(std::string name, bool ok, std::string summary = {}, nlohmann::json detail = nlohmann::json::object()) {
        report_.outcomes.push_back({std::move(name), ok, std::move(summary), std::move(detail)});
        ++(ok ? report_.passed : report_.failed);
    }
    void note(std::string n) { report_.notes.push_back(std::move(n)); }
    nlohmann::json& results() { return report_.results; }
    AuditReport take() { return std::move(report_); }

private:
    AuditReport report_;
};

std::vector<std::string> strings(const std::vector<Element>& xs) {
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(x.to_string());
    return out;
}

std::vector<std::int64_t> prime_list(const std::string& text) {
    std::vector<std::int64_t> out;
    if (text.empty() || text == "none") return out;
    for (long p : parse_int_list(text, "primes")) out.push_back(p);
    return out;
}

// ---------------------------------------------------------------- lemmas

void audit_jrnumber(Audit& a) {
    FieldSpec field;
    try {
        field = FieldSpec::make(prime_list(a.param("primes")), false);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("primes: ") + e.what());
    }
    const bool maximal = parse_bool(a.param("maximal"), "maximal");
    const Rational lower = a.number("lower"), upper = a.number("t");
    if (!(lower < upper)) throw UsageError("t must exceed lower");
    OrderBasis order = [&] {
        try {
            return default_order(field, maximal);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    const BoxQuery q{order, lower, upper};
    const auto box = totally_bounded_box(q);
    const auto ref = totally_bounded_box_reference(q);
    a.results()["field"] = field.to_string();
    a.results()["order_basis"] = strings(order.basis());
    a.results()["count"] = box.size();
    a.results()["elements"] = strings(box);
    const auto bounds = coordinate_bounds(q);
    a.results()["scanned_volume"] = bounds.volume();

    a.check("box equals the serial coefficient scan", box == ref,
            std::to_string(box.size()) + " vs " + std::to_string(ref.size()) + " elements");
    a.check("set is Galois closed", is_galois_closed(box));
    bool inside = true;
    for (const auto& x : box) inside = inside && is_totally_between(x, lower, upper);
    a.check("every member is totally between the bounds", inside, std::to_string(box.size()) + " members");
}

void audit_mu_finite(Audit& a) {
    const long bound = a.positive("bound");
    if (bound < 24) throw UsageError("bound must be at least 24");
    const auto r = roots_of_unity(static_cast<unsigned>(bound));
    a.results()["N"] = r.order_N;
    a.results()["admissible_orders"] = r.admissible_orders;
    a.results()["host_field"] = r.host_field.to_string();
    a.results()["roots"] = strings(r.roots);

    // (Z/m)^x has exponent dividing 2 exactly for the admissible m
    std::vector<unsigned> scan;
    for (unsigned m = 1; m <= static_cast<unsigned>(bound); ++m) {
        bool ok = true;
        for (unsigned x = 1; x < m && ok; ++x)
            if (std::gcd(x, m) == 1 && (static_cast<unsigned long>(x) * x) % m != 1) ok = false;
        if (ok) scan.push_back(m);
    }
    unsigned lcm = 1;
    for (unsigned m : scan) lcm = std::lcm(lcm, m);
    a.check("exponent scan gives the admissible orders", scan == r.admissible_orders,
            std::to_string(scan.size()) + " orders, lcm " + std::to_string(lcm));
    a.check("N equals the lcm of the admissible orders", r.order_N == lcm, "N = " + std::to_string(r.order_N));
    a.check("exactly N distinct roots", r.roots.size() == r.order_N && [&] {
        for (std::size_t j = 0; j < r.roots.size(); ++j)
            for (std::size_t k = 0; k < j; ++k)
                if (r.roots[j] == r.roots[k]) return false;
        return true;
    }());
    const Element one = Element::rational(1, r.host_field);
    for (std::size_t k = 0; k < r.roots.size(); ++k) {
        const auto& w = r.roots[k];
        bool ok = w.field() == r.host_field && w.pow(r.order_N) == one && w.pow(r.orders[k]) == one;
        for (unsigned d = 1; d < r.orders[k] && ok; ++d) ok = !(w.pow(d) == one);
        a.check("zeta^" + std::to_string(k) + " has order " + std::to_string(r.orders[k]), ok, w.to_string());
    }
    bool closed = true;
    for (const auto& x : r.roots)
        for (const auto& y : r.roots) closed = closed && std::find(r.roots.begin(), r.roots.end(), x * y) != r.roots.end();
    a.check("group closed under multiplication", closed);

    std::size_t boundary = 0;
    bool all_closed = true;
    for (const auto& rec : rou_boundary_check(r)) {
        boundary += rec.strict ? 0 : 1;
        all_closed = all_closed && rec.real && rec.in_closed;
    }
    a.check("2 + w + 1/w lies in [0, 4] for every root", all_closed,
            std::to_string(boundary) + " roots on the boundary");
}

std::vector<UnitWitness> sample_from(const Audit& a) {
    const long count = a.positive("count");
    std::vector<long> ds = parse_int_list(a.param("radicands"), "radicands");
    if (ds.size() < 2) throw UsageError("radicands needs at least two entries");
    for (long d : ds)
        if (d < 2 || is_perfect_square(d)) throw UsageError("radicand " + std::to_string(d) + " is not a non-square >= 2");
    return unit_sample(static_cast<std::size_t>(count), ds);
}

void audit_unit_power(Audit& a) {
    const auto roots = roots_of_unity(200);
    const long N = a.param("N").empty() ? roots.order_N : a.positive("N");
    const auto sample = sample_from(a);
    a.results()["N"] = N;
    a.results()["field"] = sample.front().u.field().to_string();
    const auto recs = audit_unit_powers(sample, static_cast<unsigned>(N));
    for (std::size_t j = 0; j < recs.size(); ++j) {
        const auto& rec = recs[j];
        const Rational norm = rec.power.norm();
        const bool ok = rec.passed() && !rec.power.has_imaginary_part() && rec.power.is_integral() &&
                        (norm == 1 || norm == -1);
        a.check("unit " + std::to_string(j), ok, "norm " + to_fraction_string(norm),
                {{"unit", rec.unit.to_string()}, {"in_real_subfield", rec.in_real_subfield}, {"is_unit", rec.is_unit}});
    }
}

void audit_hasse(Audit& a) {
    const auto roots = roots_of_unity(200);
    const auto sample = sample_from(a);
    const auto fs = mqw::audit_hasse(sample, roots);
    for (std::size_t j = 0; j < fs.size(); ++j) {
        bool ok = fs[j].has_value();
        nlohmann::json detail{{"unit", sample[j].u.to_string()}};
        std::string summary = "no factorization";
        if (ok) {
            const auto& h = *fs[j];
            const Element u2 = sample[j].u * sample[j].u;
            const Element prod = h.zeta.lift(u2.field()) * h.w.lift(u2.field());
            ok = prod == u2 && !h.w.has_imaginary_part() && is_unit(h.w).has_value();
            summary = "zeta^" + std::to_string(h.zeta_exponent);
            detail["zeta"] = h.zeta.to_string();
            detail["w"] = h.w.to_string();
        }
        a.check("unit " + std::to_string(j), ok, summary, detail);
    }
}

std::string constant_note(unsigned N, const Integer& k) {
    const Integer derived = leading_constant(N) * power(k, 2 * N);
    const Integer stated = stated_constant(N) * power(k, 2 * N);
    return "stated constant 2(2N)! k^(2N) = " + stated.get_str() + " disagrees with the derived (2N)! 2^(2N) k^(2N) = " +
           derived.get_str() + " at N = " + std::to_string(N) + ", k = " + k.get_str();
}

void audit_delta(Audit& a) {
    const auto N = static_cast<unsigned>(a.positive("N"));
    const Integer k = a.positive("k");
    const auto f = poly_f(N);
    const auto d = delta_iter(f, k, 2 * N);
    const Integer value = d(Integer(0));
    const Integer identity = factorial(2 * N) * f.leading() * power(k, 2 * N);
    const Integer stated = stated_constant(N) * power(k, 2 * N);
    a.results()["poly_f"] = f.to_string();
    a.results()["leading_coefficient"] = f.leading().get_str();
    a.results()["constant"] = value.get_str();
    a.results()["derived_constant"] = leading_constant(N).get_str();
    a.results()["stated_value"] = stated.get_str();
    a.check("2N-th difference is constant", d.degree() <= 0, d.to_string());
    a.check("constant equals (2N)! a_2N k^(2N)", value == identity, value.get_str());
    a.check("leading coefficient is 2^(2N)", f.leading() == power(2, 2 * N), f.leading().get_str());
    a.check("next difference vanishes", delta_iter(f, k, 2 * N + 1).degree() == -1);
    if (N <= 3) {
        auto chain = difference_chain(N, k, 2 * N);
        a.check("difference chain certifies the constant", chain->target == Element::rational(value) && verify_chain(*chain, N),
                chain->target.to_string());
    }
    if (stated != value) a.note(constant_note(N, k));
}

void audit_f_identity(Audit& a) {
    const long n_max = a.natural("n_max"), N_max = a.positive("N_max");
    if (N_max > 6) throw UsageError("N_max above 6 is outside desk scale");
    for (unsigned N = 1; N <= static_cast<unsigned>(N_max); ++N) {
        const auto f = poly_f(N);
        for (long n = 0; n <= n_max; ++n) {
            const auto leaf = f_value_chain(N, n);
            const auto& p = std::get<UnitPair>(leaf->node);
            const Element direct = p.u1.pow(2L * N) + p.u2.pow(2L * N);
            a.check("f(" + std::to_string(n) + ") N=" + std::to_string(N), direct == Element::rational(f(Integer(n))),
                    f(Integer(n)).get_str());
        }
    }
    std::vector<unsigned> Ns;
    for (unsigned N = 1; N <= static_cast<unsigned>(N_max); ++N) Ns.push_back(N);
    Ns.push_back(24);
    for (unsigned N : Ns) {
        const auto f = poly_f(N);
        a.check("leading coefficient N=" + std::to_string(N), f.degree() == static_cast<int>(2 * N) &&
                                                                  f.leading() == power(2, 2 * N));
    }
    for (unsigned N = 1; N <= static_cast<unsigned>(N_max); ++N)
        for (long k = 1; k <= 5; ++k) {
            const auto d = delta_iter(poly_f(N), k, 2 * N);
            const Integer want = leading_constant(N) * power(k, 2 * N);
            a.check("delta N=" + std::to_string(N) + " k=" + std::to_string(k), d.degree() <= 0 && d(Integer(0)) == want,
                    want.get_str());
        }
    a.results()["leading_constant_N24"] = leading_constant(24).get_str();
    a.note(constant_note(1, 2));
}

std::string decomposition_text(const WitnessChain& c) {
    const auto& w = std::get<WSum>(c.node);
    std::string s = c.target.to_string() + " =";
    for (const auto& t : w.terms) s += " " + t->target.to_string() + " +";
    return s + " " + w.remainder.get_str();
}

void audit_w_member(Audit& a) {
    const auto N = static_cast<unsigned>(a.positive("N"));
    if (N > 3) throw UsageError("w-member runs at N <= 3");
    const std::string which = a.param("constant");
    if (which != "derived" && which != "stated") throw UsageError("constant must be derived or stated");
    Integer C = which == "derived" ? leading_constant(N) : stated_constant(N);
    if (!a.param("C").empty()) C = a.positive("C");
    const long max_x = a.natural("max_x");
    a.results()["C"] = C.get_str();
    a.results()["g"] = waring_g(2 * N).g_value.get_str();
    for (long x = 0; x <= max_x; ++x) {
        auto chain = w_member(x, N, C);
        const bool ok = chain && verify_chain(**chain, N) && (*chain)->target == Element::integer(x);
        a.check("x = " + std::to_string(x), ok, chain ? decomposition_text(**chain) : "no certificate");
    }
    if (C != leading_constant(N))
        a.note("C = " + C.get_str() + " differs from the derived constant " + leading_constant(N).get_str());
}

std::vector<Element> elements_of(const std::vector<long>& vs) {
    std::vector<Element> out;
    for (long v : vs) out.push_back(Element::integer(v));
    return out;
}

void audit_family(Audit& a) {
    const Integer p = a.positive("p");
    const long q = a.natural("q");
    const auto N = static_cast<unsigned>(a.positive("N"));
    const std::string pool_text = a.param("pool").empty() ? "0.." + std::to_string(q) : a.param("pool");
    const std::string dom_text = a.param("witness_domain").empty() ? "0.." + std::to_string(q) : a.param("witness_domain");
    const auto pool = elements_of(parse_int_list(pool_text, "pool"));
    const auto dom = elements_of(parse_int_list(dom_text, "witness_domain"));

    const auto phi = parse_formula(family_formula_source("W"));
    const Assignment params{{"p", Element::rational(p)}, {"q", Element::integer(q)}};
    const auto defined = define_set(phi, "x", params, pool, {{"W", dom}});
    const auto fam = family_set(p, q, N, pool, dom);
    std::vector<Element> fam_x;
    for (const auto& m : fam) fam_x.push_back(m.x);
    a.results()["formula"] = to_string(*phi);
    a.results()["members"] = strings(defined);
    a.results()["cardinality"] = defined.size();

    a.check("define_set equals family_set", defined == fam_x,
            std::to_string(defined.size()) + " vs " + std::to_string(fam_x.size()) + " members");
    if (p == 1 && a.param("pool").empty() && q >= 1)
        a.check("cardinality is q - 1", defined.size() == static_cast<std::size_t>(q - 1),
                std::to_string(defined.size()));
    for (const auto& m : fam) {
        const Element px = Element::rational(p) * m.x;
        a.check("0 << " + px.to_string() + " << " + std::to_string(q), is_totally_between(px, 0, q),
                "squares " + m.px_squares[0].get_str() + "," + m.px_squares[1].get_str() + "," +
                    m.px_squares[2].get_str() + "," + m.px_squares[3].get_str());
    }
}

struct LemmaEntry {
    AuditParams defaults;
    std::function<void(Audit&)> run;
};

const std::map<std::string, LemmaEntry>& registry() {
    static const std::map<std::string, LemmaEntry> r{
        {"jrnumber", {{{"primes", "2"}, {"t", "4"}, {"lower", "0"}, {"maximal", "false"}}, audit_jrnumber}},
        {"mu-finite", {{{"bound", "200"}}, audit_mu_finite}},
        {"unit-power", {{{"count", "50"}, {"radicands", "2,3,6"}, {"N", ""}}, audit_unit_power}},
        {"hasse", {{{"count", "50"}, {"radicands", "2,3,6"}}, audit_hasse}},
        {"delta", {{{"N", "1"}, {"k", "2"}}, audit_delta}},
        {"f-identity", {{{"N_max", "3"}, {"n_max", "20"}}, audit_f_identity}},
        {"w-member", {{{"N", "1"}, {"C", ""}, {"constant", "derived"}, {"max_x", "100"}}, audit_w_member}},
        {"family", {{{"p", "1"}, {"q", "5"}, {"N", "1"}, {"pool", ""}, {"witness_domain", ""}}, audit_family}},
    };
    return r;
}

}  // namespace

std::vector<long> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<long> out;
    if (auto dots = text.find(".."); dots != std::string::npos) {
        const long lo = parse_long(text.substr(0, dots), what), hi = parse_long(text.substr(dots + 2), what);
        if (hi < lo) throw UsageError(what + ": empty range " + text);
        if (hi - lo > 1'000'000) throw UsageError(what + ": range too large");
        for (long v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_long(item, what));
    if (out.empty()) throw UsageError(what + ": empty list");
    return out;
}

std::vector<std::string> audit_lemmas() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

AuditParams audit_defaults(const std::string& lemma_id) {
    auto it = registry().find(lemma_id);
    if (it == registry().end()) throw UsageError("unknown lemma '" + lemma_id + "'");
    return it->second.defaults;
}

AuditReport run_audit(const std::string& lemma_id, const AuditParams& params) {
    AuditParams merged = audit_defaults(lemma_id);
    for (const auto& [k, v] : params) {
        if (!merged.count(k)) throw UsageError("lemma '" + lemma_id + "' takes no parameter '" + k + "'");
        merged[k] = v;
    }
    const auto start = std::chrono::steady_clock::now();
    Audit a(lemma_id, merged);
    registry().at(lemma_id).run(a);
    AuditReport r = a.take();
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

nlohmann::json report_to_json(const AuditReport& r, bool include_runtime) {
    nlohmann::json j;
    j["lemma"] = r.lemma_id;
    j["parameters"] = r.parameters;
    auto& cases = j["cases"] = nlohmann::json::array();
    for (const auto& c : r.outcomes) {
        nlohmann::json cj{{"name", c.name}, {"passed", c.passed}};
        if (!c.summary.empty()) cj["summary"] = c.summary;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        cases.push_back(std::move(cj));
    }
    j["summary"] = {{"passed", r.passed}, {"failed", r.failed}, {"status", r.status()}};
    j["results"] = r.results.is_null() ? nlohmann::json::object() : r.results;
    j["notes"] = r.notes;
    if (include_runtime) j["runtime_ms"] = r.runtime_ms;
    return j;
}

std::string report_table(const AuditReport& r) {
    std::ostringstream out;
    out << "audit " << r.lemma_id;
    std::string sep = " (";
    for (const auto& [k, v] : r.parameters) {
        if (v.empty()) continue;
        out << sep << k << "=" << v;
        sep = ", ";
    }
    out << (sep == ", " ? ")" : "") << "\n";
    std::size_t width = 4;
    for (const auto& c : r.outcomes) width = std::max(width, c.name.size());
    out << "  " << std::left << std::setw(static_cast<int>(width)) << "case" << "  result  detail\n";
    for (const auto& c : r.outcomes)
        out << "  " << std::setw(static_cast<int>(width)) << c.name << "  " << (c.passed ? "PASS  " : "FAIL  ") << "  "
            << c.summary << "\n";
    for (const auto& n : r.notes) out << "note: " << n << "\n";
    out << "summary: " << r.passed << " passed, " << r.failed << " failed [" << r.status() << "]\n";
    out << "runtime: " << std::fixed << std::setprecision(1) << r.runtime_ms << " ms\n";
    return out.str();
}

}  // namespace mqw
