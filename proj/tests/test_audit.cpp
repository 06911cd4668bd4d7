#include "mqw/audit.hpp"

#include <doctest.h>

using namespace mqw;

TEST_CASE("every lemma audit passes with defaults and is deterministic") {
    for (const auto& id : audit_lemmas()) {
        auto r1 = run_audit(id);
        CHECK_MESSAGE(r1.all_passed(), id);
        CHECK(r1.passed + r1.failed == r1.outcomes.size());
        CHECK(r1.passed > 0);
        auto r2 = run_audit(id);
        CHECK_MESSAGE(report_to_json(r1).dump(2) == report_to_json(r2).dump(2), id);
        CHECK_FALSE(report_to_json(r1).contains("runtime_ms"));
        CHECK(report_to_json(r1, true).contains("runtime_ms"));
        CHECK(report_table(r1).find("summary: ") != std::string::npos);
    }
    CHECK(audit_lemmas().size() == 8);
}

TEST_CASE("audit examples") {
    auto mu = run_audit("mu-finite");
    CHECK(mu.results["N"] == 24);
    CHECK(mu.results["roots"].size() == 24);
    CHECK(mu.status() == "pass");

    auto jr = run_audit("jrnumber", {{"primes", "2"}, {"t", "4"}});
    CHECK(jr.results["count"] == 5);
    CHECK(jr.all_passed());

    auto jr23 = run_audit("jrnumber", {{"primes", "2,3"}, {"t", "5"}});
    CHECK(jr23.all_passed());
    CHECK(run_audit("jrnumber", {{"primes", "5"}, {"maximal", "true"}}).all_passed());

    auto delta = run_audit("delta", {{"N", "1"}, {"k", "2"}});
    CHECK(delta.results["constant"] == "32");
    CHECK(delta.results["stated_value"] == "16");
    CHECK(delta.all_passed());
    CHECK(delta.status() == "pass-with-note");
    REQUIRE(delta.notes.size() == 1);
    CHECK(delta.notes[0].find("16") != std::string::npos);
    CHECK(delta.notes[0].find("32") != std::string::npos);

    auto fam = run_audit("family", {{"q", "5"}});
    CHECK(fam.results["cardinality"] == 4);
    CHECK(fam.all_passed());
    CHECK(run_audit("family", {{"p", "2"}, {"q", "6"}, {"witness_domain", "0..2"}}).results["cardinality"] == 2);

    auto w = run_audit("w-member", {{"max_x", "40"}});
    CHECK(w.all_passed());
    CHECK(w.outcomes[30].summary == "30 = 8 + 8 + 8 + 0 + 6");

    // the smaller constant cannot certify x >= C
    auto stated = run_audit("w-member", {{"constant", "stated"}, {"max_x", "10"}});
    CHECK_FALSE(stated.all_passed());
    CHECK(stated.status() == "fail");
    CHECK(stated.passed == 4);

    auto few = run_audit("unit-power", {{"count", "5"}, {"N", "1"}});
    CHECK_FALSE(few.all_passed());
    // zeta24^(2N a) is real for every a exactly when 6 divides N
    CHECK_FALSE(run_audit("unit-power", {{"count", "5"}, {"N", "2"}}).all_passed());
    CHECK(run_audit("unit-power", {{"count", "5"}, {"N", "6"}}).all_passed());
}

TEST_CASE("invalid parameters are usage errors") {
    CHECK_THROWS_AS(run_audit("nonsense"), UsageError);
    CHECK_THROWS_AS(run_audit("delta", {{"t", "4"}}), UsageError);
    CHECK_THROWS_AS(run_audit("delta", {{"k", "two"}}), UsageError);
    CHECK_THROWS_AS(run_audit("delta", {{"k", "0"}}), UsageError);
    CHECK_THROWS_AS(run_audit("jrnumber", {{"primes", "4"}}), UsageError);
    CHECK_THROWS_AS(run_audit("jrnumber", {{"primes", "2,3"}, {"maximal", "true"}}), UsageError);
    CHECK_THROWS_AS(run_audit("jrnumber", {{"t", "0"}}), UsageError);
    CHECK_THROWS_AS(run_audit("mu-finite", {{"bound", "10"}}), UsageError);
    CHECK_THROWS_AS(run_audit("hasse", {{"radicands", "2,4"}}), UsageError);
    CHECK_THROWS_AS(run_audit("w-member", {{"constant", "other"}}), UsageError);
    CHECK_THROWS_AS(run_audit("family", {{"pool", "5..1"}}), UsageError);
    CHECK(parse_int_list("-2..1", "x") == std::vector<long>{-2, -1, 0, 1});
    CHECK(parse_int_list("3,1,2", "x") == std::vector<long>{3, 1, 2});
}
