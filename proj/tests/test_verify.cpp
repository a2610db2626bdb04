/*
Copyright 2026 the flowtwist authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <nlohmann/json.hpp>

#include "flowtwist/verify.hpp"

using namespace flowtwist;

namespace {

FlowedWord circ(const std::string& text) {
    return identity_flow(Word::parse(text, Boundary::Circular));
}

Piece pc(int s, Rat a, Rat b, Rat c, Rat d) {
    return {Symbol(s), std::move(a), std::move(b), std::move(c), std::move(d)};
}

}  // namespace

TEST_CASE("the default relation list") {
    auto rels = default_relations();
    REQUIRE(rels.size() == 9);
    CHECK(rels[2].word == "cc");
    size_t longest = 0;
    for (const Relation& r : rels) longest = std::max(longest, r.word.size());
    CHECK(longest == 45);
    for (const Relation& r : rels)
        CHECK(r.word.find_first_not_of("abc") == std::string::npos);
}

TEST_CASE("test word enumeration") {
    auto suite = enumerate_test_words(WordScheme::BowtieSuite, 2);
    std::vector<std::string> names;
    for (const Word& w : suite)
        names.push_back(w.str() + (w.boundary == Boundary::Bowtie ? "~" : ""));
    CHECK(names == std::vector<std::string>{"2", "21", "201", "211", "200~", "201~", "210~",
                                            "211~"});

    auto circ1 = enumerate_test_words(WordScheme::Circular, 1);
    names.clear();
    for (const Word& w : circ1) names.push_back(w.str());
    CHECK(names == std::vector<std::string>{"2", "20", "21"});
    for (int n = 0; n <= 5; ++n)
        CHECK(enumerate_test_words(WordScheme::Circular, n).size() == (2u << n) - 1);
}

TEST_CASE("relation application composes leftmost-first") {
    GeneratorSet gens = GeneratorSet::standard();
    RelationTrace trace;
    FlowedWord r = apply_relation("cbcabb", circ("2001"), EngineKind::RuleTable, gens, &trace);
    CHECK(r.word.str() == "2");
    CHECK(r.span() == 4);
    CHECK(trace.steps.size() == 6);
    CHECK(trace.steps[0].generator == 'c');
    CHECK(trace.steps[0].flow.word.str() == "211");

    // the net factor is four; the interior break at 3 carries slopes 9/2 and 3
    CHECK(r.pieces == std::vector<Piece>{pc(2, 0, Rat(2, 3), 0, 3), pc(2, Rat(2, 3), 1, 3, 4)});

    r = apply_relation("cbcabb", circ("2"), EngineKind::RuleTable, gens);
    CHECK(r.word.str() == "2111");
    CHECK(r.pieces == std::vector<Piece>{pc(2, 0, 1, 0, Rat(2, 9)), pc(1, 0, 1, Rat(2, 9), Rat(4, 9)),
                                         pc(1, 0, 1, Rat(4, 9), Rat(2, 3)), pc(1, 0, 1, Rat(2, 3), 1)});

    // cbba fixes the one-anchor circle pointwise, and the zero tail dilates
    CHECK(is_identity(apply_relation("cbba", circ("2"), EngineKind::RuleTable, gens),
                      Word::parse("2")));
    FlowedWord sea = apply_relation("cbba", identity_flow(Word::parse("2000~")),
                                    EngineKind::RuleTable, gens);
    CHECK(sea.word.str() == "200");
    CHECK(sea.pieces == std::vector<Piece>{pc(2, 0, 1, 0, Rat(3, 2)), pc(0, 0, 1, Rat(3, 2), 3),
                                           pc(0, 0, 1, 3, 4)});

    CHECK(is_identity(apply_relation("aa", circ("2"), EngineKind::RuleTable, gens),
                      Word::parse("2")));
}

TEST_CASE("short relations pass on both engines with the measured depths") {
    GeneratorSet gens = GeneratorSet::standard();
    for (EngineKind e : {EngineKind::RuleTable, EngineKind::Bijection}) {
        RelationReport r = check_relation({"aa", "aa"}, 6, e, gens);
        CHECK(r.pass);
        CHECK(r.read_depth == 3);
        CHECK(r.stabilization_length == 3);
        CHECK(r.witnesses.empty());

        // the rule table reads one symbol deeper here: its pattern for blocks
        // starting 2 1 spans three cells, so the frontier scan trips over the
        // bowtie one length earlier than the word-level engine needs to
        r = check_relation({"cacaca", "cacaca"}, 6, e, gens);
        CHECK(r.pass);
        CHECK(r.read_depth == (e == EngineKind::RuleTable ? 4 : 3));
        CHECK(r.stabilization_length == 3);
    }
}

TEST_CASE("the broken c distorts (211)^Z while fixing the word") {
    GeneratorSet broken = GeneratorSet::with_broken_c();
    for (EngineKind e : {EngineKind::RuleTable, EngineKind::Bijection}) {
        RelationReport r = check_relation({"cc", "cc"}, 6, e, broken);
        CHECK_FALSE(r.pass);
        REQUIRE_FALSE(r.witnesses.empty());
        const Witness& w = r.witnesses.front();
        CHECK(w.word == "211");
        REQUIRE(w.flow.has_value());
        CHECK(w.flow->word.str() == "211");  // the word returns, the flow does not
        CHECK(w.flow->pieces ==
              std::vector<Piece>{pc(2, 0, 1, 0, Rat(8, 9)), pc(1, 0, 1, Rat(8, 9), Rat(16, 9)),
                                 pc(1, 0, Rat(1, 4), Rat(16, 9), 2), pc(1, Rat(1, 4), 1, 2, 3)});
    }
}

TEST_CASE("a sanity non-relation fails early with a witness") {
    GeneratorSet gens = GeneratorSet::standard();
    RelationReport r = check_relation({"ab", "ab"}, 4, EngineKind::RuleTable, gens);
    CHECK_FALSE(r.pass);
    REQUIRE_FALSE(r.witnesses.empty());
    CHECK(r.witnesses.front().word.size() <= 4);  // found at |w| <= 3 bits
}

TEST_CASE("stabilization is monotone past the reported length") {
    GeneratorSet gens = GeneratorSet::standard();
    RelationReport r = check_relation({"bbb", "bbb"}, 6, EngineKind::RuleTable, gens);
    REQUIRE(r.stabilization_length);
    for (int extra = 1; extra <= 2; ++extra) {
        int len = *r.stabilization_length + extra;
        for (unsigned long mask = 0; mask < (1ul << len); ++mask) {
            Word w;
            w.boundary = Boundary::Bowtie;
            w.letters.push_back(Symbol::S2);
            for (int k = len - 1; k >= 0; --k) w.letters.push_back(bit((mask >> k) & 1ul));
            RelationTrace trace;
            apply_relation("bbb", identity_flow(w), EngineKind::RuleTable, gens, &trace);
            for (const StepRecord& s : trace.steps) CHECK_FALSE(s.touched_last);
        }
    }
}

TEST_CASE("the two engines agree on verdicts and stabilization") {
    GeneratorSet gens = GeneratorSet::standard();
    for (const Relation& rel : default_relations()) {
        if (rel.word.size() > 10) continue;  // long ones are covered at full length elsewhere
        RelationReport x = check_relation(rel, 5, EngineKind::RuleTable, gens);
        RelationReport y = check_relation(rel, 5, EngineKind::Bijection, gens);
        CHECK(x.pass == y.pass);
        CHECK(x.stabilization_length == y.stabilization_length);
    }
}

TEST_CASE("summary and report serialization") {
    GeneratorSet gens = GeneratorSet::standard();
    VerifySummary s = verify_embedding({{"aa", "aa"}, {"cc", "cc"}}, 5, EngineKind::RuleTable,
                                       gens, 2);
    CHECK(s.pass);
    nlohmann::json j = summary_to_json(s);
    CHECK(j["overall"] == "PASS");
    CHECK(j["engine"] == "rule-table");
    CHECK(j["relations"].size() == 2);
    CHECK(j["relations"][0]["relation"] == "aa");
    CHECK(j["relations"][0]["verdict"] == "PASS");
    CHECK(j["relations"][0]["stabilization_length"] == 3);

    VerifySummary broken = verify_embedding(default_relations(), 5, EngineKind::Bijection,
                                            GeneratorSet::with_broken_c(), 0);
    CHECK_FALSE(broken.pass);
    nlohmann::json jb = summary_to_json(broken);
    CHECK(jb["overall"] == "FAIL");
    bool found = false;
    for (const auto& rel : jb["relations"]) {
        if (rel["relation"] != "cc") continue;
        for (const auto& w : rel["witnesses"])
            if (w["word"] == "211" && !w["pieces"].empty() && w["pieces"][0][4] == "8/9")
                found = true;  // exact rationals in num/den form
    }
    CHECK(found);

    // deterministic output
    CHECK(summary_to_json(s).dump(2) ==
          summary_to_json(verify_embedding({{"aa", "aa"}, {"cc", "cc"}}, 5,
                                           EngineKind::RuleTable, gens, 1))
              .dump(2));

    CHECK(flow_to_json(circ("21"))["pieces"][0][1] == "0/1");
}
