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

#include <functional>
#include <set>

#include "flowtwist/bijection.hpp"

using namespace flowtwist;

namespace {

FlowedWord circ(const std::string& text) {
    return identity_flow(Word::parse(text, Boundary::Circular));
}

Piece pc(int s, Rat a, Rat b, Rat c, Rat d) {
    return {Symbol(s), std::move(a), std::move(b), std::move(c), std::move(d)};
}

void anchored_words(int len, const std::function<void(const Word&)>& fn) {
    Word w;
    w.letters = {Symbol::S2};
    std::function<void()> rec = [&] {
        if (int(w.letters.size()) == len) {
            if (VertexShift::builtin().allows(w.letters.back(), Symbol::S2)) fn(w);
            return;
        }
        for (Symbol s : {Symbol::S0, Symbol::S1, Symbol::S2}) {
            if (!VertexShift::builtin().allows(w.letters.back(), s)) continue;
            w.letters.push_back(s);
            rec();
            w.letters.pop_back();
        }
    };
    rec();
}

std::vector<std::string> bit_strings(int len) {
    std::vector<std::string> out;
    for (unsigned long mask = 0; mask < (1ul << len); ++mask) {
        std::string s;
        for (int k = len - 1; k >= 0; --k) s += ((mask >> k) & 1ul) ? '1' : '0';
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("builtin bijections and validation") {
    PrefixBijection a = builtin_bijection("a");
    CHECK(a.pairs == decltype(a.pairs){{"00", "01"}, {"01", "00"}, {"1", "1"}});
    CHECK(validate_bijection(a).ok);
    CHECK(validate_bijection(builtin_bijection("b")).ok);
    CHECK(validate_bijection(builtin_bijection("c")).ok);
    CHECK(validate_bijection(builtin_bijection("c_broken")).ok);
    CHECK(builtin_bijection("c_broken").pairs ==
          decltype(a.pairs){{"000", "10"}, {"001", "11"}, {"1", "00"}, {"01", "01"}});
    CHECK_THROWS_AS(builtin_bijection("q"), std::invalid_argument);

    PrefixBijection bad{"bad", {{"00", "1"}, {"01", "01"}}};
    BijectionDiagnostics d = validate_bijection(bad);
    CHECK_FALSE(d.ok);  // domain Kraft sum 1/2

    PrefixBijection overlap{"ov", {{"0", "0"}, {"00", "1"}, {"1", "01"}}};
    CHECK_FALSE(validate_bijection(overlap).ok);  // 0 is a prefix of 00
}

TEST_CASE("bijection file format round-trips") {
    PrefixBijection cb = builtin_bijection("c_broken");
    PrefixBijection again = PrefixBijection::parse(cb.print());
    CHECK(again.pairs == cb.pairs);
    CHECK_THROWS_AS(PrefixBijection::parse("01 - 10"), ParseError);
    CHECK_THROWS_AS(PrefixBijection::parse("0x -> 1"), ParseError);
    PrefixBijection commented = PrefixBijection::parse("# swap\n00 -> 01 # pair\n01->00\n1 -> 1\n");
    CHECK(commented.pairs == builtin_bijection("a").pairs);
}

TEST_CASE("finite-support images") {
    PrefixBijection a = builtin_bijection("a"), b = builtin_bijection("b"),
                    c = builtin_bijection("c");
    CHECK(finite_support_image(a, "") == "01");
    CHECK(finite_support_image(c, "") == "1");
    CHECK(finite_support_image(a, "01") == "");
    CHECK(finite_support_image(b, "") == "");
    CHECK(finite_support_image(b, "1") == "11");
    CHECK(finite_support_image(c, "11") == "001");

    // injective on stripped words, for every valid bijection
    for (const PrefixBijection* bij : {&a, &b, &c}) {
        std::set<std::string> images;
        int total = 0;
        for (int len = 0; len <= 8; ++len) {
            for (const std::string& w : bit_strings(len)) {
                if (!w.empty() && w.back() == '0') continue;
                ++total;
                CHECK(images.insert(finite_support_image(*bij, w)).second);
            }
        }
        CHECK(total == int(images.size()));
    }
}

TEST_CASE("the swapped pairing inverts the finite-support action") {
    for (const char* g : {"a", "b", "c", "c_broken"}) {
        PrefixBijection bij = builtin_bijection(g);
        PrefixBijection inv{"inv", {}};
        for (const auto& [p, q] : bij.pairs) inv.pairs.emplace_back(q, p);
        REQUIRE(validate_bijection(inv).ok);
        for (int len = 0; len <= 10; ++len) {
            for (const std::string& w : bit_strings(len)) {
                if (!w.empty() && w.back() == '0') continue;
                CHECK(finite_support_image(inv, finite_support_image(bij, w)) == w);
            }
        }
    }
}

TEST_CASE("generator orders through the finite-support action") {
    PrefixBijection a = builtin_bijection("a"), b = builtin_bijection("b"),
                    c = builtin_bijection("c");
    auto strip = [](std::string w) {
        while (!w.empty() && w.back() == '0') w.pop_back();
        return w;
    };
    for (int len = 0; len <= 8; ++len) {
        for (const std::string& w : bit_strings(len)) {
            std::string s = strip(w);
            CHECK(finite_support_image(a, finite_support_image(a, s)) == s);
            CHECK(finite_support_image(c, finite_support_image(c, s)) == s);
            CHECK(finite_support_image(
                      b, finite_support_image(b, finite_support_image(b, s))) == s);
        }
    }
}

TEST_CASE("anchored apply: contextual and fallback branches") {
    PrefixBijection b = builtin_bijection("b"), c = builtin_bijection("c");

    // whole-block fallback: 1 is a domain word of c
    FlowedWord r = anchored_apply(c, circ("21"));
    CHECK(r.word.str() == "2");
    CHECK(r.pieces == std::vector<Piece>{pc(2, 0, 1, 0, 2)});

    // proper prefix: only 2·1 is rewritten, the bits 0 1 keep slope one
    r = anchored_apply(c, circ("2101"));
    CHECK(r.word.str() == "20001");
    CHECK(r.pieces == std::vector<Piece>{pc(2, 0, 1, 0, Rat(2, 3)), pc(0, 0, 1, Rat(2, 3), Rat(4, 3)),
                                         pc(0, 0, 1, Rat(4, 3), 2), pc(0, 0, 1, 2, 3),
                                         pc(1, 0, 1, 3, 4)});

    // too short for any rewrite: fall back to the finite-support image
    r = anchored_apply(b, circ("2"));
    CHECK(is_identity(r, Word::parse("2")));
}

TEST_CASE("anchored apply boundary handling") {
    PrefixBijection a = builtin_bijection("a");
    CHECK(anchored_apply(a, identity_flow(Word::parse("2003"))).word.str() == "201");
    CHECK_THROWS_AS(anchored_apply(a, identity_flow(Word::parse("2013"))), EngineError);
    CHECK(anchored_apply(a, identity_flow(Word::parse("201~"))).word.str() == "200");
    try {
        anchored_apply(a, identity_flow(Word::parse("20~")));
        FAIL("expected bowtie error");
    } catch (const EngineError& e) {
        CHECK(e.kind == EngineError::Kind::BowtieDependent);
    }
    CHECK_THROWS_AS(anchored_apply(a, identity_flow(Word::parse("12", Boundary::Sentinel))),
                    EngineError);
}

TEST_CASE("compiled rules pass coverage and match the hand tables in action") {
    for (const char* g : {"a", "b", "c", "c_broken"}) {
        PrefixBijection bij = builtin_bijection(g);
        LocalRule compiled = compile_to_local_rule(bij);
        CHECK(validate_partition(compiled).ok);
        for (int n = 1; n <= 6; ++n) {
            anchored_words(n, [&](const Word& w) {
                FlowedWord fw = identity_flow(w);
                CHECK(normalize(apply_rule(compiled, fw)) == normalize(anchored_apply(bij, fw)));
            });
        }
    }
    CHECK(builtin_generator("c_broken_rule").mappings ==
          compile_to_local_rule(builtin_bijection("c_broken")).mappings);
    CHECK_THROWS_AS(compile_to_local_rule(PrefixBijection{"bad", {{"00", "1"}, {"01", "01"}}}),
                    EngineError);
}

TEST_CASE("rule-table and word-level engines agree on short words") {
    for (const char* g : {"a", "b", "c"}) {
        LocalRule rule = builtin_generator(g);
        PrefixBijection bij = builtin_bijection(g);
        for (int n = 1; n <= 7; ++n) {
            anchored_words(n, [&](const Word& w) {
                FlowedWord fw = identity_flow(w);
                CHECK(normalize(apply_rule(rule, fw)) == normalize(anchored_apply(bij, fw)));
            });
        }
    }
}

TEST_CASE("word-level action projects onto the Cantor action") {
    auto strip = [](std::string w) {
        while (!w.empty() && w.back() == '0') w.pop_back();
        return w;
    };
    for (const char* g : {"a", "b", "c"}) {
        PrefixBijection bij = builtin_bijection(g);
        for (int len = 0; len <= 8; ++len) {
            for (const std::string& bits : bit_strings(len)) {
                if (bits != strip(bits)) continue;
                FlowedWord out = anchored_apply(bij, circ("2" + bits));
                std::string word = out.word.str();
                while (word.size() > 1 && word.back() == '0') word.pop_back();
                CHECK(word == "2" + finite_support_image(bij, bits));
            }
        }
    }
}
