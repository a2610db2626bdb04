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

#include "flowtwist/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include <nlohmann/json.hpp>

namespace flowtwist {

std::vector<Relation> default_relations() {
    return {
        {"aa", "aa"},
        {"bbb", "bbb"},
        {"cc", "cc"},
        {"abababab", "abababab"},
        {"cacaca", "cacaca"},
        {"cabbabacabbabacbcababbacababba", "r6"},
        {"acbcbabbcbbcbcabcbbcabbacbbcbcbabb", "r7"},
        {"abbcbcabbabbcbcbbabbcbbcbabcbbcabb", "r8"},
        {"cabbcbbcbacabacbcbbcabbcabcbbcbbacbacbcbbcabb", "r9"},
    };
}

std::string engine_name(EngineKind e) {
    return e == EngineKind::RuleTable ? "rule-table" : "bijection";
}

EngineKind engine_from_name(const std::string& name) {
    if (name == "rule-table") return EngineKind::RuleTable;
    if (name == "bijection") return EngineKind::Bijection;
    throw std::runtime_error("unknown engine: " + name);
}

GeneratorSet GeneratorSet::standard() {
    GeneratorSet g;
    for (const char* n : {"a", "b", "c"}) {
        g.rules.emplace(n[0], builtin_generator(n));
        g.bijections.emplace(n[0], builtin_bijection(n));
    }
    return g;
}

GeneratorSet GeneratorSet::with_broken_c() {
    GeneratorSet g = standard();
    g.rules.at('c') = builtin_generator("c_broken_rule");
    g.bijections.at('c') = builtin_bijection("c_broken");
    return g;
}

FlowedWord apply_relation(const std::string& relation, const FlowedWord& fw, EngineKind engine,
                          const GeneratorSet& gens, RelationTrace* trace) {
    if (relation.empty()) throw std::invalid_argument("empty relation");
    FlowedWord cur = fw;
    if (trace) {
        trace->initial = fw;
        trace->steps.clear();
    }
    for (char g : relation) {
        ApplyInfo info;
        if (engine == EngineKind::RuleTable) {
            auto it = gens.rules.find(g);
            if (it == gens.rules.end())
                throw std::invalid_argument(std::string("no generator '") + g + "'");
            cur = apply_rule(it->second, cur, &info);
        } else {
            auto it = gens.bijections.find(g);
            if (it == gens.bijections.end())
                throw std::invalid_argument(std::string("no generator '") + g + "'");
            cur = anchored_apply(it->second, cur, &info);
        }
        if (trace) trace->steps.push_back({g, cur, info.touched_last});
    }
    return cur;
}

namespace {

// bit words of a given length in lexicographic order
std::vector<std::vector<Symbol>> bit_words(int len) {
    std::vector<std::vector<Symbol>> out;
    out.reserve(size_t(1) << len);
    for (unsigned long mask = 0; mask < (1ul << len); ++mask) {
        std::vector<Symbol> w(len);
        for (int k = 0; k < len; ++k) w[k] = bit((mask >> (len - 1 - k)) & 1ul);
        out.push_back(std::move(w));
    }
    return out;
}

Word probe_word(const std::vector<Symbol>& bits, Boundary boundary) {
    Word w;
    w.boundary = boundary;
    w.letters.push_back(Symbol::S2);
    w.letters.insert(w.letters.end(), bits.begin(), bits.end());
    return w;
}

std::string probe_name(const Word& w) {
    std::string s = w.str();
    if (w.boundary == Boundary::Sentinel) s += '3';
    if (w.boundary == Boundary::Bowtie) s += '~';
    return s;
}

}  // namespace

std::vector<Word> enumerate_test_words(WordScheme scheme, int max_len) {
    std::vector<Word> out;
    if (scheme == WordScheme::Circular) {
        for (int len = 0; len <= max_len; ++len)
            for (const auto& bits : bit_words(len)) out.push_back(probe_word(bits, Boundary::Circular));
    } else {
        for (int len = 0; len <= max_len; ++len)
            for (const auto& bits : bit_words(len)) {
                if (!bits.empty() && bits.back() == Symbol::S0) continue;
                out.push_back(probe_word(bits, Boundary::Circular));
            }
        for (const auto& bits : bit_words(max_len)) out.push_back(probe_word(bits, Boundary::Bowtie));
    }
    return out;
}

RelationReport check_relation(const Relation& rel, int max_len, EngineKind engine,
                              const GeneratorSet& gens, int witness_cap) {
    RelationReport report;
    report.relation = rel.word;
    report.label = rel.label;
    report.engine = engine;
    report.max_len = max_len;
    bool ok = true;
    auto witness = [&](const Word& w, std::string detail, std::optional<FlowedWord> flow) {
        ok = false;
        if (int(report.witnesses.size()) < witness_cap)
            report.witnesses.push_back({probe_name(w), std::move(detail), std::move(flow)});
    };

    // exact identity on all anchored circular words
    for (int len = 0; len < max_len; ++len) {
        for (const auto& bits : bit_words(len)) {
            if (!bits.empty() && bits.back() == Symbol::S0) continue;  // 2w must wrap legally
            Word w = probe_word(bits, Boundary::Circular);
            ++report.words_checked;
            try {
                FlowedWord res = apply_relation(rel.word, identity_flow(w), engine, gens);
                if (!is_identity(res, w))
                    witness(w, res.word == w ? "flow distorted" : "word changed", res);
            } catch (const EngineError& e) {
                witness(w, e.what(), std::nullopt);
            }
        }
    }

    // frontier scan: find the depth at which the continuation stops mattering
    // and the length beyond which the last bit is never rewritten
    for (int len = 0; len < max_len; ++len) {
        bool clean = true, untouched = true;
        for (const auto& bits : bit_words(len)) {
            Word w = probe_word(bits, Boundary::Bowtie);
            ++report.words_checked;
            try {
                RelationTrace trace;
                apply_relation(rel.word, identity_flow(w), engine, gens, &trace);
                if (len > 0)
                    for (const StepRecord& s : trace.steps) untouched &= !s.touched_last;
            } catch (const EngineError& e) {
                clean = untouched = false;
                ++report.bowtie_incidents;
                break;
            }
        }
        if (clean && !report.read_depth) report.read_depth = len + 1;
        if (clean && untouched) {
            report.stabilization_length = len;
            break;
        }
    }
    if (!report.stabilization_length) {
        ok = false;
        report.witnesses.push_back(
            {"", "no frontier length stabilizes within max_len", std::nullopt});
    }

    // sentinel sweep at the maximal length: nothing past the word may matter
    for (const auto& bits : bit_words(max_len - 1)) {
        Word w = probe_word(bits, Boundary::Sentinel);
        ++report.words_checked;
        try {
            apply_relation(rel.word, identity_flow(w), engine, gens);
        } catch (const EngineError& e) {
            ++report.sentinel_incidents;
            witness(w, e.what(), std::nullopt);
            break;
        }
    }

    report.pass = ok;
    return report;
}

static int thread_cap(int threads) {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("FLOWTWIST_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

VerifySummary verify_embedding(const std::vector<Relation>& relations, int max_len,
                               EngineKind engine, const GeneratorSet& gens, int threads) {
    VerifySummary summary;
    summary.engine = engine;
    summary.max_len = max_len;
    summary.reports.resize(relations.size());

    const int cap = std::min(thread_cap(threads), std::max(int(relations.size()), 1));
    if (cap <= 1) {
        for (size_t i = 0; i < relations.size(); ++i)
            summary.reports[i] = check_relation(relations[i], max_len, engine, gens);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < cap; ++t) {
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < relations.size(); i = next.fetch_add(1))
                    summary.reports[i] = check_relation(relations[i], max_len, engine, gens);
            });
        }
        for (auto& th : pool) th.join();
    }
    summary.pass = std::all_of(summary.reports.begin(), summary.reports.end(),
                               [](const RelationReport& r) { return r.pass; });
    return summary;
}

nlohmann::json flow_to_json(const FlowedWord& fw) {
    nlohmann::json pieces = nlohmann::json::array();
    for (const Piece& p : fw.pieces)
        pieces.push_back({int(p.s), rat_str(p.a), rat_str(p.b), rat_str(p.c), rat_str(p.d)});
    return {{"word", fw.word.str()},
            {"boundary", boundary_name(fw.word.boundary)},
            {"pieces", pieces}};
}

static nlohmann::json report_to_json(const RelationReport& r) {
    nlohmann::json witnesses = nlohmann::json::array();
    for (const Witness& w : r.witnesses) {
        nlohmann::json jw{{"word", w.word}, {"detail", w.detail}};
        if (w.flow) {
            jw["final"] = w.flow->word.str();
            jw["pieces"] = flow_to_json(*w.flow)["pieces"];
        }
        witnesses.push_back(std::move(jw));
    }
    nlohmann::json j{{"relation", r.relation},
                     {"label", r.label},
                     {"engine", engine_name(r.engine)},
                     {"verdict", r.pass ? "PASS" : "FAIL"},
                     {"words_checked", r.words_checked},
                     {"sentinel_incidents", r.sentinel_incidents},
                     {"bowtie_incidents", r.bowtie_incidents},
                     {"witnesses", std::move(witnesses)}};
    j["stabilization_length"] =
        r.stabilization_length ? nlohmann::json(*r.stabilization_length) : nlohmann::json();
    j["read_depth"] = r.read_depth ? nlohmann::json(*r.read_depth) : nlohmann::json();
    return j;
}

nlohmann::json summary_to_json(const VerifySummary& summary) {
    nlohmann::json rels = nlohmann::json::array();
    for (const RelationReport& r : summary.reports) rels.push_back(report_to_json(r));
    return {{"engine", engine_name(summary.engine)},
            {"max_len", summary.max_len},
            {"overall", summary.pass ? "PASS" : "FAIL"},
            {"relations", std::move(rels)}};
}

}  // namespace flowtwist
