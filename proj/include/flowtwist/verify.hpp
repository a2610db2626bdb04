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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "flowtwist/bijection.hpp"

namespace flowtwist {

struct Relation {
    std::string word;  // over generator names a, b, c
    std::string label;
};

// The nine defining relations, inverse-free, in fixed order.
std::vector<Relation> default_relations();

enum class EngineKind { RuleTable, Bijection };
std::string engine_name(EngineKind e);
EngineKind engine_from_name(const std::string& name);

// One generator letter bound to both engines' realizations.
struct GeneratorSet {
    std::map<char, LocalRule> rules;
    std::map<char, PrefixBijection> bijections;

    static GeneratorSet standard();
    // Standard a,b but c realized by the broken bijection (same Cantor
    // action, distorted flow).
    static GeneratorSet with_broken_c();
};

struct StepRecord {
    char generator;
    FlowedWord flow;        // after the step
    bool touched_last;      // the final letter's block was rewritten
};

struct RelationTrace {
    FlowedWord initial;
    std::vector<StepRecord> steps;
};

// Applies the generators leftmost-first. Engine errors propagate.
FlowedWord apply_relation(const std::string& relation, const FlowedWord& fw, EngineKind engine,
                          const GeneratorSet& gens, RelationTrace* trace = nullptr);

struct Witness {
    std::string word;   // bits after the anchor; terminator glyph included
    std::string detail;
    std::optional<FlowedWord> flow;
};

struct RelationReport {
    std::string relation;
    std::string label;
    EngineKind engine = EngineKind::RuleTable;
    int max_len = 0;
    bool pass = false;
    int words_checked = 0;
    std::optional<int> stabilization_length;  // smallest frontier length whose
                                              // last bit is never rewritten
    std::optional<int> read_depth;            // symbols (anchor included) whose
                                              // values determine the action
    std::vector<Witness> witnesses;
    int sentinel_incidents = 0;
    int bowtie_incidents = 0;
};

// Three-phase check: exact identity on all circular words 2·w with
// |w| < max_len; a frontier scan with the bowtie terminator establishing the
// stabilization length and read depth; and a sentinel sweep at the maximal
// length confirming nothing past the word is ever examined.
RelationReport check_relation(const Relation& rel, int max_len, EngineKind engine,
                              const GeneratorSet& gens, int witness_cap = 5);

struct VerifySummary {
    bool pass = false;
    EngineKind engine = EngineKind::RuleTable;
    int max_len = 0;
    std::vector<RelationReport> reports;
};

// Runs check_relation for each relation; relations may be checked in
// parallel (capped by `threads`, 0 = auto honoring FLOWTWIST_THREADS) and
// are reported in input order.
VerifySummary verify_embedding(const std::vector<Relation>& relations, int max_len,
                               EngineKind engine, const GeneratorSet& gens, int threads = 0);

nlohmann::json summary_to_json(const VerifySummary& summary);
nlohmann::json flow_to_json(const FlowedWord& fw);

enum class WordScheme { Circular, BowtieSuite };

// Circular: all bit words by length then lexicographic order. Bowtie suite:
// words not ending in 0 up to max_len, then every length-max_len word with a
// bowtie terminator.
std::vector<Word> enumerate_test_words(WordScheme scheme, int max_len);

}  // namespace flowtwist
