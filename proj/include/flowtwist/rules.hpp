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

#include <string>
#include <vector>

#include "flowtwist/flow.hpp"

namespace flowtwist {

// Literal shift symbol or a named bit variable ranging over {0,1}.
struct PatternToken {
    bool is_var = false;
    Symbol sym = Symbol::S0;
    char name = 0;

    static PatternToken lit(Symbol s) { return {false, s, 0}; }
    static PatternToken var(char c) { return {true, Symbol::S0, c}; }
    bool operator==(const PatternToken&) const = default;
};

using Pattern = std::vector<PatternToken>;

// u(v)w : out  -- rewrite v to out wherever u·v·w matches.
struct Mapping {
    Pattern u, v, w, out;
    bool operator==(const Mapping&) const = default;
};

struct LocalRule {
    std::string name;
    std::vector<Mapping> mappings;

    // Widest pattern, max |u|+|v|+|w| over the mappings.
    int reach() const;
};

// Grammar, one mapping per line, '#' comments:
//   mapping := [ctx] "(" body ")" [ctx] ":" body
//   token   := "0" | "1" | "2" | "A".."Z"
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line, const std::string& msg);
};

LocalRule parse_local_rule(const std::string& text, const std::string& name = "");
std::string print_mapping(const Mapping& m);
std::string print_local_rule(const LocalRule& rule);

// The hand-picked rule tables implementing the three generators. Unknown
// names throw std::invalid_argument; "c_broken_rule" is provided by the
// bijection compiler (see bijection.hpp).
LocalRule builtin_generator(const std::string& name);

struct ValidationWitness {
    std::vector<Symbol> window;
    int cell_offset;
    int cover_count;
    std::vector<int> mapping_indices;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationWitness> witnesses;
};

// Exhaustive exactly-once coverage check: over every legal window of length
// 2*reach-1 the center cell must fall in the v-part of exactly one ground
// instance.
ValidationReport validate_partition(const LocalRule& rule,
                                    const VertexShift& shift = VertexShift::builtin());

// Per-step bookkeeping consumed by the relation checker.
struct ApplyInfo {
    bool touched_last = false;  // last letter's block was rewritten
    int block_count = 0;
};

// Applies one rule step. The letters are partitioned into v-blocks, each
// block's replacement is laid out at constant slope in block coordinates and
// composed with the distortion the block already carries. Boundary handling:
// circular contexts wrap; a sentinel must never be examined; a bowtie
// position reads as an unknown bit and the step must not depend on it.
FlowedWord apply_rule(const LocalRule& rule, const FlowedWord& fw, ApplyInfo* info = nullptr);

}  // namespace flowtwist
