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
#include <utility>
#include <vector>

#include "flowtwist/rules.hpp"

namespace flowtwist {

// A bijection of Cantor space given by exchanging two complete prefix codes
// of {0,1}*. Code words are strings over '0','1'.
struct PrefixBijection {
    std::string name;
    std::vector<std::pair<std::string, std::string>> pairs;

    int max_domain_len() const;

    // File format: lines "p -> q", '#' comments.
    static PrefixBijection parse(const std::string& text, const std::string& name = "");
    std::string print() const;
};

// a: (00 01)   b: (01 10 11)   c: (00 1)   c_broken: the distorted variant
// of c that acts identically on Cantor space but breaks the flow.
PrefixBijection builtin_bijection(const std::string& name);

struct BijectionDiagnostics {
    bool ok = true;
    std::vector<std::string> issues;
};

// Both codes complete (prefix-free, Kraft sum one) and paired bijectively.
BijectionDiagnostics validate_bijection(const PrefixBijection& bij);

// Image of w·0^inf with trailing zeros stripped. Total because the domain
// code is complete.
std::string finite_support_image(const PrefixBijection& bij, const std::string& w);

// Word-level action on an anchored flow. For each anchor block 2·w: if a
// domain word p is a proper prefix of the visible bits, 2·p is rewritten to
// 2·q at constant slope and the remaining bits keep slope one; otherwise the
// whole block becomes 2·finite_support_image(w). Boundary semantics match
// apply_rule.
FlowedWord anchored_apply(const PrefixBijection& bij, const FlowedWord& fw,
                          ApplyInfo* info = nullptr);

// Emits a local rule whose apply_rule action equals anchored_apply. Throws
// EngineError{Invariant} with witnesses if the emitted rule fails the
// exactly-once coverage check.
LocalRule compile_to_local_rule(const PrefixBijection& bij);

}  // namespace flowtwist
