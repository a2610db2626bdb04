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

#include "flowtwist/verify.hpp"

namespace flowtwist {

// Row per step (steps stacked downward) or column per step (steps running
// rightward with the word drawn top to bottom).
enum class Orientation { Rows, Columns };

struct DiagramSpec {
    Word word;
    std::string element;  // generator sequence, applied leftmost-first
    Orientation orientation = Orientation::Rows;
    int glyph_scale = 36;  // pixels per physical unit
    bool show_discontinuities = true;
    EngineKind engine = EngineKind::RuleTable;
};

struct RenderStats {
    std::vector<int> piece_counts;          // per row, initial row included
    std::vector<int> row_discontinuities;   // intra-tile breaks per row
    int intra_tile_discontinuities = 0;
};

struct RenderResult {
    std::string svg;
    RenderStats stats;
};

// Glyph conventions: triple line = 2, single line = 0, box = 1, crossed
// diagonals = the bowtie terminator. Tile boundaries get black ticks; piece
// boundaries strictly inside a tile get gray ticks.
RenderResult render_trace(const DiagramSpec& spec, const GeneratorSet& gens = GeneratorSet::standard());

struct SuiteDiagram {
    std::string name;  // deterministic file stem, e.g. "3_cc_201"
    RenderResult result;
};

struct SuiteResult {
    std::vector<SuiteDiagram> diagrams;
    int total_discontinuities = 0;
};

// One diagram per (relation, test word). Test words follow the bowtie-suite
// enumeration; each relation uses the shortest frontier length at which it
// applies cleanly past the bowtie.
SuiteResult render_verification_suite(const std::vector<Relation>& relations,
                                  const GeneratorSet& gens = GeneratorSet::standard(),
                                  int glyph_scale = 36);

}  // namespace flowtwist
