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

#include <array>
#include <tuple>
#include <vector>

#include "flowtwist/rules.hpp"

namespace flowtwist::detail {

void compose_block(const std::vector<std::array<Rat, 4>>& segs, int block_len,
                   const std::vector<Symbol>& out, std::vector<Piece>& sink);

// blocks: (first cell, cell count, replacement letters), jointly tiling the
// word; a block may wrap through the circular origin.
FlowedWord rewrite_blocks(const FlowedWord& fw,
                          const std::vector<std::tuple<long, int, std::vector<Symbol>>>& blocks,
                          ApplyInfo* info);

}  // namespace flowtwist::detail
