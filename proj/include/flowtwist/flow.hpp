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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowtwist/rational.hpp"

namespace flowtwist {

// Shift symbols 0,1,2 plus the two word terminators. The terminators never
// occur inside a legal shift word; they only materialize word boundaries.
enum class Symbol : unsigned char { S0 = 0, S1 = 1, S2 = 2, Sentinel = 3, Bowtie = 4 };

constexpr bool is_shift_symbol(Symbol s) { return s <= Symbol::S2; }
constexpr bool is_bit(Symbol s) { return s == Symbol::S0 || s == Symbol::S1; }
constexpr Symbol bit(int b) { return b ? Symbol::S1 : Symbol::S0; }

char symbol_char(Symbol s);
Symbol symbol_from_char(char c);

// How a finite word continues: wraps onto itself, ends in a marker that must
// never influence the action (sentinel), or continues with unknown bits that
// must never be rewritten or decided on (bowtie).
enum class Boundary : unsigned char { Circular, Sentinel, Bowtie };

std::string boundary_name(Boundary b);
Boundary boundary_from_name(const std::string& name);

struct Word {
    std::vector<Symbol> letters;
    Boundary boundary = Boundary::Circular;

    bool operator==(const Word&) const = default;

    // Accepts symbols 0,1,2 with an optional trailing '3' (sentinel) or '~'
    // (bowtie) overriding the boundary argument.
    static Word parse(const std::string& text, Boundary boundary = Boundary::Circular);
    std::string str() const;  // letters only, no terminator glyph
    bool anchored() const { return !letters.empty() && letters.front() == Symbol::S2; }
};

// Vertex shift given by a 0/1 transition matrix over the shift symbols.
struct VertexShift {
    std::vector<std::vector<bool>> adjacency;

    bool allows(Symbol from, Symbol to) const {
        return adjacency[static_cast<size_t>(from)][static_cast<size_t>(to)];
    }
    // The 3x3 matrix over (0,1,2) whose only forbidden transition is 0 -> 2.
    static const VertexShift& builtin();
};

// True iff every consecutive pair (and the wrap pair when circular) is an
// allowed transition. Throws on terminator symbols in the word.
bool is_legal_word(const std::vector<Symbol>& letters, const VertexShift& shift, bool circular);
inline bool is_legal_word(const Word& w, const VertexShift& shift = VertexShift::builtin()) {
    return is_legal_word(w.letters, shift, w.boundary == Boundary::Circular);
}

// One linear segment: tile subinterval [a,b] of the unit s-tile stretched
// over the physical interval [c,d].
struct Piece {
    Symbol s;
    Rat a, b, c, d;

    bool operator==(const Piece&) const = default;
    Rat tile_width() const { return b - a; }
    Rat phys_width() const { return d - c; }
};

// A word together with the piecewise-linear reparametrization accumulated by
// rewriting. Pieces are physically contiguous starting at 0; each letter's
// tile is covered exactly once, in order. For circular flows the first tile
// may begin mid-tile (a > 0) after a fractional rotation; its missing head
// then sits at the end of the list.
struct FlowedWord {
    Word word;
    std::vector<Piece> pieces;

    bool operator==(const FlowedWord&) const = default;
    Rat span() const { return pieces.empty() ? Rat(0) : pieces.back().d; }

    // Throws EngineError{Invariant} when contiguity, tile coverage or slope
    // positivity fails.
    void check() const;
};

struct EngineError : std::runtime_error {
    enum class Kind {
        NoCover,
        AmbiguousCover,
        SentinelRead,
        BowtieDependent,
        BowtieRewritten,
        IllegalWord,
        Invariant,
    };
    Kind kind;
    EngineError(Kind k, const std::string& msg);
};

const char* engine_error_name(EngineError::Kind k);

// One unit piece per letter at its original physical position.
FlowedWord identity_flow(const Word& word, const VertexShift& shift = VertexShift::builtin());

// Merges adjacent same-symbol pieces with chaining endpoints and equal slope.
// Idempotent; preserves the induced PL map.
FlowedWord normalize(const FlowedWord& fw);

// fw equals the undistorted flow of `original` exactly.
bool is_identity(const FlowedWord& fw, const Word& original);

// Moves the base point of a circular flow by t (0 <= t < span).
FlowedWord rotate(const FlowedWord& fw, const Rat& t);

// Recovers the letter sequence from a piece list (wrapped first tile counted
// once). Used by rotate and by rewrites that cross the circular origin.
std::vector<Symbol> letters_from_pieces(const std::vector<Piece>& pieces, bool circular);

}  // namespace flowtwist
