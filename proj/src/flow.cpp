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

#include "flowtwist/flow.hpp"

namespace flowtwist {

Rat rat_parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(boost::multiprecision::cpp_int(text));
        boost::multiprecision::cpp_int num(text.substr(0, slash));
        boost::multiprecision::cpp_int den(text.substr(slash + 1));
        if (den == 0) throw std::runtime_error("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::runtime_error("bad rational literal: " + text);
    }
}

char symbol_char(Symbol s) {
    switch (s) {
        case Symbol::S0: return '0';
        case Symbol::S1: return '1';
        case Symbol::S2: return '2';
        case Symbol::Sentinel: return '3';
        case Symbol::Bowtie: return '~';
    }
    return '?';
}

Symbol symbol_from_char(char c) {
    switch (c) {
        case '0': return Symbol::S0;
        case '1': return Symbol::S1;
        case '2': return Symbol::S2;
        case '3': return Symbol::Sentinel;
        case '~': return Symbol::Bowtie;
    }
    throw std::runtime_error(std::string("unknown symbol '") + c + "'");
}

std::string boundary_name(Boundary b) {
    switch (b) {
        case Boundary::Circular: return "circular";
        case Boundary::Sentinel: return "sentinel";
        case Boundary::Bowtie: return "bowtie";
    }
    return "?";
}

Boundary boundary_from_name(const std::string& name) {
    if (name == "circular") return Boundary::Circular;
    if (name == "sentinel") return Boundary::Sentinel;
    if (name == "bowtie") return Boundary::Bowtie;
    throw std::runtime_error("unknown boundary: " + name);
}

Word Word::parse(const std::string& text, Boundary boundary) {
    Word w;
    w.boundary = boundary;
    for (size_t i = 0; i < text.size(); ++i) {
        Symbol s = symbol_from_char(text[i]);
        if (!is_shift_symbol(s)) {
            if (i + 1 != text.size())
                throw std::runtime_error("terminator mid-word in: " + text);
            w.boundary = s == Symbol::Sentinel ? Boundary::Sentinel : Boundary::Bowtie;
            break;
        }
        w.letters.push_back(s);
    }
    if (w.letters.empty()) throw std::runtime_error("empty word");
    return w;
}

std::string Word::str() const {
    std::string s;
    for (Symbol l : letters) s += symbol_char(l);
    return s;
}

const VertexShift& VertexShift::builtin() {
    static const VertexShift shift{{
        {true, true, false},
        {true, true, true},
        {true, true, true},
    }};
    return shift;
}

bool is_legal_word(const std::vector<Symbol>& letters, const VertexShift& shift, bool circular) {
    for (Symbol s : letters)
        if (!is_shift_symbol(s))
            throw EngineError(EngineError::Kind::IllegalWord, "marker in shift word");
    if (letters.empty()) return false;
    for (size_t i = 0; i + 1 < letters.size(); ++i)
        if (!shift.allows(letters[i], letters[i + 1])) return false;
    if (circular && !shift.allows(letters.back(), letters.front())) return false;
    return true;
}

EngineError::EngineError(Kind k, const std::string& msg)
    : std::runtime_error(std::string(engine_error_name(k)) + ": " + msg), kind(k) {}

const char* engine_error_name(EngineError::Kind k) {
    switch (k) {
        case EngineError::Kind::NoCover: return "no covering mapping";
        case EngineError::Kind::AmbiguousCover: return "ambiguous cover";
        case EngineError::Kind::SentinelRead: return "sentinel read";
        case EngineError::Kind::BowtieDependent: return "bowtie-dependent";
        case EngineError::Kind::BowtieRewritten: return "bowtie rewritten";
        case EngineError::Kind::IllegalWord: return "illegal word";
        case EngineError::Kind::Invariant: return "invariant violation";
    }
    return "?";
}

void FlowedWord::check() const {
    auto fail = [](const std::string& msg) {
        throw EngineError(EngineError::Kind::Invariant, msg);
    };
    if (pieces.empty() || word.letters.empty()) fail("empty flow");
    if (pieces.front().c != 0) fail("physical line must start at 0");
    for (const Piece& p : pieces) {
        if (!(0 <= p.a && p.a < p.b && p.b <= 1)) fail("tile interval out of range");
        if (!(p.c < p.d)) fail("empty physical interval");
    }
    for (size_t i = 0; i + 1 < pieces.size(); ++i)
        if (pieces[i].d != pieces[i + 1].c) fail("physical gap between pieces");
    if (letters_from_pieces(pieces, word.boundary == Boundary::Circular) != word.letters)
        fail("piece symbols disagree with word");
}

std::vector<Symbol> letters_from_pieces(const std::vector<Piece>& pieces, bool circular) {
    auto fail = [](const std::string& msg) {
        throw EngineError(EngineError::Kind::Invariant, msg);
    };
    if (pieces.empty()) fail("no pieces");
    Rat wrapped_head = pieces.front().a;  // nonzero only for a tile cut by the origin
    if (wrapped_head != 0 && !circular) fail("first tile truncated");
    std::vector<Symbol> letters{pieces.front().s};
    Symbol cur = pieces.front().s;
    Rat cov = pieces.front().b;
    for (size_t i = 1; i < pieces.size(); ++i) {
        const Piece& p = pieces[i];
        if (cov < 1) {
            if (p.s != cur || p.a != cov) fail("tile coverage gap");
        } else {
            if (p.a != 0) fail("new tile must start at 0");
            letters.push_back(p.s);
            cur = p.s;
        }
        cov = p.b;
    }
    if (wrapped_head != 0) {
        // the trailing partial tile closes the first letter across the origin
        if (cov != wrapped_head || cur != letters.front()) fail("wrapped tile does not close");
        if (letters.size() < 2) fail("wrapped tile covers the whole circle");
        letters.pop_back();
    } else if (cov != 1) {
        fail("last tile incomplete");
    }
    return letters;
}

FlowedWord identity_flow(const Word& word, const VertexShift& shift) {
    if (!is_legal_word(word, shift))
        throw EngineError(EngineError::Kind::IllegalWord, word.str());
    FlowedWord fw;
    fw.word = word;
    fw.pieces.reserve(word.letters.size());
    for (size_t k = 0; k < word.letters.size(); ++k)
        fw.pieces.push_back({word.letters[k], Rat(0), Rat(1), Rat(k), Rat(k + 1)});
    return fw;
}

static bool collinear_chain(const Piece& x, const Piece& y) {
    return x.s == y.s && x.b == y.a && x.d == y.c &&
           (x.b - x.a) * (y.d - y.c) == (y.b - y.a) * (x.d - x.c);
}

FlowedWord normalize(const FlowedWord& fw) {
    FlowedWord out;
    out.word = fw.word;
    for (const Piece& p : fw.pieces) {
        if (!out.pieces.empty() && collinear_chain(out.pieces.back(), p)) {
            out.pieces.back().b = p.b;
            out.pieces.back().d = p.d;
        } else {
            out.pieces.push_back(p);
        }
    }
    return out;
}

bool is_identity(const FlowedWord& fw, const Word& original) {
    if (fw.word != original) return false;
    return normalize(fw).pieces == identity_flow(original).pieces;
}

FlowedWord rotate(const FlowedWord& fw, const Rat& t) {
    if (fw.word.boundary != Boundary::Circular)
        throw EngineError(EngineError::Kind::IllegalWord, "rotate requires circular word");
    Rat span = fw.span();
    if (t < 0 || t >= span)
        throw EngineError(EngineError::Kind::IllegalWord, "rotation outside [0, span)");
    if (t == 0) return fw;

    std::vector<Piece> cut;
    for (const Piece& p : fw.pieces) {
        if (p.c < t && t < p.d) {
            Rat m = p.a + (t - p.c) * (p.b - p.a) / (p.d - p.c);
            cut.push_back({p.s, p.a, m, p.c, t});
            cut.push_back({p.s, m, p.b, t, p.d});
        } else {
            cut.push_back(p);
        }
    }
    std::vector<Piece> moved;
    for (const Piece& p : cut)
        if (p.c >= t) moved.push_back({p.s, p.a, p.b, p.c - t, p.d - t});
    for (const Piece& p : cut)
        if (p.c < t) moved.push_back({p.s, p.a, p.b, p.c + span - t, p.d + span - t});

    // heal seams that the previous origin introduced
    std::vector<Piece> healed;
    for (const Piece& p : moved) {
        if (!healed.empty() && healed.back().b < 1 && collinear_chain(healed.back(), p)) {
            healed.back().b = p.b;
            healed.back().d = p.d;
        } else {
            healed.push_back(p);
        }
    }
    FlowedWord out;
    out.word.boundary = Boundary::Circular;
    out.word.letters = letters_from_pieces(healed, true);
    out.pieces = std::move(healed);
    return out;
}

}  // namespace flowtwist
