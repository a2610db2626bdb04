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

#include "flowtwist/rules.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <optional>
#include <sstream>
#include <tuple>

namespace flowtwist {

int LocalRule::reach() const {
    int r = 0;
    for (const Mapping& m : mappings)
        r = std::max(r, int(m.u.size() + m.v.size() + m.w.size()));
    return r;
}

ParseError::ParseError(int line, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}

static Pattern parse_pattern(const std::string& s, int line) {
    Pattern p;
    for (char c : s) {
        if (c == '0' || c == '1' || c == '2')
            p.push_back(PatternToken::lit(symbol_from_char(c)));
        else if (c >= 'A' && c <= 'Z')
            p.push_back(PatternToken::var(c));
        else
            throw ParseError(line, std::string("illegal literal '") + c + "'");
    }
    return p;
}

LocalRule parse_local_rule(const std::string& text, const std::string& name) {
    LocalRule rule;
    rule.name = name;
    std::istringstream in(text);
    std::string raw;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        std::string line;
        for (char c : raw) {
            if (c == '#') break;
            if (!std::isspace(static_cast<unsigned char>(c))) line += c;
        }
        if (line.empty()) continue;
        auto open = line.find('(');
        auto close = line.find(')');
        auto colon = line.find(':');
        if (open == std::string::npos || close == std::string::npos || colon == std::string::npos ||
            !(open < close && close < colon))
            throw ParseError(ln, "expected u(v)w:out");
        Mapping m;
        m.u = parse_pattern(line.substr(0, open), ln);
        m.v = parse_pattern(line.substr(open + 1, close - open - 1), ln);
        m.w = parse_pattern(line.substr(close + 1, colon - close - 1), ln);
        m.out = parse_pattern(line.substr(colon + 1), ln);
        if (m.v.empty()) throw ParseError(ln, "empty v");
        if (m.out.empty()) throw ParseError(ln, "empty replacement");
        std::array<bool, 26> bound{};
        for (const Pattern* pat : {&m.u, &m.v, &m.w})
            for (const PatternToken& t : *pat)
                if (t.is_var) bound[t.name - 'A'] = true;
        for (const PatternToken& t : m.out)
            if (t.is_var && !bound[t.name - 'A'])
                throw ParseError(ln, std::string("unbound variable '") + t.name + "'");
        if (std::find(rule.mappings.begin(), rule.mappings.end(), m) != rule.mappings.end())
            throw ParseError(ln, "duplicate mapping");
        rule.mappings.push_back(std::move(m));
    }
    return rule;
}

static std::string pattern_str(const Pattern& p) {
    std::string s;
    for (const PatternToken& t : p) s += t.is_var ? t.name : symbol_char(t.sym);
    return s;
}

std::string print_mapping(const Mapping& m) {
    return pattern_str(m.u) + "(" + pattern_str(m.v) + ")" + pattern_str(m.w) + ":" +
           pattern_str(m.out);
}

std::string print_local_rule(const LocalRule& rule) {
    std::string out;
    for (const Mapping& m : rule.mappings) out += print_mapping(m) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// partition validation

namespace {

struct GroundMapping {
    int index;
    std::vector<Symbol> pattern;  // u·v·w instantiated
    int ulen, vlen;
};

std::vector<GroundMapping> ground_instances(const LocalRule& rule, const VertexShift& shift) {
    std::vector<GroundMapping> out;
    for (size_t mi = 0; mi < rule.mappings.size(); ++mi) {
        const Mapping& m = rule.mappings[mi];
        std::vector<char> vars;
        for (const Pattern* pat : {&m.u, &m.v, &m.w})
            for (const PatternToken& t : *pat)
                if (t.is_var && std::find(vars.begin(), vars.end(), t.name) == vars.end())
                    vars.push_back(t.name);
        for (unsigned mask = 0; mask < (1u << vars.size()); ++mask) {
            std::array<Symbol, 26> val{};
            for (size_t k = 0; k < vars.size(); ++k)
                val[vars[k] - 'A'] = bit((mask >> k) & 1u);
            GroundMapping g{int(mi), {}, int(m.u.size()), int(m.v.size())};
            for (const Pattern* pat : {&m.u, &m.v, &m.w})
                for (const PatternToken& t : *pat)
                    g.pattern.push_back(t.is_var ? val[t.name - 'A'] : t.sym);
            if (is_legal_word(g.pattern, shift, false)) out.push_back(std::move(g));
        }
    }
    return out;
}

void legal_windows(const VertexShift& shift, int len,
                   const std::function<void(const std::vector<Symbol>&)>& fn) {
    std::vector<Symbol> w;
    std::function<void()> rec = [&] {
        if (int(w.size()) == len) {
            fn(w);
            return;
        }
        for (Symbol s : {Symbol::S0, Symbol::S1, Symbol::S2}) {
            if (!w.empty() && !shift.allows(w.back(), s)) continue;
            w.push_back(s);
            rec();
            w.pop_back();
        }
    };
    rec();
}

}  // namespace

ValidationReport validate_partition(const LocalRule& rule, const VertexShift& shift) {
    ValidationReport report;
    const int R = rule.reach();
    const int W = 2 * R - 1;
    const int center = R - 1;
    auto grounds = ground_instances(rule, shift);
    legal_windows(shift, W, [&](const std::vector<Symbol>& z) {
        std::vector<int> hits;
        for (const GroundMapping& g : grounds) {
            const int L = int(g.pattern.size());
            for (int o = 0; o + L <= W; ++o) {
                if (!(o + g.ulen <= center && center < o + g.ulen + g.vlen)) continue;
                if (std::equal(g.pattern.begin(), g.pattern.end(), z.begin() + o))
                    hits.push_back(g.index);
            }
        }
        if (hits.size() != 1) {
            report.ok = false;
            report.witnesses.push_back({z, center, int(hits.size()), hits});
        }
    });
    return report;
}

// ---------------------------------------------------------------------------
// rule application

namespace {

struct MatchInst {
    long voff = 0;
    int len = 0;
    std::vector<Symbol> out;
    bool v_in_term = false;

    auto key() const { return std::tie(voff, len, out, v_in_term); }
    bool operator<(const MatchInst& o) const { return key() < o.key(); }
    bool operator==(const MatchInst& o) const { return key() == o.key(); }
};

struct Matcher {
    const std::vector<Symbol>& letters;
    Boundary boundary;
    const std::vector<Symbol>* term_bits;  // bowtie continuation bits, else null

    long n() const { return long(letters.size()); }

    enum class CellKind { Letter, OutLeft, Term };
    std::pair<CellKind, Symbol> at(long pos) const {
        if (boundary == Boundary::Circular) {
            long m = pos % n();
            if (m < 0) m += n();
            return {CellKind::Letter, letters[m]};
        }
        if (pos < 0) return {CellKind::OutLeft, Symbol::S0};
        if (pos >= n()) {
            Symbol s = term_bits && pos - n() < long(term_bits->size())
                           ? (*term_bits)[pos - n()]
                           : Symbol::Sentinel;
            return {CellKind::Term, s};
        }
        return {CellKind::Letter, letters[pos]};
    }

    // A candidate that mismatches a known letter fails silently; one that
    // matches all known letters but extends onto a sentinel is an error.
    std::optional<MatchInst> try_match(const Mapping& m, long voff) const {
        std::array<Symbol, 26> bind{};
        std::array<bool, 26> has{};
        bool term_touch = false, v_term = false;
        long pos = voff - long(m.u.size());
        int seg = 0;
        for (const Pattern* pat : {&m.u, &m.v, &m.w}) {
            for (const PatternToken& t : *pat) {
                auto [kind, val] = at(pos);
                if (kind == CellKind::OutLeft) return std::nullopt;
                if (kind == CellKind::Term) {
                    term_touch = true;
                    if (seg == 1) v_term = true;
                    if (val == Symbol::Sentinel) {
                        ++pos;
                        continue;  // value deferred; resolved after the scan
                    }
                }
                if (t.is_var) {
                    if (!is_bit(val)) return std::nullopt;
                    if (has[t.name - 'A'] && bind[t.name - 'A'] != val) return std::nullopt;
                    bind[t.name - 'A'] = val;
                    has[t.name - 'A'] = true;
                } else if (t.sym != val) {
                    return std::nullopt;
                }
                ++pos;
            }
            ++seg;
        }
        if (term_touch && boundary == Boundary::Sentinel)
            throw EngineError(EngineError::Kind::SentinelRead,
                              "mapping " + print_mapping(m) + " reaches past the word");
        MatchInst inst;
        inst.voff = voff;
        inst.len = int(m.v.size());
        inst.v_in_term = v_term;
        for (const PatternToken& t : m.out)
            inst.out.push_back(t.is_var ? bind[t.name - 'A'] : t.sym);
        return inst;
    }
};

// Exactly-once cover of the real cells; returns the blocks sorted by voff.
std::vector<MatchInst> cover_blocks(const LocalRule& rule, const Matcher& mt) {
    const long n = mt.n();
    std::vector<MatchInst> inst;
    for (const Mapping& m : rule.mappings) {
        for (long voff = 0; voff < n; ++voff) {
            if (auto r = mt.try_match(m, voff)) inst.push_back(std::move(*r));
        }
    }
    std::vector<int> cover(n, 0);
    for (const MatchInst& i : inst) {
        for (int k = 0; k < i.len; ++k) {
            long p = i.voff + k;
            if (mt.boundary == Boundary::Circular) p %= n;
            if (0 <= p && p < n) ++cover[p];
        }
    }
    for (long i = 0; i < n; ++i) {
        if (cover[i] == 0)
            throw EngineError(EngineError::Kind::NoCover, "cell " + std::to_string(i));
        if (cover[i] > 1)
            throw EngineError(EngineError::Kind::AmbiguousCover, "cell " + std::to_string(i));
    }
    std::sort(inst.begin(), inst.end());
    return inst;
}

std::vector<MatchInst> plan_blocks(const LocalRule& rule, const std::vector<Symbol>& letters,
                                   Boundary boundary) {
    if (boundary != Boundary::Bowtie) {
        Matcher mt{letters, boundary, nullptr};
        return cover_blocks(rule, mt);
    }
    // Bowtie: the continuation is an arbitrary bit string. The step is legal
    // only if every continuation yields the same rewrite of the known cells.
    const int K = rule.reach();
    std::optional<std::vector<MatchInst>> plan;
    for (unsigned mask = 0; mask < (1u << K); ++mask) {
        std::vector<Symbol> bits(K);
        for (int k = 0; k < K; ++k) bits[k] = bit((mask >> k) & 1u);
        Matcher mt{letters, boundary, &bits};
        std::vector<MatchInst> p;
        try {
            p = cover_blocks(rule, mt);
        } catch (const EngineError& e) {
            throw EngineError(EngineError::Kind::BowtieDependent,
                              std::string("a continuation fails: ") + e.what());
        }
        if (plan && *plan != p)
            throw EngineError(EngineError::Kind::BowtieDependent,
                              "rewrite differs between continuations");
        plan = std::move(p);
    }
    for (const MatchInst& i : *plan)
        if (i.v_in_term)
            throw EngineError(EngineError::Kind::BowtieRewritten,
                              "v overlaps the continuation");
    return *plan;
}

// pieces of fw grouped per letter
std::vector<std::vector<Piece>> tiles_of(const FlowedWord& fw) {
    if (!fw.pieces.empty() && fw.pieces.front().a != 0)
        throw EngineError(EngineError::Kind::Invariant, "apply requires whole tiles");
    std::vector<std::vector<Piece>> tiles(fw.word.letters.size());
    size_t ti = 0;
    Rat cov = 0;
    for (const Piece& p : fw.pieces) {
        if (!tiles[ti].empty() && cov == 1) ++ti;
        tiles.at(ti).push_back(p);
        cov = p.b;
    }
    return tiles;
}

}  // namespace

namespace detail {

// Lays out `out` tiles at constant slope over a block whose accumulated map
// is given by segs (block coordinate interval -> physical interval), and
// composes the two maps.
void compose_block(const std::vector<std::array<Rat, 4>>& segs, int block_len,
                   const std::vector<Symbol>& out, std::vector<Piece>& sink) {
    const int m2 = int(out.size());
    for (int j = 0; j < m2; ++j) {
        Rat t0 = Rat(block_len * j) / m2;
        Rat t1 = Rat(block_len * (j + 1)) / m2;
        for (const auto& [x0, x1, c, d] : segs) {
            Rat lo = std::max(t0, x0), hi = std::min(t1, x1);
            if (lo >= hi) continue;
            Rat pl = c + (lo - x0) * (d - c) / (x1 - x0);
            Rat ph = c + (hi - x0) * (d - c) / (x1 - x0);
            sink.push_back({out[j], (lo - t0) / (t1 - t0), (hi - t0) / (t1 - t0), pl, ph});
        }
    }
}

// Shared by the rule-table and bijection engines: rewrites the blocks of a
// flow, handling blocks that wrap through the circular origin by unrolling.
FlowedWord rewrite_blocks(const FlowedWord& fw,
                          const std::vector<std::tuple<long, int, std::vector<Symbol>>>& blocks,
                          ApplyInfo* info) {
    const auto& letters = fw.word.letters;
    const long n = long(letters.size());
    const bool circular = fw.word.boundary == Boundary::Circular;
    const Rat span = fw.span();
    auto tiles = tiles_of(fw);

    // cyclic order starting with the block that contains cell 0
    size_t first = blocks.size();
    for (size_t i = 0; i < blocks.size(); ++i) {
        auto [o, l, _] = blocks[i];
        if (o == 0 || (circular && o + l > n)) first = i;
        if (o == 0) break;
    }
    if (first == blocks.size())
        throw EngineError(EngineError::Kind::Invariant, "no block covers the origin");
    const long s0 = std::get<0>(blocks[first]);

    std::vector<size_t> order(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i) order[i] = (first + i) % blocks.size();
    if (info) *info = ApplyInfo{};

    std::vector<Piece> fresh;
    long expect = s0;
    for (size_t oi : order) {
        const auto& [o, l, out] = blocks[oi];
        if (o != (circular ? expect % n : expect))
            throw EngineError(EngineError::Kind::Invariant, "blocks do not tile the word");
        expect += l;
        std::vector<Symbol> block_letters;
        bool has_last = false;
        for (int k = 0; k < l; ++k) {
            long cell = circular ? (o + k) % n : o + k;
            block_letters.push_back(letters[cell]);
            has_last |= (cell == n - 1);
        }
        const bool ident = (out == block_letters);
        if (info) {
            ++info->block_count;
            if (has_last) info->touched_last = !ident;
        }
        if (ident) {
            // untouched: pieces pass through as they are
            for (int k = 0; k < l; ++k) {
                long cell = circular ? (o + k) % n : o + k;
                Rat shift = (circular && cell < s0) ? span : Rat(0);
                for (const Piece& p : tiles.at(cell))
                    fresh.push_back({p.s, p.a, p.b, p.c + shift, p.d + shift});
            }
            continue;
        }
        std::vector<std::array<Rat, 4>> segs;
        for (int k = 0; k < l; ++k) {
            long cell = circular ? (o + k) % n : o + k;
            Rat shift = (circular && cell < s0) ? span : Rat(0);
            for (const Piece& p : tiles.at(cell))
                segs.push_back({Rat(k) + p.a, Rat(k) + p.b, p.c + shift, p.d + shift});
        }
        compose_block(segs, l, out, fresh);
    }
    if (expect != s0 + n)
        throw EngineError(EngineError::Kind::Invariant, "blocks do not tile the word");

    // wrap unrolled pieces back onto [0, span)
    std::vector<Piece> wrapped;
    for (Piece p : fresh) {
        if (p.c >= span) {
            p.c -= span;
            p.d -= span;
            wrapped.push_back(p);
        } else if (p.d > span) {
            Rat m = p.a + (span - p.c) * (p.b - p.a) / (p.d - p.c);
            wrapped.push_back({p.s, p.a, m, p.c, span});
            wrapped.push_back({p.s, m, p.b, Rat(0), p.d - span});
        } else {
            wrapped.push_back(p);
        }
    }
    std::sort(wrapped.begin(), wrapped.end(),
              [](const Piece& x, const Piece& y) { return x.c < y.c; });

    FlowedWord result;
    result.word.boundary = fw.word.boundary;
    result.pieces = normalize(FlowedWord{fw.word, std::move(wrapped)}).pieces;
    result.word.letters = letters_from_pieces(result.pieces, circular);
    result.check();
    if (result.span() != span)
        throw EngineError(EngineError::Kind::Invariant, "span changed");
    return result;
}

}  // namespace detail

FlowedWord apply_rule(const LocalRule& rule, const FlowedWord& fw, ApplyInfo* info) {
    fw.check();
    auto plan = plan_blocks(rule, fw.word.letters, fw.word.boundary);
    std::vector<std::tuple<long, int, std::vector<Symbol>>> blocks;
    blocks.reserve(plan.size());
    for (MatchInst& i : plan) blocks.emplace_back(i.voff, i.len, std::move(i.out));
    return detail::rewrite_blocks(fw, blocks, info);
}

}  // namespace flowtwist
