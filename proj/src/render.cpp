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

#include "flowtwist/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace flowtwist {

namespace {

double approx(const Rat& q) {
    return boost::multiprecision::numerator(q).convert_to<double>() /
           boost::multiprecision::denominator(q).convert_to<double>();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct Canvas {
    Orientation orientation;
    double scale, pitch, pad;
    std::ostringstream out;

    // (row, physical position, offset across the band) -> page coordinates
    std::pair<double, double> at(int row, double x, double off) const {
        double along = pad + x * scale;
        double across = pad + row * pitch + off;
        if (orientation == Orientation::Rows) return {along, across};
        return {across, along};
    }
    void line(int row, double x0, double off0, double x1, double off1, const char* stroke,
              double width) {
        auto [ax, ay] = at(row, x0, off0);
        auto [bx, by] = at(row, x1, off1);
        out << "<line x1=\"" << fmt(ax) << "\" y1=\"" << fmt(ay) << "\" x2=\"" << fmt(bx)
            << "\" y2=\"" << fmt(by) << "\" stroke=\"" << stroke << "\" stroke-width=\""
            << fmt(width) << "\"/>\n";
    }
    void text(int row, double x, double off, const std::string& s) {
        auto [ax, ay] = at(row, x, off);
        out << "<text x=\"" << fmt(ax) << "\" y=\"" << fmt(ay)
            << "\" font-family=\"monospace\" font-size=\"" << fmt(scale * 0.3)
            << "\" text-anchor=\"middle\">" << s << "</text>\n";
    }
};

struct TileGeom {
    Symbol s;
    Rat c, d;                 // physical extent
    std::vector<Rat> breaks;  // interior piece boundaries
};

std::vector<TileGeom> tile_geometry(const FlowedWord& fw) {
    std::vector<TileGeom> tiles;
    Rat cov = 1;
    for (const Piece& p : fw.pieces) {
        if (cov == 1) {
            tiles.push_back({p.s, p.c, p.d, {}});
        } else {
            tiles.back().breaks.push_back(p.c);
            tiles.back().d = p.d;
        }
        cov = p.b;
    }
    return tiles;
}

void draw_row(Canvas& cv, int row, const FlowedWord& fw, bool show_disc, RenderStats& stats) {
    const double tick = cv.scale * 0.20;
    const double off = cv.scale * 0.14;
    auto tiles = tile_geometry(fw);
    int disc = 0;

    cv.line(row, 0, -tick, 0, tick, "black", 1.2);
    for (const TileGeom& t : tiles) {
        double c = approx(t.c), d = approx(t.d);
        switch (t.s) {
            case Symbol::S0:
                cv.line(row, c, 0, d, 0, "black", 1.0);
                break;
            case Symbol::S1:
                cv.line(row, c, -off, d, -off, "black", 1.0);
                cv.line(row, c, off, d, off, "black", 1.0);
                break;
            default:  // the anchor
                cv.line(row, c, -off, d, -off, "black", 1.0);
                cv.line(row, c, 0, d, 0, "black", 1.0);
                cv.line(row, c, off, d, off, "black", 1.0);
                break;
        }
        for (const Rat& b : t.breaks) {
            ++disc;
            if (show_disc) cv.line(row, approx(b), -tick * 0.7, approx(b), tick * 0.7, "gray", 1.0);
        }
        cv.line(row, d, -tick, d, tick, "black", 1.2);
    }
    double span = approx(fw.span());
    if (fw.word.boundary == Boundary::Bowtie) {
        cv.line(row, span, -off, span + 1, off, "black", 1.0);
        cv.line(row, span, off, span + 1, -off, "black", 1.0);
        cv.line(row, span + 1, -tick, span + 1, tick, "black", 1.2);
    } else if (fw.word.boundary == Boundary::Sentinel) {
        cv.line(row, span + 0.4, -tick, span + 0.4, tick, "black", 1.0);
        cv.line(row, span + 0.6, -tick, span + 0.6, tick, "black", 1.0);
    }
    stats.piece_counts.push_back(int(fw.pieces.size()));
    stats.row_discontinuities.push_back(disc);
    stats.intra_tile_discontinuities += disc;
}

}  // namespace

RenderResult render_trace(const DiagramSpec& spec, const GeneratorSet& gens) {
    if (spec.element.empty()) throw std::invalid_argument("empty generator sequence");
    std::vector<FlowedWord> rows{identity_flow(spec.word)};
    try {
        for (char g : spec.element)
            rows.push_back(apply_relation(std::string(1, g), rows.back(), spec.engine, gens));
    } catch (const EngineError& e) {
        throw EngineError(e.kind, std::string(e.what()) + " at step " +
                                      std::to_string(rows.size()) + " of " + spec.element);
    }

    Canvas cv{spec.orientation, double(spec.glyph_scale), spec.glyph_scale * 0.62,
              spec.glyph_scale * 1.0, {}};
    RenderResult res;
    double max_span = 0;
    for (const FlowedWord& fw : rows) max_span = std::max(max_span, approx(fw.span()));
    const double extent = max_span + 1.5;  // room for the terminator glyph
    const double across = (double(rows.size()) - 1) * cv.pitch + 2 * cv.pad;
    const double along = extent * cv.scale + 2 * cv.pad;
    const double wpx = spec.orientation == Orientation::Rows ? along : across;
    const double hpx = spec.orientation == Orientation::Rows ? across : along;

    cv.out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(wpx) << "\" height=\""
           << fmt(hpx) << "\" viewBox=\"0 0 " << fmt(wpx) << " " << fmt(hpx) << "\">\n";
    // word spelled out over the initial row
    for (size_t k = 0; k < spec.word.letters.size(); ++k)
        cv.text(0, double(k) + 0.5, -cv.scale * 0.34,
                std::string(1, symbol_char(spec.word.letters[k])));
    for (size_t r = 0; r < rows.size(); ++r) {
        if (r > 0) cv.text(int(r), -0.35, cv.scale * 0.1, std::string(1, spec.element[r - 1]));
        draw_row(cv, int(r), rows[r], spec.show_discontinuities, res.stats);
    }
    cv.out << "</svg>\n";
    res.svg = cv.out.str();
    return res;
}

namespace {

// shortest frontier length at which every bowtie continuation acts the same
int clean_frontier(const std::string& relation, const GeneratorSet& gens, int cap) {
    for (int len = 0; len <= cap; ++len) {
        bool clean = true;
        for (unsigned long mask = 0; mask < (1ul << len) && clean; ++mask) {
            Word w;
            w.boundary = Boundary::Bowtie;
            w.letters.push_back(Symbol::S2);
            for (int k = len - 1; k >= 0; --k) w.letters.push_back(bit((mask >> k) & 1ul));
            try {
                apply_relation(relation, identity_flow(w), EngineKind::RuleTable, gens);
            } catch (const EngineError&) {
                clean = false;
            }
        }
        if (clean) return len;
    }
    throw EngineError(EngineError::Kind::Invariant,
                      "relation " + relation + " does not stabilize by length " +
                          std::to_string(cap));
}

}  // namespace

SuiteResult render_verification_suite(const std::vector<Relation>& relations,
                                  const GeneratorSet& gens, int glyph_scale) {
    SuiteResult suite;
    for (size_t ri = 0; ri < relations.size(); ++ri) {
        const Relation& rel = relations[ri];
        const int len = clean_frontier(rel.word, gens, 8);
        for (const Word& w : enumerate_test_words(WordScheme::BowtieSuite, len)) {
            DiagramSpec spec;
            spec.word = w;
            spec.element = rel.word;
            spec.orientation = Orientation::Columns;
            spec.glyph_scale = glyph_scale;
            RenderResult r = render_trace(spec, gens);
            suite.total_discontinuities += r.stats.intra_tile_discontinuities;
            std::string stem = std::to_string(ri + 1) + "_" + rel.label + "_" + w.str();
            if (w.boundary == Boundary::Bowtie) stem += "-bow";
            suite.diagrams.push_back({std::move(stem), std::move(r)});
        }
    }
    return suite;
}

}  // namespace flowtwist
