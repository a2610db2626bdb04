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

#include <filesystem>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "flowtwist/render.hpp"

namespace fs = std::filesystem;
using namespace flowtwist;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

LocalRule load_rule(const std::string& file, const std::string& builtin) {
    if (!file.empty()) return parse_local_rule(slurp(file), fs::path(file).stem().string());
    return builtin_generator(builtin);
}

GeneratorSet generators(const std::string& c_variant) {
    if (c_variant == "c_broken") return GeneratorSet::with_broken_c();
    if (c_variant.empty() || c_variant == "c") return GeneratorSet::standard();
    throw CLI::ValidationError("--generator-c", "expected c or c_broken");
}

std::vector<Relation> load_relations(const std::string& file) {
    if (file.empty()) return default_relations();
    std::vector<Relation> rels;
    std::istringstream in(slurp(file));
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word, label;
        if (!(ls >> word)) continue;
        if (!(ls >> label)) label = word;
        if (word.find_first_not_of("abc") != std::string::npos)
            throw ParseError(ln, "relations are words over a,b,c");
        rels.push_back({word, label});
    }
    return rels;
}

int cmd_validate(const std::string& rule_file, const std::string& builtin) {
    LocalRule rule = load_rule(rule_file, builtin);
    ValidationReport rep = validate_partition(rule);
    if (rep.ok) {
        std::cout << "ok: every cell of every legal window is rewritten exactly once ("
                  << rule.mappings.size() << " mappings, reach " << rule.reach() << ")\n";
        return 0;
    }
    std::cout << "violations: " << rep.witnesses.size() << "\n";
    for (size_t i = 0; i < rep.witnesses.size() && i < 10; ++i) {
        const auto& w = rep.witnesses[i];
        std::string win;
        for (Symbol s : w.window) win += symbol_char(s);
        std::cout << "  window " << win << " cell " << w.cell_offset << " covered "
                  << w.cover_count << "x\n";
    }
    return 1;
}

int cmd_apply(const std::string& word_text, const std::string& boundary,
              const std::string& element, const std::string& engine_s,
              const std::string& c_variant) {
    Word w = Word::parse(word_text, boundary_from_name(boundary));
    FlowedWord res =
        apply_relation(element, identity_flow(w), engine_from_name(engine_s), generators(c_variant));
    std::cout << flow_to_json(res).dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& relations_file, int max_len, const std::string& engine_s,
               const std::string& c_variant, const std::string& out, int threads) {
    VerifySummary s = verify_embedding(load_relations(relations_file), max_len,
                                       engine_from_name(engine_s), generators(c_variant), threads);
    std::string text = summary_to_json(s).dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        spill(out, text);
    for (const RelationReport& r : s.reports)
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.label << " depth="
                  << (r.read_depth ? std::to_string(*r.read_depth) : "-") << " stab="
                  << (r.stabilization_length ? std::to_string(*r.stabilization_length) : "-")
                  << "\n";
    return s.pass ? 0 : 1;
}

int cmd_compile(const std::string& bij_file, const std::string& builtin, const std::string& out) {
    PrefixBijection bij = bij_file.empty()
                              ? builtin_bijection(builtin)
                              : PrefixBijection::parse(slurp(bij_file),
                                                       fs::path(bij_file).stem().string());
    auto diag = validate_bijection(bij);
    if (!diag.ok) {
        for (const std::string& i : diag.issues) std::cerr << i << "\n";
        return 1;
    }
    LocalRule rule = compile_to_local_rule(bij);
    std::string text = print_local_rule(rule);
    if (out.empty())
        std::cout << text;
    else
        spill(out, text);
    return 0;
}

int cmd_render(const std::string& word_text, const std::string& boundary,
               const std::string& element, const std::string& engine_s,
               const std::string& c_variant, const std::string& orient, int scale,
               const std::string& out) {
    DiagramSpec spec;
    spec.word = Word::parse(word_text, boundary_from_name(boundary));
    spec.element = element;
    spec.engine = engine_from_name(engine_s);
    spec.orientation = orient == "columns" ? Orientation::Columns : Orientation::Rows;
    spec.glyph_scale = scale;
    RenderResult r = render_trace(spec, generators(c_variant));
    spill(out, r.svg);
    std::cout << "rows: " << r.stats.piece_counts.size()
              << " intra-tile discontinuities: " << r.stats.intra_tile_discontinuities << "\n";
    return 0;
}

int cmd_suite(const std::string& relations_file, const std::string& out_dir, int scale) {
    fs::create_directories(out_dir);
    SuiteResult suite = render_verification_suite(load_relations(relations_file),
                                              GeneratorSet::standard(), scale);
    for (const SuiteDiagram& d : suite.diagrams)
        spill((fs::path(out_dir) / (d.name + ".svg")).string(), d.result.svg);
    std::cout << "diagrams: " << suite.diagrams.size()
              << " intra-tile discontinuities: " << suite.total_discontinuities << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"piecewise-linear local rules on the 0,1,2 vertex shift"};
    app.require_subcommand(1);

    std::string rule_file, builtin = "a", word, boundary = "circular", element;
    std::string engine_s = "rule-table", c_variant = "c", relations_file, out, orient = "rows";
    std::string bij_file, bij_builtin = "a";
    int max_len = 11, threads = 0, scale = 36;

    auto* validate = app.add_subcommand("validate", "exactly-once coverage of a local rule");
    validate->add_option("--rule", rule_file, "rule file");
    validate->add_option("--builtin", builtin, "a|b|c|c_broken_rule");

    auto* apply = app.add_subcommand("apply", "apply a generator sequence to a word");
    apply->add_option("--word", word, "e.g. 2001, 2013, 201~")->required();
    apply->add_option("--boundary", boundary, "circular|sentinel|bowtie");
    apply->add_option("--element", element, "word over a,b,c")->required();
    apply->add_option("--engine", engine_s, "rule-table|bijection");
    apply->add_option("--generator-c", c_variant, "c|c_broken");

    auto* verify = app.add_subcommand("verify", "check the defining relations");
    verify->add_option("--relations", relations_file, "file with one relation per line");
    verify->add_option("--max-len", max_len, "maximal word length, anchor included");
    verify->add_option("--engine", engine_s, "rule-table|bijection");
    verify->add_option("--generator-c", c_variant, "c|c_broken");
    verify->add_option("--out", out, "report path (default stdout)");
    verify->add_option("--threads", threads, "parallelism cap (0 = auto)");

    auto* compile = app.add_subcommand("compile", "compile a prefix bijection to a local rule");
    compile->add_option("--bijection", bij_file, "file with lines p -> q");
    compile->add_option("--builtin", bij_builtin, "a|b|c|c_broken");
    compile->add_option("--out", out, "rule file path (default stdout)");

    auto* render = app.add_subcommand("render", "draw a verification trace");
    render->add_option("--word", word)->required();
    render->add_option("--boundary", boundary, "circular|sentinel|bowtie");
    render->add_option("--element", element)->required();
    render->add_option("--engine", engine_s, "rule-table|bijection");
    render->add_option("--generator-c", c_variant, "c|c_broken");
    render->add_option("--orientation", orient, "rows|columns");
    render->add_option("--scale", scale, "pixels per unit");
    render->add_option("--out", out, "SVG path")->required();

    auto* suite = app.add_subcommand("suite", "emit the full diagram suite");
    suite->add_option("--relations", relations_file, "file with one relation per line");
    suite->add_option("--out", out, "output directory")->required();
    suite->add_option("--scale", scale, "pixels per unit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // 0 covers --help and friends
    }

    try {
        if (validate->parsed()) return cmd_validate(rule_file, builtin);
        if (apply->parsed()) return cmd_apply(word, boundary, element, engine_s, c_variant);
        if (verify->parsed())
            return cmd_verify(relations_file, max_len, engine_s, c_variant, out, threads);
        if (compile->parsed()) return cmd_compile(bij_file, bij_builtin, out);
        if (render->parsed())
            return cmd_render(word, boundary, element, engine_s, c_variant, orient, scale, out);
        if (suite->parsed()) return cmd_suite(relations_file, out, scale);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const EngineError& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
