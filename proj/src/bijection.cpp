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

#include "flowtwist/bijection.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rewrite_internal.hpp"

namespace flowtwist {

int PrefixBijection::max_domain_len() const {
    size_t m = 0;
    for (const auto& [p, q] : pairs) m = std::max(m, p.size());
    return int(m);
}

PrefixBijection PrefixBijection::parse(const std::string& text, const std::string& name) {
    PrefixBijection bij;
    bij.name = name;
    std::istringstream in(text);
    std::string raw;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        std::string line = raw.substr(0, raw.find('#'));
        auto arrow = line.find("->");
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (arrow == std::string::npos) throw ParseError(ln, "expected p -> q");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string p = trim(line.substr(0, arrow)), q = trim(line.substr(arrow + 2));
        for (const std::string& s : {p, q})
            if (s.find_first_not_of("01") != std::string::npos)
                throw ParseError(ln, "code words are over 0,1");
        if (p.empty() || q.empty()) throw ParseError(ln, "empty code word");
        bij.pairs.emplace_back(p, q);
    }
    return bij;
}

std::string PrefixBijection::print() const {
    std::string out;
    for (const auto& [p, q] : pairs) out += p + " -> " + q + "\n";
    return out;
}

PrefixBijection builtin_bijection(const std::string& name) {
    PrefixBijection bij;
    bij.name = name;
    if (name == "a")
        bij.pairs = {{"00", "01"}, {"01", "00"}, {"1", "1"}};
    else if (name == "b")
        bij.pairs = {{"01", "10"}, {"10", "11"}, {"11", "01"}, {"00", "00"}};
    else if (name == "c")
        bij.pairs = {{"00", "1"}, {"1", "00"}, {"01", "01"}};
    else if (name == "c_broken")
        bij.pairs = {{"000", "10"}, {"001", "11"}, {"1", "00"}, {"01", "01"}};
    else
        throw std::invalid_argument("unknown bijection: " + name);
    return bij;
}

BijectionDiagnostics validate_bijection(const PrefixBijection& bij) {
    BijectionDiagnostics d;
    auto check_code = [&](const char* side, const std::vector<std::string>& words) {
        std::set<std::string> seen;
        for (const std::string& w : words)
            if (!seen.insert(w).second)
                d.issues.push_back(std::string(side) + ": duplicate word " + w);
        for (const std::string& x : words)
            for (const std::string& y : words)
                if (x != y && y.compare(0, x.size(), x) == 0)
                    d.issues.push_back(std::string(side) + ": " + x + " is a prefix of " + y);
        Rat kraft = 0;
        for (const std::string& w : words) kraft += Rat(1, Rat::value_type(1) << w.size());
        if (kraft != 1)
            d.issues.push_back(std::string(side) + ": Kraft sum " + rat_str(kraft) + " != 1");
    };
    std::vector<std::string> dom, ran;
    for (const auto& [p, q] : bij.pairs) dom.push_back(p), ran.push_back(q);
    check_code("domain", dom);
    check_code("range", ran);
    d.ok = d.issues.empty();
    return d;
}

std::string finite_support_image(const PrefixBijection& bij, const std::string& w) {
    const std::string padded = w + std::string(bij.max_domain_len(), '0');
    for (const auto& [p, q] : bij.pairs) {
        if (padded.compare(0, p.size(), p) == 0) {
            std::string res = q + (p.size() < w.size() ? w.substr(p.size()) : std::string());
            while (!res.empty() && res.back() == '0') res.pop_back();
            return res;
        }
    }
    throw EngineError(EngineError::Kind::Invariant, "domain code is not complete");
}

namespace {

std::vector<Symbol> anchored_out(const std::string& bits) {
    std::vector<Symbol> out{Symbol::S2};
    for (char c : bits) out.push_back(bit(c == '1'));
    return out;
}

std::string dict_range(const PrefixBijection& bij, const std::string& p) {
    for (const auto& [dp, dq] : bij.pairs)
        if (dp == p) return dq;
    throw EngineError(EngineError::Kind::Invariant, "unknown domain word " + p);
}

}  // namespace

FlowedWord anchored_apply(const PrefixBijection& bij, const FlowedWord& fw, ApplyInfo* info) {
    fw.check();
    const auto& letters = fw.word.letters;
    const long n = long(letters.size());
    if (letters.empty() || letters.front() != Symbol::S2)
        throw EngineError(EngineError::Kind::IllegalWord, "apply requires an anchored word");

    std::vector<std::tuple<long, int, std::vector<Symbol>>> blocks;
    long i = 0;
    while (i < n) {
        long j = i + 1;
        std::string bits;
        while (j < n && letters[j] != Symbol::S2) {
            bits += symbol_char(letters[j]);
            ++j;
        }
        const bool last_block = (j == n);
        std::string p;
        bool have_p = false;
        for (const auto& [dp, dq] : bij.pairs) {
            if (bits.compare(0, dp.size(), dp) == 0 && dp.size() <= bits.size()) {
                p = dp;
                have_p = true;
                break;
            }
        }
        bool contextual;
        if (have_p && p.size() < bits.size()) {
            contextual = true;
        } else if (!last_block || fw.word.boundary == Boundary::Circular) {
            contextual = false;  // the block ends at an anchor
        } else if (fw.word.boundary == Boundary::Bowtie) {
            if (have_p) {
                contextual = true;  // unknown continuation begins with a bit
            } else {
                throw EngineError(EngineError::Kind::BowtieDependent,
                                  "block 2" + bits + " too short to pick a rewrite");
            }
        } else if (have_p && dict_range(bij, p) == finite_support_image(bij, bits)) {
            contextual = true;  // both branches rewrite the block the same way
        } else {
            throw EngineError(EngineError::Kind::SentinelRead,
                              "block 2" + bits + " needs the continuation");
        }
        if (contextual) {
            blocks.emplace_back(i, int(1 + p.size()), anchored_out(dict_range(bij, p)));
            for (long k = i + 1 + long(p.size()); k < j; ++k)
                blocks.emplace_back(k, 1, std::vector<Symbol>{letters[k]});
        } else {
            blocks.emplace_back(i, int(j - i), anchored_out(finite_support_image(bij, bits)));
        }
        i = j;
    }
    return detail::rewrite_blocks(fw, blocks, info);
}

// ---------------------------------------------------------------------------
// compilation into a local rule

namespace {

Pattern lit_pattern(const std::string& head, const std::string& bits) {
    Pattern p;
    for (char c : head + bits) p.push_back(PatternToken::lit(symbol_from_char(c)));
    return p;
}

}  // namespace

LocalRule compile_to_local_rule(const PrefixBijection& bij) {
    auto diag = validate_bijection(bij);
    if (!diag.ok)
        throw EngineError(EngineError::Kind::Invariant,
                          "not a prefix-code bijection: " + diag.issues.front());
    const int m = bij.max_domain_len();
    LocalRule rule;
    rule.name = bij.name.empty() ? "compiled" : bij.name + "_rule";
    auto emit = [&](Mapping mp) {
        if (std::find(rule.mappings.begin(), rule.mappings.end(), mp) == rule.mappings.end())
            rule.mappings.push_back(std::move(mp));
    };

    // rewrites rooted at an anchor: 2p followed by a bit swaps in 2q; 2p
    // followed by an anchor falls back to the finite-support image
    for (const auto& [p, q] : bij.pairs) {
        const std::string fallback = finite_support_image(bij, p);
        const bool closed = p.back() != '0';  // 2p2 is a legal factor
        if (closed && fallback == q) {
            emit({{}, lit_pattern("2", p), {}, lit_pattern("2", q)});
            continue;
        }
        Mapping by_bit{{}, lit_pattern("2", p), {PatternToken::var('A')}, lit_pattern("2", q)};
        if (!closed) {
            by_bit.w.clear();  // an anchor can never follow, context is moot
        } else {
            emit({{}, lit_pattern("2", p), {PatternToken::lit(Symbol::S2)},
                  lit_pattern("2", fallback)});
        }
        emit(std::move(by_bit));
    }
    // blocks shorter than every domain word, necessarily anchor-terminated
    std::set<std::string> shorts;
    for (const auto& [p, q] : bij.pairs)
        for (size_t k = 0; k < p.size(); ++k) shorts.insert(p.substr(0, k));
    for (const std::string& w : shorts) {
        bool dominated = false;
        for (const auto& [p, q] : bij.pairs)
            if (w.compare(0, p.size(), p) == 0 && p.size() <= w.size()) dominated = true;
        if (dominated || (!w.empty() && w.back() == '0')) continue;
        emit({{}, lit_pattern("2", w), {PatternToken::lit(Symbol::S2)},
              lit_pattern("2", finite_support_image(bij, w))});
    }
    // identity on bits beyond any rewritten region: either the previous m
    // letters are all bits, or an anchor sits close behind with a completed
    // domain word between
    {
        Mapping far;
        for (int k = 0; k < m; ++k) far.u.push_back(PatternToken::var(char('A' + k)));
        far.v = {PatternToken::var('Z')};
        far.out = {PatternToken::var('Z')};
        emit(std::move(far));
    }
    for (int j = 2; j <= m; ++j) {
        for (unsigned mask = 0; mask < (1u << (j - 1)); ++mask) {
            std::string bits;
            for (int k = j - 2; k >= 0; --k) bits += ((mask >> k) & 1u) ? '1' : '0';
            bool completed = false;
            for (const auto& [p, q] : bij.pairs)
                if (bits.compare(0, p.size(), p) == 0 && p.size() <= bits.size())
                    completed = true;
            if (!completed) continue;
            Mapping mp{lit_pattern("2", bits), {PatternToken::var('Z')}, {},
                       {PatternToken::var('Z')}};
            emit(std::move(mp));
        }
    }

    auto report = validate_partition(rule);
    if (!report.ok) {
        std::string msg = "compiled rule fails exactly-once coverage;";
        for (size_t i = 0; i < report.witnesses.size() && i < 3; ++i) {
            const auto& w = report.witnesses[i];
            msg += " window ";
            for (Symbol s : w.window) msg += symbol_char(s);
            msg += " covered " + std::to_string(w.cover_count) + "x;";
        }
        throw EngineError(EngineError::Kind::Invariant, msg);
    }
    return rule;
}

LocalRule builtin_generator(const std::string& name) {
    if (name == "a")
        return parse_local_rule(
            "AB(G):G\n(2)2:201\n(200):201\n(201)A:200\n(201)2:2\n(21)2:21\n(21A):21A\n", "a");
    if (name == "b")
        return parse_local_rule(
            "AB(G):G\n(2)2:2\n(200):200\n(201)A:210\n(201)2:21\n(21)2:211\n(210)A:211\n(211):201\n",
            "b");
    if (name == "c")
        return parse_local_rule(
            "A0(B):B\n1(A):A\n(2)2:21\n(200):21\n(201):201\n(21)A:200\n(21)2:2\n", "c");
    if (name == "c_broken_rule") return compile_to_local_rule(builtin_bijection("c_broken"));
    throw std::invalid_argument("unknown generator: " + name);
}

}  // namespace flowtwist
