// cli_app.hpp -- the command-line surface. Kept header-side so the whole
// surface is unit-testable in process; tools/main.cpp only forwards argv.
//
// Exit codes: 0 property holds (or success), 1 property fails, 2 usage or
// parse error, 3 resource limit.

#pragma once

#include <fstream>
#include <future>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "convex/cfg.hpp"
#include "convex/decide.hpp"
#include "convex/families.hpp"
#include "convex/format.hpp"
#include "convex/nfa_freeness.hpp"
#include "convex/oracle.hpp"

namespace convex::cli {

namespace detail {

struct Report {
    std::vector<std::pair<std::string, std::string>> lines;

    void add(const std::string& k, const std::string& v) { lines.emplace_back(k, v); }
    void add(const std::string& k, long long v) { lines.emplace_back(k, std::to_string(v)); }
    void add(const std::string& k, bool v) { lines.emplace_back(k, v ? "true" : "false"); }

    void render_text(std::ostream& out) const {
        for (const auto& [k, v] : lines) out << k << ": " << v << "\n";
    }
    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : lines) {
            if (v == "true" || v == "false") {
                j[k] = v == "true";
            } else {
                try {
                    size_t pos = 0;
                    long long num = std::stoll(v, &pos);
                    if (pos == v.size()) {
                        j[k] = num;
                        continue;
                    }
                } catch (...) {
                }
                j[k] = v;
            }
        }
        return j;
    }
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

inline void add_witness_lines(Report& rep, const Alphabet& a, const Witness& w) {
    if (w.u) rep.add("witness.u", render_word(a, *w.u));
    rep.add("witness.v", render_word(a, w.v));
    rep.add("witness.w", render_word(a, w.w));
    rep.add("witness.size", static_cast<long long>(w.w.size()));
}

struct FileOutcome {
    int exit_code = 0;
    Report report;
};

/// Grammar files have productions, automaton files start with a type line.
inline bool looks_like_grammar(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        auto toks = convex::detail::split_ws(raw);
        if (toks.empty()) continue;
        return toks[0] != "type:";
    }
    return false;
}

/// check/witness on one input file.
inline FileOutcome run_check_one(const std::string& path, const PropertyQuery& q,
                                 bool with_witness, std::ostream& err) {
    FileOutcome out;
    std::string text = read_file(path);
    out.report.add("file", path);
    out.report.add("property", property_name(q));

    if (looks_like_grammar(text)) {
        // Context-free input: only subword-freeness is decidable.
        if (!(q.relation == Relation::Subword && q.mode == Mode::Free && !q.converse))
            throw ParseError(0, "grammar inputs support the subword-free property only");
        Cfg g = parse_cfg(text);
        CfgSubwordResult r = cfg_is_subword_free(g);
        out.report.add("holds", r.subword_free);
        out.report.add("language.infinite", r.infinite);
        if (!r.subword_free && with_witness && r.witness) {
            Alphabet t = g.terminal_alphabet();
            out.report.add("witness.v", render_word(t, r.witness->first));
            out.report.add("witness.w", render_word(t, r.witness->second));
            out.report.add("witness.size", static_cast<long long>(r.witness->second.size()));
        }
        out.exit_code = r.subword_free ? 0 : 1;
        return out;
    }

    Automaton aut = parse_automaton(text);

    if (std::holds_alternative<Nfa>(aut) && q.mode == Mode::Free && !q.converse) {
        // Freeness decides directly on the NFA.
        Nfa m = std::get<Nfa>(aut);
        if (m.has_epsilon()) m = remove_epsilon(m);
        NfaFreeResult r = nfa_is_free(m, q.relation);
        out.report.add("holds", r.free);
        if (!r.free && with_witness && r.witness) {
            // Re-verify against the definitions with direct NFA membership.
            const Witness& wit = *r.witness;
            bool sound = wit.v != wit.w && relation_holds(q.relation, wit.v, wit.w) &&
                         nfa_accepts(m, wit.v) && nfa_accepts(m, wit.w);
            if (!sound) throw std::logic_error("internal error: freeness witness failed verification");
            add_witness_lines(out.report, m.alphabet, wit);
        }
        out.report.add("checker.states", static_cast<long long>(r.parts.product.states));
        out.report.add("checker.transitions", static_cast<long long>(r.parts.product.transitions.size()));
        out.exit_code = r.free ? 0 : 1;
        return out;
    }

    Dfa d;
    if (std::holds_alternative<Dfa>(aut)) {
        d = std::get<Dfa>(aut);
    } else {
        err << "note: determinizing NFA input for a convexity/closure property; "
               "this may be exponential in the worst case\n";
        d = determinize(std::get<Nfa>(aut));
    }
    Verdict v = decide(d, q, with_witness);
    if (v.outcome == Outcome::ResourceLimitHit) {
        out.report.add("error", std::string("resource-limit"));
        out.exit_code = 3;
        return out;
    }
    out.report.add("holds", v.holds());
    if (!v.holds() && with_witness && v.witness) {
        if (!verify_witness(d, q, *v.witness))
            throw std::logic_error("internal error: extracted witness failed verification");
        add_witness_lines(out.report, d.alphabet, *v.witness);
    }
    out.report.add("checker.states", v.stats.formula_states);
    out.report.add("checker.transitions", v.stats.formula_transitions);
    out.report.add("checker.reachable_states", v.stats.reachable_states);
    out.exit_code = v.holds() ? 0 : 1;
    return out;
}

}  // namespace detail

/// Runs the CLI; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"decision tool for convexity, closure and freeness properties of regular languages"};
    app.require_subcommand(1);

    std::string property, family, out_path, dot_path, format = "text", max_len_text;
    std::vector<std::string> files;
    int gen_n = 0;
    int jobs = 1;
    long long budget = kDefaultOracleBudget;
    bool with_witness = false;

    auto add_property_opt = [&](CLI::App* cmd) {
        cmd->add_option("--property", property, "property, e.g. prefix-convex, factor-free, ideal")
            ->required();
    };
    auto add_files_opt = [&](CLI::App* cmd, bool many) {
        auto* o = cmd->add_option("files", files, "automaton file(s)")->required();
        if (!many) o->expected(1);
    };

    CLI::App* check = app.add_subcommand("check", "decide a property of an automaton's language");
    add_property_opt(check);
    add_files_opt(check, true);
    check->add_flag("--witness", with_witness, "attach a minimal witness on failure");
    check->add_option("--format", format, "text or json");
    check->add_option("--dot", dot_path, "export the parsed automaton as DOT");
    check->add_option("--jobs", jobs, "parallelism across input files");

    CLI::App* witness_cmd = app.add_subcommand("witness", "print the minimal witness for a failing property");
    add_property_opt(witness_cmd);
    add_files_opt(witness_cmd, false);
    witness_cmd->add_option("--format", format, "text or json");

    CLI::App* almost = app.add_subcommand("almost", "decide the almost variant of a property");
    add_property_opt(almost);
    add_files_opt(almost, false);
    almost->add_option("--format", format, "text or json");

    CLI::App* gen = app.add_subcommand("gen", "generate a named hard family automaton");
    gen->add_option("--family", family, "family name")->required();
    gen->add_option("--n", gen_n, "family parameter")->required();
    gen->add_option("--out", out_path, "output path (stdout when omitted)");
    gen->add_option("--dot", dot_path, "also export the automaton as DOT");
    gen->add_option("--format", format, "text or json (report, with --out only)");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force enumeration check");
    add_property_opt(oracle_cmd);
    add_files_opt(oracle_cmd, false);
    oracle_cmd->add_option("--max-len", max_len_text, "enumeration horizon (default: the witness bound)");
    oracle_cmd->add_option("--budget", budget, "word enumeration budget");
    oracle_cmd->add_option("--format", format, "text or json");

    CLI::App* stats = app.add_subcommand("stats", "full checker layout sizes vs. the closed forms");
    add_property_opt(stats);
    add_files_opt(stats, false);
    stats->add_option("--format", format, "text or json");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends.
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    auto emit = [&](const std::vector<detail::Report>& reports) {
        if (format == "json") {
            if (reports.size() == 1) {
                out << reports[0].to_json().dump(2) << "\n";
            } else {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (const auto& r : reports) arr.push_back(r.to_json());
                out << arr.dump(2) << "\n";
            }
        } else {
            for (size_t i = 0; i < reports.size(); ++i) {
                if (i) out << "\n";
                reports[i].render_text(out);
            }
        }
    };

    try {
        if (check->parsed() || witness_cmd->parsed()) {
            bool want_witness = with_witness || witness_cmd->parsed();
            auto q = parse_property(property);
            if (!q || q->almost) {
                err << "error: unknown or unsupported property '" << property
                    << "' (use the almost subcommand for almost variants)\n";
                return 2;
            }
            if (!dot_path.empty())
                detail::write_file(dot_path, to_dot(parse_automaton(detail::read_file(files[0]))));
            std::vector<detail::FileOutcome> results(files.size());
            if (jobs > 1 && files.size() > 1) {
                std::vector<std::future<detail::FileOutcome>> futs;
                for (const auto& f : files)
                    futs.push_back(std::async(std::launch::async, [&, f] {
                        std::ostringstream local_err;
                        return detail::run_check_one(f, *q, want_witness, local_err);
                    }));
                for (size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
            } else {
                for (size_t i = 0; i < files.size(); ++i)
                    results[i] = detail::run_check_one(files[i], *q, want_witness, err);
            }
            std::vector<detail::Report> reports;
            int code = 0;
            for (auto& r : results) {
                reports.push_back(std::move(r.report));
                code = std::max(code, r.exit_code);
            }
            emit(reports);
            return code;
        }

        if (almost->parsed()) {
            auto q = parse_property(property);
            if (!q) {
                err << "error: unknown property '" << property << "'\n";
                return 2;
            }
            PropertyQuery base = *q;
            base.almost = false;
            Dfa d;
            Automaton aut = parse_automaton(detail::read_file(files[0]));
            if (std::holds_alternative<Dfa>(aut))
                d = std::get<Dfa>(aut);
            else
                d = determinize(std::get<Nfa>(aut));
            AlmostVerdict v = decide_almost(d, base);
            detail::Report rep;
            PropertyQuery shown = base;
            shown.almost = true;
            rep.add("property", property_name(shown));
            rep.add("verdict", std::string(to_string(v)));
            emit({rep});
            return v == AlmostVerdict::Holds ? 0 : 1;
        }

        if (gen->parsed()) {
            Automaton aut = make_family({family, gen_n});
            std::string text = serialize(aut);
            if (!out_path.empty())
                detail::write_file(out_path, text);
            else
                out << text;
            if (!dot_path.empty()) detail::write_file(dot_path, to_dot(aut));
            int states = std::holds_alternative<Dfa>(aut) ? std::get<Dfa>(aut).states
                                                          : std::get<Nfa>(aut).states;
            detail::Report rep;
            rep.add("family", family);
            rep.add("n", static_cast<long long>(gen_n));
            rep.add("states", static_cast<long long>(states));
            if (!out_path.empty()) rep.add("file", out_path);
            if (!out_path.empty())
                emit({rep});
            else
                rep.render_text(err);  // keep stdout machine-readable
            return 0;
        }

        if (oracle_cmd->parsed()) {
            auto q = parse_property(property);
            if (!q || q->almost) {
                err << "error: the oracle decides non-almost properties\n";
                return 2;
            }
            Automaton aut = parse_automaton(detail::read_file(files[0]));
            int states = std::holds_alternative<Dfa>(aut) ? std::get<Dfa>(aut).states
                                                          : std::get<Nfa>(aut).states;
            int max_len;
            if (max_len_text.empty()) {
                long long b = witness_bound(states, q->relation, q->mode);
                max_len = static_cast<int>(std::min<long long>(b, 1000));
            } else {
                max_len = std::stoi(max_len_text);
            }
            OracleResult r = std::holds_alternative<Dfa>(aut)
                                 ? brute_force_minimal_witness(std::get<Dfa>(aut), *q, max_len, budget)
                                 : brute_force_minimal_witness(std::get<Nfa>(aut), *q, max_len, budget);
            detail::Report rep;
            rep.add("property", property_name(*q));
            rep.add("oracle.max_len", static_cast<long long>(max_len));
            if (r.outcome == OracleOutcome::ResourceLimitHit) {
                rep.add("error", std::string("resource-limit"));
                rep.add("oracle.searched_len", static_cast<long long>(r.searched_len));
                emit({rep});
                return 3;
            }
            bool holds = r.outcome == OracleOutcome::NoWitness;
            rep.add("holds", holds);
            if (holds) rep.add("one_sided", true);
            if (!holds && r.witness) {
                const Alphabet& a = std::holds_alternative<Dfa>(aut) ? std::get<Dfa>(aut).alphabet
                                                                     : std::get<Nfa>(aut).alphabet;
                detail::add_witness_lines(rep, a, *r.witness);
            }
            emit({rep});
            return holds ? 0 : 1;
        }

        if (stats->parsed()) {
            auto q = parse_property(property);
            if (!q || q->almost) {
                err << "error: stats needs a non-almost property\n";
                return 2;
            }
            Automaton aut = parse_automaton(detail::read_file(files[0]));
            if (!std::holds_alternative<Dfa>(aut)) {
                err << "error: stats requires a dfa input\n";
                return 2;
            }
            const Dfa& d = std::get<Dfa>(aut);
            Checker ck = build_checker(d, *q, Layout::Full);
            CheckerSize fs = checker_size_formula(d.states, d.alphabet.size(), q->relation, q->mode);
            QuotedSizes quoted = checker_quoted_deviation(d.states, d.alphabet.size(), q->relation, q->mode);
            detail::Report rep;
            rep.add("property", property_name(*q));
            rep.add("n", static_cast<long long>(d.states));
            rep.add("sigma", static_cast<long long>(d.alphabet.size()));
            bool mismatch = false;
            auto one = [&](const char* what, long long measured, long long formula,
                           std::optional<long long> quoted_val) {
                rep.add(std::string("checker.") + what + ".measured", measured);
                rep.add(std::string("checker.") + what + ".formula", formula);
                std::string verdict = measured == formula ? (quoted_val ? "NOTED" : "MATCH") : "MISMATCH";
                if (measured != formula) mismatch = true;
                rep.add(std::string("checker.") + what, verdict);
                if (quoted_val)
                    rep.add(std::string("checker.") + what + ".quoted", *quoted_val);
            };
            one("states", ck.layout_states, fs.states, quoted.states);
            one("transitions", ck.layout_transitions, fs.transitions, quoted.transitions);
            if (q->mode == Mode::Free)
                rep.add("note", std::string("measured before the strict-containment bit"));
            emit({rep});
            return mismatch ? 1 : 0;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceLimit& e) {
        err << "error: resource-limit: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace convex::cli
