#include "ffqe/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ffqe/engine.hpp"
#include "ffqe/parser.hpp"
#include "ffqe/s2vd.hpp"

namespace ffqe {

namespace {

using nlohmann::json;

struct CliConfig {
    uint32_t q = 0;
    std::string modulus;
    std::string order;
    std::string engine = "groebner";
    bool simplify = false;
    bool cnf = false;
    bool block_order = false;
    bool trace = false;
    bool json_out = false;
    double budget_secs = 0.0;
    uint64_t max_basis = 0;
    uint64_t bound = kDefaultEnumerationBound;
};

const FieldSpec& field_from_config(const CliConfig& cfg) {
    if (cfg.q < 2) throw SemanticError("--field must be a prime power >= 2");
    // factor q = p^r
    uint32_t q = cfg.q;
    uint32_t p = 0;
    for (uint32_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q; // prime
    int r = 0;
    uint32_t t = q;
    while (t > 1) {
        if (t % p != 0) throw SemanticError(std::to_string(cfg.q) + " is not a prime power");
        t /= p;
        ++r;
    }
    std::optional<std::vector<int>> modulus;
    if (!cfg.modulus.empty()) {
        // parse the modulus as a polynomial in the generator over F_p
        const FieldSpec& fp = make_field((int)p, 1);
        auto ring = make_ring(fp, {"w"});
        Polynomial m = parse_polynomial(ring, cfg.modulus);
        std::vector<int> coeffs(r + 1, 0);
        for (const auto& term : m.terms()) {
            uint32_t e = term.first.exps[0];
            if (e > (uint32_t)r) throw SemanticError("modulus degree exceeds the extension degree");
            coeffs[e] = (int)term.second;
        }
        modulus = coeffs;
    }
    return make_field((int)p, r, modulus);
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',' || c == '>' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

EngineOptions engine_options(const CliConfig& cfg) {
    EngineOptions opts;
    opts.simplify = cfg.simplify;
    opts.cnf = cfg.cnf;
    opts.collect_trace = cfg.trace;
    opts.enumeration_bound = cfg.bound;
    if (cfg.block_order) opts.order_kind = MonomialOrder::Kind::Block;
    double secs = cfg.budget_secs;
    if (secs <= 0.0) {
        if (const char* env = std::getenv("FFQE_BUDGET_SECS")) secs = std::atof(env);
    }
    if (secs > 0.0) opts.budget = Budget::with_seconds(secs);
    if (cfg.max_basis) opts.budget.max_basis_size = cfg.max_basis;
    if (!cfg.order.empty()) opts.order_override = split_names(cfg.order);
    return opts;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SemanticError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Clause list view of a CNF-shaped formula: one vector of literal strings per
// clause.
std::optional<std::vector<std::vector<std::string>>> clause_view(const FormulaPtr& f) {
    auto literal = [](const FormulaPtr& g) -> std::optional<std::string> {
        if (!g->is_atom()) return std::nullopt;
        std::string p = g->atom_poly() ? g->atom_poly()->str() : term_str(g->atom_term());
        return p + (g->kind() == Formula::Kind::Atom ? " = 0" : " != 0");
    };
    std::vector<std::vector<std::string>> clauses;
    auto add_clause = [&](const FormulaPtr& g) -> bool {
        if (auto l = literal(g)) {
            clauses.push_back({*l});
            return true;
        }
        if (g->kind() != Formula::Kind::Or) return false;
        std::vector<std::string> cl;
        for (const auto& k : g->kids()) {
            auto l = literal(k);
            if (!l) return false;
            cl.push_back(*l);
        }
        clauses.push_back(std::move(cl));
        return true;
    };
    if (f->kind() == Formula::Kind::True || f->kind() == Formula::Kind::False)
        return clauses; // empty list; "true" has no clauses, "false" is caught by text
    if (add_clause(f)) return clauses;
    if (f->kind() != Formula::Kind::And) return std::nullopt;
    clauses.clear();
    for (const auto& k : f->kids())
        if (!add_clause(k)) return std::nullopt;
    return clauses;
}

json trace_json(const QETrace& tr) {
    json rounds = json::array();
    for (const auto& r : tr.rounds) {
        json bases = json::array();
        for (const auto& b : r.bases) {
            json one = json::array();
            for (const auto& g : b) one.push_back(g.str());
            bases.push_back(std::move(one));
        }
        rounds.push_back({{"quantifier", r.quantifier == Quantifier::Exists ? "exists" : "forall"},
                          {"block_vars", r.block_vars},
                          {"fresh_negation", r.fresh_negation},
                          {"fresh_disjunction", r.fresh_disjunction},
                          {"matrix_size", r.matrix_size_in},
                          {"bases", std::move(bases)},
                          {"ms", r.millis}});
    }
    return {{"negation_wrapped", tr.negation_wrapped}, {"rounds", std::move(rounds)}};
}

void print_trace(const QETrace& tr, std::ostream& err) {
    err << "trace: negation_wrapped=" << (tr.negation_wrapped ? "yes" : "no") << "\n";
    int n = 1;
    for (const auto& r : tr.rounds) {
        err << "round " << n++ << ": "
            << (r.quantifier == Quantifier::Exists ? "exists" : "forall")
            << " block=" << r.block_vars << " fresh_u=" << r.fresh_negation
            << " fresh_v=" << r.fresh_disjunction << " matrix_nodes=" << r.matrix_size_in
            << " time_ms=" << (long long)r.millis << "\n";
        for (size_t i = 0; i < r.bases.size(); ++i) {
            err << "  basis[" << i << "]:";
            for (const auto& g : r.bases[i]) err << " " << g.str() << ";";
            err << "\n";
        }
    }
}

json field_json(const FieldSpec& f) {
    return {{"p", f.p()}, {"r", f.r()}, {"q", f.q()}};
}

int run_qe(const CliConfig& cfg, const std::string& file, std::ostream& out,
           std::ostream& err) {
    const FieldSpec& field = field_from_config(cfg);
    FormulaPtr f = parse_formula(read_file(file), field);
    FormulaPtr result;
    std::optional<QETrace> trace;
    if (cfg.engine == "oracle") {
        result = naive_qe_formula(realization(f, field, cfg.bound));
    } else {
        QEOutput qout = qe(f, engine_options(cfg));
        result = qout.formula;
        trace = qout.trace;
    }
    if (trace) print_trace(*trace, err);
    if (cfg.json_out) {
        json j{{"status", "ok"},
               {"field", field_json(field)},
               {"text", formula_str(result)}};
        if (auto clauses = clause_view(result)) j["clauses"] = *clauses;
        if (trace) j["stats"] = trace_json(*trace);
        out << j.dump(2) << "\n";
    } else {
        out << formula_str(result) << "\n";
    }
    return 0;
}

int run_decide(const CliConfig& cfg, const std::string& file, std::ostream& out,
               std::ostream& err) {
    const FieldSpec& field = field_from_config(cfg);
    FormulaPtr f = parse_formula(read_file(file), field);
    bool value;
    std::optional<QETrace> trace;
    if (cfg.engine == "oracle") {
        if (!free_variables(f).empty())
            throw SemanticError("decide requires a closed formula");
        value = realization(f, field, cfg.bound).count() > 0;
    } else {
        EngineOptions opts = engine_options(cfg);
        if (!free_variables(f).empty())
            throw SemanticError("decide requires a closed formula");
        QEOutput qout = qe(f, opts);
        trace = qout.trace;
        value = eval_qfree(qout.formula, {});
    }
    if (trace) print_trace(*trace, err);
    if (cfg.json_out)
        out << json{{"status", "ok"}, {"field", field_json(field)}, {"result", value}}.dump(2)
            << "\n";
    else
        out << (value ? "true" : "false") << "\n";
    return 0;
}

int run_witness(const CliConfig& cfg, const std::string& file, std::ostream& out,
                std::ostream&) {
    const FieldSpec& field = field_from_config(cfg);
    FormulaPtr f = parse_formula(read_file(file), field);
    auto w = witness(f, engine_options(cfg));
    if (cfg.json_out) {
        json j{{"status", "ok"}, {"field", field_json(field)}};
        if (w) {
            json a = json::object();
            for (const auto& [k, v] : *w) a[k] = v.str();
            j["witness"] = std::move(a);
        } else {
            j["witness"] = nullptr;
        }
        out << j.dump(2) << "\n";
    } else if (w) {
        bool first = true;
        for (const auto& [k, v] : *w) {
            out << (first ? "" : ", ") << k << " = " << v.str();
            first = false;
        }
        out << "\n";
    } else {
        out << "none\n";
    }
    return 0;
}

int run_gb(const CliConfig& cfg, const std::string& polys, const std::string& vars,
           bool with_field_polys, std::ostream& out, std::ostream&) {
    const FieldSpec& field = field_from_config(cfg);
    std::vector<std::string> names = split_names(vars);
    if (names.empty()) throw SemanticError("--vars must list the variables, highest first");
    MonomialOrder order = MonomialOrder::lex();
    RingPtr ring = make_ring(field, names, order);
    std::vector<Polynomial> gens;
    std::string cur;
    auto flush = [&] {
        std::string text = cur;
        cur.clear();
        if (text.find_first_not_of(" \t\r\n") == std::string::npos) return;
        gens.push_back(parse_polynomial(ring, text));
    };
    for (char c : polys) {
        if (c == ';')
            flush();
        else
            cur += c;
    }
    flush();
    Ideal J(ring, std::move(gens));
    if (with_field_polys) J = add_field_polynomials(J, names);
    EngineOptions opts = engine_options(cfg);
    GroebnerBasis G = buchberger(J, &opts.budget);
    if (cfg.json_out) {
        json basis = json::array();
        for (const auto& g : G.polys) basis.push_back(g.str());
        out << json{{"status", "ok"}, {"field", field_json(field)}, {"basis", basis}}.dump(2)
            << "\n";
    } else {
        for (const auto& g : G.polys) out << g.str() << "\n";
    }
    return 0;
}

int run_corpus(const std::string& set, const std::string& dir, std::ostream& out) {
    std::vector<std::string> written;
    if (set == "s2vd") {
        written = write_s2vd_corpus(dir);
    } else if (set == "walkthrough") {
        written = write_walkthrough_corpus(dir);
    } else if (set == "all") {
        written = write_s2vd_corpus(dir + "/s2vd");
        auto more = write_walkthrough_corpus(dir);
        written.insert(written.end(), more.begin(), more.end());
    } else {
        throw SemanticError("unknown corpus set '" + set + "' (s2vd, walkthrough, all)");
    }
    for (const auto& f : written) out << f << "\n";
    return 0;
}

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quantifier elimination over finite fields"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string file, polys, vars, corpus_set, corpus_dir;
    bool with_field_polys = false;

    auto add_common = [&](CLI::App* sub, bool needs_field) {
        auto* f = sub->add_option("--field", cfg.q, "field order q = p^r");
        if (needs_field) f->required();
        sub->add_option("--modulus", cfg.modulus,
                        "modulus polynomial in w for extension fields");
        sub->add_option("--order", cfg.order, "variable order, highest rank first");
        sub->add_option("--engine", cfg.engine, "groebner (default) or oracle")
            ->check(CLI::IsMember({"groebner", "oracle"}));
        sub->add_flag("--simplify", cfg.simplify,
                      "reduce the result modulo field polynomials");
        sub->add_flag("--cnf", cfg.cnf, "force CNF output");
        sub->add_flag("--block-order", cfg.block_order,
                      "use the graded block order in basis computations");
        sub->add_flag("--trace", cfg.trace, "per-round statistics on stderr");
        sub->add_flag("--json", cfg.json_out, "JSON output");
        sub->add_option("--budget", cfg.budget_secs,
                        "wall-clock budget in seconds (FFQE_BUDGET_SECS)");
        sub->add_option("--max-basis", cfg.max_basis, "basis size cap");
        sub->add_option("--bound", cfg.bound, "enumeration bound for oracle/witness");
    };

    CLI::App* qe_cmd = app.add_subcommand("qe", "eliminate quantifiers from FILE");
    qe_cmd->add_option("file", file, "formula file")->required();
    add_common(qe_cmd, true);

    CLI::App* decide_cmd = app.add_subcommand("decide", "decide a closed formula");
    decide_cmd->add_option("file", file, "formula file")->required();
    add_common(decide_cmd, true);

    CLI::App* witness_cmd =
        app.add_subcommand("witness", "witness for an existential formula");
    witness_cmd->add_option("file", file, "formula file")->required();
    add_common(witness_cmd, true);

    CLI::App* gb_cmd = app.add_subcommand("gb", "reduced basis of an ideal");
    gb_cmd->add_option("--polys", polys, "semicolon-separated generators")->required();
    gb_cmd->add_option("--vars", vars, "variables, highest rank first")->required();
    gb_cmd->add_flag("--field-polys", with_field_polys, "append x^q - x for every variable");
    add_common(gb_cmd, true);

    CLI::App* corpus_cmd = app.add_subcommand("corpus", "write example formula files");
    corpus_cmd->add_option("set", corpus_set, "s2vd | walkthrough | all")->required();
    corpus_cmd->add_option("dir", corpus_dir, "output directory")->required();

    std::vector<std::string> argv(args.rbegin(), args.rend()); // CLI11 wants reversed order
    try {
        app.parse(std::move(argv));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help goes to stdout with success
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand("qe")) return run_qe(cfg, file, out, err);
        if (app.got_subcommand("decide")) return run_decide(cfg, file, out, err);
        if (app.got_subcommand("witness")) return run_witness(cfg, file, out, err);
        if (app.got_subcommand("gb"))
            return run_gb(cfg, polys, vars, with_field_polys, out, err);
        if (app.got_subcommand("corpus")) return run_corpus(corpus_set, corpus_dir, out);
        err << "error: no subcommand\n";
        return 1;
    } catch (const BudgetExhausted& e) {
        if (cfg.json_out)
            out << json{{"status", "budget_exhausted"}, {"error", e.what()}}.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        err << "error: " << e.line << ":" << e.column << ": " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        if (cfg.json_out)
            out << json{{"status", "error"}, {"error", e.what()}}.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace ffqe
