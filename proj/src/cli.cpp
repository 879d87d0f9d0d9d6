#include "qmzv/cli.hpp"

#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qmzv/format.hpp"
#include "qmzv/series_eval.hpp"
#include "qmzv/verify.hpp"

namespace qmzv {

void RunConfig::validate() const {
    for (double q : q_list)
        if (!(q > 0.0) || !(q < 1.0))
            throw std::invalid_argument("q must lie strictly inside (0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (max_terms < 1) throw std::invalid_argument("max-terms must be >= 1");
    if (degree_cap < 2 || degree_cap > 10)
        throw std::invalid_argument("cap must be in 2..10 (sweep-cost guard)");
    if (max_weight < 1) throw std::invalid_argument("max-weight must be >= 1");
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
}

// ---------------------------------------------------------------------------
// Parsers.
// ---------------------------------------------------------------------------

namespace {

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

int parse_positive_int(const std::string& tok, const char* what) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + ": '" + tok + "'");
    }
    if (pos != tok.size() || v < 1)
        throw std::invalid_argument(std::string("bad ") + what + ": '" + tok + "'");
    return v;
}

}  // namespace

MultiIndex parse_index_literal(const std::string& text) {
    const std::string s = strip(text);
    if (s.size() < 3 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("index literal must look like [3,1,1]");
    std::vector<int> parts;
    std::vector<std::string> tokens;
    {
        const std::string body = s.substr(1, s.size() - 2);
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = body.find(',', start);
            tokens.push_back(body.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    for (std::string tok : tokens) {
        tok = strip(tok);
        if (tok.empty()) throw std::invalid_argument("empty part in index literal");
        // {v}^n and v*n repeat v n times.
        int value = 0, repeat = 1;
        if (tok.front() == '{') {
            const auto close = tok.find('}');
            if (close == std::string::npos || close + 1 >= tok.size() || tok[close + 1] != '^')
                throw std::invalid_argument("bad repeat syntax, expected {v}^n: '" + tok + "'");
            value = parse_positive_int(strip(tok.substr(1, close - 1)), "part");
            repeat = parse_positive_int(strip(tok.substr(close + 2)), "repeat count");
        } else if (const auto star = tok.find('*'); star != std::string::npos) {
            value = parse_positive_int(strip(tok.substr(0, star)), "part");
            repeat = parse_positive_int(strip(tok.substr(star + 1)), "repeat count");
        } else {
            value = parse_positive_int(tok, "part");
        }
        for (int i = 0; i < repeat; ++i) parts.push_back(value);
    }
    if (parts.empty()) throw std::invalid_argument("index literal has no parts");
    return MultiIndex(std::move(parts));
}

ParsedExpr parse_eval_expr(const std::string& text) {
    std::string s = strip(text);
    bool star = false;
    if (s.starts_with("zeta*")) {
        star = true;
        s = strip(s.substr(5));
    } else if (s.starts_with("zeta")) {
        s = strip(s.substr(4));
    }
    return ParsedExpr{star, parse_index_literal(s)};
}

std::complex<double> parse_complex(const std::string& text) {
    const std::string s = strip(text);
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    // Split at the sign that separates the imaginary part, skipping exponent
    // signs and the leading sign.
    if (s.back() == 'i' || s.back() == 'I') {
        std::size_t split = std::string::npos;
        for (std::size_t i = s.size() - 1; i > 0; --i) {
            const char c = s[i];
            if ((c == '+' || c == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        auto parse_imag = [](std::string t) {
            t = strip(t.substr(0, t.size() - 1));  // drop the trailing i
            if (t.empty() || t == "+") return 1.0;
            if (t == "-") return -1.0;
            std::size_t pos = 0;
            const double v = std::stod(t, &pos);
            if (pos != t.size()) throw std::invalid_argument("bad imaginary part");
            return v;
        };
        if (split == std::string::npos)
            return {0.0, parse_imag(s)};
        std::size_t pos = 0;
        const std::string re = s.substr(0, split);
        const double rv = std::stod(re, &pos);
        if (pos != re.size()) throw std::invalid_argument("bad real part");
        return {rv, parse_imag(s.substr(split))};
    }
    std::size_t pos = 0;
    const double rv = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad complex literal: '" + s + "'");
    return {rv, 0.0};
}

// ---------------------------------------------------------------------------
// Emission helpers.
// ---------------------------------------------------------------------------

namespace {

struct EvalRecord {
    std::string expr;
    double q;
    CertifiedValue v;
};

void emit_eval_records(const std::vector<EvalRecord>& recs, RunConfig::Format format,
                       std::ostream& out) {
    switch (format) {
        case RunConfig::Format::json: {
            out << "[";
            for (std::size_t i = 0; i < recs.size(); ++i) {
                if (i) out << ",";
                out << "\n  {\"expr\":\"" << json_escape(recs[i].expr)
                    << "\",\"q\":" << fmt_g17(recs[i].q)
                    << ",\"value\":" << json_complex(recs[i].v.value)
                    << ",\"tail_bound\":" << fmt_g17(recs[i].v.tail_bound)
                    << ",\"terms_used\":" << recs[i].v.terms_used << "}";
            }
            out << "\n]\n";
            break;
        }
        case RunConfig::Format::csv: {
            out << "expr,q,value_re,value_im,tail_bound,terms_used\n";
            for (const auto& r : recs)
                out << r.expr << ',' << fmt_g17(r.q) << ',' << fmt_g17(r.v.value.real()) << ','
                    << fmt_g17(r.v.value.imag()) << ',' << fmt_g17(r.v.tail_bound) << ','
                    << r.v.terms_used << '\n';
            break;
        }
        case RunConfig::Format::text: {
            for (const auto& r : recs) {
                out << r.expr << " q=" << fmt_g17(r.q) << " value=" << fmt_g17(r.v.value.real());
                if (r.v.value.imag() != 0.0) out << (r.v.value.imag() < 0 ? "" : "+")
                                                 << fmt_g17(r.v.value.imag()) << "i";
                out << " tail_bound=" << fmt_e3(r.v.tail_bound)
                    << " terms_used=" << r.v.terms_used << '\n';
            }
            break;
        }
    }
}

std::string params_text(const VerifyReport& rep) {
    std::string s;
    for (const auto& p : rep.params) {
        if (!s.empty()) s += ' ';
        s += p.name + '=' + p.text;
    }
    return s;
}

void emit_reports(const std::vector<VerifyReport>& reports, RunConfig::Format format,
                  std::ostream& out, bool summary) {
    long passed = 0;
    for (const auto& r : reports) passed += r.pass;
    switch (format) {
        case RunConfig::Format::json: {
            out << "[";
            for (std::size_t i = 0; i < reports.size(); ++i) {
                if (i) out << ",";
                out << "\n  " << reports[i].to_json();
            }
            out << "\n]\n";
            break;
        }
        case RunConfig::Format::csv: {
            out << "identity,params,lhs_re,lhs_im,rhs_re,rhs_im,residual,budget,pass,note\n";
            for (const auto& r : reports) {
                out << r.identity << ',' << params_text(r) << ',' << fmt_g17(r.lhs.real()) << ','
                    << fmt_g17(r.lhs.imag()) << ',' << fmt_g17(r.rhs.real()) << ','
                    << fmt_g17(r.rhs.imag()) << ',' << fmt_g17(r.residual) << ','
                    << fmt_g17(r.budget) << ',' << (r.pass ? "true" : "false") << ',' << r.note
                    << '\n';
            }
            break;
        }
        case RunConfig::Format::text: {
            out << "1.." << reports.size() << '\n';
            for (std::size_t i = 0; i < reports.size(); ++i)
                out << reports[i].to_tap(static_cast<long>(i) + 1) << '\n';
            break;
        }
    }
    if (summary && format == RunConfig::Format::text)
        out << "# summary: total=" << reports.size() << " pass=" << passed
            << " fail=" << (static_cast<long>(reports.size()) - passed) << '\n';
}

struct TableRow {
    std::vector<std::pair<std::string, std::string>> cols;  // name -> rendered value
};

void emit_table(const std::vector<std::string>& header, const std::vector<TableRow>& rows,
                RunConfig::Format format, std::ostream& out) {
    switch (format) {
        case RunConfig::Format::json: {
            out << "[";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i) out << ",";
                out << "\n  {";
                for (std::size_t c = 0; c < rows[i].cols.size(); ++c) {
                    if (c) out << ",";
                    out << '"' << rows[i].cols[c].first << "\":" << rows[i].cols[c].second;
                }
                out << "}";
            }
            out << "\n]\n";
            break;
        }
        case RunConfig::Format::csv:
        case RunConfig::Format::text: {
            const char sep = format == RunConfig::Format::csv ? ',' : ' ';
            for (std::size_t c = 0; c < header.size(); ++c) {
                if (c) out << sep;
                out << header[c];
            }
            out << '\n';
            for (const auto& row : rows) {
                for (std::size_t c = 0; c < row.cols.size(); ++c) {
                    if (c) out << sep;
                    // strings carry JSON quotes for the json path; strip here
                    const std::string& v = row.cols[c].second;
                    if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
                        out << v.substr(1, v.size() - 2);
                    else
                        out << v;
                }
                out << '\n';
            }
            break;
        }
    }
}

std::vector<double> q_or_default(const RunConfig& cfg, const std::vector<double>& fallback) {
    return cfg.q_list.empty() ? fallback : cfg.q_list;
}

}  // namespace

// ---------------------------------------------------------------------------
// Subcommands.
// ---------------------------------------------------------------------------

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        const ParsedExpr expr = parse_eval_expr(cfg.target);
        std::vector<EvalRecord> recs;
        const std::string label = (expr.star ? "zeta*" : "zeta") + expr.index.to_string();
        for (double q : q_or_default(cfg, {0.5})) {
            const QParam qp(q, cfg.tol, cfg.max_terms);
            const CertifiedValue v = expr.star ? eval_qmzv_star(expr.index, qp)
                                               : eval_qmzv(expr.index, qp);
            recs.push_back(EvalRecord{label, q, v});
        }
        emit_eval_records(recs, cfg.format, out);
        return kExitOk;
    } catch (const DivergentSeries& e) {
        err << "divergent: leading exponent must exceed 1 (" << e.what() << ")\n";
        return kExitDivergent;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInfra;
    }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        if (!is_known_identity(cfg.target))
            throw std::invalid_argument("unknown identity '" + cfg.target +
                                        "' (want sum|gf|abreps|euler|drin|height|diagonal|all)");
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    }
    try {
        SweepOptions opts;
        opts.qs = q_or_default(cfg, kDefaultQGrid);
        opts.tol = cfg.tol;
        opts.max_terms = cfg.max_terms;
        opts.max_weight = cfg.max_weight;
        opts.gf_depth = cfg.depth;
        if (!cfg.z_list.empty()) opts.z_points = cfg.z_list;
        opts.drin_cap = cfg.degree_cap;
        opts.height_cap = std::min(cfg.degree_cap, 6);
        const std::vector<VerifyReport> reports = run_identity_sweep(cfg.target, opts);
        emit_reports(reports, cfg.format, out, /*summary=*/true);
        for (const auto& r : reports)
            if (!r.pass) return kExitVerifyFail;
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInfra;
    }
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        if (cfg.target != "zeta" && cfg.target != "G0" && cfg.target != "drin-coeffs")
            throw std::invalid_argument("unknown table kind '" + cfg.target +
                                        "' (want zeta|G0|drin-coeffs)");
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    }
    try {
        EvalCache cache;
        std::vector<std::string> header;
        std::vector<TableRow> rows;
        const std::vector<double> qs = q_or_default(cfg, {0.5});

        if (cfg.target == "zeta") {
            header = {"index", "q", "value", "tail_bound"};
            for (double q : qs) {
                const QParam qp(q, cfg.tol, cfg.max_terms);
                for (int w = 2; w <= cfg.max_weight; ++w) {
                    for (int r = 1; r <= w - 1; ++r) {
                        for (const auto& parts : compositions(w, r)) {
                            const MultiIndex idx(parts);
                            if (!idx.admissible()) continue;
                            const CertifiedValue v = eval_qmzv(idx, qp, &cache);
                            rows.push_back(TableRow{{{"index", '"' + idx.to_string() + '"'},
                                                     {"q", fmt_g17(q)},
                                                     {"value", fmt_g17(v.value.real())},
                                                     {"tail_bound", fmt_g17(v.tail_bound)}}});
                        }
                    }
                }
            }
        } else if (cfg.target == "G0") {
            header = {"n", "r", "s", "q", "G0", "count"};
            for (double q : qs) {
                const QParam qp(q, cfg.tol, cfg.max_terms);
                for (int n = 2; n <= cfg.max_weight; ++n) {
                    for (int r = 1; r < n; ++r) {
                        for (int s = 1; s <= std::min(r, n - r); ++s) {
                            const auto idxs = enumerate_I0(n, r, s);
                            if (idxs.empty()) continue;
                            std::complex<double> g{0.0, 0.0};
                            for (const auto& idx : idxs) g += eval_qmzv(idx, qp, &cache).value;
                            rows.push_back(TableRow{{{"n", std::to_string(n)},
                                                     {"r", std::to_string(r)},
                                                     {"s", std::to_string(s)},
                                                     {"q", fmt_g17(q)},
                                                     {"G0", fmt_g17(g.real())},
                                                     {"count", std::to_string(idxs.size())}}});
                        }
                    }
                }
            }
        } else {  // drin-coeffs
            header = {"m", "n", "q", "coeff"};
            for (double q : qs) {
                const QParam qp(q, cfg.tol, cfg.max_terms);
                for (int m = 0; m + 2 <= cfg.degree_cap; ++m) {
                    for (int n = 0; m + n + 2 <= cfg.degree_cap; ++n) {
                        const CertifiedValue v = eval_qmzv(ones_padded(m, n), qp, &cache);
                        rows.push_back(TableRow{{{"m", std::to_string(m)},
                                                 {"n", std::to_string(n)},
                                                 {"q", fmt_g17(q)},
                                                 {"coeff", fmt_g17(v.value.real())}}});
                    }
                }
            }
        }
        emit_table(header, rows, cfg.format, out);
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInfra;
    }
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto dispatch = [&](std::ostream& sink) {
        switch (cfg.command) {
            case RunConfig::Command::eval: return cmd_eval(cfg, sink, err);
            case RunConfig::Command::verify: return cmd_verify(cfg, sink, err);
            case RunConfig::Command::table: return cmd_table(cfg, sink, err);
        }
        return kExitInfra;
    };
    if (cfg.output_path) {
        std::ofstream file(*cfg.output_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open output file '" << *cfg.output_path << "'\n";
            return kExitInfra;
        }
        return dispatch(file);
    }
    return dispatch(out);
}

}  // namespace qmzv
