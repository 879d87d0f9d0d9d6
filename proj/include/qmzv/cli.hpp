#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qmzv/indices.hpp"

// Command-line front end: evaluations, identity sweeps, table emission.
// Exit code map: 0 ok, 1 verification failure, 2 parse/usage error,
// 3 divergent series, 4 infrastructure error.

namespace qmzv {

struct RunConfig {
    enum class Command { eval, verify, table };
    enum class Format { json, csv, text };

    Command command = Command::eval;
    std::string target;                    // index literal / identity / table kind
    std::vector<double> q_list;            // empty: command-specific default
    double tol = 1e-9;
    long max_terms = 1'000'000;
    int degree_cap = 8;
    int max_weight = 8;
    int depth = 4;
    std::vector<std::complex<double>> z_list;  // empty: default grid
    Format format = Format::text;
    std::optional<std::string> output_path;

    void validate() const;  // throws std::invalid_argument
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDivergent = 3;
inline constexpr int kExitInfra = 4;

// Index literal: comma-separated positive integers in square brackets, with
// run-length sugar for the {1}^n notation: "[3,{1}^2]" and "[3,1*2]"
// both mean [3,1,1].
MultiIndex parse_index_literal(const std::string& text);

// Evaluation expression: "[...]", "zeta[...]" or "zeta*[...]".
struct ParsedExpr {
    bool star = false;
    MultiIndex index;
};
ParsedExpr parse_eval_expr(const std::string& text);

// Complex literal "a+bi" (also plain "a", "bi", "i").
std::complex<double> parse_complex(const std::string& text);

// Subcommand drivers; emit to `out`, return an exit code.
int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Dispatch on cfg.command, honoring cfg.output_path.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace qmzv
