#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmzv/cli.hpp"

namespace {

// Comma-separated doubles for --q.
std::vector<double> parse_q_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string tok = text.substr(start, comma - start);
        if (!tok.empty()) out.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void add_common_flags(CLI::App* cmd, qmzv::RunConfig& cfg, std::string& q_text,
                      std::string& format_text, std::string& z_text) {
    cmd->add_option("--q", q_text, "comma-separated q values in (0,1)");
    cmd->add_option("--tol", cfg.tol, "requested absolute accuracy");
    cmd->add_option("--max-terms", cfg.max_terms, "truncation budget per series level");
    cmd->add_option("--max-weight", cfg.max_weight, "weight bound for index sweeps");
    cmd->add_option("--depth", cfg.depth, "depth bound for the generating-function sweep");
    cmd->add_option("--cap", cfg.degree_cap, "total-degree cap for coefficient tables");
    cmd->add_option("--z", z_text, "comma-separated complex shifts a+bi");
    cmd->add_option("--format", format_text, "output format: text|json|csv");
    cmd->add_option("--out", cfg.output_path, "write output to this file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiple q-zeta values: certified evaluation and identity verification"};
    app.require_subcommand(1);

    qmzv::RunConfig cfg;
    std::string q_text, format_text = "text", z_text;

    auto* eval = app.add_subcommand("eval", "evaluate zeta[...] or zeta*[...] at each q");
    eval->add_option("expression", cfg.target, "index literal, e.g. \"[2,1]\" or \"zeta*[1]\"")
        ->required();
    add_common_flags(eval, cfg, q_text, format_text, z_text);

    auto* verify = app.add_subcommand("verify", "run an identity sweep");
    verify
        ->add_option("identity", cfg.target,
                     "one of: sum, gf, abreps, euler, drin, height, diagonal, all")
        ->required();
    add_common_flags(verify, cfg, q_text, format_text, z_text);

    auto* table = app.add_subcommand("table", "emit value tables");
    table->add_option("kind", cfg.target, "one of: zeta, G0, drin-coeffs")->required();
    add_common_flags(table, cfg, q_text, format_text, z_text);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : qmzv::kExitParse;
    }

    try {
        if (!q_text.empty()) cfg.q_list = parse_q_list(q_text);
        if (!z_text.empty()) {
            std::size_t start = 0;
            while (start <= z_text.size()) {
                const std::size_t comma = z_text.find(',', start);
                const std::string tok = z_text.substr(start, comma - start);
                if (!tok.empty()) cfg.z_list.push_back(qmzv::parse_complex(tok));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
        }
        if (format_text == "json")
            cfg.format = qmzv::RunConfig::Format::json;
        else if (format_text == "csv")
            cfg.format = qmzv::RunConfig::Format::csv;
        else if (format_text == "text")
            cfg.format = qmzv::RunConfig::Format::text;
        else
            throw std::invalid_argument("unknown format '" + format_text + "'");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qmzv::kExitParse;
    }

    if (eval->parsed())
        cfg.command = qmzv::RunConfig::Command::eval;
    else if (verify->parsed())
        cfg.command = qmzv::RunConfig::Command::verify;
    else
        cfg.command = qmzv::RunConfig::Command::table;

    return qmzv::run_command(cfg, std::cout, std::cerr);
}
