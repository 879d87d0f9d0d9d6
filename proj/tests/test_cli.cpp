#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "qmzv/cli.hpp"

using namespace qmzv;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const RunConfig& cfg) {
    std::ostringstream out, err;
    const int code = run_command(cfg, out, err);
    return {code, out.str(), err.str()};
}

RunConfig base(RunConfig::Command cmd, const std::string& target) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.target = target;
    cfg.q_list = {0.5};
    return cfg;
}

}  // namespace

TEST_CASE("index literal parsing") {
    CHECK(parse_index_literal("[3,1,1]") == MultiIndex({3, 1, 1}));
    CHECK(parse_index_literal(" [ 4 , 2 ] ") == MultiIndex({4, 2}));
    CHECK(parse_index_literal("[2,{1}^3]") == MultiIndex({2, 1, 1, 1}));
    CHECK(parse_index_literal("[2,1*3]") == MultiIndex({2, 1, 1, 1}));
    CHECK(parse_index_literal("[{2}^2,5]") == MultiIndex({2, 2, 5}));
    CHECK_THROWS_AS(parse_index_literal("3,1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_index_literal("[]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_index_literal("[0]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_index_literal("[2,]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_index_literal("[2,x]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_index_literal("[{1}^]"), std::invalid_argument);
}

TEST_CASE("expression parsing") {
    const ParsedExpr a = parse_eval_expr("zeta*[2,1]");
    CHECK(a.star);
    CHECK(a.index == MultiIndex({2, 1}));
    const ParsedExpr b = parse_eval_expr("[3]");
    CHECK_FALSE(b.star);
    const ParsedExpr c = parse_eval_expr("zeta[4]");
    CHECK_FALSE(c.star);
    CHECK(c.index == MultiIndex({4}));
}

TEST_CASE("complex literal parsing") {
    CHECK(parse_complex("2.5") == std::complex<double>{2.5, 0.0});
    CHECK(parse_complex("0.5+0.5i") == std::complex<double>{0.5, 0.5});
    CHECK(parse_complex("-0.7+0.2i") == std::complex<double>{-0.7, 0.2});
    CHECK(parse_complex("-3i") == std::complex<double>{0.0, -3.0});
    CHECK(parse_complex("i") == std::complex<double>{0.0, 1.0});
    CHECK(parse_complex("1e-3-2e-2i") == std::complex<double>{1e-3, -2e-2});
    CHECK_THROWS_AS(parse_complex("foo"), std::invalid_argument);
}

TEST_CASE("cmd_eval") {
    SUBCASE("known value on stdout") {
        const RunResult r = run(base(RunConfig::Command::eval, "[2,1]"));
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("0.2722032056332") != std::string::npos);
        CHECK(r.out.find("tail_bound=") != std::string::npos);
    }
    SUBCASE("divergent index exits 3") {
        const RunResult r = run(base(RunConfig::Command::eval, "[1,2]"));
        CHECK(r.code == kExitDivergent);
        CHECK(r.err.find("divergent: leading exponent must exceed 1") != std::string::npos);
    }
    SUBCASE("parse failure exits 2") {
        CHECK(run(base(RunConfig::Command::eval, "nonsense")).code == kExitParse);
    }
    SUBCASE("zeta*[1] equals zeta[2]") {
        RunConfig star = base(RunConfig::Command::eval, "zeta*[1]");
        RunConfig plain = base(RunConfig::Command::eval, "[2]");
        const std::string v1 = run(star).out, v2 = run(plain).out;
        const auto val = [](const std::string& s) {
            const auto p = s.find("value=");
            return s.substr(p, s.find(' ', p) - p);
        };
        CHECK(val(v1) == val(v2));
    }
    SUBCASE("q out of range exits 2") {
        RunConfig cfg = base(RunConfig::Command::eval, "[2]");
        cfg.q_list = {1.5};
        CHECK(run(cfg).code == kExitParse);
    }
    SUBCASE("json format carries 17-digit numbers") {
        RunConfig cfg = base(RunConfig::Command::eval, "[3]");
        cfg.format = RunConfig::Format::json;
        cfg.tol = 1e-13;
        const RunResult r = run(cfg);
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("\"value\":{\"re\":0.272203205633213") != std::string::npos);
        CHECK(r.out.find("\"terms_used\":") != std::string::npos);
    }
    SUBCASE("csv format has the header row") {
        RunConfig cfg = base(RunConfig::Command::eval, "[3]");
        cfg.format = RunConfig::Format::csv;
        const RunResult r = run(cfg);
        CHECK(r.out.starts_with("expr,q,value_re,value_im,tail_bound,terms_used\n"));
    }
}

TEST_CASE("cmd_verify") {
    SUBCASE("single identity passes with exit 0") {
        RunConfig cfg = base(RunConfig::Command::verify, "euler");
        const RunResult r = run(cfg);
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("ok 1 - euler-reduction") != std::string::npos);
        CHECK(r.out.find("not ok") == std::string::npos);
    }
    SUBCASE("unknown identity exits 2") {
        CHECK(run(base(RunConfig::Command::verify, "bogus")).code == kExitParse);
    }
    SUBCASE("aggregated summary counts") {
        RunConfig cfg = base(RunConfig::Command::verify, "sum");
        cfg.max_weight = 4;
        const RunResult r = run(cfg);
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("# summary: total=10 pass=10 fail=0") != std::string::npos);
    }
    SUBCASE("deterministic byte-identical output") {
        RunConfig cfg = base(RunConfig::Command::verify, "euler");
        cfg.format = RunConfig::Format::json;
        const RunResult r1 = run(cfg);
        const RunResult r2 = run(cfg);
        CHECK(r1.out == r2.out);
        CHECK(!r1.out.empty());
    }
}

TEST_CASE("cmd_table") {
    SUBCASE("zeta table rows are admissible indices") {
        RunConfig cfg = base(RunConfig::Command::table, "zeta");
        cfg.max_weight = 4;
        cfg.format = RunConfig::Format::csv;
        const RunResult r = run(cfg);
        CHECK(r.code == kExitOk);
        CHECK(r.out.starts_with("index,q,value,tail_bound\n"));
        CHECK(r.out.find("[2]") != std::string::npos);
        CHECK(r.out.find("[2,1,1]") != std::string::npos);
        CHECK(r.out.find("[1,") == std::string::npos);  // no divergent rows
    }
    SUBCASE("G0 strata") {
        RunConfig cfg = base(RunConfig::Command::table, "G0");
        cfg.max_weight = 4;
        cfg.format = RunConfig::Format::csv;
        const RunResult r = run(cfg);
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("4,2,1,") != std::string::npos);  // the (3,1) stratum
        CHECK(r.out.find("4,2,2,") != std::string::npos);  // the (2,2) stratum
    }
    SUBCASE("drin coefficient table is symmetric") {
        RunConfig cfg = base(RunConfig::Command::table, "drin-coeffs");
        cfg.degree_cap = 6;
        cfg.format = RunConfig::Format::json;
        const RunResult r = run(cfg);
        CHECK(r.code == kExitOk);
        // coefficient(1,2) and (2,1) both present; equality is asserted by
        // the drin verifier, here we only check emission
        CHECK(r.out.find("\"m\":1,\"n\":2") != std::string::npos);
        CHECK(r.out.find("\"m\":2,\"n\":1") != std::string::npos);
    }
    SUBCASE("unknown kind exits 2") {
        CHECK(run(base(RunConfig::Command::table, "bogus")).code == kExitParse);
    }
}

TEST_CASE("RunConfig validation") {
    RunConfig cfg = base(RunConfig::Command::verify, "sum");
    cfg.degree_cap = 11;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.degree_cap = 8;
    cfg.tol = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
