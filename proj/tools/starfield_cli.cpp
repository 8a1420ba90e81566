// starfield — field-mode star products, brackets, and Fock-space checks.
//
// Subcommands:
//   eval EXPR    evaluate an expression over the configured mode table
//   check SUITE  run a verification suite (assoc|poisson|lemma1|ccr|ordre|wick|all)
//   modes        print the mode table as TSV
//   pairing      print the active pairing matrix as TSV
//
// Configuration: flat `key = value` file (see README), path from --config or
// the STARFIELD_CONFIG environment variable; flags override file values.
// Exit codes: 0 success, 1 check failure, 2 parse/eval/config error,
// 3 truncation-guard violation.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "starfield/checks.hpp"
#include "starfield/expr.hpp"

namespace {

using namespace starfield;

struct Overrides {
    std::optional<double> mass, L, tolerance;
    std::optional<int> kmax, ncap, trials, max_degree, quadrature_points;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> form;
};

RunConfig resolve_config(const std::string& config_path, const Overrides& ov) {
    RunConfig cfg;
    std::string path = config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("STARFIELD_CONFIG")) path = env;
    }
    if (!path.empty()) cfg = load_config_file(path);

    if (ov.mass) cfg.mass = *ov.mass;
    if (ov.L) cfg.circumference = *ov.L;
    if (ov.kmax) cfg.kmax = *ov.kmax;
    if (ov.ncap) cfg.ncap = *ov.ncap;
    if (ov.tolerance) cfg.tolerance = *ov.tolerance;
    if (ov.trials) cfg.trials = *ov.trials;
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.form) cfg.star_form = *ov.form;
    if (ov.max_degree) cfg.max_degree = *ov.max_degree;
    if (ov.quadrature_points) cfg.quadrature_points = *ov.quadrature_points;
    cfg.validate();
    return cfg;
}

expr::EvalEnv build_env(const kg::ModeTable& table, const RunConfig& cfg) {
    expr::EvalEnv env;
    env.space = table.space();
    env.forms.emplace("sigma", kg::sigma_pairing_form(table));
    env.forms.emplace("wick", kg::wick_pairing_form(table));
    if (cfg.star_form == "sigma" || cfg.star_form == "wick") {
        env.active_form = cfg.star_form;
    } else {
        env.forms.emplace("custom", load_pairing_file(cfg.star_form, table.space()));
        env.active_form = "custom";
    }
    return env;
}

std::string operator_summary(const fock::FockOperator& op) {
    long dim = static_cast<long>(op.mat.rows());
    if (op.is_identity(0.0)) return "identity (dim " + std::to_string(dim) + ")";
    if (op.mat.nonZeros() == 0 || op.max_abs() == 0.0)
        return "zero (dim " + std::to_string(dim) + ")";
    return "matrix (dim " + std::to_string(dim) +
           ", formal_degree " + std::to_string(op.formal_degree) +
           ", nnz " + std::to_string(static_cast<long>(op.mat.nonZeros())) +
           ", max_abs " + starfield::detail::double_to_text(op.max_abs()) + ")";
}

int cmd_eval(const std::string& source, const RunConfig& cfg) {
    kg::ModeTable table = kg::ModeTable::standard(cfg.kg_config());
    expr::EvalEnv env = build_env(table, cfg);
    expr::AstPtr ast = expr::parse(source, env.active_form);

    std::optional<fock::FockContext> ctx;
    if (expr::mentions_operators(*ast)) {
        ctx.emplace(table, cfg.ncap);
        env.fock_ctx = &*ctx;
    }
    expr::Value v = expr::eval(*ast, env);
    if (std::holds_alternative<AlgebraElement<Complex>>(v))
        std::cout << print_element(std::get<AlgebraElement<Complex>>(v)) << "\n";
    else
        std::cout << operator_summary(std::get<fock::FockOperator>(v)) << "\n";
    return 0;
}

int cmd_check(const std::string& suite, const RunConfig& cfg) {
    checks::SuiteResult res = checks::run_suite(suite, cfg);
    std::cout << res.report;
    return res.pass ? 0 : 1;
}

int cmd_modes(const RunConfig& cfg) {
    std::cout << kg::ModeTable::standard(cfg.kg_config()).to_tsv();
    return 0;
}

int cmd_pairing(const RunConfig& cfg) {
    kg::ModeTable table = kg::ModeTable::standard(cfg.kg_config());
    expr::EvalEnv env = build_env(table, cfg);
    std::cout << print_pairing_tsv(env.form(""));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"field-mode star products, Poisson brackets, and Fock-space checks"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides ov;
    app.add_option("--config", config_path, "config file (default: $STARFIELD_CONFIG)");
    app.add_option("--mass", ov.mass, "field mass");
    app.add_option("--L", ov.L, "circle circumference");
    app.add_option("--kmax", ov.kmax, "wavenumber cutoff");
    app.add_option("--Ncap", ov.ncap, "Fock occupation cap");
    app.add_option("--tolerance", ov.tolerance, "ordering-theorem tolerance");
    app.add_option("--trials", ov.trials, "random trials per suite");
    app.add_option("--seed", ov.seed, "random seed");
    app.add_option("--form", ov.form, "star form: sigma | wick | path to pairing TSV");
    app.add_option("--max-degree", ov.max_degree, "element degree for theorem suites");
    app.add_option("--quadrature-points", ov.quadrature_points, "circle quadrature points");

    std::string eval_src, suite;
    CLI::App* c_eval = app.add_subcommand("eval", "evaluate an expression");
    c_eval->add_option("expr", eval_src, "expression source")->required();
    CLI::App* c_check = app.add_subcommand("check", "run a verification suite");
    c_check->add_option("suite", suite, "assoc|poisson|lemma1|ccr|ordre|wick|all")
        ->required();
    CLI::App* c_modes = app.add_subcommand("modes", "print the mode table");
    CLI::App* c_pairing = app.add_subcommand("pairing", "print the pairing matrix");
    for (CLI::App* sub : {c_eval, c_check, c_modes, c_pairing}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = resolve_config(config_path, ov);
        if (c_eval->parsed()) return cmd_eval(eval_src, cfg);
        if (c_check->parsed()) return cmd_check(suite, cfg);
        if (c_modes->parsed()) return cmd_modes(cfg);
        if (c_pairing->parsed()) return cmd_pairing(cfg);
    } catch (const starfield::GuardError& e) {
        std::cerr << "guard violation: " << e.what() << "\n";
        return 3;
    } catch (const starfield::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
