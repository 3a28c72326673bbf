#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <cstdlib>
#include <iostream>
#include <optional>

#include "ekron/field.hpp"
#include "ekron/generalized.hpp"
#include "ekron/ideal.hpp"
#include "ekron/mertens.hpp"
#include "ekron/residues.hpp"
#include "ekron/sieve.hpp"
#include "ekron/witness.hpp"

namespace ekron::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// accepts plain integers and the shorthand "a^b" (e.g. 10^6)
std::uint64_t parse_extended_u64(const std::string& s) {
    auto parse_plain = [&](const std::string& t) -> std::uint64_t {
        std::size_t pos = 0;
        unsigned long long v;
        try {
            v = std::stoull(t, &pos);
        } catch (const std::exception&) {
            throw usage_error("expected an integer, got \"" + s + "\"");
        }
        if (pos != t.size()) throw usage_error("trailing characters in integer \"" + s + "\"");
        return v;
    };
    std::size_t caret = s.find('^');
    if (caret == std::string::npos) return parse_plain(s);
    std::uint64_t base = parse_plain(s.substr(0, caret));
    std::uint64_t exp = parse_plain(s.substr(caret + 1));
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) out = checked_mul(out, base, "bound a^b");
    return out;
}

std::vector<std::uint64_t> parse_points(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t end = s.find(',', pos);
        if (end == std::string::npos) end = s.size();
        if (end > pos) out.push_back(parse_extended_u64(s.substr(pos, end - pos)));
        pos = end + 1;
    }
    if (out.empty()) throw usage_error("no points given");
    return out;
}

mpfr_prec_t validated_precision(long bits) {
    if (bits < 64) throw usage_error("precision must be at least 64 bits");
    if (bits > 65536) throw usage_error("precision above 65536 bits is not supported");
    return static_cast<mpfr_prec_t>(bits);
}

ordered_json envelope(const std::string& command, ordered_json inputs, long precision_bits) {
    ordered_json j;
    j["schema"] = "ekron/1";
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    j["precision_bits"] = precision_bits;
    return j;
}

std::string rat_str(const ExactRational& q) { return q.get_str(); }

ordered_json form_json(const LogLinearForm& form) {
    ordered_json j = ordered_json::object();
    for (const auto& [p, c] : form.terms()) j[std::to_string(p)] = rat_str(c);
    return j;
}

SieveOptions sieve_options_of(const RunConfig& cfg) {
    SieveOptions opts;
    opts.parallel = !cfg.serial_sieve;
    opts.segment_size = cfg.segment_size;
    return opts;
}

OmegaSet omega_from_flags(const NumberField& field, const std::string& spec,
                          const std::string& rule) {
    if (!rule.empty()) {
        if (!spec.empty())
            throw usage_error("give either an explicit Omega spec or a rule, not both");
        return OmegaSet::builtin_rule(field, rule);
    }
    return parse_omega_spec(field, spec);
}

// ---------------------------------------------------------------- field-info

int cmd_field_info(const RunConfig& cfg, std::ostream& out) {
    NumberField field = parse_field_spec(cfg.field_spec);
    ordered_json j = envelope("field-info", {{"field", cfg.field_spec}}, cfg.precision_bits);
    switch (field.kind()) {
        case FieldKind::Rational: j["kind"] = "rational"; break;
        case FieldKind::Quadratic: j["kind"] = "quadratic"; break;
        case FieldKind::Cyclotomic: j["kind"] = "cyclotomic"; break;
    }
    j["degree"] = field.degree();
    j["discriminant"] = field.discriminant().get_str();
    j["spec"] = field.spec_string();
    out << j.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------- sieve

int cmd_sieve(const RunConfig& cfg, const std::string& exclude, std::ostream& out) {
    NumberField field = parse_field_spec(cfg.field_spec);
    OmegaSet excluded = parse_omega_spec(field, exclude);
    IdealCountTable table =
        build_table(field, cfg.bound, excluded.truncate(cfg.bound), sieve_options_of(cfg));
    out << "m,a_m,A_m\n";
    std::uint64_t cumulative = 0;
    for (std::uint64_t m = 1; m <= cfg.bound; ++m) {
        cumulative += table.a(m);
        out << m << "," << table.a(m) << "," << cumulative << "\n";
    }
    return kExitOk;
}

// -------------------------------------------------------------------- residue

ordered_json residue_json(const ResidueEstimate& est) {
    ordered_json j;
    j["value"] = est.value.str();
    j["method"] = residue_method_name(est.method);
    j["uncertainty"] = est.uncertainty.str();
    j["bound"] = est.bound;
    j["model"] = est.method == ResidueMethod::Fit ? "A(t) = rho*t + c*t^(1-1/n)" : "closed-form";
    j["residual"] = est.uncertainty.str();
    return j;
}

int cmd_residue(const RunConfig& cfg, const std::string& method, std::ostream& out) {
    NumberField field = parse_field_spec(cfg.field_spec);
    mpfr_prec_t prec = validated_precision(cfg.precision_bits);
    ResidueEstimate est;
    if (method == "exact")
        est = residue_exact(field, prec);
    else if (method == "fit")
        est = residue_fit(field, cfg.bound, prec, sieve_options_of(cfg));
    else
        est = residue_auto(field, cfg.bound, prec, sieve_options_of(cfg));
    ordered_json j = envelope(
        "residue",
        {{"field", cfg.field_spec}, {"method", method}, {"bound", cfg.bound}},
        cfg.precision_bits);
    j.update(residue_json(est));
    if (cfg.format == "text")
        out << "rho_K(" << field.spec_string() << ") = " << est.value.str() << " ["
            << residue_method_name(est.method) << "]\n";
    else
        out << j.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------- gamma

int cmd_gamma(const RunConfig& cfg, const std::string& rho_method, std::ostream& out) {
    NumberField field = parse_field_spec(cfg.field_spec);
    mpfr_prec_t prec = validated_precision(cfg.precision_bits);
    ExtrapolationModel model = parse_extrapolation_model(cfg.model);
    SieveOptions opts = sieve_options_of(cfg);

    std::optional<ResidueEstimate> rho;
    if (rho_method == "exact") rho = residue_exact(field, prec);
    else if (rho_method == "fit") rho = residue_fit(field, cfg.bound, prec, opts);

    EKEstimate est = euler_kronecker(field, cfg.bound, model, prec, opts, rho);
    ordered_json j = envelope("gamma",
                              {{"field", cfg.field_spec},
                               {"bound", cfg.bound},
                               {"model", cfg.model},
                               {"rho_method", rho_method}},
                              cfg.precision_bits);
    j["value"] = est.gamma.str();
    j["method"] = "limit-extrapolation";
    j["uncertainty"] = est.residual.str();
    j["bound"] = est.bound;
    j["model"] = extrapolation_model_name(est.model);
    j["residual"] = est.residual.str();
    j["rho"] = est.rho.str();
    j["c_K"] = est.c_k.str();
    j["S_at_bound"] = est.raw_S.str();
    if (cfg.format == "text")
        out << "gamma_K(" << field.spec_string() << ") = " << est.gamma.str() << " (residual "
            << est.residual.str(6) << ")\n";
    else
        out << j.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------- delta

int cmd_delta(const RunConfig& cfg, const std::string& omega_spec, const std::string& rule,
              std::ostream& out) {
    NumberField field = parse_field_spec(cfg.field_spec);
    OmegaSet omega = omega_from_flags(field, omega_spec, rule);
    DeltaValue d = delta(omega, cfg.bound);
    ordered_json j = envelope("delta",
                              {{"field", cfg.field_spec},
                               {"omega", omega.description()},
                               {"bound", cfg.bound}},
                              cfg.precision_bits);
    j["delta"] = rat_str(d.exact);
    j["delta_decimal"] =
        Real::of_q(d.exact, validated_precision(cfg.precision_bits)).str();
    j["members"] = omega.truncate(cfg.bound).size();
    out << j.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- gamma-omega

int cmd_gamma_omega(const RunConfig& cfg, const std::string& omega_spec,
                    const std::string& rule, bool with_direct, std::ostream& out) {
    NumberField field = parse_field_spec(cfg.field_spec);
    mpfr_prec_t prec = validated_precision(cfg.precision_bits);
    ExtrapolationModel model = parse_extrapolation_model(cfg.model);
    SieveOptions opts = sieve_options_of(cfg);
    OmegaSet omega = omega_from_flags(field, omega_spec, rule);

    ResidueEstimate rho = residue_auto(field, cfg.bound, prec, opts);
    EKEstimate gamma_k = euler_kronecker(field, cfg.bound, model, prec, opts, rho);
    DeltaValue d = delta(omega, cfg.bound);
    ConvergenceSum conv = convergence_sum(omega, cfg.bound, prec);
    Real closed = gamma_omega_closed(omega, cfg.bound, gamma_k, prec);

    ordered_json j = envelope("gamma-omega",
                              {{"field", cfg.field_spec},
                               {"omega", omega.description()},
                               {"bound", cfg.bound},
                               {"model", cfg.model},
                               {"direct", with_direct}},
                              cfg.precision_bits);
    j["delta"] = rat_str(d.exact);
    j["convergence_sum"] = conv.value.str();
    if (conv.form.has_value()) j["convergence_form"] = form_json(*conv.form);
    j["gamma_K"] = gamma_k.gamma.str();
    j["value_closed"] = closed.str();
    if (omega.is_rule())
        j["truncation"] = {{"members", conv.truncation_size},
                           {"note", "rule-based Omega evaluated at its truncation Omega(x); "
                                    "no tail bound is claimed"}};
    if (with_direct) {
        GammaOmegaEstimate direct = gamma_omega_direct(omega, cfg.bound, rho, model, prec, opts);
        j["value_direct"] = direct.value.str();
        j["direct_residual"] = direct.residual.str();
        j["closed_minus_direct"] = (closed - direct.value).str();
    }
    out << j.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------- verify-identities

int cmd_verify_identities(const RunConfig& cfg, std::uint64_t max_norm,
                          std::uint32_t max_factors, std::uint32_t max_exp, std::ostream& out,
                          std::ostream& err) {
    NumberField field = parse_field_spec(cfg.field_spec);
    IdentityCheckSummary summary =
        verify_ideal_identities(field, max_norm, max_factors, max_exp);
    ordered_json j = envelope("verify-identities",
                              {{"field", cfg.field_spec},
                               {"max_norm", max_norm},
                               {"max_factors", max_factors},
                               {"max_exponent", max_exp}},
                              cfg.precision_bits);
    j["ideals_checked"] = summary.ideals_checked;
    j["mobius_failures"] = summary.mobius_failures;
    j["mangoldt_failures"] = summary.mangoldt_failures;
    out << j.dump(2) << "\n";
    if (summary.mobius_failures || summary.mangoldt_failures) {
        err << "identity verification failed\n";
        return kExitInternal;
    }
    return kExitOk;
}

// -------------------------------------------------------------------- witness

int cmd_witness(const RunConfig& cfg, const std::string& spec_i, const std::string& rule_i,
                const std::string& spec_j, const std::string& rule_j, bool crosscheck,
                std::ostream& out) {
    NumberField field = parse_field_spec(cfg.field_spec);
    mpfr_prec_t prec = validated_precision(cfg.precision_bits);
    SieveOptions opts = sieve_options_of(cfg);
    OmegaSet omega_i = omega_from_flags(field, spec_i, rule_i);
    OmegaSet omega_j = omega_from_flags(field, spec_j, rule_j);

    WitnessCertificate cert = make_certificate(omega_i, omega_j, cfg.bound, prec);

    ordered_json j = envelope("witness",
                              {{"field", cfg.field_spec},
                               {"omega_i", omega_i.description()},
                               {"omega_j", omega_j.description()},
                               {"bound", cfg.bound}},
                              cfg.precision_bits);
    j["hypothesis_ok"] = cert.hypothesis.ok;
    j["hypothesis"] = {{"primes_i_not_j", cert.hypothesis.primes_i_not_j},
                       {"primes_j_not_i", cert.hypothesis.primes_j_not_i}};
    if (!cert.hypothesis.caveat.empty()) j["hypothesis"]["caveat"] = cert.hypothesis.caveat;
    j["form"] = form_json(cert.form);
    j["verdict"] = witness_verdict_name(cert.verdict);
    j["numeric_value"] = cert.numeric_value.str();
    ordered_json argument = ordered_json::array();
    for (const auto& [p, c] : cert.form.terms())
        argument.push_back({{"prime", p}, {"exponent", rat_str(c)}});
    j["argument"] = argument;
    j["statement"] = cert.statement;

    if (crosscheck) {
        ExtrapolationModel model = parse_extrapolation_model(cfg.model);
        ResidueEstimate rho = residue_auto(field, cfg.bound, prec, opts);
        GammaOmegaEstimate gi = gamma_omega_direct(omega_i, cfg.bound, rho, model, prec, opts);
        GammaOmegaEstimate gj = gamma_omega_direct(omega_j, cfg.bound, rho, model, prec, opts);
        DeltaValue di = delta(omega_i, cfg.bound);
        DeltaValue dj = delta(omega_j, cfg.bound);
        Real residual = numeric_crosscheck(cert, gi.value, gj.value, di, dj, prec);
        j["crosscheck"] = {{"gamma_omega_i", gi.value.str()},
                           {"gamma_omega_j", gj.value.str()},
                           {"delta_i", rat_str(di.exact)},
                           {"delta_j", rat_str(dj.exact)},
                           {"residual", residual.str()}};
    }

    out << j.dump(2) << "\n";
    if (cert.verdict == WitnessVerdict::ZeroDifference) return kExitZeroDifference;
    if (!cert.hypothesis.ok) return kExitHypothesisViolated;
    return kExitOk;
}

// ---------------------------------------------------------------------- rosen

int cmd_rosen(const RunConfig& cfg, const std::string& points_spec,
              std::uint64_t exact_threshold, std::ostream& out) {
    NumberField field = parse_field_spec(cfg.field_spec);
    mpfr_prec_t prec = validated_precision(cfg.precision_bits);
    std::vector<std::uint64_t> points = parse_points(points_spec);
    SieveOptions opts = sieve_options_of(cfg);

    ResidueEstimate rho = residue_auto(field, std::max<std::uint64_t>(points.back(), 1000),
                                       prec, opts);
    RosenOptions ropts;
    ropts.exact_threshold = exact_threshold;
    ropts.prec = prec;
    ropts.sieve = opts;
    std::vector<AsymptoticRow> rows = rosen_table(field, points, rho, std::nullopt, ropts);

    out << "x,delta,normalized,target,relative_error,exact\n";
    for (const AsymptoticRow& row : rows) {
        out << row.x << "," << row.delta_value.str() << "," << row.normalized.str() << ","
            << row.target.str() << "," << row.relative_error.str() << ","
            << (row.exact ? "true" : "false") << "\n";
    }
    return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--precision", cfg.precision_bits, "working precision in bits (>= 64)")
        ->capture_default_str();
    sub->add_flag("--serial", cfg.serial_sieve, "use the serial reference sieve kernel");
    sub->add_option("--segment-size", cfg.segment_size,
                    "max table entries per sieve construction segment")
        ->capture_default_str();
    sub->add_option("--format", cfg.format, "output format (json or text)")
        ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (const char* env = std::getenv("EKRON_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }

    CLI::App app{"Euler-Kronecker constants and their generalizations for explicit "
                 "number fields"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string bound_str = "1000";
    std::string method = "auto";
    std::string rho_method = "auto";
    std::string omega_spec, omega_rule;
    std::string omega_i_spec, omega_i_rule, omega_j_spec, omega_j_rule;
    std::string exclude_spec;
    std::string points_spec = "10^3,10^4,10^5,10^6";
    std::uint64_t max_norm = 1000;
    std::uint32_t max_factors = 4, max_exp = 3;
    std::uint64_t exact_threshold = 100000;
    bool with_direct = false, crosscheck = false, json_flag = false;

    auto* info = app.add_subcommand("field-info", "describe a number field");
    info->add_option("--field", cfg.field_spec, "field spec: Q, Q(sqrt,d), Q(zeta,m)")
        ->required();
    add_common(info, cfg);

    auto* sieve = app.add_subcommand("sieve", "emit m, a_m, A(m) as CSV");
    sieve->add_option("--field", cfg.field_spec)->required();
    sieve->add_option("--bound", bound_str, "sieve bound x (accepts 10^k)")->required();
    sieve->add_option("--exclude", exclude_spec,
                      "excluded prime ideals \"p:f:index,...\" (Euler factors omitted)");
    add_common(sieve, cfg);

    auto* residue = app.add_subcommand("residue", "residue rho_K of zeta_K at s = 1");
    residue->add_option("--field", cfg.field_spec)->required();
    residue->add_option("--method", method, "auto | exact | fit")->capture_default_str();
    residue->add_option("--bound", bound_str, "sieve bound for the fit path");
    add_common(residue, cfg);

    auto* gamma = app.add_subcommand("gamma", "Euler-Kronecker constant gamma_K");
    gamma->add_option("--field", cfg.field_spec)->required();
    gamma->add_option("--bound", bound_str)->required();
    gamma->add_option("--model", cfg.model, "raw | one-term | two-term")->capture_default_str();
    gamma->add_option("--rho-method", rho_method, "auto | exact | fit")->capture_default_str();
    add_common(gamma, cfg);

    auto* delta_cmd = app.add_subcommand("delta", "exact delta_K(Omega(x))");
    delta_cmd->add_option("--field", cfg.field_spec)->required();
    delta_cmd->add_option("--omega", omega_spec, "explicit Omega \"p:f:index,...\"");
    delta_cmd->add_option("--omega-rule", omega_rule, "all | degree-one | split-only");
    delta_cmd->add_option("--bound", bound_str)->required();
    add_common(delta_cmd, cfg);

    auto* go = app.add_subcommand("gamma-omega", "generalized constant gamma_K(Omega)");
    go->add_option("--field", cfg.field_spec)->required();
    go->add_option("--omega", omega_spec);
    go->add_option("--omega-rule", omega_rule);
    go->add_option("--bound", bound_str)->required();
    go->add_option("--model", cfg.model)->capture_default_str();
    go->add_flag("--direct", with_direct, "also compute the direct limit and the gap");
    add_common(go, cfg);

    auto* verify = app.add_subcommand("verify-identities",
                                      "exact Mobius/von-Mangoldt divisor identities");
    verify->add_option("--field", cfg.field_spec)->required();
    verify->add_option("--max-norm", max_norm)->capture_default_str();
    verify->add_option("--max-factors", max_factors)->capture_default_str();
    verify->add_option("--max-exponent", max_exp)->capture_default_str();
    add_common(verify, cfg);

    auto* witness = app.add_subcommand("witness",
                                       "transcendence-witness certificate for a pair of "
                                       "Omega sets");
    witness->add_option("--field", cfg.field_spec)->required();
    witness->add_option("--omega-i", omega_i_spec);
    witness->add_option("--omega-i-rule", omega_i_rule);
    witness->add_option("--omega-j", omega_j_spec);
    witness->add_option("--omega-j-rule", omega_j_rule);
    witness->add_option("--bound", bound_str)->required();
    witness->add_option("--model", cfg.model)->capture_default_str();
    witness->add_flag("--crosscheck", crosscheck,
                      "numerically check the normalized-difference identity");
    witness->add_flag("--json", json_flag, "JSON output (the default; kept for scripts)");
    add_common(witness, cfg);

    auto* rosen = app.add_subcommand("rosen", "Mertens/Rosen asymptotic table as CSV");
    rosen->add_option("--field", cfg.field_spec)->required();
    rosen->add_option("--points", points_spec, "comma-separated x values (accepts 10^k)")
        ->capture_default_str();
    rosen->add_option("--exact-threshold", exact_threshold,
                      "prime-ideal count beyond which delta switches to floating")
        ->capture_default_str();
    add_common(rosen, cfg);

    std::vector<std::string> argv_storage;
    argv_storage.push_back("ekron");
    for (const std::string& a : args) argv_storage.push_back(a);
    std::vector<char*> argv;
    for (std::string& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        cfg.bound = parse_extended_u64(bound_str);
        (void)json_flag;
        if (info->parsed()) return cmd_field_info(cfg, out);
        if (sieve->parsed()) return cmd_sieve(cfg, exclude_spec, out);
        if (residue->parsed()) return cmd_residue(cfg, method, out);
        if (gamma->parsed()) return cmd_gamma(cfg, rho_method, out);
        if (delta_cmd->parsed()) return cmd_delta(cfg, omega_spec, omega_rule, out);
        if (go->parsed()) return cmd_gamma_omega(cfg, omega_spec, omega_rule, with_direct, out);
        if (verify->parsed())
            return cmd_verify_identities(cfg, max_norm, max_factors, max_exp, out, err);
        if (witness->parsed())
            return cmd_witness(cfg, omega_i_spec, omega_i_rule, omega_j_spec, omega_j_rule,
                               crosscheck, out);
        if (rosen->parsed()) return cmd_rosen(cfg, points_spec, exact_threshold, out);
        err << "no subcommand\n";
        return kExitUsage;
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const unsupported_exact_residue& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const data_error& e) {
        err << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const internal_error& e) {
        err << "internal invariant violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::bad_alloc&) {
        err << "data error: out of memory\n";
        return kExitData;
    }
}

}  // namespace ekron::cli
