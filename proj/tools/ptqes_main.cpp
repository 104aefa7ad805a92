#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptqes/catalog.hpp"
#include "ptqes/json_io.hpp"
#include "ptqes/spectrum.hpp"

namespace {

using ptqes::Complex;
using nlohmann::json;

// "a+bi" with optional signs and no spaces; pure-real "a" and pure-imaginary
// "bi" (including bare "i" / "-i") are accepted
Complex parse_complex_literal(const std::string& text) {
    auto fail = [&]() -> Complex {
        throw ptqes::InvalidParameters("malformed complex literal '" + text +
                                       "' (expected the a+bi form, no spaces)");
    };
    if (text.empty()) return fail();

    auto parse_number = [&](const std::string& s) -> double {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            return fail().real();
        }
        if (used != s.size()) fail();
        return v;
    };

    // split before the last top-level sign that is not an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t p = 1; p < text.size(); ++p) {
        if ((text[p] == '+' || text[p] == '-') && text[p - 1] != 'e' && text[p - 1] != 'E')
            split = p;
    }
    if (split != std::string::npos) {
        std::string re = text.substr(0, split);
        std::string im = text.substr(split);
        if (im.empty() || im.back() != 'i') fail();
        im.pop_back();
        return {parse_number(re), parse_number(im)};
    }
    if (text.back() == 'i') {
        std::string im = text.substr(0, text.size() - 1);
        return {0.0, parse_number(im)};
    }
    return {parse_number(text), 0.0};
}

struct ModelOptions {
    std::string uplus_source;
    std::string catalog_name;
    std::vector<std::string> params;
    std::string eps_literal;
    std::string config_path;

    double grid_half_width = 10.0;
    int grid_points = 2001;
    double tol_symmetry = 1e-9;
    double tol_schrodinger_factor = 10.0;
    double tol_decay = 1e-3;
    double tol_bounded = 1e3;
    double tol_match = 1e-3;

    CLI::App* cmd = nullptr;  // for flags-over-config precedence
};

void add_model_options(CLI::App* cmd, ModelOptions& o) {
    o.cmd = cmd;
    cmd->add_option("--uplus", o.uplus_source,
                    "generating function U+(x); with '--catalog pt-limit' this is f(x)");
    cmd->add_option("--catalog", o.catalog_name, "catalog entry: example1 | example2 | pt-limit");
    cmd->add_option("--param", o.params, "parameter binding name=value (value is a+bi)");
    cmd->add_option("--eps", o.eps_literal, "factorization energy as a+bi");
    cmd->add_option("--grid-L", o.grid_half_width, "grid half-width");
    cmd->add_option("--grid-N", o.grid_points, "grid points (odd, >= 5)");
    cmd->add_option("--tol-symmetry", o.tol_symmetry, "PT / identity check tolerance");
    cmd->add_option("--tol-schrodinger-factor", o.tol_schrodinger_factor,
                    "Schrodinger residual threshold factor (times h^2 scale)");
    cmd->add_option("--tol-decay", o.tol_decay, "bound-state edge decay threshold");
    cmd->add_option("--tol-bounded", o.tol_bounded, "continuum boundedness threshold");
    cmd->add_option("--tol-match", o.tol_match, "spectrum match distance tolerance");
    cmd->add_option("--config", o.config_path, "JSON config file (flags win over it)");
}

// flags > config file > defaults
void apply_config_file(ModelOptions& o) {
    if (o.config_path.empty()) return;
    std::ifstream in(o.config_path);
    if (!in) throw ptqes::InvalidParameters("cannot open config file " + o.config_path);
    json cfg = json::parse(in);

    auto unset = [&](const std::string& flag) { return o.cmd->count(flag) == 0; };
    if (cfg.contains("grid")) {
        if (cfg["grid"].contains("L") && unset("--grid-L"))
            o.grid_half_width = cfg["grid"]["L"].get<double>();
        if (cfg["grid"].contains("N") && unset("--grid-N"))
            o.grid_points = cfg["grid"]["N"].get<int>();
    }
    if (cfg.contains("tol")) {
        const json& t = cfg["tol"];
        if (t.contains("symmetry") && unset("--tol-symmetry"))
            o.tol_symmetry = t["symmetry"].get<double>();
        if (t.contains("schrodinger_factor") && unset("--tol-schrodinger-factor"))
            o.tol_schrodinger_factor = t["schrodinger_factor"].get<double>();
        if (t.contains("decay") && unset("--tol-decay")) o.tol_decay = t["decay"].get<double>();
        if (t.contains("bounded") && unset("--tol-bounded"))
            o.tol_bounded = t["bounded"].get<double>();
        if (t.contains("match") && unset("--tol-match")) o.tol_match = t["match"].get<double>();
    }
    if (cfg.contains("eps") && unset("--eps")) o.eps_literal = cfg["eps"].get<std::string>();
}

std::map<std::string, Complex> parse_params(const std::vector<std::string>& raw) {
    std::map<std::string, Complex> out;
    for (const std::string& p : raw) {
        std::size_t eq = p.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ptqes::InvalidParameters("malformed --param '" + p + "' (expected name=value)");
        std::string name = p.substr(0, eq);
        if (name == "i" || name == "x")
            throw ptqes::InvalidParameters("'" + name + "' cannot be used as a parameter name");
        out[name] = parse_complex_literal(p.substr(eq + 1));
    }
    return out;
}

double require_real(const std::map<std::string, Complex>& params, const std::string& name,
                    const std::string& entry) {
    auto it = params.find(name);
    if (it == params.end())
        throw ptqes::InvalidParameters(entry + " requires --param " + name + "=<value>");
    if (it->second.imag() != 0.0)
        throw ptqes::InvalidParameters(entry + " parameter " + name + " must be real");
    return it->second.real();
}

struct BuiltModel {
    ptqes::PTModel model;
    std::optional<ptqes::CatalogEntry> entry;
};

BuiltModel build_from_options(const ModelOptions& o) {
    if (o.grid_points < 5 || o.grid_points % 2 == 0)
        throw ptqes::InvalidParameters("--grid-N must be odd and at least 5");
    ptqes::Grid grid(o.grid_half_width, o.grid_points);

    if (o.eps_literal.empty()) throw ptqes::InvalidParameters("--eps is required");
    Complex eps = parse_complex_literal(o.eps_literal);
    std::map<std::string, Complex> params = parse_params(o.params);

    const bool have_expr = !o.uplus_source.empty();
    const bool have_catalog = !o.catalog_name.empty();

    if (have_catalog) {
        if (o.catalog_name == "example1") {
            double al = require_real(params, "al", "example1");
            double a = require_real(params, "a", "example1");
            double n_raw = require_real(params, "n", "example1");
            if (n_raw != std::floor(n_raw))
                throw ptqes::InvalidParameters("example1 parameter n must be an integer");
            ptqes::CatalogEntry entry = ptqes::example1(al, a, static_cast<int>(n_raw), eps);
            ptqes::PTModel model =
                ptqes::build_model(entry.u_plus, entry.epsilon, grid, entry.bindings);
            return {std::move(model), std::move(entry)};
        }
        if (o.catalog_name == "example2") {
            double al = require_real(params, "al", "example2");
            double k = require_real(params, "k", "example2");
            ptqes::CatalogEntry entry = ptqes::example2(al, k, eps);
            ptqes::PTModel model =
                ptqes::build_model(entry.u_plus, entry.epsilon, grid, entry.bindings);
            return {std::move(model), std::move(entry)};
        }
        if (o.catalog_name == "pt-limit") {
            if (!have_expr)
                throw ptqes::InvalidParameters("pt-limit needs --uplus as the f(x) expression");
            if (eps.imag() != 0.0)
                throw ptqes::InvalidParameters("pt-limit expects a real --eps");
            double B = require_real(params, "B", "pt-limit");
            ptqes::Bindings bindings;
            for (const auto& [name, value] : params)
                if (name != "B") bindings.bind_real(name, value.real());
            ptqes::Expr f = ptqes::parse(o.uplus_source);
            return {ptqes::pt_limit_model(f, B, eps.real(), grid, bindings), std::nullopt};
        }
        throw ptqes::InvalidParameters("unknown catalog entry '" + o.catalog_name +
                                       "' (try: example1, example2, pt-limit)");
    }

    if (!have_expr)
        throw ptqes::InvalidParameters("one of --uplus or --catalog is required");

    ptqes::Bindings bindings;
    for (const auto& [name, value] : params) {
        if (value.imag() == 0.0)
            bindings.bind_real(name, value.real());
        else
            bindings.bind_complex(name, value);
    }
    ptqes::Expr u_plus = ptqes::parse(o.uplus_source);
    return {ptqes::build_model(u_plus, ptqes::FactorizationEnergy{eps}, grid, bindings),
            std::nullopt};
}

ptqes::Tolerances tolerances_from(const ModelOptions& o) {
    ptqes::Tolerances t;
    t.symmetry = o.tol_symmetry;
    t.schrodinger_factor = o.tol_schrodinger_factor;
    t.decay = o.tol_decay;
    t.bounded = o.tol_bounded;
    return t;
}

std::string format17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json model_sidecar(const BuiltModel& built, const ptqes::VerificationReport& report) {
    json side{{"epsilon", {built.model.epsilon.value.real(), built.model.epsilon.value.imag()}},
              {"bindings", ptqes::bindings_to_json(built.model.bindings)},
              {"grid",
               {{"L", built.model.grid.half_width()}, {"N", built.model.grid.size()}}},
              {"psi_clamped", built.model.psi_clamped},
              {"report", ptqes::report_to_json(report)}};
    if (built.entry) {
        side["catalog"] = {{"name", built.entry->name},
                           {"exactly_solvable", built.entry->exactly_solvable},
                           {"notes", built.entry->notes}};
    }
    return side;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ptqes::Error("cannot write " + path);
    out << content;
}

int cmd_build(const ModelOptions& o, const std::string& format, const std::string& out_path) {
    BuiltModel built = build_from_options(o);
    ptqes::VerificationReport report = ptqes::run_battery(built.model, tolerances_from(o));
    const ptqes::PTModel& m = built.model;

    if (format == "csv") {
        std::string csv;
        csv += "x,u_plus_re,u_plus_im,u_minus_re,u_minus_im,w_re,w_im,v_re,v_im,psi_re,psi_im\n";
        for (int j = 0; j < m.grid.size(); ++j) {
            csv += format17(m.grid.point(j));
            for (const ptqes::SampledFunction* f : {&m.u_plus, &m.u_minus, &m.w, &m.v, &m.psi}) {
                csv += ',';
                csv += format17((*f)[j].real());
                csv += ',';
                csv += format17((*f)[j].imag());
            }
            csv += '\n';
        }
        write_text_file(out_path, csv);
        std::filesystem::path side_path(out_path);
        side_path.replace_extension(".json");
        if (side_path == std::filesystem::path(out_path))
            side_path.replace_extension(".report.json");
        write_text_file(side_path.string(), model_sidecar(built, report).dump(2) + "\n");
        std::cerr << "wrote " << out_path << " and " << side_path.string() << "\n";
    } else if (format == "json") {
        json columns;
        auto complex_column = [](const ptqes::SampledFunction& f) {
            json col = json::array();
            for (int j = 0; j < f.size(); ++j) col.push_back({f[j].real(), f[j].imag()});
            return col;
        };
        json xs = json::array();
        for (int j = 0; j < m.grid.size(); ++j) xs.push_back(m.grid.point(j));
        columns["x"] = xs;
        columns["u_plus"] = complex_column(m.u_plus);
        columns["u_minus"] = complex_column(m.u_minus);
        columns["w"] = complex_column(m.w);
        columns["v"] = complex_column(m.v);
        columns["psi"] = complex_column(m.psi);
        json doc = model_sidecar(built, report);
        doc["columns"] = std::move(columns);
        write_text_file(out_path, doc.dump(2) + "\n");
        std::cerr << "wrote " << out_path << "\n";
    } else {
        throw ptqes::InvalidParameters("--format must be csv or json");
    }
    return 0;
}

int cmd_verify(const ModelOptions& o) {
    BuiltModel built = build_from_options(o);
    ptqes::VerificationReport report = ptqes::run_battery(built.model, tolerances_from(o));
    std::cout << ptqes::report_to_json(report).dump(2) << "\n";
    return report.overall ? 0 : 1;
}

std::vector<Complex> sweep_path(const std::string& range_text, Complex eps0) {
    // start:stop:steps over Im(eps), Re(eps) fixed
    std::size_t c1 = range_text.find(':');
    std::size_t c2 = range_text.rfind(':');
    if (c1 == std::string::npos || c2 == c1)
        throw ptqes::InvalidParameters("--sweep-im-eps expects start:stop:steps");
    double start = 0.0, stop = 0.0;
    long steps = 0;
    try {
        start = std::stod(range_text.substr(0, c1));
        stop = std::stod(range_text.substr(c1 + 1, c2 - c1 - 1));
        steps = std::stol(range_text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ptqes::InvalidParameters("--sweep-im-eps expects numeric start:stop:steps");
    }
    if (steps < 1) throw ptqes::InvalidParameters("--sweep-im-eps needs at least one step");
    std::vector<Complex> path;
    for (long s = 0; s < steps; ++s) {
        double t = steps == 1 ? 0.0 : static_cast<double>(s) / (steps - 1);
        path.emplace_back(eps0.real(), start + t * (stop - start));
    }
    return path;
}

int run_sweep(const ModelOptions& o, const std::string& sweep_spec,
              const std::string& out_path) {
    if (o.uplus_source.empty() && o.catalog_name.empty())
        throw ptqes::InvalidParameters("sweep needs --uplus or --catalog");
    if (o.eps_literal.empty()) throw ptqes::InvalidParameters("--eps is required");
    Complex eps0 = parse_complex_literal(o.eps_literal);
    std::vector<Complex> path = sweep_path(sweep_spec, eps0);

    if (o.grid_points < 5 || o.grid_points % 2 == 0)
        throw ptqes::InvalidParameters("--grid-N must be odd and at least 5");
    ptqes::Grid grid(o.grid_half_width, o.grid_points);
    std::map<std::string, Complex> params = parse_params(o.params);

    ptqes::Expr u_plus;
    ptqes::Bindings bindings;
    if (!o.catalog_name.empty()) {
        if (o.catalog_name == "example1") {
            ptqes::CatalogEntry entry =
                ptqes::example1(require_real(params, "al", "example1"),
                                require_real(params, "a", "example1"),
                                static_cast<int>(require_real(params, "n", "example1")), eps0);
            u_plus = entry.u_plus;
            bindings = entry.bindings;
        } else if (o.catalog_name == "example2") {
            ptqes::CatalogEntry entry =
                ptqes::example2(require_real(params, "al", "example2"),
                                require_real(params, "k", "example2"), eps0);
            u_plus = entry.u_plus;
            bindings = entry.bindings;
        } else {
            throw ptqes::InvalidParameters("sweep supports --catalog example1 or example2");
        }
    } else {
        u_plus = ptqes::parse(o.uplus_source);
        for (const auto& [name, value] : params) {
            if (value.imag() == 0.0)
                bindings.bind_real(name, value.real());
            else
                bindings.bind_complex(name, value);
        }
    }

    std::vector<ptqes::SweepRecord> records =
        ptqes::sweep(u_plus, path, grid, bindings, tolerances_from(o));
    std::string text = ptqes::sweep_to_json(records).dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
    return 0;
}

int cmd_spectrum(const ModelOptions& o, bool match_eps, const std::string& sweep_spec,
                 const std::string& out_path) {
    if (!sweep_spec.empty()) return run_sweep(o, sweep_spec, out_path);

    BuiltModel built = build_from_options(o);
    ptqes::Spectrum spectrum = ptqes::eigenvalues(ptqes::discretize(built.model.v));

    json doc{{"spectrum", ptqes::spectrum_to_json(spectrum)},
             {"grid", {{"L", built.model.grid.half_width()}, {"N", built.model.grid.size()}}},
             {"epsilon",
              {built.model.epsilon.value.real(), built.model.epsilon.value.imag()}},
             {"max_backward_error", spectrum.max_backward_error}};
    if (match_eps) {
        doc["match"] = ptqes::match_to_json(
            ptqes::match_factorization_energy(spectrum, built.model.epsilon, o.tol_match));
    }
    std::string text = doc.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
    return 0;
}

int cmd_example() {
    std::cout << "example1   U+ = i*al/(x+i*a)^n       params: al, a, n (odd >= 1); "
                 "bound state iff Im(eps)/al < 0; n = 1 is the regularized PT harmonic "
                 "oscillator\n"
                 "example2   U+ = al*exp(i*k*x)         params: al, k; periodic; "
                 "Im(eps) = 0 is exactly solvable\n"
                 "pt-limit   W  = (f'/f - i*B/f)/2      params: B; --uplus gives f(x); "
                 "the U+ -> 0 limit with a PT-symmetric wave function and real eps\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"construction and numerical verification of PT-symmetric "
                 "quasi-exactly-solvable potentials"};
    app.require_subcommand(1);

    ModelOptions build_opts, verify_opts, spectrum_opts, sweep_opts;
    std::string build_format = "csv";
    std::string build_out = "model.csv";
    std::string spectrum_out, sweep_out, spectrum_sweep_spec, sweep_spec;
    bool match_eps = false;

    CLI::App* build = app.add_subcommand("build", "construct a model and write CSV/JSON files");
    add_model_options(build, build_opts);
    build->add_option("--format", build_format, "csv | json");
    build->add_option("--out", build_out, "output path");

    CLI::App* verify = app.add_subcommand("verify", "run the verification battery");
    add_model_options(verify, verify_opts);

    CLI::App* spectrum =
        app.add_subcommand("spectrum", "discretize and compute the complex spectrum");
    add_model_options(spectrum, spectrum_opts);
    spectrum->add_flag("--match-eps", match_eps,
                       "report the nearest eigenvalue to the factorization energy");
    spectrum->add_option("--sweep-im-eps", spectrum_sweep_spec,
                         "start:stop:steps sweep over Im(eps) (acts like the sweep command)");
    spectrum->add_option("--out", spectrum_out, "output path (stdout when omitted)");

    CLI::App* sweep = app.add_subcommand("sweep", "sweep Im(eps) and record per-point results");
    add_model_options(sweep, sweep_opts);
    sweep->add_option("--sweep-im-eps", sweep_spec, "start:stop:steps over Im(eps)")
        ->required();
    sweep->add_option("--out", sweep_out, "output path (stdout when omitted)");

    CLI::App* example = app.add_subcommand("example", "list the catalog entries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (build->parsed()) {
            apply_config_file(build_opts);
            return cmd_build(build_opts, build_format, build_out);
        }
        if (verify->parsed()) {
            apply_config_file(verify_opts);
            return cmd_verify(verify_opts);
        }
        if (spectrum->parsed()) {
            apply_config_file(spectrum_opts);
            return cmd_spectrum(spectrum_opts, match_eps, spectrum_sweep_spec, spectrum_out);
        }
        if (sweep->parsed()) {
            apply_config_file(sweep_opts);
            return run_sweep(sweep_opts, sweep_spec, sweep_out);
        }
        if (example->parsed()) return cmd_example();
    } catch (const ptqes::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ptqes::InvalidParameters& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ptqes::WrongEntry& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ptqes::Error& e) {
        // pipeline/numerical failures: ZeroGeneratingFunction, EvalError,
        // NonConvergence
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
