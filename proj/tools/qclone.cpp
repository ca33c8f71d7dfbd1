// qclone.cpp
// Command-line surface: clone reports, figure-data emission, verification
// suites and capacity tables, with deterministic CSV/JSON output.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qclone/qclone.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qclone;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

// all numeric output carries 12 significant digits
std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// doubles are rounded through the 12-digit representation before they enter
// a JSON document, so serialized output matches the text format
double json_num(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back({json_num(m(r, c).real()), json_num(m(r, c).imag())});
        }
        rows.push_back(row);
    }
    return rows;
}

std::string matrix_to_text(const ComplexMatrix& m) {
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += "  [";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out += ", ";
            out += fmt12(m(r, c).real());
            const double im = m(r, c).imag();
            out += (im < 0 ? " - " : " + ") + fmt12(std::abs(im)) + "i";
        }
        out += "]\n";
    }
    return out;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output path '" + path + "'");
    f << text;
    if (!f) throw std::runtime_error("failed writing output path '" + path + "'");
}

std::vector<double> parse_number_list(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty entry in list '" + spec + "'");
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument("malformed number '" + item + "'");
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::map<std::string, double> parse_tolerance_overrides(const std::vector<std::string>& specs) {
    std::map<std::string, double> out;
    for (const auto& s : specs) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("tolerance override must be NAME=VALUE, got '" + s + "'");
        }
        out[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
    }
    return out;
}

// --state accepts Bloch angles "theta,phi", a Bloch vector "sx,sy,sz", or
// amplitudes "re0,im0,re1,im1"
StateVector parse_state(const std::string& spec) {
    const auto v = parse_number_list(spec);
    if (v.size() == 2) {
        const double th = v[0], ph = v[1];
        return StateVector({std::cos(0.5 * th), std::polar(std::sin(0.5 * th), ph)});
    }
    if (v.size() == 3) {
        const BlochVector s{v[0], v[1], v[2]};
        if (s.norm() > 1.0 + 1e-9) {
            throw std::invalid_argument("Bloch norm > 1: |s| = " + fmt12(s.norm()));
        }
        if (s.norm() < 1.0 - 1e-6) {
            throw std::invalid_argument("Bloch vector is not on the sphere (|s| = " +
                                        fmt12(s.norm()) + "); cloner input must be pure");
        }
        const double th = std::acos(std::max(-1.0, std::min(1.0, s.z)));
        const double ph = std::atan2(s.y, s.x);
        return StateVector({std::cos(0.5 * th), std::polar(std::sin(0.5 * th), ph)});
    }
    if (v.size() == 4) {
        std::vector<Complex> amps = {Complex(v[0], v[1]), Complex(v[2], v[3])};
        double n2 = 0.0;
        for (const auto& a : amps) n2 += std::norm(a);
        if (std::abs(n2 - 1.0) > 1e-6) {
            throw std::invalid_argument("amplitudes are not normalized: |psi|^2 = " + fmt12(n2));
        }
        return StateVector::normalized(std::move(amps));
    }
    throw std::invalid_argument("state spec needs 2 (angles), 3 (Bloch) or 4 (amplitude) values");
}

struct CommonFlags {
    int grid = 200;
    std::uint64_t seed = 42;
    std::uint64_t shots = 100000;
    std::string format = "text";
    std::string out;
    bool continuity = false;
    std::vector<std::string> tol_specs;
};

json config_json(const CommonFlags& f) {
    json cfg;
    cfg["grid"] = f.grid;
    cfg["seed"] = f.seed;
    cfg["shots"] = f.shots;
    cfg["format"] = f.format;
    cfg["continuity"] = f.continuity;
    return cfg;
}

int cmd_universal(const CommonFlags& f, const std::string& state_spec) {
    const auto psi = parse_state(state_spec);
    const auto iso = universal::build_optimal_isometry();
    const auto out = universal::clone(iso, psi);
    const double eta = universal::shrink_factor(iso, psi);
    const double fid = fidelity_pure(out.rho1, psi);
    const double fg = universal::global_fidelity(iso, psi);
    const auto s_in = bloch_from_density(DensityOperator::pure(psi));
    const auto s_out = bloch_from_density(out.rho1);

    if (f.format == "json") {
        json doc;
        doc["command"] = "universal";
        doc["config"] = config_json(f);
        json res;
        res["input_bloch"] = {json_num(s_in.x), json_num(s_in.y), json_num(s_in.z)};
        res["output_bloch"] = {json_num(s_out.x), json_num(s_out.y), json_num(s_out.z)};
        res["rho1"] = matrix_to_json(out.rho1.matrix());
        res["rho2"] = matrix_to_json(out.rho2.matrix());
        res["rho_ancilla"] = matrix_to_json(out.rho_ancilla.matrix());
        res["eta"] = json_num(eta);
        res["fidelity"] = json_num(fid);
        res["global_fidelity"] = json_num(fg);
        doc["results"] = res;
        doc["checks"] = json::array();
        write_output(doc.dump(2) + "\n", f.out);
    } else {
        std::string text;
        text += "input bloch = (" + fmt12(s_in.x) + ", " + fmt12(s_in.y) + ", " + fmt12(s_in.z) +
                ")\n";
        text += "rho1 =\n" + matrix_to_text(out.rho1.matrix());
        text += "rho2 =\n" + matrix_to_text(out.rho2.matrix());
        text += "eta = " + fmt12(eta) + "\n";
        text += "fidelity = " + fmt12(fid) + "\n";
        text += "global fidelity = " + fmt12(fg) + "\n";
        write_output(text, f.out);
    }
    return kExitOk;
}

int cmd_figures(const CommonFlags& f, const std::string& which) {
    if (f.grid < 2) throw std::invalid_argument("--grid must be at least 2");
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    if (which == "fig1") {
        columns = {"theta", "S", "F_l1", "F_l2", "F_l3"};
        for (int i = 0; i < f.grid; ++i) {
            const double theta = (statedep::kPi / 4.0) * i / (f.grid - 1);
            const double s = std::sin(2.0 * theta);
            rows.push_back({theta, s, statedep::local_fidelity_1(s),
                            eavesdrop::local_fidelity_2(s), eavesdrop::local_fidelity_3(s)});
        }
    } else if (which == "fig2") {
        columns = {"theta", "S", "s_modulus"};
        for (int i = 0; i < f.grid; ++i) {
            const double theta = (statedep::kPi / 4.0) * i / (f.grid - 1);
            const statedep::TwoStateEnsemble e(theta);
            rows.push_back({theta, e.overlap(), statedep::bloch_modulus(e)});
        }
    } else {
        throw std::invalid_argument("figure must be fig1 or fig2, got '" + which + "'");
    }

    if (f.format == "json") {
        json doc;
        doc["command"] = "figures";
        doc["config"] = config_json(f);
        doc["config"]["which"] = which;
        json jrows = json::array();
        for (const auto& row : rows) {
            json jr;
            for (std::size_t c = 0; c < columns.size(); ++c) jr[columns[c]] = json_num(row[c]);
            jrows.push_back(jr);
        }
        doc["results"] = {{"rows", jrows}};
        doc["checks"] = json::array();
        write_output(doc.dump(2) + "\n", f.out);
    } else {
        std::string csv;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) csv += ",";
            csv += columns[c];
        }
        csv += "\n";
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) csv += ",";
                csv += fmt12(row[c]);
            }
            csv += "\n";
        }
        write_output(csv, f.out);
    }
    return kExitOk;
}

int cmd_verify(const CommonFlags& f, const std::string& suite_name) {
    verify::VerifyOptions vopt;
    vopt.seed = f.seed;
    vopt.shots = f.shots;
    vopt.tolerance_overrides = parse_tolerance_overrides(f.tol_specs);

    std::vector<verify::Suite> suites;
    if (suite_name == "all") {
        suites = verify::verify_all(vopt);
    } else {
        suites.push_back(verify::suite_by_name(suite_name, vopt));
    }

    bool all_pass = true;
    for (const auto& s : suites) all_pass = all_pass && s.pass();

    if (f.format == "json") {
        json doc;
        doc["command"] = "verify";
        doc["config"] = config_json(f);
        doc["config"]["suite"] = suite_name;
        json res;
        res["pass"] = all_pass;
        json flags = json::array();
        for (const auto& s : suites)
            for (const auto& fl : s.flags) flags.push_back(fl);
        res["flags"] = flags;
        doc["results"] = res;
        json checks = json::array();
        for (const auto& s : suites) {
            for (const auto& c : s.checks) {
                json jc;
                jc["name"] = c.name;
                jc["value"] = json_num(c.value);
                jc["expected"] = json_num(c.expected);
                jc["tolerance"] = json_num(c.tolerance);
                jc["pass"] = c.pass;
                checks.push_back(jc);
            }
        }
        doc["checks"] = checks;
        write_output(doc.dump(2) + "\n", f.out);
    } else {
        std::string text;
        for (const auto& s : suites) {
            text += "suite " + s.name + "\n";
            for (const auto& c : s.checks) {
                text += std::string("  [") + (c.pass ? "PASS" : "FAIL") + "] " + c.name +
                        "  value=" + fmt12(c.value) + " expected=" + fmt12(c.expected) +
                        " tolerance=" + fmt12(c.tolerance) + "\n";
            }
            for (const auto& fl : s.flags) text += "  [FLAG] " + fl + "\n";
        }
        text += std::string("overall: ") + (all_pass ? "PASS" : "FAIL") + "\n";
        write_output(text, f.out);
    }
    return all_pass ? kExitOk : kExitVerifyFailure;
}

int cmd_capacity(const CommonFlags& f, const std::string& eta_spec) {
    std::vector<double> etas;
    if (!eta_spec.empty()) {
        etas = parse_number_list(eta_spec);
    } else {
        if (f.grid < 2) throw std::invalid_argument("--grid must be at least 2");
        for (int i = 0; i < f.grid; ++i) etas.push_back(static_cast<double>(i) / (f.grid - 1));
    }
    for (double eta : etas) {
        if (eta < 0.0 || eta > 1.0) {
            throw std::invalid_argument("eta must lie in [0, 1], got " + fmt12(eta));
        }
    }

    if (f.format == "json") {
        json doc;
        doc["command"] = "capacity";
        doc["config"] = config_json(f);
        json rows = json::array();
        for (double eta : etas) {
            const auto b = capacity::q_upper_bound(eta, f.continuity);
            json row;
            row["eta"] = json_num(eta);
            row["bound"] = json_num(b.bound);
            row["regime"] = b.regime == capacity::BoundRegime::Zero ? "zero" : "entropic";
            if (b.conditional_linear_bound) {
                row["conditional_bound"] = json_num(*b.conditional_linear_bound);
            }
            rows.push_back(row);
        }
        doc["results"] = {{"rows", rows}};
        doc["checks"] = json::array();
        write_output(doc.dump(2) + "\n", f.out);
    } else {
        std::string csv = f.continuity ? "eta,bound,conditional_bound\n" : "eta,bound\n";
        for (double eta : etas) {
            const auto b = capacity::q_upper_bound(eta, f.continuity);
            csv += fmt12(eta) + "," + fmt12(b.bound);
            if (b.conditional_linear_bound) csv += "," + fmt12(*b.conditional_linear_bound);
            csv += "\n";
        }
        write_output(csv, f.out);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal 1->2 qubit cloning laboratory"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string state_spec = "0,0,1";
    std::string figure = "fig1";
    std::string suite = "all";
    std::string eta_spec;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--grid", flags.grid, "grid size for curves and tables");
        sub->add_option("--seed", flags.seed, "64-bit seed for sampled checks");
        sub->add_option("--shots", flags.shots, "shot count for sampling statistics");
        sub->add_option("--format", flags.format, "output format: text, csv or json")
            ->check(CLI::IsMember({"text", "csv", "json"}));
        sub->add_option("--out", flags.out, "write output to this path instead of stdout");
        sub->add_flag("--continuity", flags.continuity,
                      "also report the continuity-assumed linear capacity bound");
        sub->add_option("--tol", flags.tol_specs, "tolerance override NAME=VALUE (repeatable)");
    };

    auto* uni = app.add_subcommand("universal", "clone a state with the optimal universal cloner");
    uni->add_option("--state", state_spec,
                    "input as Bloch angles 'theta,phi', Bloch vector 'sx,sy,sz' or amplitudes "
                    "'re0,im0,re1,im1'");
    add_common(uni);

    auto* fig = app.add_subcommand("figures", "emit figure data as CSV");
    fig->add_option("which", figure, "fig1 (local fidelities) or fig2 (Bloch modulus)");
    add_common(fig);

    auto* ver = app.add_subcommand("verify", "run verification suites");
    ver->add_option("suite", suite,
                    "universal, teleport, statedep, eavesdrop, optimize, capacity or all");
    add_common(ver);

    auto* cap = app.add_subcommand("capacity", "depolarizing-channel capacity bound table");
    cap->add_option("--eta", eta_spec, "comma-separated eta values (default: --grid over [0,1])");
    add_common(cap);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(uni)) return cmd_universal(flags, state_spec);
        if (app.got_subcommand(fig)) return cmd_figures(flags, figure);
        if (app.got_subcommand(ver)) return cmd_verify(flags, suite);
        if (app.got_subcommand(cap)) return cmd_capacity(flags, eta_spec);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailure;
    }
    return kExitUsage;
}
