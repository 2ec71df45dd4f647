// Copyright 2026 The Decoshield Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "decoshield/cli.hpp"

#include "decoshield/checks.hpp"
#include "decoshield/entangle_protection.hpp"
#include "decoshield/qubit_protection.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace decoshield::cli {

namespace {

// Raised for bad values that CLI11 cannot validate by itself.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class CsvWriter {
public:
    CsvWriter(std::ostream& sink, const std::vector<std::string>& header) : sink_(sink) {
        row(header);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) sink_ << ',';
            sink_ << cells[i];
        }
        sink_ << "\r\n";
        ++rows_;
    }

    void numbers(std::initializer_list<double> values) {
        std::vector<std::string> cells;
        cells.reserve(values.size());
        for (double v : values) cells.push_back(format_number(v));
        row(cells);
    }

    long data_rows() const { return rows_ - 1; }

private:
    std::ostream& sink_;
    long rows_ = 0;
};

/// Opens --out or falls back to `fallback`.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw UsageError("--out: cannot open '" + path + "' for writing");
            stream_ = file_.get();
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

struct StrengthGrid {
    int grid = 0;
    std::string m_range;
    std::string n_range;

    std::vector<double> axis(const std::string& text, const char* flag) const {
        if (!text.empty()) {
            Range range{};
            try {
                range = parse_range(text);
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string(flag) + ": " + e.what());
            }
            if (!(range.lo > 0.0)) throw UsageError(std::string(flag) + ": strengths must be > 0");
            return range.points();
        }
        std::vector<double> out;
        for (int k = 1; k <= grid; ++k) out.push_back(2.0 * k / grid);
        return out;
    }
};

void add_strength_grid(CLI::App& cmd, StrengthGrid& g) {
    g.grid = 100;
    cmd.add_option("--grid", g.grid, "N points k*2/N, k=1..N, for each of m and n")
        ->check(CLI::Range(2, 100000));
    cmd.add_option("--m-range", g.m_range, "pre-channel strengths lo:hi:steps (overrides --grid)");
    cmd.add_option("--n-range", g.n_range, "post-channel strengths lo:hi:steps (overrides --grid)");
}

CLI::Option* add_unit(CLI::App& cmd, const std::string& name, double& target, const std::string& help) {
    return cmd.add_option(name, target, help)->check(CLI::Range(0.0, 1.0));
}

/// Appends `--key value` for each config entry whose flag is not already on
/// the command line, so explicit flags take precedence.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw UsageError("--config: cannot read '" + path + "'");

    auto present = [&](const std::string& flag) {
        return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };

    std::vector<std::string> merged = args;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("--config: line " + std::to_string(lineno) + " is not key=value");
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.rfind("--", 0) != 0) key = "--" + key;
        if (!present(key)) {
            merged.push_back(key);
            merged.push_back(value);
        }
    }
    return merged;
}

void print_kv(std::ostream& out, const std::string& key, double v) {
    out << key << '=' << format_number(v) << '\n';
}

void print_kv(std::ostream& out, const std::string& key, bool v) {
    out << key << '=' << (v ? "true" : "false") << '\n';
}

struct MaxTracker {
    double value = -std::numeric_limits<double>::infinity();
    double x = 0.0, y = 0.0;
    void offer(double v, double at_x, double at_y) {
        if (v > value) {
            value = v;
            x = at_x;
            y = at_y;
        }
    }
};

}  // namespace

std::vector<double> Range::points() const {
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        out[static_cast<std::size_t>(k)] = k == steps - 1 ? hi : lo + (hi - lo) * k / (steps - 1);
    }
    return out;
}

Range parse_range(const std::string& text) {
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? first : text.find(':', first + 1);
    if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
        throw std::invalid_argument("expected lo:hi:steps, got '" + text + "'");
    }
    Range r{};
    try {
        std::size_t used = 0;
        const std::string lo = text.substr(0, first);
        const std::string hi = text.substr(first + 1, second - first - 1);
        const std::string steps = text.substr(second + 1);
        r.lo = std::stod(lo, &used);
        if (used != lo.size()) throw std::invalid_argument("lo");
        r.hi = std::stod(hi, &used);
        if (used != hi.size()) throw std::invalid_argument("hi");
        r.steps = std::stoi(steps, &used);
        if (used != steps.size()) throw std::invalid_argument("steps");
    } catch (const std::exception&) {
        throw std::invalid_argument("expected lo:hi:steps, got '" + text + "'");
    }
    if (r.steps < 2) throw std::invalid_argument("steps must be >= 2");
    if (!(r.lo <= r.hi)) throw std::invalid_argument("lo must not exceed hi");
    return r;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weak-measurement protection against generalized amplitude damping", "decoshield"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    std::string config_path;
    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key=value file; flags given on the command line win");
    };

    // qubit-fidelity
    double qf_p = 0.8, qf_r = 0.3, qf_phi = 0.0;
    std::string qf_out;
    StrengthGrid qf_grid;
    auto* qf = app.add_subcommand("qubit-fidelity",
                                  "Equatorial-state fidelity over (m, n). CSV: m,n,fidelity,success_prob");
    add_unit(*qf, "--p", qf_p, "GAD p");
    add_unit(*qf, "--r", qf_r, "GAD r");
    qf->add_option("--phi", qf_phi, "azimuth of the input state (radians)");
    add_strength_grid(*qf, qf_grid);
    qf->add_option("--out", qf_out, "CSV path (default: stdout)");
    add_config(qf);

    // qubit-average
    double qa_p = 0.8, qa_r = 0.3;
    std::string qa_out;
    StrengthGrid qa_grid;
    auto* qa = app.add_subcommand("qubit-average",
                                  "Six-state average fidelity over (m, n). CSV: m,n,avg_fidelity,f0,f1,fe");
    add_unit(*qa, "--p", qa_p, "GAD p");
    add_unit(*qa, "--r", qa_r, "GAD r");
    add_strength_grid(*qa, qa_grid);
    qa->add_option("--out", qa_out, "CSV path (default: stdout)");
    add_config(qa);

    // qkd-error
    double qk_p = 0.8, qk_r = 0.3;
    std::string qk_out;
    StrengthGrid qk_grid;
    auto* qk = app.add_subcommand("qkd-error",
                                  "BB84 error rate over (m, n). CSV: m,n,error_rate,success_prob");
    add_unit(*qk, "--p", qk_p, "GAD p");
    add_unit(*qk, "--r", qk_r, "GAD r");
    add_strength_grid(*qk, qk_grid);
    qk->add_option("--out", qk_out, "CSV path (default: stdout)");
    add_config(qk);

    // entangle
    double en_p1 = 0.9, en_r1 = 0.5, en_p2 = 0.95, en_r2 = 0.3, en_alpha_sq = 0.5;
    std::string en_sweep = "0:1:200", en_out;
    std::optional<double> en_n1, en_n2;
    auto* en = app.add_subcommand(
        "entangle",
        "Concurrence versus m (m2 = 1; n1, n2 optimal unless fixed). "
        "CSV: m,n1,n2,lambda2,concurrence,success_prob");
    add_unit(*en, "--p1", en_p1, "GAD p of channel 1");
    add_unit(*en, "--r1", en_r1, "GAD r of channel 1");
    add_unit(*en, "--p2", en_p2, "GAD p of channel 2");
    add_unit(*en, "--r2", en_r2, "GAD r of channel 2");
    add_unit(*en, "--alpha-sq", en_alpha_sq, "|alpha|^2 of alpha|00> + beta|11>");
    en->add_option("--sweep-m", en_sweep, "pre-channel strength m = m1, lo:hi:steps");
    en->add_option("--n1", en_n1, "fixed reversal strength on qubit 1")->check(CLI::PositiveNumber);
    en->add_option("--n2", en_n2, "fixed reversal strength on qubit 2")->check(CLI::PositiveNumber);
    en->add_option("--out", en_out, "CSV path (default: stdout)");
    add_config(en);

    // optimal
    std::string op_target = "qubit";
    double op_p = 0.8, op_r = 0.3, op_p1 = 0.9, op_r1 = 0.5, op_p2 = 0.95, op_r2 = 0.3, op_alpha_sq = 0.5;
    auto* op = app.add_subcommand("optimal", "Closed-form optimal strengths as key=value lines");
    op->add_option("--target", op_target, "qubit | average | entangle")
        ->check(CLI::IsMember({"qubit", "average", "entangle"}));
    add_unit(*op, "--p", op_p, "GAD p (qubit, average)");
    add_unit(*op, "--r", op_r, "GAD r (qubit, average)");
    add_unit(*op, "--p1", op_p1, "GAD p of channel 1 (entangle)");
    add_unit(*op, "--r1", op_r1, "GAD r of channel 1 (entangle)");
    add_unit(*op, "--p2", op_p2, "GAD p of channel 2 (entangle)");
    add_unit(*op, "--r2", op_r2, "GAD r of channel 2 (entangle)");
    add_unit(*op, "--alpha-sq", op_alpha_sq, "|alpha|^2 (entangle)");
    add_config(op);

    auto* vf = app.add_subcommand("verify", "Run every oracle cross-check; exit 1 on any failure");

    try {
        std::vector<std::string> args = merge_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (qf->parsed()) {
            const GadParams params(qf_p, qf_r);
            const auto ms = qf_grid.axis(qf_grid.m_range, "--m-range");
            const auto ns = qf_grid.axis(qf_grid.n_range, "--n-range");
            Output sink(qf_out, out);
            CsvWriter csv(sink.stream(), {"m", "n", "fidelity", "success_prob"});
            MaxTracker best;
            for (double m : ms) {
                for (double n : ns) {
                    const double f = qubit::equatorial_fidelity(params, m, n);
                    csv.numbers({m, n, f, qubit::success_probability(params, m, n)});
                    best.offer(f, m, n);
                }
            }
            if (!qf_out.empty()) {
                out << "rows=" << csv.data_rows() << " max_fidelity=" << format_number(best.value)
                    << " at m=" << format_number(best.x) << " n=" << format_number(best.y) << '\n';
            }
        } else if (qa->parsed()) {
            const GadParams params(qa_p, qa_r);
            const auto ms = qa_grid.axis(qa_grid.m_range, "--m-range");
            const auto ns = qa_grid.axis(qa_grid.n_range, "--n-range");
            Output sink(qa_out, out);
            CsvWriter csv(sink.stream(), {"m", "n", "avg_fidelity", "f0", "f1", "fe"});
            MaxTracker best;
            for (double m : ms) {
                for (double n : ns) {
                    const auto rep = qubit::average_fidelity_six(params, m, n);
                    csv.numbers({m, n, rep.favg, rep.f0, rep.f1, rep.fe});
                    best.offer(rep.favg, m, n);
                }
            }
            if (!qa_out.empty()) {
                out << "rows=" << csv.data_rows() << " max_avg_fidelity=" << format_number(best.value)
                    << " at m=" << format_number(best.x) << " n=" << format_number(best.y) << '\n';
            }
        } else if (qk->parsed()) {
            const GadParams params(qk_p, qk_r);
            const auto ms = qk_grid.axis(qk_grid.m_range, "--m-range");
            const auto ns = qk_grid.axis(qk_grid.n_range, "--n-range");
            Output sink(qk_out, out);
            CsvWriter csv(sink.stream(), {"m", "n", "error_rate", "success_prob"});
            MaxTracker best;
            for (double m : ms) {
                for (double n : ns) {
                    const double re = qubit::bb84_error_rate(params, m, n);
                    csv.numbers({m, n, re, qubit::success_probability(params, m, n)});
                    best.offer(-re, m, n);
                }
            }
            if (!qk_out.empty()) {
                out << "rows=" << csv.data_rows() << " min_error_rate=" << format_number(-best.value)
                    << " at m=" << format_number(best.x) << " n=" << format_number(best.y) << '\n';
            }
        } else if (en->parsed()) {
            Range sweep{};
            try {
                sweep = parse_range(en_sweep);
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("--sweep-m: ") + e.what());
            }
            if (sweep.lo < 0.0) throw UsageError("--sweep-m: strengths must be >= 0");
            const GadParams ch1(en_p1, en_r1), ch2(en_p2, en_r2);
            const auto input = entangle::EntangledInput::from_alpha_sq(en_alpha_sq);
            Output sink(en_out, out);
            CsvWriter csv(sink.stream(), {"m", "n1", "n2", "lambda2", "concurrence", "success_prob"});
            MaxTracker best;
            for (double m : sweep.points()) {
                const auto x = entangle::pre_measured_state(input, ch1, ch2, m, 1.0);
                double n1 = 1.0, n2 = 1.0;
                if (en_n1 && en_n2) {
                    n1 = *en_n1;
                    n2 = *en_n2;
                } else if (x.a > 0.0 && x.b > 0.0 && x.c > 0.0) {
                    const auto n = entangle::optimal_reversal(x);
                    n1 = en_n1.value_or(n.n1);
                    n2 = en_n2.value_or(n.n2);
                }
                const double lambda2 = entangle::concurrence_lambda2(x, n1, n2);
                const double norm = n1 * n1 * n2 * n2 * x.a + n1 * n1 * x.b + n2 * n2 * x.c + x.d;
                auto att = [](double c) { return c > 1.0 ? 1.0 / (c * c) : 1.0; };
                const double prob = norm * att(m) * att(n1) * att(n2);
                const double conc = std::max(0.0, lambda2);
                csv.numbers({m, n1, n2, lambda2, conc, prob});
                best.offer(conc, m, 0.0);
            }
            if (!en_out.empty()) {
                out << "rows=" << csv.data_rows() << " max_concurrence=" << format_number(best.value)
                    << " at m=" << format_number(best.x) << '\n';
            }
        } else if (op->parsed()) {
            if (op_target == "entangle") {
                const auto rep = entangle::optimal_parameters(entangle::EntangledInput::from_alpha_sq(op_alpha_sq),
                                                              GadParams(op_p1, op_r1), GadParams(op_p2, op_r2));
                print_kv(out, "lambda1", rep.lambda1);
                print_kv(out, "lambda2_max", rep.lambda2_max);
                print_kv(out, "concurrence", rep.concurrence);
                print_kv(out, "m", rep.m_opt);
                print_kv(out, "m2", 1.0);
                print_kv(out, "n1", rep.n1_opt);
                print_kv(out, "n2", rep.n2_opt);
                print_kv(out, "h", rep.h);
                print_kv(out, "alpha_sq_opt", rep.alpha_sq_opt);
                print_kv(out, "success_prob", rep.success_prob);
                print_kv(out, "zero_entanglement", rep.zero_entanglement);
                print_kv(out, "projective_limit", rep.projective_limit);
                print_kv(out, "degenerate_h", rep.degenerate_h);
            } else {
                const GadParams params(op_p, op_r);
                const auto best = op_target == "qubit" ? qubit::optimal_strengths(params)
                                                       : qubit::optimal_average(params);
                print_kv(out, "m", best.m);
                print_kv(out, "n", best.n);
                print_kv(out, op_target == "qubit" ? "f_max" : "favg_max", best.f_max);
                print_kv(out, op_target == "qubit" ? "baseline" : "baseline_avg",
                         op_target == "qubit" ? qubit::baseline_fidelity(params)
                                              : qubit::baseline_average_fidelity(params));
                print_kv(out, "projective", best.projective);
            }
        } else if (vf->parsed()) {
            bool all_passed = true;
            for (const auto& check : checks::run_all()) {
                out << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
                all_passed = all_passed && check.passed;
            }
            return all_passed ? kExitOk : kExitVerifyFailed;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const StateError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace decoshield::cli
