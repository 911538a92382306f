// nesskit_main.cpp — command-line interface
//
// Subcommands: solve (one chain, chosen measures), sweep (config- or
// preset-driven parameter grids), fit (CMI scaling-law fit from a sweep CSV),
// kato (interior-site correlation bound), presets (catalog). Exit codes:
// 0 success, 1 invalid input or arguments, 2 solver/runtime failure.
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nesskit/config.hpp"
#include "nesskit/errors.hpp"
#include "nesskit/gaussian.hpp"
#include "nesskit/ness.hpp"
#include "nesskit/result_table.hpp"
#include "nesskit/scaling.hpp"
#include "nesskit/sweep.hpp"
#include "nesskit/transport.hpp"

namespace {

struct OutputOpts {
    std::string path;          // empty: stdout
    std::string format = "csv";
};

void add_output_options(CLI::App* cmd, OutputOpts& out) {
    cmd->add_option("--out", out.path, "output file (default: stdout)");
    cmd->add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

void add_param_options(CLI::App* cmd, nesskit::ChainParams& p) {
    cmd->add_option("--L", p.L, "chain length")->capture_default_str();
    cmd->add_option("--omega", p.omega, "on-site frequency")->capture_default_str();
    cmd->add_option("--lambda", p.lambda, "hopping strength")->capture_default_str();
    cmd->add_option("--gamma", p.gamma, "boundary coupling")->capture_default_str();
    cmd->add_option("--Gamma", p.Gamma, "bulk self-consistent coupling")
        ->capture_default_str();
    cmd->add_option("--N1", p.left.nbar, "left bath thermal occupation")
        ->capture_default_str();
    cmd->add_option("--NL", p.right.nbar, "right bath thermal occupation")
        ->capture_default_str();
    cmd->add_option("--r1", p.left.r, "left bath squeezing amplitude")
        ->capture_default_str();
    cmd->add_option("--theta1", p.left.theta, "left bath squeezing phase")
        ->capture_default_str();
    cmd->add_option("--rL", p.right.r, "right bath squeezing amplitude")
        ->capture_default_str();
    cmd->add_option("--thetaL", p.right.theta, "right bath squeezing phase")
        ->capture_default_str();
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        const size_t stop = text.find(',', start);
        parts.push_back(text.substr(start, stop == std::string::npos ? stop : stop - start));
        if (stop == std::string::npos)
            break;
        start = stop + 1;
    }
    return parts;
}

void emit(const nesskit::ResultTable& table, const OutputOpts& out) {
    const nesskit::TableFormat fmt =
        out.format == "json" ? nesskit::TableFormat::json : nesskit::TableFormat::csv;
    if (out.path.empty())
        std::cout << (fmt == nesskit::TableFormat::json ? nesskit::to_json(table)
                                                        : nesskit::to_csv(table));
    else
        nesskit::write_table(table, out.path, fmt);
}

nesskit::Partition partition_for(const std::string& rule, int L, int b, int k,
                                 const std::vector<int>& blocks) {
    const nesskit::PartitionRule pr = nesskit::partition_rule_from_string(rule);
    if (pr == nesskit::PartitionRule::symmetric)
        return nesskit::symmetric_tripartition(L, b);
    const int cut = k == 0 ? L / 2 : k;
    if (pr == nesskit::PartitionRule::bipartition) {
        if (cut < 1 || cut >= L)
            throw std::invalid_argument("cut site k out of range");
        return nesskit::Partition{{nesskit::site_range(1, cut), nesskit::SiteSet{},
                                   nesskit::site_range(cut + 1, L)}};
    }
    if (blocks.size() != 3)
        throw std::invalid_argument("the blocks rule needs exactly 3 block sizes");
    const int na = blocks[0], nb = blocks[1], nc = blocks[2];
    if (na < 1 || nb < 0 || nc < 1 || na + nb + nc != L)
        throw std::invalid_argument("block sizes do not tile the chain");
    nesskit::Partition p;
    p.blocks.push_back(nesskit::site_range(1, na));
    p.blocks.push_back(nb > 0 ? nesskit::site_range(na + 1, na + nb) : nesskit::SiteSet{});
    p.blocks.push_back(nesskit::site_range(na + nb + 1, L));
    return p;
}

int run_solve(const nesskit::ChainParams& params, const std::string& measure_list,
              const std::string& rule, int b, int k, const std::vector<int>& blocks,
              const OutputOpts& out) {
    std::vector<nesskit::Measure> measures;
    for (const std::string& name : split_commas(measure_list))
        measures.push_back(nesskit::measure_from_string(name));
    if (measures.empty())
        throw std::invalid_argument("no measures selected");

    const nesskit::MomentMatrices state = nesskit::analytic_ness(params);

    nesskit::ResultTable table;
    std::vector<nesskit::Cell> row;
    for (nesskit::Measure m : measures) {
        switch (m) {
        case nesskit::Measure::profile: {
            table.columns.emplace_back("profile");
            const Eigen::VectorXd prof = nesskit::occupation_profile(state);
            row.emplace_back(std::vector<double>(prof.data(), prof.data() + prof.size()));
            break;
        }
        case nesskit::Measure::current:
            table.columns.emplace_back("current");
            row.emplace_back(nesskit::transport_report(state, params).current);
            break;
        case nesskit::Measure::mi: {
            table.columns.emplace_back("mi");
            const int cut = k == 0 ? params.L / 2 : k;
            row.emplace_back(nesskit::mutual_information(
                state, nesskit::site_range(1, cut), nesskit::site_range(cut + 1, params.L)));
            break;
        }
        case nesskit::Measure::tc:
            table.columns.emplace_back("tc");
            row.emplace_back(nesskit::total_correlations(state));
            break;
        case nesskit::Measure::cmi:
            table.columns.emplace_back("cmi");
            row.emplace_back(nesskit::conditional_mutual_information(
                state, partition_for(rule, params.L, b, k, blocks)));
            break;
        case nesskit::Measure::chain_rule:
            table.columns.emplace_back("chain_rule");
            row.emplace_back(nesskit::chain_rule_residual(
                state, partition_for(rule, params.L, b, k, blocks)));
            break;
        case nesskit::Measure::kato: {
            table.columns.emplace_back("kato_epsilon");
            table.columns.emplace_back("kato_bound");
            const nesskit::KatoBound kb = nesskit::kato_bound(params);
            row.emplace_back(kb.epsilon);
            row.emplace_back(kb.bound);
            break;
        }
        }
    }
    table.rows.push_back(std::move(row));
    emit(table, out);
    return 0;
}

int run_fit(const std::string& in_path, int b, const std::optional<double>& fixed_gamma,
            const OutputOpts& out) {
    const nesskit::ResultTable in = nesskit::read_csv_file(in_path);
    auto column = [&in](const std::string& name) -> std::optional<size_t> {
        for (size_t i = 0; i < in.columns.size(); ++i)
            if (in.columns[i] == name)
                return i;
        return std::nullopt;
    };
    const auto l_col = column("L");
    const auto cmi_col = column("cmi");
    const auto gamma_col = column("Gamma");
    const auto b_col = column("b");
    if (!l_col || !cmi_col)
        throw std::invalid_argument("input CSV must have 'L' and 'cmi' columns");
    if (!gamma_col && !fixed_gamma)
        throw std::invalid_argument(
            "input CSV has no 'Gamma' column; pass --gamma to fix it");

    std::vector<nesskit::CmiSample> samples;
    size_t skipped = 0;
    for (const auto& row : in.rows) {
        if (b_col) { // a sweep over several block sizes: keep only the fitted one
            const double* row_b = std::get_if<double>(&row[*b_col]);
            if (!row_b || static_cast<int>(*row_b) != b) {
                ++skipped;
                continue;
            }
        }
        const double* cmi = std::get_if<double>(&row[*cmi_col]);
        const double* L = std::get_if<double>(&row[*l_col]);
        const double* gamma =
            gamma_col ? std::get_if<double>(&row[*gamma_col]) : nullptr;
        const double g = gamma ? *gamma : fixed_gamma.value_or(0.0);
        if (!cmi || !L || (gamma_col && !gamma)) {
            ++skipped; // error rows (e.g. partition parity) carry no cmi value
            continue;
        }
        samples.push_back(nesskit::CmiSample{g, static_cast<int>(*L), *cmi});
    }

    const nesskit::ScalingFit fit = nesskit::fit_cmi_scaling(samples, b);
    nesskit::ResultTable table;
    table.columns = {"u", "v", "exponent", "r_squared", "n_samples", "n_skipped"};
    table.rows.push_back({fit.u, fit.v, fit.exponent, fit.r_squared,
                          static_cast<double>(samples.size()),
                          static_cast<double>(skipped)});
    emit(table, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady states and information measures of boundary-driven bosonic chains"};
    app.require_subcommand(1);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve one chain and print measures");
    nesskit::ChainParams solve_params;
    std::string solve_measures = "profile,current";
    std::string solve_rule = "symmetric";
    int solve_b = 1, solve_k = 0;
    std::string solve_blocks;
    OutputOpts solve_out;
    add_param_options(solve_cmd, solve_params);
    solve_cmd->add_option("--measures", solve_measures, "comma list of measures")
        ->capture_default_str();
    solve_cmd->add_option("--partition", solve_rule, "tripartition rule for cmi/chain_rule")
        ->check(CLI::IsMember({"symmetric", "bipartition", "blocks"}))
        ->capture_default_str();
    solve_cmd->add_option("--b", solve_b, "middle block size")->capture_default_str();
    solve_cmd->add_option("--k", solve_k, "cut site for mi/bipartition (0: L/2)")
        ->capture_default_str();
    solve_cmd->add_option("--blocks", solve_blocks, "block sizes a,b,c for the blocks rule");
    add_output_options(solve_cmd, solve_out);

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    std::string sweep_config, sweep_preset;
    int sweep_workers = 0;
    OutputOpts sweep_out;
    auto* config_opt =
        sweep_cmd->add_option("--config", sweep_config, "config file (key = value)")
            ->check(CLI::ExistingFile);
    auto* preset_opt = sweep_cmd->add_option("--preset", sweep_preset, "built-in preset");
    config_opt->excludes(preset_opt);
    sweep_cmd->add_option("--workers", sweep_workers,
                          "worker threads (default: NESSKIT_WORKERS or hardware)");
    add_output_options(sweep_cmd, sweep_out);

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "fit the CMI scaling law from a sweep CSV");
    std::string fit_in;
    int fit_b = 0;
    double fit_gamma = 0.0;
    OutputOpts fit_out;
    fit_cmd->add_option("--in", fit_in, "input CSV with L, cmi (and optionally Gamma)")
        ->required()
        ->check(CLI::ExistingFile);
    fit_cmd->add_option("--b", fit_b, "middle block size used in the sweep")->required();
    auto* gamma_opt = fit_cmd->add_option(
        "--gamma", fit_gamma, "fixed Gamma when the CSV has no Gamma column");
    add_output_options(fit_cmd, fit_out);

    // kato
    auto* kato_cmd = app.add_subcommand("kato", "interior-site correlation bound");
    nesskit::ChainParams kato_params;
    OutputOpts kato_out;
    add_param_options(kato_cmd, kato_params);
    add_output_options(kato_cmd, kato_out);

    // presets
    auto* presets_cmd = app.add_subcommand("presets", "list built-in presets");
    std::string show_name;
    presets_cmd->add_option("--show", show_name, "print the config of one preset");

    try {
        app.parse(argc, argv);

        if (app.got_subcommand(solve_cmd)) {
            std::vector<int> blocks;
            if (!solve_blocks.empty())
                for (const std::string& part : split_commas(solve_blocks))
                    blocks.push_back(std::stoi(part));
            return run_solve(solve_params, solve_measures, solve_rule, solve_b, solve_k,
                             blocks, solve_out);
        }
        if (app.got_subcommand(sweep_cmd)) {
            if (sweep_config.empty() && sweep_preset.empty())
                throw std::invalid_argument("sweep needs --config or --preset");
            nesskit::SweepSpec spec =
                sweep_preset.empty()
                    ? nesskit::sweep_spec_from_config(nesskit::load_config(sweep_config))
                    : nesskit::preset_sweep(sweep_preset);
            if (sweep_workers > 0)
                spec.workers = sweep_workers;
            emit(nesskit::run_sweep(spec), sweep_out);
            return 0;
        }
        if (app.got_subcommand(fit_cmd)) {
            const std::optional<double> fixed =
                gamma_opt->count() > 0 ? std::optional<double>(fit_gamma) : std::nullopt;
            return run_fit(fit_in, fit_b, fixed, fit_out);
        }
        if (app.got_subcommand(kato_cmd)) {
            const nesskit::KatoBound kb = nesskit::kato_bound(kato_params);
            nesskit::ResultTable table;
            table.columns = {"kato_epsilon", "kato_bound"};
            table.rows.push_back({kb.epsilon, kb.bound});
            emit(table, kato_out);
            return 0;
        }
        if (app.got_subcommand(presets_cmd)) {
            if (!show_name.empty()) {
                for (const nesskit::PresetInfo& info : nesskit::presets())
                    if (info.name == show_name) {
                        std::cout << info.config_text;
                        return 0;
                    }
                throw std::invalid_argument("unknown preset '" + show_name + "'");
            }
            for (const nesskit::PresetInfo& info : nesskit::presets())
                std::cout << info.name << " — " << info.summary << "\n";
            return 0;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
