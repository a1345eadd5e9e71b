#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "erfund/errors.hpp"
#include "erfund/reports.hpp"

namespace {

struct CliOptions {
    std::string config = "nsfc-case-study";
    std::optional<std::string> history;
    std::optional<std::string> assessments;
    std::optional<std::string> reliabilities;
    std::string out = ".";
    std::optional<std::string> mode;
    bool round4 = false;
    int top_k = 20;
    double bin_width = 0.2;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config,
                    "Config JSON file or the built-in preset 'nsfc-case-study'");
    cmd->add_option("--history", opt.history, "Historical assessments CSV with outcomes");
    cmd->add_option("--assessments", opt.assessments, "Candidate project assessments CSV");
    cmd->add_option("--reliabilities", opt.reliabilities, "Reliability override CSV");
    cmd->add_option("--out", opt.out, "Output directory");
    cmd->add_option("--mode", opt.mode, "Expert weight mode: raw or normalized")
        ->check(CLI::IsMember({"raw", "normalized"}));
    cmd->add_flag("--round4", opt.round4,
                  "Round calibrated beliefs half-up to 4 decimal places");
    cmd->add_option("--topk", opt.top_k, "Top-k size for the compare command");
    cmd->add_option("--binwidth", opt.bin_width, "Histogram bin width for the compare command");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Expert-assessment calibration, evidential-reasoning aggregation and project "
                 "ranking"};
    app.require_subcommand(1);
    CliOptions opt;
    const char* commands[] = {"calibrate", "reliability", "evaluate", "rank", "compare"};
    const char* descriptions[] = {
        "Build likelihood and belief matrices from history",
        "Derive per-expert reliability profiles from history",
        "Evaluate candidate projects into funding distributions",
        "Evaluate and rank candidate projects by funding probability",
        "Rank and compare against the additive baseline (top-k, histogram)"};
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        add_common_options(app.add_subcommand(commands[i], descriptions[i]), opt);
    }

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        erfund::PipelineConfig config = erfund::load_config(opt.config);
        if (opt.mode) {
            config.expert_weight_mode = (*opt.mode == "raw")
                                            ? erfund::ExpertWeightMode::kRawReliability
                                            : erfund::ExpertWeightMode::kNormalizedReliability;
        }
        if (opt.round4) {
            config.calibration_rounding = erfund::Rounding::kFourDecimals;
        }
        erfund::RunInputs inputs;
        inputs.out_dir = opt.out;
        inputs.history_path = opt.history;
        inputs.assessments_path = opt.assessments;
        inputs.reliabilities_path = opt.reliabilities;
        inputs.top_k = opt.top_k;
        inputs.bin_width = opt.bin_width;
        const erfund::RunResult result = erfund::run_command(command, config, inputs);
        for (const std::string& path : result.files_written) {
            std::cout << "wrote " << path << "\n";
        }
        return 0;
    } catch (const erfund::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const erfund::ComputationError& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 2;
    }
}
