// config.hpp — key = value sweep configuration and built-in presets
//
// Config files are flat key = value text. '#' starts a comment (whole-line or
// trailing), blank lines are skipped. Values of the sweepable parameters
// L, Gamma, N1, NL, lambda, gamma, b, k may be a scalar, a comma list, or an
// inclusive start:step:stop range; every multi-valued key becomes a sweep axis,
// ordered as in the file. The remaining keys are single-valued: omega, r1,
// theta1, rL, thetaL (bath squeezing), measures, partition, blocks, workers.
#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "nesskit/sweep.hpp"

namespace nesskit {

struct ConfigFile {
    std::vector<std::pair<std::string, std::string>> entries; // file order
};

ConfigFile parse_config_text(const std::string& text);
ConfigFile load_config(const std::filesystem::path& path);

SweepSpec sweep_spec_from_config(const ConfigFile& config);

// Canned sweeps reproducing the toolkit's reference studies: occupation
// profiles (fig3a/fig3b), mutual-information and total-correlation scaling
// (fig5a/fig5b), CMI decay studies (fig6a-fig6d) and the interior-site
// correlation bound (kato).
struct PresetInfo {
    std::string name;
    std::string summary;
    std::string config_text;
};

const std::vector<PresetInfo>& presets();
SweepSpec preset_sweep(const std::string& name);

} // namespace nesskit
