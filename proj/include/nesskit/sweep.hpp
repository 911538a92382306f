// sweep.hpp — Cartesian parameter sweeps over chain observables
//
// A sweep takes a base parameter set, a list of axes (parameter name + values,
// Cartesian product in axis order with the last axis fastest), and a list of
// measures to evaluate at every grid point. Each grid point solves the chain
// once and appends one row; failures are recorded per measure in the row's
// "error" column instead of aborting the sweep.
#pragma once

#include <string>
#include <vector>

#include "nesskit/chain.hpp"
#include "nesskit/result_table.hpp"

namespace nesskit {

enum class Measure { profile, current, mi, tc, cmi, chain_rule, kato };

// How cmi/chain_rule pick their tripartition A|B|C of the chain:
//   symmetric   — b middle sites, equal outer blocks (needs L - b even)
//   bipartition — empty middle, cut after site k (CMI degenerates to MI)
//   blocks      — explicit block sizes {|A|, |B|, |C|} summing to L
enum class PartitionRule { symmetric, bipartition, blocks };

std::string to_string(Measure m);
std::string to_string(PartitionRule r);
Measure measure_from_string(const std::string& name);
PartitionRule partition_rule_from_string(const std::string& name);

struct Axis {
    std::string name; // one of: L, Gamma, N1, NL, lambda, gamma, b, k
    std::vector<double> values;
};

struct SweepSpec {
    ChainParams base;
    std::vector<Axis> axes;
    std::vector<Measure> measures;
    PartitionRule partition = PartitionRule::symmetric;
    int b = 1;               // middle block size for the symmetric rule
    int k = 0;               // cut site for mi / the bipartition rule; 0 means L/2
    std::vector<int> blocks; // sizes for PartitionRule::blocks
    int workers = 0;         // 0: NESSKIT_WORKERS env var, else hardware threads
};

// Columns: the axes in order, then per-measure result columns (kato contributes
// kato_epsilon and kato_bound), then "error". Row order and cell values are
// independent of the worker count.
ResultTable run_sweep(const SweepSpec& spec);

// Decay of conditional correlations across single interior sites: epsilon is
// the largest I(left : right | site k) over all interior k, and epsilon * L
// bounds how far the chain state can sit from a Markov state on any such cut.
struct KatoBound {
    double epsilon = 0.0;
    double bound = 0.0; // epsilon * L
};

KatoBound kato_bound(const ChainParams& p);

} // namespace nesskit
