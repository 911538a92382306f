// sweep_test.cpp — sweep grids, error cells, determinism and the interior-site bound
#include <doctest.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "nesskit/errors.hpp"
#include "nesskit/gaussian.hpp"
#include "nesskit/ness.hpp"
#include "nesskit/sweep.hpp"

using namespace nesskit;

namespace {

SweepSpec driven_spec() {
    SweepSpec spec;
    spec.base.left.nbar = 2.0;
    spec.base.right.nbar = 1.0;
    spec.workers = 1;
    return spec;
}

const std::string* error_cell(const ResultTable& t, size_t row) {
    return std::get_if<std::string>(&t.rows[row].back());
}

} // namespace

TEST_CASE("column layout and row order") {
    SweepSpec spec = driven_spec();
    spec.axes = {{"L", {8.0, 16.0}}, {"Gamma", {0.0, 0.1}}};
    spec.measures = {Measure::mi, Measure::current};
    const ResultTable t = run_sweep(spec);

    CHECK(t.columns == std::vector<std::string>{"L", "Gamma", "mi", "current", "error"});
    REQUIRE(t.rows.size() == 4);
    // Last axis fastest.
    CHECK(std::get<double>(t.rows[0][0]) == 8.0);
    CHECK(std::get<double>(t.rows[0][1]) == 0.0);
    CHECK(std::get<double>(t.rows[1][0]) == 8.0);
    CHECK(std::get<double>(t.rows[1][1]) == 0.1);
    CHECK(std::get<double>(t.rows[2][0]) == 16.0);
    for (size_t r = 0; r < 4; ++r)
        CHECK(error_cell(t, r) == nullptr);
}

TEST_CASE("partition parity failures land in the error column") {
    SweepSpec spec = driven_spec();
    spec.base.Gamma = 0.1;
    spec.axes = {{"L", {20.0, 21.0, 40.0}}};
    spec.measures = {Measure::cmi};
    spec.b = 1;
    const ResultTable t = run_sweep(spec);

    REQUIRE(t.rows.size() == 3);
    REQUIRE(error_cell(t, 0) != nullptr); // L = 20: L - b odd
    CHECK(error_cell(t, 0)->find("cmi:") == 0);
    CHECK(std::holds_alternative<std::monostate>(t.rows[0][1]));

    CHECK(error_cell(t, 1) == nullptr); // L = 21 works
    CHECK(std::get<double>(t.rows[1][1]) > 0.0);

    REQUIRE(error_cell(t, 2) != nullptr); // L = 40: odd again
}

TEST_CASE("invalid parameters at one grid point do not abort the sweep") {
    SweepSpec spec = driven_spec();
    spec.axes = {{"N1", {2.0, -1.0}}};
    spec.measures = {Measure::current};
    const ResultTable t = run_sweep(spec);
    CHECK(error_cell(t, 0) == nullptr);
    REQUIRE(error_cell(t, 1) != nullptr);
    CHECK(error_cell(t, 1)->find("solve:") == 0);
    CHECK(std::holds_alternative<std::monostate>(t.rows[1][1]));
}

TEST_CASE("a three-point sweep serializes to four CSV lines") {
    SweepSpec spec = driven_spec();
    spec.axes = {{"L", {8.0, 16.0, 32.0}}};
    spec.measures = {Measure::mi};
    const std::string csv = to_csv(run_sweep(spec));
    CHECK(csv.starts_with("L,mi,error\n"));
    size_t lines = 0;
    for (char c : csv)
        if (c == '\n')
            ++lines;
    CHECK(lines == 4);
}

TEST_CASE("sweeps are deterministic and worker-count independent") {
    SweepSpec spec = driven_spec();
    spec.axes = {{"L", {8.0, 12.0, 16.0, 20.0}}, {"Gamma", {0.0, 0.2, 1.0}}};
    spec.measures = {Measure::mi, Measure::tc, Measure::current};

    spec.workers = 1;
    const std::string serial = to_csv(run_sweep(spec));
    CHECK(to_csv(run_sweep(spec)) == serial); // repeatable
    spec.workers = 4;
    CHECK(to_csv(run_sweep(spec)) == serial); // thread-count independent
}

TEST_CASE("worker resolution from the environment") {
    SweepSpec spec = driven_spec();
    spec.axes = {{"L", {8.0, 12.0}}};
    spec.measures = {Measure::current};
    spec.workers = 1;
    const std::string baseline = to_csv(run_sweep(spec));

    spec.workers = 0;
    setenv("NESSKIT_WORKERS", "3", 1);
    CHECK(to_csv(run_sweep(spec)) == baseline);
    setenv("NESSKIT_WORKERS", "zero", 1);
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    unsetenv("NESSKIT_WORKERS");
}

TEST_CASE("sweep spec validation") {
    SweepSpec spec = driven_spec();
    spec.measures = {Measure::mi};

    spec.axes = {{"volume", {1.0}}};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.axes = {{"L", {8.0}}, {"L", {16.0}}};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.axes = {{"L", {}}};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.axes = {{"L", {8.5}}};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

    spec.axes = {{"L", {8.0}}};
    spec.measures = {};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.measures = {Measure::mi, Measure::mi};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

    spec.measures = {Measure::cmi};
    spec.partition = PartitionRule::blocks;
    spec.blocks = {2, 2};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("bipartition rule turns CMI into MI; explicit blocks work") {
    SweepSpec mi_spec = driven_spec();
    mi_spec.base.Gamma = 0.1;
    mi_spec.axes = {{"L", {8.0, 12.0}}};
    mi_spec.measures = {Measure::mi};
    const ResultTable mi_t = run_sweep(mi_spec);

    SweepSpec cmi_spec = mi_spec;
    cmi_spec.measures = {Measure::cmi};
    cmi_spec.partition = PartitionRule::bipartition;
    const ResultTable cmi_t = run_sweep(cmi_spec);
    for (size_t r = 0; r < 2; ++r)
        CHECK(std::get<double>(cmi_t.rows[r][1]) ==
              doctest::Approx(std::get<double>(mi_t.rows[r][1])).epsilon(1e-14));

    SweepSpec blocks_spec = driven_spec();
    blocks_spec.base.L = 8;
    blocks_spec.base.Gamma = 0.1;
    blocks_spec.measures = {Measure::cmi};
    blocks_spec.partition = PartitionRule::blocks;
    blocks_spec.blocks = {2, 2, 4};
    const ResultTable bt = run_sweep(blocks_spec);
    const MomentMatrices m = analytic_ness(blocks_spec.base);
    const double direct = conditional_mutual_information(
        m, Partition{{site_range(1, 2), site_range(3, 4), site_range(5, 8)}});
    CHECK(std::get<double>(bt.rows[0][0]) == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("measure names round-trip") {
    for (Measure m : {Measure::profile, Measure::current, Measure::mi, Measure::tc,
                      Measure::cmi, Measure::chain_rule, Measure::kato})
        CHECK(measure_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(measure_from_string("bogus"), std::invalid_argument);
    for (PartitionRule r :
         {PartitionRule::symmetric, PartitionRule::bipartition, PartitionRule::blocks})
        CHECK(partition_rule_from_string(to_string(r)) == r);
}

TEST_CASE("interior-site bound") {
    ChainParams p;
    p.L = 3;
    CHECK_THROWS_AS(kato_bound(p), std::invalid_argument);

    // Equilibrium without probes is a product state: the bound vanishes.
    ChainParams eq;
    eq.L = 6;
    eq.left.nbar = 1.0;
    eq.right.nbar = 1.0;
    const KatoBound kb_eq = kato_bound(eq);
    CHECK(kb_eq.epsilon < 1e-12);
    CHECK(kb_eq.bound < 1e-11);

    // The driven chain has a strictly positive bound, equal to L * epsilon, and
    // never below any single interior-site CMI.
    ChainParams p2;
    p2.L = 12;
    p2.Gamma = 0.1;
    p2.left.nbar = 2.0;
    p2.right.nbar = 1.0;
    const KatoBound kb = kato_bound(p2);
    CHECK(kb.epsilon > 0.0);
    CHECK(kb.bound == doctest::Approx(12.0 * kb.epsilon).epsilon(1e-15));
    const MomentMatrices m = analytic_ness(p2);
    for (int k = 2; k <= 11; ++k)
        CHECK(kb.epsilon >=
              conditional_mutual_information(m, site_tripartition(12, k)) - 1e-12);
}

TEST_CASE("kato measure inside a sweep") {
    SweepSpec spec = driven_spec();
    spec.base.Gamma = 0.1;
    spec.axes = {{"L", {8.0, 16.0}}};
    spec.measures = {Measure::kato};
    const ResultTable t = run_sweep(spec);
    CHECK(t.columns ==
          std::vector<std::string>{"L", "kato_epsilon", "kato_bound", "error"});
    for (size_t r = 0; r < 2; ++r) {
        CHECK(std::get<double>(t.rows[r][1]) > 0.0);
        CHECK(error_cell(t, r) == nullptr);
    }
}
