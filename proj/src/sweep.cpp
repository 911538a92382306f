// sweep.cpp — Cartesian sweep driver and the interior-site correlation bound
#include "nesskit/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fmt/format.h>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "nesskit/errors.hpp"
#include "nesskit/gaussian.hpp"
#include "nesskit/ness.hpp"
#include "nesskit/transport.hpp"

namespace nesskit {

namespace {

const std::vector<std::string>& axis_names() {
    static const std::vector<std::string> names = {"L",      "Gamma", "N1", "NL",
                                                   "lambda", "gamma", "b",  "k"};
    return names;
}

bool integral_axis(const std::string& name) {
    return name == "L" || name == "b" || name == "k";
}

std::vector<std::string> measure_columns(Measure m) {
    if (m == Measure::kato)
        return {"kato_epsilon", "kato_bound"};
    return {to_string(m)};
}

void apply_axis(const std::string& name, double value, ChainParams& p, int& b, int& k) {
    if (name == "L")
        p.L = static_cast<int>(value);
    else if (name == "Gamma")
        p.Gamma = value;
    else if (name == "N1")
        p.left.nbar = value;
    else if (name == "NL")
        p.right.nbar = value;
    else if (name == "lambda")
        p.lambda = value;
    else if (name == "gamma")
        p.gamma = value;
    else if (name == "b")
        b = static_cast<int>(value);
    else if (name == "k")
        k = static_cast<int>(value);
    else
        throw std::invalid_argument(fmt::format("unknown sweep axis '{}'", name));
}

Partition pick_tripartition(const SweepSpec& spec, int L, int b, int cut) {
    switch (spec.partition) {
    case PartitionRule::symmetric:
        return symmetric_tripartition(L, b);
    case PartitionRule::bipartition:
        return Partition{{site_range(1, cut), SiteSet{}, site_range(cut + 1, L)}};
    case PartitionRule::blocks: {
        if (spec.blocks.size() != 3)
            throw std::invalid_argument("the blocks rule needs exactly 3 block sizes");
        const int na = spec.blocks[0], nb = spec.blocks[1], nc = spec.blocks[2];
        if (na < 1 || nb < 0 || nc < 1 || na + nb + nc != L)
            throw std::invalid_argument(fmt::format(
                "block sizes {}+{}+{} do not tile a chain of {} sites", na, nb, nc, L));
        Partition p;
        p.blocks.push_back(site_range(1, na));
        p.blocks.push_back(nb > 0 ? site_range(na + 1, na + nb) : SiteSet{});
        p.blocks.push_back(site_range(na + nb + 1, L));
        return p;
    }
    }
    throw std::invalid_argument("unknown partition rule");
}

int resolve_cut(int k, int L) {
    const int cut = k == 0 ? L / 2 : k;
    if (cut < 1 || cut >= L)
        throw std::invalid_argument(
            fmt::format("cut site k = {} must lie in [1, {}] for L = {}", cut, L - 1, L));
    return cut;
}

int resolve_workers(int requested, size_t total) {
    int workers = requested;
    if (workers <= 0) {
        if (const char* env = std::getenv("NESSKIT_WORKERS")) {
            const std::string_view sv(env);
            int parsed = 0;
            auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), parsed);
            if (ec != std::errc{} || ptr != sv.data() + sv.size() || parsed < 1)
                throw std::invalid_argument(fmt::format(
                    "NESSKIT_WORKERS must be a positive integer, got '{}'", env));
            workers = parsed;
        } else {
            const unsigned hw = std::thread::hardware_concurrency();
            workers = hw == 0 ? 1 : static_cast<int>(hw);
        }
    }
    return static_cast<int>(std::min<size_t>(static_cast<size_t>(workers),
                                             std::max<size_t>(total, 1)));
}

std::vector<Cell> evaluate_cell(const SweepSpec& spec, size_t flat) {
    const size_t n_axes = spec.axes.size();
    std::vector<double> axis_values(n_axes);
    size_t rem = flat;
    for (size_t i = n_axes; i-- > 0;) {
        const size_t size = spec.axes[i].values.size();
        axis_values[i] = spec.axes[i].values[rem % size];
        rem /= size;
    }

    ChainParams p = spec.base;
    int b = spec.b;
    int k = spec.k;
    for (size_t i = 0; i < n_axes; ++i)
        apply_axis(spec.axes[i].name, axis_values[i], p, b, k);

    std::vector<Cell> row;
    for (double v : axis_values)
        row.emplace_back(v);

    std::string errors;
    const auto record = [&errors](const std::string& where, const std::exception& e) {
        if (!errors.empty())
            errors += "; ";
        errors += where + ": " + e.what();
    };

    bool need_state = false;
    for (Measure m : spec.measures)
        need_state = need_state || m != Measure::kato;

    std::optional<MomentMatrices> state;
    if (need_state) {
        try {
            state = analytic_ness(p);
        } catch (const std::exception& e) {
            record("solve", e);
        }
    }

    for (Measure m : spec.measures) {
        const size_t first = row.size();
        row.resize(row.size() + measure_columns(m).size());
        if (m == Measure::kato) {
            try {
                const KatoBound kb = kato_bound(p);
                row[first] = kb.epsilon;
                row[first + 1] = kb.bound;
            } catch (const std::exception& e) {
                record("kato", e);
            }
            continue;
        }
        if (!state)
            continue;
        try {
            switch (m) {
            case Measure::profile: {
                const Eigen::VectorXd prof = occupation_profile(*state);
                row[first] = std::vector<double>(prof.data(), prof.data() + prof.size());
                break;
            }
            case Measure::current:
                row[first] = transport_report(*state, p).current;
                break;
            case Measure::mi: {
                const int cut = resolve_cut(k, p.L);
                row[first] = mutual_information(*state, site_range(1, cut),
                                                site_range(cut + 1, p.L));
                break;
            }
            case Measure::tc:
                row[first] = total_correlations(*state);
                break;
            case Measure::cmi:
                row[first] = conditional_mutual_information(
                    *state, pick_tripartition(spec, p.L, b, resolve_cut(k, p.L)));
                break;
            case Measure::chain_rule:
                row[first] = chain_rule_residual(
                    *state, pick_tripartition(spec, p.L, b, resolve_cut(k, p.L)));
                break;
            case Measure::kato:
                break;
            }
        } catch (const std::exception& e) {
            record(to_string(m), e);
        }
    }

    row.emplace_back(errors.empty() ? Cell{} : Cell{errors});
    return row;
}

} // namespace

std::string to_string(Measure m) {
    switch (m) {
    case Measure::profile:
        return "profile";
    case Measure::current:
        return "current";
    case Measure::mi:
        return "mi";
    case Measure::tc:
        return "tc";
    case Measure::cmi:
        return "cmi";
    case Measure::chain_rule:
        return "chain_rule";
    case Measure::kato:
        return "kato";
    }
    throw std::invalid_argument("unknown measure");
}

std::string to_string(PartitionRule r) {
    switch (r) {
    case PartitionRule::symmetric:
        return "symmetric";
    case PartitionRule::bipartition:
        return "bipartition";
    case PartitionRule::blocks:
        return "blocks";
    }
    throw std::invalid_argument("unknown partition rule");
}

Measure measure_from_string(const std::string& name) {
    for (Measure m : {Measure::profile, Measure::current, Measure::mi, Measure::tc,
                      Measure::cmi, Measure::chain_rule, Measure::kato})
        if (to_string(m) == name)
            return m;
    throw std::invalid_argument(fmt::format("unknown measure '{}'", name));
}

PartitionRule partition_rule_from_string(const std::string& name) {
    for (PartitionRule r :
         {PartitionRule::symmetric, PartitionRule::bipartition, PartitionRule::blocks})
        if (to_string(r) == name)
            return r;
    throw std::invalid_argument(fmt::format("unknown partition rule '{}'", name));
}

ResultTable run_sweep(const SweepSpec& spec) {
    if (spec.measures.empty())
        throw std::invalid_argument("sweep selects no measures");
    for (size_t i = 0; i < spec.measures.size(); ++i)
        for (size_t j = i + 1; j < spec.measures.size(); ++j)
            if (spec.measures[i] == spec.measures[j])
                throw std::invalid_argument(fmt::format(
                    "measure '{}' listed twice", to_string(spec.measures[i])));

    size_t total = 1;
    for (const Axis& axis : spec.axes) {
        bool known = false;
        for (const std::string& name : axis_names())
            known = known || name == axis.name;
        if (!known)
            throw std::invalid_argument(fmt::format("unknown sweep axis '{}'", axis.name));
        if (axis.values.empty())
            throw std::invalid_argument(
                fmt::format("sweep axis '{}' has no values", axis.name));
        for (double v : axis.values) {
            if (!std::isfinite(v))
                throw std::invalid_argument(
                    fmt::format("sweep axis '{}' has a non-finite value", axis.name));
            if (integral_axis(axis.name) && v != std::floor(v))
                throw std::invalid_argument(fmt::format(
                    "sweep axis '{}' needs integer values, got {:.17g}", axis.name, v));
        }
        total *= axis.values.size();
    }
    for (size_t i = 0; i < spec.axes.size(); ++i)
        for (size_t j = i + 1; j < spec.axes.size(); ++j)
            if (spec.axes[i].name == spec.axes[j].name)
                throw std::invalid_argument(
                    fmt::format("sweep axis '{}' listed twice", spec.axes[i].name));
    if (spec.partition == PartitionRule::blocks && spec.blocks.size() != 3)
        throw std::invalid_argument("the blocks rule needs exactly 3 block sizes");

    ResultTable table;
    for (const Axis& axis : spec.axes)
        table.columns.push_back(axis.name);
    for (Measure m : spec.measures)
        for (const std::string& col : measure_columns(m))
            table.columns.push_back(col);
    table.columns.push_back("error");
    table.rows.resize(total);

    const int workers = resolve_workers(spec.workers, total);
    if (workers <= 1) {
        for (size_t i = 0; i < total; ++i)
            table.rows[i] = evaluate_cell(spec, i);
        return table;
    }

    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1))
                table.rows[i] = evaluate_cell(spec, i);
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int i = 0; i < workers; ++i)
        pool.emplace_back(worker);
    for (std::thread& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
    return table;
}

namespace {

// The interior-site scan evaluates an entropy for every prefix and suffix of
// the chain. When the pair correlations vanish and the occupation matrix is
// exactly real tridiagonal (the shape every unsqueezed closed-form chain state
// takes), extract the diagonals once and eigensolve segments directly instead
// of copying a dense submatrix per cut.
bool extract_real_tridiagonal(const MomentMatrices& m, Eigen::VectorXd& diag,
                              Eigen::VectorXd& sub) {
    if (!m.B.isZero(0.0))
        return false;
    const Eigen::Index n = m.C.rows();
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            const std::complex<double> v = m.C(i, j);
            if (v.imag() != 0.0 || (std::abs(i - j) > 1 && v.real() != 0.0))
                return false;
        }
    diag.resize(n);
    sub.resize(n > 0 ? n - 1 : 0);
    for (Eigen::Index i = 0; i < n; ++i)
        diag(i) = m.C(i, i).real();
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        sub(i) = m.C(i + 1, i).real();
    return true;
}

double tridiagonal_range_entropy(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                                 int first, int last) {
    const Eigen::Index n = last - first + 1;
    if (n == 1)
        return entropy_from_occupations(diag.segment(first - 1, 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag.segment(first - 1, n), sub.segment(first - 1, n - 1),
                              Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw SolverError("tridiagonal eigensolve failed");
    return entropy_from_occupations(es.eigenvalues());
}

} // namespace

KatoBound kato_bound(const ChainParams& p) {
    validate(p);
    if (p.L < 4)
        throw std::invalid_argument(
            fmt::format("interior-site scan needs L >= 4, got L = {}", p.L));

    const MomentMatrices m = analytic_ness(p);

    Eigen::VectorXd diag, sub;
    const bool tri = extract_real_tridiagonal(m, diag, sub);
    auto range_entropy = [&](int first, int last) {
        if (tri)
            return tridiagonal_range_entropy(diag, sub, first, last);
        return entropy_of_sites(m, site_range(first, last));
    };

    const double s_total = range_entropy(1, p.L);

    KatoBound kb;
    for (int k = 2; k <= p.L - 1; ++k) {
        // I(1..k-1 : k+1..L | k) = S(1..k) + S(k..L) - S(1..L) - S(k); the same
        // roundoff floor applies as for every clamped measure.
        const double raw = range_entropy(1, k) + range_entropy(k, p.L) - s_total -
                           range_entropy(k, k);
        if (raw < -1e-10)
            throw SolverError(fmt::format(
                "conditional mutual information at site {} fell below -1e-10: {:.17g}",
                k, raw));
        kb.epsilon = std::max(kb.epsilon, std::max(raw, 0.0));
    }
    kb.bound = kb.epsilon * p.L;
    return kb;
}

} // namespace nesskit
