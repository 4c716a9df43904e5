#include "rank1/counting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rank1 {
namespace count {

using repn::HighestWeight;
using repn::Rat;

namespace {

// rho_i = (m - 2i)/2 in epsilon coordinates, i 1-based.
Rat rho_entry(int m, int i) { return Rat(m - 2 * i, 2); }

constexpr double kBoundaryTol = 1e-9;

void collect_dominant(int n, double W, bool half_class,
                      std::vector<HighestWeight>& out) {
    const int rank = n / 2;
    if (rank == 0) {
        out.push_back(HighestWeight{n, {}});
        return;
    }
    const long long top_twice =
        2 * static_cast<long long>(std::floor(std::sqrt(std::max(W, 0.0)))) +
        (half_class ? 1 : 0);

    std::vector<Rat> cur(rank);
    // Entries contribute L_i (L_i + n - 2i) >= 0 each, so a prefix already
    // above W can be pruned.
    auto rec = [&](auto&& self, int i, const Rat& ub, const Rat& partial) -> void {
        if (repn::to_double(partial) > W + kBoundaryTol)
            return;
        if (i == rank) {
            out.push_back(HighestWeight{n, cur});
            return;
        }
        const bool last_even = (n % 2 == 0) && i == rank - 1;
        const Rat lo = last_even ? -ub : (half_class ? Rat(1, 2) : Rat(0));
        for (Rat v = lo; v <= ub; v += Rat(1)) {
            cur[i] = v;
            const Rat term = v * (v + Rat(n - 2 * (i + 1)));
            self(self, i + 1, last_even ? ub : v, partial + term);
        }
    };
    rec(rec, 0, Rat(top_twice, 2), Rat(0));
}

}  // namespace

long long weyl_dimension(const HighestWeight& w) {
    repn::validate_dominant(w);
    const int m = w.m;
    const int rank = m / 2;
    Rat dim(1);
    auto shifted = [&](int i) { return w.entries[i - 1] + rho_entry(m, i); };
    for (int i = 1; i <= rank; i++) {
        for (int j = i + 1; j <= rank; j++) {
            // roots e_i - e_j and e_i + e_j combine into a difference of squares
            const Rat num = shifted(i) * shifted(i) - shifted(j) * shifted(j);
            const Rat den = rho_entry(m, i) * rho_entry(m, i) -
                            rho_entry(m, j) * rho_entry(m, j);
            dim *= num / den;
        }
        if (m % 2 == 1)
            dim *= shifted(i) / rho_entry(m, i);  // short root e_i
    }
    if (dim.denominator() != 1)
        throw std::logic_error("weyl_dimension: product did not clear denominators");
    return dim.numerator();
}

std::vector<HighestWeight> enumerate_K_types(int n, double W,
                                             bool include_half_integral) {
    if (W < 0.0)
        throw std::invalid_argument("enumerate_K_types: need W >= 0");
    if (n < 2)
        throw std::invalid_argument("enumerate_K_types: need n >= 2");
    std::vector<HighestWeight> out;
    collect_dominant(n, W, false, out);
    if (include_half_integral)
        collect_dominant(n, W, true, out);
    // The recursion already emits only dominant weights below the threshold;
    // the filter here is a safety net, not a second algorithm.
    std::vector<HighestWeight> kept;
    for (auto& w : out) {
        try {
            repn::validate_dominant(w);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (repn::to_double(repn::casimir_so(w)) <= W + kBoundaryTol)
            kept.push_back(std::move(w));
    }
    std::sort(kept.begin(), kept.end(),
              [](const HighestWeight& a, const HighestWeight& b) {
                  return a.entries < b.entries;
              });
    return kept;
}

Rat count_target_exponent(int n) {
    const int p = n / 2;
    const long long pos_roots = n % 2 == 1 ? static_cast<long long>(p) * p
                                           : static_cast<long long>(p) * (p - 1);
    return Rat(pos_roots + p, 2);
}

CountReport branching_count_S(int n, const std::vector<double>& thresholds,
                              long long mult_bound) {
    if (thresholds.size() < 4)
        throw std::invalid_argument("branching_count_S: need >= 4 grid points");
    std::vector<double> grid = thresholds;
    std::sort(grid.begin(), grid.end());
    if (grid.front() <= 0.0)
        throw std::invalid_argument("branching_count_S: thresholds must be positive");
    if (grid.back() / grid.front() < 100.0)
        throw std::invalid_argument(
            "branching_count_S: grid must span at least two decades");
    if (mult_bound < 0)
        throw std::invalid_argument("branching_count_S: need mult_bound >= 0");

    const auto types = enumerate_K_types(n, grid.back(), false);
    std::vector<std::pair<double, long long>> weighted;
    weighted.reserve(types.size());
    for (const auto& tau : types)
        weighted.emplace_back(repn::to_double(repn::casimir_so(tau)),
                              weyl_dimension(tau));
    std::sort(weighted.begin(), weighted.end());

    CountReport report;
    report.n = n;
    report.thresholds = grid;
    report.target_exponent = count_target_exponent(n);
    std::size_t idx = 0;
    long long running = 0;
    for (double W : grid) {
        while (idx < weighted.size() && weighted[idx].first <= W + kBoundaryTol)
            running += weighted[idx++].second;
        report.counts.push_back(mult_bound * running);
    }

    // Least-squares slope of log S on log W, skipping small counts where
    // lattice granularity dominates.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int used = 0;
    for (std::size_t i = 0; i < grid.size(); i++) {
        if (report.counts[i] < 10)
            continue;
        const double x = std::log(grid[i]);
        const double y = std::log(static_cast<double>(report.counts[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        used++;
    }
    if (used < 2)
        report.fitted_exponent = 0.0;
    else
        report.fitted_exponent =
            (used * sxy - sx * sy) / (used * sxx - sx * sx);
    return report;
}

std::vector<double> summability_partial_sums(const SyntheticSpectrum& spec,
                                             double s_exponent, int shells) {
    if (shells < 1)
        throw std::invalid_argument("summability_partial_sums: need shells >= 1");
    std::vector<double> shell_sum(shells, 0.0);
    for (const auto& e : spec.entries) {
        const double base = 1.0 - e.mu + 2.0 * repn::to_double(e.varpi);
        if (base <= 0.0)
            throw std::invalid_argument(
                "summability_partial_sums: entry violates 1 - mu + 2 varpi > 0");
        if (e.multiplicity < 0)
            throw std::invalid_argument(
                "summability_partial_sums: negative multiplicity");
        int j = base < 1.0 ? 0 : static_cast<int>(std::floor(std::log2(base)));
        if (j >= shells)
            continue;
        shell_sum[j] += static_cast<double>(e.multiplicity) *
                        std::pow(base, s_exponent);
    }
    std::vector<double> cumulative(shells);
    double total = 0.0;
    for (int j = 0; j < shells; j++) {
        total += shell_sum[j];
        cumulative[j] = total;
    }
    return cumulative;
}

}  // namespace count
}  // namespace rank1
