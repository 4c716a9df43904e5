#include "rank1/weights.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rank1 {
namespace repn {

namespace {

std::string weight_str(const HighestWeight& w) {
    std::string s = "SO(" + std::to_string(w.m) + ")(";
    for (std::size_t i = 0; i < w.entries.size(); i++) {
        if (i)
            s += ",";
        s += to_string(w.entries[i]);
    }
    return s + ")";
}

bool same_parity_class(const Rat& a, const Rat& b) {
    return is_integer(a) == is_integer(b);
}

// Entries of a valid weight are all integers or all half-odd; 0-entry weights
// count as integer class.
bool integer_class(const HighestWeight& w) {
    return w.entries.empty() || is_integer(w.entries.front());
}

}  // namespace

void validate_dominant(const HighestWeight& w) {
    if (w.m < 1)
        throw std::invalid_argument("validate_dominant: need m >= 1");
    const int rank = w.m / 2;
    if (static_cast<int>(w.entries.size()) != rank)
        throw std::invalid_argument(
            "validate_dominant: " + weight_str(w) + " needs " +
            std::to_string(rank) + " entries, got " +
            std::to_string(w.entries.size()));
    for (const Rat& e : w.entries)
        if (!is_integer(e) && !is_half_odd(e))
            throw std::invalid_argument("validate_dominant: entry " +
                                        to_string(e) +
                                        " is neither integer nor half-odd");
    for (std::size_t i = 0; i + 1 < w.entries.size(); i++)
        if (!same_parity_class(w.entries[i], w.entries[i + 1]))
            throw std::invalid_argument(
                "validate_dominant: mixed integer and half-odd entries in " +
                weight_str(w));
    if (rank == 0)
        return;

    // Nonincreasing chain; the final comparison differs by parity of m.
    for (int i = 0; i + 2 <= rank; i++)
        if (w.entries[i] < w.entries[i + 1])
            throw std::invalid_argument(
                "validate_dominant: entries must be nonincreasing in " +
                weight_str(w));
    const Rat last = w.entries.back();
    if (w.m % 2 == 1) {
        if (last < Rat(0))
            throw std::invalid_argument(
                "validate_dominant: last entry must be >= 0 for odd m in " +
                weight_str(w));
    } else if (rank >= 2) {
        const Rat prev = w.entries[rank - 2];
        if (prev < (last < Rat(0) ? -last : last))
            throw std::invalid_argument(
                "validate_dominant: |last entry| exceeds previous entry in " +
                weight_str(w));
    }
}

HighestWeight make_weight(int m, std::vector<Rat> entries) {
    HighestWeight w{m, std::move(entries)};
    validate_dominant(w);
    return w;
}

Rat casimir_so(const HighestWeight& w) {
    validate_dominant(w);
    // <L+sigma>^2 - <sigma>^2 = sum_i L_i (L_i + m - 2i), i 1-based.
    Rat total(0);
    for (std::size_t i = 0; i < w.entries.size(); i++) {
        const Rat sigma2(w.m - 2 * (static_cast<int>(i) + 1), 1);
        total += w.entries[i] * (w.entries[i] + sigma2);
    }
    return total;
}

Rat casimir_K(const HighestWeight& w, int n) {
    if (w.m != n)
        throw std::invalid_argument("casimir_K: weight is for SO(" +
                                    std::to_string(w.m) + "), expected SO(" +
                                    std::to_string(n) + ")");
    return casimir_so(w);
}

Rat casimir_M(const HighestWeight& w, int n) {
    if (w.m != n - 1)
        throw std::invalid_argument("casimir_M: weight is for SO(" +
                                    std::to_string(w.m) + "), expected SO(" +
                                    std::to_string(n - 1) + ")");
    return casimir_so(w);
}

bool branching_interlaces(const HighestWeight& tau, const HighestWeight& eta,
                          int n) {
    validate_dominant(tau);
    validate_dominant(eta);
    if (tau.m != n || eta.m != n - 1)
        throw std::invalid_argument("branching_interlaces: expected weights of SO(" +
                                    std::to_string(n) + ") and SO(" +
                                    std::to_string(n - 1) + ")");
    if (!tau.entries.empty() && !eta.entries.empty() &&
        integer_class(tau) != integer_class(eta))
        return false;
    if (!eta.entries.empty() && tau.entries.empty())
        return false;

    auto abs_rat = [](const Rat& r) { return r < Rat(0) ? -r : r; };
    if (n % 2 == 1) {
        // tau_1 >= eta_1 >= tau_2 >= ... >= tau_p >= |eta_p|
        const int p = n / 2;
        for (int i = 0; i < p; i++) {
            if (tau.entries[i] < (i + 1 < p ? eta.entries[i] : abs_rat(eta.entries[i])))
                return false;
            if (i + 1 < p && eta.entries[i] < tau.entries[i + 1])
                return false;
        }
        return true;
    }
    // tau_1 >= eta_1 >= tau_2 >= ... >= eta_{p-1} >= |tau_p|
    const int p = n / 2;
    for (int i = 0; i < p - 1; i++) {
        if (tau.entries[i] < eta.entries[i])
            return false;
        if (eta.entries[i] < (i + 2 < p ? tau.entries[i + 1]
                                        : abs_rat(tau.entries[p - 1])))
            return false;
    }
    return true;
}

std::vector<HighestWeight> branch_K_to_M(const HighestWeight& tau, int n) {
    validate_dominant(tau);
    if (tau.m != n)
        throw std::invalid_argument("branch_K_to_M: weight is for SO(" +
                                    std::to_string(tau.m) + "), expected SO(" +
                                    std::to_string(n) + ")");
    const int rank_m = (n - 1) / 2;

    // Per-coordinate closed ranges [lo_i, hi_i]; eta runs over the lattice of
    // the same parity class in steps of 1.
    std::vector<Rat> lo(rank_m), hi(rank_m);
    auto abs_rat = [](const Rat& r) { return r < Rat(0) ? -r : r; };
    if (n % 2 == 1) {
        const int p = n / 2;  // rank_m == p
        for (int i = 0; i < p - 1; i++) {
            hi[i] = tau.entries[i];
            lo[i] = tau.entries[i + 1];
        }
        hi[p - 1] = tau.entries[p - 1];
        lo[p - 1] = -tau.entries[p - 1];
    } else {
        const int p = n / 2;  // rank_m == p - 1
        for (int i = 0; i < p - 1; i++) {
            hi[i] = tau.entries[i];
            lo[i] = i + 2 < p ? tau.entries[i + 1] : abs_rat(tau.entries[p - 1]);
        }
    }

    std::vector<HighestWeight> out;
    std::vector<Rat> current(rank_m);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == rank_m) {
            out.push_back(HighestWeight{n - 1, current});
            return;
        }
        for (Rat v = lo[i]; v <= hi[i]; v += Rat(1)) {
            current[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);

    std::sort(out.begin(), out.end(),
              [](const HighestWeight& a, const HighestWeight& b) {
                  return a.entries < b.entries;
              });
    return out;
}

Rat km_casimir_gap(const HighestWeight& tau, const HighestWeight& eta, int n) {
    if (!branching_interlaces(tau, eta, n))
        throw std::invalid_argument("km_casimir_gap: " + weight_str(eta) +
                                    " does not interlace " + weight_str(tau));
    Rat gap(0);
    if (n % 2 == 1) {
        // n = 2l+1: sum_i (a_i - b_i)(a_i + b_i + 2(l-i)) + a_i
        const int l = n / 2;
        for (int i = 1; i <= l; i++) {
            const Rat a = tau.entries[i - 1];
            const Rat b = eta.entries[i - 1];
            gap += (a - b) * (a + b + Rat(2 * (l - i))) + a;
        }
    } else {
        // n = 2l: sum_{i<l} (a_i - b_i)(a_i + b_i + 2(l-i)) + b_i, plus a_l^2
        const int l = n / 2;
        for (int i = 1; i <= l - 1; i++) {
            const Rat a = tau.entries[i - 1];
            const Rat b = eta.entries[i - 1];
            gap += (a - b) * (a + b + Rat(2 * (l - i))) + b;
        }
        gap += tau.entries[l - 1] * tau.entries[l - 1];
    }

    const Rat direct = casimir_so(tau) - casimir_so(eta);
    if (gap != direct)
        throw std::logic_error("km_casimir_gap: telescoped form disagrees with direct difference");
    return gap;
}

}  // namespace repn
}  // namespace rank1
