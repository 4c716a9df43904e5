#include "rank1/exp_poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rank1 {
namespace ode {

namespace {

using C = std::complex<double>;

std::string format_complex(C z) {
    std::ostringstream out;
    out << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return out.str();
}

bool term_order(const ExpPolyTerm& a, const ExpPolyTerm& b) {
    if (a.exponent.real() != b.exponent.real()) return a.exponent.real() < b.exponent.real();
    if (a.exponent.imag() != b.exponent.imag()) return a.exponent.imag() < b.exponent.imag();
    return a.tpow < b.tpow;
}

}  // namespace

ExpPoly::ExpPoly(std::vector<ExpPolyTerm> raw) : terms_(std::move(raw)) {
    for (const auto& t : terms_) {
        if (t.tpow < 0) throw std::invalid_argument("ExpPoly: negative t-power");
    }
    canonicalize();
}

ExpPoly ExpPoly::zero() { return ExpPoly{}; }

ExpPoly ExpPoly::constant(C c) { return monomial(c, 0, C(0.0)); }

ExpPoly ExpPoly::monomial(C c, int tpow, C exponent) {
    return ExpPoly{{ExpPolyTerm{c, tpow, exponent}}};
}

void ExpPoly::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), term_order);
    // Group runs of terms whose exponents sit within the merge tolerance of the
    // run's first exponent, then coalesce each run by t-power.  Merging only
    // sort-adjacent terms would miss near-equal exponents separated by a term
    // of different t-power.
    std::vector<ExpPolyTerm> merged;
    std::size_t i = 0;
    while (i < terms_.size()) {
        std::size_t j = i;
        while (j < terms_.size() &&
               std::abs(terms_[j].exponent - terms_[i].exponent) <= kExpMergeTol) {
            ++j;
        }
        std::vector<ExpPolyTerm> run(terms_.begin() + i, terms_.begin() + j);
        std::sort(run.begin(), run.end(),
                  [](const ExpPolyTerm& a, const ExpPolyTerm& b) { return a.tpow < b.tpow; });
        for (const auto& t : run) {
            if (!merged.empty() && merged.back().tpow == t.tpow &&
                std::abs(merged.back().exponent - terms_[i].exponent) <= kExpMergeTol) {
                merged.back().coeff += t.coeff;
            } else {
                merged.push_back({t.coeff, t.tpow, terms_[i].exponent});
            }
        }
        i = j;
    }
    terms_.clear();
    for (const auto& t : merged) {
        if (std::abs(t.coeff) >= kCoeffPruneTol) terms_.push_back(t);
    }
}

int ExpPoly::max_tpow() const {
    int p = 0;
    for (const auto& t : terms_) p = std::max(p, t.tpow);
    return p;
}

double ExpPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
    return m;
}

C ExpPoly::eval(double t) const {
    C total(0.0);
    std::size_t i = 0;
    while (i < terms_.size()) {
        std::size_t j = i;
        while (j < terms_.size() &&
               std::abs(terms_[j].exponent - terms_[i].exponent) <= kExpMergeTol) {
            ++j;
        }
        // Terms [i, j) share one frequency; Horner over descending t-powers.
        C poly(0.0);
        int p = terms_[j - 1].tpow;
        std::size_t k = j;
        while (p >= 0) {
            poly *= t;
            while (k > i && terms_[k - 1].tpow == p) {
                --k;
                poly += terms_[k].coeff;
            }
            --p;
        }
        total += poly * std::exp(terms_[i].exponent * t);
        i = j;
    }
    return total;
}

ExpPoly ExpPoly::derivative() const {
    std::vector<ExpPolyTerm> out;
    out.reserve(2 * terms_.size());
    for (const auto& t : terms_) {
        if (t.tpow > 0) {
            out.push_back({t.coeff * static_cast<double>(t.tpow), t.tpow - 1, t.exponent});
        }
        out.push_back({t.coeff * t.exponent, t.tpow, t.exponent});
    }
    return ExpPoly{std::move(out)};
}

ExpPoly ExpPoly::scaled(C c) const {
    std::vector<ExpPolyTerm> out = terms_;
    for (auto& t : out) t.coeff *= c;
    return ExpPoly{std::move(out)};
}

ExpPoly ExpPoly::shifted(C delta) const {
    std::vector<ExpPolyTerm> out = terms_;
    for (auto& t : out) t.exponent += delta;
    return ExpPoly{std::move(out)};
}

ExpPoly ExpPoly::times_t(int k) const {
    if (k < 0) throw std::invalid_argument("ExpPoly::times_t: negative power");
    std::vector<ExpPolyTerm> out = terms_;
    for (auto& t : out) t.tpow += k;
    return ExpPoly{std::move(out)};
}

ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
    std::vector<ExpPolyTerm> out = a.terms_;
    out.insert(out.end(), b.terms_.begin(), b.terms_.end());
    return ExpPoly{std::move(out)};
}

ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return a + b.scaled(C(-1.0)); }

ExpPoly& ExpPoly::operator+=(const ExpPoly& other) {
    *this = *this + other;
    return *this;
}

ExpPoly integrate_monomial(int p, C sigma, IntegralMode mode) {
    if (p < 0) throw std::invalid_argument("integrate_monomial: negative power");
    if (p > kMaxMonomialPower) {
        throw std::invalid_argument("integrate_monomial: t-power " + std::to_string(p) +
                                    " exceeds the recurrence cap");
    }
    if (std::abs(sigma) < kResonanceTol) {
        if (mode == IntegralMode::tail_t_to_inf) {
            throw DivergentIntegral("tail integral of xi^" + std::to_string(p) +
                                    " e^{sigma xi} diverges: sigma = " + format_complex(sigma) +
                                    " is resonant (treated as 0)");
        }
        return ExpPoly::monomial(C(1.0 / (p + 1)), p + 1, C(0.0));
    }
    if (mode == IntegralMode::tail_t_to_inf && sigma.real() >= 0.0) {
        throw DivergentIntegral("tail integral of xi^" + std::to_string(p) +
                                " e^{sigma xi} diverges: Re(sigma) = " +
                                std::to_string(sigma.real()) +
                                " >= 0, sigma = " + format_complex(sigma));
    }

    // Q_p(t) = t^p/sigma - (p/sigma) Q_{p-1}(t), coefficients by ascending t-power.
    std::vector<C> q{C(1.0) / sigma};
    for (int r = 1; r <= p; ++r) {
        std::vector<C> next(r + 1);
        const C factor = -static_cast<double>(r) / sigma;
        for (int j = 0; j < r; ++j) next[j] = factor * q[j];
        next[r] = C(1.0) / sigma;
        q = std::move(next);
    }

    std::vector<ExpPolyTerm> out;
    if (mode == IntegralMode::finite_0_to_t) {
        for (int j = 0; j <= p; ++j) out.push_back({q[j], j, sigma});
        out.push_back({-q[0], 0, C(0.0)});
    } else {
        for (int j = 0; j <= p; ++j) out.push_back({-q[j], j, sigma});
    }
    return ExpPoly{std::move(out)};
}

}  // namespace ode
}  // namespace rank1
