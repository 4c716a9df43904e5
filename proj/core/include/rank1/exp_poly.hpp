#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace rank1 {
namespace ode {

// Thrown when an integral over an infinite range fails to converge, i.e.
// when the integrand still grows (or fails to decay) at the far end.
struct DivergentIntegral : std::domain_error {
    explicit DivergentIntegral(const std::string& what) : std::domain_error(what) {}
};

// One monomial c * t^p * e^{mu t}. The class of finite sums of such terms is
// closed under differentiation, multiplication by t and by e^{a t}, and under
// integration against exponential kernels, which is what makes the whole
// solver exact.
struct ExpPolyTerm {
    std::complex<double> coeff;
    int tpow = 0;
    std::complex<double> exponent;
};

// A finite sum of ExpPolyTerm in canonical form: terms sorted by
// (Re exponent, Im exponent, tpow), terms with equal keys merged (exponents
// closer than 1e-12 count as equal), and coefficients below 1e-14 in modulus
// dropped. The zero function is the empty term list.
class ExpPoly {
  public:
    ExpPoly() = default;
    explicit ExpPoly(std::vector<ExpPolyTerm> raw);

    static ExpPoly zero();
    static ExpPoly constant(std::complex<double> c);
    static ExpPoly monomial(std::complex<double> c, int tpow, std::complex<double> exponent);

    const std::vector<ExpPolyTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    int max_tpow() const;
    double max_abs_coeff() const;

    // Sum of c * t^p * e^{mu t}, grouped by exponent and evaluated with
    // Horner's rule in t inside each group.
    std::complex<double> eval(double t) const;

    ExpPoly derivative() const;
    ExpPoly scaled(std::complex<double> c) const;
    // Multiplication by e^{delta t}: shifts every exponent.
    ExpPoly shifted(std::complex<double> delta) const;
    // Multiplication by t^k.
    ExpPoly times_t(int k = 1) const;

    friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b);
    friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b);
    ExpPoly& operator+=(const ExpPoly& other);

  private:
    std::vector<ExpPolyTerm> terms_;
    void canonicalize();
};

// Exponents within this distance are treated as the same frequency.
inline constexpr double kExpMergeTol = 1e-12;
// Canonical form drops coefficients smaller than this.
inline constexpr double kCoeffPruneTol = 1e-14;
// |sigma| below this threshold is treated as sigma = 0 in the closed-form
// integrals; such kernels integrate to plain t-powers instead of
// exponentials. Raising this knob widens the band around the degenerate
// parameter points that is routed through the polynomial branch.
inline constexpr double kResonanceTol = 1e-9;
// Largest t-power accepted by the closed-form integration recurrence.
inline constexpr int kMaxMonomialPower = 64;

enum class IntegralMode { finite_0_to_t, tail_t_to_inf };

// Closed form of the integral of xi^p e^{sigma xi}, as an ExpPoly in the
// upper (finite mode) or lower (tail mode) endpoint t:
//
//   finite:  int_0^t  = e^{sigma t} Q_p(t) - Q_p(0)
//   tail:    int_t^inf = -e^{sigma t} Q_p(t)        (needs Re sigma < 0)
//
// with Q_p(t) = t^p/sigma - (p/sigma) Q_{p-1}(t) and Q_0 = 1/sigma. In the
// resonant case |sigma| < kResonanceTol the finite mode returns
// t^{p+1}/(p+1) and the tail mode diverges.
ExpPoly integrate_monomial(int p, std::complex<double> sigma, IntegralMode mode);

}  // namespace ode
}  // namespace rank1
