// JSON and CSV serialization of the report types. All output is
// deterministic: object fields are emitted in a fixed documented order,
// floating-point values use shortest round-trip formatting, rationals appear
// as {num, den}, complex values as {re, im}, and CSV uses a header row with
// LF line endings. The JSON library stays an implementation detail so that
// installed consumers of this header need nothing beyond the standard
// library.
#pragma once

#include <string>
#include <vector>

#include "rank1/counting.hpp"
#include "rank1/expansion.hpp"
#include "rank1/group_ops.hpp"
#include "rank1/series.hpp"
#include "rank1/weights.hpp"

namespace rank1 {
namespace io {

std::string variant_name(grp::CasimirVariant v);

/// {"n", "trials", "seed", "theorem2": {"max_rel_err", "mean_rel_err"},
///  "corollary31": {...}, "winner"}
std::string verify_report_json(const grp::VerifyReport& report, int indent = 2);

/// {"n", "mu", "varpi", "varpi_hat", "nu_sq", "D", "regime",
///  "half_integer_flag", "lambda_plus", "lambda_minus"}
std::string spectral_datum_json(const repn::SpectralDatum& datum, int indent = 2);

/// Nested array of epsilon coordinates, e.g. [[0,0],[1,0]]. Integral entries
/// print as integers, half-odd ones as {num, den}.
std::string weight_list_json(const std::vector<repn::HighestWeight>& weights,
                             int indent = -1);

/// {"n", "thresholds", "counts", "fitted_exponent", "target_exponent"}
std::string count_report_json(const count::CountReport& report, int indent = 2);

/// Columns W, S, fit; the fitted exponent repeats on every row.
std::string count_report_csv(const count::CountReport& report);

/// {"coeffs": [{"branch", "m", "re", "im"}...], "ell", "ell_plus",
///  "fitted_decay", "remainder": [{"t", "abs"}...]}
std::string expansion_report_json(const ode::ExpansionReport& report, int indent = 2);

/// Columns t, abs: the sampled remainder magnitudes.
std::string remainder_csv(const ode::ExpansionReport& report);

}  // namespace io
}  // namespace rank1
