#include "rank1/json_io.hpp"

#include <complex>

#include "json.hpp"

namespace rank1 {
namespace io {

namespace {

using ordered = nlohmann::ordered_json;

ordered complex_value(std::complex<double> z) {
    ordered out;
    out["re"] = z.real();
    out["im"] = z.imag();
    return out;
}

ordered rational_value(const repn::Rat& r) {
    ordered out;
    out["num"] = r.numerator();
    out["den"] = r.denominator();
    return out;
}

// Weight coordinates read better as plain integers when they are integers;
// only genuinely half-odd entries need the {num, den} form.
ordered weight_entry(const repn::Rat& r) {
    if (r.denominator() == 1)
        return ordered(r.numerator());
    return rational_value(r);
}

ordered variant_value(const grp::VariantReport& v) {
    ordered out;
    out["max_rel_err"] = v.max_rel_err;
    out["mean_rel_err"] = v.mean_rel_err;
    return out;
}

// Shortest round-trip formatting for CSV cells, identical to what the JSON
// side emits for the same value.
std::string csv_number(double x) { return ordered(x).dump(); }

}  // namespace

std::string variant_name(grp::CasimirVariant v) {
    return v == grp::CasimirVariant::theorem2 ? "theorem2" : "corollary31";
}

std::string verify_report_json(const grp::VerifyReport& report, int indent) {
    ordered doc;
    doc["n"] = report.n;
    doc["trials"] = report.trials;
    doc["seed"] = report.seed;
    doc["theorem2"] = variant_value(report.theorem2);
    doc["corollary31"] = variant_value(report.corollary31);
    doc["winner"] = variant_name(report.winner);
    return doc.dump(indent);
}

std::string spectral_datum_json(const repn::SpectralDatum& datum, int indent) {
    ordered doc;
    doc["n"] = datum.n;
    doc["mu"] = datum.mu;
    doc["varpi"] = rational_value(datum.varpi);
    doc["varpi_hat"] = rational_value(datum.varpi_hat);
    doc["nu_sq"] = datum.nu_sq;
    doc["D"] = datum.D;
    doc["regime"] = repn::regime_name(datum.regime);
    doc["half_integer_flag"] = datum.half_integer_flag;
    doc["lambda_plus"] = complex_value(datum.lambda_plus);
    doc["lambda_minus"] = complex_value(datum.lambda_minus);
    return doc.dump(indent);
}

std::string weight_list_json(const std::vector<repn::HighestWeight>& weights, int indent) {
    ordered doc = ordered::array();
    for (const repn::HighestWeight& w : weights) {
        ordered row = ordered::array();
        for (const repn::Rat& entry : w.entries)
            row.push_back(weight_entry(entry));
        doc.push_back(row);
    }
    return doc.dump(indent);
}

std::string count_report_json(const count::CountReport& report, int indent) {
    ordered doc;
    doc["n"] = report.n;
    doc["thresholds"] = report.thresholds;
    doc["counts"] = report.counts;
    doc["fitted_exponent"] = report.fitted_exponent;
    doc["target_exponent"] = rational_value(report.target_exponent);
    return doc.dump(indent);
}

std::string count_report_csv(const count::CountReport& report) {
    std::string out = "W,S,fit\n";
    for (std::size_t i = 0; i < report.thresholds.size(); i++) {
        out += csv_number(report.thresholds[i]);
        out += ',';
        out += std::to_string(report.counts[i]);
        out += ',';
        out += csv_number(report.fitted_exponent);
        out += '\n';
    }
    return out;
}

std::string expansion_report_json(const ode::ExpansionReport& report, int indent) {
    ordered doc;
    ordered coeffs = ordered::array();
    for (const auto& [key, value] : report.coeffs) {
        ordered entry;
        entry["branch"] = ode::branch_name(key.branch);
        entry["m"] = key.m;
        entry["re"] = value.real();
        entry["im"] = value.imag();
        coeffs.push_back(std::move(entry));
    }
    doc["coeffs"] = std::move(coeffs);
    doc["ell"] = report.ell;
    doc["ell_plus"] = report.ell_plus;
    doc["fitted_decay"] = report.fitted_decay;
    ordered remainder = ordered::array();
    for (const auto& [t, abs_value] : report.remainder_samples) {
        ordered entry;
        entry["t"] = t;
        entry["abs"] = abs_value;
        remainder.push_back(std::move(entry));
    }
    doc["remainder"] = std::move(remainder);
    return doc.dump(indent);
}

std::string remainder_csv(const ode::ExpansionReport& report) {
    std::string out = "t,abs\n";
    for (const auto& [t, abs_value] : report.remainder_samples) {
        out += csv_number(t);
        out += ',';
        out += csv_number(abs_value);
        out += '\n';
    }
    return out;
}

}  // namespace io
}  // namespace rank1
