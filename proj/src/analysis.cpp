#include "canpinn/analysis.hpp"

#include "canpinn/csv.hpp"

#include <numbers>
#include <ostream>
#include <stdexcept>

namespace canpinn {

std::complex<double> effective_wavenumber(SchemeKind kind, double ah) {
    if (ah <= 0.0 || ah > std::numbers::pi)
        throw std::invalid_argument("effective_wavenumber: ah must lie in (0, pi]");

    using namespace std::complex_literals;
    const std::complex<double> em = std::exp(-1.0i * ah);  // exp(-i ah)
    const std::complex<double> ep = std::exp(1.0i * ah);   // exp(+i ah)

    switch (kind) {
    case SchemeKind::AD:
        // Spectrally exact: the curve is the identity k_i = ah, k_r = 0 and
        // is emitted as a reference line rather than computed here.
        throw std::invalid_argument("effective_wavenumber: ad has no finite stencil transform");
    case SchemeKind::ND_UW1:
        return -1.0i * (1.0 - em);
    case SchemeKind::ND_UW2:
        return -1.0i * (3.0 - 4.0 * em + em * em) / 2.0;
    case SchemeKind::ND_CD2:
        return -1.0i * (ep - em) / 2.0;
    case SchemeKind::CAN_UW2:
        return -1.0i * ((1.0 - em) + (1.0i * ah / 2.0) * (1.0 - em));
    case SchemeKind::CAN_CD:
        return -1.0i * ((ep - em) / 2.0 - (1.0i * ah / 8.0) * (ep - 2.0 + em));
    }
    throw std::logic_error("effective_wavenumber: unknown kind");
}

DispersionCurve dispersion_curve(std::span<const SchemeKind> kinds, int n_points) {
    if (n_points < 1) throw std::invalid_argument("dispersion_curve: need at least one grid point");
    DispersionCurve curve;
    curve.kinds.assign(kinds.begin(), kinds.end());
    curve.ah.reserve(static_cast<std::size_t>(n_points));
    for (int k = 1; k <= n_points; ++k)
        curve.ah.push_back(std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_points));

    curve.ki.resize(kinds.size());
    curve.kr.resize(kinds.size());
    for (std::size_t s = 0; s < kinds.size(); ++s) {
        curve.ki[s].reserve(curve.ah.size());
        curve.kr[s].reserve(curve.ah.size());
        for (double ah : curve.ah) {
            const std::complex<double> w = effective_wavenumber(kinds[s], ah);
            curve.ki[s].push_back(w.real());
            curve.kr[s].push_back(w.imag());
        }
    }
    return curve;
}

void write_curve_csv(std::ostream& out, const DispersionCurve& curve) {
    out << "ah";
    for (SchemeKind k : curve.kinds) {
        const std::string token = scheme_token(k);
        out << ",k_i." << token << ",k_r." << token;
    }
    out << "\n";
    for (std::size_t row = 0; row < curve.ah.size(); ++row) {
        out << csv::number(curve.ah[row]);
        for (std::size_t s = 0; s < curve.kinds.size(); ++s)
            out << ',' << csv::number(curve.ki[s][row]) << ',' << csv::number(curve.kr[s][row]);
        out << "\n";
    }
}

} // namespace canpinn
