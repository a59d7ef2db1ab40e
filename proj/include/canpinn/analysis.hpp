#pragma once

#include "canpinn/schemes.hpp"

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

namespace canpinn {

/// Effective wavenumber alpha'h of a first-derivative scheme acting on the
/// Fourier mode exp(i*alpha*x) with spacing h. The real part is the
/// dispersion k_i, the imaginary part the dissipation k_r; k_r < 0 means the
/// scheme damps the mode. AD is spectrally exact (identity line) and is
/// rejected here.
std::complex<double> effective_wavenumber(SchemeKind kind, double ah);

struct DispersionCurve {
    std::vector<double> ah;                    // uniform grid on (0, pi]
    std::vector<SchemeKind> kinds;
    std::vector<std::vector<double>> ki;       // [kind][grid]
    std::vector<std::vector<double>> kr;       // [kind][grid]
};

DispersionCurve dispersion_curve(std::span<const SchemeKind> kinds, int n_points);

/// Columns: ah, then k_i.<scheme>, k_r.<scheme> per scheme, 17 significant
/// digits.
void write_curve_csv(std::ostream& out, const DispersionCurve& curve);

} // namespace canpinn
