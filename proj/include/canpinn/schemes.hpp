#pragma once

#include "canpinn/jet.hpp"
#include "canpinn/point.hpp"
#include "canpinn/tape.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace canpinn {

/// How a differential term in the loss is computed: exact input derivatives
/// (AD), a pure numerical stencil (uw1/uw2/cd2), or a stencil coupled with
/// the AD derivative at the stencil points (can-uw2/can-cd).
enum class SchemeKind {
    AD,
    ND_UW1,
    ND_UW2,
    ND_CD2,
    CAN_UW2,
    CAN_CD,
};

std::string scheme_token(SchemeKind k); // ad | uw1 | uw2 | cd2 | can-uw2 | can-cd
std::optional<SchemeKind> scheme_from_token(std::string_view token);

enum class FaceSide { East, West };

/// Upwind direction along an axis: +1 when the advecting velocity points
/// toward increasing coordinate, -1 otherwise.
struct WindSign {
    int sign = +1;
    WindSign() = default;
    explicit WindSign(int s) : sign(s) {
        if (s != 1 && s != -1) throw std::invalid_argument("WindSign: must be +1 or -1");
    }
};

/// Abstract field evaluated at arbitrary points, including outside the
/// nominal domain. `order` is the highest input-derivative order the caller
/// will read from the returned jet.
struct FieldProbe {
    std::function<Jet2(const Point&, int order)> eval;
    Jet2 operator()(const Point& p, int order) const { return eval(p, order); }
};

/// Probe built from plain functions (value, optional gradient, optional
/// diagonal second derivatives); emits constant jets on the tape.
FieldProbe analytic_probe(Tape& t, std::function<double(const Point&)> value,
                          std::function<double(const Point&, int axis)> gradient = nullptr,
                          std::function<double(const Point&, int axis)> diag2 = nullptr);

/// Per-term scheme assignment and stencil spacings, the loss-level
/// hyper-parameters of a run.
struct SchemeConfig {
    double dx = 0.02;
    double dy = 0.02;
    SchemeKind convection = SchemeKind::CAN_UW2;
    SchemeKind pressure = SchemeKind::CAN_CD;
    SchemeKind diffusion = SchemeKind::ND_CD2; // AD or ND_CD2
    SchemeKind continuity = SchemeKind::ND_CD2;
    // The temporal derivative is always AD.

    double delta(int axis) const {
        if (axis == 0) return dx;
        if (axis == 1) return dy;
        throw std::invalid_argument("SchemeConfig: no stencil spacing for this axis");
    }
    void validate() const;
};

/// Reconstructed field value at the half-spacing face east (x + delta/2) or
/// west (x - delta/2) of a collocation point. AD has no face construction.
Var face_value(Tape& t, SchemeKind kind, const FieldProbe& probe, const Point& x, int axis, double delta,
               FaceSide side, WindSign wind = WindSign{+1});

/// First derivative along `axis`: the face difference for stencil schemes,
/// the jet component for AD.
Var first_derivative(Tape& t, SchemeKind kind, const FieldProbe& probe, const Point& x, int axis, double delta,
                     WindSign wind = WindSign{+1});

/// Second derivative along `axis`: AD jet component or the 3-point central
/// stencil.
Var second_derivative(Tape& t, SchemeKind kind, const FieldProbe& probe, const Point& x, int axis, double delta);

/// Conservative flux difference d(a u)/dx = (a_e u_e - a_w u_w)/delta with
/// the advecting value probed directly at the face points and the advected
/// face values upwinded on the face velocity's sign.
Var flux_derivative(Tape& t, SchemeKind kind, const FieldProbe& advecting, const FieldProbe& advected,
                    const Point& x, int axis, double delta);

} // namespace canpinn
