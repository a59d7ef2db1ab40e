#include "canpinn/schemes.hpp"

namespace canpinn {

std::string scheme_token(SchemeKind k) {
    switch (k) {
    case SchemeKind::AD: return "ad";
    case SchemeKind::ND_UW1: return "uw1";
    case SchemeKind::ND_UW2: return "uw2";
    case SchemeKind::ND_CD2: return "cd2";
    case SchemeKind::CAN_UW2: return "can-uw2";
    case SchemeKind::CAN_CD: return "can-cd";
    }
    throw std::logic_error("scheme_token: unknown kind");
}

std::optional<SchemeKind> scheme_from_token(std::string_view token) {
    if (token == "ad") return SchemeKind::AD;
    if (token == "uw1") return SchemeKind::ND_UW1;
    if (token == "uw2") return SchemeKind::ND_UW2;
    if (token == "cd2") return SchemeKind::ND_CD2;
    if (token == "can-uw2") return SchemeKind::CAN_UW2;
    if (token == "can-cd") return SchemeKind::CAN_CD;
    return std::nullopt;
}

void SchemeConfig::validate() const {
    if (dx <= 0.0 || dy <= 0.0) throw std::invalid_argument("SchemeConfig: stencil spacings must be positive");
    if (diffusion != SchemeKind::AD && diffusion != SchemeKind::ND_CD2)
        throw std::invalid_argument("SchemeConfig: diffusion must be ad or cd2");
}

FieldProbe analytic_probe(Tape& t, std::function<double(const Point&)> value,
                          std::function<double(const Point&, int)> gradient,
                          std::function<double(const Point&, int)> diag2) {
    return FieldProbe{[&t, value = std::move(value), gradient = std::move(gradient),
                       diag2 = std::move(diag2)](const Point& p, int order) {
        Jet2 j;
        j.dim = p.dim();
        j.order = order;
        j.value = t.constant(value(p));
        for (int i = 0; i < p.dim() && order >= 1; ++i) {
            if (!gradient) throw std::logic_error("analytic_probe: gradient requested but not provided");
            j.grad[static_cast<std::size_t>(i)] = t.constant(gradient(p, i));
            if (order >= 2) {
                if (!diag2) throw std::logic_error("analytic_probe: second derivative requested but not provided");
                j.diag2[static_cast<std::size_t>(i)] = t.constant(diag2(p, i));
            }
        }
        return j;
    }};
}

namespace {

void require_positive(double delta) {
    if (delta <= 0.0) throw std::invalid_argument("scheme: stencil spacing must be positive");
}

/// can(uw2) one-sided reconstruction from an anchor point: value plus half a
/// spacing of the AD slope, extrapolated toward the face.
Var can_uw2_from_anchor(Tape& t, const FieldProbe& probe, const Point& anchor, int axis, double delta, int toward) {
    const Jet2 j = probe(anchor, 1);
    return t.add(j.value, t.scale(j.grad_at(axis), 0.5 * delta * toward));
}

/// uw2 one-sided reconstruction: 3/2 of the anchor value minus 1/2 of the
/// value one spacing further upwind.
Var uw2_from_anchor(Tape& t, const FieldProbe& probe, const Point& anchor, int axis, double delta, int toward) {
    const Var near = probe(anchor, 0).value;
    const Var far = probe(anchor.shifted(axis, -delta * toward), 0).value;
    return t.sub(t.scale(near, 1.5), t.scale(far, 0.5));
}

/// can(cd) face between two bracketing points: averaged values corrected by
/// the AD slope difference across the face.
Var can_cd_face(Tape& t, const FieldProbe& probe, const Point& left, const Point& right, int axis, double delta) {
    const Jet2 jl = probe(left, 1);
    const Jet2 jr = probe(right, 1);
    const Var avg = t.scale(t.add(jr.value, jl.value), 0.5);
    const Var slope_jump = t.sub(jr.grad_at(axis), jl.grad_at(axis));
    return t.sub(avg, t.scale(slope_jump, delta / 8.0));
}

} // namespace

Var face_value(Tape& t, SchemeKind kind, const FieldProbe& probe, const Point& x, int axis, double delta,
               FaceSide side, WindSign wind) {
    require_positive(delta);
    if (kind == SchemeKind::AD) throw std::invalid_argument("face_value: faces are undefined for the ad kind");

    // Points bracketing the face: [base, base + delta], face at base + delta/2.
    const Point base = (side == FaceSide::East) ? x : x.shifted(axis, -delta);
    switch (kind) {
    case SchemeKind::ND_UW1: {
        const Point anchor = (wind.sign > 0) ? base : base.shifted(axis, delta);
        return probe(anchor, 0).value;
    }
    case SchemeKind::ND_UW2: {
        const Point anchor = (wind.sign > 0) ? base : base.shifted(axis, delta);
        return uw2_from_anchor(t, probe, anchor, axis, delta, wind.sign);
    }
    case SchemeKind::CAN_UW2: {
        const Point anchor = (wind.sign > 0) ? base : base.shifted(axis, delta);
        return can_uw2_from_anchor(t, probe, anchor, axis, delta, wind.sign);
    }
    case SchemeKind::ND_CD2: {
        const Var left = probe(base, 0).value;
        const Var right = probe(base.shifted(axis, delta), 0).value;
        return t.scale(t.add(right, left), 0.5);
    }
    case SchemeKind::CAN_CD:
        return can_cd_face(t, probe, base, base.shifted(axis, delta), axis, delta);
    default:
        throw std::invalid_argument("face_value: unknown scheme kind");
    }
}

Var first_derivative(Tape& t, SchemeKind kind, const FieldProbe& probe, const Point& x, int axis, double delta,
                     WindSign wind) {
    if (kind == SchemeKind::AD) return probe(x, 1).grad_at(axis);
    require_positive(delta);
    const Var east = face_value(t, kind, probe, x, axis, delta, FaceSide::East, wind);
    const Var west = face_value(t, kind, probe, x, axis, delta, FaceSide::West, wind);
    return t.scale(t.sub(east, west), 1.0 / delta);
}

Var second_derivative(Tape& t, SchemeKind kind, const FieldProbe& probe, const Point& x, int axis, double delta) {
    if (kind == SchemeKind::AD) return probe(x, 2).diag2_at(axis);
    if (kind != SchemeKind::ND_CD2)
        throw std::invalid_argument("second_derivative: only ad and cd2 are supported");
    require_positive(delta);
    const Var um = probe(x.shifted(axis, -delta), 0).value;
    const Var uc = probe(x, 0).value;
    const Var up = probe(x.shifted(axis, delta), 0).value;
    const Var sum = t.add(t.sub(up, t.scale(uc, 2.0)), um);
    return t.scale(sum, 1.0 / (delta * delta));
}

Var flux_derivative(Tape& t, SchemeKind kind, const FieldProbe& advecting, const FieldProbe& advected,
                    const Point& x, int axis, double delta) {
    if (kind != SchemeKind::ND_UW2 && kind != SchemeKind::CAN_UW2 && kind != SchemeKind::ND_CD2 &&
        kind != SchemeKind::CAN_CD)
        throw std::invalid_argument("flux_derivative: kind must be uw2, cd2, can-uw2 or can-cd");
    require_positive(delta);

    auto face_flux = [&](FaceSide side) {
        const double off = (side == FaceSide::East) ? 0.5 * delta : -0.5 * delta;
        const Var a = advecting(x.shifted(axis, off), 0).value;
        const WindSign wind{t.value(a) < 0.0 ? -1 : +1}; // sign 0 treated as +1
        const Var u = face_value(t, kind, advected, x, axis, delta, side, wind);
        return t.mul(a, u);
    };
    const Var east = face_flux(FaceSide::East);
    const Var west = face_flux(FaceSide::West);
    return t.scale(t.sub(east, west), 1.0 / delta);
}

} // namespace canpinn
