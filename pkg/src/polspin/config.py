"""Plain-text experiment configuration.

Files are UTF-8 ``key = value`` lines; ``#`` starts a comment.  Every key
has a documented default (the 7 T reference scenario), so an empty file is
a complete configuration.  ``parse_config`` and ``serialize_config`` round
trip exactly: floats are serialized with repr so no precision is lost.

Keys:

    g_e, g_lh                  electron / light-hole g-factor
    t2_star_ps, tau_h_ps       electron / hole dephasing time (ps)
    lambda_lh_nm, lambda_hh_nm zero-field transition wavelengths (nm)
    inhom_fwhm_nm              inhomogeneous linewidth added in quadrature
    lower_eigenstate           hole eigenstate at lower transition energy
                               for B > 0: minus_x | plus_x
    b_field_tesla              in-plane field, signed
    pump_center_nm, pump_fwhm_nm
    pump_pol                   sigma+ | sigma- | D+ | D- | H | V
                               or phase=<radians> / phase_deg=<degrees>
    exciton                    lh | hh
    engine                     closed | master
    t_max_ps, t_step_ps        trace horizon and sampling step
    phase_points               phase-sweep grid size over [0, 2 pi)
    b_min, b_max, b_points     field-sweep grid
    lambda_min_nm, lambda_max_nm, lambda_points
                               wavelength-sweep grid (defaults center on
                               lambda_lh_nm +- 1.5 nm)
    delta_t_ps                 wavelength-sweep probe delay (defaults to the
                               quarter precession period at the configured
                               field)
    h_axis                     plus_x | minus_x, Stokes axis assigned to H
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field, replace

from .errors import ConfigTypeError, MissingKeyError, UnknownKeyError
from .polarization import PhotonPolarization, named_polarization, polarization_from_phase
from .transfer import FieldConfig, MaterialParams, PumpSpec

_ENUMS = {
    "lower_eigenstate": ("minus_x", "plus_x"),
    "exciton": ("lh", "hh"),
    "engine": ("closed", "master"),
    "h_axis": ("plus_x", "minus_x"),
}

_FLOAT_KEYS = (
    "g_e", "g_lh", "t2_star_ps", "tau_h_ps", "lambda_lh_nm", "lambda_hh_nm",
    "inhom_fwhm_nm", "b_field_tesla", "pump_center_nm", "pump_fwhm_nm",
    "t_max_ps", "t_step_ps", "b_min", "b_max",
    "lambda_min_nm", "lambda_max_nm", "delta_t_ps",
)

_INT_KEYS = ("phase_points", "b_points", "lambda_points")

_STR_KEYS = ("pump_pol", "lower_eigenstate", "exciton", "engine", "h_axis")

KEY_ORDER = (
    "g_e", "g_lh", "t2_star_ps", "tau_h_ps", "lambda_lh_nm", "lambda_hh_nm",
    "inhom_fwhm_nm", "lower_eigenstate", "b_field_tesla",
    "pump_center_nm", "pump_fwhm_nm", "pump_pol", "exciton", "engine",
    "t_max_ps", "t_step_ps", "phase_points", "b_min", "b_max", "b_points",
    "lambda_min_nm", "lambda_max_nm", "lambda_points", "delta_t_ps", "h_axis",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved configuration for traces, sweeps and presets."""

    material: MaterialParams = dc_field(default_factory=MaterialParams)
    field: FieldConfig = dc_field(default_factory=FieldConfig)
    pump: PumpSpec = dc_field(default_factory=PumpSpec)
    pump_pol_name: str = "D+"
    exciton: str = "lh"
    engine: str = "closed"
    t_max_ps: float = 100.0
    t_step_ps: float = 0.5
    phase_points: int = 64
    b_min: float = 0.0
    b_max: float = 7.0
    b_points: int = 15
    lambda_min_nm: float | None = None
    lambda_max_nm: float | None = None
    lambda_points: int = 121
    delta_t_ps: float | None = None
    h_axis: str = "plus_x"

    def __post_init__(self):
        if self.exciton not in _ENUMS["exciton"]:
            raise ValueError("exciton must be 'lh' or 'hh'")
        if self.engine not in _ENUMS["engine"]:
            raise ValueError("engine must be 'closed' or 'master'")
        if self.h_axis not in _ENUMS["h_axis"]:
            raise ValueError("h_axis must be 'plus_x' or 'minus_x'")
        if self.t_max_ps <= 0.0 or self.t_step_ps <= 0.0:
            raise ValueError("t_max_ps and t_step_ps must be positive")
        if self.phase_points < 1 or self.b_points < 1 or self.lambda_points < 2:
            raise ValueError("sweep grids must be non-empty")
        if self.b_min > self.b_max:
            raise ValueError("b_min must be <= b_max")
        if (
            self.lambda_min_nm is not None
            and self.lambda_max_nm is not None
            and not self.lambda_min_nm < self.lambda_max_nm
        ):
            raise ValueError("lambda_min_nm must be < lambda_max_nm")
        if self.delta_t_ps is not None and self.delta_t_ps < 0.0:
            raise ValueError("delta_t_ps must be >= 0")


def default_config() -> ExperimentConfig:
    return ExperimentConfig()


def resolve_polarization(spec: str, h_axis: str = "plus_x") -> PhotonPolarization:
    """Turn a pump_pol config value into a polarization.

    Degrees are converted at this boundary; everything downstream is
    radians.  With h_axis = minus_x the H and V labels swap.
    """
    spec = spec.strip()
    if spec.startswith("phase_deg="):
        return polarization_from_phase(math.radians(float(spec[len("phase_deg="):])))
    if spec.startswith("phase="):
        return polarization_from_phase(float(spec[len("phase="):]))
    name = spec
    if h_axis == "minus_x":
        name = {"H": "V", "V": "H"}.get(name, name)
    return named_polarization(name)


def _parse_scalar(key: str, value: str, where: str):
    if key in _FLOAT_KEYS:
        try:
            return float(value)
        except ValueError:
            raise ConfigTypeError(
                f"{where}: key '{key}' expects a number, got {value!r}"
            ) from None
    if key in _INT_KEYS:
        try:
            return int(value)
        except ValueError:
            raise ConfigTypeError(
                f"{where}: key '{key}' expects an integer, got {value!r}"
            ) from None
    if key in _ENUMS:
        if value not in _ENUMS[key]:
            raise ConfigTypeError(
                f"{where}: key '{key}' expects one of {_ENUMS[key]}, got {value!r}"
            )
        return value
    return value  # pump_pol, validated when resolved


def parse_config_items(items) -> ExperimentConfig:
    """Build a config from (key, value, where) triples; used by the file
    parser and by command-line overrides."""
    data: dict[str, object] = {}
    for key, value, where in items:
        if key not in KEY_ORDER:
            raise UnknownKeyError(f"{where}: unknown key '{key}'")
        data[key] = _parse_scalar(key, value, where)

    base = default_config()
    mat = base.material
    mat_kwargs = {
        k: data[k]
        for k in (
            "g_e", "g_lh", "t2_star_ps", "tau_h_ps", "lambda_lh_nm",
            "lambda_hh_nm", "inhom_fwhm_nm", "lower_eigenstate",
        )
        if k in data
    }
    try:
        if mat_kwargs:
            mat = replace(mat, **mat_kwargs)
        fld = FieldConfig(float(data.get("b_field_tesla", base.field.bx_tesla)))
        pol_name = str(data.get("pump_pol", base.pump_pol_name))
        h_axis = str(data.get("h_axis", base.h_axis))
        pump = PumpSpec(
            center_nm=float(data.get("pump_center_nm", base.pump.center_nm)),
            fwhm_nm=float(data.get("pump_fwhm_nm", base.pump.fwhm_nm)),
            pol=resolve_polarization(pol_name, h_axis),
        )
        return ExperimentConfig(
            material=mat,
            field=fld,
            pump=pump,
            pump_pol_name=pol_name,
            exciton=str(data.get("exciton", base.exciton)),
            engine=str(data.get("engine", base.engine)),
            t_max_ps=float(data.get("t_max_ps", base.t_max_ps)),
            t_step_ps=float(data.get("t_step_ps", base.t_step_ps)),
            phase_points=int(data.get("phase_points", base.phase_points)),
            b_min=float(data.get("b_min", base.b_min)),
            b_max=float(data.get("b_max", base.b_max)),
            b_points=int(data.get("b_points", base.b_points)),
            lambda_min_nm=data.get("lambda_min_nm", base.lambda_min_nm),
            lambda_max_nm=data.get("lambda_max_nm", base.lambda_max_nm),
            lambda_points=int(data.get("lambda_points", base.lambda_points)),
            delta_t_ps=data.get("delta_t_ps", base.delta_t_ps),
            h_axis=h_axis,
        )
    except ValueError as exc:
        raise ConfigTypeError(str(exc)) from exc


def parse_config(text: str) -> ExperimentConfig:
    """Parse config text; unknown keys and malformed values report their line.

    An empty file yields the full default configuration.
    """
    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigTypeError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        items.append((key.strip(), value.strip(), f"line {lineno}"))
    return parse_config_items(items)


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_config(cfg: ExperimentConfig) -> str:
    """Canonical text for a config; parse(serialize(cfg)) reproduces cfg."""
    values = {
        "g_e": cfg.material.g_e,
        "g_lh": cfg.material.g_lh,
        "t2_star_ps": cfg.material.t2_star_ps,
        "tau_h_ps": cfg.material.tau_h_ps,
        "lambda_lh_nm": cfg.material.lambda_lh_nm,
        "lambda_hh_nm": cfg.material.lambda_hh_nm,
        "inhom_fwhm_nm": cfg.material.inhom_fwhm_nm,
        "lower_eigenstate": cfg.material.lower_eigenstate,
        "b_field_tesla": cfg.field.bx_tesla,
        "pump_center_nm": cfg.pump.center_nm,
        "pump_fwhm_nm": cfg.pump.fwhm_nm,
        "pump_pol": cfg.pump_pol_name,
        "exciton": cfg.exciton,
        "engine": cfg.engine,
        "t_max_ps": cfg.t_max_ps,
        "t_step_ps": cfg.t_step_ps,
        "phase_points": cfg.phase_points,
        "b_min": cfg.b_min,
        "b_max": cfg.b_max,
        "b_points": cfg.b_points,
        "lambda_min_nm": cfg.lambda_min_nm,
        "lambda_max_nm": cfg.lambda_max_nm,
        "lambda_points": cfg.lambda_points,
        "delta_t_ps": cfg.delta_t_ps,
        "h_axis": cfg.h_axis,
    }
    lines = [
        f"{key} = {_fmt(values[key])}"
        for key in KEY_ORDER
        if values[key] is not None
    ]
    return "\n".join(lines) + "\n"


def resolve_delta_t_ps(cfg: ExperimentConfig) -> float:
    """Probe delay for wavelength sweeps; defaults to the quarter period."""
    if cfg.delta_t_ps is not None:
        return float(cfg.delta_t_ps)
    from .dynamics import larmor_omega, quarter_period_ps

    qp = quarter_period_ps(larmor_omega(cfg.material.g_e, cfg.field.bx_tesla))
    if not math.isfinite(qp):
        raise MissingKeyError(
            "delta_t_ps is required when the field is zero (no precession period)"
        )
    return qp


def resolve_lambda_window(cfg: ExperimentConfig) -> tuple[float, float]:
    lo = cfg.lambda_min_nm
    hi = cfg.lambda_max_nm
    if lo is None:
        lo = cfg.material.lambda_lh_nm - 1.5
    if hi is None:
        hi = cfg.material.lambda_lh_nm + 1.5
    if not lo < hi:
        raise MissingKeyError("wavelength window is empty; set lambda_min_nm < lambda_max_nm")
    return float(lo), float(hi)
