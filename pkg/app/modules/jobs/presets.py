"""Named algebras: structure polynomial, lowest-weight module and optional Fock realization."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Callable, Dict, Mapping, Tuple

from ..algebra import CasimirPolynomial, StructurePolynomial, casimir_value, telescope_g
from ..common.errors import ConfigError, DomainError
from ..common.rational import format_fraction, to_fraction
from ..measures import bg_density, gaussian_density
from ..realizations import (
    RealizedTriple,
    closure_fit,
    find_vacua,
    realize_dicke,
    realize_multiphoton,
    realize_pair,
    realize_su11_single,
    realize_trilinear,
    sector_to_module,
)
from ..registry import PresetMetadata
from ..repspace import (
    LoweringModule,
    build_module,
    module_from_ladder_polynomial,
    three_boson_ladder,
)

logger = logging.getLogger(__name__)

SINGLE_MODE_CUTOFF = 32


@dataclass(frozen=True)
class PresetOptions:
    params: Mapping[str, Fraction] = field(default_factory=dict)
    cutoff: int = 64
    mode_cutoff: int = 12
    vacuum: int = 0


@dataclass(frozen=True)
class PresetBuild:
    f: StructurePolynomial
    g: CasimirPolynomial
    module: LoweringModule
    b_sign: int = 1
    density: Callable[[float], float] | None = None
    realization: Callable[[], RealizedTriple] | None = None
    realization_f: StructurePolynomial | None = None
    notes: Tuple[str, ...] = ()


def _param(options: PresetOptions, name: str) -> Fraction:
    return to_fraction(options.params[name])


def _integer(options: PresetOptions, name: str) -> int:
    value = _param(options, name)
    if value.denominator != 1:
        raise ConfigError(
            f"parameter {name} must be an integer",
            {f"algebra.params.{name}": "expected an integer"},
        )
    return int(value)


def _from_f(f: StructurePolynomial, w0: Fraction, cutoff: int) -> Tuple[CasimirPolynomial, LoweringModule]:
    g = telescope_g(f)
    return g, build_module(g, w0, cutoff)


def build_su11(options: PresetOptions) -> PresetBuild:
    w0 = _param(options, "w0")
    f = StructurePolynomial.su11()
    g, module = _from_f(f, w0, options.cutoff)
    realization = None
    if w0 in (Fraction(1, 4), Fraction(3, 4)):
        parity = 0 if w0 == Fraction(1, 4) else 1
        realization = partial(realize_su11_single, max(options.mode_cutoff, SINGLE_MODE_CUTOFF), parity)
    density = partial(bg_density, phi=-w0) if w0 > 0 else None
    return PresetBuild(f, g, module, 1, density, realization, f)


def build_bg(options: PresetOptions) -> PresetBuild:
    phi = _param(options, "phi")
    if phi >= 0:
        raise DomainError("Barut-Girardello modules need phi < 0", phi=format_fraction(phi))
    f = StructurePolynomial.su11()
    g, module = _from_f(f, -phi, options.cutoff)
    q = -2 * phi - 1
    realization = None
    if q.denominator == 1 and q >= 0:
        realization = partial(realize_pair, (options.mode_cutoff, options.mode_cutoff), int(q))
    return PresetBuild(f, g, module, 1, partial(bg_density, phi=phi), realization, f)


def build_su2(options: PresetOptions) -> PresetBuild:
    spin = _param(options, "l")
    if spin <= 0 or (2 * spin).denominator != 1:
        raise DomainError("su(2) spins are positive multiples of 1/2", l=format_fraction(spin))
    f = StructurePolynomial.su2()
    g, module = _from_f(f, -spin, options.cutoff)
    cutoffs = (max(options.mode_cutoff, int(2 * spin)),) * 2
    realization = partial(realize_multiphoton, 1, 1, cutoffs, spin)
    return PresetBuild(f, g, module, -1, None, realization, f)


def build_pair(options: PresetOptions) -> PresetBuild:
    q = _integer(options, "q")
    w0 = Fraction(abs(q) + 1, 2)
    f = StructurePolynomial.su11()
    g, module = _from_f(f, w0, options.cutoff)
    realization = partial(realize_pair, (options.mode_cutoff, options.mode_cutoff), q)
    return PresetBuild(f, g, module, 1, partial(bg_density, phi=-w0), realization, f)


def build_quadratic(options: PresetOptions) -> PresetBuild:
    eps = _param(options, "epsilon")
    f = StructurePolynomial.three_boson_table(eps)
    g, module = _from_f(f, Fraction(0), options.cutoff)
    notes = (
        "the resolution of identity for this module needs a Meijer-G density; "
        "only the exact moment sequence is reported",
    )
    return PresetBuild(f, g, module, 1, None, None, None, notes)


def build_trilinear(options: PresetOptions) -> PresetBuild:
    eps = _param(options, "epsilon")
    h0, q = _param(options, "h0"), _integer(options, "q")
    f = StructurePolynomial.three_boson_table(eps)
    g = telescope_g(f)
    module = module_from_ladder_polynomial(
        three_boson_ladder(eps), 0, options.cutoff, casimir=casimir_value(g, 0)
    )
    size = options.mode_cutoff
    realization = partial(realize_trilinear, (size, size, size), h0, q)
    notes = (
        "states use the explicit ladder m(m-1/2-eps)(m+1/2-eps); the Fock sector "
        "closes on the three-boson algebra with h0 and q substituted",
    )
    return PresetBuild(f, g, module, 1, None, realization, StructurePolynomial.trilinear(h0, q), notes)


def build_higgs(options: PresetOptions) -> PresetBuild:
    c, h = _param(options, "c"), _param(options, "h")
    f = StructurePolynomial.higgs(c, h)
    g, module = _from_f(f, _param(options, "w0"), options.cutoff)
    notes = ("the multiphoton (2,2) preset realizes a Higgs-type cubic in a Fock sector",)
    return PresetBuild(f, g, module, 1, None, None, None, notes)


def _fitted(triple: RealizedTriple, options: PresetOptions, b_sign: int) -> PresetBuild:
    f = closure_fit(triple)
    vacua = find_vacua(triple)
    if not vacua:
        raise DomainError(f"the {triple.name} sector has no vacuum", sector=triple.sector.to_json())
    if options.vacuum >= len(vacua):
        raise ConfigError(
            f"vacuum {options.vacuum} out of range; the sector has {len(vacua)}",
            {"vacuum": f"expected an index below {len(vacua)}"},
        )
    module = sector_to_module(triple, vacua[options.vacuum].index, f)
    if module.is_finite:
        b_sign = -1
    return PresetBuild(f, telescope_g(f), module, b_sign, None, lambda: triple, f)


def build_multiphoton(options: PresetOptions) -> PresetBuild:
    m, n = _integer(options, "m"), _integer(options, "n")
    size = options.mode_cutoff
    triple = realize_multiphoton(m, n, (size, size), _param(options, "h0"))
    return _fitted(triple, options, 1)


def build_dicke(options: PresetOptions) -> PresetBuild:
    n_atoms, k = _integer(options, "n_atoms"), _integer(options, "k")
    triple = realize_dicke(n_atoms, k, options.mode_cutoff, _param(options, "h0"))
    return _fitted(triple, options, 1)


def build_oscillator(options: PresetOptions) -> PresetBuild:
    f = StructurePolynomial.oscillator()
    g, module = _from_f(f, Fraction(0), options.cutoff)
    return PresetBuild(f, g, module, 1, gaussian_density)


def build_preset(slug: str, options: PresetOptions) -> PresetBuild:
    from ..registry import get_preset

    metadata = get_preset(slug)
    if metadata is None:
        raise ConfigError(f"unknown preset {slug!r}", {"algebra.preset": "unknown preset"})
    merged: Dict[str, Fraction] = {k: to_fraction(v) for k, v in (metadata.defaults or {}).items()}
    merged.update({k: to_fraction(v) for k, v in options.params.items()})
    logger.debug("building preset %s with %s", slug, {k: format_fraction(v) for k, v in merged.items()})
    return metadata.builder(PresetOptions(merged, options.cutoff, options.mode_cutoff, options.vacuum))


SHIPPED_PRESETS = (
    PresetMetadata(
        slug="su11",
        name="su(1,1)",
        description="Undeformed su(1,1), f = -2H; w0 = 1/4 and 3/4 are the single-mode vacua.",
        builder=build_su11,
        defaults={"w0": "1/4"},
    ),
    PresetMetadata(
        slug="bg",
        name="Barut-Girardello",
        description="su(1,1) module with s[m] = m(m - 1 - 2 phi), phi < 0.",
        builder=build_bg,
        defaults={"phi": "-1"},
    ),
    PresetMetadata(
        slug="su2",
        name="su(2)",
        description="Compact su(2), f = +2H; the spin-l module terminates after 2l + 1 levels.",
        builder=build_su2,
        kind="finite",
        defaults={"l": "1"},
    ),
    PresetMetadata(
        slug="pair",
        name="Pair states",
        description="Two-mode su(1,1) K+ = a†b† in the charge sector na - nb = q.",
        builder=build_pair,
        defaults={"q": "0"},
    ),
    PresetMetadata(
        slug="quadratic",
        name="Quadratic algebra",
        description="Three-boson quadratic algebra built from f and telescoped to g.",
        builder=build_quadratic,
        defaults={"epsilon": "-3/2"},
    ),
    PresetMetadata(
        slug="trilinear",
        name="Trilinear boson",
        description="J+ = a†bc: explicit ladder for states, Fock sector (h0, q) for realization checks.",
        builder=build_trilinear,
        defaults={"epsilon": "-3/2", "h0": "9/4", "q": "0"},
    ),
    PresetMetadata(
        slug="higgs",
        name="Higgs algebra",
        description="Cubic f = 2c H + 4h H^3.",
        builder=build_higgs,
        defaults={"c": "-1", "h": "-1", "w0": "1"},
    ),
    PresetMetadata(
        slug="multiphoton",
        name="Multiphoton",
        description="N+ = a0^m a1†^n in a fixed H0 sector; f fitted from the sector.",
        builder=build_multiphoton,
        kind="finite",
        defaults={"m": "2", "n": "2", "h0": "3"},
    ),
    PresetMetadata(
        slug="dicke",
        name="Dicke",
        description="N+ = J+ a^k on n_atoms two-level atoms; f fitted from the sector.",
        builder=build_dicke,
        kind="finite",
        defaults={"n_atoms": "2", "k": "1", "h0": "3"},
    ),
    PresetMetadata(
        slug="oscillator",
        name="Oscillator",
        description="Heisenberg-Weyl limit f = -1 with s[m] = m; Gaussian measure.",
        builder=build_oscillator,
    ),
)
