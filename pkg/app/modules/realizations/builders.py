from __future__ import annotations

from fractions import Fraction
from typing import Dict, Sequence

from ..common.errors import DomainError
from ..common.rational import RationalLike, to_fraction
from .sector import LadderMonomial, RealizedTriple, State, assemble, build_sector, charge_sectors

MAX_MULTIPHOTON_ORDER = 6
MAX_DICKE_ATOMS = 6
MAX_DICKE_FLIP_ORDER = 3


def _check_cutoffs(cutoffs: Sequence[int], count: int) -> tuple:
    cutoffs = tuple(int(c) for c in cutoffs)
    if len(cutoffs) != count:
        raise DomainError(f"expected {count} mode cutoffs", got=len(cutoffs))
    if any(c < 0 for c in cutoffs):
        raise DomainError("mode cutoffs must be non-negative", cutoffs=cutoffs)
    return cutoffs


def su11_single_charges(state: State) -> Dict[str, Fraction]:
    return {"parity": Fraction(state[0] % 2)}


def realize_su11_single(cutoff: int, parity: int | None = None) -> RealizedTriple:
    """K- = a^2/2, K+ = a†^2/2, K0 = (2n + 1)/4 on a single mode."""
    if cutoff < 4:
        raise DomainError("the single-mode realization needs cutoff >= 4", cutoff=cutoff)
    if parity is None:
        charge_fn = lambda state: {}  # noqa: E731
        charges: Dict[str, Fraction] = {}
    else:
        charge_fn = su11_single_charges
        charges = {"parity": Fraction(parity % 2)}
    sector = build_sector(("a",), (cutoff,), charge_fn, charges)
    return assemble(
        "su11_single",
        sector,
        LadderMonomial(shift=(2,), scale_sq=Fraction(1, 4)),
        lambda state: Fraction(2 * state[0] + 1, 4),
        charge_fn,
    )


def pair_charges(state: State) -> Dict[str, Fraction]:
    na, nb = state
    return {"q": Fraction(na - nb)}


def realize_pair(cutoffs: Sequence[int], q: int = 0) -> RealizedTriple:
    """K+ = a†b†, K- = ab, K0 = (na + nb + 1)/2 in the sector na - nb = q."""
    cutoffs = _check_cutoffs(cutoffs, 2)
    sector = build_sector(("a", "b"), cutoffs, pair_charges, {"q": Fraction(q)})
    return assemble(
        "pair",
        sector,
        LadderMonomial(shift=(1, 1)),
        lambda state: Fraction(state[0] + state[1] + 1, 2),
        pair_charges,
    )


def trilinear_charges(state: State) -> Dict[str, Fraction]:
    na, nb, nc = state
    k0 = Fraction(nb + nc + 1, 2)
    return {"h0": (na + k0) / 2, "q": Fraction(nb - nc)}


def trilinear_j0(state: State) -> Fraction:
    na, nb, nc = state
    return (na - Fraction(nb + nc + 1, 2)) / 2


def trilinear_sectors(cutoffs: Sequence[int]) -> list:
    return charge_sectors(_check_cutoffs(cutoffs, 3), trilinear_charges)


def realize_trilinear(cutoffs: Sequence[int], h0: RationalLike, q: int) -> RealizedTriple:
    """J+ = a†bc, J- = ab†c†, J0 = (na - K0)/2 with H0 = h0 and Q = nb - nc = q."""
    cutoffs = _check_cutoffs(cutoffs, 3)
    charges = {"h0": to_fraction(h0), "q": Fraction(q)}
    sector = build_sector(("a", "b", "c"), cutoffs, trilinear_charges, charges)
    return assemble("trilinear", sector, LadderMonomial(shift=(1, -1, -1)), trilinear_j0, trilinear_charges)


def multiphoton_charges(m: int, n: int):
    def charges(state: State) -> Dict[str, Fraction]:
        n0, n1 = state
        return {"h0": (Fraction(n0, m) + Fraction(n1, n)) / 2}

    return charges


def realize_multiphoton(m: int, n: int, cutoffs: Sequence[int], h0: RationalLike) -> RealizedTriple:
    """N+ = a0^m a1†^n, N0 = (n1 - n0)/(m + n), H0 = (n0/m + n1/n)/2."""
    if m < 1 or n < 1 or m + n > MAX_MULTIPHOTON_ORDER:
        raise DomainError(
            f"multiphoton orders need m, n >= 1 and m + n <= {MAX_MULTIPHOTON_ORDER}",
            m=m,
            n=n,
        )
    cutoffs = _check_cutoffs(cutoffs, 2)
    charge_fn = multiphoton_charges(m, n)
    sector = build_sector(("a0", "a1"), cutoffs, charge_fn, {"h0": to_fraction(h0)})
    return assemble(
        f"multiphoton({m},{n})",
        sector,
        LadderMonomial(shift=(-m, n)),
        lambda state: Fraction(state[1] - state[0], m + n),
        charge_fn,
    )


def dicke_charges(k: int):
    def charges(state: State) -> Dict[str, Fraction]:
        mz, photons = state
        return {"h0": mz + Fraction(photons, k)}

    return charges


def realize_dicke(n_atoms: int, k: int, cutoff: int, h0: RationalLike) -> RealizedTriple:
    """N+ = J+ a^k on the maximal multiplet j = n_atoms/2; N0 = (m_z - n)/(k + 1).

    H0 = eps J_z + w1 a†a with eps = k w1, scaled so that h0 = m_z + n/k.
    """
    if not 1 <= n_atoms <= MAX_DICKE_ATOMS or not 1 <= k <= MAX_DICKE_FLIP_ORDER:
        raise DomainError(
            f"Dicke sectors are limited to {MAX_DICKE_ATOMS} atoms and flip order {MAX_DICKE_FLIP_ORDER}",
            n_atoms=n_atoms,
            k=k,
        )
    spin = Fraction(n_atoms, 2)
    charge_fn = dicke_charges(k)
    sector = build_sector(
        ("spin", "a1"), (n_atoms, int(cutoff)), charge_fn, {"h0": to_fraction(h0)}, spin=spin
    )
    return assemble(
        f"dicke({n_atoms},{k})",
        sector,
        LadderMonomial(shift=(1, -k), spin=spin),
        lambda state: (state[0] - state[1]) / Fraction(k + 1),
        charge_fn,
    )
