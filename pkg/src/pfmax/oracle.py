"""Closed-form smallest positive eigenvalues for the unit interval, square,
and cube under every mixed boundary-condition subset, by separation of
variables.  Values are exact: lambda = sqrt(q) * pi with rational q.

Two independent routes are provided: a frequency enumerator over the per-axis
1D spectra, and a hardcoded table of equivalence classes closed under the box
symmetry group (and, for the Maxwell eigenvalue, under complementing the
boundary part).  Tests require both routes to agree on every subset.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

# per-dimension list of (axis, low-face label, high-face label)
AXIS_FACES = {
    1: [("0", "1")],
    2: [("l", "r"), ("b", "t")],
    3: [("k", "f"), ("l", "r"), ("b", "t")],
}

_NMAX = 3  # frequency bound per axis; the minima live at indices <= 1


@dataclass(frozen=True)
class PiValue:
    """An eigenvalue lambda = sqrt(q) * pi with exact rational q."""

    q: Fraction  # (lambda / pi)^2

    @property
    def lam(self) -> float:
        return math.sqrt(float(self.q)) * math.pi

    @property
    def lam_sq(self) -> float:
        return float(self.q) * math.pi ** 2

    @property
    def constant(self) -> float:
        return 1.0 / self.lam

    def symbolic(self) -> str:
        a, b = self.q.numerator, self.q.denominator
        s = a * b  # lambda = sqrt(s)/b * pi
        k, m = 1, s  # split s = k^2 * m with m squarefree
        d = 2
        while d * d <= m:
            while m % (d * d) == 0:
                m //= d * d
                k *= d
            d += 1
        frac = Fraction(k, b)
        num = "pi" if frac.numerator == 1 else f"{frac.numerator}*pi"
        if m != 1:
            num = f"sqrt({m})*" + (num if frac.numerator == 1
                                   else f"{frac.numerator}*pi")
        return num if frac.denominator == 1 else f"{num}/{frac.denominator}"

    def __float__(self) -> float:
        return self.lam


@dataclass(frozen=True)
class AxisBc:
    """Dirichlet/Neumann end conditions of one separated coordinate factor."""

    left: str  # 'D' | 'N'
    right: str

    def spectrum_sq(self) -> list[Fraction]:
        """Squared frequencies (mu/pi)^2 of -u'' = mu^2 u on (0,1)."""
        if self.left == "D" and self.right == "D":
            ns = range(1, _NMAX + 1)
            return [Fraction(n * n) for n in ns]
        if self.left == "N" and self.right == "N":
            return [Fraction(n * n) for n in range(0, _NMAX + 1)]
        return [Fraction((2 * n - 1) ** 2, 4) for n in range(1, _NMAX + 1)]


def _normalize(gamma, dim) -> frozenset[str]:
    gamma = frozenset(gamma or ())
    valid = {f for pair in AXIS_FACES[dim] for f in pair}
    unknown = gamma - valid
    if unknown:
        raise ValueError(f"unknown labels for dim {dim}: {sorted(unknown)}")
    return gamma


def _axis_bcs(gamma, dim, dirichlet_if_member=True) -> list[AxisBc]:
    member, other = ("D", "N") if dirichlet_if_member else ("N", "D")
    return [AxisBc(member if low in gamma else other,
                   member if high in gamma else other)
            for low, high in AXIS_FACES[dim]]


def exact_lambda0(gamma, dim: int) -> PiValue:
    """Smallest positive Laplace eigenvalue sqrt: min over nonzero frequency
    tuples of sqrt(sum mu_i^2)."""
    gamma = _normalize(gamma, dim)
    spectra = [bc.spectrum_sq() for bc in _axis_bcs(gamma, dim)]
    best = None
    for combo in itertools.product(*spectra):
        q = sum(combo, Fraction(0))
        if q == 0:
            continue
        if best is None or q < best:
            best = q
    return PiValue(best)


def exact_lambda1_3d(gamma) -> PiValue:
    """Smallest positive Maxwell (curl curl) eigenvalue sqrt on the unit cube,
    via the vector-potential ansatz E = curl(u e_a): the longitudinal axis
    keeps the Laplace end conditions, the transverse axes get the swapped
    ones, and tuples with both transverse frequencies zero are excluded
    (they make E vanish).  Minimum over the three axes and over the boundary
    part and its complement (the Maxwell eigenvalue is complement-invariant).
    """
    gamma = _normalize(gamma, 3)
    all_faces = frozenset(f for pair in AXIS_FACES[3] for f in pair)
    best = None
    for part in (gamma, all_faces - gamma):
        for a in range(3):
            spectra = []
            for axis, (low, high) in enumerate(AXIS_FACES[3]):
                dirichlet_if_member = axis == a
                member, other = ("D", "N") if dirichlet_if_member else ("N", "D")
                spectra.append(AxisBc(member if low in part else other,
                                      member if high in part else other)
                               .spectrum_sq())
            transverse = [i for i in range(3) if i != a]
            for combo in itertools.product(*spectra):
                if combo[transverse[0]] == 0 and combo[transverse[1]] == 0:
                    continue
                q = sum(combo, Fraction(0))
                if q == 0:
                    continue
                if best is None or q < best:
                    best = q
    return PiValue(best)


# hardcoded equivalence-class representatives, q = (lambda/pi)^2
_CLASSES = {
    "lambda0_1d": [
        ((), Fraction(1)),
        (("0",), Fraction(1, 4)),
        (("0", "1"), Fraction(1)),
    ],
    "lambda0_2d": [
        ((), Fraction(1)),
        (("b",), Fraction(1, 4)),
        (("b", "l"), Fraction(1, 2)),
        (("b", "t"), Fraction(1)),
        (("b", "l", "r"), Fraction(5, 4)),
        (("b", "t", "l", "r"), Fraction(2)),
    ],
    "lambda0_3d": [
        ((), Fraction(1)),
        (("b",), Fraction(1, 4)),
        (("b", "t"), Fraction(1)),
        (("b", "l"), Fraction(1, 2)),
        (("b", "t", "l"), Fraction(5, 4)),
        (("b", "l", "k"), Fraction(3, 4)),
        (("b", "t", "l", "r"), Fraction(2)),
        (("b", "t", "l", "k"), Fraction(3, 2)),
        (("b", "t", "l", "r", "k"), Fraction(9, 4)),
        (("b", "t", "l", "r", "f", "k"), Fraction(3)),
    ],
    "lambda1_3d": [
        ((), Fraction(2)),
        (("b",), Fraction(5, 4)),
        (("b", "t"), Fraction(1)),
        (("b", "l"), Fraction(1, 2)),
        (("b", "t", "l"), Fraction(1, 4)),
        (("b", "l", "k"), Fraction(3, 4)),
    ],
}


@lru_cache(maxsize=None)
def _symmetry_group(dim: int):
    """Label permutations induced by axis permutations and reflections."""
    pairs = AXIS_FACES[dim]
    group = []
    for perm in itertools.permutations(range(dim)):
        for flips in itertools.product((False, True), repeat=dim):
            mapping = {}
            for axis, (low, high) in enumerate(pairs):
                tl, th = pairs[perm[axis]]
                if flips[axis]:
                    tl, th = th, tl
                mapping[low], mapping[high] = tl, th
            group.append(mapping)
    return group


@lru_cache(maxsize=None)
def _full_table(kind: str):
    dim = 1 if kind == "lambda0_1d" else (2 if kind == "lambda0_2d" else 3)
    all_faces = frozenset(f for pair in AXIS_FACES[dim] for f in pair)
    complement_too = kind == "lambda1_3d"
    table: dict[frozenset, Fraction] = {}
    for rep, q in _CLASSES[kind]:
        seeds = [frozenset(rep)]
        if complement_too:
            seeds.append(all_faces - frozenset(rep))
        for seed in seeds:
            for g in _symmetry_group(dim):
                image = frozenset(g[x] for x in seed)
                if table.setdefault(image, q) != q:
                    raise RuntimeError(
                        f"inconsistent symmetry closure for {kind}: {image}")
    if len(table) != 2 ** (2 * dim):
        raise RuntimeError(f"incomplete table for {kind}: {len(table)} subsets")
    return table


def symmetry_table_lambda(kind: str, gamma) -> PiValue:
    """Tabulated eigenvalue for kind in {lambda0_1d, lambda0_2d, lambda0_3d,
    lambda1_3d}, resolved through the symmetry closure."""
    if kind not in _CLASSES:
        raise ValueError(f"unknown table kind {kind!r}")
    dim = 1 if kind == "lambda0_1d" else (2 if kind == "lambda0_2d" else 3)
    gamma = _normalize(gamma, dim)
    return PiValue(_full_table(kind)[gamma])
