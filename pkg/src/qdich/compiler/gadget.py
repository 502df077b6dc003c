"""Hadamard gadget: diagonal coupling W and completion gate F.

Coupling a fresh |+> auxiliary a to wire qubit j with W = diag(w_ab), applying
F on j and post-selecting j on 0 acts as V = lambda*H from j to a, provided
w_ab * r_b = lambda * (-1)^(ab) with r_b = <0|F|b>. Such a unitary W exists
iff |r0| = |r1| != 0, and it is unique up to a global phase.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from qdich.arith import Cyclotomic
from qdich.config import settings
from qdich.errors import FormatError, NoUnitaryW, ZeroMatrixElement
from qdich.ir.circuit import eighth_root_multiple

logger = logging.getLogger(__name__)

Entry = Union[Cyclotomic, complex]
Matrix = tuple[tuple[Entry, Entry], tuple[Entry, Entry]]


@dataclass(frozen=True)
class GadgetSpec:
    """Solved gadget. ``W`` is indexed 2a + b (a auxiliary bit, b wire bit).

    ``residues`` gives W as PhaseDiag residues (w = e^{-i pi d/4}) when every
    entry is an eighth root of unity, else None.
    """

    F: Matrix
    r0: Entry
    r1: Entry
    lam: Entry
    W: tuple[Entry, Entry, Entry, Entry]
    exact: bool
    residues: tuple[int, int, int, int] | None = None

    def check(self, tol: float = 1e-12) -> bool:
        """True when W is unitary and w_ab * r_b = lambda * (-1)^(ab) for all a, b."""
        r = (self.r0, self.r1)
        for a in (0, 1):
            for b in (0, 1):
                w = self.W[2 * a + b]
                target = self.lam * (-1 if a and b else 1)
                if self.exact:
                    if not (w * w.conj() == 1 and w * r[b] == target):
                        return False
                elif abs(abs(w) - 1) > tol or abs(w * r[b] - target) > tol:
                    return False
        return True


def _exact_h() -> Matrix:
    s = Cyclotomic.inv_sqrt2()
    return ((s, s), (s, -s))


def _exact_xrot(m: int) -> Matrix:
    # e^{-i m pi/4 X}: cos = (w^m + w^-m)/2, -i sin = (w^-m - w^m)/2
    w = Cyclotomic.root_power
    c = (w(m) + w(-m)) * Fraction(1, 2)
    t = (w(-m) - w(m)) * Fraction(1, 2)
    return ((c, t), (t, c))


def _float_xrot(angle: float) -> Matrix:
    c, s = math.cos(angle), math.sin(angle)
    return ((complex(c), complex(0, -s)), (complex(0, -s), complex(c)))


def completion_matrix(name: str) -> Matrix:
    """Named completion gates: ``H``, ``Htilde`` (e^{-i pi X/4}), ``Tdg``, ``xrot:<angle>``.

    Angles may be written as plain radians or as ``pi/6``-style fractions of pi.
    """
    key = name.strip()
    if key == "H":
        return _exact_h()
    if key == "Htilde":
        return _exact_xrot(1)
    if key == "Tdg":
        zero = Cyclotomic.zero()
        return ((Cyclotomic.one(), zero), (zero, Cyclotomic.root_power(-1)))
    if key.startswith("xrot:"):
        angle = parse_angle(key[len("xrot:") :])
        m = eighth_root_multiple(angle)
        return _exact_xrot(m) if m is not None else _float_xrot(angle)
    raise FormatError(f"unknown completion gate {name!r}")


def parse_angle(text: str) -> float:
    """Parse ``0.52``, ``pi``, ``pi/6``, ``3pi/4`` or ``-pi/4``."""
    raw = text.strip().replace(" ", "").replace("*", "")
    try:
        if "pi" not in raw:
            return float(raw)
        numerator, _, denominator = raw.partition("/")
        coefficient = numerator.replace("pi", "")
        if coefficient in ("", "+"):
            factor = 1.0
        elif coefficient == "-":
            factor = -1.0
        else:
            factor = float(coefficient)
        return factor * math.pi / (float(denominator) if denominator else 1.0)
    except ValueError as e:
        raise FormatError(f"cannot parse angle {text!r}") from e


def as_matrix(rows: Sequence[Sequence[Entry]]) -> Matrix:
    if len(rows) != 2 or any(len(row) != 2 for row in rows):
        raise FormatError("completion gate must be a 2x2 matrix")
    exact = all(isinstance(x, Cyclotomic) for row in rows for x in row)
    cast = (lambda x: x) if exact else complex
    return ((cast(rows[0][0]), cast(rows[0][1])), (cast(rows[1][0]), cast(rows[1][1])))


def _unit_exponent(r: Cyclotomic) -> int | None:
    """k with r * w^-k real and positive, if r has an eighth-root phase."""
    for k in range(8):
        x = r * Cyclotomic.root_power(-k)
        if x.is_real and float(x) > 0:
            return k
    return None


def _solve_exact(F: Matrix, lambda_phase: float) -> GadgetSpec | None:
    r0, r1 = F[0]
    if r0 * r0.conj() != r1 * r1.conj():
        raise NoUnitaryW(f"|r0| != |r1| for F first row ({r0}, {r1})")
    m = eighth_root_multiple(lambda_phase)
    k0, k1 = _unit_exponent(r0), _unit_exponent(r1)
    if m is None or k0 is None or k1 is None:
        return None
    rho = r0 * Cyclotomic.root_power(-k0)
    lam = rho * Cyclotomic.root_power(m)
    exponents = [m - (k0, k1)[b] + 4 * (a & b) for a in (0, 1) for b in (0, 1)]
    W = tuple(Cyclotomic.root_power(e) for e in exponents)
    residues = tuple((-e) % 8 for e in exponents)
    return GadgetSpec(F, r0, r1, lam, W, exact=True, residues=residues)


def gadget_solve(F: Matrix | Sequence[Sequence[Entry]], lambda_phase: float = 0.0) -> GadgetSpec:
    """Solve for the diagonal coupling W completing F, with lambda = |r0| e^{i lambda_phase}.

    Exact completion gates whose first-row phases and ``lambda_phase`` are
    multiples of pi/4 are solved in the field; anything else in floating point.

    Raises:
        ZeroMatrixElement: r0 * r1 = 0
        NoUnitaryW: |r0| != |r1|
    """
    F = as_matrix(F)
    r0, r1 = F[0]
    exact = isinstance(r0, Cyclotomic)
    if (exact and not (r0 and r1)) or (not exact and (r0 == 0 or r1 == 0)):
        raise ZeroMatrixElement(f"first row of F has a zero entry ({r0}, {r1})")

    if exact:
        spec = _solve_exact(F, lambda_phase)
        if spec is not None:
            logger.debug("gadget solved exactly, W residues %s", spec.residues)
            return spec
        F = tuple(tuple(complex(x) for x in row) for row in F)
        r0, r1 = F[0]

    if abs(abs(r0) - abs(r1)) > settings.float_zero:
        raise NoUnitaryW(f"|r0| = {abs(r0):.17g} differs from |r1| = {abs(r1):.17g}")
    lam = abs(r0) * cmath.exp(1j * lambda_phase)
    W = tuple(lam * (-1 if a and b else 1) / (r0, r1)[b] for a in (0, 1) for b in (0, 1))
    residues = None
    angles = [eighth_root_multiple(-cmath.phase(w)) for w in W]
    if all(m is not None for m in angles):
        residues = tuple(m % 8 for m in angles)
    return GadgetSpec(F, r0, r1, lam, W, exact=False, residues=residues)
