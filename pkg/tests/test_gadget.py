"""Tests for the Hadamard gadget solver."""

import cmath
import math

import pytest

from qdich.arith import Cyclotomic
from qdich.compiler import completion_matrix, gadget_solve
from qdich.compiler.gadget import parse_angle
from qdich.errors import FormatError, NoUnitaryW, ZeroMatrixElement


def test_hadamard_completion_gives_cz():
    spec = gadget_solve(completion_matrix("H"))
    assert spec.exact
    one = Cyclotomic.one()
    assert spec.W == (one, one, one, -one)
    assert spec.residues == (0, 0, 0, 4)
    assert spec.lam == Cyclotomic.inv_sqrt2()
    assert spec.check()


def test_quarter_turn_completion_gives_phase_coupling():
    """F = e^{-i pi X/4}: W = diag(1, i, 1, -i), lambda = 1/sqrt(2)."""
    spec = gadget_solve(completion_matrix("Htilde"))
    assert spec.exact
    assert spec.W == (
        Cyclotomic.one(),
        Cyclotomic.root_power(2),
        Cyclotomic.one(),
        Cyclotomic.root_power(6),
    )
    assert spec.residues == (0, 6, 0, 2)
    assert spec.lam == Cyclotomic.inv_sqrt2()
    assert spec.check()


def test_unequal_moduli_have_no_unitary_coupling():
    with pytest.raises(NoUnitaryW):
        gadget_solve(completion_matrix("xrot:pi/6"))


def test_zero_entry_is_rejected():
    with pytest.raises(ZeroMatrixElement):
        gadget_solve(completion_matrix("Tdg"))
    with pytest.raises(ZeroMatrixElement):
        gadget_solve([[1, 0], [0, 1]])


def test_lambda_phase_changes_coupling_by_global_phase():
    base = gadget_solve(completion_matrix("Htilde"))
    for phase in (math.pi / 4, 0.37, -1.2):
        shifted = gadget_solve(completion_matrix("Htilde"), lambda_phase=phase)
        assert shifted.check()
        ratios = [complex(w) / complex(b) for w, b in zip(shifted.W, base.W)]
        for r in ratios:
            assert abs(r - cmath.exp(1j * phase)) < 1e-12


def test_eighth_turn_lambda_stays_exact():
    spec = gadget_solve(completion_matrix("H"), lambda_phase=math.pi / 2)
    assert spec.exact
    assert spec.residues == (6, 6, 6, 2)


def test_irrational_lambda_falls_back_to_floats():
    spec = gadget_solve(completion_matrix("H"), lambda_phase=0.3)
    assert not spec.exact
    assert spec.residues is None
    assert spec.check()


def test_float_completion_with_equal_moduli():
    a, b = 0.4, -1.1
    s = 1 / math.sqrt(2)
    F = [[s * cmath.exp(1j * a), s * cmath.exp(1j * b)], [s * cmath.exp(1j * b), -s]]
    spec = gadget_solve(F)
    assert not spec.exact
    assert spec.check()
    for w in spec.W:
        assert abs(abs(w) - 1) < 1e-12


def test_float_completion_with_unequal_moduli():
    with pytest.raises(NoUnitaryW):
        gadget_solve([[0.6, 0.8], [0.8, -0.6]])


def test_xrot_named_completions():
    assert completion_matrix("xrot:pi/4") == completion_matrix("Htilde")
    spec = gadget_solve(completion_matrix("xrot:3pi/4"))
    assert spec.exact
    assert spec.check()


def test_unknown_completion_name():
    with pytest.raises(FormatError):
        completion_matrix("Y")


@pytest.mark.parametrize(
    "text, value",
    [
        ("pi", math.pi),
        ("pi/6", math.pi / 6),
        ("3pi/4", 3 * math.pi / 4),
        ("-pi/4", -math.pi / 4),
        ("0.5", 0.5),
    ],
)
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value)


def test_parse_angle_rejects_garbage():
    with pytest.raises(FormatError):
        parse_angle("half a turn")
