"""Exact arithmetic in Q(w), w = e^{i pi/4}."""

from .cyclotomic import Cyclotomic, add, conj, mul, root_power, to_complex

__all__ = ["Cyclotomic", "add", "conj", "mul", "root_power", "to_complex"]
