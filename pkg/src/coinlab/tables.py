"""Exact truth-table representation of functions on the Boolean cube.

A function f: {-1,+1}^n -> [-1,1] is stored densely as its 2^n values.

Index convention: bit i of a table index (LSB = variable 1) equals 1 when
x_{i+1} = -1 and 0 when x_{i+1} = +1, so index 0 is the all-plus-ones input.
Boolean tables hold exact +-1 integers; bounded tables hold float64 values.
All tables are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .bits import MAX_ARITY, counter_uniform, index_popcounts

BOOLEAN = "boolean"
BOUNDED = "bounded"


@dataclass(frozen=True, eq=False)
class TruthTable:
    arity: int
    values: np.ndarray
    kind: str = BOOLEAN

    def __post_init__(self) -> None:
        if not 0 <= self.arity <= MAX_ARITY:
            raise ValueError(f"arity must be in [0, {MAX_ARITY}], got {self.arity}")
        vals = np.asarray(self.values)
        if vals.shape != (1 << self.arity,):
            raise ValueError(
                f"expected {1 << self.arity} values for arity {self.arity}, got shape {vals.shape}"
            )
        if self.kind == BOOLEAN:
            if not np.all((vals == 1) | (vals == -1)):
                raise ValueError("boolean table values must be exactly +-1")
            vals = vals.astype(np.int8)
        elif self.kind == BOUNDED:
            vals = vals.astype(np.float64)
            if not np.all(np.abs(vals) <= 1.0):
                raise ValueError("bounded table values must lie in [-1, 1]")
        else:
            raise ValueError(f"kind must be '{BOOLEAN}' or '{BOUNDED}', got {self.kind!r}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_values(cls, values: Sequence[float] | np.ndarray, arity: int | None = None) -> "TruthTable":
        """Build a table, inferring arity and kind (boolean iff all values are +-1)."""
        vals = np.asarray(values)
        if arity is None:
            n_points = vals.shape[0]
            arity = n_points.bit_length() - 1
        kind = BOOLEAN if np.all((vals == 1) | (vals == -1)) else BOUNDED
        return cls(arity, vals, kind)

    @property
    def n_points(self) -> int:
        return 1 << self.arity

    @property
    def values_float(self) -> np.ndarray:
        return self.values.astype(np.float64)

    def canonical_bytes(self) -> bytes:
        return np.ascontiguousarray(self.values, dtype=np.float64).tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.arity == other.arity and bool(
            np.array_equal(self.values_float, other.values_float)
        )

    def __hash__(self) -> int:
        return hash((self.arity, self.canonical_bytes()))

    def evaluate(self, x: Sequence[int]) -> float:
        """Evaluate at a +-1 input vector."""
        return float(self.values[table_index(x, self.arity)])

    def __repr__(self) -> str:
        return f"TruthTable(arity={self.arity}, kind={self.kind!r})"


def table_index(x: Sequence[int], arity: int) -> int:
    if len(x) != arity:
        raise ValueError(f"expected {arity} coordinates, got {len(x)}")
    idx = 0
    for i, xi in enumerate(x):
        if xi == -1:
            idx |= 1 << i
        elif xi != 1:
            raise ValueError(f"coordinate {i + 1} must be +-1, got {xi}")
    return idx


def decode_index(idx: int, arity: int) -> tuple[int, ...]:
    """Inverse of table_index: the +-1 input vector encoded by an index."""
    return tuple(-1 if (idx >> i) & 1 else 1 for i in range(arity))


@dataclass(frozen=True)
class Restriction:
    """Partial assignment: 1-based variable index -> fixed value in {-1,+1}."""

    fixed: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        fixed = dict(self.fixed)
        for var, val in fixed.items():
            if var < 1:
                raise ValueError(f"variable indices are 1-based, got {var}")
            if val not in (-1, 1):
                raise ValueError(f"fixed value for variable {var} must be +-1, got {val}")
        object.__setattr__(self, "fixed", fixed)

    def free_variables(self, arity: int) -> list[int]:
        return [i for i in range(1, arity + 1) if i not in self.fixed]

    def __str__(self) -> str:
        if not self.fixed:
            return "{}"
        parts = [f"{v}:{'+1' if s == 1 else '-1'}" for v, s in sorted(self.fixed.items())]
        return "{" + ",".join(parts) + "}"


@dataclass(frozen=True)
class SignPattern:
    """Per-variable input signs and one output sign, all in {-1,+1}."""

    input_signs: tuple[int, ...]
    output_sign: int = 1

    def __post_init__(self) -> None:
        signs = tuple(int(s) for s in self.input_signs)
        if any(s not in (-1, 1) for s in signs):
            raise ValueError("input signs must be +-1")
        if self.output_sign not in (-1, 1):
            raise ValueError("output sign must be +-1")
        object.__setattr__(self, "input_signs", signs)

    @property
    def sigma_mask(self) -> int:
        """Index bitmask with bit i set iff input sign i+1 is -1."""
        mask = 0
        for i, s in enumerate(self.input_signs):
            if s == -1:
                mask |= 1 << i
        return mask

    @classmethod
    def identity(cls, arity: int) -> "SignPattern":
        return cls((1,) * arity, 1)

    def __str__(self) -> str:
        sigma = "".join("+" if s == 1 else "-" for s in self.input_signs)
        tau = "+" if self.output_sign == 1 else "-"
        return f"s={sigma},t={tau}"


def build_threshold(n: int, k: int) -> TruthTable:
    """f(x) = +1 iff at least k coordinates equal +1."""
    if not 0 <= k <= n + 1:
        raise ValueError(f"threshold k must be in [0, {n + 1}], got {k}")
    plus_counts = n - index_popcounts(n)
    values = np.where(plus_counts >= k, 1, -1)
    return TruthTable(n, values, BOOLEAN)


def build_majority(n: int) -> TruthTable:
    if n % 2 == 0:
        raise ValueError(f"majority needs odd arity, got {n}")
    return build_threshold(n, (n + 1) // 2)


def build_parity(n: int) -> TruthTable:
    values = 1 - 2 * (index_popcounts(n) & 1)
    return TruthTable(n, values, BOOLEAN)


def build_dictator(n: int, i: int) -> TruthTable:
    """f(x) = x_i (1-based)."""
    if not 1 <= i <= n:
        raise ValueError(f"dictator index must be in [1, {n}], got {i}")
    bit = (np.arange(1 << n) >> (i - 1)) & 1
    return TruthTable(n, 1 - 2 * bit, BOOLEAN)


def build_tribes(width: int, n: int) -> TruthTable:
    """OR of ANDs over consecutive disjoint blocks of `width` variables.

    +1 iff some block is all +1; requires width to divide n.
    """
    if width < 1:
        raise ValueError(f"tribe width must be >= 1, got {width}")
    if n % width != 0:
        raise ValueError(f"tribe width {width} must divide arity {n}")
    idx = np.arange(1 << n)
    block_mask = (1 << width) - 1
    any_all_plus = np.zeros(1 << n, dtype=bool)
    for j in range(n // width):
        any_all_plus |= ((idx >> (j * width)) & block_mask) == 0
    return TruthTable(n, np.where(any_all_plus, 1, -1), BOOLEAN)


def build_constant(n: int, sign: int) -> TruthTable:
    if sign not in (-1, 1):
        raise ValueError(f"constant sign must be +-1, got {sign}")
    return TruthTable(n, np.full(1 << n, sign), BOOLEAN)


def build_random_boolean(n: int, seed: int) -> TruthTable:
    u = counter_uniform(seed, np.arange(1 << n))
    return TruthTable(n, np.where(u < 0.5, -1, 1), BOOLEAN)


def build_random_bounded(n: int, seed: int) -> TruthTable:
    u = counter_uniform(seed, np.arange(1 << n))
    return TruthTable(n, 2.0 * u - 1.0, BOUNDED)


def restrict(f: TruthTable, rho: Restriction) -> TruthTable:
    """Fix the variables named by rho; the survivors are renumbered 1..m in order."""
    for var in rho.fixed:
        if var > f.arity:
            raise ValueError(f"restriction fixes variable {var} but arity is {f.arity}")
    free = rho.free_variables(f.arity)
    m = len(free)
    fixed_bits = 0
    for var, val in rho.fixed.items():
        if val == -1:
            fixed_bits |= 1 << (var - 1)
    sub = np.arange(1 << m)
    orig = np.full(1 << m, fixed_bits, dtype=np.int64)
    for j, var in enumerate(free):
        orig |= ((sub >> j) & 1) << (var - 1)
    return TruthTable(m, f.values[orig], f.kind)


def apply_signs(f: TruthTable, s: SignPattern) -> TruthTable:
    """g(z) = tau * f(z_1 sigma_1, ..., z_n sigma_n)."""
    if len(s.input_signs) != f.arity:
        raise ValueError(f"sign pattern has {len(s.input_signs)} entries, arity is {f.arity}")
    idx = np.arange(f.n_points) ^ s.sigma_mask
    vals = f.values[idx]
    if s.output_sign == -1:
        vals = -vals
    return TruthTable(f.arity, vals, f.kind)


def scale(f: TruthTable, c: float) -> TruthTable:
    """Pointwise c*f as a bounded table; rejects scalings that leave [-1,1]."""
    vals = f.values_float * c
    if vals.size and np.abs(vals).max() > 1.0:
        raise ValueError(f"scaling by {c} leaves [-1, 1] (max |value| = {np.abs(vals).max()})")
    return TruthTable(f.arity, vals, BOUNDED)


def save_table(f: TruthTable, path: str) -> None:
    """Write as: line 1 `n=<arity>`, then the 2^n values in index order."""
    with open(path, "w") as fh:
        fh.write(f"n={f.arity}\n")
        if f.kind == BOOLEAN:
            tokens = ["+1" if v == 1 else "-1" for v in f.values]
        else:
            tokens = [repr(float(v)) for v in f.values]
        for start in range(0, len(tokens), 8):
            fh.write(" ".join(tokens[start : start + 8]) + "\n")


def load_table(path: str) -> TruthTable:
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("n="):
            raise ValueError(f"{path}: first line must be 'n=<arity>', got {header!r}")
        try:
            n = int(header[2:])
        except ValueError:
            raise ValueError(f"{path}: bad arity in header {header!r}") from None
        tokens = fh.read().split()
    expected = 1 << n
    if len(tokens) != expected:
        raise ValueError(f"{path}: expected {expected} values for n={n}, found {len(tokens)}")
    values = np.empty(expected, dtype=np.float64)
    for pos, tok in enumerate(tokens):
        try:
            values[pos] = float(tok)
        except ValueError:
            raise ValueError(f"{path}: value {pos + 1} of {expected}: cannot parse {tok!r}") from None
    return TruthTable.from_values(values, arity=n)
