"""A four-variable Hamiltonian system with two parameters and its
variational data along rational solutions.

The Hamiltonian is polynomial in the phase variables (x, y) and (z, w),
the time t, and the parameters a0, a1 (a2 enters through the affine
relation a0 + 2 a1 + 2 a2 = 1).  Adding the conjugate F of t makes the
extended system autonomous, with equations of motion

    x' =  dH/dy,   y' = -dH/dx,
    z' =  dH/dw,   w' = -dH/dz,
    t' =  dH/dF,   F' = -dH/dt.

Everything here is exact: polynomials carry Fraction coefficients,
solutions are rational functions of t, and the normal variational
system is produced with algebraic-number entries ready for the
reduction chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algnum import AlgNum, TowerError, TowerSpec
from .diffsys import DiffSystem
from .puiseux import PuiseuxPoly
from .ratfunc import Poly, RatFunc

VARS = ("x", "y", "z", "w", "t", "F", "a0", "a1", "a2")
_INDEX = {name: k for k, name in enumerate(VARS)}
PHASE_VARS = ("x", "y", "z", "w", "t", "F")


@dataclass(frozen=True)
class PolyExpr:
    """Sparse polynomial in the nine model symbols, Fraction coefficients."""

    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @staticmethod
    def _from_dict(d: dict[tuple[int, ...], Fraction]) -> PolyExpr:
        items = tuple(sorted((e, c) for e, c in d.items() if c != 0))
        return PolyExpr(items)

    @staticmethod
    def const(c) -> PolyExpr:
        c = Fraction(c)
        if c == 0:
            return PolyExpr(())
        return PolyExpr((((0,) * len(VARS), c),))

    @staticmethod
    def var(name: str) -> PolyExpr:
        exps = [0] * len(VARS)
        exps[_INDEX[name]] = 1
        return PolyExpr(((tuple(exps), Fraction(1)),))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other) -> PolyExpr:
        other = _as_polyexpr(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return PolyExpr._from_dict(acc)

    __radd__ = __add__

    def __neg__(self) -> PolyExpr:
        return PolyExpr(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other) -> PolyExpr:
        return self + (-_as_polyexpr(other))

    def __rsub__(self, other) -> PolyExpr:
        return _as_polyexpr(other) + (-self)

    def __mul__(self, other) -> PolyExpr:
        other = _as_polyexpr(other)
        acc: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return PolyExpr._from_dict(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> PolyExpr:
        if n < 0:
            raise ValueError("negative power of a polynomial expression")
        result = PolyExpr.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, name: str) -> PolyExpr:
        k = _INDEX[name]
        acc: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms:
            if e[k] == 0:
                continue
            ne = list(e)
            ne[k] -= 1
            acc[tuple(ne)] = acc.get(tuple(ne), Fraction(0)) + c * e[k]
        return PolyExpr._from_dict(acc)

    def substitute(self, assign: Mapping[str, object]) -> PolyExpr:
        """Replace some symbols by constants or other expressions."""
        out = PolyExpr.const(0)
        for e, c in self.terms:
            term = PolyExpr.const(c)
            for k, exp in enumerate(e):
                if exp == 0:
                    continue
                name = VARS[k]
                if name in assign:
                    term = term * _as_polyexpr(assign[name]) ** exp
                else:
                    term = term * PolyExpr.var(name) ** exp
            out = out + term
        return out

    def eval_rat(self, assign: Mapping[str, RatFunc]) -> RatFunc:
        """Evaluate with rational-function values for every present symbol."""
        total = RatFunc.const(0)
        for e, c in self.terms:
            val = RatFunc.const(c)
            for k, exp in enumerate(e):
                if exp == 0:
                    continue
                name = VARS[k]
                if name not in assign:
                    raise ValueError(f"no value supplied for symbol {name!r}")
                val = val * assign[name] ** exp
            total = total + val
        return total

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            syms = []
            for k, exp in enumerate(e):
                if exp == 1:
                    syms.append(VARS[k])
                elif exp > 1:
                    syms.append(f"{VARS[k]}^{exp}")
            body = "*".join(syms)
            mag = abs(c)
            if body:
                head = body if mag == 1 else f"{mag}*{body}"
            else:
                head = str(mag)
            if not parts:
                parts.append(head if c > 0 else f"-{head}")
            else:
                parts.append(f"+ {head}" if c > 0 else f"- {head}")
        return " ".join(parts)


def _as_polyexpr(x) -> PolyExpr:
    if isinstance(x, PolyExpr):
        return x
    return PolyExpr.const(Fraction(x))


def _v(name: str) -> PolyExpr:
    return PolyExpr.var(name)


def hamiltonian() -> PolyExpr:
    """The time-dependent Hamiltonian in the phase variables and parameters."""
    x, y, z, w, t = _v("x"), _v("y"), _v("z"), _v("w"), _v("t")
    a0, a1 = _v("a0"), _v("a1")
    return (
        2 * x * y**2
        + 2 * x**2
        + 2 * t * x
        - 2 * a1 * y
        + z**2 * w
        - Fraction(1, 2) * w**2
        + a0 * z
        + x * w
        + 2 * y * z * w
    )


def extended_hamiltonian() -> PolyExpr:
    """Autonomous form on the extended phase space: H + F."""
    return hamiltonian() + _v("F")


def check_params(params: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    """Validate the affine parameter relation a0 + 2 a1 + 2 a2 = 1."""
    if len(params) != 3:
        raise ValueError("expected three parameters (a0, a1, a2)")
    a0, a1, a2 = (Fraction(p) for p in params)
    if a0 + 2 * a1 + 2 * a2 != 1:
        raise ValueError(
            f"parameters must satisfy a0 + 2*a1 + 2*a2 = 1, got {a0 + 2 * a1 + 2 * a2}"
        )
    return a0, a1, a2


def _reference_field() -> tuple[PolyExpr, ...]:
    # Hand-expanded equations of motion, kept as an independent cross-check
    # on the symplectic derivation below.
    x, y, z, w, t = _v("x"), _v("y"), _v("z"), _v("w"), _v("t")
    a0, a1 = _v("a0"), _v("a1")
    return (
        4 * x * y - 2 * a1 + 2 * z * w,
        -2 * y**2 - 4 * x - 2 * t - w,
        z**2 - w + x + 2 * y * z,
        -2 * z * w - a0 - 2 * y * w,
        PolyExpr.const(1),
        -2 * x,
    )


def build_extended_system(params: Sequence | None = None) -> tuple[PolyExpr, ...]:
    """Equations of motion on (x, y, z, w, t, F) from the extended Hamiltonian.

    With params=None the field stays symbolic in (a0, a1); otherwise the
    parameter symbols are substituted after the relation check.
    """
    h = extended_hamiltonian()
    field = (
        h.diff("y"),
        -h.diff("x"),
        h.diff("w"),
        -h.diff("z"),
        h.diff("F"),
        -h.diff("t"),
    )
    if field != _reference_field():
        raise AssertionError("symplectic pairing produced an unexpected field")
    if params is None:
        return field
    a0, a1, a2 = check_params(params)
    assign = {"a0": a0, "a1": a1, "a2": a2}
    return tuple(f.substitute(assign) for f in field)


def seed_solution() -> tuple[dict[str, RatFunc], tuple[Fraction, Fraction, Fraction]]:
    """The rational seed: x = w = -2t/5, y = z = 0, F = 2t^2/5."""
    t = RatFunc.variable()
    sol = {
        "x": t * Fraction(-2, 5),
        "y": RatFunc.const(0),
        "z": RatFunc.const(0),
        "w": t * Fraction(-2, 5),
        "F": t * t * Fraction(2, 5),
    }
    params = (Fraction(2, 5), Fraction(1, 5), Fraction(1, 10))
    return sol, params


def solution_energy(sol: Mapping[str, RatFunc], params: Sequence) -> RatFunc:
    """-H along the solution; the F component of a zero-energy lift."""
    a0, a1, a2 = check_params(params)
    assign = dict(sol)
    assign["t"] = RatFunc.variable()
    assign["a0"] = RatFunc.const(a0)
    assign["a1"] = RatFunc.const(a1)
    assign["a2"] = RatFunc.const(a2)
    return -hamiltonian().eval_rat(assign)


def verify_solution(sol: Mapping[str, RatFunc], params: Sequence) -> None:
    """Check d(sol)/dt equals the field along sol, exactly; raise on failure."""
    field = build_extended_system(params)
    assign = {name: sol[name] for name in ("x", "y", "z", "w", "F")}
    assign["t"] = RatFunc.variable()
    bad = []
    for idx, name in enumerate(PHASE_VARS):
        if name == "t":
            continue
        lhs = sol[name].derivative()
        rhs = field[idx].eval_rat(assign)
        if lhs != rhs:
            bad.append(name)
    if bad:
        raise ValueError(f"not a solution: equations fail for {', '.join(bad)}")


def variational_matrix(
    sol: Mapping[str, RatFunc], params: Sequence
) -> tuple[tuple[RatFunc, ...], ...]:
    """Jacobian of the extended field along the solution, 6 x 6 exact."""
    field = build_extended_system(params)
    assign = {name: sol[name] for name in ("x", "y", "z", "w", "F")}
    assign["t"] = RatFunc.variable()
    rows = []
    for f in field:
        row = []
        for name in PHASE_VARS:
            row.append(f.diff(name).eval_rat(assign))
        rows.append(tuple(row))
    return tuple(rows)


def ratfunc_to_puiseux(f: RatFunc, tower: TowerSpec) -> PuiseuxPoly:
    """Convert p(t)/t^k into a Laurent polynomial with tower coefficients.

    Only monomial denominators can be represented; anything else means the
    solution has finite poles and the machinery downstream does not apply.
    """
    if f.is_zero():
        return PuiseuxPoly.zero(tower)
    den = f.den
    k = den.degree()
    monomial = Poly.make([0] * k + [1])
    if den != monomial:
        raise TowerError(
            f"denominator {den.render()} is not a power of the variable"
        )
    terms = []
    for j, c in enumerate(f.num.coeffs):
        if c != 0:
            terms.append((j - k, AlgNum.from_rational(tower, c)))
    return PuiseuxPoly.from_terms(tower, 1, terms)


def extract_nve(
    vmatrix: Sequence[Sequence[RatFunc]], tower: TowerSpec
) -> DiffSystem:
    """The 4 x 4 normal variational system from the 6 x 6 variational one.

    The time row of the Jacobian must vanish identically (so the time
    variation stays zero once it starts zero) and nothing may depend on
    the F variation; then the (x, y, z, w) block closes on itself and is
    returned over the requested coefficient tower.
    """
    t_row = _INDEX["t"]
    f_col = _INDEX["F"]
    for j, entry in enumerate(vmatrix[t_row]):
        if not entry.is_zero():
            raise TowerError(f"time variation row has nonzero entry in column {j}")
    for i in range(len(vmatrix)):
        if not vmatrix[i][f_col].is_zero():
            raise TowerError(f"row {i} couples to the F variation")
    rows = []
    for i in range(4):
        rows.append(tuple(ratfunc_to_puiseux(vmatrix[i][j], tower) for j in range(4)))
    return DiffSystem("t", tuple(rows))


def seed_variational_system(tower: TowerSpec) -> DiffSystem:
    """Normal variational system along the seed, ready for reduction."""
    sol, params = seed_solution()
    verify_solution(sol, params)
    return extract_nve(variational_matrix(sol, params), tower)
