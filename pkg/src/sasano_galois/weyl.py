"""Birational symmetries of the Hamiltonian system and their orbit.

Three involutions act on solutions and parameters at once:

* s0 shifts z by a0/w and flips the sign of a0;
* s1 shifts y and w using the divisor x + z^2 and flips a1;
* s2 shifts x, y, z using the divisor x + y^2 + w + t and flips a2.

Together they realize an affine Weyl group: each generator squares to
the identity, s0 and s2 commute, and both (s0 s1) and (s1 s2) have
order four.  The relations are verified two independent ways, on the
linear parameter action symbolically and on many random exact rational
points of the full birational action.

Orbit enumeration starts from the rational seed solution, applies every
generator breadth-first, re-verifies each image as an exact solution,
and checks the arithmetic condition on the parameters (an integer pair
(a, b) mod 5 falling in one of four admissible rows) at every node.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .ratfunc import RatFunc
from .sasano import check_params, solution_energy, verify_solution

GENERATORS = ("s0", "s1", "s2")


class WeylError(ValueError):
    """Raised for invalid parameters or an undefined transformation."""


# -- parameters -----------------------------------------------------------------


@dataclass(frozen=True)
class ParamTriple:
    """(a0, a1, a2) with a0 + 2 a1 + 2 a2 = 1, checked on construction."""

    a0: Fraction
    a1: Fraction
    a2: Fraction

    @staticmethod
    def make(values: Sequence) -> ParamTriple:
        try:
            a0, a1, a2 = check_params(values)
        except ValueError as exc:
            raise WeylError(str(exc)) from exc
        return ParamTriple(a0, a1, a2)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a0, self.a1, self.a2)

    def render(self) -> str:
        return f"({self.a0}, {self.a1}, {self.a2})"


# The parameter action is linear; rows of each matrix give the new
# (a0, a1, a2) in terms of the old ones.
PARAM_MATRICES: dict[str, tuple[tuple[int, int, int], ...]] = {
    "s0": ((-1, 0, 0), (1, 1, 0), (0, 0, 1)),
    "s1": ((1, 2, 0), (0, -1, 0), (0, 1, 1)),
    "s2": ((1, 0, 0), (0, 1, 2), (0, 0, -1)),
}


def act_on_params(name: str, params: ParamTriple) -> ParamTriple:
    m = PARAM_MATRICES.get(name)
    if m is None:
        raise WeylError(f"unknown generator {name!r}")
    vec = params.as_tuple()
    new = tuple(sum(Fraction(mij) * vj for mij, vj in zip(row, vec)) for row in m)
    return ParamTriple.make(new)


def _mat_mul3(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )


def word_matrix(word: Iterable[str]):
    """Matrix of the parameter action of a word (applied left to right)."""
    acc = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for name in word:
        m = PARAM_MATRICES.get(name)
        if m is None:
            raise WeylError(f"unknown generator {name!r}")
        acc = _mat_mul3(m, acc)
    return acc


# -- solution states --------------------------------------------------------------


@dataclass(frozen=True)
class SolutionState:
    """An exact rational solution together with its parameters.

    Construction through :meth:`make` recomputes the conjugate variable F
    as the zero-energy lift and verifies all equations of motion, so a
    state that exists is always a checked solution.
    """

    x: RatFunc
    y: RatFunc
    z: RatFunc
    w: RatFunc
    f: RatFunc
    params: ParamTriple

    @staticmethod
    def make(x: RatFunc, y: RatFunc, z: RatFunc, w: RatFunc, params: ParamTriple) -> SolutionState:
        sol = {"x": x, "y": y, "z": z, "w": w}
        f = solution_energy(sol, params.as_tuple())
        sol["F"] = f
        try:
            verify_solution(sol, params.as_tuple())
        except ValueError as exc:
            raise WeylError(str(exc)) from exc
        return SolutionState(x, y, z, w, f, params)

    def as_solution(self) -> dict[str, RatFunc]:
        return {"x": self.x, "y": self.y, "z": self.z, "w": self.w, "F": self.f}

    def components(self) -> dict[str, RatFunc]:
        return {"x": self.x, "y": self.y, "z": self.z, "w": self.w}


def seed_state() -> SolutionState:
    t = RatFunc.variable()
    params = ParamTriple.make((Fraction(2, 5), Fraction(1, 5), Fraction(1, 10)))
    scaled = t * Fraction(-2, 5)
    return SolutionState.make(scaled, RatFunc.const(0), RatFunc.const(0), scaled, params)


# -- the generators on solutions ----------------------------------------------------


def _divisor(name: str, x, y, z, w, t):
    if name == "s0":
        return w
    if name == "s1":
        return x + z * z
    if name == "s2":
        return x + y * y + w + t
    raise WeylError(f"unknown generator {name!r}")


def apply_generator(name: str, state: SolutionState) -> SolutionState:
    """One Backlund step on a checked solution; the image is re-verified.

    When the divisor vanishes identically the step is only defined for a
    vanishing parameter, where it is the identity; a vanishing divisor
    with a nonzero parameter raises.
    """
    t = RatFunc.variable()
    x, y, z, w = state.x, state.y, state.z, state.w
    alpha = (state.params.a0, state.params.a1, state.params.a2)[GENERATORS.index(name)]
    div = _divisor(name, x, y, z, w, t)
    if div.is_zero():
        if alpha == 0:
            return state
        raise WeylError(
            f"divisor of {name} vanishes along the solution but its parameter is {alpha} != 0"
        )
    new_params = act_on_params(name, state.params)
    if name == "s0":
        return SolutionState.make(x, y, z + RatFunc.const(alpha) / div, w, new_params)
    if name == "s1":
        shift = RatFunc.const(alpha) / div
        return SolutionState.make(x, y - shift, z, w - shift * z * 2, new_params)
    shift = RatFunc.const(alpha) / div
    new_x = x + shift * y * 2 - shift * shift
    return SolutionState.make(new_x, y - shift, z + shift, w, new_params)


def apply_word(word: Iterable[str], state: SolutionState) -> SolutionState:
    for name in word:
        state = apply_generator(name, state)
    return state


# -- group relations ------------------------------------------------------------------


RELATIONS: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("s0^2", ("s0", "s0")),
    ("s1^2", ("s1", "s1")),
    ("s2^2", ("s2", "s2")),
    ("(s0 s2)^2", ("s0", "s2") * 2),
    ("(s2 s0)^2", ("s2", "s0") * 2),
    ("(s0 s1)^4", ("s0", "s1") * 4),
    ("(s1 s0)^4", ("s1", "s0") * 4),
    ("(s1 s2)^4", ("s1", "s2") * 4),
    ("(s2 s1)^4", ("s2", "s1") * 4),
)


def _point_step(name: str, point, params: ParamTriple, t_val: Fraction):
    """The generator on a plain rational point (no solution constraint)."""
    x, y, z, w = point
    alpha = (params.a0, params.a1, params.a2)[GENERATORS.index(name)]
    div = _divisor(name, x, y, z, w, t_val)
    if div == 0:
        raise ZeroDivisionError(name)
    new_params = act_on_params(name, params)
    if name == "s0":
        return (x, y, z + alpha / div, w), new_params
    if name == "s1":
        shift = alpha / div
        return (x, y - shift, z, w - 2 * shift * z), new_params
    shift = alpha / div
    return (x + 2 * shift * y - shift * shift, y - shift, z + shift, w), new_params


def _random_params(rng: random.Random) -> ParamTriple:
    a0 = Fraction(rng.randint(-8, 8), rng.randint(1, 8))
    a1 = Fraction(rng.randint(-8, 8), rng.randint(1, 8))
    a2 = (1 - a0 - 2 * a1) / 2
    return ParamTriple.make((a0, a1, a2))


def _random_point(rng: random.Random):
    def q():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    return (q(), q(), q(), q())


@dataclass(frozen=True)
class RelationCheck:
    name: str
    word: tuple[str, ...]
    matrix_identity: bool
    points_checked: int


def verify_group_relations(samples: int = 50, seed: int = 1105) -> tuple[RelationCheck, ...]:
    """Every defining relation, on the parameter matrices and on points.

    The matrix of each relation word must be the identity, and the full
    birational action must fix at least ``samples`` random exact rational
    (point, parameter) pairs per relation; divisor hits are resampled.
    Raises :class:`WeylError` on any failure.
    """
    rng = random.Random(seed)
    identity = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    report = []
    for label, word in RELATIONS:
        if word_matrix(word) != identity:
            raise WeylError(f"parameter matrices fail the relation {label}")
        done = 0
        attempts = 0
        while done < samples:
            attempts += 1
            if attempts > samples * 50:
                raise WeylError(f"could not sample enough points for {label}")
            point = _random_point(rng)
            params = _random_params(rng)
            t_val = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            try:
                cur_p, cur_a = point, params
                for name in word:
                    cur_p, cur_a = _point_step(name, cur_p, cur_a, t_val)
            except ZeroDivisionError:
                continue
            if cur_p != point or cur_a != params:
                raise WeylError(
                    f"relation {label} fails at point {point}, params {params.render()}"
                )
            done += 1
        report.append(RelationCheck(label, word, True, done))
    return tuple(report)


# -- the arithmetic condition on parameters --------------------------------------------


@dataclass(frozen=True)
class MatsudaResult:
    """Reduced pair (a, b) = (5 a2 - 1/2, 5 a1 - 1) mod 5 and its table row."""

    integral: bool
    a_mod: int | None
    b_mod: int | None
    row: int | None


_MATSUDA_ROWS: dict[int, tuple[int, tuple[int, ...]]] = {
    1: (0, (0, 2)),
    2: (1, (2, 3)),
    3: (3, (0, 1)),
    4: (4, (1, 3)),
}


def matsuda_check(params: ParamTriple) -> MatsudaResult:
    a = 5 * params.a2 - Fraction(1, 2)
    b = 5 * params.a1 - 1
    if a.denominator != 1 or b.denominator != 1:
        return MatsudaResult(False, None, None, None)
    a_mod = int(a) % 5
    b_mod = int(b) % 5
    for row, (a_req, b_set) in _MATSUDA_ROWS.items():
        if a_mod == a_req and b_mod in b_set:
            return MatsudaResult(True, a_mod, b_mod, row)
    return MatsudaResult(True, a_mod, b_mod, None)


# -- orbit enumeration ------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitNode:
    word: tuple[str, ...]
    depth: int
    state: SolutionState
    matsuda: MatsudaResult


@dataclass(frozen=True)
class ParamCollision:
    """Two distinct words reaching the same parameter triple."""

    params: ParamTriple
    kept_word: tuple[str, ...]
    other_word: tuple[str, ...]
    depth: int
    states_equal: bool


@dataclass(frozen=True)
class OrbitResult:
    depth: int
    nodes: tuple[OrbitNode, ...]
    collisions: tuple[ParamCollision, ...]
    skipped: tuple[tuple[tuple[str, ...], str], ...]  # (word, reason)

    def node_count(self) -> int:
        return len(self.nodes)


def enumerate_orbit(
    start: SolutionState | None = None,
    depth: int = 6,
    audit_depth: int = 4,
) -> OrbitResult:
    """Breadth-first orbit of the seed under the three generators.

    Nodes are deduplicated by parameter triple (the first word reaching a
    triple is kept); up to ``audit_depth`` every duplicate hit is audited
    for state equality and reported instead of silently dropped.  Every
    state in the orbit was verified as an exact solution when built.
    """
    if depth < 0:
        raise WeylError("depth must be nonnegative")
    root = start if start is not None else seed_state()
    seen: dict[tuple[Fraction, Fraction, Fraction], OrbitNode] = {}
    nodes: list[OrbitNode] = []
    collisions: list[ParamCollision] = []
    skipped: list[tuple[tuple[str, ...], str]] = []
    first = OrbitNode((), 0, root, matsuda_check(root.params))
    seen[root.params.as_tuple()] = first
    nodes.append(first)
    queue: deque[OrbitNode] = deque([first])
    while queue:
        node = queue.popleft()
        if node.depth >= depth:
            continue
        for name in GENERATORS:
            word = node.word + (name,)
            try:
                image = apply_generator(name, node.state)
            except WeylError as exc:
                skipped.append((word, str(exc)))
                continue
            key = image.params.as_tuple()
            known = seen.get(key)
            if known is not None:
                if node.depth + 1 <= audit_depth:
                    collisions.append(
                        ParamCollision(
                            params=image.params,
                            kept_word=known.word,
                            other_word=word,
                            depth=node.depth + 1,
                            states_equal=known.state.components() == image.components(),
                        )
                    )
                continue
            child = OrbitNode(word, node.depth + 1, image, matsuda_check(image.params))
            seen[key] = child
            nodes.append(child)
            queue.append(child)
    return OrbitResult(depth, tuple(nodes), tuple(collisions), tuple(skipped))
