"""Brute-force Tor over ``Z[beta]`` from explicit free resolutions.

Each supported module comes with a short free resolution over
``Z[beta]`` (``beta`` in degree 2).  Tor of two modules is the homology of
the tensor product of their resolutions.  In a fixed internal degree that
complex is a finite complex of free abelian groups, so its homology is
read off integer Smith normal forms.  Nothing here consults the product
table in :mod:`ktate.grmod`; :func:`verify_table_row` compares the two.

Localising at an odd prime is not done explicitly.  The presentations only
ever produce p-power torsion, and any other torsion raises
:class:`OracleError`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .grmod import H, K, M, N, Decomposition, SmashKind, Symbol, check_prime, product_table
from .laurent import Direction, expand
from .snf import invariant_factors

__all__ = [
    "BetaPolynomial",
    "GradedFreeModule",
    "ResolutionSpec",
    "GradedAbelianGroup",
    "UnsupportedSymbol",
    "WindowTooWide",
    "OracleError",
    "resolution_of",
    "coefficient_groups",
    "tor",
    "safety_margin",
    "decomposition_groups",
    "verify_table_row",
    "DEGREE_CAP",
]

#: Largest internal degree the oracle will build resolutions up to.
DEGREE_CAP = 4096


class UnsupportedSymbol(ValueError):
    """The module has no finite degreewise resolution in this oracle."""


class WindowTooWide(ValueError):
    """The requested window cannot be served together with its safety margin."""


class OracleError(RuntimeError):
    """An internal invariant of the oracle failed."""


@dataclass(frozen=True)
class BetaPolynomial:
    """Integer polynomial in ``beta``; ``terms`` maps exponent to coefficient."""

    terms: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> "BetaPolynomial":
        if any(e < 0 for e in mapping):
            raise ValueError("beta exponents are nonnegative")
        return cls(tuple(sorted((e, c) for e, c in mapping.items() if c)))

    def __mul__(self, other: "BetaPolynomial") -> "BetaPolynomial":
        out: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return BetaPolynomial.of(out)

    def scaled(self, c: int) -> "BetaPolynomial":
        return BetaPolynomial.of({e: c * v for e, v in self.terms})


ONE = BetaPolynomial.of({0: 1})


@dataclass(frozen=True)
class GradedFreeModule:
    """Free ``Z[beta]``-module on named generators of given internal degree."""

    generators: tuple[tuple[str, int], ...]

    def __len__(self):
        return len(self.generators)

    def degrees(self) -> list[int]:
        return [d for _, d in self.generators]


# differential d_j : F_j -> F_{j-1}, stored as {(target, source): entry}
Differential = Mapping[tuple[int, int], BetaPolynomial]


@dataclass(frozen=True)
class ResolutionSpec:
    """A free resolution ``... -> F_1 -> F_0`` truncated at ``degree_bound``.

    ``modules[j]`` is ``F_j``; ``differentials[j - 1]`` is ``d_j``.  Every
    generator of degree at most ``degree_bound`` is present, so the
    complex is exact in each internal degree up to the bound.
    """

    symbol: Symbol
    prime: int
    modules: tuple[GradedFreeModule, ...]
    differentials: tuple[Differential, ...]
    degree_bound: int

    @property
    def F0(self) -> GradedFreeModule:
        return self.modules[0]

    @property
    def F1(self) -> GradedFreeModule:
        return self.modules[1] if len(self.modules) > 1 else GradedFreeModule(())

    @property
    def differential(self) -> Differential:
        return self.differentials[0] if self.differentials else {}

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def min_degree(self) -> int:
        degs = [d for F in self.modules for d in F.degrees()]
        return min(degs) if degs else 0


def _m_shift(p: int) -> int:
    return 2 * (2 - p)


@lru_cache(maxsize=None)
def resolution_of(sym: Symbol, p: int, degree_bound: int) -> ResolutionSpec:
    """Free resolution of a building block, keeping generators up to ``degree_bound``.

    ``N`` has generators ``z_i`` (i >= 0) and relations ``t_i`` (i >= 1),
    both in degree ``2i(p-1)``, with ``t_i -> p z_i - beta^(p-1) z_(i-1)``.
    ``M`` adds ``t_0 -> z_0`` and is shifted by ``2(2-p)``.  ``H`` is the
    Koszul resolution of the regular sequence ``(p, beta^(p-1))``.
    """
    check_prime(p)
    if degree_bound < 0:
        raise ValueError("degree_bound must be nonnegative")
    step = 2 * (p - 1)
    bp = BetaPolynomial.of({p - 1: 1})
    if sym == K:
        return ResolutionSpec(sym, p, (GradedFreeModule((("1", 0),)),), (), degree_bound)
    if sym in (N, M):
        shift = _m_shift(p) if sym == M else 0
        first = 0 if sym == M else 1
        count = max(0, (degree_bound - shift) // step + 1)
        F0 = GradedFreeModule(tuple((f"z{i}", step * i + shift) for i in range(count)))
        F1 = GradedFreeModule(tuple((f"t{i}", step * i + shift) for i in range(first, count)))
        d: dict[tuple[int, int], BetaPolynomial] = {}
        for col, (name, _) in enumerate(F1.generators):
            i = int(name[1:])
            if i == 0:
                d[(0, col)] = ONE
            else:
                d[(i, col)] = BetaPolynomial.of({0: p})
                d[(i - 1, col)] = bp.scaled(-1)
        return ResolutionSpec(sym, p, (F0, F1), (d,), degree_bound)
    if sym == H:
        F0 = GradedFreeModule((("e", 0),))
        F1 = GradedFreeModule((("a", 0), ("b", step)))
        F2 = GradedFreeModule((("ab", step),))
        d1 = {(0, 0): BetaPolynomial.of({0: p}), (0, 1): bp}
        d2 = {(1, 0): BetaPolynomial.of({0: p}), (0, 0): bp.scaled(-1)}
        return ResolutionSpec(sym, p, (F0, F1, F2), (d1, d2), degree_bound)
    raise UnsupportedSymbol(f"{sym} has no degreewise-finite resolution in this oracle")


# ---------------------------------------------------------------------------
# graded abelian groups


@dataclass(frozen=True)
class GradedAbelianGroup:
    """Finitely generated abelian group in each degree of ``lo..hi``.

    ``groups[d - lo]`` is ``(free_rank, torsion)`` with ``torsion`` a sorted
    tuple of prime-power orders.  Degrees outside the window are simply
    not reported.
    """

    lo: int
    hi: int
    groups: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")
        if len(self.groups) != self.hi - self.lo + 1:
            raise ValueError("groups length does not match the window")

    @classmethod
    def zero(cls, lo: int, hi: int) -> "GradedAbelianGroup":
        return cls(lo, hi, tuple((0, ()) for _ in range(hi - lo + 1)))

    @classmethod
    def from_function(cls, lo: int, hi: int, fn: Callable[[int], tuple[int, Iterable[int]]]):
        return cls(lo, hi, tuple(_norm(*fn(d)) for d in range(lo, hi + 1)))

    def __getitem__(self, d: int) -> tuple[int, tuple[int, ...]]:
        if not self.lo <= d <= self.hi:
            raise KeyError(d)
        return self.groups[d - self.lo]

    def free(self, d: int) -> int:
        return self[d][0]

    def torsion(self, d: int) -> tuple[int, ...]:
        return self[d][1]

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def is_zero(self) -> bool:
        return all(f == 0 and not t for f, t in self.groups)

    def __add__(self, other: "GradedAbelianGroup") -> "GradedAbelianGroup":
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("groups cover different windows")
        return GradedAbelianGroup(
            self.lo,
            self.hi,
            tuple(_norm(a[0] + b[0], a[1] + b[1]) for a, b in zip(self.groups, other.groups)),
        )

    def restrict(self, lo: int, hi: int) -> "GradedAbelianGroup":
        return GradedAbelianGroup(lo, hi, tuple(self[d] for d in range(lo, hi + 1)))

    def __str__(self):
        lines = []
        for d, (f, t) in zip(self.degrees(), self.groups):
            parts = ([f"Z^{f}"] if f > 1 else ["Z"] if f == 1 else []) + [f"Z/{o}" for o in t]
            lines.append(f"{d:>5}: {' + '.join(parts) if parts else '0'}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "degrees": [
                {"d": d, "free": f, "torsion": list(t)} for d, (f, t) in zip(self.degrees(), self.groups)
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedAbelianGroup":
        rows = sorted(data["degrees"], key=lambda r: r["d"])
        lo, hi = rows[0]["d"], rows[-1]["d"]
        if [r["d"] for r in rows] != list(range(lo, hi + 1)):
            raise ValueError("degrees must form a contiguous window")
        return cls(lo, hi, tuple(_norm(r["free"], r["torsion"]) for r in rows))


def _norm(free: int, torsion: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    return free, tuple(sorted(o for o in torsion if o != 1))


def _prime_power_parts(order: int, p: int) -> list[int]:
    q = 1
    while order % p == 0:
        order //= p
        q *= p
    if order != 1:
        raise OracleError(f"torsion of order prime to {p} appeared (factor {order})")
    return [q] if q > 1 else []


# ---------------------------------------------------------------------------
# Tor


def safety_margin(p: int) -> int:
    """Extra internal degrees built beyond a window: twice the widest table shift 4(p-1)."""
    return 8 * (p - 1)


def _slice_basis(F: GradedFreeModule, d: int) -> list[tuple[int, int]]:
    # (generator index, beta exponent) spanning F in internal degree d
    out = []
    for idx, (_, deg) in enumerate(F.generators):
        gap = d - deg
        if gap >= 0 and gap % 2 == 0:
            out.append((idx, gap // 2))
    return out


@lru_cache(maxsize=None)
def _tensor_complex(a: Symbol, b: Symbol, p: int, bound: int):
    RA = resolution_of(a, p, bound)
    RB = resolution_of(b, p, bound)
    # generators of C_j: (ja, ia, jb, ib) with ja + jb = j
    top = RA.length + RB.length
    gens: list[list[tuple[int, int, int, int, int]]] = []
    for j in range(top + 1):
        layer = []
        for ja in range(RA.length + 1):
            jb = j - ja
            if not 0 <= jb <= RB.length:
                continue
            for ia, (_, da) in enumerate(RA.modules[ja].generators):
                for ib, (_, db) in enumerate(RB.modules[jb].generators):
                    layer.append((ja, ia, jb, ib, da + db))
        gens.append(layer)
    # columns of d_A and d_B, grouped by source generator
    dA = [_by_source(d) for d in RA.differentials]
    dB = [_by_source(d) for d in RB.differentials]
    return gens, dA, dB


def _by_source(d: Differential) -> dict[int, list[tuple[int, BetaPolynomial]]]:
    out: dict[int, list[tuple[int, BetaPolynomial]]] = {}
    for (tgt, src), entry in d.items():
        out.setdefault(src, []).append((tgt, entry))
    return out


def _degree_matrix(complex_, j: int, d: int):
    """Matrix of d_j : C_j -> C_(j-1) in internal degree d, plus both basis sizes."""
    gens, dA, dB = complex_
    src_basis = [(g, (d - g[4]) // 2) for g in gens[j] if d >= g[4] and (d - g[4]) % 2 == 0]
    if j == 0:
        return None, len(src_basis), 0
    tgt_basis = [(g, (d - g[4]) // 2) for g in gens[j - 1] if d >= g[4] and (d - g[4]) % 2 == 0]
    index = {(g[0], g[1], g[2], g[3]): r for r, (g, _) in enumerate(tgt_basis)}
    rows = [[0] * len(src_basis) for _ in tgt_basis]
    for col, ((ja, ia, jb, ib, _), _) in enumerate(src_basis):
        # d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy ; beta-exponents are fixed by degree
        if ja > 0:
            for tgt, entry in dA[ja - 1].get(ia, ()):
                r = index.get((ja - 1, tgt, jb, ib))
                if r is not None:
                    rows[r][col] += _monomial_coeff(entry)
        if jb > 0:
            sign = -1 if ja % 2 else 1
            for tgt, entry in dB[jb - 1].get(ib, ()):
                r = index.get((ja, ia, jb - 1, tgt))
                if r is not None:
                    rows[r][col] += sign * _monomial_coeff(entry)
    return rows, len(src_basis), len(tgt_basis)


def _monomial_coeff(entry: BetaPolynomial) -> int:
    # every entry in these resolutions is a single monomial c * beta^e, and the
    # differential preserves internal degree, so e is forced by the basis
    if len(entry.terms) != 1:
        raise OracleError("non-homogeneous differential entry")
    return entry.terms[0][1]


@lru_cache(maxsize=None)
def _tor_degree(a: Symbol, b: Symbol, j: int, p: int, d: int, bound: int) -> tuple[int, tuple[int, ...]]:
    cx = _tensor_complex(a, b, p, bound)
    gens = cx[0]
    if j >= len(gens):
        return 0, ()
    dj, n_j, _ = _degree_matrix(cx, j, d)
    rank_j = len(invariant_factors(dj, n_j)) if dj is not None and dj and n_j else 0
    if j + 1 < len(gens):
        dj1, n_j1, n_tgt = _degree_matrix(cx, j + 1, d)
        factors = invariant_factors(dj1, n_j1) if dj1 and n_j1 else []
    else:
        factors = []
    free = n_j - rank_j - len(factors)
    if free < 0:
        raise OracleError("negative free rank: the complex is not a complex")
    torsion: list[int] = []
    for f in factors:
        if f > 1:
            torsion.extend(_prime_power_parts(f, p))
    return _norm(free, torsion)


def _check_window(lo: int, hi: int, p: int, degree_bound: int | None) -> int:
    if lo > hi:
        raise ValueError(f"reversed window [{lo}, {hi}]")
    need = hi + safety_margin(p)
    if degree_bound is None:
        degree_bound = need
    elif degree_bound < need:
        raise WindowTooWide(
            f"window up to {hi} needs resolutions to degree {need}, bound is {degree_bound}"
        )
    if degree_bound > DEGREE_CAP:
        raise WindowTooWide(f"degree bound {degree_bound} exceeds the oracle cap {DEGREE_CAP}")
    return max(degree_bound, 0)


def tor(
    a: Symbol,
    b: Symbol,
    j: int,
    p: int,
    lo: int,
    hi: int,
    degree_bound: int | None = None,
) -> GradedAbelianGroup:
    """``Tor_j^{Z[beta]}(a, b)`` in internal degrees ``lo..hi``."""
    check_prime(p)
    if j < 0:
        raise ValueError("homological degree must be nonnegative")
    bound = _check_window(lo, hi, p, degree_bound)
    return GradedAbelianGroup.from_function(lo, hi, lambda d: _tor_degree(a, b, j, p, d, bound))


def coefficient_groups(
    sym: Symbol, p: int, lo: int, hi: int, degree_bound: int | None = None
) -> GradedAbelianGroup:
    """Homotopy of a building block, as the cokernel of its resolution."""
    return tor(sym, K, 0, p, lo, hi, degree_bound)


# ---------------------------------------------------------------------------
# table verification


def _lowest_degree(sym: Symbol, p: int) -> int:
    return 2 if sym == M else 0


def decomposition_groups(
    dec: Decomposition,
    lo: int,
    hi: int,
    groups_of: Callable[[Symbol, int, int], GradedAbelianGroup] | None = None,
) -> GradedAbelianGroup:
    """Homotopy of a decomposition whose multiplicities expand at zero.

    ``groups_of(sym, lo, hi)`` supplies each block's homotopy; the default
    uses :func:`coefficient_groups`.
    """
    p = dec.prime
    if groups_of is None:
        groups_of = lambda s, a, b: coefficient_groups(s, p, a, b)  # noqa: E731
    total = GradedAbelianGroup.zero(lo, hi)
    for sym, mult in dec.terms.items():
        start = mult.num.low - mult.den.low
        top = hi - _lowest_degree(sym, p)
        if top < start:
            continue
        counts = [(s, c) for s, c in expand(mult, Direction.AT_ZERO, start, top).items() if c]
        if not counts:
            continue
        if any(c < 0 for _, c in counts):
            raise OracleError(f"negative multiplicity for {sym} in {mult}")
        # one oracle call per block, covering every shift at once
        shifts = [s for s, _ in counts]
        block = groups_of(sym, lo - max(shifts), hi - min(shifts))
        for s, c in counts:
            piece = tuple(block[d - s] for d in range(lo, hi + 1))
            total = total + GradedAbelianGroup(lo, hi, tuple((f * c, t * c) for f, t in piece))
    return total


def verify_table_row(a: Symbol, b: Symbol, p: int, lo: int, hi: int) -> bool:
    """Check a product-table row against Tor computed from resolutions.

    The coefficients of ``a`` smashed with ``b`` sit in a split short
    exact sequence ``Tor_0`` in degree d, ``Tor_1`` in degree d-1; the
    table's decomposition must have exactly those groups on the window.
    """
    check_prime(p)
    if hi - lo < safety_margin(p):
        raise WindowTooWide(
            f"window [{lo}, {hi}] is narrower than the safety margin {safety_margin(p)}"
        )
    claimed = decomposition_groups(product_table(a, b, SmashKind.ORDINARY, p), lo, hi)
    t0 = tor(a, b, 0, p, lo, hi)
    t1 = tor(a, b, 1, p, lo - 1, hi - 1)
    oracle = t0 + GradedAbelianGroup(lo, hi, t1.groups)
    return claimed == oracle
