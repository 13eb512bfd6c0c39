"""Associativity relations for the quantum product on G(2,4).

The quantum product is associative, and associativity written out against
the basis gives, for every ordered quadruple of basis classes (i,j,k,l),

    sum_{e,f} F_{ije} g^{ef} F_{fkl}  =  sum_{e,f} F_{jke} g^{ef} F_{fil},

where F_{xyz} is the third partial of the full (classical + quantum)
potential and g is the intersection form.  Reading off the coefficient of a
fixed monomial ya^a yb^b y3^g y4^e / (a! b! g! e!) times the degree marker
e^{d y1} turns each such identity into one linear equation among the
degree-d counts, with a constant assembled from lower degrees.

Structure exploited throughout this module:

* quadruples containing the unit class are identically satisfied and are
  never generated;
* for a unit-free quadruple of total codimension C, every quantum term of
  its relation (linear and constant alike) sits in the single monomial
  weight class 4d + 4 - C, so targets are enumerated per family rather
  than over a global box;
* a derivative in y1 multiplies a quantum term by its curve degree, and a
  derivative in y0 kills it, so the divisor and fundamental-class rules
  are built into the coefficient extraction.

All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb

from .cohomology import CODIM, LABELS, Basis, triple
from .keys import InvariantKey, normalize, tuples_of_weight

# Basis indices 0..5 = T0, T1, Ta, Tb, T3, T4.  Quadruples are drawn from
# the five positive-codimension classes.
QUANTUM_CLASSES = (1, 2, 3, 4, 5)

# Oriented index pairs (e, f) with g^{ef} = 1.
ORIENTED_PAIRS = ((0, 5), (5, 0), (1, 4), (4, 1), (2, 2), (3, 3))

Pair = tuple[int, int]
Pairing = tuple[Pair, Pair]
Triple = tuple[int, int, int]
Tuple4 = tuple[int, int, int, int]


@lru_cache(maxsize=None)
def triple_info(sigma: Triple):
    """(shift, n1, alive) for a sorted index triple.

    ``shift`` counts the (Ta, Tb, T3, T4) insertions the triple adds to a
    key, ``n1`` the number of T1 derivatives (each worth a factor of the
    curve degree), and ``alive`` is False when the triple contains the unit
    class, whose derivative kills every quantum term.
    """
    shift = (sigma.count(2), sigma.count(3), sigma.count(4), sigma.count(5))
    return shift, sigma.count(1), 0 not in sigma


def shift_weight(shift: Tuple4) -> int:
    return shift[0] + shift[1] + 2 * shift[2] + 3 * shift[3]


@dataclass(frozen=True)
class EquationFamily:
    """One associativity relation: the difference of two pairings.

    ``classes`` is the sorted index quadruple, ``positive``/``negative``
    the two distinct ways of splitting it into outer pairs, ``quadruple``
    an ordering (i,j,k,l) realizing positive = {ij|kl}, negative = {jk|il}
    (used for reporting), and ``codim_total`` the total codimension, which
    fixes the monomial weight class 4d + 4 - codim_total at degree d.
    """

    classes: Tuple4
    positive: Pairing
    negative: Pairing
    quadruple: Tuple4
    codim_total: int

    def target_weight(self, degree: int) -> int:
        return 4 * degree + 4 - self.codim_total

    def label(self) -> str:
        return "(" + ",".join(LABELS[c] for c in self.quadruple) + ")"


def _pairings_of(ms: Tuple4) -> list[Pairing]:
    out = set()
    for a, b in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
        p1 = tuple(sorted((ms[a[0]], ms[a[1]])))
        p2 = tuple(sorted((ms[b[0]], ms[b[1]])))
        out.add(tuple(sorted((p1, p2))))
    return sorted(out)


def _resolve_quadruple(pos: Pairing, neg: Pairing) -> Tuple4:
    """An ordering (i,j,k,l) with {i,j},{k,l} = pos and {j,k},{i,l} = neg."""
    halves = [pos, (pos[1], pos[0])]
    for first, second in halves:
        for i, j in (first, first[::-1]):
            for k, l in (second, second[::-1]):
                if tuple(sorted((tuple(sorted((j, k))), tuple(sorted((i, l)))))) == neg:
                    return (i, j, k, l)
    raise AssertionError(f"incompatible pairings {pos} / {neg}")


@lru_cache(maxsize=1)
def equation_families() -> tuple[EquationFamily, ...]:
    """All associativity relations, in a fixed deterministic order.

    One family per unordered pair of distinct pairings of each unit-free
    class multiset.  Multisets of shape xxxx or xxxy admit a single pairing
    and contribute nothing.
    """
    fams = []
    for ms in combinations_with_replacement(QUANTUM_CLASSES, 4):
        pairings = _pairings_of(ms)
        for pos, neg in combinations(pairings, 2):
            fams.append(
                EquationFamily(
                    classes=ms,
                    positive=pos,
                    negative=neg,
                    quadruple=_resolve_quadruple(pos, neg),
                    codim_total=sum(CODIM[c] for c in ms),
                )
            )
    return tuple(fams)


# Per-pairing assembly structure.  ``cross`` lists the unknown-producing
# classical-times-quantum contractions as (A value, key shift, n1);
# ``quantum`` lists the quantum-times-quantum series pairs as sorted
# triples (sigma1, sigma2).
@lru_cache(maxsize=None)
def pairing_structure(pairing: Pairing):
    (i, j), (k, l) = pairing
    cross = []
    quantum = []
    for e, f in ORIENTED_PAIRS:
        a_left = triple(Basis(i), Basis(j), Basis(e))
        if a_left:
            sigma = tuple(sorted((f, k, l)))
            shift, n1, alive = triple_info(sigma)
            if alive:
                cross.append((a_left, shift, n1))
        a_right = triple(Basis(f), Basis(k), Basis(l))
        if a_right:
            sigma = tuple(sorted((i, j, e)))
            shift, n1, alive = triple_info(sigma)
            if alive:
                cross.append((a_right, shift, n1))
        if e != 0 and f != 0:
            quantum.append((tuple(sorted((i, j, e))), tuple(sorted((f, k, l)))))
    return tuple(cross), tuple(quantum)


@dataclass(frozen=True)
class WdvvEquation:
    """One linear relation among the degree-``degree`` counts.

    ``terms`` maps canonical keys of degree ``degree`` to integer
    coefficients; ``constant`` folds in everything built from lower
    degrees.  The relation asserts  sum(c * N(key)) + constant = 0.
    """

    quadruple: Tuple4
    target: Tuple4
    degree: int
    terms: tuple[tuple[InvariantKey, int], ...]
    constant: int

    def residual(self, lookup) -> int:
        """lookup(key) -> value; returns the (should-be-zero) evaluation."""
        return sum(c * lookup(k) for k, c in self.terms) + self.constant

    def monomial_label(self) -> str:
        a, b, g, e = self.target
        return f"ya^{a} yb^{b} y3^{g} y4^{e} q^{self.degree}"


class PsiCalculator:
    """Quantum-times-quantum constants from already-solved degrees.

    ``tables`` maps each solved degree to its raw table {(a,b,g,d): value}
    containing every valid exponent tuple of that degree in both symmetry
    orientations.  Two evaluation modes: ``at`` enumerates the splittings
    of a single target (cheap for one equation), ``series`` convolves whole
    degree tables (cheap when a family needs every target of its weight
    class).  Both are pure given the tables, so instances may be shared by
    concurrent readers once built.
    """

    def __init__(self, tables: dict[int, dict[Tuple4, int]]):
        self.tables = tables
        self._items: dict[tuple[int, Triple], list] = {}
        self._series: dict[tuple[int, Triple, Triple], dict[Tuple4, int]] = {}

    def _shifted_items(self, degree: int, sigma: Triple):
        """Nonzero degree-``degree`` values reindexed by target exponents.

        Entry (a, b, g, e, v * degree**n1) stands for the key
        (a,b,g,e) + shift(sigma); keys not dominating the shift contribute
        nothing to any product and are dropped.
        """
        memo_key = (degree, sigma)
        cached = self._items.get(memo_key)
        if cached is not None:
            return cached
        (sa, sb, sg, se), n1, alive = triple_info(sigma)
        items = []
        if alive:
            dpow = degree**n1
            for (a, b, g, e), v in self.tables[degree].items():
                if v and a >= sa and b >= sb and g >= sg and e >= se:
                    items.append((a - sa, b - sb, g - sg, e - se, v * dpow))
        self._items[memo_key] = items
        return items

    def at(self, sigma1: Triple, sigma2: Triple, target: Tuple4, degree: int) -> int:
        """Coefficient of the target monomial in the product of the two
        quantum third-partial series, at total curve degree ``degree``."""
        shift1, n1, alive1 = triple_info(sigma1)
        shift2, n2, alive2 = triple_info(sigma2)
        if not (alive1 and alive2) or degree < 2:
            return 0
        w1 = shift_weight(shift1)
        ta, tb, tg, td = target
        s1a, s1b, s1g, s1d = shift1
        s2a, s2b, s2g, s2d = shift2
        tables = self.tables
        total = 0
        for d1v in range(td + 1):
            for g1 in range(tg + 1):
                for b1 in range(tb + 1):
                    base = b1 + 2 * g1 + 3 * d1v + w1
                    # a1 must make the first factor a valid key of some
                    # degree in [1, degree-1]: weight = 4 d1 + 1.
                    lo = 5 - base
                    hi = min(ta, 4 * (degree - 1) + 1 - base)
                    start = max(lo, 0)
                    rem = (1 - base - start) % 4
                    start += rem
                    wb = comb(tb, b1) * comb(tg, g1) * comb(td, d1v)
                    for a1 in range(start, hi + 1, 4):
                        d1 = (base + a1 - 1) // 4
                        v1 = tables[d1].get((a1 + s1a, b1 + s1b, g1 + s1g, d1v + s1d))
                        if not v1:
                            continue
                        d2 = degree - d1
                        v2 = tables[d2].get(
                            (ta - a1 + s2a, tb - b1 + s2b, tg - g1 + s2g, td - d1v + s2d)
                        )
                        if not v2:
                            continue
                        total += (
                            comb(ta, a1) * wb * (d1**n1) * (d2**n2) * v1 * v2
                        )
        return total

    def series(self, sigma1: Triple, sigma2: Triple, degree: int) -> dict[Tuple4, int]:
        """The whole product series at total degree ``degree``."""
        if sigma2 < sigma1:
            sigma1, sigma2 = sigma2, sigma1
        memo_key = (degree, sigma1, sigma2)
        cached = self._series.get(memo_key)
        if cached is not None:
            return cached
        out: dict[Tuple4, int] = {}
        get = out.get
        for d1 in range(1, degree):
            items1 = self._shifted_items(d1, sigma1)
            if not items1:
                continue
            items2 = self._shifted_items(degree - d1, sigma2)
            if not items2:
                continue
            for a1, b1, g1, e1, v1 in items1:
                for a2, b2, g2, e2, v2 in items2:
                    t = (a1 + a2, b1 + b2, g1 + g2, e1 + e2)
                    w = (
                        comb(t[0], a1)
                        * comb(t[1], b1)
                        * comb(t[2], g1)
                        * comb(t[3], e1)
                    )
                    out[t] = get(t, 0) + w * v1 * v2
        self._series[memo_key] = out
        return out


def build_equation(
    family: EquationFamily,
    target: Tuple4,
    degree: int,
    psi: PsiCalculator,
) -> WdvvEquation:
    """Assemble the relation of ``family`` at one target monomial."""
    terms: dict[InvariantKey, int] = {}
    constant = 0
    ta, tb, tg, td = target
    for sign, pairing in ((1, family.positive), (-1, family.negative)):
        cross, quantum = pairing_structure(pairing)
        for a_val, (sa, sb, sg, se), n1 in cross:
            key = normalize(
                InvariantKey(ta + sa, tb + sb, tg + sg, td + se, degree)
            )
            terms[key] = terms.get(key, 0) + sign * a_val * degree**n1
        for sigma1, sigma2 in quantum:
            constant += sign * psi.at(sigma1, sigma2, target, degree)
    clean = tuple(sorted((k, c) for k, c in terms.items() if c != 0))
    return WdvvEquation(
        quadruple=family.quadruple,
        target=target,
        degree=degree,
        terms=clean,
        constant=constant,
    )


def solve_order(degree: int) -> list[tuple[int, int, Tuple4]]:
    """Deterministic assembly order for the solver: cheapest targets first.

    Returns (cost, family index, target) triples sorted so that monomials
    with few splittings (whose constants are cheap and whose unknowns are
    the concentrated ones) are consumed first.  Families with no
    unknown-bearing contraction are left to the verifier.
    """
    items = []
    for idx, fam in enumerate(equation_families()):
        w = fam.target_weight(degree)
        if w < 0:
            continue
        cross_pos = pairing_structure(fam.positive)[0]
        cross_neg = pairing_structure(fam.negative)[0]
        if not cross_pos and not cross_neg:
            continue
        for t in tuples_of_weight(w):
            cost = (t[0] + 1) * (t[1] + 1) * (t[2] + 1) * (t[3] + 1)
            items.append((cost, idx, t))
    items.sort()
    return items


def exhaustive_order(degree: int) -> list[tuple[int, Tuple4]]:
    """(family index, target) pairs for every equation at this degree."""
    items = []
    for idx, fam in enumerate(equation_families()):
        w = fam.target_weight(degree)
        if w < 0:
            continue
        for t in tuples_of_weight(w):
            items.append((idx, t))
    return items
