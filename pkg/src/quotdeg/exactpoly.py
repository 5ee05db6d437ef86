"""Exact rational arithmetic and truncated multivariate polynomial algebra.

A polynomial is a sparse map from monomials (exponent tuples, one entry per
ring generator) to rational coefficients (`fractions.Fraction`).  Every
generator has degree 1 and a truncation order t, meaning g^t = 0; a generator
may additionally carry a rewrite relation g^t = (lower g-powers), which is how
projective-bundle rings are realised.  Generators are grouped into blocks so
that rings of the form A(X)^{\\otimes l} know their factor structure and can be
acted on by block permutations.

All values are immutable after construction and all operations are pure, so
everything here is safe to evaluate concurrently.  Results never depend on
term iteration order: coefficients are exact rationals and serialization is
fixed to lexicographic order on exponent vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainError, RingMismatchError

Rational = Fraction
Monomial = tuple[int, ...]

__all__ = [
    "Rational",
    "Monomial",
    "Relation",
    "RingDescriptor",
    "TruncPoly",
    "poly_mul",
    "series_inverse",
    "permute_blocks",
    "map_blocks",
    "binomial",
    "multinomial",
    "factorial",
    "compositions",
    "DegreePolynomial",
    "poly_interpolate",
]


@dataclass(frozen=True)
class Relation:
    """Rewrite rule gen^power = sum of lower-order terms."""

    gen: int
    power: int
    terms: tuple[tuple[Monomial, Fraction], ...]


@dataclass(frozen=True)
class RingDescriptor:
    """Shape of a truncated polynomial ring.

    names/truncations run in parallel over the generators; ``blocks`` is a
    partition of the generator indices into factor blocks.  ``relations``
    holds at most one rewrite rule per generator (used for the tautological
    class of a projective bundle); a related generator's truncation must
    equal the relation power, so normal forms keep its exponent below it.
    """

    names: tuple[str, ...]
    truncations: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "truncations", tuple(self.truncations))
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        object.__setattr__(self, "relations", tuple(self.relations))
        if len(self.names) != len(self.truncations):
            raise ValueError("names and truncations must have equal length")
        if any(t < 1 for t in self.truncations):
            raise ValueError("every truncation order must be >= 1")
        seen = [i for b in self.blocks for i in b]
        if sorted(seen) != list(range(len(self.names))):
            raise ValueError("blocks must partition the generator indices")
        rel_gens = [r.gen for r in self.relations]
        if len(set(rel_gens)) != len(rel_gens):
            raise ValueError("at most one relation per generator")
        for r in self.relations:
            if self.truncations[r.gen] != r.power:
                raise ValueError("relation power must equal the generator truncation")
            for mono, _ in r.terms:
                if len(mono) != len(self.names) or mono[r.gen] >= r.power:
                    raise ValueError("relation terms must lower the generator power")

    @property
    def ngens(self) -> int:
        return len(self.names)

    @cached_property
    def _relation_map(self) -> dict[int, Relation]:
        return {r.gen: r for r in self.relations}

    @cached_property
    def _plain_gens(self) -> tuple[int, ...]:
        rel = set(self._relation_map)
        return tuple(i for i in range(self.ngens) if i not in rel)

    @cached_property
    def max_degree(self) -> int:
        """Largest total degree of a normal-form monomial."""
        return sum(t - 1 for t in self.truncations)

    @cached_property
    def unit_monomial(self) -> Monomial:
        return (0,) * self.ngens

    def monomial_str(self, mono: Monomial) -> str:
        parts = [f"{n}^{e}" for n, e in zip(self.names, mono) if e]
        return "*".join(parts) if parts else "1"

    def monomial_from_str(self, text: str) -> Monomial:
        expo = [0] * self.ngens
        if text.strip() != "1":
            index = {n: i for i, n in enumerate(self.names)}
            for part in text.split("*"):
                name, _, e = part.strip().partition("^")
                if name not in index:
                    raise ValueError(f"unknown generator {name!r}")
                expo[index[name]] += int(e) if e else 1
        return tuple(expo)

    def _block_signature(self, block: tuple[int, ...]):
        local = {g: j for j, g in enumerate(block)}
        sig = []
        for j, g in enumerate(block):
            rel = self._relation_map.get(g)
            if rel is None:
                sig.append((self.truncations[g], None))
                continue
            terms = []
            for mono, coeff in rel.terms:
                loc = [0] * len(block)
                for i, e in enumerate(mono):
                    if e == 0:
                        continue
                    if i not in local:
                        return None  # relation reaches outside the block
                    loc[local[i]] = e
                terms.append((tuple(loc), coeff))
            sig.append((self.truncations[g], (j, rel.power, tuple(sorted(terms)))))
        return tuple(sig)

    @cached_property
    def blocks_identical(self) -> bool:
        sigs = {self._block_signature(b) for b in self.blocks}
        return len(sigs) == 1 and None not in sigs


def _reduce_terms(ring: RingDescriptor, items: Iterable[tuple[Monomial, Fraction]]) -> dict:
    """Apply relations and truncations, drop zero coefficients."""
    relations = ring.relations
    trunc = ring.truncations
    plain = ring._plain_gens
    out: dict[Monomial, Fraction] = {}
    stack = list(items)
    while stack:
        mono, coeff = stack.pop()
        if not coeff:
            continue
        if any(mono[i] >= trunc[i] for i in plain):
            continue
        rel = None
        for r in relations:
            if mono[r.gen] >= r.power:
                rel = r
                break
        if rel is None:
            prev = out.get(mono)
            if prev is None:
                out[mono] = coeff
            else:
                total = prev + coeff
                if total:
                    out[mono] = total
                else:
                    del out[mono]
            continue
        lowered = list(mono)
        lowered[rel.gen] -= rel.power
        for rmono, rcoeff in rel.terms:
            stack.append((tuple(a + b for a, b in zip(lowered, rmono)), coeff * rcoeff))
    return out


class TruncPoly:
    """Immutable element of a truncated polynomial ring."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingDescriptor, terms, *, _normalized: bool = False):
        self.ring = ring
        if _normalized:
            self.terms = terms
        else:
            items = terms.items() if isinstance(terms, Mapping) else terms
            self.terms = _reduce_terms(ring, items)
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "TruncPoly":
        return cls(ring, {}, _normalized=True)

    @classmethod
    def one(cls, ring: RingDescriptor) -> "TruncPoly":
        return cls.constant(ring, 1)

    @classmethod
    def constant(cls, ring: RingDescriptor, value) -> "TruncPoly":
        value = Fraction(value)
        if not value:
            return cls.zero(ring)
        return cls(ring, {ring.unit_monomial: value}, _normalized=True)

    @classmethod
    def generator(cls, ring: RingDescriptor, i: int) -> "TruncPoly":
        mono = tuple(1 if j == i else 0 for j in range(ring.ngens))
        return cls(ring, [(mono, Fraction(1))])

    # -- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring.unit_monomial, Fraction(0))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def sorted_terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items()))

    def total_degree(self) -> int:
        """Largest degree among the terms; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def graded_part(self, k: int) -> "TruncPoly":
        part = {m: c for m, c in self.terms.items() if sum(m) == k}
        return TruncPoly(self.ring, part, _normalized=True)

    def is_homogeneous(self) -> bool:
        degrees = {sum(m) for m in self.terms}
        return len(degrees) <= 1

    # -- arithmetic ---------------------------------------------------

    def _check_ring(self, other: "TruncPoly"):
        if self.ring != other.ring:
            raise RingMismatchError("operands belong to different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncPoly.constant(self.ring, other)
        self._check_ring(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            total = out.get(m, Fraction(0)) + c
            if total:
                out[m] = total
            else:
                out.pop(m, None)
        return TruncPoly(self.ring, out, _normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly(self.ring, {m: -c for m, c in self.terms.items()}, _normalized=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncPoly.constant(self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return TruncPoly.zero(self.ring)
            other = Fraction(other)
            return TruncPoly(
                self.ring, {m: c * other for m, c in self.terms.items()}, _normalized=True
            )
        self._check_ring(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        raw: dict[Monomial, Fraction] = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                prev = raw.get(m)
                raw[m] = c1 * c2 if prev is None else prev + c1 * c2
        return TruncPoly(self.ring, raw.items())

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = TruncPoly.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncPoly.constant(self.ring, other)
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono, coeff in self.sorted_terms():
            ms = self.ring.monomial_str(mono)
            bits.append(str(coeff) if ms == "1" else f"{coeff}*{ms}")
        return " + ".join(bits)

    # -- serialization ------------------------------------------------

    def to_dict(self) -> dict[str, str]:
        return {self.ring.monomial_str(m): str(c) for m, c in self.sorted_terms()}

    @classmethod
    def from_dict(cls, ring: RingDescriptor, data: Mapping[str, str]) -> "TruncPoly":
        items = []
        for mono_s, coeff_s in data.items():
            coeff = Fraction(str(coeff_s).replace("−", "-"))
            items.append((ring.monomial_from_str(mono_s), coeff))
        return cls(ring, items)


def poly_mul(a: TruncPoly, b: TruncPoly) -> TruncPoly:
    """Product in the truncated ring."""
    return a * b


def series_inverse(a: TruncPoly) -> TruncPoly:
    """Multiplicative inverse of a polynomial with constant term 1.

    Uses the geometric series 1/(1+u) = sum (-u)^i, which terminates because
    every positive-degree element of a truncated ring is nilpotent.
    """
    if a.constant_term() != 1:
        raise DomainError("series_inverse requires constant term 1")
    u = a - 1
    result = TruncPoly.one(a.ring)
    power = TruncPoly.one(a.ring)
    sign = 1
    for _ in range(a.ring.max_degree):
        power = power * u
        sign = -sign
        if power.is_zero():
            break
        result = result + sign * power
    return result


def map_blocks(a: TruncPoly, dst_ring: RingDescriptor, assignment: Sequence[int]) -> TruncPoly:
    """Relabel generators block-wise: source block m lands in destination
    block assignment[m] (matched position by position)."""
    src = a.ring
    if len(assignment) != len(src.blocks):
        raise ValueError("assignment must cover every source block")
    index_map = {}
    for m, target in enumerate(assignment):
        sblock, dblock = src.blocks[m], dst_ring.blocks[target]
        if len(sblock) != len(dblock):
            raise ValueError("source and destination blocks differ in shape")
        for sg, dg in zip(sblock, dblock):
            index_map[sg] = dg
    items = []
    for mono, coeff in a.terms.items():
        new = [0] * dst_ring.ngens
        for i, e in enumerate(mono):
            if e:
                new[index_map[i]] += e  # collisions restrict to a diagonal
        items.append((tuple(new), coeff))
    return TruncPoly(dst_ring, items)


def permute_blocks(a: TruncPoly, sigma: Sequence[int]) -> TruncPoly:
    """Apply a block permutation (sigma[m] = image of block m)."""
    ring = a.ring
    if sorted(sigma) != list(range(len(ring.blocks))):
        raise ValueError("sigma must be a permutation of the blocks")
    if not ring.blocks_identical:
        raise DomainError("permute_blocks requires identical blocks")
    return map_blocks(a, ring, sigma)


def binomial(x, k: int) -> Fraction:
    """Generalized binomial coefficient x(x-1)...(x-k+1)/k!; zero for k < 0.

    The upper argument may be any integer or rational, so index ranges that
    run negative simply vanish instead of needing special cases.
    """
    if k < 0:
        return Fraction(0)
    num = Fraction(1)
    for i in range(k):
        num *= x - i
    return num / factorial(k)


def multinomial(parts: Sequence[int]) -> int:
    """(sum parts)! / prod(part!)."""
    result = factorial(sum(parts))
    for p in parts:
        result //= factorial(p)
    return result


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ordered tuples of `parts` nonnegative integers summing to `total`,
    in lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in compositions(total - head, parts - 1):
            yield (head,) + tail


@dataclass(frozen=True)
class DegreePolynomial:
    """Coefficients of a univariate polynomial, index = power of the variable."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, n) -> Fraction:
        x = Fraction(n)
        total = Fraction(0)
        for c in reversed(self.coefficients):
            total = total * x + c
        return total

    def __iter__(self):
        return iter(self.coefficients)


def poly_interpolate(points: Sequence[tuple]) -> DegreePolynomial:
    """Exact interpolation through the given (x, y) pairs (Newton form)."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    divided = [Fraction(y) for _, y in points]
    n = len(points)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - level])
    coeffs = [Fraction(0)] * n
    basis = [Fraction(0)] * n
    basis[0] = Fraction(1)
    for i in range(n):
        for j in range(i + 1):
            coeffs[j] += divided[i] * basis[j]
        if i + 1 < n:
            new_basis = [Fraction(0)] * n
            for j in range(i + 1):
                new_basis[j + 1] += basis[j]
                new_basis[j] -= xs[i] * basis[j]
            basis = new_basis
    return DegreePolynomial(tuple(coeffs))
