"""Shared substrate: carriers, dense tuple encodings, operations, relations,
relation pairs, canonical families, composition and the relaxation closure.

All values are immutable after construction and all functions are pure.
Tuples over the carrier {0,...,k-1} are encoded base-k with position 0 most
significant: (x_0,...,x_{m-1}) -> sum x_i * k^(m-1-i).  Every other module
inherits this encoding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class DomainError(ValueError):
    """An input value violates a structural invariant (bad arity, entry >= k, ...)."""


class CapExceeded(RuntimeError):
    """An enumeration would exceed the configured complexity cap.

    Raised instead of silently truncating; carries a cost estimate.
    """

    def __init__(self, what: str, cost: int, cap: int):
        self.what = what
        self.cost = cost
        self.cap = cap
        super().__init__(f"{what}: estimated cost {cost} exceeds cap {cap}")


DEFAULT_CAP = 2 ** 20


def check_cap(what: str, cost: int, cap: int = DEFAULT_CAP) -> None:
    if cost > cap:
        raise CapExceeded(what, cost, cap)


@dataclass(frozen=True, order=True)
class Carrier:
    """The finite base set {0,...,k-1}; k = 0 and k = 1 are allowed."""

    k: int

    def __post_init__(self):
        if self.k < 0:
            raise DomainError(f"carrier size must be >= 0, got {self.k}")

    def num_tuples(self, arity: int) -> int:
        return self.k ** arity

    def tuples(self, arity: int) -> Iterator[tuple[int, ...]]:
        """All arity-tuples over the carrier in encoding order."""
        return itertools.product(range(self.k), repeat=arity)

    def encode(self, t: Sequence[int]) -> int:
        idx = 0
        for x in t:
            if not 0 <= x < self.k:
                raise DomainError(f"tuple entry {x} outside carrier of size {self.k}")
            idx = idx * self.k + x
        return idx

    def decode(self, index: int, arity: int) -> tuple[int, ...]:
        if not 0 <= index < self.k ** arity:
            raise DomainError(f"index {index} out of range for arity {arity}, k={self.k}")
        out = [0] * arity
        for i in range(arity - 1, -1, -1):
            index, out[i] = divmod(index, self.k)
        return tuple(out)


@dataclass(frozen=True, order=True)
class EncodedTuple:
    arity: int
    index: int


def encode_tuple(t: Sequence[int], carrier: Carrier) -> EncodedTuple:
    return EncodedTuple(len(t), carrier.encode(t))


def decode_tuple(e: EncodedTuple, carrier: Carrier) -> tuple[int, ...]:
    return carrier.decode(e.index, e.arity)


@dataclass(frozen=True, order=True)
class Operation:
    """A finitary operation on {0,...,k-1}: arity n plus a dense value table
    of length k^n in encoding order.  n = 0 is a nullary constant."""

    k: int
    arity: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.arity < 0:
            raise DomainError("operation arity must be >= 0")
        expected = self.k ** self.arity
        if len(self.table) != expected:
            raise DomainError(
                f"table length {len(self.table)} != k^arity = {expected}"
            )
        for v in self.table:
            if not 0 <= v < self.k:
                raise DomainError(f"table value {v} outside carrier of size {self.k}")

    @property
    def carrier(self) -> Carrier:
        return Carrier(self.k)

    def __call__(self, args: Sequence[int]) -> int:
        if len(args) != self.arity:
            raise DomainError(f"expected {self.arity} arguments, got {len(args)}")
        return self.table[self.carrier.encode(args)]

    def at_index(self, index: int) -> int:
        return self.table[index]

    def sort_key(self):
        return (self.arity, self.table)


def all_operations(carrier: Carrier, arity: int) -> Iterator[Operation]:
    """All k^(k^arity) operations of the given arity, table-lexicographic order."""
    for table in itertools.product(range(carrier.k), repeat=carrier.num_tuples(arity)):
        yield Operation(carrier.k, arity, table)


def projection(n: int, i: int, carrier: Carrier) -> Operation:
    """The n-ary projection onto coordinate i.  There are no nullary projections."""
    if n < 1:
        raise DomainError("no nullary projections exist")
    if not 0 <= i < n:
        raise DomainError(f"projection coordinate {i} out of range for arity {n}")
    table = tuple(t[i] for t in carrier.tuples(n))
    return Operation(carrier.k, n, table)


def identity_op(carrier: Carrier) -> Operation:
    return projection(1, 0, carrier)


def is_projection(f: Operation) -> bool:
    if f.arity < 1:
        return False
    carrier = f.carrier
    return any(f == projection(f.arity, i, carrier) for i in range(f.arity))


def projections_upto(carrier: Carrier, max_arity: int) -> list[Operation]:
    return [
        projection(n, i, carrier)
        for n in range(1, max_arity + 1)
        for i in range(n)
    ]


def polymer(alpha: Sequence[int], f: Operation, m: int) -> Operation:
    """Re-index the arguments of f via alpha: n -> m, giving x -> f(x o alpha)."""
    if len(alpha) != f.arity:
        raise DomainError(f"index map has length {len(alpha)}, operation arity {f.arity}")
    if m < 0:
        raise DomainError("target arity must be >= 0")
    for a in alpha:
        if not 0 <= a < m:
            raise DomainError(f"index map value {a} out of range for target arity {m}")
    carrier = f.carrier
    table = tuple(f(tuple(x[a] for a in alpha)) for x in carrier.tuples(m))
    return Operation(f.k, m, table)


def compose(f: Operation, gs: Sequence[Operation], target_arity: int | None = None) -> Operation:
    """f o (g_0,...,g_{n-1}).  All gs share an arity m; the result is m-ary.

    For n = 0 the inner arity is unconstrained, so target_arity must be given.
    """
    if len(gs) != f.arity:
        raise DomainError(f"need {f.arity} inner operations, got {len(gs)}")
    if gs:
        m = gs[0].arity
        if any(g.arity != m for g in gs):
            raise DomainError("inner operations must share a common arity")
        if any(g.k != f.k for g in gs):
            raise DomainError("carrier mismatch in composition")
        if target_arity is not None and target_arity != m:
            raise DomainError("target arity conflicts with inner operation arity")
    else:
        if target_arity is None:
            raise DomainError("nullary composition requires an explicit target arity")
        m = target_arity
    carrier = f.carrier
    table = tuple(f(tuple(g(x) for g in gs)) for x in carrier.tuples(m))
    return Operation(f.k, m, table)


@dataclass(frozen=True, order=True)
class Relation:
    """An m-ary relation, stored as a bit mask over the k^m encoded tuples."""

    k: int
    arity: int
    mask: int

    def __post_init__(self):
        if self.arity < 0:
            raise DomainError("relation arity must be >= 0")
        limit = 1 << (self.k ** self.arity)
        if not 0 <= self.mask < limit:
            raise DomainError("relation mask has bits outside the tuple range")

    @classmethod
    def from_indices(cls, k: int, arity: int, indices: Iterable[int]) -> Relation:
        mask = 0
        limit = k ** arity
        for i in indices:
            if not 0 <= i < limit:
                raise DomainError(f"tuple index {i} out of range for arity {arity}")
            mask |= 1 << i
        return cls(k, arity, mask)

    @classmethod
    def from_tuples(cls, carrier: Carrier, arity: int, tuples: Iterable[Sequence[int]]) -> Relation:
        idxs = []
        for t in tuples:
            if len(t) != arity:
                raise DomainError(f"tuple {tuple(t)} does not have arity {arity}")
            idxs.append(carrier.encode(t))
        return cls.from_indices(carrier.k, arity, idxs)

    @classmethod
    def empty(cls, k: int, arity: int) -> Relation:
        return cls(k, arity, 0)

    @classmethod
    def full(cls, k: int, arity: int) -> Relation:
        return cls(k, arity, (1 << (k ** arity)) - 1)

    @property
    def carrier(self) -> Carrier:
        return Carrier(self.k)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    def indices(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def tuples(self) -> Iterator[tuple[int, ...]]:
        carrier = self.carrier
        for i in self.indices():
            yield carrier.decode(i, self.arity)

    def issubset(self, other: Relation) -> bool:
        if (self.k, self.arity) != (other.k, other.arity):
            raise DomainError("relation comparison requires equal carrier and arity")
        return self.mask & ~other.mask == 0

    def union(self, other: Relation) -> Relation:
        if (self.k, self.arity) != (other.k, other.arity):
            raise DomainError("relation union requires equal carrier and arity")
        return Relation(self.k, self.arity, self.mask | other.mask)

    def intersection(self, other: Relation) -> Relation:
        if (self.k, self.arity) != (other.k, other.arity):
            raise DomainError("relation intersection requires equal carrier and arity")
        return Relation(self.k, self.arity, self.mask & other.mask)

    def sort_key(self):
        return (self.arity, self.mask)


@dataclass(frozen=True, order=True)
class RelationPair:
    """A pair (rho, rho') with rho' a subset of rho, both of the same arity.

    The arity is part of the identity: the empty pair at arity 1 differs from
    the empty pair at arity 2.
    """

    k: int
    arity: int
    rho: Relation
    rho_prime: Relation

    def __post_init__(self):
        if self.rho.arity != self.arity or self.rho_prime.arity != self.arity:
            raise DomainError("pair components must match the pair arity")
        if self.rho.k != self.k or self.rho_prime.k != self.k:
            raise DomainError("pair components must share the pair carrier")
        if self.rho_prime.mask & ~self.rho.mask:
            raise DomainError("rho_prime not a subset of rho")

    @classmethod
    def of(cls, rho: Relation, rho_prime: Relation) -> RelationPair:
        return cls(rho.k, rho.arity, rho, rho_prime)

    @classmethod
    def identical(cls, rho: Relation) -> RelationPair:
        return cls(rho.k, rho.arity, rho, rho)

    @property
    def carrier(self) -> Carrier:
        return Carrier(self.k)

    def is_identical(self) -> bool:
        return self.rho.mask == self.rho_prime.mask

    def sort_key(self):
        return (self.arity, self.rho.mask, self.rho_prime.mask)


def all_relations(carrier: Carrier, arity: int) -> Iterator[Relation]:
    for mask in range(1 << carrier.num_tuples(arity)):
        yield Relation(carrier.k, arity, mask)


def all_pairs(carrier: Carrier, arity: int) -> Iterator[RelationPair]:
    """All 3^(k^arity) relation pairs of the given arity, canonical order."""
    for rho in all_relations(carrier, arity):
        sub = rho.mask
        # iterate submasks of rho.mask, ascending
        subs = []
        s = rho.mask
        while True:
            subs.append(s)
            if s == 0:
                break
            s = (s - 1) & rho.mask
        for s in sorted(subs):
            yield RelationPair(carrier.k, arity, rho, Relation(carrier.k, arity, s))


def pair_leq(p: RelationPair, q: RelationPair) -> bool:
    """Componentwise inclusion order on pairs of equal arity."""
    if (p.k, p.arity) != (q.k, q.arity):
        raise DomainError("pair comparison requires equal carrier and arity")
    return p.rho.issubset(q.rho) and p.rho_prime.issubset(q.rho_prime)


def pair_qleq(p: RelationPair, q: RelationPair) -> bool:
    """Quasiorder comparing only the first components."""
    if (p.k, p.arity) != (q.k, q.arity):
        raise DomainError("pair comparison requires equal carrier and arity")
    return p.rho.issubset(q.rho)


class OpFamily:
    """A deduplicated, canonically ordered finite family of operations.

    Iteration order is arity ascending, then table lexicographic; equality is
    set equality.
    """

    __slots__ = ("ops", "_set")

    def __init__(self, ops: Iterable[Operation] = ()):
        items = sorted(set(ops), key=Operation.sort_key)
        object.__setattr__(self, "ops", tuple(items))
        object.__setattr__(self, "_set", frozenset(items))

    def __iter__(self) -> Iterator[Operation]:
        return iter(self.ops)

    def __len__(self) -> int:
        return len(self.ops)

    def __contains__(self, f: Operation) -> bool:
        return f in self._set

    def __eq__(self, other) -> bool:
        return isinstance(other, OpFamily) and self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"OpFamily({list(self.ops)!r})"

    def part(self, arity: int) -> "OpFamily":
        return OpFamily(f for f in self.ops if f.arity == arity)

    def upto(self, arity: int) -> "OpFamily":
        return OpFamily(f for f in self.ops if f.arity <= arity)

    def arities(self) -> list[int]:
        return sorted({f.arity for f in self.ops})

    def union(self, other: Iterable[Operation]) -> "OpFamily":
        return OpFamily(itertools.chain(self.ops, other))

    def difference(self, other: Iterable[Operation]) -> "OpFamily":
        drop = set(other)
        return OpFamily(f for f in self.ops if f not in drop)

    def issubset(self, other: "OpFamily") -> bool:
        return self._set <= other._set


class PairFamily:
    """A deduplicated, canonically ordered finite family of relation pairs."""

    __slots__ = ("pairs", "_set")

    def __init__(self, pairs: Iterable[RelationPair] = ()):
        items = sorted(set(pairs), key=RelationPair.sort_key)
        object.__setattr__(self, "pairs", tuple(items))
        object.__setattr__(self, "_set", frozenset(items))

    def __iter__(self) -> Iterator[RelationPair]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, p: RelationPair) -> bool:
        return p in self._set

    def __eq__(self, other) -> bool:
        return isinstance(other, PairFamily) and self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"PairFamily({list(self.pairs)!r})"

    def part(self, arity: int) -> "PairFamily":
        return PairFamily(p for p in self.pairs if p.arity == arity)

    def upto(self, arity: int) -> "PairFamily":
        return PairFamily(p for p in self.pairs if p.arity <= arity)

    def arities(self) -> list[int]:
        return sorted({p.arity for p in self.pairs})

    def union(self, other: Iterable[RelationPair]) -> "PairFamily":
        return PairFamily(itertools.chain(self.pairs, other))

    def issubset(self, other: "PairFamily") -> bool:
        return self._set <= other._set


def relaxations_of(p: RelationPair) -> PairFamily:
    """All (sigma, sigma') with rho' <= sigma' <= sigma <= rho, same arity."""
    k, m = p.k, p.arity
    lo, hi = p.rho_prime.mask, p.rho.mask
    free = hi & ~lo
    out = []
    # sigma ranges over supersets of lo within hi
    s = free
    while True:
        sigma = lo | s
        inner = sigma & ~lo
        t = inner
        while True:
            sigma_prime = lo | t
            out.append(
                RelationPair(k, m, Relation(k, m, sigma), Relation(k, m, sigma_prime))
            )
            if t == 0:
                break
            t = (t - 1) & inner
        if s == 0:
            break
        s = (s - 1) & free
    return PairFamily(out)


def enc(Q: Iterable[RelationPair]) -> PairFamily:
    """Closure of a family under relaxation (extensive, monotone, idempotent)."""
    out: set[RelationPair] = set()
    for p in Q:
        out.update(relaxations_of(p))
    return PairFamily(out)
