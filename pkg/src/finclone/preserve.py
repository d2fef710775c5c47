"""Preservation predicate, brute-force Galois maps between operations and
relation pairs, their classical specialisations, and the operation-side
interpolation closures.

This module is the trusted oracle: everything is computed by definition-level
enumeration, with complexity caps that refuse rather than truncate.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterable

from .core import (
    Carrier,
    CapExceeded,
    DomainError,
    DEFAULT_CAP,
    OpFamily,
    Operation,
    PairFamily,
    Relation,
    RelationPair,
    all_operations,
    all_pairs,
    check_cap,
)


@lru_cache(maxsize=None)
def op_image_mask(f: Operation, rho: Relation) -> int:
    """Bit mask of { f applied row-wise to an n-column matrix over rho }.

    Each choice of n members of rho forms a matrix whose rows are fed to f;
    the resulting m-tuple is collected.  With n = 0 this yields the constant
    tuple (f(),...,f()); with rho empty and n > 0 it yields nothing.
    """
    if f.k != rho.k:
        raise DomainError("carrier mismatch between operation and relation")
    carrier = f.carrier
    members = [carrier.decode(i, rho.arity) for i in rho.indices()]
    out = 0
    for cols in itertools.product(members, repeat=f.arity):
        image = tuple(f(tuple(col[row] for col in cols)) for row in range(rho.arity))
        out |= 1 << carrier.encode(image)
    return out


def preserves(f: Operation, p: RelationPair) -> bool:
    """True iff every row-wise application of f to columns from p.rho lands
    in p.rho_prime."""
    if f.k != p.k:
        raise DomainError("carrier mismatch between operation and pair")
    return op_image_mask(f, p.rho) & ~p.rho_prime.mask == 0


def polp(Q: Iterable[RelationPair], n: int, k: int, cap: int = DEFAULT_CAP) -> OpFamily:
    """All n-ary operations preserving every pair in Q, by enumerating all
    k^(k^n) value tables."""
    if n < 0:
        raise DomainError("arity must be >= 0")
    carrier = Carrier(k)
    check_cap("polp table enumeration", k ** carrier.num_tuples(n), cap)
    pairs = list(Q)
    for p in pairs:
        if p.k != k:
            raise DomainError("carrier mismatch in pair family")
    # group the constraints: for fixed rho only the tightest rho' matters
    tightest: dict[Relation, int] = {}
    for p in pairs:
        prev = tightest.get(p.rho)
        tightest[p.rho] = p.rho_prime.mask if prev is None else prev & p.rho_prime.mask
    out = []
    for f in all_operations(carrier, n):
        if all(op_image_mask(f, rho) & ~allowed == 0 for rho, allowed in tightest.items()):
            out.append(f)
    return OpFamily(out)


def invp(F: Iterable[Operation], m: int, k: int, cap: int = DEFAULT_CAP) -> PairFamily:
    """All m-ary relation pairs preserved by every operation in F, by
    enumerating all 3^(k^m) candidates."""
    if m < 0:
        raise DomainError("arity must be >= 0")
    carrier = Carrier(k)
    check_cap("invp pair enumeration", 3 ** carrier.num_tuples(m), cap)
    ops = list(F)
    for f in ops:
        if f.k != k:
            raise DomainError("carrier mismatch in operation family")
    out = []
    for rho in (Relation(k, m, mask) for mask in range(1 << carrier.num_tuples(m))):
        # the union of images is the least admissible rho'
        need = 0
        for f in ops:
            need |= op_image_mask(f, rho)
            if need & ~rho.mask:
                break
        if need & ~rho.mask:
            continue
        free = rho.mask & ~need
        s = free
        while True:
            out.append(RelationPair(k, m, rho, Relation(k, m, need | s)))
            if s == 0:
                break
            s = (s - 1) & free
    return PairFamily(out)


def invp_upto(F: Iterable[Operation], max_arity: int, k: int, cap: int = DEFAULT_CAP) -> PairFamily:
    """Disjoint-union convenience wrapper: all invariant pairs of arity <= max_arity."""
    ops = list(F)
    out: list[RelationPair] = []
    for m in range(max_arity + 1):
        out.extend(invp(ops, m, k, cap))
    return PairFamily(out)


def polp_upto(Q: Iterable[RelationPair], max_arity: int, k: int, cap: int = DEFAULT_CAP) -> OpFamily:
    """All polymorphisms of Q of arity <= max_arity."""
    pairs = list(Q)
    out: list[Operation] = []
    for n in range(max_arity + 1):
        out.extend(polp(pairs, n, k, cap))
    return OpFamily(out)


def pol(Q1: Iterable[Relation], n: int, k: int, cap: int = DEFAULT_CAP) -> OpFamily:
    """Classical polymorphisms: operations preserving each relation as the
    identical pair (rho, rho)."""
    return polp([RelationPair.identical(rho) for rho in Q1], n, k, cap)


def inv(F: Iterable[Operation], m: int, k: int, cap: int = DEFAULT_CAP) -> list[Relation]:
    """Classical invariant relations: rho with (rho, rho) invariant."""
    ops = list(F)
    return sorted(
        (p.rho for p in invp(ops, m, k, cap) if p.is_identical()),
        key=Relation.sort_key,
    )


def sloc_ops(F: Iterable[Operation], s: int, n: int, k: int, cap: int = DEFAULT_CAP) -> OpFamily:
    """Operations agreeing with some member of F^(n) on every subset of A^n
    of size <= s.

    Only subsets of size exactly min(s, k^n) are checked: agreement on a
    larger set implies agreement on all of its subsets, so the result is
    identical to quantifying over all sizes <= s.
    """
    if s < 0:
        raise DomainError("locality parameter must be >= 0")
    carrier = Carrier(k)
    fs = [f for f in F if f.arity == n]
    for f in fs:
        if f.k != k:
            raise DomainError("carrier mismatch in operation family")
    domain = carrier.num_tuples(n)
    size = min(s, domain)
    if size == 0:
        return OpFamily(all_operations(carrier, n)) if fs else OpFamily()
    check_cap("sloc_ops subset enumeration", math.comb(domain, size) * (k ** domain), cap)
    subsets = list(itertools.combinations(range(domain), size))
    out = []
    for g in all_operations(carrier, n):
        ok = True
        for B in subsets:
            if not any(all(f.table[i] == g.table[i] for i in B) for f in fs):
                ok = False
                break
        if ok:
            out.append(g)
    return OpFamily(out)


def loc_ops(F: Iterable[Operation], n: int, k: int, cap: int = DEFAULT_CAP) -> OpFamily:
    """Finite-carrier local closure: interpolation on the whole of A^n."""
    return sloc_ops(F, Carrier(k).num_tuples(n), n, k, cap)
