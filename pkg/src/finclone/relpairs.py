"""Superposition of relation pairs, its elementary specialisations, bounded
generation of relation pair clones, the pair-side interpolation closures
sLOC/LOC, and directed-family utilities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    Carrier,
    DEFAULT_CAP,
    DomainError,
    PairFamily,
    Relation,
    RelationPair,
    check_cap,
)


@dataclass(frozen=True)
class SuperpositionSpec:
    """A finite variable scheme: mu fresh variables, target arity m with an
    output map beta: m -> mu, and one input map alpha_i: m_i -> mu per input
    pair."""

    mu: int
    m: int
    beta: tuple[int, ...]
    alphas: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.mu < 0 or self.m < 0:
            raise DomainError("variable counts must be >= 0")
        if len(self.beta) != self.m:
            raise DomainError("output map length must equal the target arity")
        for v in self.beta:
            if not 0 <= v < self.mu:
                raise DomainError("output map value outside the variable scheme")
        for alpha in self.alphas:
            for v in alpha:
                if not 0 <= v < self.mu:
                    raise DomainError("input map value outside the variable scheme")


def _superpose_relations(
    spec: SuperpositionSpec, rels: Sequence[Relation], k: int, cap: int
) -> Relation:
    carrier = Carrier(k)
    check_cap("superposition assignment space", k ** spec.mu, cap)
    decoded = [
        (alpha, frozenset(rel.indices()))
        for alpha, rel in zip(spec.alphas, rels)
    ]
    out = 0
    for a in carrier.tuples(spec.mu):
        ok = True
        for alpha, members in decoded:
            if carrier.encode(tuple(a[v] for v in alpha)) not in members:
                ok = False
                break
        if ok:
            out |= 1 << carrier.encode(tuple(a[v] for v in spec.beta))
    return Relation(k, spec.m, out)


def general_superposition(
    spec: SuperpositionSpec,
    pairs: Sequence[RelationPair],
    k: int,
    cap: int = DEFAULT_CAP,
) -> RelationPair:
    """Combine relation pairs through a common variable scheme, applied
    componentwise: the result collects a o beta over all assignments a whose
    restrictions a o alpha_i hit the respective components."""
    if len(pairs) != len(spec.alphas):
        raise DomainError("number of input pairs must match the number of input maps")
    for p, alpha in zip(pairs, spec.alphas):
        if p.k != k:
            raise DomainError("carrier mismatch in superposition")
        if p.arity != len(alpha):
            raise DomainError(
                f"input map of length {len(alpha)} applied to a pair of arity {p.arity}"
            )
    rho = _superpose_relations(spec, [p.rho for p in pairs], k, cap)
    rho_prime = _superpose_relations(spec, [p.rho_prime for p in pairs], k, cap)
    return RelationPair(k, spec.m, rho, rho_prime)


def permute(p: RelationPair, pi: Sequence[int], cap: int = DEFAULT_CAP) -> RelationPair:
    """Reorder coordinates: output coordinate j reads input coordinate pi(j)."""
    m = p.arity
    if sorted(pi) != list(range(m)):
        raise DomainError("coordinate permutation must be a bijection on the arity")
    spec = SuperpositionSpec(m, m, tuple(pi), (tuple(range(m)),))
    return general_superposition(spec, [p], p.k, cap)


def identify(p: RelationPair, merge: Sequence[int], target_arity: int, cap: int = DEFAULT_CAP) -> RelationPair:
    """Identify coordinates via a surjection merge: arity -> target_arity."""
    if len(merge) != p.arity:
        raise DomainError("merge map length must equal the pair arity")
    if set(merge) != set(range(target_arity)):
        raise DomainError("merge map must be onto the target coordinates")
    spec = SuperpositionSpec(target_arity, target_arity, tuple(range(target_arity)), (tuple(merge),))
    return general_superposition(spec, [p], p.k, cap)


def add_fictitious(p: RelationPair, positions: Sequence[int], cap: int = DEFAULT_CAP) -> RelationPair:
    """Insert unconstrained coordinates at the given output positions."""
    m_out = p.arity + len(positions)
    positions = sorted(positions)
    if len(set(positions)) != len(positions):
        raise DomainError("duplicate insertion positions")
    for pos in positions:
        if not 0 <= pos < m_out:
            raise DomainError(f"insertion position {pos} out of range")
    old_of_new = [v for v in range(m_out) if v not in positions]
    alpha = tuple(old_of_new)
    spec = SuperpositionSpec(m_out, m_out, tuple(range(m_out)), (alpha,))
    return general_superposition(spec, [p], p.k, cap)


def project_onto(p: RelationPair, coords: Sequence[int], cap: int = DEFAULT_CAP) -> RelationPair:
    """Keep only the listed coordinates (in the listed order)."""
    for c in coords:
        if not 0 <= c < p.arity:
            raise DomainError(f"coordinate {c} out of range for arity {p.arity}")
    spec = SuperpositionSpec(p.arity, len(coords), tuple(coords), (tuple(range(p.arity)),))
    return general_superposition(spec, [p], p.k, cap)


def intersect(p: RelationPair, q: RelationPair, cap: int = DEFAULT_CAP) -> RelationPair:
    """Componentwise intersection of two pairs of equal arity."""
    if p.arity != q.arity:
        raise DomainError("intersection requires equal arity")
    m = p.arity
    ident = tuple(range(m))
    spec = SuperpositionSpec(m, m, ident, (ident, ident))
    return general_superposition(spec, [p, q], p.k, cap)


def diagonal(m: int, i: int, j: int, k: int, cap: int = DEFAULT_CAP) -> RelationPair:
    """The m-ary identical pair of tuples whose coordinates i and j agree.
    Produced from no inputs (an empty-index superposition)."""
    if not (0 <= i < m and 0 <= j < m):
        raise DomainError("diagonal coordinates out of range")
    beta = []
    drop = max(i, j)
    keep = min(i, j)
    fresh = 0
    var_of = {}
    for c in range(m):
        if c == drop and i != j:
            continue
        var_of[c] = fresh
        fresh += 1
    for c in range(m):
        if c == drop and i != j:
            beta.append(var_of[keep])
        else:
            beta.append(var_of[c])
    spec = SuperpositionSpec(fresh, m, tuple(beta), ())
    return general_superposition(spec, [], k, cap)


def full_pair(m: int, k: int, cap: int = DEFAULT_CAP) -> RelationPair:
    """The m-ary identical pair on all tuples, from an empty-index
    superposition; at m = 0 this is the pair on the empty tuple alone."""
    spec = SuperpositionSpec(m, m, tuple(range(m)), ())
    return general_superposition(spec, [], k, cap)


@dataclass(frozen=True)
class RpCloneResult:
    """Closure outcome restricted to the target arity window, with the
    intermediate arity cap used and whether the last cap increment changed
    the restricted slice."""

    pairs: PairFamily
    intermediate_cap: int
    slice_changed_at_last_cap: bool


def _closure_maps(c: int, k: int) -> dict[int, dict]:
    """Precomputed index maps turning the unary elementary operations into
    mask transforms, one table per arity up to the intermediate cap."""
    carrier = Carrier(k)
    maps: dict[int, dict] = {}
    for m in range(c + 1):
        tups = list(carrier.tuples(m))
        entry: dict = {"swaps": [], "idents": [], "drops": [], "fict": None}
        for i in range(m - 1):
            entry["swaps"].append(
                [carrier.encode(t[:i] + (t[i + 1], t[i]) + t[i + 2:]) for t in tups]
            )
        for i in range(m):
            for j in range(i + 1, m):
                merge = []
                fresh = 0
                for cpos in range(m):
                    if cpos == j:
                        merge.append(-1)
                    else:
                        merge.append(fresh)
                        fresh += 1
                merge[j] = merge[i]
                entry["idents"].append(
                    [carrier.encode(tuple(u[merge[cpos]] for cpos in range(m)))
                     for u in carrier.tuples(m - 1)]
                )
        for d in range(m):
            entry["drops"].append(
                [carrier.encode(t[:d] + t[d + 1:]) for t in tups]
            )
        if m < c:
            entry["fict"] = [carrier.encode(u[:-1]) for u in carrier.tuples(m + 1)]
        maps[m] = entry
    return maps


def _via_dest(mask: int, dest: list[int]) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << dest[low.bit_length() - 1]
        mask ^= low
    return out


def _via_src(mask: int, src_of: list[int]) -> int:
    out = 0
    for t_idx, s in enumerate(src_of):
        if mask >> s & 1:
            out |= 1 << t_idx
    return out


def _rpclone_closure(
    seed: Iterable[RelationPair], c: int, k: int, cap: int, max_pairs: int
) -> set[RelationPair]:
    check_cap("rpclone tuple space", k ** c, cap)
    maps = _closure_maps(c, k)
    carrier = Carrier(k)
    # masks only inside the engine; objects are rebuilt once at the end
    current: set[tuple[int, int, int]] = {
        (p.arity, p.rho.mask, p.rho_prime.mask) for p in seed if p.arity <= c
    }
    for m in range(c + 1):
        tups = list(carrier.tuples(m))
        full = (1 << len(tups)) - 1
        current.add((m, full, full))
        for i in range(m):
            for j in range(i + 1, m):
                diag = 0
                for idx, t in enumerate(tups):
                    if t[i] == t[j]:
                        diag |= 1 << idx
                current.add((m, diag, diag))
    frontier = set(current)
    while frontier:
        new: set[tuple[int, int, int]] = set()
        for m, rho, rho_p in frontier:
            entry = maps[m]
            for dest in entry["swaps"]:
                new.add((m, _via_dest(rho, dest), _via_dest(rho_p, dest)))
            for src_of in entry["idents"]:
                new.add((m - 1, _via_src(rho, src_of), _via_src(rho_p, src_of)))
            for dest in entry["drops"]:
                new.add((m - 1, _via_dest(rho, dest), _via_dest(rho_p, dest)))
            if entry["fict"] is not None:
                new.add((m + 1, _via_src(rho, entry["fict"]),
                         _via_src(rho_p, entry["fict"])))
        # intersection closure on masks directly; agrees with the
        # superposition-based intersect (tested both ways)
        by_arity: dict[int, list[tuple[int, int]]] = {}
        for m, rho, rho_p in current:
            by_arity.setdefault(m, []).append((rho, rho_p))
        for m, rho, rho_p in frontier:
            for q_rho, q_rho_p in by_arity.get(m, ()):
                new.add((m, rho & q_rho, rho_p & q_rho_p))
        new -= current
        current |= new
        if len(current) > max_pairs:
            check_cap("rpclone closure size", len(current), max_pairs)
        frontier = new
    return {
        RelationPair(k, m, Relation(k, m, rho), Relation(k, m, rho_p))
        for m, rho, rho_p in current
    }


def rpclone_generate(
    Q: Iterable[RelationPair],
    target_cap: int,
    intermediate_cap: int | None = None,
    k: int | None = None,
    cap: int = DEFAULT_CAP,
    max_pairs: int = 200_000,
) -> RpCloneResult:
    """Close Q under coordinate permutation, identification, dropping a
    coordinate, fictitious coordinates, binary intersection, and the
    from-nothing diagonal and full pairs, keeping every intermediate result
    at arity <= intermediate_cap, then restrict to arity <= target_cap.

    For a fixed intermediate cap this computes a subset of the full closure;
    it is monotone in the cap, and the result records whether raising the cap
    by one more step would still change the restricted slice.  Empty pairs
    are never injected; they appear only when derivable from Q.
    """
    seed = list(Q)
    if k is None:
        if not seed:
            raise DomainError("carrier size required when Q is empty")
        k = seed[0].k
    for p in seed:
        if p.k != k:
            raise DomainError("carrier mismatch in pair family")
    c = intermediate_cap if intermediate_cap is not None else target_cap + 2
    if c < target_cap:
        raise DomainError("intermediate cap must be >= target cap")
    closed = _rpclone_closure(seed, c, k, cap, max_pairs)
    restricted = PairFamily(p for p in closed if p.arity <= target_cap)
    if c > target_cap:
        smaller = _rpclone_closure(seed, c - 1, k, cap, max_pairs)
        smaller_restricted = PairFamily(p for p in smaller if p.arity <= target_cap)
        changed = smaller_restricted != restricted
    else:
        changed = True
    return RpCloneResult(restricted, c, changed)


def rpclone_generate_stable(
    Q: Iterable[RelationPair],
    target_cap: int,
    k: int | None = None,
    cap: int = DEFAULT_CAP,
    max_intermediate: int | None = None,
    max_pairs: int = 200_000,
) -> RpCloneResult:
    """Raise the intermediate cap from the target arity until the restricted
    slice is unchanged for two consecutive increments; the earliest possible
    stop is the default cap target + 2."""
    seed = list(Q)
    if k is None:
        if not seed:
            raise DomainError("carrier size required when Q is empty")
        k = seed[0].k
    if max_intermediate is None:
        max_intermediate = target_cap + 3
    slices: list[PairFamily] = []
    c = target_cap
    while c <= max_intermediate:
        closed = _rpclone_closure(seed, c, k, cap, max_pairs)
        slices.append(PairFamily(p for p in closed if p.arity <= target_cap))
        if len(slices) >= 3 and slices[-1] == slices[-2] == slices[-3]:
            return RpCloneResult(slices[-1], c, False)
        c += 1
    return RpCloneResult(slices[-1], c - 1, True)


def sloc_pairs(
    Q: Iterable[RelationPair], s: int, m: int, k: int, cap: int = DEFAULT_CAP
) -> PairFamily:
    """All m-ary (sigma, sigma') such that every subset of sigma of size <= s
    is covered by the first component of some m-ary member of Q whose second
    component lies inside sigma'."""
    if s < 0:
        raise DomainError("locality parameter must be >= 0")
    carrier = Carrier(k)
    check_cap("sloc_pairs candidate enumeration", 3 ** carrier.num_tuples(m), cap)
    qm = [(p.rho.mask, p.rho_prime.mask) for p in Q if p.arity == m]
    out = []
    for sigma_mask in range(1 << carrier.num_tuples(m)):
        members = [i for i in range(carrier.num_tuples(m)) if sigma_mask >> i & 1]
        size = min(s, len(members))
        subsets = [
            sum(1 << i for i in B) for B in itertools.combinations(members, size)
        ]
        # witnesses usable inside a given sigma' are those with rho' <= sigma';
        # enumerate sigma' as submasks of sigma
        sub = sigma_mask
        while True:
            usable = [rho for rho, rho_p in qm if rho_p & ~sub == 0]
            ok = all(any(B & ~rho == 0 for rho in usable) for B in subsets)
            if ok:
                out.append(
                    RelationPair(k, m, Relation(k, m, sigma_mask), Relation(k, m, sub))
                )
            if sub == 0:
                break
            sub = (sub - 1) & sigma_mask
    return PairFamily(out)


def loc_pairs(Q: Iterable[RelationPair], m: int, k: int, cap: int = DEFAULT_CAP) -> PairFamily:
    """Finite-carrier local closure for pairs: covering subsets up to the
    full tuple count."""
    return sloc_pairs(Q, Carrier(k).num_tuples(m), m, k, cap)


def is_s_directed(T: Iterable[RelationPair], s: int, cap: int = DEFAULT_CAP) -> bool:
    """True iff for every choice of at most s tuples, each drawn from the
    first component of some member, a single member's first component
    contains them all."""
    pairs = list(T)
    if not pairs:
        return False
    arities = {p.arity for p in pairs}
    if len(arities) > 1:
        raise DomainError("directedness requires a single arity")
    firsts = [p.rho.mask for p in pairs]
    union = 0
    for mask in firsts:
        union |= mask
    members = [i for i in range(union.bit_length()) if union >> i & 1]
    for t in range(min(s, len(members)) + 1):
        for combo in itertools.combinations(members, t):
            picked = sum(1 << i for i in combo)
            # only choices where each tuple lies in some first component matter,
            # and every member of the union does by construction
            if not any(picked & ~mask == 0 for mask in firsts):
                return False
    return True


def union_family(T: Iterable[RelationPair]) -> RelationPair:
    """Componentwise union of a non-empty single-arity family."""
    pairs = list(T)
    if not pairs:
        raise DomainError("union of an empty family is undefined")
    arities = {p.arity for p in pairs}
    if len(arities) > 1:
        raise DomainError("union requires a single arity")
    k, m = pairs[0].k, pairs[0].arity
    rho = 0
    rho_p = 0
    for p in pairs:
        rho |= p.rho.mask
        rho_p |= p.rho_prime.mask
    return RelationPair(k, m, Relation(k, m, rho), Relation(k, m, rho_p))
