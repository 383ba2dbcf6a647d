"""Toric ideals of neural codes and their Groebner bases.

The toric ideal is the kernel of the monomial map sending the codeword
variable y_c to the product of the neuron variables x_i, i in c.  All
ideals here are generated by pure-difference binomials, so Buchberger's
algorithm works entirely on exponent vectors: S-polynomials and
reductions of binomials are again binomials, with coefficients +-1.

Variables are tagged ("x", i) for neuron variables and ("y", c) for
codeword variables, c a sorted tuple of neuron indices.  A PolyRing
fixes a tuple of variables; monomials are exponent tuples over it.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .codes import NeuralCode, word_key
from .piercing import enumerate_pierced_codes


class ResourceCapExceeded(Exception):
    """Buchberger exceeded its S-pair or degree cap."""


def yvar(c) -> tuple:
    return ("y", tuple(sorted(c)))


def xvar(i: int) -> tuple:
    return ("x", i)


def var_str(v: tuple) -> str:
    if v[0] == "x":
        return f"x{v[1]}"
    return "y_{" + "".join(str(i) for i in v[1]) + "}"


@dataclass(frozen=True)
class PolyRing:
    variables: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {v: i for i, v in enumerate(self.variables)}
        )

    def index(self, v) -> int:
        return self._index[v]

    def monomial(self, powers: dict) -> tuple:
        exps = [0] * len(self.variables)
        for v, e in powers.items():
            exps[self._index[v]] += e
        return tuple(exps)

    def one(self) -> tuple:
        return (0,) * len(self.variables)

    def monomial_str(self, m: tuple) -> str:
        parts = []
        for v, e in zip(self.variables, m):
            if e == 1:
                parts.append(var_str(v))
            elif e > 1:
                parts.append(f"{var_str(v)}^{e}")
        return "*".join(parts) if parts else "1"


def codeword_ring(code: NeuralCode) -> PolyRing:
    """Ring on y_c for the nonempty codewords, in the codeword order."""
    nonempty = sorted((c for c in code.words if c), key=word_key)
    return PolyRing(tuple(yvar(c) for c in nonempty))


def neuron_indices(code: NeuralCode):
    present = sorted({i for c in code.words for i in c})
    return present


def elimination_ring(code: NeuralCode) -> PolyRing:
    xs = tuple(xvar(i) for i in neuron_indices(code))
    ys = codeword_ring(code).variables
    return PolyRing(xs + ys)


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """Base: a total order on exponent tuples of one ring.

    ``sort_key`` maps a monomial to a tuple that compares consistently
    with the order; larger key means larger monomial.
    """

    ring: PolyRing
    key: tuple  # hashable identity, used for GB caching

    def sort_key(self, m: tuple) -> tuple:
        raise NotImplementedError

    def greater(self, a: tuple, b: tuple) -> bool:
        return self.sort_key(a) > self.sort_key(b)


class CodewordLexOrder(MonomialOrder):
    """Lex on codeword variables, induced by the codeword order.

    The variable of the codeword-order-largest codeword is most
    significant; this orientation makes y_12 smaller than y_1*y_2,
    since {1,2} precedes {2}.
    """

    def __init__(self, ring: PolyRing):
        self.ring = ring
        ranked = sorted(
            range(len(ring.variables)),
            key=lambda i: self._var_rank(ring.variables[i]),
            reverse=True,
        )
        self._significance = tuple(ranked)
        self.key = ("lex_codeword",)

    @staticmethod
    def _var_rank(v):
        if v[0] == "y":
            return word_key(frozenset(v[1]))
        raise ValueError("codeword lex order is defined on codeword variables only")

    def sort_key(self, m: tuple) -> tuple:
        return tuple(m[i] for i in self._significance)


class ListedLexOrder(MonomialOrder):
    """Lex induced by an explicit codeword listing.

    ``ascending=True`` ranks the last-listed codeword's variable most
    significant (the orientation consistent with the codeword-order
    lex); ``ascending=False`` flips it.
    """

    def __init__(self, ring: PolyRing, listing: Iterable, ascending: bool = True):
        self.ring = ring
        pos = {yvar(c): i for i, c in enumerate(listing)}
        ranked = sorted(
            range(len(ring.variables)),
            key=lambda i: pos[ring.variables[i]],
            reverse=ascending,
        )
        self._significance = tuple(ranked)
        self.key = ("listed_lex", tuple(sorted(pos.items())), ascending)

    def sort_key(self, m: tuple) -> tuple:
        return tuple(m[i] for i in self._significance)


class WeightedGrevlexOrder(MonomialOrder):
    """Weight vector first, then total degree, then reverse lex.

    Variables are ranked canonically by (weight ascending? no:) the
    ring's variable listing; reverse lex compares the last differing
    exponent, smaller exponent winning.
    """

    def __init__(self, ring: PolyRing, weights):
        self.ring = ring
        if callable(weights):
            w = tuple(weights(v) for v in ring.variables)
        else:
            w = tuple(weights)
            if len(w) != len(ring.variables):
                raise ValueError("weight vector length mismatch")
        self.weights = w
        self.key = ("wgrevlex", w)

    def sort_key(self, m: tuple) -> tuple:
        wdeg = sum(wi * e for wi, e in zip(self.weights, m))
        return (wdeg, sum(m), tuple(-e for e in reversed(m)))


def two_subset_weights(v) -> int:
    """The n=3 classification weights: 1 on two-element codewords, else 0."""
    return 1 if v[0] == "y" and len(v[1]) == 2 else 0


class EliminationOrder(MonomialOrder):
    """Block order eliminating the x-variables.

    x-parts compare by degree-then-lex; ties fall through to the inner
    order on the y-part.  Any monomial containing an x-variable beats
    every x-free monomial, which is the elimination property.
    """

    def __init__(self, ring: PolyRing, inner_factory: Callable[[PolyRing], MonomialOrder]):
        self.ring = ring
        self._x_idx = tuple(
            i for i, v in enumerate(ring.variables) if v[0] == "x"
        )
        y_vars = tuple(v for v in ring.variables if v[0] == "y")
        self._y_idx = tuple(
            i for i, v in enumerate(ring.variables) if v[0] == "y"
        )
        self._inner = inner_factory(PolyRing(y_vars))
        self.key = ("elim", self._inner.key)

    def sort_key(self, m: tuple) -> tuple:
        xpart = tuple(m[i] for i in self._x_idx)
        ypart = tuple(m[i] for i in self._y_idx)
        return (sum(xpart), xpart, self._inner.sort_key(ypart))


# ---------------------------------------------------------------------------
# binomials and Buchberger


@dataclass(frozen=True)
class Binomial:
    """lead - trail with lead strictly greater under the ambient order."""

    lead: tuple
    trail: tuple

    @property
    def degree(self) -> int:
        return max(sum(self.lead), sum(self.trail))

    def as_str(self, ring: PolyRing) -> str:
        return f"{ring.monomial_str(self.lead)} - {ring.monomial_str(self.trail)}"


def oriented(a: tuple, b: tuple, order: MonomialOrder) -> Optional[Binomial]:
    if a == b:
        return None
    return Binomial(a, b) if order.greater(a, b) else Binomial(b, a)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_add(m: tuple, sub: tuple, add: tuple) -> tuple:
    return tuple(x - s + a for x, s, a in zip(m, sub, add))


def _reduce_monomial(m: tuple, basis: list) -> tuple:
    """Rewrite m by lead -> trail moves until no lead divides it."""
    changed = True
    while changed:
        changed = False
        for g in basis:
            if _divides(g.lead, m):
                m = _sub_add(m, g.lead, g.trail)
                changed = True
    return m


def normal_form(b: Optional[Binomial], basis: list, order: MonomialOrder) -> Optional[Binomial]:
    if b is None:
        return None
    lead = _reduce_monomial(b.lead, basis)
    trail = _reduce_monomial(b.trail, basis)
    return oriented(lead, trail, order)


def _s_binomial(f: Binomial, g: Binomial, order: MonomialOrder) -> Optional[Binomial]:
    lcm = tuple(max(a, b) for a, b in zip(f.lead, g.lead))
    a = _sub_add(lcm, f.lead, f.trail)
    b = _sub_add(lcm, g.lead, g.trail)
    return oriented(a, b, order)


def _coprime(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def buchberger(
    generators: Iterable[Binomial],
    order: MonomialOrder,
    max_pairs: int = 200_000,
    max_degree: int = 60,
) -> list:
    """Reduced Groebner basis of a pure-difference binomial ideal.

    Deterministic: pairs are processed in normal selection order (by
    lcm), the result is inter-reduced, tail-reduced, and sorted by the
    order on leading monomials.
    """
    basis: list = []
    for g in generators:
        g = normal_form(g, basis, order)
        if g is not None:
            if g.degree > max_degree:
                raise ResourceCapExceeded(f"degree cap {max_degree} exceeded")
            basis.append(g)

    heap: list = []

    def push(i, j):
        lcm = tuple(max(a, b) for a, b in zip(basis[i].lead, basis[j].lead))
        heapq.heappush(heap, (sum(lcm), order.sort_key(lcm), i, j))

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            push(i, j)
    processed = 0
    while heap:
        _, _, i, j = heapq.heappop(heap)
        processed += 1
        if processed > max_pairs:
            raise ResourceCapExceeded(f"S-pair cap {max_pairs} exceeded")
        if _coprime(basis[i].lead, basis[j].lead):
            continue
        s = _s_binomial(basis[i], basis[j], order)
        h = normal_form(s, basis, order)
        if h is None:
            continue
        if h.degree > max_degree:
            raise ResourceCapExceeded(f"degree cap {max_degree} exceeded")
        basis.append(h)
        k = len(basis) - 1
        for i2 in range(k):
            push(i2, k)
    return _inter_reduce(basis, order)


def _inter_reduce(basis: list, order: MonomialOrder) -> list:
    # drop elements whose lead is divisible by another surviving lead
    kept: list = []
    for g in sorted(basis, key=lambda g: order.sort_key(g.lead)):
        if any(_divides(h.lead, g.lead) for h in kept):
            continue
        kept = [h for h in kept if not _divides(g.lead, h.lead)]
        kept.append(g)
    # tail-reduce against the final lead set
    reduced = []
    for g in kept:
        others = [h for h in kept if h is not g]
        trail = _reduce_monomial(g.trail, kept)
        lead = g.lead
        # the lead is reducible only by itself within a minimal basis
        b = oriented(lead, trail, order)
        if b is not None:
            reduced.append(b)
    reduced.sort(key=lambda g: order.sort_key(g.lead))
    return reduced


def verify_buchberger_certificate(basis: list, order: MonomialOrder) -> bool:
    """Every S-binomial of the basis reduces to zero."""
    for f, g in itertools.combinations(basis, 2):
        s = _s_binomial(f, g, order)
        if normal_form(s, basis, order) is not None:
            return False
    return True


# ---------------------------------------------------------------------------
# toric ideals


def monomial_map_image(m: tuple, ring: PolyRing) -> dict:
    """Image of a codeword-variable monomial under y_c -> prod x_i.

    Returned as a neuron -> exponent dict.
    """
    image: dict = {}
    for v, e in zip(ring.variables, m):
        if e == 0:
            continue
        if v[0] != "y":
            raise ValueError(f"not a codeword variable: {v!r}")
        for i in v[1]:
            image[i] = image.get(i, 0) + e
    return {i: e for i, e in sorted(image.items()) if e}


def in_kernel(b: Binomial, ring: PolyRing) -> bool:
    return monomial_map_image(b.lead, ring) == monomial_map_image(b.trail, ring)


@dataclass
class ToricIdeal:
    code: NeuralCode
    ring: PolyRing
    generators: list
    _gb_cache: dict = field(default_factory=dict)

    def reduced_groebner_basis(
        self, order: MonomialOrder, max_pairs: int = 200_000, max_degree: int = 60
    ) -> list:
        cached = self._gb_cache.get(order.key)
        if cached is None:
            cached = buchberger(self.generators, order, max_pairs, max_degree)
            self._gb_cache[order.key] = cached
        return cached

    def contains(self, b: Optional[Binomial], order: MonomialOrder) -> bool:
        gb = self.reduced_groebner_basis(order)
        return normal_form(b, gb, order) is None


def toric_ideal(
    code: NeuralCode, max_pairs: int = 200_000, max_degree: int = 60
) -> ToricIdeal:
    """Generators of ker(phi) by elimination of the neuron variables.

    Forms y_c - x^c in the combined ring, runs Buchberger under an
    elimination order with the codeword-lex inner order, and keeps the
    x-free part; that part is itself a Groebner basis of the kernel
    under the inner order.
    """
    if not any(code.words):
        raise ValueError("code needs at least one nonempty codeword")
    ering = elimination_ring(code)
    yring = codeword_ring(code)
    eorder = EliminationOrder(ering, CodewordLexOrder)
    gens = []
    for c in sorted((c for c in code.words if c), key=word_key):
        lead = ering.monomial({xvar(i): 1 for i in c})
        trail = ering.monomial({yvar(c): 1})
        gens.append(oriented(lead, trail, eorder))
    egb = buchberger(gens, eorder, max_pairs, max_degree)

    nx = len(ering.variables) - len(yring.variables)

    def y_project(m: tuple) -> Optional[tuple]:
        if any(m[:nx]):
            return None
        return m[nx:]

    inner = CodewordLexOrder(yring)
    kept = []
    for g in egb:
        lead, trail = y_project(g.lead), y_project(g.trail)
        if lead is not None and trail is not None:
            kept.append(oriented(lead, trail, inner))
    ideal = ToricIdeal(code, yring, kept)
    # the eliminated part is already a reduced GB for the inner order
    ideal._gb_cache[inner.key] = sorted(kept, key=lambda g: inner.sort_key(g.lead))
    return ideal


def toric_generators(code: NeuralCode, **caps) -> list:
    return toric_ideal(code, **caps).generators


def gb_max_degree(ideal: ToricIdeal, order: MonomialOrder, **caps) -> int:
    gb = ideal.reduced_groebner_basis(order, **caps)
    return max((g.degree for g in gb), default=0)


def binomial_from_words(
    ring: PolyRing, order: MonomialOrder, plus: Iterable, minus: Iterable
) -> Optional[Binomial]:
    """Binomial y_{plus...} - y_{minus...} from codeword multisets."""
    a = ring.monomial({yvar(c): sum(1 for d in plus if tuple(sorted(d)) == tuple(sorted(c))) for c in plus})
    b = ring.monomial({yvar(c): sum(1 for d in minus if tuple(sorted(d)) == tuple(sorted(c))) for c in minus})
    return oriented(a, b, order)


def embed_binomial(b: Binomial, src: PolyRing, dst: PolyRing) -> Binomial:
    def conv(m):
        return dst.monomial(
            {v: e for v, e in zip(src.variables, m) if e}
        )

    return Binomial(conv(b.lead), conv(b.trail))


def check_nesting(sub: NeuralCode, sup: NeuralCode) -> bool:
    """Every generator of the smaller code's toric ideal lies in the larger's."""
    if not sub.words <= sup.words:
        raise ValueError("first code must be a subset of the second")
    if not any(sub.words):
        return True
    isub = toric_ideal(sub)
    isup = toric_ideal(sup)
    order = CodewordLexOrder(isup.ring)
    for g in isub.generators:
        emb = embed_binomial(g, isub.ring, isup.ring)
        b = oriented(emb.lead, emb.trail, order)
        if b is not None and not isup.contains(b, order):
            return False
    return True


def homogenize_with_dummy(code: NeuralCode) -> NeuralCode:
    """Adjoin dummy neuron 0 to every codeword, making the toric ideal homogeneous."""
    return NeuralCode(
        code.n, frozenset(w | {0} for w in code.words), code.labeled_by_construction
    )


# ---------------------------------------------------------------------------
# conjecture scan


def scan_one_code(code_: NeuralCode, order_kind: str, weights,
                  max_pairs: int, max_degree: int) -> tuple:
    """(gb degree, None) or (None, skip reason) for one code."""
    try:
        if not any(code_.words):
            return 0, None
        ideal = toric_ideal(code_, max_pairs=max_pairs, max_degree=max_degree)
        if order_kind == "lex":
            order = CodewordLexOrder(ideal.ring)
        elif order_kind == "wgrevlex":
            order = WeightedGrevlexOrder(
                ideal.ring, weights if weights is not None else two_subset_weights
            )
        else:
            raise ValueError(f"unknown order kind {order_kind!r}")
        deg = gb_max_degree(ideal, order, max_pairs=max_pairs, max_degree=max_degree)
        return deg, None
    except ResourceCapExceeded as exc:
        return None, str(exc)


def _scan_worker(args):
    n, words, order_kind, weights, max_pairs, max_degree = args
    return scan_one_code(
        NeuralCode(n, words), order_kind, weights, max_pairs, max_degree
    )


def conjecture_scan(
    max_n: int,
    max_k: int,
    order_kind: str = "lex",
    weights=None,
    max_pairs: int = 200_000,
    max_degree: int = 60,
    jobs: int = 1,
) -> dict:
    """Max GB degree under the given order, for every enumerated pierced code.

    ``order_kind`` is "lex" (codeword-order lex) or "wgrevlex" (with
    ``weights`` a callable on variables or a per-variable vector).
    Codes whose computation exceeds the caps are reported as skipped,
    never dropped.  ``jobs`` > 1 fans the per-code work out to worker
    processes; the report order stays the enumeration order.
    """
    results = []
    violations = []
    skipped = []
    degree_counts: dict = {}
    t_start = time.time()
    enumerated = list(enumerate_pierced_codes(max_n, max_k))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        args = [
            (c.n, c.words, order_kind, weights, max_pairs, max_degree)
            for c, _ in enumerated
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_scan_worker, args, chunksize=8))
        times = [None] * len(enumerated)
    else:
        outcomes = []
        times = []
        for code_, _ in enumerated:
            t0 = time.time()
            outcomes.append(
                scan_one_code(code_, order_kind, weights, max_pairs, max_degree)
            )
            times.append(round((time.time() - t0) * 1000, 3))
    for (code_, seq), (deg, reason), t_ms in zip(enumerated, outcomes, times):
        entry = {
            "code": str(code_),
            "n": code_.n,
            "k": seq.degree,
            "size": len(code_.words),
        }
        if reason is None:
            entry["gb_degree"] = deg
            entry["status"] = "ok"
            degree_counts[deg] = degree_counts.get(deg, 0) + 1
            if deg > 2:
                violations.append(entry)
        else:
            entry["status"] = "skipped"
            entry["reason"] = reason
            skipped.append(entry)
        if t_ms is not None:
            entry["time_ms"] = t_ms
        results.append(entry)
    return {
        "max_n": max_n,
        "max_k": max_k,
        "order": order_kind,
        "codes": len(results),
        "degree_counts": {str(k): v for k, v in sorted(degree_counts.items())},
        "violations": violations,
        "skipped": skipped,
        "results": results,
        "total_time_ms": round((time.time() - t_start) * 1000, 1),
    }
