"""The piercing operation and inductive-piercedness detection.

A piercing step is a partition (lambda, sigma, tau) of the neurons of
the code being pierced.  Piercing adds neuron n+1 together with the
codewords sigma ∪ nu ∪ {n+1} for every nu ⊆ lambda; it is allowed only
when sigma ∪ nu is already a codeword for every such nu.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional

from .codes import NeuralCode


class ResourceLimitExceeded(Exception):
    """Raised when enumeration outgrows its configured cap."""


def _subsets(s: frozenset) -> Iterator[frozenset]:
    items = sorted(s)
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


@dataclass(frozen=True)
class PiercingStep:
    lam: frozenset
    sigma: frozenset
    tau: frozenset

    def __post_init__(self):
        object.__setattr__(self, "lam", frozenset(self.lam))
        object.__setattr__(self, "sigma", frozenset(self.sigma))
        object.__setattr__(self, "tau", frozenset(self.tau))

    @property
    def degree(self) -> int:
        return len(self.lam)

    def validate_for(self, n: int) -> None:
        blocks = [self.lam, self.sigma, self.tau]
        if (
            self.lam | self.sigma | self.tau != frozenset(range(1, n + 1))
            or sum(len(b) for b in blocks) != n
        ):
            raise ValueError(f"step does not partition [{n}]")

    def to_json_dict(self) -> dict:
        return {
            "lambda": sorted(self.lam),
            "sigma": sorted(self.sigma),
            "tau": sorted(self.tau),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "PiercingStep":
        return cls(frozenset(d["lambda"]), frozenset(d["sigma"]), frozenset(d["tau"]))


@dataclass(frozen=True)
class PiercingSequence:
    """One step per neuron 2..n; replaying from {{}, {1}} rebuilds the code.

    ``relabeling`` is only present when detection had to permute neuron
    labels: relabeling[i] is the original label of the neuron added at
    step i+1 of the construction.
    """

    steps: tuple = ()
    relabeling: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    @property
    def degree(self) -> int:
        return max((s.degree for s in self.steps), default=0)

    def to_json_dict(self) -> dict:
        d = {"steps": [s.to_json_dict() for s in self.steps]}
        if self.relabeling is not None:
            d["relabeling"] = list(self.relabeling)
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "PiercingSequence":
        steps = tuple(PiercingStep.from_json_dict(s) for s in d["steps"])
        relab = tuple(d["relabeling"]) if "relabeling" in d else None
        return cls(steps, relab)


BASE_CODE = NeuralCode(1, frozenset({frozenset(), frozenset({1})}), True)


def is_pierceable(code: NeuralCode, step: PiercingStep) -> bool:
    step.validate_for(code.n)
    return all(step.sigma | nu in code for nu in _subsets(step.lam))


def pierce(code: NeuralCode, step: PiercingStep) -> NeuralCode:
    if not is_pierceable(code, step):
        raise ValueError(f"code {code} is not ({sorted(step.lam)},{sorted(step.sigma)},{sorted(step.tau)}) pierceable")
    new = code.n + 1
    added = frozenset(step.sigma | nu | {new} for nu in _subsets(step.lam))
    return NeuralCode(new, code.words | added, code.labeled_by_construction)


def replay(seq: PiercingSequence, base: NeuralCode = BASE_CODE) -> NeuralCode:
    c = base
    for step in seq:
        c = pierce(c, step)
    return c


def _recover_last_step(code: NeuralCode, j: int, max_k: int):
    """Try to undo a piercing whose new neuron is j; return (step, rest) or None.

    The step is forced: with S = {c \\ {j} : j in c in C}, sigma is the
    common intersection, lambda the rest of the union, tau everything
    else.  Acceptance requires S to be exactly the sigma-union-nu family.
    """
    with_j = [w for w in code.words if j in w]
    if not with_j:
        return None
    s_family = {w - {j} for w in with_j}
    sigma = frozenset.intersection(*s_family)
    lam = frozenset.union(*s_family) - sigma
    if len(lam) > max_k:
        return None
    others = frozenset(i for i in code.neurons if i != j)
    tau = others - lam - sigma
    if not (lam | sigma | tau == others and lam.isdisjoint(sigma)):
        return None
    if s_family != {sigma | nu for nu in _subsets(lam)}:
        return None
    rest_words = code.words - frozenset(with_j)
    step = PiercingStep(lam, sigma, tau)
    return step, rest_words


def _relabel_words(words, j: int, n: int):
    """Drop neuron j from the label set, shifting higher labels down."""
    def sub(i):
        return i - 1 if i > j else i

    return frozenset(frozenset(sub(i) for i in w) for w in words)


def recover_piercing_sequence(
    code: NeuralCode, max_k: int, relabel: bool = False
) -> Optional[PiercingSequence]:
    """Search for a piercing sequence rebuilding ``code``; None if not pierced.

    With relabel=False only neuron n may be the last-added neuron at
    each stage (the construction labeling convention).  With
    relabel=True every neuron is tried as last, and the returned
    sequence carries the relabeling witness.
    """
    if len(code.words) == 0:
        raise ValueError("code must be nonempty")

    def rec(words: frozenset, labels: tuple):
        n = len(labels)
        if n == 1:
            if words == BASE_CODE.words:
                return (), (labels[0],)
            return None
        current = NeuralCode(n, words)
        candidates = [n] if not relabel else list(range(n, 0, -1))
        for j in candidates:
            got = _recover_last_step(current, j, max_k)
            if got is None:
                continue
            step, rest = got
            if j != n:
                rest = _relabel_words(rest, j, n)
                remap = {i: (i - 1 if i > j else i) for i in range(1, n + 1)}
                step = PiercingStep(
                    frozenset(remap[i] for i in step.lam),
                    frozenset(remap[i] for i in step.sigma),
                    frozenset(remap[i] for i in step.tau),
                )
            sub_labels = tuple(l for idx, l in enumerate(labels, 1) if idx != j)
            deeper = rec(rest, sub_labels)
            if deeper is not None:
                steps, order = deeper
                return steps + (step,), order + (labels[j - 1],)
        return None

    got = rec(code.words, tuple(range(1, code.n + 1)))
    if got is None:
        return None
    steps, order = got
    identity = tuple(range(1, code.n + 1))
    relabeling = None if order == identity else order
    return PiercingSequence(steps, relabeling)


def _partitions(n: int, max_k: int) -> Iterator[PiercingStep]:
    neurons = list(range(1, n + 1))
    for assignment in itertools.product((0, 1, 2), repeat=n):
        lam = frozenset(i for i, a in zip(neurons, assignment) if a == 0)
        if len(lam) > max_k:
            continue
        sigma = frozenset(i for i, a in zip(neurons, assignment) if a == 1)
        tau = frozenset(i for i, a in zip(neurons, assignment) if a == 2)
        yield PiercingStep(lam, sigma, tau)


def enumerate_pierced_codes(
    max_n: int, max_k: int, max_codes: int = 500_000
) -> Iterator[tuple]:
    """Breadth-first closure of {{}, {1}} under piercing, deduplicated.

    Yields (code, sequence) pairs; every code is labeled by
    construction.  Dedup is by literal codeword-set equality, so the
    same code reached by two sequences is emitted once, with the first
    sequence found.
    """
    if max_n < 1:
        return
    seen = {(1, BASE_CODE.words)}
    frontier = deque([(BASE_CODE, PiercingSequence())])
    yield BASE_CODE, PiercingSequence()
    count = 1
    while frontier:
        current, seq = frontier.popleft()
        if current.n >= max_n:
            continue
        for step in _partitions(current.n, max_k):
            if not is_pierceable(current, step):
                continue
            nxt = pierce(current, step)
            key = (nxt.n, nxt.words)
            if key in seen:
                continue
            seen.add(key)
            count += 1
            if count > max_codes:
                raise ResourceLimitExceeded(f"more than {max_codes} codes enumerated")
            nxt_seq = PiercingSequence(seq.steps + (step,))
            yield nxt, nxt_seq
            frontier.append((nxt, nxt_seq))
