"""Numeric realizations of inductively pierced codes by open balls.

A k-pierced sequence is realized in dimension k+1.  Each step picks a
point on the common boundary sphere of the pierced balls (via the
radical-hyperplane linear system), inside the sigma-balls and outside
the tau-balls, and drops a small new ball there.  Sphere intersections
are generically irrational, so this pipeline is floating point with an
explicit tolerance; verification is by witness margins plus
quasi-random sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .codes import NeuralCode
from .piercing import BASE_CODE, PiercingSequence, pierce


class BallConstructionError(Exception):
    """Could not place a piercing point or ball within tolerance."""


@dataclass
class BallRealization:
    dim: int
    centers: list
    radii: list
    witnesses: dict = field(default_factory=dict)
    tolerance: float = 1e-9

    def pattern_at(self, x: np.ndarray) -> frozenset:
        return frozenset(
            i + 1
            for i, (c, r) in enumerate(zip(self.centers, self.radii))
            if np.linalg.norm(x - c) < r
        )

    def witness_margin(self, c: frozenset, x: np.ndarray) -> float:
        """Smallest distance of x to any sphere, signed to be positive
        when x is strictly on the correct side of every sphere."""
        margin = np.inf
        for i, (ctr, r) in enumerate(zip(self.centers, self.radii), 1):
            d = np.linalg.norm(x - ctr)
            signed = (r - d) if i in c else (d - r)
            margin = min(margin, signed)
        return margin

    def bounding_box(self):
        centers = np.array(self.centers)
        radii = np.array(self.radii)
        lo = (centers - radii[:, None]).min(axis=0) - 0.5
        hi = (centers + radii[:, None]).max(axis=0) + 0.5
        return lo, hi

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "centers": [list(map(float, c)) for c in self.centers],
            "radii": [float(r) for r in self.radii],
            "tolerance": self.tolerance,
            "witnesses": {
                "".join(map(str, sorted(c))) or "{}": list(map(float, w))
                for c, w in sorted(self.witnesses.items(), key=lambda kv: sorted(kv[0]))
            },
        }


def sphere_intersection(centers: np.ndarray, radii: np.ndarray):
    """Center, radius, and orthonormal tangent basis of the common
    boundary sphere of the given balls.

    Subtracting pairs of sphere equations gives the radical hyperplanes,
    a linear system whose solution space carries the intersection
    sphere.
    """
    m, d = centers.shape
    c0, r0 = centers[0], radii[0]
    if m == 1:
        basis = np.eye(d)
        return c0, float(r0), basis
    rows = 2 * (centers[1:] - c0)
    rhs = (
        np.sum(centers[1:] ** 2, axis=1)
        - np.sum(c0**2)
        - (radii[1:] ** 2 - r0**2)
    )
    sol, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    if not np.allclose(rows @ sol, rhs, atol=1e-9):
        raise BallConstructionError("radical hyperplanes are inconsistent")
    # orthonormal basis of the affine solution space
    _, s, vt = np.linalg.svd(rows)
    rank = int(np.sum(s > 1e-12 * max(1.0, s[0])))
    null = vt[rank:].T
    # project c0 onto the affine subspace to find the sphere center
    q = sol + null @ (null.T @ (c0 - sol))
    h2 = r0**2 - np.sum((q - c0) ** 2)
    if h2 <= 0:
        raise BallConstructionError("spheres do not intersect transversally")
    return q, float(np.sqrt(h2)), null


def _sphere_directions(dim: int, count: int, rng) -> np.ndarray:
    if dim == 0:
        return np.zeros((1, 0))
    v = rng.standard_normal((count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def build_ball_realization(
    seq: PiercingSequence,
    dim: int | None = None,
    tolerance: float = 1e-9,
    seed: int = 20240,
) -> BallRealization:
    """Replay ``seq`` with open balls in R^(k+1) (k the max piercing degree).

    Radii strictly decrease along the construction so a new ball can
    never swallow an older one; each new radius is additionally bisected
    down until every existing witness stays outside it.
    """
    k = seq.degree
    if dim is None:
        dim = max(1, k + 1)
    if dim < max(1, k + 1):
        raise ValueError(f"dimension {dim} too small for a {k}-pierced sequence")
    rng = np.random.default_rng(seed)

    centers = [np.zeros(dim)]
    radii = [1.0]
    witnesses = {
        frozenset(): np.full(dim, 2.0),
        frozenset({1}): np.zeros(dim),
    }
    code = BASE_CODE

    for step in seq:
        step.validate_for(code.n)
        real = BallRealization(dim, centers, radii, witnesses, tolerance)
        p = _piercing_point(real, step, rng)
        for i in sorted(step.lam):
            if abs(np.linalg.norm(p - centers[i - 1]) - radii[i - 1]) > 1e-7:
                raise BallConstructionError("piercing point drifted off a sphere")
        r_new = _choose_radius(real, step, p)
        new_index = code.n + 1
        new_witnesses = dict(witnesses)
        new_witnesses.update(
            _new_atom_witnesses(real, step, p, r_new, new_index)
        )
        if not step.lam:
            # the sigma-witness seeded the new ball's center; move it out
            new_witnesses[step.sigma] = _rewitness_outside(
                real, step.sigma, p, r_new, rng
            )
        centers = centers + [p]
        radii = radii + [r_new]
        witnesses = new_witnesses
        code = pierce(code, step)
        # re-certify everything at this level before continuing
        level = BallRealization(dim, centers, radii, witnesses, tolerance)
        for c in code.words:
            if level.pattern_at(witnesses[c]) != c:
                raise BallConstructionError(
                    f"witness for {sorted(c)} lost after adding ball {new_index}"
                )
    return BallRealization(dim, centers, radii, witnesses, tolerance)


def _piercing_point(real: BallRealization, step, rng) -> np.ndarray:
    """Point on every lambda-sphere, inside sigma-balls, outside tau-balls."""
    centers, radii = real.centers, real.radii

    def ok(x, margin):
        for i in sorted(step.sigma):
            if np.linalg.norm(x - centers[i - 1]) >= radii[i - 1] - margin:
                return False
        for j in sorted(step.tau):
            if np.linalg.norm(x - centers[j - 1]) <= radii[j - 1] + margin:
                return False
        return True

    if not step.lam:
        base = np.asarray(real.witnesses[step.sigma], dtype=float)
        for shrink in range(40):
            margin = 1e-3 / 2**shrink
            if ok(base, margin):
                return base.copy()
        raise BallConstructionError("sigma-witness violates the background motif")

    lam = sorted(step.lam)
    q, rho, basis = sphere_intersection(
        np.array([centers[i - 1] for i in lam]),
        np.array([radii[i - 1] for i in lam]),
    )
    tangent_dim = basis.shape[1]
    for attempt in range(200):
        margin = 1e-3 / 2 ** (attempt // 20)
        for u in _sphere_directions(tangent_dim, 40, rng):
            x = q + rho * (basis @ u) if tangent_dim else q
            if ok(x, margin):
                return x
    raise BallConstructionError("no admissible point found on the piercing sphere")


def _choose_radius(real: BallRealization, step, p: np.ndarray) -> float:
    centers, radii = real.centers, real.radii
    r = min(radii) / 4
    # stay clear of every constraint the new ball must not cross
    for i in sorted(step.sigma):
        r = min(r, (radii[i - 1] - np.linalg.norm(p - centers[i - 1])) / 2)
    for j in sorted(step.tau):
        r = min(r, (np.linalg.norm(p - centers[j - 1]) - radii[j - 1]) / 2)
    if r <= 0:
        raise BallConstructionError("no room for the new ball")
    # bisect down until no existing witness is swallowed; when lambda is
    # empty the sigma-witness sits at p itself and gets re-placed later
    protected = [
        np.asarray(w)
        for c, w in real.witnesses.items()
        if step.lam or c != step.sigma
    ]
    for _ in range(80):
        if all(np.linalg.norm(p - w) > r * 1.5 for w in protected):
            return float(r)
        r /= 2
    raise BallConstructionError("new ball keeps swallowing a witness")


def _rewitness_outside(real, codeword, p, r_new, rng):
    """A fresh point with pattern ``codeword`` just outside the new ball."""
    for dist in (2.5, 3.0, 2.1, 4.0):
        for u in _sphere_directions(real.dim, 60, rng):
            cand = p + dist * r_new * u
            if real.pattern_at(cand) == codeword and np.linalg.norm(cand - p) > r_new:
                return cand
    raise BallConstructionError(
        f"could not re-witness atom {sorted(codeword)} outside the new ball"
    )


def _new_atom_witnesses(real, step, p, r_new, new_index):
    """Witness points inside the new ball, one per orthant pattern of
    the lambda-spheres."""
    centers, radii = real.centers, real.radii
    lam = sorted(step.lam)
    out = {}
    if not lam:
        out[step.sigma | {new_index}] = p.copy()
        return out
    normals = np.array(
        [(p - centers[i - 1]) / np.linalg.norm(p - centers[i - 1]) for i in lam]
    )
    for mask in range(2 ** len(lam)):
        nu = frozenset(lam[t] for t in range(len(lam)) if mask >> t & 1)
        target = step.sigma | nu | {new_index}
        placed = None
        eps = r_new / 4
        for _ in range(60):
            signs = np.array([-1.0 if i in nu else 1.0 for i in lam])
            shift, *_ = np.linalg.lstsq(normals, signs * eps, rcond=None)
            cand = p + shift
            if np.linalg.norm(shift) < r_new and real.pattern_at(cand) | {new_index} == target:
                # must also be strictly inside the new ball around p
                if np.linalg.norm(cand - p) < r_new:
                    placed = cand
                    break
            eps /= 2
        if placed is None:
            raise BallConstructionError(
                f"could not witness new atom {sorted(target)}"
            )
        out[target] = placed
    return out


def verify_ball_realization(
    real: BallRealization,
    expected: NeuralCode,
    samples: int = 1_000_000,
    seed: int = 7,
) -> dict:
    """Witness margins plus quasi-random sampling.

    Every expected codeword's witness must classify correctly with
    margin above tolerance; a Sobol sample of the bounding box must
    produce no sign pattern outside the expected code.  The sampling
    half is probabilistic and labeled as such in the report.
    """
    report = {
        "witnesses_ok": True,
        "min_witness_margin": None,
        "sampling_ok": True,
        "sampling_is_probabilistic": True,
        "samples": samples,
        "unexpected_patterns": [],
    }
    margins = []
    for c in expected.words:
        w = real.witnesses.get(c)
        if w is None or real.pattern_at(np.asarray(w)) != c:
            report["witnesses_ok"] = False
            report.setdefault("failed_witnesses", []).append(sorted(c))
            continue
        margins.append(real.witness_margin(c, np.asarray(w)))
    if margins:
        report["min_witness_margin"] = float(min(margins))
        if min(margins) <= real.tolerance:
            report["witnesses_ok"] = False
    if set(real.witnesses) != set(expected.words):
        report["witnesses_ok"] = False

    lo, hi = real.bounding_box()
    sampler = qmc.Sobol(d=real.dim, scramble=True, seed=seed)
    pts = lo + sampler.random(samples) * (hi - lo)
    centers = np.array(real.centers)
    radii = np.array(real.radii)
    d2 = ((pts[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    inside = d2 < (radii**2)[None, :]
    weights = 1 << np.arange(len(radii))
    patterns = inside @ weights
    expected_masks = {
        sum(1 << (i - 1) for i in c) for c in expected.words
    }
    found = set(int(x) for x in np.unique(patterns))
    extra = found - expected_masks
    if extra:
        report["sampling_ok"] = False
        report["unexpected_patterns"] = [
            sorted(i + 1 for i in range(len(radii)) if m >> i & 1) for m in sorted(extra)
        ]
    report["ok"] = report["witnesses_ok"] and report["sampling_ok"]
    return report
