"""Randomized counterexample search with greedy local refinement.

The search maximizes the violation ``lhs - rhs`` of a target inequality over
instances (measure, vector(s), piecewise-linear function).  A positive best
violation is a counterexample witness; for targets that are theorems the
search is a negative control and must come back empty.  Results at exponents
p >= 2 for the non-monotone chain rule and the inverse bound are evidence
about an open region, never a proof: output is labeled "no violation found
(budget N)" rather than as a theorem.

Determinism: trial t draws from ``default_rng((seed, trial))``; refinement is
rng-free hill climbing; aggregation takes the maximal violation with ties
broken by the lower trial index, so results do not depend on worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .core import HolderTriple, ProbVector, check_exponent
from .operators import PiecewiseLinearFn
from .reports import VerificationReport
from .verify import (
    INVERTIBILITY_FLOOR,
    check_chain_rule,
    check_leibniz,
    check_square_bound,
    check_strong_leibniz,
)

TARGETS = ("chain_rule", "strong_leibniz", "leibniz", "square_bound")

#: Hill-climbing step sizes, one epoch each.
STEP_EPOCHS = (0.1, 0.01, 0.001)

_SPLIT_CHOICES = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class SearchConfig:
    target: str
    n: int = 3
    p_grid: tuple[float, ...] = (1.0,)
    trials: int = 1000
    refine_steps: int = 20
    seed: int = 0
    max_breakpoints: int = 4
    monotone: bool = False
    mass_floor: float = 1e-3
    refine_top: int = 5

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"unknown target {self.target!r}; choose from {TARGETS}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.n < 2:
            raise ValueError("need at least two atoms")
        if not 1 <= self.max_breakpoints <= 8:
            raise ValueError("breakpoint budget must lie in [1, 8]")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        object.__setattr__(self, "p_grid", tuple(check_exponent(p) for p in self.p_grid))

    @classmethod
    def from_dict(cls, d: dict) -> "SearchConfig":
        known = {f.name for f in cls.__dataclass_fields__.values()}  # type: ignore[attr-defined]
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kw = dict(d)
        if "p_grid" in kw:
            kw["p_grid"] = tuple(float(p) for p in kw["p_grid"])
        return cls(**kw)

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "n": self.n,
            "p_grid": ["inf" if math.isinf(p) else p for p in self.p_grid],
            "trials": self.trials,
            "refine_steps": self.refine_steps,
            "seed": self.seed,
            "max_breakpoints": self.max_breakpoints,
            "monotone": self.monotone,
            "mass_floor": self.mass_floor,
            "refine_top": self.refine_top,
        }


@dataclass(frozen=True)
class Instance:
    """One sampled point of the search space (exponent-independent)."""

    mu: np.ndarray
    f: np.ndarray
    g: np.ndarray | None = None
    phi: PiecewiseLinearFn | None = None
    split1: float = 0.5
    split2: float = 0.5

    def to_dict(self) -> dict:
        d = {"mu": [float(v) for v in self.mu], "f": [float(v) for v in self.f]}
        if self.g is not None:
            d["g"] = [float(v) for v in self.g]
        if self.phi is not None:
            d["phi"] = self.phi.to_dict()
        if self.g is not None:
            d["split1"] = self.split1
            d["split2"] = self.split2
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Instance":
        return cls(
            mu=np.asarray(d["mu"], dtype=float),
            f=np.asarray(d["f"], dtype=float),
            g=np.asarray(d["g"], dtype=float) if "g" in d else None,
            phi=PiecewiseLinearFn.from_dict(d["phi"]) if "phi" in d else None,
            split1=float(d.get("split1", 0.5)),
            split2=float(d.get("split2", 0.5)),
        )


@dataclass
class SearchResult:
    config: SearchConfig
    best_violation: float
    best_p: float
    witness: dict
    per_p: dict[float, float]
    history: list[float] = field(default_factory=list)

    def verdict(self) -> str:
        if self.best_violation > 1e-9:
            return f"violation found: {self.best_violation:.6g} at p={self.best_p}"
        return f"no violation found (budget {self.config.trials} trials x {len(self.config.p_grid)} exponents)"


def _floored_simplex(raw: np.ndarray, floor: float) -> np.ndarray:
    """Project positive raw weights onto the simplex with a mass floor."""
    pos = np.clip(raw, 0.0, None)
    total = float(pos.sum())
    n = raw.size
    if total <= 0.0:
        return np.full(n, 1.0 / n)
    body = 1.0 - n * floor
    return floor + body * pos / total


def random_instance(config: SearchConfig, trial_seed: int) -> Instance:
    """Deterministic function of (config.seed, trial_seed)."""
    rng = np.random.default_rng((config.seed, int(trial_seed)))
    n = config.n
    mu = _floored_simplex(rng.dirichlet(np.ones(n)), config.mass_floor)
    if config.target == "strong_leibniz":
        mag = rng.uniform(0.05, 1.0, n)
        f = mag * np.where(rng.random(n) < 0.5, -1.0, 1.0)
    else:
        f = rng.uniform(-1.0, 1.0, n)
    g = rng.uniform(-1.0, 1.0, n) if config.target == "leibniz" else None
    phi = None
    if config.target == "chain_rule":
        m = int(rng.integers(1, config.max_breakpoints + 1))
        bp = np.sort(rng.uniform(-1.0, 1.0, m))
        for i in range(1, m):
            if bp[i] - bp[i - 1] < 1e-6:
                bp[i] = bp[i - 1] + 1e-6
        slopes = rng.uniform(-1.0, 1.0, m + 1)
        if config.monotone:
            slopes = np.abs(slopes)
        peak = float(np.max(np.abs(slopes)))
        if peak < 1e-12:
            slopes, peak = np.ones(m + 1), 1.0
        phi = PiecewiseLinearFn(bp, slopes / peak, float(rng.uniform(-1.0, 1.0)))
    s1 = float(_SPLIT_CHOICES[rng.integers(len(_SPLIT_CHOICES))])
    s2 = float(_SPLIT_CHOICES[rng.integers(len(_SPLIT_CHOICES))])
    return Instance(mu=mu, f=f, g=g, phi=phi, split1=s1, split2=s2)


def _fast_lp(x: np.ndarray, w: np.ndarray, p: float) -> float:
    m = float(np.max(np.abs(x)))
    if m == 0.0 or math.isinf(p):
        return m
    return m * float(np.dot(w, (np.abs(x) / m) ** p)) ** (1.0 / p)


def violation(inst: Instance, target: str, p: float) -> float:
    """lhs - rhs of the target inequality; positive means counterexample."""
    mu, f = inst.mu, inst.f
    if target == "chain_rule":
        vals = inst.phi(f)
        lhs = _fast_lp(vals - float(np.dot(mu, vals)), mu, p)
        rhs = inst.phi.lipschitz * _fast_lp(f - float(np.dot(mu, f)), mu, p)
        return lhs - rhs
    if target == "strong_leibniz":
        if float(np.min(np.abs(f))) < INVERTIBILITY_FLOOR:
            return -math.inf
        inv = 1.0 / f
        lhs = _fast_lp(inv - float(np.dot(mu, inv)), mu, p)
        rhs = float(np.max(np.abs(inv))) ** 2 * _fast_lp(f - float(np.dot(mu, f)), mu, p)
        return lhs - rhs
    if target == "square_bound":
        sq = f * f
        lhs = _fast_lp(sq - float(np.dot(mu, sq)), mu, p)
        rhs = 2.0 * float(np.max(np.abs(f))) * _fast_lp(f - float(np.dot(mu, f)), mu, p)
        return lhs - rhs
    if target == "leibniz":
        g = inst.g
        t1 = HolderTriple.split(p, inst.split1)
        t2 = HolderTriple.split(p, inst.split2)
        fg = f * g
        lhs = _fast_lp(fg - float(np.dot(mu, fg)), mu, p)
        rhs = (_fast_lp(f, mu, t1.p) * _fast_lp(g - float(np.dot(mu, g)), mu, t1.q)
               + _fast_lp(g, mu, t2.p) * _fast_lp(f - float(np.dot(mu, f)), mu, t2.q))
        return lhs - rhs
    raise ValueError(f"unknown target {target!r}")


def replay(inst: Instance, target: str, p: float) -> VerificationReport:
    """Re-evaluate a witness through the full checkers (slow path)."""
    mu = ProbVector(inst.mu)
    if target == "chain_rule":
        return check_chain_rule(mu, inst.f, inst.phi, p)
    if target == "strong_leibniz":
        return check_strong_leibniz(mu, inst.f, p)
    if target == "square_bound":
        return check_square_bound(mu, inst.f, p)
    if target == "leibniz":
        return check_leibniz(mu, inst.f, inst.g,
                             HolderTriple.split(p, inst.split1),
                             HolderTriple.split(p, inst.split2))
    raise ValueError(f"unknown target {target!r}")


def _phi_with(phi: PiecewiseLinearFn, bp=None, slopes=None, anchor=None) -> PiecewiseLinearFn | None:
    bp = phi.breakpoints if bp is None else bp
    slopes = phi.slopes if slopes is None else slopes
    anchor = phi.anchor if anchor is None else anchor
    if np.any(np.diff(bp) <= 1e-9):
        return None
    peak = float(np.max(np.abs(slopes)))
    if peak < 1e-12:
        return None
    return PiecewiseLinearFn(np.asarray(bp, float), np.asarray(slopes, float) / peak, float(anchor))


def _neighbors(inst: Instance, target: str, step: float, monotone: bool, floor: float = 1e-3):
    """Feasible single-coordinate perturbations of an instance."""
    n = inst.mu.size
    for i in range(n):
        for sign in (+1.0, -1.0):
            raw = inst.mu.copy()
            raw[i] += sign * step
            yield replace(inst, mu=_floored_simplex(raw, floor))
    f_floor = 0.0 if target != "strong_leibniz" else INVERTIBILITY_FLOOR
    for i in range(n):
        for sign in (+1.0, -1.0):
            f = inst.f.copy()
            f[i] = float(np.clip(f[i] + sign * step, -1.0, 1.0))
            if f_floor and abs(f[i]) < f_floor:
                continue
            yield replace(inst, f=f)
    if inst.g is not None:
        for i in range(n):
            for sign in (+1.0, -1.0):
                g = inst.g.copy()
                g[i] = float(np.clip(g[i] + sign * step, -1.0, 1.0))
                yield replace(inst, g=g)
    if inst.phi is not None:
        phi = inst.phi
        for i in range(phi.slopes.size):
            for sign in (+1.0, -1.0):
                slopes = phi.slopes.copy()
                slopes[i] += sign * step
                if monotone:
                    slopes = np.clip(slopes, 0.0, None) if phi.slopes.sum() >= 0 else np.clip(slopes, None, 0.0)
                cand = _phi_with(phi, slopes=slopes)
                if cand is not None:
                    yield replace(inst, phi=cand)
        for i in range(phi.breakpoints.size):
            for sign in (+1.0, -1.0):
                bp = phi.breakpoints.copy()
                bp[i] = float(np.clip(bp[i] + sign * step, -1.0, 1.0))
                cand = _phi_with(phi, bp=np.sort(bp))
                if cand is not None:
                    yield replace(inst, phi=cand)
        for sign in (+1.0, -1.0):
            yield replace(inst, phi=_phi_with(phi, anchor=phi.anchor + sign * step))


def refine(inst: Instance, target: str, steps: int, p: float,
           monotone: bool = False, mass_floor: float = 1e-3) -> Instance:
    """Greedy coordinate hill climbing on the violation; never worsens the input.

    Runs ``steps`` full sweeps at each step size in STEP_EPOCHS.  The feasible
    region (simplex with mass floor, coordinate boxes, breakpoint ordering,
    unit Lipschitz constant) is maintained by construction.
    """
    best = inst
    best_v = violation(inst, target, p)
    for step in STEP_EPOCHS:
        for _ in range(steps):
            improved = False
            for cand in list(_neighbors(best, target, step, monotone, mass_floor)):
                if cand.phi is None and inst.phi is not None:
                    continue
                v = violation(cand, target, p)
                if v > best_v:
                    best, best_v, improved = cand, v, True
            if not improved:
                break
    return best


def search(config: SearchConfig) -> SearchResult:
    """Best violation over trials x exponents, with refinement of the leaders."""
    per_p_best: dict[float, tuple[float, int, Instance]] = {}
    leaders: dict[float, list[tuple[float, int, Instance]]] = {p: [] for p in config.p_grid}
    history: list[float] = []
    running = -math.inf
    for t in range(config.trials):
        inst = random_instance(config, t)
        for p in config.p_grid:
            v = violation(inst, config.target, p)
            cur = per_p_best.get(p)
            if cur is None or v > cur[0]:
                per_p_best[p] = (v, t, inst)
            pool = leaders[p]
            pool.append((v, t, inst))
            if len(pool) > config.refine_top:
                pool.sort(key=lambda item: (-item[0], item[1]))
                del pool[config.refine_top:]
            running = max(running, v)
        history.append(running)

    if config.refine_steps > 0:
        for p in config.p_grid:
            for v0, t, inst in sorted(leaders[p], key=lambda item: (-item[0], item[1])):
                tuned = refine(inst, config.target, config.refine_steps, p,
                               config.monotone, config.mass_floor)
                v = violation(tuned, config.target, p)
                if v > per_p_best[p][0]:
                    per_p_best[p] = (v, t, tuned)

    best_p = None
    best = (-math.inf, -1, None)
    for p in config.p_grid:
        v, t, inst = per_p_best[p]
        if v > best[0] or (v == best[0] and t < best[1]):
            best = (v, t, inst)
            best_p = p
    witness_inst: Instance = best[2]
    witness = witness_inst.to_dict()
    witness["p"] = "inf" if math.isinf(best_p) else float(best_p)
    witness["target"] = config.target
    witness["trial"] = best[1]
    witness["violation"] = best[0]
    return SearchResult(
        config=config,
        best_violation=float(best[0]),
        best_p=float(best_p),
        witness=witness,
        per_p={p: float(per_p_best[p][0]) for p in config.p_grid},
        history=history,
    )


# -- fixed counterexample witnesses ------------------------------------------

#: Inverse bound fails at p = 1 on this 3-atom instance.
RECIPROCAL_WITNESS = {
    "mu": (1.0 / 36.0, 3.0 / 4.0, 2.0 / 9.0),
    "f": (-0.3, 0.28, 0.38),
}

#: Reference figures quoted for the reciprocal witness family, and the
#: nearby instance (first coordinate -0.36) whose computed norms actually
#: match them to all printed digits; the instance above gives
#: lhs = 0.600982, rhs = 0.532250 instead.  Both versions violate the bound.
RECIPROCAL_REFERENCE = {"lhs": 0.57783, "rhs": 0.5417, "tol": 5e-4}
RECIPROCAL_WITNESS_ADJUSTED = {
    "mu": (1.0 / 36.0, 3.0 / 4.0, 2.0 / 9.0),
    "f": (-0.36, 0.28, 0.38),
}

#: Non-monotone chain rule fails at p = 1 on this V-shaped two-piece function.
VSHAPE_WITNESS = {
    "mu": (1.0 / 6.0, 9.0 / 12.0, 1.0 / 12.0),
    "f": (-11.0 / 15.0, 1.0 / 15.0, 13.0 / 15.0),
    "phi": {"breakpoints": [1.0 / 15.0], "slopes": [-1.0, 0.6], "anchor": -0.8},
}
VSHAPE_REFERENCE = {"lhs": 0.26, "rhs": 0.244, "tol": 1e-3}


def vshape_function() -> PiecewiseLinearFn:
    d = VSHAPE_WITNESS["phi"]
    return PiecewiseLinearFn(np.asarray(d["breakpoints"]), np.asarray(d["slopes"]), d["anchor"])


def reproduce_known_counterexamples(tol: float = 1e-9) -> list[VerificationReport]:
    """Run the two fixed witnesses; both reports FAIL their inequality at p = 1."""
    rep1 = check_strong_leibniz(
        ProbVector(np.asarray(RECIPROCAL_WITNESS["mu"])),
        np.asarray(RECIPROCAL_WITNESS["f"]), 1.0, tol)
    rep1.name = "strong_leibniz_reciprocal_witness"
    rep2 = check_chain_rule(
        ProbVector(np.asarray(VSHAPE_WITNESS["mu"])),
        np.asarray(VSHAPE_WITNESS["f"]), vshape_function(), 1.0, tol)
    rep2.name = "chain_rule_vshape_witness"
    return [rep1, rep2]
