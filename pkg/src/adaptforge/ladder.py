"""Staged ansatz-growth engine with cumulative ablation levels L0-L5.

The loop is score -> grow -> locally optimize -> refine -> compress, with
per-molecule presets (LiH, H2O, F2) supplying both the numeric constants and
the preset-specific branch implementations. Levels gate mechanisms
cumulatively:

  L0  raw candidate order, fixed acceptance threshold, cheap local update
  L1  + chemistry-informed scoring and queue construction
  L2  + growth control: adaptive thresholds, near-duplicate re-queuing, and
        preset extras (outer cycles / singles-first / paired-double phase for
        H2O; look-ahead seeding, efficiency checks, pass loop, injection for
        F2)
  L3  + stronger local updates (warm starts, test-angle sets, stall repair)
  L4  + global refinement sweeps over all angles
  L5  + compression (angle snapping / amplitude- and gate-aware pruning)

All constants live in presets/*.json and are echoed into every RunRecord.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from importlib import resources as importlib_resources

import numpy as np

from . import opt1d
from .hamio import IntegralSet, mp2_amplitude
from .pools import DOUBLE, SINGLE, Excitation, frozen_core_filter, \
    generate_pool
from .resources import CostModel, excitation_cost, make_record
from .statevector import EnergyContext

PRESET_NAMES = ("LiH", "H2O", "F2", "custom")
MIN_IMPROVEMENT = 1e-12
STALL_RESET_TOL = 1e-10
SNAP_SET_DEFAULT = (0.0, np.pi / 8, -np.pi / 8, np.pi / 4, -np.pi / 4,
                    np.pi / 2, -np.pi / 2, np.pi, -np.pi)


class ConfigError(ValueError):
    """Invalid or inconsistent ladder configuration."""


@dataclass(frozen=True)
class LadderConfig:
    """Level + preset constants for one ladder run (see presets/*.json)."""

    level: int = 0
    preset: str = "custom"
    # pool construction
    pool_schedule: tuple = ({"cycle": 0, "family": "UCCSD"},)
    frozen_core: tuple = ()
    # budgets
    T: int = 60                  # growth iterations per cycle
    T_ops: int = 12              # accepted-operator budget
    P_max: int = 1               # passes over the candidate queue (F2)
    K_cycles: int = 1            # outer cycles at level >= 2 (H2O)
    l_min: int = 2               # always-accept floor on ansatz length
    l_s: int = 0                 # singles-first warmup cutoff (H2O)
    # acceptance thresholds
    tau_base: float = 2e-4
    tau_decay: float = 0.97
    geometry_window: tuple | None = None
    geometry_low: float = 1.0
    geometry_high: float = 1.0
    tau_double_factor: float = 2.0
    tau_single_factor: float = 0.5
    efficiency_floor: float = 0.0
    # scoring
    score_eps: float = 1e-9
    k_trunc: int = 1000
    k_trunc_stretch: int | None = None
    locality_lambda: float = 8.0
    single_weight: float = 0.05
    gap_delta: float = 0.1
    gate_gamma: float = 0.0
    weak_integral_tol: float = 1e-8
    weak_amp_tol: float = 0.01
    denominator_floor: float = 0.05
    paired_boost: float = 2.0
    overlap_boost: float = 1.0
    stretch_r: float = 2.0
    # candidate selection
    head_slice: tuple = ()       # [(r_upper, size), ...]
    lookahead_b: int = 0
    theta_lookahead: float = 0.1
    requeue_window: int = 3
    max_deferrals: int = 2
    injection_period: int = 7
    paired_phase_quota: int = 3
    # local updates
    newton_max_step: float = 0.3
    trial_double: float = 0.1
    trial_single: float = 0.05
    trial_single_slope: float = 0.02
    theta_test_set: tuple = (0.05, -0.05, 0.1, -0.1, 0.2, -0.2)
    local_grid: tuple = (0.01, -0.01, 0.03, -0.03, 0.08, -0.08)
    warm_clip: float = 0.5
    # stall repair
    stall_recent: int = 3
    stall_broad: int = 6
    # global refinement
    refine_sweeps: int = 8
    refine_tol: float = 1e-9
    critical_extra_sweeps: int = 3
    parabolic_spread: float = 0.1
    aggressive_cap: int = 6
    # compression
    snap_set: tuple = SNAP_SET_DEFAULT
    snap_budget: float = 4e-4
    prune_tol: float = 1e-3
    prune_safety: float = 0.5
    prune_energy_tol: float = 2e-5
    critical_window: tuple | None = None

    def __post_init__(self):
        if not 0 <= self.level <= 5:
            raise ConfigError(f"level must be 0..5, got {self.level}")
        if self.preset not in PRESET_NAMES:
            raise ConfigError(f"unknown preset {self.preset!r}")
        if self.lookahead_b > 0 and self.preset in ("LiH", "H2O"):
            raise ConfigError(
                f"look-ahead seeding is not part of the {self.preset} preset")

    @classmethod
    def from_preset(cls, name: str, level: int, **overrides) -> "LadderConfig":
        """Load presets/<name>.json and apply keyword overrides."""
        if name == "custom":
            return cls(level=level, preset="custom", **overrides)
        path = importlib_resources.files("adaptforge").joinpath(
            "presets", f"{name.lower()}.json")
        try:
            data = json.loads(path.read_text())
        except FileNotFoundError:
            raise ConfigError(f"no preset file for {name!r}") from None
        data.update(overrides)
        data["level"] = level
        for key in ("pool_schedule", "frozen_core", "geometry_window",
                    "head_slice", "theta_test_set", "local_grid", "snap_set",
                    "critical_window"):
            if isinstance(data.get(key), list):
                data[key] = tuple(
                    tuple(v) if isinstance(v, list) else v for v in data[key])
        return cls(**data)

    def echo(self) -> dict:
        """JSON-serializable copy for RunRecord config echoing."""
        out = asdict(self)
        out["mechanisms"] = sorted(enabled_mechanisms(self))
        return out


def enabled_mechanisms(cfg: LadderConfig) -> frozenset:
    """Mechanism names active at cfg.level; strictly grows with the level."""
    level, preset = cfg.level, cfg.preset
    m = set()
    if level >= 1:
        m.add("scoring")
        if preset == "H2O":
            m.add("head_slice")
    if level >= 2:
        m |= {"adaptive_tau", "requeue"}
        if preset == "H2O":
            m |= {"outer_cycles", "pool_schedule", "singles_first",
                  "paired_phase", "relaxed_core"}
        if preset == "F2":
            m |= {"lookahead", "efficiency", "pass_loop", "injection"}
    if level >= 3:
        m.add({"LiH": "warmstart_update", "H2O": "theta_test_update",
               "F2": "stall_repair"}.get(preset, "strong_local_update"))
        if preset == "H2O":
            m.add("matching_single")
    if level >= 4:
        m.add("refine_global")
    if level >= 5:
        m.add("compress")
        if preset == "H2O":
            m.add("type_tau")
        if preset == "F2":
            m.add("ingrowth_prune")
    return frozenset(m)


@dataclass
class GrowthState:
    """Mutable growth-loop state; |thetas| == |ansatz| at all times."""

    ansatz: list = field(default_factory=list)
    thetas: list = field(default_factory=list)
    energy: float = 0.0
    e_best: float = 0.0
    t: int = 0
    n_acc: int = 0
    consecutive_rejections: int = 0
    trace: list = field(default_factory=list)


def _double_orientation(ints: IntegralSet, exc: Excitation):
    """(i, j, a, b) with the occupied side first when one side is occupied."""
    occ = ints.hf_occupation
    i, j = exc.from_indices
    a, b = exc.to_indices
    if occ[i] == "0" and occ[j] == "0" and occ[a] == "1" and occ[b] == "1":
        return a, b, i, j
    return i, j, a, b


def _double_amplitude(ints: IntegralSet, exc: Excitation) -> float:
    i, j, a, b = _double_orientation(ints, exc)
    return mp2_amplitude(ints, i, j, a, b)


def _double_integral(ints: IntegralSet, exc: Excitation) -> float:
    """|<ab||ij>| for the oriented double."""
    i, j, a, b = _double_orientation(ints, exc)
    h2 = ints.two_body_dense
    return abs(float(h2[a, b, j, i] - h2[a, b, i, j]))


def _in_window(R: float, window) -> bool:
    return window is not None and window[0] <= R <= window[1]


def score_excitation(cfg: LadderConfig, exc: Excitation, ints: IntegralSet,
                     R: float, cost_model: CostModel | None = None) -> float:
    """Chemistry-informed candidate score (>= 0); preset-specific shaping."""
    occ = ints.hf_occupation
    locality = np.exp(-exc.span / cfg.locality_lambda)
    if exc.kind == SINGLE:
        p = exc.from_indices[0]
        q = exc.to_indices[0]
        if occ[p] == occ[q]:
            return 0.0  # acts trivially on the reference
        gap = abs(ints.spin_orbital_energy(q) - ints.spin_orbital_energy(p))
        score = cfg.single_weight / (gap + cfg.gap_delta) * locality
    else:
        i, j, a, b = _double_orientation(ints, exc)
        if not (occ[i] == occ[j] == "1" and occ[a] == occ[b] == "0"):
            return 0.0  # acts trivially on the reference
        amp, degenerate = mp2_amplitude(ints, i, j, a, b, return_flag=True)
        amp = abs(amp)
        if degenerate:
            # degenerate denominator signals static correlation: rank by the
            # bare integral over a floored gap instead of dropping the term
            amp = _double_integral(ints, exc) / cfg.denominator_floor
        score = amp * locality
        if cfg.preset == "H2O":
            if _double_integral(ints, exc) < cfg.weak_integral_tol:
                return 0.0
            if R >= cfg.stretch_r:
                if not _in_window(R, cfg.critical_window) and not exc.paired \
                        and amp < cfg.weak_amp_tol:
                    return 0.0
                boost = cfg.paired_boost if exc.paired else 1.0
                boost *= 1.0 + cfg.overlap_boost * _double_integral(ints, exc)
                score *= boost
    if cfg.gate_gamma > 0.0:
        model = cost_model if cost_model is not None else CostModel()
        score /= 1.0 + cfg.gate_gamma * excitation_cost(exc, model)
    return float(score)


def build_queue(pool, scorer, eps: float, k_trunc: int):
    """Score-descending candidate queue (stable on ties) plus the overflow
    kept beyond the truncation point (used for deep injection)."""
    scored = [(scorer(exc), idx, exc) for idx, exc in enumerate(pool)]
    scored.sort(key=lambda item: (-item[0], item[1]))
    kept = [exc for s, _, exc in scored if s >= eps]
    return kept[:k_trunc], kept[k_trunc:]


def _geometry_factor(cfg: LadderConfig, R: float) -> float:
    if cfg.geometry_window is None:
        return 1.0
    lo, hi = cfg.geometry_window
    if R <= lo:
        return cfg.geometry_low
    if R >= hi:
        return cfg.geometry_high
    frac = (R - lo) / (hi - lo)
    return cfg.geometry_low + frac * (cfg.geometry_high - cfg.geometry_low)


def acceptance_tau(cfg: LadderConfig, level: int, t: int, R: float,
                   exc: Excitation | None = None) -> float:
    """Effective acceptance threshold tau(t, R) at the given level."""
    if level < 2:
        tau = cfg.tau_base
    else:
        tau = cfg.tau_base * cfg.tau_decay ** t * _geometry_factor(cfg, R)
    if cfg.preset == "H2O" and level >= 5 and exc is not None:
        tau *= (cfg.tau_double_factor if exc.kind == DOUBLE
                else cfg.tau_single_factor)
    return tau


def acceptance_test(cfg: LadderConfig, level: int, delta_e: float,
                    state: GrowthState, R: float, op_cost: int,
                    exc: Excitation | None = None) -> bool:
    """Accept a locally optimized candidate? Accepted steps always lower E."""
    if delta_e <= MIN_IMPROVEMENT:
        return False
    if len(state.ansatz) < cfg.l_min:
        return True  # minimum-length override (logged by the caller)
    if level >= 2 and cfg.preset == "F2" and cfg.efficiency_floor > 0.0 \
            and state.ansatz:
        if delta_e / op_cost < cfg.efficiency_floor:
            return False
    return delta_e > acceptance_tau(cfg, level, state.t, R, exc)


def _coarse_golden_1d(f, tol: float = 1e-5):
    """Coarse scan over [-pi, pi] then golden-section refinement.

    Returns the best point seen anywhere (scan or refinement), with
    coarse-scan ties broken toward theta = 0.
    """
    grid = np.linspace(-np.pi, np.pi, 9)
    values = np.array([f(t) for t in grid])
    near = np.nonzero(values <= values.min() + 1e-12)[0]
    best = int(near[np.argmin(np.abs(grid[near]))])
    best_theta = float(grid[best])
    best_val = float(values[best])
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, len(grid) - 1)]
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        for theta, val in ((c, fc), (d, fd)):
            if val < best_val:
                best_theta, best_val = float(theta), float(val)
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = f(d)
    return best_theta, best_val


def local_update(cfg: LadderConfig, level: int, ctx: EnergyContext,
                 state: GrowthState, exc: Excitation,
                 ints: IntegralSet, R: float):
    """Candidate angle and trial energy for exc appended to the ansatz."""
    ansatz = state.ansatz + [exc]

    def f(t):
        return ctx.energy(ansatz, state.thetas + [float(t)])

    preset = cfg.preset
    if preset == "F2":
        theta = opt1d.newton_1d(f, 0.0, cfg.newton_max_step)
        return theta, f(theta)
    if preset == "H2O":
        if level >= 3:
            angles = list(cfg.theta_test_set)
            if exc.kind == DOUBLE:
                amp = _double_amplitude(ints, exc)
                if amp != 0.0:
                    angles.append(float(np.clip(amp, -cfg.warm_clip,
                                                cfg.warm_clip)))
            best_theta = min(angles, key=lambda t: (f(t), abs(t)))
            refined = [best_theta] + [best_theta + d for d in cfg.local_grid]
            theta = min(refined, key=lambda t: (f(t), abs(t)))
            return float(theta), f(theta)
        # single heuristic trial angle
        if exc.kind == DOUBLE:
            amp = _double_amplitude(ints, exc)
            theta = (float(np.clip(amp, -0.3, 0.3)) if amp != 0.0
                     else cfg.trial_double)
        else:
            theta = cfg.trial_single + cfg.trial_single_slope * (R - 1.0)
        return float(theta), f(theta)
    # LiH / custom
    if level >= 3:
        warm = 0.0
        if exc.kind == DOUBLE:
            warm = float(np.clip(_double_amplitude(ints, exc),
                                 -cfg.warm_clip, cfg.warm_clip))
        landscape = opt1d.reconstruct_1d(f, warm)
        theta, _ = opt1d.minimize_1d(landscape)
        return theta, f(theta)
    return _coarse_golden_1d(f)


def lookahead_seed(ctx: EnergyContext, state: GrowthState, queue,
                   B: int, theta_test: float) -> Excitation:
    """Probe the top-B candidates once each; return the lowest-energy one."""
    if not queue:
        raise ConfigError("look-ahead on an empty candidate queue")
    batch = queue[:B]
    if theta_test == 0.0:
        return batch[0]  # all probes equal the incumbent; score order wins
    best_exc, best_e = None, np.inf
    for exc in batch:
        e = ctx.energy(state.ansatz + [exc], state.thetas + [theta_test])
        if e < best_e:
            best_exc, best_e = exc, e
    return best_exc


def _coordinate_newton(cfg, ctx, state, index):
    """One clipped Newton update of angle <index>; keeps only improvements."""
    thetas = state.thetas

    def f(t):
        probe = list(thetas)
        probe[index] = float(t)
        return ctx.energy(state.ansatz, probe)

    theta_new = opt1d.newton_1d(f, thetas[index], cfg.newton_max_step)
    e_new = f(theta_new)
    if e_new < state.energy:
        thetas[index] = float(theta_new)
        state.energy = e_new
        return True
    return False


def stall_repair(cfg: LadderConfig, ctx: EnergyContext, state: GrowthState,
                 scope: str) -> bool:
    """Newton sweep over recent (last min(4,|A|)) or all angles.

    Returns True iff E dropped by more than the reset tolerance, in which
    case the caller resets its stagnation counters.
    """
    if not state.ansatz:
        return False
    if scope == "recent":
        indices = range(max(0, len(state.ansatz) - 4), len(state.ansatz))
    elif scope == "broad":
        indices = range(len(state.ansatz))
    else:
        raise ValueError(f"unknown repair scope {scope!r}")
    e0 = state.energy
    for i in indices:
        _coordinate_newton(cfg, ctx, state, i)
    return e0 - state.energy > STALL_RESET_TOL


def _coordinate_landscape_min(ctx, state, index):
    """Exact 1D minimization of one angle (reconstruct + global minimize)."""
    thetas = state.thetas

    def f(t):
        probe = list(thetas)
        probe[index] = float(t)
        return ctx.energy(state.ansatz, probe)

    landscape = opt1d.reconstruct_1d(f, thetas[index])
    theta, _ = opt1d.minimize_1d(landscape)
    e_new = f(theta)
    if e_new <= state.energy:
        thetas[index] = float(theta)
        state.energy = e_new


def _coordinate_parabolic(cfg, ctx, state, index):
    thetas = state.thetas

    def f(t):
        probe = list(thetas)
        probe[index] = float(t)
        return ctx.energy(state.ansatz, probe)

    theta = opt1d.parabolic_1d(f, thetas[index], cfg.parabolic_spread)
    e_new = f(theta)
    if e_new < state.energy:
        thetas[index] = float(theta)
        state.energy = e_new


def refine_global(cfg: LadderConfig, ctx: EnergyContext, state: GrowthState,
                  R: float) -> None:
    """Re-optimize all angles in place; the operator set never changes."""
    if not state.ansatz:
        return
    preset = cfg.preset
    if preset == "H2O":
        # decoupled order: singles first, doubles second, parabolic updates
        order = [i for i, o in enumerate(state.ansatz) if o.kind == SINGLE]
        order += [i for i, o in enumerate(state.ansatz) if o.kind == DOUBLE]
        sweeps = cfg.refine_sweeps
        if _in_window(R, cfg.critical_window):
            sweeps += cfg.critical_extra_sweeps
        for _ in range(sweeps):
            e0 = state.energy
            for i in order:
                _coordinate_parabolic(cfg, ctx, state, i)
            if e0 - state.energy < cfg.refine_tol:
                break
        return
    if preset == "F2":
        for _ in range(cfg.refine_sweeps):
            e0 = state.energy
            for i in range(len(state.ansatz)):
                _coordinate_newton(cfg, ctx, state, i)
            if e0 - state.energy < cfg.refine_tol:
                break
        # aggressive pass: exact coordinate minimization until stagnant
        for _ in range(cfg.aggressive_cap):
            e0 = state.energy
            for i in range(len(state.ansatz)):
                _coordinate_landscape_min(ctx, state, i)
            if e0 - state.energy < cfg.refine_tol:
                break
        # final suffix refinement over the most recent angles
        for i in range(max(0, len(state.ansatz) - 6), len(state.ansatz)):
            _coordinate_newton(cfg, ctx, state, i)
        return
    # LiH / custom: exact coordinate sweeps to stationarity
    for _ in range(cfg.refine_sweeps):
        e0 = state.energy
        for i in range(len(state.ansatz)):
            _coordinate_landscape_min(ctx, state, i)
        if e0 - state.energy < cfg.refine_tol:
            break


def _remove_operator(ctx, state, index):
    """Energy of the ansatz with operator <index> removed (counted/cached)."""
    ansatz = state.ansatz[:index] + state.ansatz[index + 1:]
    thetas = state.thetas[:index] + state.thetas[index + 1:]
    return ansatz, thetas, ctx.energy(ansatz, thetas)


def compress(cfg: LadderConfig, ctx: EnergyContext, state: GrowthState,
             R: float, cost_model: CostModel) -> None:
    """Shrink the ansatz: snapping (LiH), amplitude pruning (H2O), or
    gate-aware iterative pruning (F2). Never adds operators."""
    if not state.ansatz:
        return
    preset = cfg.preset
    if preset == "H2O":
        # prune weak doubles, re-evaluating after each tentative removal;
        # the allowance is cumulative against the pre-compression energy
        budget = 1.6e-3 * cfg.prune_safety
        e_pre = state.energy
        changed = True
        while changed:
            changed = False
            order = sorted(
                (i for i, o in enumerate(state.ansatz)
                 if o.kind == DOUBLE and abs(state.thetas[i]) < cfg.prune_tol),
                key=lambda i: abs(state.thetas[i]))
            for i in order:
                ansatz, thetas, e = _remove_operator(ctx, state, i)
                if e - e_pre < budget:
                    state.ansatz, state.thetas, state.energy = ansatz, thetas, e
                    changed = True
                    break
        return
    if preset == "F2":
        tol = cfg.prune_energy_tol
        if _in_window(R, cfg.critical_window):
            tol /= 4.0  # more conservative pruning near the barrier
        for pass_tol, weak_only in ((tol, False), (tol, True)):
            changed = True
            while changed and state.ansatz:
                changed = False
                order = sorted(
                    range(len(state.ansatz)),
                    key=lambda i: (abs(state.thetas[i])
                                   * excitation_cost(state.ansatz[i],
                                                     cost_model), i))
                for i in order:
                    if weak_only and abs(state.thetas[i]) >= cfg.prune_tol:
                        continue
                    ansatz, thetas, e = _remove_operator(ctx, state, i)
                    if e - state.energy < pass_tol:
                        state.ansatz, state.thetas = ansatz, thetas
                        state.energy = e
                        changed = True
                        break
        return
    # LiH / custom: snap to the discrete set, then prune zeros and weak angles
    e_pre = state.energy
    for i in range(len(state.ansatz)):
        nearest = min(cfg.snap_set,
                      key=lambda s: (abs(s - state.thetas[i]), abs(s)))
        if nearest == state.thetas[i]:
            continue
        trial = list(state.thetas)
        trial[i] = float(nearest)
        e = ctx.energy(state.ansatz, trial)
        if e - e_pre <= cfg.snap_budget:
            state.thetas = trial
            state.energy = e
    for predicate in (lambda th: th == 0.0,
                      lambda th: abs(th) < cfg.prune_tol):
        changed = True
        while changed and state.ansatz:
            changed = False
            for i in range(len(state.ansatz)):
                if not predicate(state.thetas[i]):
                    continue
                ansatz, thetas, e = _remove_operator(ctx, state, i)
                if e - e_pre <= cfg.snap_budget:
                    state.ansatz, state.thetas, state.energy = ansatz, thetas, e
                    changed = True
                    break


def _ingrowth_prune(cfg, ctx, state):
    """F2 L5: drop near-zero amplitudes mid-growth when energetically free."""
    changed = True
    while changed and len(state.ansatz) > cfg.l_min:
        changed = False
        for i in range(len(state.ansatz)):
            if abs(state.thetas[i]) >= 1e-4:
                continue
            ansatz, thetas, e = _remove_operator(ctx, state, i)
            if e - state.energy < 1e-8:
                state.ansatz, state.thetas, state.energy = ansatz, thetas, e
                changed = True
                break


def _pool_family(cfg: LadderConfig, mech, cycle: int, R: float) -> str:
    family = None
    for entry in cfg.pool_schedule:
        entry_cycle = entry.get("cycle", 0)
        if entry_cycle > cycle:
            continue
        if entry_cycle > 0 and "pool_schedule" not in mech:
            continue
        if "r_at_least" in entry and R < entry["r_at_least"]:
            continue
        family = entry["family"]
    if family is None:
        raise ConfigError("pool schedule has no entry for cycle 0")
    return family


def _build_cycle_queue(cfg, mech, ints, R, cycle, state, cost_model):
    family = _pool_family(cfg, mech, cycle, R)
    pool = generate_pool(family, ints.n_spin_orbitals, ints.hf_occupation)
    if cfg.frozen_core:
        pool = frozen_core_filter(pool, cfg.frozen_core,
                                  relaxed="relaxed_core" in mech)
    taken = set(state.ansatz)
    candidates = [exc for exc in pool if exc not in taken]
    if "scoring" in mech:
        k = cfg.k_trunc
        if cfg.k_trunc_stretch is not None and R >= cfg.stretch_r:
            k = cfg.k_trunc_stretch
        return build_queue(
            candidates,
            lambda exc: score_excitation(cfg, exc, ints, R, cost_model),
            cfg.score_eps, k)
    return candidates, []


def _head_slice_size(cfg: LadderConfig, R: float) -> int | None:
    for r_upper, size in cfg.head_slice:
        if R < r_upper:
            return int(size)
    return None


def _select_candidate(cfg, mech, state, queue, R, cycle_accepts) -> int:
    """Index into queue of the next proposal, honoring phase filters."""
    window = queue
    limit = len(queue)
    if "head_slice" in mech:
        size = _head_slice_size(cfg, R)
        if size is not None:
            limit = min(size, len(queue))
            window = queue[:limit]
    if "singles_first" in mech and len(state.ansatz) < cfg.l_s:
        for i, exc in enumerate(window):
            if exc.kind == SINGLE:
                return i
    if "paired_phase" in mech and R >= cfg.stretch_r \
            and cycle_accepts < cfg.paired_phase_quota:
        for i, exc in enumerate(window):
            if exc.kind == DOUBLE and exc.paired:
                return i
    return 0


def _is_near_duplicate(cfg: LadderConfig, exc: Excitation, state) -> bool:
    """Same index multiset as a recently accepted operator."""
    recent = state.ansatz[-cfg.requeue_window:]
    target = sorted(exc.indices)
    return any(sorted(a.indices) == target for a in recent)


def _insert_matching_singles(cfg, ctx, state, paired: Excitation):
    """After a paired double, add the spin singles on the same spatial
    orbitals, locally retuned; kept only when they lower the energy."""
    (i0, i1), (a0, a1) = paired.from_indices, paired.to_indices
    inserted = []
    for frm, to in ((i0, a0), (i1, a1)):
        single = Excitation(SINGLE, (frm,), (to,))
        if single in state.ansatz:
            continue
        ansatz = state.ansatz + [single]

        def f(t):
            return ctx.energy(ansatz, state.thetas + [float(t)])

        theta = opt1d.parabolic_1d(f, 0.0, cfg.parabolic_spread)
        e_new = f(theta)
        if state.energy - e_new > MIN_IMPROVEMENT:
            state.ansatz.append(single)
            state.thetas.append(float(theta))
            state.energy = e_new
            inserted.append((single, theta))
    return inserted


def run_ladder(ctx: EnergyContext, ints: IntegralSet, cfg: LadderConfig,
               meta) -> "RunRecord":
    """Execute the configured preset's growth loop at the configured level."""
    mech = enabled_mechanisms(cfg)
    R = float(meta["bond_length"])
    cost_model = meta["cost_model"]
    evals0 = ctx.counter.energy_evaluations

    state = GrowthState()
    state.energy = ctx.energy([], [])
    state.e_best = state.energy

    cycles = cfg.K_cycles if "outer_cycles" in mech else 1
    for cycle in range(cycles):
        queue, overflow = _build_cycle_queue(
            cfg, mech, ints, R, cycle, state, cost_model)
        deferrals = {}
        rejected_this_pass = []
        pass_count = 0
        cycle_accepts = 0
        cycle_start_energy = state.energy
        while state.t < cfg.T * cycles and state.n_acc < cfg.T_ops:
            if not queue:
                if "pass_loop" in mech and pass_count + 1 < cfg.P_max \
                        and rejected_this_pass:
                    pass_count += 1
                    queue = rejected_this_pass
                    rejected_this_pass = []
                    state.trace.append(("pass", pass_count))
                    continue
                break
            idx = _select_candidate(cfg, mech, state, queue, R, cycle_accepts)
            if "lookahead" in mech and state.t == 0 and state.n_acc == 0 \
                    and len(queue) > 1:
                seed = lookahead_seed(ctx, state, queue, cfg.lookahead_b,
                                      cfg.theta_lookahead)
                idx = queue.index(seed)
                state.trace.append(("lookahead", seed.describe()))
            exc = queue.pop(idx)
            if "requeue" in mech and _is_near_duplicate(cfg, exc, state) \
                    and deferrals.get(exc, 0) < cfg.max_deferrals:
                deferrals[exc] = deferrals.get(exc, 0) + 1
                queue.insert(min(len(queue), len(queue) // 2 + idx), exc)
                state.trace.append(("defer", exc.describe()))
                state.t += 1
                continue
            theta, e_trial = local_update(cfg, cfg.level, ctx, state, exc,
                                          ints, R)
            delta_e = state.energy - e_trial
            op_cost = excitation_cost(exc, cost_model)
            accept = acceptance_test(cfg, cfg.level, delta_e, state, R,
                                     op_cost, exc)
            state.t += 1
            if accept:
                override = (len(state.ansatz) < cfg.l_min and delta_e
                            <= acceptance_tau(cfg, cfg.level, state.t - 1,
                                              R, exc))
                state.ansatz.append(exc)
                state.thetas.append(float(theta))
                state.energy = e_trial
                state.n_acc += 1
                cycle_accepts += 1
                state.consecutive_rejections = 0
                state.trace.append(
                    ("accept_lmin" if override else "accept",
                     exc.describe(), float(theta), float(delta_e)))
                if "matching_single" in mech and exc.paired:
                    for single, th in _insert_matching_singles(
                            cfg, ctx, state, exc):
                        state.n_acc += 1
                        cycle_accepts += 1
                        state.trace.append(
                            ("matching_single", single.describe(), float(th)))
                if "ingrowth_prune" in mech and state.n_acc % 3 == 0 \
                        and len(state.ansatz) >= 4:
                    _ingrowth_prune(cfg, ctx, state)
            else:
                rejected_this_pass.append(exc)
                state.consecutive_rejections += 1
                state.trace.append(("reject", exc.describe(), float(delta_e)))
                if "injection" in mech and R >= cfg.stretch_r and overflow \
                        and state.consecutive_rejections \
                        % cfg.injection_period == 0:
                    deep = overflow.pop(0)
                    queue.insert(0, deep)
                    state.trace.append(("inject", deep.describe()))
                if "stall_repair" in mech:
                    scope = None
                    if state.consecutive_rejections == cfg.stall_broad:
                        scope = "broad"
                    elif state.consecutive_rejections == cfg.stall_recent:
                        scope = "recent"
                    if scope is not None:
                        if stall_repair(cfg, ctx, state, scope):
                            state.consecutive_rejections = 0
                        state.trace.append(("stall_repair", scope))
            state.e_best = min(state.e_best, state.energy)
        if "outer_cycles" in mech \
                and cycle_start_energy - state.energy < cfg.refine_tol \
                and cycle > 0:
            break  # cycle brought nothing; later cycles would repeat it

    if "refine_global" in mech:
        refine_global(cfg, ctx, state, R)
        state.trace.append(("refine", float(state.energy)))
    if "compress" in mech:
        compress(cfg, ctx, state, R, cost_model)
        state.trace.append(("compress", len(state.ansatz),
                            float(state.energy)))
    state.e_best = min(state.e_best, state.energy)

    return make_record(meta, "ladder", cfg.level, state.energy, state.ansatz,
                       state.thetas,
                       ctx.counter.energy_evaluations - evals0,
                       accepted_trace=state.trace, config=cfg.echo())
