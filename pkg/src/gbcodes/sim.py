"""Code-capacity Monte Carlo under depolarizing noise.

Each data qubit independently suffers X, Y, or Z with probabilities
(p_X, p_Y, p_Z) summing to p_phys (equal thirds by default); syndrome
measurement is perfect.  A trial fails when either sector residual
(error + correction) has nonzero syndrome or lies outside the matching
stabilizer row space, so corrections equivalent up to a stabilizer get
full degeneracy credit.

Determinism: trial t of a run draws from a Philox stream keyed by
(seed, t), so results are bit-identical regardless of how trials are
chunked across workers; aggregation is an order-independent sum.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict

import numpy as np

from .code import GBCode
from .decode import BPConfig, CSSDecoder
from .errors import InsufficientDataError

__all__ = [
    "NoiseModel",
    "SimResult",
    "sample_error",
    "is_logical_failure",
    "run_point",
    "sweep",
    "ThresholdEstimate",
    "estimate_threshold",
    "write_csv",
    "read_csv",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ["code_id", "n", "k", "d", "decoder", "p_phys", "trials",
               "failures", "p_log", "ci_lo", "ci_hi", "seed"]


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing channel: total rate p_phys split across X, Y, Z."""

    p_phys: float
    split: tuple[float, float, float]

    @classmethod
    def depolarizing(cls, p_phys: float) -> "NoiseModel":
        third = p_phys / 3.0
        return cls(p_phys=p_phys, split=(third, third, third))

    def __post_init__(self):
        if not 0.0 <= self.p_phys <= 1.0:
            raise ValueError("p_phys must lie in [0, 1]")
        if any(s < 0 for s in self.split):
            raise ValueError("split rates must be nonnegative")
        if abs(sum(self.split) - self.p_phys) > 1e-12:
            raise ValueError("split must sum to p_phys")


@dataclass(frozen=True)
class SimResult:
    code_id: str
    n: int
    k: int
    d: int | None
    decoder: str
    p_phys: float
    trials: int
    failures: int
    p_log: float
    ci_lo: float
    ci_hi: float
    seed: int


def wilson_interval(failures: int, trials: int, z: float = 1.96):
    """95% Wilson score interval; always contains failures/trials."""
    if trials == 0:
        return (0.0, 1.0)
    phat = failures / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    spread = (z / denom) * math.sqrt(
        phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    return (max(0.0, center - spread), min(1.0, center + spread))


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Counter-based per-trial stream: Philox keyed by (seed, trial)."""
    return np.random.Generator(
        np.random.Philox(key=np.array([seed & (2**64 - 1), trial],
                                      dtype=np.uint64)))


def sample_error(num_qubits: int, noise: NoiseModel,
                 rng: np.random.Generator):
    """One i.i.d. depolarizing draw; returns (x_part, z_part) uint8
    vectors.  Y errors contribute to both parts."""
    px, py, pz = noise.split
    r = rng.random(num_qubits)
    x_part = (r < px + py).astype(np.uint8)
    z_part = ((r >= px) & (r < px + py + pz)).astype(np.uint8)
    return x_part, z_part


class _FailureChecker:
    """Batched residual classification against one code."""

    def __init__(self, code: GBCode):
        self.code = code
        self.hx = code.hx.astype(np.int64)
        self.hz = code.hz.astype(np.int64)
        self._x_red = _rref_array(code.hx)
        self._z_red = _rref_array(code.hz)

    def failures(self, resid_x: np.ndarray, resid_z: np.ndarray) -> np.ndarray:
        bad = ((resid_x.astype(np.int64) @ self.hz.T) % 2).any(axis=1)
        bad |= ((resid_z.astype(np.int64) @ self.hx.T) % 2).any(axis=1)
        bad |= ~_in_rowspace_batch(resid_x, *self._x_red)
        bad |= ~_in_rowspace_batch(resid_z, *self._z_red)
        return bad


def _rref_array(mat: np.ndarray):
    """RREF of a binary matrix as (rows, pivot_cols) dense arrays."""
    work = (np.asarray(mat) & 1).astype(np.uint8).copy()
    m, n = work.shape
    pivots = []
    r = 0
    for col in range(n):
        hits = np.flatnonzero(work[r:, col])
        if len(hits) == 0:
            continue
        pr = int(hits[0]) + r
        if pr != r:
            work[[r, pr]] = work[[pr, r]]
        others = np.flatnonzero(work[:, col])
        others = others[others != r]
        work[others] ^= work[r]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return work[:r], np.array(pivots, dtype=int)


def _in_rowspace_batch(vecs: np.ndarray, red_rows: np.ndarray,
                       pivot_cols: np.ndarray) -> np.ndarray:
    resid = (np.asarray(vecs) & 1).astype(np.uint8).copy()
    for row, col in zip(red_rows, pivot_cols):
        mask = resid[:, col] == 1
        if mask.any():
            resid[mask] ^= row
    return ~resid.any(axis=1)


def is_logical_failure(code: GBCode, residual_x, residual_z) -> bool:
    """True when a residual pair is detectable or acts as a nontrivial
    logical; residuals equal to stabilizers are not failures."""
    checker = _FailureChecker(code)
    rx = np.atleast_2d(np.asarray(residual_x, dtype=np.uint8))
    rz = np.atleast_2d(np.asarray(residual_z, dtype=np.uint8))
    return bool(checker.failures(rx, rz)[0])


def _run_chunk(code: GBCode, decoder_spec: str, noise: NoiseModel,
               seed: int, lo: int, hi: int,
               bp_config: BPConfig, exact_recovery: bool = False) -> int:
    """Failure count over trials [lo, hi); deterministic in (seed, range)."""
    n2 = 2 * code.n
    count = hi - lo
    err_x = np.empty((count, n2), dtype=np.uint8)
    err_z = np.empty((count, n2), dtype=np.uint8)
    for t in range(lo, hi):
        x, z = sample_error(n2, noise, _trial_rng(seed, t))
        err_x[t - lo] = x
        err_z[t - lo] = z
    decoder = CSSDecoder(code, decoder_spec, noise.p_phys, bp_config=bp_config)
    synd_x = (err_z.astype(np.int64) @ code.hx.T.astype(np.int64)) % 2
    synd_z = (err_x.astype(np.int64) @ code.hz.T.astype(np.int64)) % 2
    corr_x, corr_z = decoder.decode_batch(synd_x, synd_z)
    resid_x = err_x ^ corr_x
    resid_z = err_z ^ corr_z
    if exact_recovery:
        return int((resid_x.any(axis=1) | resid_z.any(axis=1)).sum())
    checker = _FailureChecker(code)
    return int(checker.failures(resid_x, resid_z).sum())


def _chunk_worker(args) -> int:
    desc, decoder_spec, noise, seed, lo, hi, bp_config, exact = args
    code = GBCode.from_descriptor(desc)
    return _run_chunk(code, decoder_spec, noise, seed, lo, hi, bp_config,
                      exact)


def run_point(code: GBCode, decoder_spec: str, noise, trials: int,
              seed: int, threads: int = 1,
              bp_config: BPConfig | None = None,
              exact_recovery: bool = False) -> SimResult:
    """Monte Carlo logical failure estimate at one physical rate.

    ``noise`` is a NoiseModel or a plain p_phys.  Decoder errors count
    as failures by construction (a correction that cannot satisfy the
    syndrome leaves a detectable residual).  ``exact_recovery`` switches
    to the stricter error-identity accounting used to measure the
    degeneracy credit; the default is class-level.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if isinstance(noise, (int, float)):
        noise = NoiseModel.depolarizing(float(noise))
    bp_config = bp_config or BPConfig()
    chunk = 2048
    ranges = [(lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]
    if threads > 1 and len(ranges) > 1:
        desc = code.to_descriptor()
        args = [(desc, decoder_spec, noise, seed, lo, hi, bp_config,
                 exact_recovery) for lo, hi in ranges]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            failures = sum(pool.map(_chunk_worker, args))
    else:
        failures = sum(
            _run_chunk(code, decoder_spec, noise, seed, lo, hi, bp_config,
                       exact_recovery)
            for lo, hi in ranges)
    p_log = failures / trials
    lo_ci, hi_ci = wilson_interval(failures, trials)
    return SimResult(
        code_id=code.code_id, n=code.num_qubits, k=code.num_logicals,
        d=code.distance, decoder=decoder_spec, p_phys=noise.p_phys,
        trials=trials, failures=failures, p_log=p_log,
        ci_lo=lo_ci, ci_hi=hi_ci, seed=seed)


def sweep(codes, decoder_spec: str, p_grid, trials: int, seed: int,
          threads: int = 1, bp_config: BPConfig | None = None) -> list[SimResult]:
    """Grid of run_point calls; point (code i, grid j) uses seed
    seed + 1000003 * (j * len(codes) + i) so streams never collide."""
    results = []
    codes = list(codes)
    for j, p in enumerate(p_grid):
        for i, code in enumerate(codes):
            point_seed = seed + 1000003 * (j * len(codes) + i)
            results.append(run_point(code, decoder_spec, float(p), trials,
                                     point_seed, threads=threads,
                                     bp_config=bp_config))
    return results


# ---------------------------------------------------------------------------
# Threshold extraction

@dataclass(frozen=True)
class ThresholdEstimate:
    value: float
    ci_lo: float
    ci_hi: float
    crossings: tuple[float, ...]
    pairs: tuple[tuple[str, str], ...]


def _pair_crossings(ps, plog_a, plog_b):
    """Zero crossings of log(plog_b) - log(plog_a) on the log-p axis,
    linearly interpolated; points with zero failures are skipped."""
    xs, gs = [], []
    for p, a, b in zip(ps, plog_a, plog_b):
        if a > 0 and b > 0:
            xs.append(math.log(p))
            gs.append(math.log(b) - math.log(a))
    out = []
    for i in range(len(xs) - 1):
        g0, g1 = gs[i], gs[i + 1]
        if g0 == 0.0 and g1 == 0.0:
            continue
        if g0 == 0.0:
            out.append(math.exp(xs[i]))
        elif g0 * g1 < 0:
            t = g0 / (g0 - g1)
            out.append(math.exp(xs[i] + t * (xs[i + 1] - xs[i])))
    return out


def estimate_threshold(results: list[SimResult], bootstrap: int = 200,
                       seed: int = 0) -> ThresholdEstimate:
    """Median pairwise crossing of the p_log curves of consecutive-distance
    codes, with a parametric-bootstrap confidence interval.

    Raises InsufficientDataError when fewer than two distinct distances
    are present or no crossing is bracketed by the grid.
    """
    by_code: dict[str, list[SimResult]] = {}
    for r in results:
        by_code.setdefault(r.code_id, []).append(r)
    ids = sorted(by_code, key=lambda c: (by_code[c][0].d or 0, c))
    dists = [by_code[c][0].d for c in ids]
    if len(set(dists)) < 2:
        raise InsufficientDataError("need >= 2 codes of distinct distance")
    for c in ids:
        by_code[c].sort(key=lambda r: r.p_phys)
    pairs = [(ids[i], ids[i + 1]) for i in range(len(ids) - 1)
             if dists[i] != dists[i + 1]]

    def crossings_from(plogs: dict[str, list[float]]):
        found = []
        for a, b in pairs:
            ps = [r.p_phys for r in by_code[a]]
            found.extend(_pair_crossings(ps, plogs[a], plogs[b]))
        return found

    base = crossings_from({c: [r.p_log for r in by_code[c]] for c in ids})
    if not base:
        raise InsufficientDataError("no crossing bracketed by the grid")
    value = float(np.median(base))

    rng = np.random.Generator(np.random.Philox(
        key=np.array([seed & (2**64 - 1), 0xB007], dtype=np.uint64)))
    boot_meds = []
    for _ in range(bootstrap):
        plogs = {}
        for c in ids:
            plogs[c] = [rng.binomial(r.trials, r.p_log) / r.trials
                        for r in by_code[c]]
        found = crossings_from(plogs)
        if found:
            boot_meds.append(float(np.median(found)))
    if boot_meds:
        lo, hi = np.percentile(boot_meds, [2.5, 97.5])
    else:
        lo = hi = value
    return ThresholdEstimate(value=value, ci_lo=float(lo), ci_hi=float(hi),
                             crossings=tuple(base), pairs=tuple(pairs))


# ---------------------------------------------------------------------------
# CSV I/O

def write_csv(results: list[SimResult], path_or_file) -> None:
    """Write the result table; field order fixed, floats via repr so a
    rerun with the same manifest is byte-identical."""
    own = isinstance(path_or_file, (str, bytes))
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in results:
            row = asdict(r)
            writer.writerow([
                row["code_id"], row["n"], row["k"],
                "" if row["d"] is None else row["d"],
                row["decoder"], repr(row["p_phys"]), row["trials"],
                row["failures"], repr(row["p_log"]),
                repr(row["ci_lo"]), repr(row["ci_hi"]), row["seed"],
            ])
    finally:
        if own:
            fh.close()


def read_csv(path_or_file) -> list[SimResult]:
    own = isinstance(path_or_file, (str, bytes))
    fh = open(path_or_file, newline="") if own else path_or_file
    try:
        reader = csv.DictReader(fh)
        out = []
        for row in reader:
            out.append(SimResult(
                code_id=row["code_id"], n=int(row["n"]), k=int(row["k"]),
                d=int(row["d"]) if row["d"] else None,
                decoder=row["decoder"], p_phys=float(row["p_phys"]),
                trials=int(row["trials"]), failures=int(row["failures"]),
                p_log=float(row["p_log"]), ci_lo=float(row["ci_lo"]),
                ci_hi=float(row["ci_hi"]), seed=int(row["seed"])))
        return out
    finally:
        if own:
            fh.close()
