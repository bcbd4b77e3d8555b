"""Seeded random search over construction parameters and over neighbours."""
from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from borderedsd.alphabet import RingElement, RingId, elements, involutory_units
from borderedsd.bordered import ConstructionParams, build_selfdual, check_conditions, format_params
from borderedsd.selfdual import BinaryCode, is_self_dual, neighbour, pad_vector
from borderedsd.weights import (
    CLASSIFYING_WEIGHT,
    ClassificationError,
    EnumeratorClass,
    WeightProfile,
    classify_enumerator,
    low_weight_census,
    min_distance_bz,
)

log = logging.getLogger(__name__)


@dataclass
class SearchConfig:
    ring: RingId
    n: int
    min_d: int = 2
    max_trials: int = 1000
    seed: int = 0
    census_cutoff: int | None = None
    lambda_mu_choices: list[tuple[RingElement, RingElement]] | None = None
    workers: int = 1
    threads: int | None = None
    mode: str = "construction"
    seed_code: str | None = None

    def __post_init__(self):
        if self.mode not in ("construction", "neighbour"):
            raise ValueError(f"mode must be construction or neighbour, got {self.mode!r}")
        if isinstance(self.ring, str):
            self.ring = RingId.parse(self.ring)
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.min_d % 2:
            raise ValueError("self-dual binary codes have even weights; min_d must be even")
        if self.lambda_mu_choices is None:
            inv = involutory_units(self.ring)
            self.lambda_mu_choices = [(lam, mu) for lam in inv for mu in inv]
        if self.census_cutoff is None and self.mode == "construction":
            self.census_cutoff = CLASSIFYING_WEIGHT.get(self.target_length, self.min_d + 2)

    @property
    def target_length(self) -> int:
        base = 2 * (2 * self.n + 1)
        return 2 * base if self.ring is RingId.F2u else base

    @classmethod
    def from_mapping(cls, values: dict[str, str]) -> "SearchConfig":
        ints = {"n", "min_d", "max_trials", "seed", "census_cutoff", "workers", "threads"}
        strs = {"ring", "mode", "seed_code"}
        unknown = set(values) - ints - strs - {"target_length"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs = {}
        for key in (ints | strs) & set(values):
            kwargs[key] = values[key] if key in strs else int(values[key])
        if kwargs.get("mode") == "neighbour":
            # ring and n only describe the construction search
            kwargs.setdefault("ring", "F2")
            kwargs.setdefault("n", 2)
        cfg = cls(**kwargs)
        if "target_length" in values and int(values["target_length"]) != cfg.target_length:
            raise ValueError(f"target_length {values['target_length']} disagrees with ring/n ({cfg.target_length})")
        return cfg

    @classmethod
    def from_file(cls, path: str | Path, **overrides) -> "SearchConfig":
        values = read_config_file(path)
        values.update({k: str(v) for k, v in overrides.items() if v is not None})
        return cls.from_mapping(values)


def read_config_file(path: str | Path) -> dict[str, str]:
    """``key = value`` lines; '#' starts a comment."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"config line without '=': {raw!r}")
        out[key.strip()] = value.strip()
    return out


@dataclass
class Discovery:
    code: BinaryCode
    profile: WeightProfile
    enum_class: EnumeratorClass | None
    params: ConstructionParams | None = None
    x0: str | None = None

    @property
    def d(self) -> int:
        return self.profile.min_distance

    @property
    def dedupe_key(self) -> tuple:
        return self.profile.fingerprint()

    def describe(self) -> str:
        census = ",".join(f"{w}:{c}" for w, c in sorted(self.profile.census.items()) if w)
        cls = "unclassified"
        if self.enum_class is not None:
            e = self.enum_class
            cls = f"W{e.length},{e.family if e.family is not None else '?'} alpha={e.alpha} beta={e.beta}"
        head = format_params(self.params) if self.params is not None else f"x0={self.x0}"
        return f"{head} # d={self.d} A={census} {cls}"


@dataclass
class SearchResult:
    discoveries: list[Discovery]
    stats: Counter = field(default_factory=Counter)

    @property
    def trials(self) -> int:
        return self.stats["trials"]


Sampler = Callable[[np.random.Generator, SearchConfig], ConstructionParams]


def sample_params(rng: np.random.Generator, config: SearchConfig) -> ConstructionParams:
    """a, b, c uniform over R^n, xi uniform over R^6, (lambda, mu) uniform over the choices."""
    elts = elements(config.ring)
    pick = lambda size: tuple(elts[i] for i in rng.integers(0, len(elts), size=size))
    a, b, c = pick(config.n), pick(config.n), pick(config.n)
    xi = pick(6)
    lam, mu = config.lambda_mu_choices[int(rng.integers(0, len(config.lambda_mu_choices)))]
    return ConstructionParams(config.ring, config.n, lam, mu, a, b, c, xi)


def _measure(code: BinaryCode, config: SearchConfig, stats: Counter, cutoff: int) -> WeightProfile | None:
    d = min_distance_bz(code, abort_below=config.min_d, threads=config.threads)
    if d < config.min_d:
        stats["rejected_distance"] += 1
        return None
    profile = low_weight_census(code, min(max(cutoff, d), code.length), config.threads)
    return WeightProfile(profile.length, profile.k, d, profile.census, profile.cutoff)


def _classify(profile: WeightProfile) -> EnumeratorClass | None:
    if profile.length not in CLASSIFYING_WEIGHT:
        return None
    try:
        return classify_enumerator(profile, partial=True)
    except ClassificationError:
        return None


def reverify(disc: Discovery, min_d: int) -> bool:
    """Independent re-check of an emitted discovery (census engine, not BZ)."""
    if disc.params is not None and not check_conditions(disc.params).ok:
        return False
    if not is_self_dual(disc.code):
        return False
    if min_d <= 1:
        return True
    low = low_weight_census(disc.code, min_d - 1)
    return all(c == 0 for w, c in low.census.items() if w > 0)


def _worker_trials(config: SearchConfig, worker: int) -> int:
    return len(range(worker, config.max_trials, config.workers))


def _run_worker(config: SearchConfig, worker: int, sampler: Sampler) -> tuple[list[tuple[int, Discovery]], Counter]:
    rng = np.random.default_rng([config.seed, worker])
    stats: Counter = Counter()
    found: list[tuple[int, Discovery]] = []
    seen: set = set()
    for trial in range(_worker_trials(config, worker)):
        stats["trials"] += 1
        params = sampler(rng, config)
        report = check_conditions(params)
        if not report.ok:
            failed = report.failed()
            stats[f"rejected_{failed[0]}"] += 1
            for name in failed:
                stats[f"failed_{name}"] += 1
            continue
        code = build_selfdual(params, check=False)
        profile = _measure(code, config, stats, config.census_cutoff)
        if profile is None:
            continue
        if profile.fingerprint() in seen:
            stats["duplicates"] += 1
            continue
        seen.add(profile.fingerprint())
        disc = Discovery(code, profile, _classify(profile), params=params)
        if not reverify(disc, config.min_d):
            raise AssertionError(f"discovery failed re-verification: {disc.describe()}")
        stats["discoveries"] += 1
        found.append((trial, disc))
    return found, stats


def _merge(parts: list[tuple[list[tuple[int, Discovery]], Counter]]) -> SearchResult:
    stats: Counter = Counter()
    merged: dict[tuple, tuple[tuple[int, int], Discovery]] = {}
    for worker, (found, st) in enumerate(parts):
        stats.update(st)
        for trial, disc in found:
            key = disc.dedupe_key
            order = (trial, worker)
            if key in merged:
                stats["discoveries"] -= 1
                stats["duplicates"] += 1
                if order < merged[key][0]:
                    merged[key] = (order, disc)
            else:
                merged[key] = (order, disc)
    ordered = sorted(merged.values(), key=lambda item: item[0])
    return SearchResult([disc for _, disc in ordered], stats)


def run_search(config: SearchConfig, sampler: Sampler | None = None, results_path: str | Path | None = None) -> SearchResult:
    """Sample, filter by the construction conditions, build, screen by distance, census, dedupe.

    Trials are dealt round-robin to ``config.workers`` streams seeded by
    ``(seed, worker)``.  The discovery set depends only on the seed and the
    worker count; with one worker the order is deterministic too.
    """
    sampler = sampler or sample_params
    if config.workers == 1:
        parts = [_run_worker(config, 0, sampler)]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(lambda w: _run_worker(config, w, sampler), range(config.workers)))
    result = _merge(parts)
    log.info("search finished: %s", dict(result.stats))
    if results_path is not None:
        append_results(results_path, result.discoveries)
    return result


def append_results(path: str | Path, discoveries: Iterable[Discovery]) -> None:
    with open(path, "a") as fh:
        for disc in discoveries:
            fh.write(disc.describe() + "\n")


def random_even_vector(rng: np.random.Generator, size: int) -> np.ndarray:
    x = rng.integers(0, 2, size=size).astype(np.uint8)
    if x.sum() % 2:
        x[-1] ^= 1
    return x


def neighbour_sweep(code: BinaryCode, config: SearchConfig, x0_sampler=None) -> SearchResult:
    """Random even-weight x = (0, x0) with x0 of half the length; keep good neighbours.

    Without an explicit ``census_cutoff`` the census runs to the weight that
    decides the enumerator family for the code's length.
    """
    if not is_self_dual(code):
        raise ValueError("neighbour sweep needs a self-dual code")
    cutoff = config.census_cutoff
    if cutoff is None:
        cutoff = CLASSIFYING_WEIGHT.get(code.length, config.min_d + 2)
    half = code.length // 2
    x0_sampler = x0_sampler or (lambda rng: random_even_vector(rng, half))
    rng = np.random.default_rng([config.seed, 0])
    stats: Counter = Counter()
    seen: set = set()
    out = []
    for _ in range(config.max_trials):
        stats["trials"] += 1
        x0 = np.asarray(x0_sampler(rng), dtype=np.uint8)
        x = pad_vector(x0, code.length)
        if code.contains(x):
            stats["in_code"] += 1
            continue
        nb = neighbour(code, x)
        profile = _measure(nb, config, stats, cutoff)
        if profile is None:
            continue
        if profile.fingerprint() in seen:
            stats["duplicates"] += 1
            continue
        seen.add(profile.fingerprint())
        disc = Discovery(nb, profile, _classify(profile), x0="".join(map(str, x0)))
        if not reverify(disc, config.min_d):
            raise AssertionError(f"discovery failed re-verification: {disc.describe()}")
        stats["discoveries"] += 1
        out.append(disc)
    return SearchResult(out, stats)
