"""Registry and runner for the executable law battery.

Each law quantifies over a fixed number of preorders.  The runner feeds it
every tuple of preorders of size at most 2, then ``iterations`` random tuples
of size at most ``max_object_size``.  Each instance carries its own seed, from
which the law draws the morphisms it needs, so a failing instance replays
exactly from ``(law, objects, seed)``.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from ..enumeration import enumerate_preorders
from ..preorder import FinPreorder, from_generators, induced
from .generators import gen_preorder

EXHAUSTIVE_SIZE = 2


@dataclass(frozen=True)
class LawConfig:
    seed: int = 0
    max_object_size: int = 4
    bound: int = 3
    iterations: int = 200
    laws: tuple = ()

    def __post_init__(self):
        if self.max_object_size < 0 or self.bound < 0:
            raise ValueError("sizes must be non-negative")
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")
        object.__setattr__(self, "laws", tuple(self.laws))


@dataclass(frozen=True)
class Law:
    id: str
    arity: int
    check: Callable[[tuple, random.Random, LawConfig], bool | None]
    statement: str = ""


REGISTRY: dict[str, Law] = {}


def law(law_id: str, arity: int, statement: str = ""):
    """Decorator registering ``check(objects, rng, config)``.

    The check returns True (holds), False (violated) or None (the instance
    does not meet the law's hypotheses).
    """

    def register(fn):
        REGISTRY[law_id] = Law(law_id, arity, fn, statement)
        return fn

    return register


def register_law(item: Law) -> None:
    REGISTRY[item.id] = item


@dataclass
class LawResult:
    law: str
    status: str
    checked: int = 0
    counterexample: dict | None = None
    seconds: float = 0.0


@dataclass
class LawReport:
    config: LawConfig
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def format(self, timing: bool = False) -> str:
        lines = []
        for r in self.results:
            line = f"{r.status.upper():4}  {r.law:28} checked={r.checked}"
            if timing:
                line += f" time={r.seconds:.2f}s"
            lines.append(line)
            if r.counterexample is not None:
                lines.append("      counterexample " + json.dumps(r.counterexample, sort_keys=True))
        passed = sum(r.status == "pass" for r in self.results)
        failed = sum(r.status == "fail" for r in self.results)
        skipped = sum(r.status == "skip" for r in self.results)
        lines.append(f"{passed} passed, {failed} failed, {skipped} skipped (seed={self.config.seed})")
        return "\n".join(lines) + "\n"


def encode_preorder(a: FinPreorder) -> dict:
    return {"size": a.size, "pairs": sorted([i, j] for i, j in a.rel if i != j)}


def decode_preorder(d: dict) -> FinPreorder:
    return FinPreorder.from_pairs(d["size"], [tuple(p) for p in d["pairs"]] + [(i, i) for i in range(d["size"])])


def _holds(item: Law, objects: tuple, seed: int, config: LawConfig) -> tuple[bool | None, str]:
    try:
        return item.check(objects, random.Random(seed), config), ""
    except Exception as exc:  # a crash inside a law is a failure, not an abort
        return False, f"{type(exc).__name__}: {exc}"


def _instances(item: Law, config: LawConfig, rng: random.Random):
    small = [p for n in range(min(EXHAUSTIVE_SIZE, config.max_object_size) + 1) for p in enumerate_preorders(n)]
    for objects in product(small, repeat=item.arity):
        yield objects, rng.getrandbits(32)
    for _ in range(config.iterations):
        objects = tuple(
            gen_preorder(rng.randint(0, config.max_object_size), rng, rng.random()) for _ in range(item.arity)
        )
        yield objects, rng.getrandbits(32)


def _smaller(a: FinPreorder):
    for drop in range(a.size):
        yield induced(a, [i for i in range(a.size) if i != drop])[0]
    strict = sorted((i, j) for i, j in a.rel if i != j)
    for k in range(len(strict)):
        b = from_generators(a.size, strict[:k] + strict[k + 1 :])
        if b != a:
            yield b


def shrink(item: Law, objects: tuple, seed: int, config: LawConfig) -> tuple:
    """Greedy element removal, then pair removal, keeping the failure."""
    objects = list(objects)
    progress = True
    while progress:
        progress = False
        for pos in range(len(objects)):
            for cand in _smaller(objects[pos]):
                trial = objects[:pos] + [cand] + objects[pos + 1 :]
                if _holds(item, tuple(trial), seed, config)[0] is False:
                    objects = trial
                    progress = True
                    break
            if progress:
                break
    return tuple(objects)


def run_law(item: Law, config: LawConfig) -> LawResult:
    rng = random.Random(f"{config.seed}:{item.id}")
    start = time.perf_counter()
    checked = 0
    for objects, seed in _instances(item, config, rng):
        ok, error = _holds(item, objects, seed, config)
        if ok is None:
            continue
        checked += 1
        if ok is False:
            small = shrink(item, objects, seed, config)
            payload = {
                "law": item.id,
                "seed": seed,
                "bound": config.bound,
                "objects": [encode_preorder(a) for a in small],
            }
            if error:
                payload["error"] = error
            return LawResult(item.id, "fail", checked, payload, time.perf_counter() - start)
    status = "pass" if checked else "skip"
    return LawResult(item.id, status, checked, None, time.perf_counter() - start)


def run_law_suite(config: LawConfig = LawConfig()) -> LawReport:
    # importing registers the built-in laws
    from . import catalog  # noqa: F401

    report = LawReport(config)
    selected = set(config.laws)
    unknown = selected - set(REGISTRY)
    if unknown:
        raise KeyError(f"unknown law(s): {', '.join(sorted(unknown))}")
    for law_id in sorted(REGISTRY):
        if selected and law_id not in selected:
            continue
        report.results.append(run_law(REGISTRY[law_id], config))
    return report


def replay(payload: dict, config: LawConfig | None = None) -> bool:
    """Re-run a recorded instance; True when the law now holds."""
    from . import catalog  # noqa: F401

    item = REGISTRY[payload["law"]]
    config = config or LawConfig(bound=payload.get("bound", 3))
    objects = tuple(decode_preorder(d) for d in payload["objects"])
    return _holds(item, objects, payload["seed"], config)[0] is not False
