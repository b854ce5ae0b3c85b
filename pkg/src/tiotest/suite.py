"""The bundled conveyor-belt models."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .model.automaton import Automaton
from .model.parser import parse_model

TARGETS = {
    "mutant_a": "0 · ship2 · 1 · end2",
    "mutant_b": "6 · past",
    "mutant_c": "3 · past",
}


def fixture_text(name: str) -> str:
    return (resources.files("tiotest") / "fixtures" / f"{name}.ta").read_text()


@lru_cache(maxsize=None)
def fixture(name: str) -> Automaton:
    """Parse a bundled model by stem, e.g. ``fixture("conveyor")``."""
    return parse_model(fixture_text(name), f"{name}.ta")


def fixture_names() -> list:
    return sorted(p.name[:-3] for p in (resources.files("tiotest") / "fixtures").iterdir() if p.name.endswith(".ta"))


@dataclass(frozen=True)
class Suite:
    spec: Automaton
    det_spec: Automaton
    tp: Automaton
    dp: Automaton
    impls: tuple
    targets: tuple


def conveyor_suite(horizon: int = 8) -> Suite:
    """Spec, test purpose, deterministic product, the conformant
    implementation and three mutants, each paired with the trace that
    exposes it."""
    from .execution.impl import make_impl

    spec = fixture("conveyor")
    impls = tuple(make_impl(fixture(n), spec=spec, horizon=horizon)
                  for n in ("conveyor_impl", "mutant_a", "mutant_b", "mutant_c"))
    by_name = {i.name: i for i in impls}
    targets = tuple((by_name[n], t) for n, t in TARGETS.items())
    return Suite(spec, fixture("conveyor_det"), fixture("ship2_tp"), fixture("conveyor_dp"), impls, targets)
