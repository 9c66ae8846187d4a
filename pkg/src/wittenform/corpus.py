"""Bundled example manifolds.

The K3 surface is built in code from standard topology: intersection form
3H + 2(-E8), chi = 24, sigma = -16, b_plus = 3, trivial w2, and a single
spin-c entry (c1 = 0, invariant 1). The remaining fixtures are synthetic
manifolds produced by the round-trip constructor in `synthetic`.
"""

from __future__ import annotations

from importlib import resources

from .invariants import ManifoldData, SpincEntry
from .lattice import direct_sum, e8_form, hyperbolic_plane
from .manifold_io import parse_manifold


def k3_form():
    h = hyperbolic_plane()
    return direct_sum(h, h, h, e8_form(negative=True), e8_form(negative=True))


def k3_manifold() -> ManifoldData:
    form = k3_form()
    zero = (0,) * form.rank
    return ManifoldData(
        name="K3", chi=24, sigma=-16, b_plus=3, form=form, w2=zero,
        spinc=(SpincEntry(c1=zero, sw=1),), sw_simple_type=True)


def list_bundled() -> list[str]:
    root = resources.files("wittenform").joinpath("data")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".manifold"))


def load_bundled(name: str) -> ManifoldData:
    root = resources.files("wittenform").joinpath("data")
    text = root.joinpath(name).read_text(encoding="utf-8")
    return parse_manifold(text, path=f"bundled:{name}")


def bundled_path(name: str) -> str:
    """Filesystem path of a bundled manifold (for handing to the CLI)."""
    return str(resources.files("wittenform").joinpath("data").joinpath(name))
