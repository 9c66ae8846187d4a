"""Random generation of forms and manifolds for tests and fixtures.

Unimodular forms are produced by conjugating block direct sums of
hyperbolic planes and diag(+-1) summands by random integer shears, which
preserves symmetry, determinant and signature. Characteristic vectors are
drawn from the mod-2 characteristic class.

Two flavors of manifold come out of here. Fully valid ones satisfy every
topological coupling (rank = chi - 2, matching signature, odd b_plus > 1)
and are what the bundled corpus contains. "Decoupled" ones keep the
algebraic invariants (unimodularity, characteristic classes) but choose
chi = c, sigma = -c freely so the degree-window constant c can be dialed;
they exist because no small-rank manifold has c in the low positive range,
while the series identities themselves never couple c to the form.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .invariants import ManifoldData, SpincEntry
from .lattice import (IntersectionForm, characteristic_base, diagonal_form,
                      direct_sum, hyperbolic_plane)


def shear_conjugate(form: IntersectionForm, rng: random.Random,
                    ops: int = 6) -> IntersectionForm:
    """Apply random unimodular basis shears e_i <- e_i + s e_j."""
    n = form.rank
    if n < 2:
        return form
    gram = [list(row) for row in form.gram]
    for _ in range(ops):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        s = rng.choice((1, -1))
        for col in range(n):
            gram[i][col] += s * gram[j][col]
        for row in gram:
            row[i] += s * row[j]
    return IntersectionForm(gram)


_BLOCKS = {
    "H": hyperbolic_plane,
    "+1": lambda: diagonal_form([1]),
    "-1": lambda: diagonal_form([-1]),
}


def block_form(blocks: Sequence[str]) -> IntersectionForm:
    return direct_sum(*(_BLOCKS[name]() for name in blocks))


def random_unimodular_form(rng: random.Random, rank: int,
                           ops: Optional[int] = None) -> IntersectionForm:
    """A random unimodular symmetric form of the given rank."""
    blocks = []
    remaining = rank
    while remaining > 0:
        if remaining >= 2 and rng.random() < 0.5:
            blocks.append("H")
            remaining -= 2
        else:
            blocks.append(rng.choice(("+1", "-1")))
            remaining -= 1
    base = block_form(blocks)
    return shear_conjugate(base, rng, ops=rank + 3 if ops is None else ops)


def random_characteristic_vectors(form: IntersectionForm, rng: random.Random,
                                  count: int, spread: int = 1) -> list[tuple]:
    """`count` distinct characteristic vectors kappa0 + 2t, |t| <= spread."""
    kappa = characteristic_base(form)
    out: set[tuple] = set()
    attempts = 0
    while len(out) < count and attempts < 200 * count:
        attempts += 1
        t = tuple(rng.randint(-spread, spread) for _ in range(form.rank))
        out.add(tuple(k + 2 * x for k, x in zip(kappa, t)))
    if len(out) < count:
        raise RuntimeError("could not generate enough distinct classes")
    return sorted(out)


def random_manifold(rng: random.Random, target_c: Optional[int] = None,
                    max_rank: int = 6, max_classes: int = 5,
                    name: str = "synthetic") -> ManifoldData:
    """Series-algebra test manifold with chi = c and sigma = -c.

    The degree-window constant comes out exactly c for any integer c, at
    the price of decoupling (chi, sigma) from the form; topological
    couplings are skipped (check_topology=False), algebraic invariants are
    kept.
    """
    c = target_c if target_c is not None else rng.randint(2, 8)
    rank = rng.randint(2, max_rank)
    form = random_unimodular_form(rng, rank)
    count = rng.randint(1, max_classes)
    classes = random_characteristic_vectors(form, rng, count)
    entries = tuple(SpincEntry(c1=k, sw=_nonzero(rng)) for k in classes)
    _, b_plus, _ = form.signature_decomposition()
    return ManifoldData(
        name=f"{name}-c{c}-r{rank}", chi=c, sigma=-c, b_plus=b_plus,
        form=form, w2=characteristic_base(form), spinc=entries,
        sw_simple_type=True, check_topology=False)


def _nonzero(rng: random.Random, lo: int = -4, hi: int = 4) -> int:
    while True:
        v = rng.randint(lo, hi)
        if v != 0:
            return v


_VALID_BASES = (
    ("+1", "+1", "+1", "-1"),
    ("H", "H", "+1", "-1", "-1"),
    ("H", "H", "+1", "-1"),
    ("H", "H", "H"),
    ("+1", "+1", "+1", "-1", "-1", "-1"),
    ("H", "H", "H", "-1", "-1"),
    ("+1", "+1", "+1", "+1", "+1", "-1"),
)


def random_valid_manifold(rng: random.Random,
                          name: str = "synthetic") -> ManifoldData:
    """A manifold satisfying every ManifoldData invariant, with small rank.

    b_plus is 3 or 5 by choice of base blocks; the degree-window constant
    is then automatically an integer (it always is when b_plus is odd).
    """
    blocks = rng.choice(_VALID_BASES)
    form = shear_conjugate(block_form(blocks), rng, ops=5)
    sigma, b_plus, _ = form.signature_decomposition()
    count = rng.randint(1, 4)
    classes = random_characteristic_vectors(form, rng, count)
    entries = tuple(SpincEntry(c1=k, sw=_nonzero(rng)) for k in classes)
    return ManifoldData(
        name=name, chi=form.rank + 2, sigma=sigma, b_plus=b_plus, form=form,
        w2=characteristic_base(form), spinc=entries, sw_simple_type=True)


def write_bundled_corpus(directory: str, count: int = 10,
                         seed: int = 20240601) -> list[str]:
    """Write the K3 file plus `count` fully valid synthetic fixtures."""
    import os

    from .corpus import k3_manifold
    from .manifold_io import manifold_to_text

    rng = random.Random(seed)
    os.makedirs(directory, exist_ok=True)
    written = []
    k3 = k3_manifold()
    path = os.path.join(directory, "k3.manifold")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(manifold_to_text(k3))
    written.append(path)
    for idx in range(1, count + 1):
        m = random_valid_manifold(rng, name=f"synthetic-{idx:02d}")
        path = os.path.join(directory, f"synthetic_{idx:02d}.manifold")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(manifold_to_text(m))
        written.append(path)
    return written
