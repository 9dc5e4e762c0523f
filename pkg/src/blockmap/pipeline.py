"""Coefficient tables for each family, from counts to two-point series.

The chain is: unweighted counts ``m_n`` (closed form, brute force or a
file), then block counts ``b_j``, then ``M_u`` with polynomial coefficients
in ``u`` (and ``q`` for meander-q), then two-point series where defined.
"""

from __future__ import annotations

from .cache import NO_CACHE, SeriesCache
from .errors import DataValidationError
from .models import brute_force_weighted_counts, closed_form_count, model_spec, u1_counts
from .series import (
    Ring,
    TruncatedSeries,
    compose_outer,
    correlator_from_blocks,
    extract_block_coefficients,
    extract_outer,
    weighted_map_series,
)

__all__ = [
    "TWO_POINT_FAMILIES",
    "map_family",
    "unweighted_series",
    "block_counts",
    "weighted_series",
    "two_point_series",
    "brute_force_series",
]

TWO_POINT_FAMILIES = ("quad-simple-blocks", "cubic-open-path")


def _key(family, N, kind, ring, source, path):
    key = {"model": family, "N": N, "kind": kind, "ring": ring, "source": source}
    if path is not None:
        key["file"] = str(path)
    return key


def _source(family: str, source: str | None, path) -> str:
    if path is not None:
        return "external-file"
    return model_spec(family, source).count_source


def map_family(family: str) -> str:
    """Family whose maps carry the blocks (open paths live on cubic maps)."""
    family = model_spec(family).family
    return "cubic-hamiltonian" if family == "cubic-open-path" else family


def unweighted_series(family: str, N: int, source: str | None = None, path=None) -> TruncatedSeries:
    """``m_0 .. m_N`` at ``u = 1`` (polynomials in ``q`` for meander-q).

    For the open-path family these are the cubic map counts.
    """
    spec = model_spec(map_family(family), "external-file" if path is not None else source)
    if spec.count_source == "brute-force" and spec.family != "meander-q":
        rows = brute_force_weighted_counts(spec.family, N)
        return TruncatedSeries([r(u=1) for r in rows], N)
    if spec.count_source == "external-file" and path is None:
        raise DataValidationError(f"{spec.family} needs an external coefficient file (--file)")
    return u1_counts(spec.family, N, path=path)


def block_counts(family: str, N: int, source: str | None = None, path=None) -> list:
    return extract_block_coefficients(unweighted_series(family, N, source, path))


def weighted_series(family: str, N: int, source: str | None = None, path=None,
                    cache: SeriesCache = NO_CACHE) -> TruncatedSeries:
    """``M_u`` through order ``N`` via block extraction and Lagrange inversion."""
    spec = model_spec(map_family(family), "external-file" if path is not None else source)
    src = _source(spec.family, source, path)
    ring = (Ring.POLY_UQ if spec.family == "meander-q" else Ring.POLY_U).value
    key = _key(spec.family, N, "weighted", ring, src, path)
    return cache.get_or_compute(key, lambda: weighted_map_series(block_counts(spec.family, N, source, path)))


def brute_force_series(family: str, N: int, cache: SeriesCache = NO_CACHE) -> TruncatedSeries:
    """Exhaustive block-counted table, cached (the expensive oracle)."""
    spec = model_spec(family, "brute-force")
    ring = (Ring.POLY_UQ if spec.family == "meander-q" else Ring.POLY_U).value
    key = _key(spec.family, N, "brute-force", ring, "brute-force", None)
    return cache.get_or_compute(key, lambda: TruncatedSeries(brute_force_weighted_counts(spec.family, N), N))


def two_point_series(family: str, N: int, cache: SeriesCache = NO_CACHE) -> TruncatedSeries:
    """Two-point series with the marked edge in the root block.

    Quadrangulations: ``S_u = C(g M_u^2)`` with ``C = 1 - B + 2tB'``.
    Open paths on cubic maps: ``S_u = M_u C_open(g M_u^2)`` where
    ``C_open`` is solved from the closed-form ``u = 1`` counts.
    """
    spec = model_spec(family)
    if spec.family not in TWO_POINT_FAMILIES:
        raise ValueError(f"no two-point series for {spec.family}")
    key = _key(spec.family, N, "two-point", Ring.POLY_U.value, "closed-form", None)

    def compute():
        if spec.family == "quad-simple-blocks":
            b = block_counts(spec.family, N)
            return compose_outer(correlator_from_blocks(b), weighted_series(spec.family, N, cache=cache), 0)
        m1 = unweighted_series("cubic-hamiltonian", N)
        marked = TruncatedSeries([closed_form_count(spec.family, n) for n in range(N + 1)], N)
        outer = extract_outer(marked, m1, 1)
        return compose_outer(outer, weighted_series("cubic-hamiltonian", N, cache=cache), 1)

    return cache.get_or_compute(key, compute)
