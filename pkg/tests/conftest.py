from __future__ import annotations

from unipdade.genre import GroupDescriptor


def acceptance_grid() -> list[tuple[GroupDescriptor, int, int]]:
    """Every (group, q, ell) configuration the headline identity is checked on.

    Type A runs n = 2..5 and 2A runs n = 3, 4 so that both readings of
    "rank" (n or n - 1) are covered.
    """
    out = []
    for model in ("gl", "sc"):
        for n in (2, 3, 4, 5):
            for q in (2, 3, 4, 5):
                for ell in (3, 5, 7):
                    if q % ell:
                        out.append((GroupDescriptor("A", n, model), q, ell))
    for model in ("gl", "sc"):
        for n in (3, 4):
            for q in (2, 3):
                for ell in (3, 5, 7):
                    if q % ell:
                        out.append((GroupDescriptor("2A", n, model), q, ell))
    for series in ("B", "C"):
        for n in (2, 3):
            for q in (2, 3, 5):
                for ell in (3, 5):
                    if q % ell:
                        out.append((GroupDescriptor(series, n), q, ell))
    return out


def grid_id(cfg) -> str:
    G, q, ell = cfg
    return f"{G.name}-q{q}-l{ell}"
