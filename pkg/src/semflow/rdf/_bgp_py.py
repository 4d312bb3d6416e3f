"""Pure-Python basic-graph-pattern join; fallback for the compiled kernel.

Terms are pre-interned to non-negative integers by the caller; a pattern
slot < 0 encodes variable -(slot + 1). Both implementations return the
same solution set (order unspecified; the query layer sorts).
"""

from __future__ import annotations

from typing import Sequence


def join_patterns(
    s: Sequence[int],
    p: Sequence[int],
    o: Sequence[int],
    pats: Sequence[int],
    npatterns: int,
    nvars: int,
) -> list[tuple[int, ...]]:
    n = len(s)
    binding = [-1] * nvars
    out: list[tuple[int, ...]] = []

    def descend(d: int) -> None:
        if d == npatterns:
            out.append(tuple(binding))
            return
        ps, pp, po = pats[3 * d], pats[3 * d + 1], pats[3 * d + 2]
        for i in range(n):
            fresh = []
            ok = True
            for pv, tv in ((ps, s[i]), (pp, p[i]), (po, o[i])):
                if pv >= 0:
                    if pv != tv:
                        ok = False
                        break
                else:
                    v = -pv - 1
                    if binding[v] == -1:
                        binding[v] = tv
                        fresh.append(v)
                    elif binding[v] != tv:
                        ok = False
                        break
            if ok:
                descend(d + 1)
            for v in fresh:
                binding[v] = -1

    if npatterns > 0:
        descend(0)
    return out
