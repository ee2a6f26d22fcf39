"""Shared random-path helpers for the lemma suites."""
import random

from harada_quivers.quiver import Path, Quiver


def random_path(q: Quiver, rng: random.Random, max_len: int, start: int | None = None) -> Path | None:
    """A random walk of length 1..max_len, or None if it cannot leave its start."""
    v0 = rng.randrange(q.num_vertices) if start is None else start
    v, arrows = v0, []
    for _ in range(rng.randint(1, max_len)):
        out = q.out_arrows(v)
        if not out:
            break
        k = rng.choice(out)
        arrows.append(k)
        v = q.arrows[k].target
    return Path(v0, tuple(arrows)) if arrows else None
