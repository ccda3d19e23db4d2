import itertools
import os
import time
from contextlib import contextmanager

import numpy as np
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def all_permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


def encoded_codewords(code) -> np.ndarray:
    """Sorted integer encodings sum c_i q^i of every codeword, built by brute-force spans."""
    from cyclicaut.codes import as_linear

    L = as_linear(code)
    F, q, n = L.field, L.q, L.n
    words = {tuple([0] * n)}
    for row in L.generator:
        new = set(words)
        for w in words:
            for c in range(1, q):
                new.add(tuple(F.add(a, F.mul(c, int(g))) for a, g in zip(w, row)))
        words = new
    weights = q ** np.arange(n, dtype=np.int64)
    return np.sort(np.array([sum(a * w for a, w in zip(word, weights)) for word in words], dtype=np.int64))


def brute_force_maps(C, D, perms: np.ndarray) -> np.ndarray:
    """Rows of ``perms`` (sigma as image arrays) with sigma(C) contained in D, checked on generator rows."""
    from cyclicaut.codes import as_linear

    A = as_linear(C)
    q = A.q
    target = encoded_codewords(D)
    alive = np.ones(len(perms), dtype=bool)
    for g in A.generator:
        # the word with entry g_i at position sigma(i)
        enc = (g[None, :] * q**perms).sum(axis=1)
        pos = np.searchsorted(target, enc)
        pos[pos >= len(target)] = 0
        alive &= target[pos] == enc
    return perms[alive]


# ---------------------------------------------------------------- acceptance reporting

ACCEPTANCE: dict[int, tuple[bool, str, str]] = {}


@contextmanager
def criterion(number: int, title: str, budget: float | None = None):
    """Record one acceptance criterion; the verdict line is printed in the terminal summary."""
    state = {"detail": ""}
    start = time.perf_counter()
    try:
        yield state
    except BaseException as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        detail = "; ".join(x for x in (state["detail"], msg) if x)
        ACCEPTANCE[number] = (False, title, f"{detail} [{time.perf_counter() - start:.1f}s]")
        raise
    elapsed = time.perf_counter() - start
    ok = budget is None or elapsed <= budget
    suffix = f" [{elapsed:.1f}s" + (f" / budget {budget:.0f}s]" if budget else "]")
    ACCEPTANCE[number] = (ok, title, state["detail"] + suffix)
    assert ok, f"criterion {number} took {elapsed:.1f}s, budget {budget}s"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2} {'PASS' if ok else 'FAIL'}: {title}: {detail}")
