"""Re-derivation harness behind the ``verify`` command.

Every closed form and identity in the package is checked here against an
independent brute-force computation.  Checks are grouped into suites, sharded
into self-contained tasks, and run across processes; each task reports one
result row per instance so a failure carries its own counterexample.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from time import perf_counter

from .biject import (
    ballot_path_from_tableau,
    compose,
    contract_path,
    decompose,
    expand_path,
    path_from_tableau,
    perm_from_tableau,
    rotate_complement,
    tableau_from_ballot_path,
    tableau_from_path,
    tableau_from_perm,
)
from .closedform import (
    act_count,
    ballot_count,
    binom,
    catalan,
    e_count,
    f_count,
    kreweras,
    more_shapes_counts,
    peaks_count,
    row_sums,
)
from .core import SvtabError, path_family
from .enumerate import (
    count_paths,
    count_svsyt,
    gen_avoid321,
    gen_ballotlike,
    gen_paths,
    gen_svsyt,
    gen_two_row_union,
)
from .posets import (
    Poset,
    catalog,
    compose_extension,
    decompose_extension,
    equidistribution_check,
    expected_ddeg,
    linear_extensions,
    pi_perm,
    sum_identity_check,
    sv_linear_extensions,
    vartheta,
    _maximal_in_prefix,
)
from .rings import MultiPoly, QPoly
from .series import expected_steps, peaks_genfun_check, _shared_context
from .stats import (
    comaj_plus_k,
    dyck_type,
    inner_valleys,
    rl_minima,
    set_valued_q_catalan,
    set_valued_q_narayana,
)

__all__ = [
    "SUITES",
    "CheckResult",
    "available_threads",
    "build_tasks",
    "run_tasks",
    "run_suites",
    "report_dict",
    "report_text",
]

SUITES = ("counts", "bijections", "series", "qstats", "posets")

PATH_FAMILY_COUNTS = {
    "motz": lambda n: catalan(n + 1),
    "motzE": lambda n: catalan(n),
    "motzT": lambda n: catalan(n),
    "motzET": lambda n: catalan(n - 1) if n >= 2 else (1 - n),
}

# paths of each family with n steps; the last family's low orders follow the
# empty-path convention pinned in the enumeration tests
assert PATH_FAMILY_COUNTS["motzET"](0) == 1 and PATH_FAMILY_COUNTS["motzET"](1) == 0


@dataclass(frozen=True)
class CheckResult:
    suite: str
    check: str
    instance: str
    status: str  # "pass" or "fail"
    expected: str
    actual: str
    seconds: float

    @property
    def ok(self) -> bool:
        return self.status == "pass"


def available_threads() -> int:
    """Worker count: SVTAB_THREADS when set, else the logical core count."""
    env = os.environ.get("SVTAB_THREADS")
    if env is not None:
        n = int(env)
        if n < 1:
            raise SvtabError(f"SVTAB_THREADS must be positive, got {env!r}")
        return n
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# individual checks
#
# Each check returns rows (instance, expected, actual); a row passes when the
# two strings are equal, so a failing row is its own counterexample.

Row = tuple[str, str, str]


def _ok(instance: str, note: str) -> Row:
    return instance, note, note


def check_union_count(n: int) -> list[Row]:
    """Two-row tableaux with n total entries, streamed and counted."""
    streamed = sum(1 for _ in gen_two_row_union(n))
    return [(f"n={n:02d}", str(catalan(n - 1)), str(streamed))]


def check_two_row_counts(n: int) -> list[Row]:
    """Height-indexed table row n: closed forms vs the path enumeration."""
    rows: list[Row] = []
    esum = fsum = 0
    for i in range(n + 1):
        e, f = e_count(n, i), f_count(n, i)
        esum += e
        fsum += f
        got = sum(1 for _ in gen_ballotlike(n, i))
        rows.append((f"n={n},i={i}", f"{ballot_count(n, i)},{e + f}", f"{got},{got}"))
    if n >= 2:
        rows.append((f"n={n} sums", str(row_sums(n)), str((esum, fsum))))
    return rows


def check_shape_count(b: int, k: int) -> list[Row]:
    """Hook-length formula vs peak formula vs direct count for one shape."""
    oracle = count_svsyt((b, b), k)
    want = f"{oracle},{oracle}"
    return [(f"b={b},k={k}", want, f"{act_count(b, k)},{peaks_count(b, k)}")]


def check_path_count(family: str, n: int) -> list[Row]:
    return [
        (
            f"{family},n={n:02d}",
            str(PATH_FAMILY_COUNTS[family](n)),
            str(count_paths(family, n)),
        )
    ]


def check_more_shapes(n: int) -> list[Row]:
    first, second = more_shapes_counts(n)
    rows: list[Row] = []
    alt = 3 * binom(2 * n - 2, n) // (n + 1)
    assert 3 * binom(2 * n - 2, n) % (n + 1) == 0
    rows.append((f"n={n} first two ways", str(first), str(alt)))
    if n <= 8:
        got = 0
        for b in range((n + 1) // 2 + 1):
            k = n - 1 - 2 * b
            if k >= 0:
                got += count_svsyt((b + 1,) if b == 0 else (b + 1, b), k)
        rows.append((f"n={n} near-rectangles", str(first), str(got)))
    return rows


def check_avoid321_count(n: int) -> list[Row]:
    got = sum(1 for _ in gen_avoid321(n))
    return [(f"n={n}", str(catalan(n)), str(got))]


def check_perm_bijection(n: int) -> list[Row]:
    """Tableau → permutation: roundtrip, avoidance, and the two statistics."""
    seen = set()
    for t in gen_two_row_union(n):
        w = perm_from_tableau(t)
        if not w.is_321_avoiding():
            return [(f"n={n}", "321-avoiding", f"pattern found in {w.to_text()}")]
        if tableau_from_perm(w) != t:
            return [(f"n={n}", f"roundtrip of {t}", str(tableau_from_perm(w)))]
        top_vals = sorted(
            v for c2 in range(1, t.shape.outer.part(1) + 1) for v in t.cell(1, c2)
        )
        if list(rl_minima(w)) != top_vals:
            return [(f"n={n}", f"minima {top_vals}", f"differ for {t}")]
        if len(inner_valleys(w)) != t.shape.outer.part(1) - 1:
            return [(f"n={n}", "valleys = columns - 1", f"fails for {t}")]
        seen.add(w)
    return [
        (f"n={n:02d} distinct images", str(catalan(n - 1)), str(len(seen))),
    ]


def check_path_bijection(n: int) -> list[Row]:
    seen = set()
    for t in gen_two_row_union(n):
        p = path_from_tableau(t)
        if "motzET" not in path_family(p):
            return [(f"n={n}", "image in motzET", f"{p.word} for {t}")]
        if tableau_from_path(p) != t:
            return [(f"n={n}", f"roundtrip of {t}", str(tableau_from_path(p)))]
        seen.add(p.word)
    return [
        (f"n={n:02d} distinct images", str(catalan(n - 1)), str(len(seen))),
    ]


def _ballot_shapes(n: int, i: int):
    for b in range(max(i, 1), (n + i) // 2 + 1):
        k = n + i - 2 * b
        if k >= 0:
            yield ((b,) if b == i else (b, b - i)), k


def check_ballot_bijection(n: int) -> list[Row]:
    """Tableaux of width-difference i map onto ballotlike paths ending at i."""
    rows: list[Row] = []
    for i in range(n + 1):
        seen = set()
        total = 0
        for shape, k in _ballot_shapes(n, i):
            for t in gen_svsyt(shape, k):
                total += 1
                p = ballot_path_from_tableau(t)
                if p.final_height != i or "ballotlike" not in path_family(p):
                    return [(f"n={n},i={i}", "ends at i, ballotlike", p.word)]
                if tableau_from_ballot_path(p) != t:
                    return [(f"n={n},i={i}", f"roundtrip of {t}", "differs")]
                seen.add(p.word)
        want = ballot_count(n, i)
        rows.append((f"n={n},i={i}", f"{want},{want}", f"{total},{len(seen)}"))
    return rows


def check_contract_images(n: int) -> list[Row]:
    """Contracting drops one step and trades the two path restrictions."""
    rows: list[Row] = []
    for src, dst in (("motzT", "motz"), ("motzET", "motzE")):
        if src == "motzET" and n < 2:
            continue
        img = set()
        for p in gen_paths(src, n):
            q = contract_path(p)
            if expand_path(q).word != p.word:
                return [(f"{src},n={n}", f"roundtrip of {p.word}", q.word)]
            img.add(q.word)
        want = {p.word for p in gen_paths(dst, n - 1)}
        rows.append(
            (
                f"{src}->{dst},n={n}",
                f"image of size {len(want)}",
                f"image of size {len(img)}"
                if img == want
                else f"symmetric difference {sorted(img ^ want)[:3]}",
            )
        )
    return rows


def check_triple_roundtrip(n: int) -> list[Row]:
    count = 0
    for t in gen_two_row_union(n):
        tr = decompose(t)
        if compose(tr) != t:
            return [(f"n={n}", f"compose(decompose({t}))", str(compose(tr)))]
        count += 1
    return [_ok(f"n={n:02d}", f"{count} roundtrips")]


def check_rotation(n: int) -> list[Row]:
    """Half-turn complement swaps the two near-rectangular shape families."""
    count = 0
    for b in range((n + 1) // 2 + 1):
        k = n - 1 - 2 * b
        if b < 1 or k < 0:
            continue
        for t in gen_svsyt((b + 1, b), k):
            r = rotate_complement(t)
            if tuple(r.shape.inner) != (1,):
                return [(f"n={n}", "skew image", str(r.shape.inner))]
            if rotate_complement(r) != t:
                return [(f"n={n}", f"involution at {t}", "fails")]
            count += 1
    return [_ok(f"n={n}", f"{count} involutions")]


def check_series_residuals(order: int) -> list[Row]:
    ctx = _shared_context(order)
    return [
        (f"{name} residual, order {order}", "0", "0" if not poly else str(poly))
        for name, poly in sorted(ctx.residuals().items())
    ]


def check_series_taylor() -> list[Row]:
    ctx = _shared_context(6)
    U, D, u, d = (MultiPoly.gen(s) for s in ("U", "D", "u", "d"))
    wanted = {
        2: U * D,
        3: U * (u + d) * D,
        4: U * (d * d + u * d + U * D * 2 + u * u) * D,
    }
    return [
        (f"E12 coefficient t^{m}", str(wanted[m]), str(ctx.E12.coeff(m)))
        for m in (2, 3, 4)
    ]


def check_marker_tally(family: str, n: int) -> list[Row]:
    ctx = _shared_context(8)
    slot = {"motz": ctx.E, "motzE": ctx.E1, "motzT": ctx.E2, "motzET": ctx.E12}
    tally = MultiPoly.zero()
    for p in gen_paths(family, n):
        tally = tally + MultiPoly.from_word(p.word)
    return [(f"{family},n={n}", str(slot[family].coeff(n)), str(tally))]


def check_expected_steps(n: int) -> list[Row]:
    if n == 2:
        eU, eu = Fraction(1), Fraction(0)
    else:
        eU = Fraction(n * n + n - 6, 4 * n - 6)
        eu = Fraction(n * n - 4 * n + 6, 4 * n - 6)
    rows = [
        (f"n={n:02d} E[{s}]", str(want), str(expected_steps(n, s)))
        for s, want in (("U", eU), ("D", eU), ("u", eu), ("d", eu))
    ]
    total = 2 * expected_steps(n, "U") + 2 * expected_steps(n, "u")
    rows.append((f"n={n:02d} step total", str(Fraction(n)), str(total)))
    return rows


def check_peaks_series(order: int) -> list[Row]:
    table = peaks_genfun_check(order)
    rows = [("z^3 coefficient", str(QPoly([3, 2])), str(table[3]))]
    for n in range(1, order + 1):
        rows.append((f"n={n} row sum", str(catalan(n)), str(table[n](1))))
    return rows


# transcribed q-polynomial tables, coefficients low degree first
QCAT_TABLE = {
    1: (1,),
    2: (1, 1),
    3: (1, 1, 2, 1),
    4: (1, 2, 2, 3, 3, 2, 1),
    5: (1, 1, 3, 7, 6, 5, 6, 7, 3, 2, 1),
}
QNAR_TABLE = {
    (1, 1): (1,),
    (2, 1): (1,),
    (2, 2): (0, 1),
    (3, 1): (0, 1),
    (3, 2): (1, 0, 2),
    (3, 3): (0, 0, 0, 1),
    (4, 1): (0, 0, 0, 1),
    (4, 2): (1, 1, 1, 1, 2),
    (4, 3): (0, 1, 1, 1, 1, 2),
    (4, 4): (0, 0, 0, 0, 0, 0, 1),
}


def check_q_catalan() -> list[Row]:
    return [
        (f"n={n}", str(QPoly(list(coeffs))), str(set_valued_q_catalan(n)))
        for n, coeffs in sorted(QCAT_TABLE.items())
    ]


def check_q_narayana() -> list[Row]:
    return [
        (f"n={n},m={m}", str(QPoly(list(coeffs))), str(set_valued_q_narayana(n, m)))
        for (n, m), coeffs in sorted(QNAR_TABLE.items())
    ]


def check_q_row_sum(n: int) -> list[Row]:
    total = QPoly.zero()
    for m in range(1, n + 1):
        total = total + set_valued_q_narayana(n, m)
    return [(f"n={n}", str(set_valued_q_catalan(n)), str(total))]


def check_kreweras_types(n: int) -> list[Row]:
    """Peak-type tallies of the two-row union refine the peak counts."""
    tallies: Counter = Counter()
    for t in gen_two_row_union(n):
        m, _, mu = dyck_type(t)
        tallies[(m, tuple(sorted(mu.items())))] += 1
    rows: list[Row] = []
    for (m, mu_items), got in sorted(tallies.items()):
        want = kreweras(n - 1, m, dict(mu_items))
        rows.append((f"n={n},m={m},mu={dict(mu_items)}", str(want), str(got)))
    return rows


def check_poset_identities(name: str, poset: Poset, kmax: int) -> list[Row]:
    """Both cut-weight identities plus roundtrips on one catalog entry."""
    rows: list[Row] = []
    small = poset.n <= 4
    for k in range(kmax + 1):
        lhs, rhs = sum_identity_check(poset, k)
        rows.append((f"{name},k={k} weight sum", str(rhs), str(lhs)))
        num, den = expected_ddeg(poset, k)
        rows.append(_ok(f"{name},k={k} expectation", f"{num} / {den}"))
        objs = 0
        for s in sv_linear_extensions(poset, k):
            objs += 1
            if objs <= 20000:
                ext, cuts, picks = decompose_extension(s)
                if compose_extension(poset, ext, cuts, picks) != s:
                    rows.append((f"{name},k={k}", f"roundtrip of {s}", "differs"))
        rows.append(_ok(f"{name},k={k} objects", str(objs)))
        if small:
            for ext in linear_extensions(poset):
                for cuts in itertools.combinations_with_replacement(
                    range(1, poset.n + 1), k
                ):
                    pools = [_maximal_in_prefix(poset, ext, t) for t in cuts]
                    for picks in itertools.product(*pools):
                        s = compose_extension(poset, ext, cuts, picks)
                        got = QPoly.monomial(comaj_plus_k(s))
                        if got != vartheta(ext, cuts):
                            rows.append(
                                (
                                    f"{name},k={k} weight of {ext},{cuts}",
                                    str(vartheta(ext, cuts)),
                                    str(got),
                                )
                            )
    return rows


def check_pi_permutation(nmax: int) -> list[Row]:
    for n in range(nmax + 1):
        universe = tuple(range(n + 1))
        for r in range(n + 2):
            for xs in itertools.combinations(universe, r):
                image = {pi_perm(n, xs, t) for t in universe}
                if image != set(universe):
                    return [(f"n={n},X={xs}", "a permutation", str(sorted(image)))]
    return [_ok(f"n<= {nmax}", "all subsets give permutations")]


def check_equidistribution(shape: tuple[int, ...], kmax: int) -> list[Row]:
    rows: list[Row] = []
    for k in range(kmax + 1):
        ok, t1, t2 = equidistribution_check(shape, k)
        rows.append(
            (
                f"shape={shape},k={k}",
                f"{sum(t1.values())} tableaux, tables equal",
                f"{sum(t2.values())} tableaux, tables {'equal' if ok else 'differ'}",
            )
        )
    return rows


_CHECKS = {
    fn.__name__: fn
    for fn in (
        check_union_count,
        check_two_row_counts,
        check_shape_count,
        check_path_count,
        check_more_shapes,
        check_avoid321_count,
        check_perm_bijection,
        check_path_bijection,
        check_ballot_bijection,
        check_contract_images,
        check_triple_roundtrip,
        check_rotation,
        check_series_residuals,
        check_series_taylor,
        check_marker_tally,
        check_expected_steps,
        check_peaks_series,
        check_q_catalan,
        check_q_narayana,
        check_q_row_sum,
        check_kreweras_types,
        check_poset_identities,
        check_pi_permutation,
        check_equidistribution,
    )
}


# ---------------------------------------------------------------------------
# task matrix and the runner

Task = tuple[str, str, dict]


def build_tasks(
    suites,
    budget: str = "desk",
    series_order: int | None = None,
    max_elements: int | None = None,
    max_k: int | None = None,
) -> list[Task]:
    """Expand suite names into sharded (suite, check, kwargs) tasks."""
    if budget not in ("desk", "quick"):
        raise SvtabError(f"unknown budget {budget!r}")
    quick = budget == "quick"
    chosen = tuple(suites)
    for s in chosen:
        if s not in SUITES:
            raise SvtabError(f"unknown suite {s!r}; choose from {SUITES}")
    tasks: list[Task] = []

    if "counts" in chosen:
        top = 9 if quick else 12
        tasks += [("counts", "check_union_count", {"n": n}) for n in range(2, top + 1)]
        tasks += [
            ("counts", "check_two_row_counts", {"n": n})
            for n in range(0, (6 if quick else 8) + 1)
        ]
        tasks += [
            ("counts", "check_shape_count", {"b": b, "k": k})
            for b in range(1, top // 2 + 1)
            for k in range(0, top - 2 * b + 1)
        ]
        tasks += [
            ("counts", "check_path_count", {"family": fam, "n": n})
            for fam in sorted(PATH_FAMILY_COUNTS)
            for n in range(0 if fam != "motzET" else 2, (8 if quick else 10) + 1)
        ]
        tasks += [
            ("counts", "check_more_shapes", {"n": n})
            for n in range(3, (8 if quick else 15) + 1)
        ]
        tasks += [
            ("counts", "check_avoid321_count", {"n": n}) for n in range(0, 9)
        ]

    if "bijections" in chosen:
        top = 8 if quick else 10
        for n in range(2, top + 1):
            tasks.append(("bijections", "check_perm_bijection", {"n": n}))
            tasks.append(("bijections", "check_path_bijection", {"n": n}))
        tasks += [
            ("bijections", "check_ballot_bijection", {"n": n})
            for n in range(1, (6 if quick else 8) + 1)
        ]
        tasks += [
            ("bijections", "check_contract_images", {"n": n})
            for n in range(1, (7 if quick else 9) + 1)
        ]
        tasks += [
            ("bijections", "check_triple_roundtrip", {"n": n})
            for n in range(2, (8 if quick else 10) + 1)
        ]
        tasks += [
            ("bijections", "check_rotation", {"n": n})
            for n in range(3, (7 if quick else 9) + 1)
        ]

    if "series" in chosen:
        order = series_order if series_order is not None else (6 if quick else 10)
        tasks.append(("series", "check_series_residuals", {"order": order}))
        tasks.append(("series", "check_series_taylor", {}))
        for fam in sorted(PATH_FAMILY_COUNTS):
            lo = 0 if fam != "motzET" else 1
            for n in range(lo, (6 if quick else 8) + 1):
                tasks.append(("series", "check_marker_tally", {"family": fam, "n": n}))
        tasks += [
            ("series", "check_expected_steps", {"n": n})
            for n in range(2, (8 if quick else 12) + 1)
        ]
        tasks.append(("series", "check_peaks_series", {"order": 6 if quick else 8}))

    if "qstats" in chosen:
        tasks.append(("qstats", "check_q_catalan", {}))
        tasks.append(("qstats", "check_q_narayana", {}))
        tasks += [("qstats", "check_q_row_sum", {"n": n}) for n in range(1, 7)]
        tasks += [
            ("qstats", "check_kreweras_types", {"n": n})
            for n in range(2, (7 if quick else 9) + 1)
        ]

    if "posets" in chosen:
        cap_n = max_elements if max_elements is not None else (4 if quick else 6)
        cap_k = max_k if max_k is not None else (2 if quick else 3)
        for name, poset in catalog():
            if poset.n <= cap_n:
                tasks.append(
                    (
                        "posets",
                        "check_poset_identities",
                        {"name": name, "poset": poset, "kmax": cap_k},
                    )
                )
        tasks.append(("posets", "check_pi_permutation", {"nmax": 6 if quick else 8}))
        for total in range(1, (4 if quick else 5) + 1):
            for shape in _all_partitions(total):
                tasks.append(
                    (
                        "posets",
                        "check_equidistribution",
                        {"shape": shape, "kmax": min(cap_k, 2)},
                    )
                )
    return tasks


def _all_partitions(total: int):
    def rec(rest: int, cap: int, acc: tuple[int, ...]):
        if rest == 0:
            yield acc
            return
        for part in range(min(rest, cap), 0, -1):
            yield from rec(rest - part, part, acc + (part,))

    yield from rec(total, total, ())


def _run_task(task: Task) -> list[CheckResult]:
    suite, check, kwargs = task
    started = perf_counter()
    try:
        rows = _CHECKS[check](**kwargs)
    except (SvtabError, AssertionError) as exc:
        rows = [
            (
                ",".join(f"{k}={v}" for k, v in kwargs.items() if k != "poset"),
                "no exception",
                f"{type(exc).__name__}: {exc}",
            )
        ]
    elapsed = perf_counter() - started
    split = elapsed / max(len(rows), 1)
    return [
        CheckResult(
            suite=suite,
            check=check,
            instance=instance,
            status="pass" if expected == actual else "fail",
            expected=expected,
            actual=actual,
            seconds=round(split, 4),
        )
        for instance, expected, actual in rows
    ]


def run_tasks(tasks, threads: int | None = None) -> list[CheckResult]:
    """Run tasks, in worker processes when more than one thread is allowed."""
    n = threads if threads is not None else available_threads()
    results: list[CheckResult] = []
    if n <= 1 or len(tasks) <= 1:
        for t in tasks:
            results.extend(_run_task(t))
    else:
        with ProcessPoolExecutor(max_workers=min(n, len(tasks))) as pool:
            for out in pool.map(_run_task, tasks, chunksize=1):
                results.extend(out)
    results.sort(key=lambda r: (r.suite, r.check, r.instance))
    return results


def run_suites(suites, threads: int | None = None, **limits) -> list[CheckResult]:
    return run_tasks(build_tasks(suites, **limits), threads=threads)


def report_dict(results, threads: int) -> dict:
    failures = [r for r in results if not r.ok]
    return {
        "threads": threads,
        "checks": len(results),
        "passed": len(results) - len(failures),
        "failed": len(failures),
        "seconds": round(sum(r.seconds for r in results), 3),
        "results": [asdict(r) for r in results],
    }


def report_text(results) -> str:
    lines = []
    for r in results:
        mark = "PASS" if r.ok else "FAIL"
        lines.append(f"{mark} {r.suite}.{r.check} [{r.instance}]")
        if not r.ok:
            lines.append(f"     expected: {r.expected}")
            lines.append(f"     actual:   {r.actual}")
    failed = sum(1 for r in results if not r.ok)
    lines.append(f"{len(results) - failed} passed, {failed} failed")
    return "\n".join(lines)
