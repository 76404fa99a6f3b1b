"""The checked report: every recorded computational claim as a pass/fail row.

Each battery returns a list of (name, ok, detail) rows; ``run_tables``
aggregates them.  Expected values are frozen here; a failing row means the
implementation no longer reproduces the recorded result (or, for rows
documented as refuted, that the recorded claim itself does not hold).
"""

from multiprocessing import Pool

from revpat.formulas import parse_formula, reverse_formula
from revpat.divisibility import canonicalize
from revpat.morphic import (
    check_avoids_prefix,
    check_avoids_reversed_prefix,
    factor_closure,
    factor_set,
    parse_in_fixed_point,
    parse_system,
    reversible_factors,
)
from revpat.occurrence import avoids
from revpat.search import EXACT_LONGEST, longest_avoiding_word
from revpat.words import periodic_prefix

# (formula, alphabet size, exact longest avoiding word length)
LONGEST_ROWS = (
    ("xx", 2, 3),
    ("xyx.yxy", 2, 8),
    ("xy.yx.X.Y", 2, 2),
    ("xy.yX.Y", 2, 2),
    ("xy.YX", 2, 2),
    ("xyx.Y", 3, 14),
    ("xy.xz.yz.Y", 2, 3),
    ("xy.xz.YZ", 2, 3),
    ("xy.xz.yZ.Y", 2, 3),
    ("xy.XZ.yz.Y", 2, 3),
    ("xy.XZ.Yz", 2, 3),
    ("xyzx.yzxy.zxyz", 2, 44),
    ("xyzx.yzxy.zyz", 2, 16),
    ("xyzx.yzxy.Z", 2, 8),
    ("xyzx.yZxy", 2, 8),
    ("xy.xz.yx.zx.zy", 3, 7),
    ("xy.yz.zx.X.Y.Z", 3, 4),
    ("xy.yz.zX.Y.Z", 3, 4),
    ("xy.yz.ZX.Y", 3, 4),
    ("xyzx.Y.Z", 4, 45),
)

# (formula, periodic block, prefix length checked)
PERIODIC_ROWS = (
    ("xX", "01", 60),
    ("xy.xz.Yz", "01", 60),
    ("xY.yZ.zX", "01", 60),
    ("xy.yx.X.Y", "012", 60),
    ("xy.yX.Y", "012", 60),
    ("xy.YX", "012", 60),
    ("xy.xz.yz.Y", "012", 60),
    ("xy.xz.YZ", "012", 60),
    ("xy.xz.yZ.Y", "012", 60),
    ("xy.XZ.yz.Y", "012", 60),
    ("xy.XZ.Yz", "012", 60),
    ("xy.yz.zx.X.Y.Z", "0123", 80),
    ("xy.yz.zX.Y.Z", "0123", 80),
    ("xy.yz.ZX.Y", "0123", 80),
)

# (formula, system, iterate index, image cap, expected avoided)
# caps reproduce the recorded bounded exhaustive checks; a single
# per-variable cap at least as large as the recorded per-variable bounds is
# used, which only enlarges the searched region
MORPHIC_ROWS = (
    ("xx", "f", 8, None, True),
    ("xyx.yxy", "f2*f1", 8, None, True),
    ("xy.xz.yx.zx.zy", "Omega", 6, None, True),
    ("xyzyx.zYxYz", "g", 14, 8, True),
    ("xyzYx.zyxYz", "g", 14, 8, True),
    ("xyzyx.zyxYz", "g", 14, 8, True),
    ("xyzYx.zYxyz", "g", 14, 8, True),
    ("xyzYx.zYxyz", "g", 12, 5, True),
    ("xyzyx.zyxyz", "g", 14, 8, True),
    ("xyzx.yzxy.zyz", "g", 12, 6, True),
    ("xyx.yxy", "g", 10, None, True),
    ("x3x", "g", 10, None, True),
    ("xz3x.z3xz", "g", 10, None, True),
    # refuted: the recorded check claims avoidance, but the formula occurs
    # (x -> 01, z -> 031 gives factors 012031301 and 0313012031)
    ("x2z3x.z3x2z", "g", 12, None, False),
    ("xyzx.yzxy.Z", "h*g", 8, 3, True),
    ("xyzx.yZxy", "h*g", 8, 2, True),
    ("xy3x.y3xy", "h*g", 8, 1, True),
    ("xyx.yxy", "h*g", 8, 1, True),
)

# the reversal companion of the one paired row is avoided by the reversed word
REVERSED_PREFIX_ROWS = (
    ("xyzyx.zyxYz", "g", 14, 8, True),
)

TABLE_DEPTH_BANDS = {1: 4, 2: 6, 3: 8, 4: 8, 5: 9}
TABLE_DEPTH_BANDS.update({l: 10 for l in range(6, 9)})
TABLE_DEPTH_BANDS.update({l: 11 for l in range(9, 13)})
TABLE_DEPTH_BANDS.update({l: 12 for l in range(13, 20)})
TABLE_DEPTH_BANDS.update({l: 13 for l in range(20, 31)})
TABLE_DEPTH_BANDS.update({l: 14 for l in range(31, 49)})

REVERSIBLE_GENERATORS = ("303", "323", "03130", "31013")
REVERSIBLE_NONPALINDROMIC = ("30", "32", "31", "031", "0313", "10", "310", "3101")
COMPOSITE_REVERSIBLE_GENERATORS = ("00", "11", "22", "030", "131", "232")


def _longest_row(args):
    text, k, expect = args
    out = longest_avoiding_word(parse_formula(text), k, expect + 10)
    ok = out.kind == EXACT_LONGEST and out.length == expect
    return (
        f"longest k={k} {text}",
        ok,
        f"expected {expect} got {out.kind}:{out.length} nodes={out.nodes}",
    )


def battery_longest(jobs=1, skip_slow=False):
    rows = [r for r in LONGEST_ROWS if not (skip_slow and r[2] > 20)]
    if jobs > 1:
        with Pool(jobs) as pool:
            return pool.map(_longest_row, rows)
    return [_longest_row(r) for r in rows]


def battery_periodic():
    out = []
    for text, block, length in PERIODIC_ROWS:
        word = periodic_prefix(block, length)
        ok = avoids(word, parse_formula(text))
        out.append(
            (f"periodic ({block})^w {text}", ok, f"prefix length {length}")
        )
    return out


def battery_morphic():
    out = []
    for text, sysname, n, cap, expected in MORPHIC_ROWS:
        system = parse_system(sysname)
        formula = parse_formula(text, allow_constants=True)
        avoided, witness = check_avoids_prefix(formula, system, n, image_cap=cap)
        ok = avoided == expected
        detail = f"iterate {n} cap {cap}"
        if witness is not None:
            detail += f" witness {witness!r}"
        if expected:
            name = f"prefix {sysname} avoids {text}"
        else:
            name = f"prefix {sysname} encounters {text} (recorded claim refuted)"
        out.append((name, ok, detail))
    for text, sysname, n, cap, expected in REVERSED_PREFIX_ROWS:
        system = parse_system(sysname)
        companion = canonicalize(reverse_formula(parse_formula(text)))
        avoided, witness = check_avoids_reversed_prefix(companion, system, n, image_cap=cap)
        out.append(
            (
                f"reversed prefix {sysname} avoids companion of {text}",
                avoided == expected,
                f"companion {companion} iterate {n} cap {cap}",
            )
        )
    return out


def battery_depth_table():
    g = parse_system("g")
    out = []
    mismatches = []
    for length, expect in TABLE_DEPTH_BANDS.items():
        got = factor_set(g, length).depth
        if got != expect:
            mismatches.append((length, got, expect))
    out.append(
        (
            "factor completeness depths 1..48",
            not mismatches,
            f"mismatches: {mismatches}" if mismatches else "all bands match",
        )
    )
    return out


def battery_reversible():
    out = []
    g = parse_system("g")
    rf = reversible_factors(g)
    expected = factor_closure(REVERSIBLE_GENERATORS)
    ok = rf.words == frozenset(expected) and rf.termination_length == 6
    out.append(
        ("reversible factors of g fixed point", ok,
         f"termination {rf.termination_length}, {len(rf.words)} words")
    )
    nonpal = set(REVERSIBLE_NONPALINDROMIC)
    nonpal |= {w[::-1] for w in nonpal}
    out.append(
        ("nonpalindromic reversible factors of g fixed point",
         rf.nonpalindromic() == frozenset(nonpal), f"{len(rf.nonpalindromic())} words")
    )
    hg = parse_system("h*g")
    rf2 = reversible_factors(hg)
    expected2 = factor_closure(COMPOSITE_REVERSIBLE_GENERATORS)
    out.append(
        ("reversible factors of composite fixed point",
         rf2.words == frozenset(expected2) and rf2.termination_length == 4,
         f"termination {rf2.termination_length}, {len(rf2.words)} words")
    )
    ok4 = factor_set(hg, 4).depth <= 8
    out.append(("composite length-4 factors complete by depth 8", ok4, ""))
    return out


def battery_parsing():
    hg = parse_system("h*g")
    bad = []
    checked = 0
    for length in (3, 4, 5):
        for factor in sorted(factor_set(hg, length).factors):
            checked += 1
            if len(parse_in_fixed_point(factor, hg)) != 1:
                bad.append(factor)
    return [
        ("unique block parsing of composite factors", not bad,
         f"{checked} factors of length 3..5 checked" + (f"; ambiguous: {bad[:3]}" if bad else ""))
    ]


def run_tables(jobs=1, skip_slow=False):
    """Everything above as one report; returns (rows, all_ok)."""
    rows = []
    rows += battery_periodic()
    rows += battery_depth_table()
    rows += battery_reversible()
    rows += battery_parsing()
    rows += battery_morphic()
    rows += battery_longest(jobs=jobs, skip_slow=skip_slow)
    return rows, all(ok for _, ok, _ in rows)


def render_rows(rows):
    lines = []
    for name, ok, detail in rows:
        status = "pass" if ok else "FAIL"
        lines.append(f"check={status} name={name!r} detail={detail!r}")
    return lines
