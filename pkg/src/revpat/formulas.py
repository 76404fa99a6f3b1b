"""Formulas with reversal: canonical fragment sets and their transformations.

A formula is a finite set of fragments (patterns).  Fragments are stored
deduplicated in a fixed total order (shorter first, then the pattern order
from :mod:`revpat.words`), so equal formulas render identically and renders
re-parse to the same value.
"""

from dataclasses import dataclass
from itertools import product

from revpat.words import (
    DIGITS,
    VARIABLES,
    bar_symbol,
    factors,
    pattern_sort_key,
    variables_of,
)


class FormulaError(ValueError):
    """Raised for malformed formula text or invalid fragment operations."""


def _fragment_key(f):
    return (len(f), pattern_sort_key(f))


class Formula:
    """An immutable set of nonempty fragments in canonical order.

    The empty formula (no fragments at all) is representable as a value so
    restriction and simplification can return it, but it is not parseable.
    """

    __slots__ = ("fragments",)

    def __init__(self, fragments):
        frags = sorted(set(fragments), key=_fragment_key)
        for f in frags:
            if not f:
                raise FormulaError("empty fragment")
            for c in f:
                if not (c.isalpha() and c.isascii() or c in DIGITS):
                    raise FormulaError(f"illegal character {c!r} in fragment {f!r}")
        object.__setattr__(self, "fragments", tuple(frags))

    def __setattr__(self, name, value):
        raise AttributeError("Formula is immutable")

    def __eq__(self, other):
        return isinstance(other, Formula) and self.fragments == other.fragments

    def __hash__(self):
        return hash(self.fragments)

    def __len__(self):
        return len(self.fragments)

    def __iter__(self):
        return iter(self.fragments)

    def __contains__(self, fragment):
        return fragment in self.fragments

    def __bool__(self):
        return bool(self.fragments)

    def __str__(self):
        return ".".join(self.fragments)

    def __repr__(self):
        return f"Formula({str(self)!r})"

    def variables(self):
        """Sorted base variables used anywhere in the formula."""
        vs = set()
        for f in self.fragments:
            vs |= variables_of(f)
        return sorted(vs, key=VARIABLES.index)

    def signed_letters(self):
        return {c for f in self.fragments for c in f if c.isalpha()}

    def has_constants(self):
        return any(c in DIGITS for f in self.fragments for c in f)

    def max_fragment_length(self):
        return max((len(f) for f in self.fragments), default=0)

    def factor_set(self, n):
        """All length-n factors across the fragments."""
        out = set()
        for f in self.fragments:
            out |= factors(f, n)
        return out


def parse_formula(text, allow_constants=False):
    """Parse dot-separated fragments; errors name the offending position."""
    if not text:
        raise FormulaError("empty formula text")
    frags = []
    pos = 0
    for part in text.split("."):
        if not part:
            raise FormulaError(f"empty fragment at position {pos}")
        for j, c in enumerate(part):
            if c.isalpha() and c.isascii():
                continue
            if c in DIGITS and allow_constants:
                continue
            raise FormulaError(f"illegal character {c!r} at position {pos + j}")
        frags.append(part)
        pos += len(part) + 1
    return Formula(frags)


def render_formula(formula):
    return str(formula)


def sharp_expand(template):
    """Expand ``#``-marked variables into both polarities.

    ``"x#y#"`` denotes the formula whose fragments are all words obtained by
    independently resolving each marked position to the plain or barred
    variable, e.g. ``xy.xY.Xy.XY``.
    """
    choices = []
    i = 0
    while i < len(template):
        c = template[i]
        if not (c.isalpha() and c.isascii()):
            raise FormulaError(f"illegal character {c!r} at position {i}")
        if i + 1 < len(template) and template[i + 1] == "#":
            choices.append((c, bar_symbol(c)))
            i += 2
        else:
            choices.append((c,))
            i += 1
    return Formula("".join(p) for p in product(*choices))


def restrict_eq(formula, n):
    """Formula of all length-n factors of the fragments; may be empty."""
    if n < 1:
        raise FormulaError("restriction length must be >= 1")
    return Formula(formula.factor_set(n))


def restrict_le(formula, n):
    """Formula of all factors of length at most n; may be empty."""
    if n < 1:
        raise FormulaError("restriction length must be >= 1")
    out = set()
    for m in range(1, n + 1):
        out |= formula.factor_set(m)
    return Formula(out)


def irr(formula):
    """Discard fragments that are factors of another fragment."""
    frags = formula.fragments
    kept = [
        p
        for p in frags
        if not any(p != q and p in q for q in frags)
    ]
    return Formula(kept)


def simplify(formula, fragment):
    """Remove a fragment; for length > 1 add its two maximal proper ends."""
    if fragment not in formula:
        raise FormulaError(f"fragment {fragment!r} not in formula")
    rest = [f for f in formula.fragments if f != fragment]
    if len(fragment) > 1:
        rest.append(fragment[:-1])
        rest.append(fragment[1:])
    return Formula(rest)


def simplifications(formula):
    """All one-step simplifications, one per fragment."""
    return [(q, simplify(formula, q)) for q in formula.fragments]


@dataclass(frozen=True)
class VariableUsage:
    plain: int
    barred: int

    @property
    def two_way(self):
        return self.plain > 0 and self.barred > 0


def variable_profile(formula):
    """Occurrence counts and one-way/two-way class per variable."""
    counts = {}
    for f in formula.fragments:
        for c in f:
            if c in DIGITS:
                continue
            v = c.lower()
            plain, barred = counts.get(v, (0, 0))
            if c.isupper():
                counts[v] = (plain, barred + 1)
            else:
                counts[v] = (plain + 1, barred)
    return {
        v: VariableUsage(plain, barred)
        for v, (plain, barred) in sorted(counts.items(), key=lambda kv: VARIABLES.index(kv[0]))
    }


def two_way_variables(formula):
    return [v for v, u in variable_profile(formula).items() if u.two_way]


def reverse_formula(formula):
    """Mirror companion: every fragment reversed with all bars flipped.

    The result is equivalent (up to renaming) to reading the formula
    backwards; callers wanting a canonical representative should pass the
    result through ``revpat.divisibility.canonical_form``.
    """
    from revpat.words import d_reverse

    return Formula(d_reverse(f) for f in formula.fragments)


# --- built-in catalog ----------------------------------------------------

def psi(n):
    """The family xx, xyx.Y, xyzx.Y.Z, ... indexed by inner variable count."""
    if n < 0 or n > len(VARIABLES) - 1:
        raise FormulaError("psi index out of range")
    if n == 0:
        return Formula(["xx"])
    inner = VARIABLES[1:n + 1]
    return Formula(["x" + inner + "x"] + [v.upper() for v in inner])


Z2 = (sharp_expand("x#y#"), sharp_expand("x#yx#"))

Z3 = (
    sharp_expand("x#y#z#"),
    sharp_expand("x#y#zx#y#"),
    sharp_expand("x#yx#zx#yx#"),
)

PHI1 = (parse_formula("xx"), parse_formula("xX"))

PHI2 = tuple(
    parse_formula(t)
    for t in (
        "xX",
        "xx",
        "xyx.yxy",
        "xy.yx.X.Y",
        "xy.yX.Y",
        "xy.YX",
        "xyx.Y",
    )
)

# Three-variable minimal formulas; the full three-variable basis is these
# together with PHI2.
PHI3_PROPER = tuple(
    parse_formula(t)
    for t in (
        "xy.xz.Yz",
        "xY.yZ.zX",
        "xyzyx.zyxyz",
        "xyzyx.zyxYz",
        "xyzyx.zYxYz",
        "xyzYx.zyxYz",
        "xyzYx.zYxyz",
        "xy.xz.yz.Y",
        "xy.xz.YZ",
        "xy.xz.yZ.Y",
        "xy.XZ.yz.Y",
        "xy.XZ.Yz",
        "xyzx.yzxy.zxyz",
        "xyzx.yzxy.zyz",
        "xyzx.yzxy.Z",
        "xyzx.yZxy",
        "xy.xz.yx.zx.zy",
        "xy.yz.zx.X.Y.Z",
        "xy.yz.zX.Y.Z",
        "xy.yz.ZX.Y",
        "xyzx.Y.Z",
    )
)

PHI3 = PHI2 + PHI3_PROPER

# Rows whose mirror companion is a separate basis member ("and rev." rows).
PHI3_REVERSED_ROWS = (
    parse_formula("xyzyx.zyxYz"),
    parse_formula("xy.xz.YZ"),
    parse_formula("xy.xz.yZ.Y"),
    parse_formula("xyzx.yzxy.zyz"),
)


def catalog(name):
    """Built-in formulas by name: psi:N, Z2, Z3, Phi1, Phi2, Phi3."""
    if name.startswith("psi:"):
        return (psi(int(name.split(":", 1)[1])),)
    table = {"Z2": Z2, "Z3": Z3, "Phi1": PHI1, "Phi2": PHI2, "Phi3": PHI3}
    if name not in table:
        raise KeyError(f"unknown built-in {name!r}")
    return table[name]
