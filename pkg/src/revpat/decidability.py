"""Unavoidability decisions for formulas on at most three variables.

A formula on at most two (three) variables is unavoidable exactly when it
divides a member of the corresponding closure family built from the
bar-expanded chains; the decision returns the dividing member and witness
as a certificate.
"""

from dataclasses import dataclass
from itertools import product

from revpat.divisibility import canonical_form, divides
from revpat.formulas import Formula, Z2, Z3
from revpat.words import VARIABLES, flatten


class ArityError(ValueError):
    """Raised for formulas on more than three variables."""


@dataclass(frozen=True)
class Decision:
    unavoidable: bool
    dividend: Formula | None = None
    witness: object = None


_cache = {}


def is_unavoidable(formula, use_cache=True):
    """Decide unavoidability; the certificate carries the witness found."""
    if formula.has_constants():
        raise ValueError("unavoidability is undefined for formulas with constants")
    nvars = len(formula.variables())
    if nvars > 3:
        raise ArityError("no decision procedure beyond three variables")
    if not formula.fragments:
        return Decision(True)
    key = canonical_form(formula) if use_cache else None
    if key is not None and key in _cache:
        return _cache[key]
    family = Z2 if nvars <= 2 else Z3
    decision = Decision(False)
    for zeta in family:
        witness = divides(formula, zeta)
        if witness is not None:
            decision = Decision(True, zeta, witness)
            break
    if key is not None:
        _cache[key] = decision
    return decision


def is_avoidable(formula, use_cache=True):
    return not is_unavoidable(formula, use_cache=use_cache).unavoidable


def flattening_shortcut(formula):
    """Return "avoidable" when the bar-erased formula is avoidable.

    Avoidability of the flattening transfers to the original formula; an
    unavoidable flattening decides nothing.
    """
    flat = Formula(flatten(f) for f in formula.fragments)
    if not is_unavoidable(flat).unavoidable:
        return "avoidable"
    return None


@dataclass(frozen=True)
class CensusResult:
    total: int
    unavoidable: int
    avoidable: int


def signed_alphabet(num_vars):
    base = VARIABLES[:num_vars]
    return base + base.upper()


def all_patterns(length_cap, num_vars):
    """Every nonempty pattern up to the length cap, in enumeration order."""
    letters = signed_alphabet(num_vars)
    for n in range(1, length_cap + 1):
        for tup in product(letters, repeat=n):
            yield "".join(tup)


def census(length_cap, num_vars):
    """Classify every pattern up to the cap as avoidable or not."""
    if num_vars > 3:
        raise ArityError("no decision procedure beyond three variables")
    total = unavoidable = 0
    for p in all_patterns(length_cap, num_vars):
        total += 1
        if is_unavoidable(Formula([p])).unavoidable:
            unavoidable += 1
    return CensusResult(total, unavoidable, total - unavoidable)
