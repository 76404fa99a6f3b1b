"""Division and e-division of formulas with reversal.

A formula divides another when a pattern-valued morphism respecting the
bar-flipping reversal sends every fragment of the first into a factor of
some fragment of the second.  E-division restricts the witness to an
injective single-letter substitution; mutual e-division is the
deduplication equivalence used throughout basis generation.
"""

from itertools import permutations, product

from revpat.formulas import Formula
from revpat.matching import find_embedding
from revpat.morphisms import RESPECTS_D_REVERSAL, RevMorphism
from revpat.words import VARIABLES, bar_symbol, d_reverse, pattern_sort_key


def _no_constants(formula, op):
    if formula.has_constants():
        raise ValueError(f"{op} is undefined for formulas with constants")


def verify_division(phi, psi, morphism):
    """Independent check that a witness actually maps phi into psi."""
    for f in phi.fragments:
        img = morphism.apply(f)
        if not any(img in g for g in psi.fragments):
            return False
    return True


def divides(phi, psi):
    """First division witness in search order, or None."""
    _no_constants(phi, "division")
    _no_constants(psi, "division")
    if not phi.fragments:
        return RevMorphism(RESPECTS_D_REVERSAL, {})
    if not psi.fragments:
        return None
    got = find_embedding(phi.fragments, psi.fragments, bar=d_reverse)
    if got is None:
        return None
    witness = RevMorphism(RESPECTS_D_REVERSAL, got)
    assert verify_division(phi, psi, witness), "invalid division witness"
    return witness


def e_divides(phi, psi):
    """Witness by an injective signed-letter substitution, or None.

    Injectivity is taken on the extended alphabet: two variables may not
    map to the same base letter even with opposite polarities.
    """
    _no_constants(phi, "e-division")
    _no_constants(psi, "e-division")
    if not phi.fragments:
        return RevMorphism(RESPECTS_D_REVERSAL, {})
    if not psi.fragments:
        return None
    variables = phi.variables()
    bases = sorted({c.lower() for c in psi.signed_letters()}, key=VARIABLES.index)
    if len(bases) < len(variables):
        return None
    max_len = phi.max_fragment_length()
    pool = set()
    for m in range(1, max_len + 1):
        pool |= psi.factor_set(m)
    for chosen in permutations(bases, len(variables)):
        for signs in product((False, True), repeat=len(variables)):
            images = {
                v: (bar_symbol(b) if s else b)
                for v, b, s in zip(variables, chosen, signs)
            }
            table = str.maketrans(
                {**images, **{v.upper(): bar_symbol(img) for v, img in images.items()}}
            )
            if all(f.translate(table) in pool for f in phi.fragments):
                return RevMorphism(RESPECTS_D_REVERSAL, images)
    return None


def e_equivalent(phi, psi):
    return e_divides(phi, psi) is not None and e_divides(psi, phi) is not None


def _formula_key(formula):
    return tuple((len(f), pattern_sort_key(f)) for f in formula.fragments)


def canonical_form(formula):
    """Least rendering over all renamings composed with polarity flips.

    For irredundant formulas two inputs share a canonical form exactly when
    they e-divide one another, so the form serves as a deduplication key.
    """
    _no_constants(formula, "canonical form")
    variables = formula.variables()
    k = len(variables)
    if k == 0:
        return str(formula)
    targets = VARIABLES[:k]
    best = None
    best_key = None
    for perm in permutations(targets):
        for signs in product((False, True), repeat=k):
            mapping = {}
            for v, t, s in zip(variables, perm, signs):
                mapping[v] = bar_symbol(t) if s else t
                mapping[v.upper()] = t if s else bar_symbol(t)
            table = str.maketrans(mapping)
            candidate = Formula(f.translate(table) for f in formula.fragments)
            key = _formula_key(candidate)
            if best_key is None or key < best_key:
                best, best_key = candidate, key
    return str(best)


def canonicalize(formula):
    from revpat.formulas import parse_formula

    return parse_formula(canonical_form(formula))
