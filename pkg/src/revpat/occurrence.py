"""Occurrence of a formula with reversal in a finite word.

A formula occurs in a word when one assignment of nonempty words to its
variables maps every fragment to a factor of the word, with a barred
symbol receiving the reversed image.  Fragments may also carry digit
constants, which must match the word literally.
"""

from revpat.matching import find_embedding
from revpat.words import DIGITS, reverse_word


class Assignment:
    """Witnessing map from variables to nonempty words.

    Instances produced by the search are re-validated against the formula
    and word independently of the search path.
    """

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = dict(images)

    def image(self, symbol):
        if symbol in DIGITS:
            return symbol
        img = self.images[symbol.lower()]
        return reverse_word(img) if symbol.isupper() else img

    def fragment_image(self, fragment):
        return "".join(self.image(s) for s in fragment)

    def validate(self, formula, word):
        for img in self.images.values():
            if not img:
                return False
        return all(self.fragment_image(f) in word for f in formula.fragments)

    def as_morphism(self):
        from revpat.morphisms import RESPECTS_REVERSAL, RevMorphism

        return RevMorphism(RESPECTS_REVERSAL, self.images)

    def __eq__(self, other):
        return isinstance(other, Assignment) and self.images == other.images

    def __repr__(self):
        items = ", ".join(f"{v}->{w}" for v, w in sorted(self.images.items()))
        return f"Assignment({items})"


def occurs(formula, word, image_cap=None):
    """First witness assignment in search order, or None.

    With image_cap, only assignments where every variable image has length
    at most the cap are considered.
    """
    if not formula.fragments:
        return Assignment({})
    got = find_embedding(
        formula.fragments, [word], bar=reverse_word, cap=image_cap
    )
    if got is None:
        return None
    witness = Assignment(got)
    assert witness.validate(formula, word), "search produced an invalid witness"
    return witness


def occurs_bounded(formula, word, image_cap):
    if image_cap < 1:
        raise ValueError("image cap must be >= 1")
    return occurs(formula, word, image_cap=image_cap)


def occurs_with_constants(formula, word):
    """Occurrence for formulas whose fragments mix variables and constants."""
    return occurs(formula, word)


def avoids(word, formula):
    return occurs(formula, word) is None


def occurs_ending_at(formula, word, image_cap=None):
    """Witness whose occurrence uses the final letter of the word, or None.

    Some fragment image is required to end exactly at the end of the word;
    this is the incremental test used when a word is extended letter by
    letter, since any occurrence in the extension that was not already
    present must involve the new letter.
    """
    frags = formula.fragments
    if not frags:
        return Assignment({})
    for fi in range(len(frags)):
        got = find_embedding(
            frags,
            [word],
            bar=reverse_word,
            cap=image_cap,
            anchor_fragment=fi,
            memo=False,
        )
        if got is not None:
            return Assignment(got)
    return None
