"""Non-erasing morphisms on concrete letters and on signed variables.

Letter morphisms use the slash shorthand ``01/2/031/3`` (block i is the
image of letter i).  Variable morphisms carry one of two extension rules
for barred symbols: a morphism into concrete words sends ``X`` to the
reversal of the image of ``x``; a morphism into patterns sends ``X`` to
the bar-flipped reversal.  Images of barred symbols are always derived,
never stored.
"""

from revpat.words import DIGITS, d_reverse, reverse_word


class MorphismError(ValueError):
    pass


class LetterMorphism:
    """Map from an initial segment of the digits to nonempty words."""

    __slots__ = ("blocks", "_table", "_domain")

    def __init__(self, blocks):
        blocks = tuple(blocks)
        if not blocks:
            raise MorphismError("no blocks")
        for i, b in enumerate(blocks):
            if not b:
                raise MorphismError(f"erasing block for letter {i}")
            for c in b:
                if c not in DIGITS:
                    raise MorphismError(f"illegal letter {c!r} in block {b!r}")
        self.blocks = blocks
        self._table = str.maketrans({DIGITS[i]: b for i, b in enumerate(blocks)})
        self._domain = frozenset(DIGITS[: len(blocks)])

    @classmethod
    def parse(cls, spec):
        return cls(spec.split("/"))

    @property
    def domain(self):
        return self._domain

    def __call__(self, w):
        if not set(w) <= self._domain:
            bad = sorted(set(w) - self._domain)[0]
            raise MorphismError(f"letter {bad!r} outside domain")
        return w.translate(self._table)

    def render(self):
        return "/".join(self.blocks)

    def __eq__(self, other):
        return isinstance(other, LetterMorphism) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"LetterMorphism({self.render()!r})"


RESPECTS_REVERSAL = "reversal"
RESPECTS_D_REVERSAL = "d-reversal"


class RevMorphism:
    """Variable morphism with a derived extension to barred symbols."""

    __slots__ = ("rule", "images", "_table")

    def __init__(self, rule, images):
        if rule not in (RESPECTS_REVERSAL, RESPECTS_D_REVERSAL):
            raise MorphismError(f"unknown extension rule {rule!r}")
        images = dict(images)
        table = {}
        for v, img in images.items():
            if not (len(v) == 1 and v.isalpha() and v.islower()):
                raise MorphismError(f"bad variable {v!r}")
            if not img:
                raise MorphismError(f"erasing image for {v!r}")
            if rule == RESPECTS_REVERSAL:
                if not set(img) <= set(DIGITS):
                    raise MorphismError(f"image {img!r} is not a concrete word")
                table[v] = img
                table[v.upper()] = reverse_word(img)
            else:
                if not all(c.isalpha() and c.isascii() for c in img):
                    raise MorphismError(f"image {img!r} is not a pattern")
                table[v] = img
                table[v.upper()] = d_reverse(img)
        self.rule = rule
        self.images = images
        self._table = str.maketrans(table)

    def image(self, symbol):
        """Image of one signed symbol, deriving the barred form."""
        v = symbol.lower()
        if v not in self.images:
            raise MorphismError(f"variable {v!r} not in domain")
        img = self.images[v]
        if not symbol.isupper():
            return img
        if self.rule == RESPECTS_REVERSAL:
            return reverse_word(img)
        return d_reverse(img)

    def apply(self, pattern):
        for c in pattern:
            if c in DIGITS or c.lower() not in self.images:
                raise MorphismError(f"symbol {c!r} not in domain")
        return pattern.translate(self._table)

    def apply_formula(self, formula):
        from revpat.formulas import Formula

        return Formula(self.apply(f) for f in formula.fragments)

    def render(self):
        items = sorted(self.images.items())
        return ", ".join(f"{v}->{img}" for v, img in items)

    def __eq__(self, other):
        return (
            isinstance(other, RevMorphism)
            and self.rule == other.rule
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.rule, tuple(sorted(self.images.items()))))

    def __repr__(self):
        return f"RevMorphism({self.rule!r}, {self.images!r})"


def compose(outer, inner):
    """Pointwise composition for the rule combinations that stay lawful.

    Supported: letter o letter, pattern-to-pattern o pattern-to-pattern,
    and word-valued outer o pattern-valued inner.  Applying a letter
    morphism after a word-valued variable morphism does not respect
    reversal in general and is rejected.
    """
    if isinstance(outer, LetterMorphism) and isinstance(inner, LetterMorphism):
        return LetterMorphism(outer(b) for b in inner.blocks)
    if isinstance(outer, RevMorphism) and isinstance(inner, RevMorphism):
        if inner.rule != RESPECTS_D_REVERSAL:
            raise MorphismError("inner morphism must map patterns to patterns")
        return RevMorphism(
            outer.rule, {v: outer.apply(img) for v, img in inner.images.items()}
        )
    raise MorphismError(
        f"cannot compose {type(outer).__name__} after {type(inner).__name__}"
    )
