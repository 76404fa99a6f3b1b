"""Fixed points of prolongable letter morphisms and their factor services.

``iterate(n)`` applies the morphism n times to the seed.  Factor-set
results report the depth at which a length class is complete as a 1-based
position in the chain seed, m(seed), m(m(seed)), ...; the seed itself is
depth 1.  A composite system images an inner fixed point through an outer
letter morphism; its depths refer to the inner chain.
"""

from dataclasses import dataclass, field

from revpat.morphisms import LetterMorphism, MorphismError
from revpat.occurrence import occurs
from revpat.words import factors, reverse_word


class D0LSystem:
    """Prolongable morphism with a seed letter; iterates form a prefix chain."""

    __slots__ = ("morphism", "seed", "_chain")

    def __init__(self, morphism, seed):
        block = morphism(seed)
        if not block.startswith(seed) or len(block) < 2:
            raise MorphismError(
                f"morphism is not prolongable on seed {seed!r}"
            )
        self.morphism = morphism
        self.seed = seed
        self._chain = [seed]

    def iterate(self, n):
        """The word after n applications of the morphism to the seed."""
        if n < 0:
            raise ValueError("iterate index must be >= 0")
        while len(self._chain) <= n:
            self._chain.append(self.morphism(self._chain[-1]))
        return self._chain[n]

    def prefix(self, target_len):
        """The length-n prefix of the fixed point."""
        n = 0
        while len(self.iterate(n)) < target_len:
            n += 1
        return self.iterate(n)[:target_len]

    def word_at_depth(self, depth):
        """Chain word at a 1-based depth; depth 1 is the seed."""
        if depth < 1:
            raise ValueError("depth must be >= 1")
        return self.iterate(depth - 1)

    def image_word(self, n):
        return self.iterate(n)

    def render(self):
        return f"{self.morphism.render()}@{self.seed}"

    def __repr__(self):
        return f"D0LSystem({self.render()!r})"


class CompositeSystem:
    """Image of a fixed point under an outer letter morphism."""

    __slots__ = ("outer", "inner")

    def __init__(self, outer, inner):
        if not inner.morphism.domain <= set("0123456789"):
            raise MorphismError("incompatible alphabets")
        self.outer = outer
        self.inner = inner

    def image_word(self, n):
        """Image of the inner word after n applications; indices are inner."""
        return self.outer(self.inner.iterate(n))

    def word_at_depth(self, depth):
        return self.outer(self.inner.word_at_depth(depth))

    def prefix(self, target_len):
        n = 0
        while len(self.image_word(n)) < target_len:
            n += 1
        return self.image_word(n)[:target_len]

    def render(self):
        return f"{self.outer.render()}*{self.inner.render()}"

    def __repr__(self):
        return f"CompositeSystem({self.render()!r})"


BUILTIN_SYSTEMS = {
    "g": "01/2/031/3@0",
    "h*g": "01/12/20/3*01/2/031/3@0",
    "f": "012/02/1@0",
    "f2*f1": "01/02/12/21*01/02/32/31@0",
    "Omega": "01/21/03/23@0",
    "delta*f": "011/01/0*012/02/1@0",
}


def parse_system(spec):
    """Parse ``blocks@seed`` or ``outer*blocks@seed``, or a built-in name."""
    if spec in BUILTIN_SYSTEMS:
        spec = BUILTIN_SYSTEMS[spec]
    if "@" not in spec:
        raise MorphismError(f"system spec {spec!r} lacks a seed")
    head, seed = spec.rsplit("@", 1)
    if "*" in head:
        outer_spec, inner_spec = head.split("*", 1)
        inner = D0LSystem(LetterMorphism.parse(inner_spec), seed)
        return CompositeSystem(LetterMorphism.parse(outer_spec), inner)
    return D0LSystem(LetterMorphism.parse(head), seed)


@dataclass(frozen=True)
class FactorSetResult:
    length: int
    factors: frozenset
    depth: int  # 1-based chain position at which the length class is complete


def _closure_factor_set(system, length):
    """All factors of the given length of the fixed point.

    Start from the prefix of that length and close under taking factors of
    images: every factor arises inside the image of another factor because
    the morphism is non-erasing.
    """
    current = {system.prefix(length)}
    m = system.morphism
    while True:
        new = set()
        for v in current:
            new |= factors(m(v), length)
        if new <= current:
            return current
        current = new


def factor_set(system, length):
    """Complete length class with the first chain depth containing it."""
    if length < 1:
        raise ValueError("factor length must be >= 1")
    if isinstance(system, CompositeSystem):
        inner_factors = _closure_factor_set(system.inner, length)
        complete = set()
        for v in inner_factors:
            complete |= factors(system.outer(v), length)
    else:
        complete = _closure_factor_set(system, length)
    depth = 1
    while not complete <= factors(system.word_at_depth(depth), length):
        depth += 1
    return FactorSetResult(length, frozenset(complete), depth)


@dataclass(frozen=True)
class ReversibleFactors:
    words: frozenset
    termination_length: int
    by_length: tuple = field(compare=False, default=())

    def nonpalindromic(self):
        return frozenset(w for w in self.words if w != reverse_word(w))


def reversible_factors(system):
    """Factors whose reversal is also a factor, with the completeness bound.

    Stops at the first length with no reversible factor: every factor of a
    reversible factor is itself reversible, so nothing longer can exist.
    """
    found = set()
    per_length = []
    length = 1
    while True:
        complete = factor_set(system, length).factors
        reversible = {w for w in complete if reverse_word(w) in complete}
        if not reversible:
            return ReversibleFactors(frozenset(found), length, tuple(per_length))
        found |= reversible
        per_length.append((length, frozenset(reversible)))
        length += 1


def factor_closure(words):
    """All factors of the given words; convenient for expected inventories."""
    out = set()
    for w in words:
        for n in range(1, len(w) + 1):
            out |= factors(w, n)
    return out


@dataclass(frozen=True)
class Parse:
    """One decomposition into code blocks: (letter, start, end) pieces.

    The first piece may begin inside its block and the last may stop short;
    middle pieces are whole blocks.
    """

    pieces: tuple

    def preimage(self):
        """The block letters read off the pieces, partial blocks included."""
        return "".join(letter for letter, _, _ in self.pieces)

    def cut_positions(self):
        cuts = []
        pos = 0
        for letter, start, end in self.pieces[:-1]:
            pos += end - start
            cuts.append(pos)
        return tuple(cuts)

    def starts_at_cut(self):
        return self.pieces[0][1] == 0

    def ends_at_cut(self, morphism):
        letter, start, end = self.pieces[-1]
        return end == len(morphism.blocks[int(letter)])


def parse_against_code(word, morphism):
    """All ways to read a word as suffix-of-block, blocks, prefix-of-block."""
    if not word:
        raise ValueError("cannot parse the empty word")
    blocks = list(enumerate(morphism.blocks))
    results = []

    def extend(pos, pieces):
        if pos == len(word):
            results.append(Parse(tuple(pieces)))
            return
        rest = len(word) - pos
        for i, b in blocks:
            if rest >= len(b):
                if word.startswith(b, pos):
                    pieces.append((str(i), 0, len(b)))
                    extend(pos + len(b), pieces)
                    pieces.pop()
            elif b.startswith(word[pos:]):
                results.append(Parse(tuple(pieces + [(str(i), 0, rest)])))

    for i, b in blocks:
        for off in range(len(b)):
            chunk = b[off:]
            if len(chunk) >= len(word):
                if off > 0 and chunk.startswith(word):
                    results.append(Parse(((str(i), off, off + len(word)),)))
            elif off > 0 and word.startswith(chunk):
                extend(len(chunk), [(str(i), off, len(b))])
    extend(0, [])
    return results


def parse_in_fixed_point(word, system):
    """Parses of a factor of a composite word that are realizable in context.

    A string-level decomposition only counts when the block letters it reads
    off form a factor of the inner fixed point.
    """
    if not isinstance(system, CompositeSystem):
        raise TypeError("contextual parsing needs a composite system")
    valid = []
    inner_factors = {}
    for p in parse_against_code(word, system.outer):
        pre = p.preimage()
        n = len(pre)
        if n not in inner_factors:
            inner_factors[n] = _closure_factor_set(system.inner, n)
        if pre in inner_factors[n]:
            valid.append(p)
    return valid


def check_avoids_prefix(formula, system, iterate_index, image_cap=None):
    """Occurrence test on a materialized prefix word.

    Returns (avoided, witness): the witness explains a failure.  The index
    counts morphism applications on the (inner) seed.
    """
    word = system.image_word(iterate_index)
    witness = occurs(formula, word, image_cap=image_cap)
    return witness is None, witness


def check_avoids_reversed_prefix(formula, system, iterate_index, image_cap=None):
    """Same test against the reversed prefix word."""
    word = reverse_word(system.image_word(iterate_index))
    witness = occurs(formula, word, image_cap=image_cap)
    return witness is None, witness
