"""Letters, words, patterns and the two reversal operators.

Concrete letters are the digits ``0``-``9``.  Variables are lowercase
letters; the uppercase letter is the mirrored (barred) variable.  Both
words and patterns are plain strings, so factor tests and reversals run
at C speed.
"""

DIGITS = "0123456789"

# Variable letters in canonical binding order: renamings map onto a prefix
# of this sequence, and pattern comparison ranks x < x-bar < y < y-bar < ...
VARIABLES = "xyzwvutsrqponmlkjihgfedcba"

_PATTERN_RANK = {}
for _i, _v in enumerate(VARIABLES):
    _PATTERN_RANK[_v] = 2 * _i
    _PATTERN_RANK[_v.upper()] = 2 * _i + 1
for _i, _d in enumerate(DIGITS):
    _PATTERN_RANK[_d] = 52 + _i


def reverse_word(w):
    """Reversal antimorphism on concrete words."""
    return w[::-1]


def d_reverse(p):
    """Reverse a pattern and flip every bar (double bars cancel)."""
    return p.swapcase()[::-1]


def flatten(p):
    """Erase all bars, keeping symbol order."""
    return p.lower()


def bar_symbol(s):
    """Mirror a single signed symbol."""
    return s.swapcase()


def is_barred(s):
    return s.isupper()


def base_variable(s):
    return s.lower()


def factors(w, n):
    """All distinct contiguous length-n substrings of w."""
    if n < 1:
        raise ValueError("factor length must be >= 1")
    return {w[i:i + n] for i in range(len(w) - n + 1)}


def periodic_prefix(block, length):
    """Length-n prefix of the periodic word block^omega."""
    if not block:
        raise ValueError("period block must be nonempty")
    reps = -(-length // len(block))
    return (block * reps)[:length]


def pattern_sort_key(p):
    """Total order on patterns: variable-major, unbarred before barred."""
    return bytes(_PATTERN_RANK[c] for c in p)


def validate_word(w, alphabet_size=10):
    for i, c in enumerate(w):
        if c not in DIGITS or int(c) >= alphabet_size:
            raise ValueError(f"illegal letter {c!r} at position {i}")
    return w


def variables_of(p):
    """Base variables occurring (barred or not) in a pattern."""
    return {c.lower() for c in p if c.isalpha()}
